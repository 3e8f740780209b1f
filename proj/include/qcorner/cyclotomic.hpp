#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qcorner/rational.hpp"

namespace qcorner {

// Coefficients of the r-th cyclotomic polynomial, constant term first, monic.
// Computed by exact division of x^r - 1 by the product of the proper-divisor
// cyclotomics; results are cached.
std::vector<mpz_class> cyclotomic_polynomial(unsigned r);

// deg(Phi_r), i.e. Euler's totient of r.
unsigned cyclotomic_degree(unsigned r);

// An element of Q(zeta_r), stored as a fully reduced residue mod Phi_r.
// Two values are equal iff their orders and coefficient vectors are equal;
// arithmetic requires both operands to carry the same order (use embedded()
// to move into a larger field first).
class Cyc {
   public:
    Cyc() : Cyc(Rational(0), 1) {}
    Cyc(Rational q, unsigned r);

    static Cyc zero(unsigned r) { return Cyc(Rational(0), r); }
    static Cyc one(unsigned r) { return Cyc(Rational(1), r); }

    unsigned order() const { return r_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational rational_part() const;  // coefficient of zeta^0

    // Image under Q(zeta_r) -> Q(zeta_R), zeta_r |-> zeta_R^(R/r). Requires r | R.
    Cyc embedded(unsigned bigger_order) const;

    Cyc operator-() const;
    Cyc inverse() const;  // throws DivisionByZeroError on zero
    Cyc pow(long e) const;

    friend Cyc operator+(const Cyc& a, const Cyc& b);
    friend Cyc operator-(const Cyc& a, const Cyc& b);
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
    Cyc& operator-=(const Cyc& b) { return *this = *this - b; }
    Cyc& operator*=(const Cyc& b) { return *this = *this * b; }

    bool operator==(const Cyc& b) const { return r_ == b.r_ && c_ == b.c_; }
    bool operator!=(const Cyc& b) const { return !(*this == b); }

    std::string str() const;  // human form, e.g. "1 - 1/2*z^2"

   private:
    Cyc(unsigned r, std::vector<Rational> reduced);
    unsigned r_;
    std::vector<Rational> c_;

    friend Cyc root_of_unity(unsigned r, long k);
};

// zeta_r^(k mod r), reduced mod Phi_r.
Cyc root_of_unity(unsigned r, long k);

unsigned lcm_order(unsigned a, unsigned b);

}  // namespace qcorner
