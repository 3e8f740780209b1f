#include "qcorner/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qcorner/errors.hpp"

namespace qcorner {

Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational string");
    try {
        Rational q(s);
        q.canonicalize();
        if (q.get_den() == 0) throw ParseError("zero denominator in rational '" + s + "'");
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational '" + s + "'");
    }
}

std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q.get_num();
    if (q.get_den() != 1) os << '/' << q.get_den();
    return os.str();
}

namespace {

using ZPoly = std::vector<mpz_class>;  // constant term first

void ztrim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of a by b (b monic up to content, division known exact).
ZPoly zdiv_exact(ZPoly a, const ZPoly& b) {
    ZPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpz_class(0));
    while (a.size() >= b.size() && !a.empty()) {
        mpz_class c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        ztrim(a);
    }
    if (!a.empty()) throw Error("internal: cyclotomic division left a remainder");
    return q;
}

std::map<unsigned, ZPoly> g_phi_cache;
std::mutex g_phi_mutex;

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(unsigned r) {
    if (r == 0) throw UsageError("cyclotomic_polynomial: order must be positive");
    {
        std::lock_guard<std::mutex> lock(g_phi_mutex);
        auto it = g_phi_cache.find(r);
        if (it != g_phi_cache.end()) return it->second;
    }
    ZPoly result;
    if (r == 1) {
        result = {mpz_class(-1), mpz_class(1)};  // x - 1
    } else {
        ZPoly num(r + 1, mpz_class(0));  // x^r - 1
        num[0] = -1;
        num[r] = 1;
        for (unsigned d = 1; d < r; ++d)
            if (r % d == 0) num = zdiv_exact(std::move(num), cyclotomic_polynomial(d));
        result = std::move(num);
    }
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    g_phi_cache.emplace(r, result);
    return result;
}

unsigned cyclotomic_degree(unsigned r) {
    return static_cast<unsigned>(cyclotomic_polynomial(r).size() - 1);
}

namespace {

using QPoly = std::vector<Rational>;  // constant term first

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    qtrim(out);
    return out;
}

// Remainder of a mod the monic integer polynomial phi.
QPoly qmod_phi(QPoly a, const ZPoly& phi) {
    const size_t d = phi.size() - 1;
    while (a.size() > d) {
        Rational c = a.back();
        size_t shift = a.size() - 1 - d;
        if (c != 0)
            for (size_t i = 0; i < d; ++i) a[shift + i] -= c * Rational(phi[i]);
        a.pop_back();
        qtrim(a);
    }
    return a;
}

// Quotient and remainder over Q, divisor need not be monic.
std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
    QPoly q(a.size() >= b.size() && !b.empty() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (!a.empty() && a.size() >= b.size()) {
        Rational c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        qtrim(a);
    }
    return {q, a};
}

}  // namespace

Cyc::Cyc(Rational q, unsigned r) : r_(r) {
    if (r == 0) throw UsageError("cyclotomic order must be positive");
    c_.assign(cyclotomic_degree(r), Rational(0));
    c_[0] = std::move(q);
}

Cyc::Cyc(unsigned r, std::vector<Rational> reduced) : r_(r), c_(std::move(reduced)) {
    c_.resize(cyclotomic_degree(r), Rational(0));
}

bool Cyc::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyc::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Cyc::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational Cyc::rational_part() const { return c_[0]; }

Cyc Cyc::embedded(unsigned bigger_order) const {
    if (bigger_order == r_) return *this;
    if (bigger_order % r_ != 0)
        throw UsageError("embedded: target order must be a multiple of the source order");
    const unsigned step = bigger_order / r_;
    const ZPoly phi = cyclotomic_polynomial(bigger_order);
    // zeta_r^i maps to zeta^(i*step); accumulate into one polynomial then reduce.
    QPoly acc(static_cast<size_t>(cyclotomic_degree(r_) - 1) * step + 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) acc[i * step] = c_[i];
    qtrim(acc);
    return Cyc(bigger_order, qmod_phi(std::move(acc), phi));
}

Cyc Cyc::operator-() const {
    std::vector<Rational> out(c_);
    for (auto& x : out) x = -x;
    return Cyc(r_, std::move(out));
}

Cyc operator+(const Cyc& a, const Cyc& b) {
    if (a.r_ != b.r_) throw UsageError("cyclotomic order mismatch in addition");
    std::vector<Rational> out(a.c_);
    for (size_t i = 0; i < out.size(); ++i) out[i] += b.c_[i];
    return Cyc(a.r_, std::move(out));
}

Cyc operator-(const Cyc& a, const Cyc& b) {
    if (a.r_ != b.r_) throw UsageError("cyclotomic order mismatch in subtraction");
    std::vector<Rational> out(a.c_);
    for (size_t i = 0; i < out.size(); ++i) out[i] -= b.c_[i];
    return Cyc(a.r_, std::move(out));
}

Cyc operator*(const Cyc& a, const Cyc& b) {
    if (a.r_ != b.r_) throw UsageError("cyclotomic order mismatch in multiplication");
    QPoly pa(a.c_.begin(), a.c_.end());
    QPoly pb(b.c_.begin(), b.c_.end());
    qtrim(pa);
    qtrim(pb);
    QPoly prod = qmul(pa, pb);
    return Cyc(a.r_, qmod_phi(std::move(prod), cyclotomic_polynomial(a.r_)));
}

Cyc Cyc::inverse() const {
    if (is_zero()) throw DivisionByZeroError();
    // Extended Euclid in Q[x]: s*a + t*Phi = gcd = const, so a^{-1} = s/gcd.
    const ZPoly phiz = cyclotomic_polynomial(r_);
    QPoly r0(phiz.begin(), phiz.end());
    QPoly r1(c_.begin(), c_.end());
    qtrim(r1);
    QPoly s0 = {}, s1 = {Rational(1)};
    while (r1.size() > 1) {
        auto [q, rem] = qdivmod(r0, r1);
        QPoly s2 = s0;
        QPoly qs = qmul(q, s1);
        s2.resize(std::max(s2.size(), qs.size()), Rational(0));
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        qtrim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw Error("internal: Phi_r not coprime to a nonzero element");
    Rational lead = r1[0];
    for (auto& x : s1) x /= lead;
    return Cyc(r_, qmod_phi(std::move(s1), phiz));
}

Cyc Cyc::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyc base = *this;
    Cyc acc = Cyc::one(r_);
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

Cyc root_of_unity(unsigned r, long k) {
    if (r == 0) throw UsageError("root_of_unity: order must be positive");
    long km = k % static_cast<long>(r);
    if (km < 0) km += r;
    QPoly x(static_cast<size_t>(km) + 1, Rational(0));
    x[static_cast<size_t>(km)] = 1;
    return Cyc(r, qmod_phi(std::move(x), cyclotomic_polynomial(r)));
}

unsigned lcm_order(unsigned a, unsigned b) { return std::lcm(a, b); }

std::string Cyc::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rational v = c_[i];
        if (first) {
            if (v < 0) {
                os << '-';
                v = -v;
            }
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        if (i == 0)
            os << to_string(v);
        else {
            if (v != 1) os << to_string(v) << '*';
            os << 'z';
            if (i > 1) os << '^' << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace qcorner
