#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qcorner/cyclotomic.hpp"

namespace qcorner {

// A monomial in the free algebra: a sequence of generator indices in [0, n).
using FreeWord = std::vector<int>;

// Coordinates for V^{⊗m} in the lexicographic word basis (x_0 < x_1 < ...).
// Columns are laid out in descending lex order, so the REF pivot rule
// "first nonzero column" picks the lex-largest word of each relation and the
// surviving transversal consists of the lex-smallest (standard) monomials.
struct WordSpace {
    int n;
    int m;
    std::int64_t size;  // n^m

    WordSpace(int n_, int m_, std::int64_t cap = (std::int64_t{1} << 26));

    std::int64_t lex_rank(const FreeWord& w) const;
    int col_of(const FreeWord& w) const;
    FreeWord word_of(int col) const;
};

struct NcPolynomial {
    std::map<FreeWord, Cyc> terms;  // nonzero coefficients only
    std::optional<int> homogeneous_degree;
};

}  // namespace qcorner
