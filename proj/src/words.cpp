#include "qcorner/words.hpp"

#include "qcorner/errors.hpp"

namespace qcorner {

WordSpace::WordSpace(int n_, int m_, std::int64_t cap) : n(n_), m(m_) {
    if (n < 0 || m < 0) throw UsageError("WordSpace: negative parameters");
    size = 1;
    for (int i = 0; i < m; ++i) {
        size *= n;
        if (size > cap)
            throw DegreeCapError("tensor coordinate space exceeds the size limit");
    }
}

std::int64_t WordSpace::lex_rank(const FreeWord& w) const {
    std::int64_t r = 0;
    for (int letter : w) r = r * n + letter;
    return r;
}

int WordSpace::col_of(const FreeWord& w) const {
    return static_cast<int>(size - 1 - lex_rank(w));
}

FreeWord WordSpace::word_of(int col) const {
    std::int64_t r = size - 1 - col;
    FreeWord w(static_cast<size_t>(m));
    for (int i = m - 1; i >= 0; --i) {
        w[static_cast<size_t>(i)] = static_cast<int>(r % n);
        r /= n;
    }
    return w;
}

}  // namespace qcorner
