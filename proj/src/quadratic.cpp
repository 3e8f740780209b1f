#include "qcorner/quadratic.hpp"

#include "qcorner/errors.hpp"

namespace qcorner {

DiagonalAction::DiagonalAction(unsigned r_, std::vector<int> w) : r(r_), weights(std::move(w)) {
    if (r == 0) throw UsageError("DiagonalAction: group order must be positive");
    for (int a : weights)
        if (a <= 0 || a > static_cast<int>(r))
            throw UsageError("DiagonalAction: weights must satisfy 0 < a_j <= r");
}

DiagonalAction DiagonalAction::power(int p) const {
    std::vector<int> w;
    w.reserve(weights.size());
    const int rr = static_cast<int>(r);
    for (int a : weights) {
        long long v = (static_cast<long long>(a) * p) % rr;
        if (v < 0) v += rr;
        w.push_back(v == 0 ? rr : static_cast<int>(v));
    }
    return DiagonalAction(r, std::move(w));
}

int DiagonalAction::word_weight(const FreeWord& w) const {
    long long s = 0;
    for (int letter : w) {
        if (letter < 0 || letter >= static_cast<int>(weights.size()))
            throw UsageError("word letter out of range for the action");
        s += weights[static_cast<size_t>(letter)];
    }
    return static_cast<int>(s % static_cast<long long>(r));
}

bool DiagonalAction::is_trivial() const {
    for (int a : weights)
        if (a != static_cast<int>(r)) return false;
    return true;
}

DiagonalAction dual_action(const DiagonalAction& act) {
    std::vector<int> w;
    w.reserve(act.weights.size());
    const int rr = static_cast<int>(act.r);
    for (int a : act.weights) {
        int v = (rr - a % rr) % rr;
        w.push_back(v == 0 ? rr : v);
    }
    return DiagonalAction(act.r, std::move(w));
}

QuadraticAlgebra QuadraticAlgebra::from_relations(std::vector<std::string> names, unsigned order,
                                                  const std::vector<NcPolynomial>& rels,
                                                  std::optional<int> claimed_global_dim) {
    const int n = static_cast<int>(names.size());
    WordSpace ws(n, 2);
    std::vector<SparseVec> rows;
    rows.reserve(rels.size());
    for (size_t k = 0; k < rels.size(); ++k) {
        const auto& f = rels[k];
        SparseVec row;
        for (const auto& [word, coeff] : f.terms) {
            if (word.size() != 2)
                throw ParseError("relation " + std::to_string(k) +
                                 " is not homogeneous of degree 2 (found a word of length " +
                                 std::to_string(word.size()) + ")");
            for (int letter : word)
                if (letter < 0 || letter >= n)
                    throw ParseError("relation " + std::to_string(k) +
                                     " uses a generator index out of range");
            if (coeff.is_zero()) continue;
            row.emplace_back(ws.col_of(word), coeff.embedded(order));
        }
        if (!row.empty()) rows.push_back(sparse_normalize(std::move(row)));
    }
    QuadraticAlgebra A;
    A.generator_names = std::move(names);
    A.order = order;
    A.relations = Subspace::from_spanning(static_cast<int>(ws.size), std::move(rows));
    A.claimed_global_dim = claimed_global_dim;
    return A;
}

std::vector<std::vector<std::pair<FreeWord, Cyc>>> relation_rows(const QuadraticAlgebra& A) {
    WordSpace ws(A.num_generators(), 2);
    std::vector<std::vector<std::pair<FreeWord, Cyc>>> out;
    out.reserve(A.relations.basis.size());
    for (const auto& row : A.relations.basis) {
        std::vector<std::pair<FreeWord, Cyc>> terms;
        terms.reserve(row.size());
        for (const auto& [col, c] : row) terms.emplace_back(ws.word_of(col), c);
        out.push_back(std::move(terms));
    }
    return out;
}

}  // namespace qcorner
