#pragma once
#include <span>

#include "qcorner/quiver.hpp"

namespace qcorner {

// Degree-by-degree quotient engine for kQ/(relations). Instead of row reducing
// the full grade-m path space, each stage works in the coordinates
// (transversal path of lower grade) x (arrow), which tracks the actual algebra
// dimension. Produces the same dimensions and transversals as
// graded_dimension; that agreement is exercised by the test suite.
class DimensionEngine {
   public:
    explicit DimensionEngine(QuiverPresentation p,
                             std::int64_t column_limit = std::int64_t{1} << 22);

    const QuiverPresentation& presentation() const { return pres_; }

    int dim(int m);
    const std::vector<Path>& transversal(int m);

    // Coordinates of the class of an arbitrary path over transversal(grade).
    SparseVec path_class(const Path& p);

    // Extend stage-m0 coordinates by an arrow sequence, reducing along the way.
    SparseVec extend(int m0, SparseVec coords, std::span<const int> arrows);

    unsigned scalar_order() const { return order_; }

   private:
    struct Stage {
        std::vector<Path> transversal;                   // ascending path order
        std::map<Path, int> index;                       // path -> transversal position
        std::map<std::pair<int, int>, SparseVec> step;   // (lower t-index, arrow id) -> coords
    };

    void compute_up_to(int m);
    void compute_stage(int m);

    QuiverPresentation pres_;
    std::int64_t column_limit_;
    unsigned order_ = 1;
    std::vector<Stage> stages_;
};

}  // namespace qcorner
