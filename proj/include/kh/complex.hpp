#pragma once
#include <optional>
#include <tuple>

#include "kh/matcat.hpp"

namespace kh {

struct ReductionReport {
    long long deloop_count = 0;
    long long elimination_count = 0;
};

// A bounded complex over Mat(Cob3_o); diffs[i] maps objects[i] to objects[i+1]
// and index i corresponds to homological degree min_degree + i.
class ChainComplex {
public:
    int min_degree = 0;
    std::vector<MatObject> objects;
    std::vector<MatMorphism> diffs;

    bool empty() const { return objects.empty(); }
    int levels() const { return int(objects.size()); }
    int max_degree() const { return min_degree + levels() - 1; }
    int idx(int r) const { return r - min_degree; }
    const MatObject& object(int r) const { return objects[idx(r)]; }

    // d2 = 0, homogeneity, matching shapes and boundary counts
    void validate() const;

    std::optional<std::tuple<int, int, int>> first_loop() const;  // (r, entry, loop)
    void deloop(int r, int entry, int loop);

    std::optional<std::tuple<int, int, int>> find_invertible_entry(GroundRing ring) const;
    void gaussian_eliminate(int r, int i, int j, GroundRing ring);

    bool is_reduced(GroundRing ring) const;
    ReductionReport dg_reduce(GroundRing ring);

    void trim();

    // multiset of (degree, smoothing, q) for comparisons up to reordering
    std::vector<std::tuple<int, OrientedSmoothing, int>> graded_object_multiset() const;

    static ChainComplex single(int degree, MatObject obj);
};

// surgery helpers shared with the perturbed double complexes
namespace detail {
struct DeloopMaps {
    GradedSmoothing plus, minus;  // replacement entries {q+1}, {q-1}
    CobLin fwd_plus, fwd_minus;   // dotted cap, plain cap (out of the loop)
    CobLin bwd_plus, bwd_minus;   // plain cup, dotted cup (into the loop)
};
DeloopMaps deloop_maps(const GradedSmoothing& g, int loop);
// codomain entry `entry` replaced by the two delooped copies
void deloop_rows(MatMorphism& m, int entry, const DeloopMaps& dm);
// domain entry replaced
void deloop_cols(MatMorphism& m, int entry, const DeloopMaps& dm);
bool invertible_cell(const MatMorphism& m, int i, int j, GroundRing ring);
}  // namespace detail

}  // namespace kh
