#pragma once
#include <compare>
#include <vector>

#include "kh/errors.hpp"

namespace kh {

// An oriented strand between two marked boundary points, running tail -> head.
struct Arc {
    int tail = 0;
    int head = 0;
    friend auto operator<=>(const Arc&, const Arc&) = default;
    int other(int p) const { return p == tail ? head : tail; }
    bool touches(int p) const { return p == tail || p == head; }
};

// A crossingless tangle in the disc: a non-crossing perfect matching on 2k
// boundary points indexed 0..2k-1 counterclockwise from a basepoint, plus
// free loops carrying only a winding sign (+1 counterclockwise, -1 clockwise).
//
// Canonical form: arcs sorted by tail, loops sorted with +1 first. Loops have
// no positional data, so smoothings differing by loop order compare equal.
//
// Orientations are decorations for rotation-number bookkeeping; they do not
// constrain cobordisms. `alternating` records whether heads and tails
// alternate around the boundary (heads all on one index parity).
class OrientedSmoothing {
public:
    int boundary_count = 0;
    std::vector<Arc> arcs;
    std::vector<int> loops;

    OrientedSmoothing() = default;

    // Validating constructor: planarity and alternation both required.
    static OrientedSmoothing make(int boundary_count, std::vector<Arc> arcs,
                                  std::vector<int> loops = {});
    // Planarity required, alternation optional (assemblies of non-alternating
    // diagrams carry junk orientations).
    static OrientedSmoothing make_relaxed(int boundary_count, std::vector<Arc> arcs,
                                          std::vector<int> loops = {});
    static OrientedSmoothing closed(std::vector<int> loops);

    int k() const { return boundary_count / 2; }
    int num_curves() const { return int(arcs.size() + loops.size()); }
    bool is_alternating() const { return alternating_; }
    // parity (0 or 1) of the head points; -1 when boundary is empty
    int head_parity() const { return head_parity_; }
    bool is_head(int p) const;

    // index into `arcs` of the arc incident to boundary point p
    int arc_at(int p) const;
    std::vector<int> arc_at_table() const;

    // Signed loop count of the standard closure plus free loop signs.
    // Requires an alternating smoothing.
    int rotation_number() const;

    // Caps every out-point to the next boundary point counterclockwise,
    // outside the disc. All loops so formed are positive; free loops are kept.
    OrientedSmoothing standard_closure() const;

    bool operator==(const OrientedSmoothing& o) const {
        return boundary_count == o.boundary_count && arcs == o.arcs && loops == o.loops;
    }
    std::strong_ordering operator<=>(const OrientedSmoothing& o) const {
        if (auto c = boundary_count <=> o.boundary_count; c != 0) return c;
        if (auto c = arcs <=> o.arcs; c != 0) return c;
        return loops <=> o.loops;
    }

private:
    bool alternating_ = true;
    int head_parity_ = -1;
    static OrientedSmoothing build(int bc, std::vector<Arc> arcs, std::vector<int> loops,
                                   bool strict);
    friend struct SmoothingSurgery;
};

// A smoothing with a quantum degree shift.
struct GradedSmoothing {
    OrientedSmoothing s;
    int q = 0;

    int shifted_rotation_number() const { return s.rotation_number() + q; }
    bool operator==(const GradedSmoothing&) const = default;
    std::strong_ordering operator<=>(const GradedSmoothing& o) const {
        if (auto c = s <=> o.s; c != 0) return c;
        return q <=> o.q;
    }
};

OrientedSmoothing make_smoothing(int boundary_count, std::vector<Arc> arcs,
                                 std::vector<int> loops = {});
int rotation_number(const OrientedSmoothing& s);
OrientedSmoothing standard_closure(const OrientedSmoothing& s);
int shifted_rotation_number(const GradedSmoothing& g);

}  // namespace kh
