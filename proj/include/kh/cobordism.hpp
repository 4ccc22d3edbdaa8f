#pragma once
#include <map>
#include <optional>
#include <vector>

#include "kh/ring.hpp"
#include "kh/smoothing.hpp"

namespace kh {

// A dotted cobordism in reduced normal form: every connected component has
// genus zero and at most one dot, and no component is closed. Components are
// recorded as a partition of the curves of the bottom and top smoothings.
//
// Curve ids: bottom arcs, bottom loops, top arcs, top loops, in the canonical
// order of the two smoothings. `block[c]` is the component of curve c, with
// component ids normalized by first occurrence; `dots[b]` is 0 or 1.
struct ReducedCobordism {
    std::vector<int> block;
    std::vector<unsigned char> dots;

    void canonicalize();
    friend auto operator<=>(const ReducedCobordism&, const ReducedCobordism&) = default;
};

// A formal linear combination of reduced cobordisms with common bottom/top.
struct CobLin {
    OrientedSmoothing bottom, top;
    std::map<ReducedCobordism, Coeff> terms;

    CobLin() = default;
    CobLin(OrientedSmoothing b, OrientedSmoothing t) : bottom(std::move(b)), top(std::move(t)) {}

    bool is_zero() const { return terms.empty(); }
    void add_term(const ReducedCobordism& c, const Coeff& x);
    CobLin& operator+=(const CobLin& o);
    CobLin& operator-=(const CobLin& o);
    CobLin& operator*=(const Coeff& x);
};

// Expand a formal component structure (any partition of the curves that does
// not split a boundary circle, with dot counts per component) into the disk
// normal form: neck cutting turns an undotted multi-circle component into the
// sum over which circle stays undotted, and a dotted one dots every circle.
CobLin expand_to_normal_form(const OrientedSmoothing& bottom, const OrientedSmoothing& top,
                             const std::vector<int>& naive_block, const std::vector<int>& dots,
                             const Coeff& coeff = 1);

CobLin identity_cobordism(const OrientedSmoothing& s);
bool is_identity_cobordism(const CobLin& f);
// f == u * identity for a single coefficient u
std::optional<Coeff> identity_multiple(const CobLin& f);

// Vertical gluing f then g (f: s -> t, g: t -> u). Closed pieces evaluate by
// sphere = 0, dotted sphere = 1, torus = 2; genus is removed by neck cutting
// and components with two dots vanish.
CobLin compose_cob(const CobLin& f, const CobLin& g);

// chi - k - 2 * dots, where chi sums 2 - (boundary circles) over components.
int degree(const OrientedSmoothing& bottom, const OrientedSmoothing& top,
           const ReducedCobordism& c);

OrientedSmoothing remove_loop(const OrientedSmoothing& s, int loop_index);
// s -> s minus loop (death of the loop), optionally dotted
CobLin deloop_cap(const OrientedSmoothing& s, int loop_index, bool dotted);
// s minus loop -> s (birth of the loop)
CobLin deloop_cup(const OrientedSmoothing& s, int loop_index, bool dotted);

enum class CurlSign { positive, negative };

namespace detail {

struct CurveIx {
    int ba = 0, bl = 0, ta = 0, tl = 0;
    int nb() const { return ba + bl; }
    int total() const { return ba + bl + ta + tl; }
    int bot_arc(int i) const { return i; }
    int bot_loop(int i) const { return ba + i; }
    int top_arc(int i) const { return nb() + i; }
    int top_loop(int i) const { return nb() + ta + i; }
    static CurveIx of(const OrientedSmoothing& b, const OrientedSmoothing& t);
};

// boundary-circle count per component (loops plus arc cycles chained through
// the vertical boundary lines)
std::vector<int> block_boundary_circles(const OrientedSmoothing& b, const OrientedSmoothing& t,
                                        const ReducedCobordism& c);

// Result of a curl/join surgery on one smoothing, with the map from old curve
// ids (arcs then loops) to curve ids of the output.
struct SmoothingSurgery {
    OrientedSmoothing out;
    std::vector<int> curve_map;
};

// Close boundary points (j, j+1 mod 2k) with a curl through their sector.
// A positive curl continues the flow out of point j; strict mode rejects the
// incompatible sign. An arc joining the two points closes into a free loop
// whose sign is the curl's.
SmoothingSurgery curl_smoothing(const OrientedSmoothing& s, int j, CurlSign sign, bool strict);

struct JoinSurgery {
    OrientedSmoothing out;
    std::vector<int> curve_map_1, curve_map_2;
    std::vector<int> pos_map_1, pos_map_2;  // old boundary position -> new position (-1 if joined)
};

// Side-by-side join of two discs along one connecting arc from point p1 of s1
// to point p2 of s2.
JoinSurgery join_smoothings(const OrientedSmoothing& s1, int p1, const OrientedSmoothing& s2,
                            int p2, bool strict);

CobLin curl_coblin(const CobLin& f, int j, CurlSign sign, bool strict);
CobLin join_coblin(const CobLin& f1, int p1, const CobLin& f2, int p2, bool strict);

}  // namespace detail

}  // namespace kh
