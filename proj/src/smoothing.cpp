#include "kh/smoothing.hpp"

#include <algorithm>
#include <numeric>

namespace kh {

OrientedSmoothing OrientedSmoothing::build(int bc, std::vector<Arc> arcs, std::vector<int> loops,
                                           bool strict) {
    require(bc >= 0 && bc % 2 == 0, Err::crossing_matching, "boundary count must be even");
    require(int(arcs.size()) * 2 == bc, Err::crossing_matching,
            "arcs must form a perfect matching");

    std::vector<int> seen(bc, 0);
    for (const Arc& a : arcs) {
        require(a.tail >= 0 && a.tail < bc && a.head >= 0 && a.head < bc && a.tail != a.head,
                Err::crossing_matching, "arc endpoint out of range");
        seen[a.tail]++;
        seen[a.head]++;
    }
    for (int p = 0; p < bc; ++p)
        require(seen[p] == 1, Err::crossing_matching, "each boundary point used exactly once");

    // planarity: chords drawn inside the disc must not cross (stack check)
    {
        std::vector<int> mate(bc, -1);
        for (const Arc& a : arcs) {
            mate[a.tail] = a.head;
            mate[a.head] = a.tail;
        }
        std::vector<int> stack;
        for (int p = 0; p < bc; ++p) {
            if (mate[p] > p) {
                stack.push_back(p);
            } else {
                require(!stack.empty() && stack.back() == mate[p], Err::crossing_matching,
                        "matching has crossing chords");
                stack.pop_back();
            }
        }
    }

    for (int s : loops)
        require(s == 1 || s == -1, Err::crossing_matching, "loop signs must be +-1");

    OrientedSmoothing out;
    out.boundary_count = bc;
    out.arcs = std::move(arcs);
    out.loops = std::move(loops);
    std::sort(out.arcs.begin(), out.arcs.end(),
              [](const Arc& a, const Arc& b) { return a.tail < b.tail; });
    std::sort(out.loops.begin(), out.loops.end(), std::greater<int>());

    // heads on one index parity, tails on the other
    out.alternating_ = true;
    out.head_parity_ = -1;
    if (bc > 0) {
        int hp = out.arcs.empty() ? -1 : -2;
        for (const Arc& a : out.arcs) {
            if (a.tail % 2 == a.head % 2) {
                out.alternating_ = false;
                break;
            }
            int p = a.head % 2;
            if (hp == -2)
                hp = p;
            else if (hp != p)
                out.alternating_ = false;
        }
        if (out.alternating_) out.head_parity_ = hp;
    }
    if (strict)
        require(out.alternating_, Err::non_alternating,
                "in/out orientations must alternate around the boundary");
    return out;
}

OrientedSmoothing OrientedSmoothing::make(int bc, std::vector<Arc> arcs, std::vector<int> loops) {
    return build(bc, std::move(arcs), std::move(loops), true);
}

OrientedSmoothing OrientedSmoothing::make_relaxed(int bc, std::vector<Arc> arcs,
                                                  std::vector<int> loops) {
    return build(bc, std::move(arcs), std::move(loops), false);
}

OrientedSmoothing OrientedSmoothing::closed(std::vector<int> loops) {
    return build(0, {}, std::move(loops), true);
}

bool OrientedSmoothing::is_head(int p) const {
    for (const Arc& a : arcs)
        if (a.head == p) return true;
    return false;
}

int OrientedSmoothing::arc_at(int p) const {
    for (int i = 0; i < int(arcs.size()); ++i)
        if (arcs[i].touches(p)) return i;
    fail(Err::internal, "no arc at boundary point");
}

std::vector<int> OrientedSmoothing::arc_at_table() const {
    std::vector<int> t(boundary_count, -1);
    for (int i = 0; i < int(arcs.size()); ++i) {
        t[arcs[i].tail] = i;
        t[arcs[i].head] = i;
    }
    return t;
}

// Every closure loop turns counterclockwise: a strand advances the boundary
// angle by (head - tail) mod 2k positions and each cap by one, so each loop's
// winding is (sum of advances) / 2k = +1.
int OrientedSmoothing::rotation_number() const {
    require(alternating_, Err::non_alternating,
            "rotation number needs an alternating smoothing");
    int r = 0;
    for (int s : loops) r += s;
    if (boundary_count == 0) return r;
    long long adv = 0;
    for (const Arc& a : arcs) adv += ((a.head - a.tail) % boundary_count + boundary_count) % boundary_count;
    adv += k();
    require(adv % boundary_count == 0, Err::internal, "closure advance not a multiple of 2k");
    return r + int(adv / boundary_count);
}

OrientedSmoothing OrientedSmoothing::standard_closure() const {
    require(alternating_, Err::non_alternating, "closure needs an alternating smoothing");
    std::vector<int> out_loops = loops;
    if (boundary_count > 0) {
        auto at = arc_at_table();
        std::vector<char> done(arcs.size(), 0);
        for (int i = 0; i < int(arcs.size()); ++i) {
            if (done[i]) continue;
            int cur = i;
            while (!done[cur]) {
                done[cur] = 1;
                int next_tail = (arcs[cur].head + 1) % boundary_count;
                cur = at[next_tail];
            }
            out_loops.push_back(1);
        }
    }
    return closed(std::move(out_loops));
}

OrientedSmoothing make_smoothing(int bc, std::vector<Arc> arcs, std::vector<int> loops) {
    return OrientedSmoothing::make(bc, std::move(arcs), std::move(loops));
}
int rotation_number(const OrientedSmoothing& s) { return s.rotation_number(); }
OrientedSmoothing standard_closure(const OrientedSmoothing& s) { return s.standard_closure(); }
int shifted_rotation_number(const GradedSmoothing& g) { return g.shifted_rotation_number(); }

}  // namespace kh
