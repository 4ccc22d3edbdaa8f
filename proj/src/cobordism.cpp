#include "kh/cobordism.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace kh {

using detail::CurveIx;

void ReducedCobordism::canonicalize() {
    std::vector<int> relabel;
    std::vector<unsigned char> nd;
    int next = 0;
    std::vector<int> old_of_new;
    for (int c = 0; c < int(block.size()); ++c) {
        int b = block[c];
        if (int(relabel.size()) <= b) relabel.resize(b + 1, -1);
        if (relabel[b] < 0) {
            relabel[b] = next++;
            old_of_new.push_back(b);
        }
    }
    nd.resize(next, 0);
    for (int n = 0; n < next; ++n)
        nd[n] = old_of_new[n] < int(dots.size()) ? dots[old_of_new[n]] : 0;
    for (int& b : block) b = relabel[b];
    dots = std::move(nd);
}

void CobLin::add_term(const ReducedCobordism& c, const Coeff& x) {
    if (x == 0) return;
    auto it = terms.find(c);
    if (it == terms.end()) {
        terms.emplace(c, x);
    } else {
        it->second += x;
        if (it->second == 0) terms.erase(it);
    }
}

CobLin& CobLin::operator+=(const CobLin& o) {
    require(bottom == o.bottom && top == o.top, Err::boundary_mismatch,
            "adding cobordisms with different ends");
    for (const auto& [c, x] : o.terms) add_term(c, x);
    return *this;
}

CobLin& CobLin::operator-=(const CobLin& o) {
    require(bottom == o.bottom && top == o.top, Err::boundary_mismatch,
            "subtracting cobordisms with different ends");
    for (const auto& [c, x] : o.terms) add_term(c, -x);
    return *this;
}

CobLin& CobLin::operator*=(const Coeff& x) {
    if (x == 0) {
        terms.clear();
        return *this;
    }
    for (auto& [c, v] : terms) v *= x;
    return *this;
}

CurveIx CurveIx::of(const OrientedSmoothing& b, const OrientedSmoothing& t) {
    CurveIx ix;
    ix.ba = int(b.arcs.size());
    ix.bl = int(b.loops.size());
    ix.ta = int(t.arcs.size());
    ix.tl = int(t.loops.size());
    return ix;
}

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

// Boundary circles of the surface between bottom and top: every free loop is
// one circle, and arcs chain into circles through the vertical boundary
// lines. Returns the circle id of each curve.
int circle_structure(const OrientedSmoothing& bottom, const OrientedSmoothing& top,
                     std::vector<int>& circle_of_curve) {
    CurveIx ix = CurveIx::of(bottom, top);
    circle_of_curve.assign(ix.total(), -1);
    int next = 0;
    if (bottom.boundary_count > 0) {
        auto bat = bottom.arc_at_table(), tat = top.arc_at_table();
        std::vector<char> visited(bottom.boundary_count, 0);
        for (int p0 = 0; p0 < bottom.boundary_count; ++p0) {
            if (visited[p0]) continue;
            int p = p0;
            do {
                visited[p] = 1;
                circle_of_curve[ix.bot_arc(bat[p])] = next;
                int q = bottom.arcs[bat[p]].other(p);
                visited[q] = 1;
                circle_of_curve[ix.top_arc(tat[q])] = next;
                p = top.arcs[tat[q]].other(q);
            } while (p != p0);
            ++next;
        }
    }
    for (int i = 0; i < ix.bl; ++i) circle_of_curve[ix.bot_loop(i)] = next++;
    for (int i = 0; i < ix.tl; ++i) circle_of_curve[ix.top_loop(i)] = next++;
    return next;
}

}  // namespace

std::vector<int> detail::block_boundary_circles(const OrientedSmoothing& b,
                                                const OrientedSmoothing& t,
                                                const ReducedCobordism& c) {
    std::vector<int> circ;
    int n = circle_structure(b, t, circ);
    std::vector<int> count(c.dots.size(), 0);
    std::vector<char> seen(n, 0);
    for (int cu = 0; cu < int(circ.size()); ++cu) {
        if (seen[circ[cu]]) continue;
        seen[circ[cu]] = 1;
        count[c.block[cu]]++;
    }
    return count;
}

int degree(const OrientedSmoothing& bottom, const OrientedSmoothing& top,
           const ReducedCobordism& c) {
    auto circles = detail::block_boundary_circles(bottom, top, c);
    int chi = 0;
    for (int b : circles) chi += 2 - b;
    int dots = 0;
    for (unsigned char d : c.dots) dots += d;
    return chi - bottom.k() - 2 * dots;
}

CobLin expand_to_normal_form(const OrientedSmoothing& bottom, const OrientedSmoothing& top,
                             const std::vector<int>& naive_block, const std::vector<int>& dots,
                             const Coeff& coeff) {
    std::vector<int> circ;
    int ncirc = circle_structure(bottom, top, circ);
    require(int(naive_block.size()) == int(circ.size()), Err::internal,
            "component table does not match curves");

    // group circles by the component they came from
    int nblocks = 0;
    for (int b : naive_block) nblocks = std::max(nblocks, b + 1);
    std::vector<std::vector<int>> circles_of(nblocks);
    {
        std::vector<int> owner(ncirc, -1);
        for (int cu = 0; cu < int(circ.size()); ++cu) {
            int b = naive_block[cu];
            if (owner[circ[cu]] == -1) {
                owner[circ[cu]] = b;
                circles_of[b].push_back(circ[cu]);
            } else {
                require(owner[circ[cu]] == b, Err::internal,
                        "component table splits a boundary circle");
            }
        }
    }

    CobLin out(bottom, top);
    // dot patterns: a dotted component dots all its circles; an undotted one
    // leaves exactly one circle undotted (neck cutting)
    std::vector<std::vector<std::vector<int>>> choices;  // per block: list of dotted-circle sets
    for (int b = 0; b < nblocks; ++b) {
        if (circles_of[b].empty()) continue;
        int d = b < int(dots.size()) ? dots[b] : 0;
        if (d >= 2) return out;  // zero
        std::vector<std::vector<int>> cs;
        if (d == 1) {
            cs.push_back(circles_of[b]);
        } else {
            for (int skip : circles_of[b]) {
                std::vector<int> dotted;
                for (int c : circles_of[b])
                    if (c != skip) dotted.push_back(c);
                cs.push_back(dotted);
            }
        }
        choices.push_back(std::move(cs));
    }

    ReducedCobordism base;
    base.block = circ;
    base.dots.assign(ncirc, 0);
    base.canonicalize();
    std::vector<int> circle_to_block(ncirc, -1);
    for (int cu = 0; cu < int(circ.size()); ++cu) circle_to_block[circ[cu]] = base.block[cu];

    std::vector<size_t> pick(choices.size(), 0);
    for (;;) {
        ReducedCobordism c = base;
        for (size_t i = 0; i < choices.size(); ++i)
            for (int circle : choices[i][pick[i]]) c.dots[circle_to_block[circle]] = 1;
        out.add_term(c, coeff);
        size_t i = 0;
        for (; i < choices.size(); ++i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
        if (i == choices.size()) break;
    }
    return out;
}

CobLin identity_cobordism(const OrientedSmoothing& s) {
    CurveIx ix = CurveIx::of(s, s);
    std::vector<int> naive(ix.total());
    for (int i = 0; i < ix.ba; ++i) naive[ix.bot_arc(i)] = i;
    for (int i = 0; i < ix.ta; ++i) naive[ix.top_arc(i)] = i;
    for (int i = 0; i < ix.bl; ++i) naive[ix.bot_loop(i)] = ix.ba + i;
    for (int i = 0; i < ix.tl; ++i) naive[ix.top_loop(i)] = ix.ba + i;
    return expand_to_normal_form(s, s, naive, std::vector<int>(ix.ba + ix.bl, 0), 1);
}

bool is_identity_cobordism(const CobLin& f) {
    if (f.bottom != f.top) return false;
    CobLin id = identity_cobordism(f.bottom);
    return f.terms == id.terms;
}

// f == u * identity for a coefficient u; returns u
std::optional<Coeff> identity_multiple(const CobLin& f) {
    if (f.bottom != f.top) return std::nullopt;
    CobLin id = identity_cobordism(f.bottom);
    if (f.terms.size() != id.terms.size() || f.terms.empty()) return std::nullopt;
    Coeff ratio = 0;
    auto it = f.terms.begin();
    auto jt = id.terms.begin();
    for (; it != f.terms.end(); ++it, ++jt) {
        if (it->first != jt->first) return std::nullopt;
        Coeff r = it->second / jt->second;
        if (ratio == 0)
            ratio = r;
        else if (ratio != r)
            return std::nullopt;
    }
    return ratio;
}

OrientedSmoothing remove_loop(const OrientedSmoothing& s, int loop_index) {
    require(loop_index >= 0 && loop_index < int(s.loops.size()), Err::no_such_loop,
            "loop index out of range");
    std::vector<int> loops = s.loops;
    loops.erase(loops.begin() + loop_index);
    return OrientedSmoothing::make_relaxed(s.boundary_count, s.arcs, std::move(loops));
}

CobLin deloop_cap(const OrientedSmoothing& s, int loop_index, bool dotted) {
    OrientedSmoothing t = remove_loop(s, loop_index);
    CurveIx ix = CurveIx::of(s, t);
    std::vector<int> naive(ix.total());
    std::vector<int> dots;
    for (int i = 0; i < ix.ba; ++i) naive[ix.bot_arc(i)] = i;
    for (int i = 0; i < ix.ta; ++i) naive[ix.top_arc(i)] = i;
    int next = ix.ba;
    int cap_block = -1;
    for (int i = 0; i < ix.bl; ++i) {
        naive[ix.bot_loop(i)] = next;
        if (i == loop_index)
            cap_block = next;
        else
            naive[ix.top_loop(i < loop_index ? i : i - 1)] = next;
        ++next;
    }
    dots.assign(next, 0);
    if (dotted) dots[cap_block] = 1;
    return expand_to_normal_form(s, t, naive, dots, 1);
}

CobLin deloop_cup(const OrientedSmoothing& s, int loop_index, bool dotted) {
    OrientedSmoothing b = remove_loop(s, loop_index);
    CurveIx ix = CurveIx::of(b, s);
    std::vector<int> naive(ix.total());
    std::vector<int> dots;
    for (int i = 0; i < ix.ba; ++i) naive[ix.bot_arc(i)] = i;
    for (int i = 0; i < ix.ta; ++i) naive[ix.top_arc(i)] = i;
    int next = ix.ba;
    int cup_block = -1;
    for (int i = 0; i < ix.tl; ++i) {
        naive[ix.top_loop(i)] = next;
        if (i == loop_index)
            cup_block = next;
        else
            naive[ix.bot_loop(i < loop_index ? i : i - 1)] = next;
        ++next;
    }
    dots.assign(next, 0);
    if (dotted) dots[cup_block] = 1;
    return expand_to_normal_form(b, s, naive, dots, 1);
}

namespace {

// Shared reduction for all gluing operations. The universe is [0, F) final
// curves (bottom then top of the output) followed by internal curves; chi and
// dots accumulate per DSU element and are folded onto roots here. Closed
// pieces evaluate to scalars; open pieces lose genus by neck cutting and are
// expanded into dotted disks over the final boundary circles.
struct GlueAccum {
    Dsu dsu;
    std::vector<long long> chi;
    std::vector<int> dots;
    explicit GlueAccum(int n) : dsu(n), chi(n, 0), dots(n, 0) {}
};

struct GlueOutcome {
    Int mult;
    ReducedCobordism cob;
};

std::vector<GlueOutcome> normalize_glue(const OrientedSmoothing& bottom,
                                        const OrientedSmoothing& top, GlueAccum& acc) {
    CurveIx ix = CurveIx::of(bottom, top);
    const int F = ix.total();
    const int N = int(acc.dsu.p.size());

    std::vector<long long> chi(N, 0);
    std::vector<int> dots(N, 0);
    for (int c = 0; c < N; ++c) {
        int r = acc.dsu.find(c);
        chi[r] += acc.chi[c];
        dots[r] += acc.dots[c];
    }

    std::vector<int> circ;
    int ncirc = circle_structure(bottom, top, circ);
    std::vector<int> circle_root(ncirc, -1);
    for (int cu = 0; cu < F; ++cu) {
        int r = acc.dsu.find(cu);
        if (circle_root[circ[cu]] == -1)
            circle_root[circ[cu]] = r;
        else
            require(circle_root[circ[cu]] == r, Err::internal, "glue split a boundary circle");
    }
    std::vector<std::vector<int>> circles_of_root(N);
    for (int c = 0; c < ncirc; ++c) circles_of_root[circle_root[c]].push_back(c);

    Int mult = 1;
    std::vector<std::vector<std::vector<int>>> choices;  // dotted-circle sets per open root
    std::vector<char> seen(N, 0);
    for (int e = 0; e < N; ++e) {
        int r = acc.dsu.find(e);
        if (seen[r]) continue;
        seen[r] = 1;
        const auto& circles = circles_of_root[r];
        if (circles.empty()) {
            // closed piece: chi = 2 - 2g
            if (chi[r] == 2 && dots[r] == 1)
                ;  // dotted sphere
            else if (chi[r] == 0 && dots[r] == 0)
                mult *= 2;  // torus
            else
                return {};
        } else {
            long long g2 = 2 - (long long)circles.size() - chi[r];
            require(g2 >= 0 && g2 % 2 == 0, Err::internal, "bad Euler characteristic in gluing");
            long long g = g2 / 2;
            int d = dots[r];
            if (g == 0 && d >= 2) return {};
            if (g == 1 && d == 0) {
                mult *= 2;
                d = 1;
            } else if (g != 0) {
                return {};
            }
            std::vector<std::vector<int>> cs;
            if (d == 1) {
                cs.push_back(circles);
            } else {
                for (int skip : circles) {
                    std::vector<int> dotted;
                    for (int c : circles)
                        if (c != skip) dotted.push_back(c);
                    cs.push_back(dotted);
                }
            }
            choices.push_back(std::move(cs));
        }
    }

    ReducedCobordism base;
    base.block = circ;
    base.dots.assign(ncirc, 0);
    base.canonicalize();
    std::vector<int> circle_to_block(ncirc, -1);
    for (int cu = 0; cu < F; ++cu) circle_to_block[circ[cu]] = base.block[cu];

    std::vector<GlueOutcome> out;
    std::vector<size_t> pick(choices.size(), 0);
    for (;;) {
        ReducedCobordism c = base;
        for (size_t i = 0; i < choices.size(); ++i)
            for (int circle : choices[i][pick[i]]) c.dots[circle_to_block[circle]] = 1;
        out.push_back({mult, std::move(c)});
        size_t i = 0;
        for (; i < choices.size(); ++i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
        if (i == choices.size()) break;
    }
    return out;
}

// chi of each block of a stored (disk normal form) cobordism
std::vector<long long> block_chi(const OrientedSmoothing& b, const OrientedSmoothing& t,
                                 const ReducedCobordism& c) {
    auto circ = detail::block_boundary_circles(b, t, c);
    std::vector<long long> chi(circ.size());
    for (size_t i = 0; i < circ.size(); ++i) chi[i] = 2 - circ[i];
    return chi;
}

}  // namespace

CobLin compose_cob(const CobLin& f, const CobLin& g) {
    require(f.top == g.bottom, Err::boundary_mismatch, "compose_cob: middle smoothings differ");
    const OrientedSmoothing& s = f.bottom;
    const OrientedSmoothing& t = f.top;
    const OrientedSmoothing& u = g.top;
    CurveIx out_ix = CurveIx::of(s, u);
    CurveIx fix = CurveIx::of(s, t);
    CurveIx gix = CurveIx::of(t, u);
    const int F = out_ix.total();
    const int nt = fix.ta + fix.tl;  // middle curves
    const int ns = fix.nb();

    CobLin out(s, u);
    for (const auto& [cf, xf] : f.terms) {
        auto chif = block_chi(s, t, cf);
        for (const auto& [cg, xg] : g.terms) {
            auto chig = block_chi(t, u, cg);
            GlueAccum acc(F + nt);
            auto f_univ = [&](int c) { return c < ns ? c : F + (c - ns); };
            auto g_univ = [&](int c) {
                int ntb = gix.nb();
                return c < ntb ? F + c : out_ix.nb() + (c - ntb);
            };
            {
                std::vector<int> rep(cf.dots.size(), -1);
                for (int c = 0; c < fix.total(); ++c) {
                    int b = cf.block[c];
                    if (rep[b] < 0)
                        rep[b] = f_univ(c);
                    else
                        acc.dsu.unite(rep[b], f_univ(c));
                }
            }
            {
                std::vector<int> rep(cg.dots.size(), -1);
                for (int c = 0; c < gix.total(); ++c) {
                    int b = cg.block[c];
                    if (rep[b] < 0)
                        rep[b] = g_univ(c);
                    else
                        acc.dsu.unite(rep[b], g_univ(c));
                }
            }
            {
                std::vector<char> done_f(cf.dots.size(), 0), done_g(cg.dots.size(), 0);
                for (int c = 0; c < fix.total(); ++c) {
                    int b = cf.block[c];
                    if (done_f[b]) continue;
                    done_f[b] = 1;
                    int r = acc.dsu.find(f_univ(c));
                    acc.chi[r] += chif[b];
                    acc.dots[r] += cf.dots[b];
                }
                for (int c = 0; c < gix.total(); ++c) {
                    int b = cg.block[c];
                    if (done_g[b]) continue;
                    done_g[b] = 1;
                    int r = acc.dsu.find(g_univ(c));
                    acc.chi[r] += chig[b];
                    acc.dots[r] += cg.dots[b];
                }
                // gluing interfaces: subtract chi of each middle curve
                for (int i = 0; i < fix.ta; ++i) acc.chi[acc.dsu.find(F + i)] -= 1;
            }
            for (auto& oc : normalize_glue(s, u, acc))
                out.add_term(oc.cob, xf * xg * Coeff(oc.mult));
        }
    }
    return out;
}

namespace detail {

SmoothingSurgery curl_smoothing(const OrientedSmoothing& s, int j, CurlSign sign, bool strict) {
    const int bc = s.boundary_count;
    require(bc >= 2, Err::arity_mismatch, "curl needs at least two boundary points");
    require(j >= 0 && j < bc, Err::arity_mismatch, "curl position out of range");
    require(sign == CurlSign::positive || bc >= 4, Err::arity_mismatch,
            "negative curl needs at least four boundary points");
    const int jj = (j + 1) % bc;
    if (strict) {
        require(s.is_alternating(), Err::orientation_mismatch,
                "curl on a non-alternating smoothing");
        bool head_j = s.is_head(j);
        require((sign == CurlSign::positive) == head_j, Err::orientation_mismatch,
                "curl sign incompatible with strand orientations");
    }

    auto newidx = [&](int p) {
        int d = 0;
        if (j < p) ++d;
        if (jj < p) ++d;
        return p - d;
    };

    auto at = s.arc_at_table();
    const int a = at[j], b = at[jj];

    std::vector<Arc> new_arcs;
    std::vector<int> arc_slot(s.arcs.size(), -1);
    int closed_loop_sign = 0;
    for (int i = 0; i < int(s.arcs.size()); ++i) {
        if (i == a || i == b) continue;
        arc_slot[i] = int(new_arcs.size());
        new_arcs.push_back({newidx(s.arcs[i].tail), newidx(s.arcs[i].head)});
    }
    int merged_slot = -1;
    if (a == b) {
        closed_loop_sign = (sign == CurlSign::positive) ? 1 : -1;
    } else {
        const Arc &A = s.arcs[a], &B = s.arcs[b];
        Arc merged;
        bool a_in = A.head == j || A.head == jj;  // A flows into the junction
        bool b_in = B.head == j || B.head == jj;
        if (a_in && !b_in)
            merged = {newidx(A.tail), newidx(B.head)};
        else if (b_in && !a_in)
            merged = {newidx(B.tail), newidx(A.head)};
        else
            merged = {newidx(A.other(A.touches(j) ? j : jj)),
                      newidx(B.other(B.touches(j) ? j : jj))};
        merged_slot = int(new_arcs.size());
        new_arcs.push_back(merged);
    }

    std::vector<int> new_loops;
    std::vector<int> loop_slot(s.loops.size(), -1);
    for (int i = 0; i < int(s.loops.size()); ++i) {
        loop_slot[i] = int(new_loops.size());
        new_loops.push_back(s.loops[i]);
    }
    int closed_slot = -1;
    if (closed_loop_sign != 0) {
        closed_slot = int(new_loops.size());
        new_loops.push_back(closed_loop_sign);
    }

    SmoothingSurgery surg;
    surg.out = OrientedSmoothing::make_relaxed(bc - 2, new_arcs, new_loops);

    std::vector<int> arc_pos(new_arcs.size(), -1);
    for (int i = 0; i < int(new_arcs.size()); ++i) {
        for (int o = 0; o < int(surg.out.arcs.size()); ++o)
            if (surg.out.arcs[o].tail == new_arcs[i].tail) {
                arc_pos[i] = o;
                break;
            }
    }
    const int na = int(surg.out.arcs.size());
    int pos_count = 0;
    for (int v : new_loops) pos_count += (v == 1);
    std::vector<int> loop_pos(new_loops.size(), -1);
    {
        int seen_pos = 0, seen_neg = 0;
        for (int i = 0; i < int(new_loops.size()); ++i) {
            if (new_loops[i] == 1)
                loop_pos[i] = na + seen_pos++;
            else
                loop_pos[i] = na + pos_count + seen_neg++;
        }
    }

    surg.curve_map.assign(s.num_curves(), -1);
    for (int i = 0; i < int(s.arcs.size()); ++i) {
        if (i == a || i == b) {
            surg.curve_map[i] = (a == b) ? loop_pos[closed_slot] : arc_pos[merged_slot];
        } else {
            surg.curve_map[i] = arc_pos[arc_slot[i]];
        }
    }
    for (int i = 0; i < int(s.loops.size()); ++i)
        surg.curve_map[int(s.arcs.size()) + i] = loop_pos[loop_slot[i]];
    return surg;
}

JoinSurgery join_smoothings(const OrientedSmoothing& s1, int p1, const OrientedSmoothing& s2,
                            int p2, bool strict) {
    const int bc1 = s1.boundary_count, bc2 = s2.boundary_count;
    require(bc1 >= 2 && bc2 >= 2, Err::arity_mismatch, "join needs boundary on both inputs");
    require(p1 >= 0 && p1 < bc1 && p2 >= 0 && p2 < bc2, Err::arity_mismatch,
            "join position out of range");
    if (strict) {
        require(s1.is_alternating() && s2.is_alternating(), Err::orientation_mismatch,
                "join of non-alternating smoothings");
        require(s1.is_head(p1) != s2.is_head(p2), Err::orientation_mismatch,
                "joined points must have opposite in/out orientation");
    }

    JoinSurgery surg;
    surg.pos_map_1.assign(bc1, -1);
    surg.pos_map_2.assign(bc2, -1);
    int next = 0;
    for (int i = 0; i < bc1; ++i) {
        if (i == p1) {
            for (int d = 1; d < bc2; ++d) surg.pos_map_2[(p2 + d) % bc2] = next++;
        } else {
            surg.pos_map_1[i] = next++;
        }
    }

    auto at1 = s1.arc_at_table(), at2 = s2.arc_at_table();
    const int a1 = at1[p1], a2 = at2[p2];
    std::vector<Arc> new_arcs;
    std::vector<int> slot1(s1.arcs.size(), -1), slot2(s2.arcs.size(), -1);
    for (int i = 0; i < int(s1.arcs.size()); ++i) {
        if (i == a1) continue;
        slot1[i] = int(new_arcs.size());
        new_arcs.push_back({surg.pos_map_1[s1.arcs[i].tail], surg.pos_map_1[s1.arcs[i].head]});
    }
    for (int i = 0; i < int(s2.arcs.size()); ++i) {
        if (i == a2) continue;
        slot2[i] = int(new_arcs.size());
        new_arcs.push_back({surg.pos_map_2[s2.arcs[i].tail], surg.pos_map_2[s2.arcs[i].head]});
    }
    const Arc &A = s1.arcs[a1], &B = s2.arcs[a2];
    Arc merged;
    if (A.head == p1 && B.tail == p2)
        merged = {surg.pos_map_1[A.tail], surg.pos_map_2[B.head]};
    else if (B.head == p2 && A.tail == p1)
        merged = {surg.pos_map_2[B.tail], surg.pos_map_1[A.head]};
    else
        merged = {surg.pos_map_1[A.other(p1)], surg.pos_map_2[B.other(p2)]};
    int merged_slot = int(new_arcs.size());
    new_arcs.push_back(merged);

    std::vector<int> new_loops;
    std::vector<int> lslot1(s1.loops.size(), -1), lslot2(s2.loops.size(), -1);
    for (int i = 0; i < int(s1.loops.size()); ++i) {
        lslot1[i] = int(new_loops.size());
        new_loops.push_back(s1.loops[i]);
    }
    for (int i = 0; i < int(s2.loops.size()); ++i) {
        lslot2[i] = int(new_loops.size());
        new_loops.push_back(s2.loops[i]);
    }

    surg.out = OrientedSmoothing::make_relaxed(bc1 + bc2 - 2, new_arcs, new_loops);

    std::vector<int> arc_pos(new_arcs.size(), -1);
    for (int i = 0; i < int(new_arcs.size()); ++i)
        for (int o = 0; o < int(surg.out.arcs.size()); ++o)
            if (surg.out.arcs[o].tail == new_arcs[i].tail) {
                arc_pos[i] = o;
                break;
            }
    const int na = int(surg.out.arcs.size());
    int npos = 0;
    for (int v : new_loops) npos += (v == 1);
    std::vector<int> loop_pos(new_loops.size(), -1);
    {
        int sp = 0, sn = 0;
        for (int i = 0; i < int(new_loops.size()); ++i)
            loop_pos[i] = (new_loops[i] == 1) ? na + sp++ : na + npos + sn++;
    }

    surg.curve_map_1.assign(s1.num_curves(), -1);
    surg.curve_map_2.assign(s2.num_curves(), -1);
    for (int i = 0; i < int(s1.arcs.size()); ++i)
        surg.curve_map_1[i] = arc_pos[i == a1 ? merged_slot : slot1[i]];
    for (int i = 0; i < int(s2.arcs.size()); ++i)
        surg.curve_map_2[i] = arc_pos[i == a2 ? merged_slot : slot2[i]];
    for (int i = 0; i < int(s1.loops.size()); ++i)
        surg.curve_map_1[int(s1.arcs.size()) + i] = loop_pos[lslot1[i]];
    for (int i = 0; i < int(s2.loops.size()); ++i)
        surg.curve_map_2[int(s2.arcs.size()) + i] = loop_pos[lslot2[i]];
    return surg;
}

CobLin curl_coblin(const CobLin& f, int j, CurlSign sign, bool strict) {
    SmoothingSurgery sb = curl_smoothing(f.bottom, j, sign, strict);
    SmoothingSurgery st = curl_smoothing(f.top, j, sign, strict);
    CurveIx old_ix = CurveIx::of(f.bottom, f.top);
    CurveIx out_ix = CurveIx::of(sb.out, st.out);
    const int F = out_ix.total();
    const int nb_old = old_ix.nb();
    const int nb_new = out_ix.nb();

    auto bat = f.bottom.arc_at_table();
    const int jj = (j + 1) % f.bottom.boundary_count;

    CobLin out(sb.out, st.out);
    for (const auto& [c, x] : f.terms) {
        auto chi = block_chi(f.bottom, f.top, c);
        GlueAccum acc(F);
        auto univ = [&](int old_curve) {
            return old_curve < nb_old ? sb.curve_map[old_curve]
                                      : nb_new + st.curve_map[old_curve - nb_old];
        };
        std::vector<int> rep(c.dots.size(), -1);
        for (int cu = 0; cu < old_ix.total(); ++cu) {
            int b = c.block[cu];
            if (rep[b] < 0)
                rep[b] = univ(cu);
            else
                acc.dsu.unite(rep[b], univ(cu));
        }
        // the curl band joins the pieces at boundary points j and j+1
        acc.dsu.unite(univ(old_ix.bot_arc(bat[j])), univ(old_ix.bot_arc(bat[jj])));
        std::vector<char> done(c.dots.size(), 0);
        for (int cu = 0; cu < old_ix.total(); ++cu) {
            int b = c.block[cu];
            if (done[b]) continue;
            done[b] = 1;
            int r = acc.dsu.find(univ(cu));
            acc.chi[r] += chi[b];
            acc.dots[r] += c.dots[b];
        }
        acc.chi[acc.dsu.find(univ(old_ix.bot_arc(bat[j])))] -= 1;
        for (auto& oc : normalize_glue(sb.out, st.out, acc)) out.add_term(oc.cob, x * Coeff(oc.mult));
    }
    return out;
}

CobLin join_coblin(const CobLin& f1, int p1, const CobLin& f2, int p2, bool strict) {
    JoinSurgery jb = join_smoothings(f1.bottom, p1, f2.bottom, p2, strict);
    JoinSurgery jt = join_smoothings(f1.top, p1, f2.top, p2, strict);
    CurveIx ix1 = CurveIx::of(f1.bottom, f1.top);
    CurveIx ix2 = CurveIx::of(f2.bottom, f2.top);
    CurveIx out_ix = CurveIx::of(jb.out, jt.out);
    const int F = out_ix.total();
    const int nb_new = out_ix.nb();

    auto bat1 = f1.bottom.arc_at_table(), bat2 = f2.bottom.arc_at_table();

    CobLin out(jb.out, jt.out);
    for (const auto& [c1, x1] : f1.terms) {
        auto chi1 = block_chi(f1.bottom, f1.top, c1);
        for (const auto& [c2, x2] : f2.terms) {
            auto chi2 = block_chi(f2.bottom, f2.top, c2);
            GlueAccum acc(F);
            auto univ1 = [&](int cu) {
                return cu < ix1.nb() ? jb.curve_map_1[cu] : nb_new + jt.curve_map_1[cu - ix1.nb()];
            };
            auto univ2 = [&](int cu) {
                return cu < ix2.nb() ? jb.curve_map_2[cu] : nb_new + jt.curve_map_2[cu - ix2.nb()];
            };
            {
                std::vector<int> rep(c1.dots.size(), -1);
                for (int cu = 0; cu < ix1.total(); ++cu) {
                    int b = c1.block[cu];
                    if (rep[b] < 0)
                        rep[b] = univ1(cu);
                    else
                        acc.dsu.unite(rep[b], univ1(cu));
                }
            }
            {
                std::vector<int> rep(c2.dots.size(), -1);
                for (int cu = 0; cu < ix2.total(); ++cu) {
                    int b = c2.block[cu];
                    if (rep[b] < 0)
                        rep[b] = univ2(cu);
                    else
                        acc.dsu.unite(rep[b], univ2(cu));
                }
            }
            acc.dsu.unite(univ1(ix1.bot_arc(bat1[p1])), univ2(ix2.bot_arc(bat2[p2])));
            {
                std::vector<char> done1(c1.dots.size(), 0), done2(c2.dots.size(), 0);
                for (int cu = 0; cu < ix1.total(); ++cu) {
                    int b = c1.block[cu];
                    if (done1[b]) continue;
                    done1[b] = 1;
                    int r = acc.dsu.find(univ1(cu));
                    acc.chi[r] += chi1[b];
                    acc.dots[r] += c1.dots[b];
                }
                for (int cu = 0; cu < ix2.total(); ++cu) {
                    int b = c2.block[cu];
                    if (done2[b]) continue;
                    done2[b] = 1;
                    int r = acc.dsu.find(univ2(cu));
                    acc.chi[r] += chi2[b];
                    acc.dots[r] += c2.dots[b];
                }
            }
            acc.chi[acc.dsu.find(univ1(ix1.bot_arc(bat1[p1])))] -= 1;
            for (auto& oc : normalize_glue(jb.out, jt.out, acc))
                out.add_term(oc.cob, x1 * x2 * Coeff(oc.mult));
        }
    }
    return out;
}

}  // namespace detail

}  // namespace kh
