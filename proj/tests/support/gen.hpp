#pragma once
#include <random>
#include <vector>

#include "kh/cobordism.hpp"
#include "kh/smoothing.hpp"

namespace khtest {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {  // inclusive
    return lo + int(rng() % (unsigned long long)(hi - lo + 1));
}

// non-crossing perfect matching on the positions in [lo, hi)
inline void random_matching(Rng& rng, int lo, int hi, std::vector<std::pair<int, int>>& out) {
    if (lo >= hi) return;
    int n = (hi - lo) / 2;
    int pick = uniform(rng, 0, n - 1);
    int m = lo + 2 * pick + 1;
    out.push_back({lo, m});
    random_matching(rng, lo + 1, m, out);
    random_matching(rng, m + 1, hi, out);
}

inline kh::OrientedSmoothing random_smoothing(Rng& rng, int k, int max_loops = 2) {
    std::vector<std::pair<int, int>> chords;
    random_matching(rng, 0, 2 * k, chords);
    int head_parity = uniform(rng, 0, 1);
    std::vector<kh::Arc> arcs;
    for (auto [a, b] : chords) {
        if (a % 2 == head_parity)
            arcs.push_back({b, a});
        else
            arcs.push_back({a, b});
    }
    std::vector<int> loops;
    int nl = uniform(rng, 0, max_loops);
    for (int i = 0; i < nl; ++i) loops.push_back(uniform(rng, 0, 1) ? 1 : -1);
    return kh::OrientedSmoothing::make(2 * k, arcs, loops);
}

// random cobordism between s and t (same boundary): a random component
// structure refining the forced boundary circles, expanded to normal form
inline kh::CobLin random_cobordism(Rng& rng, const kh::OrientedSmoothing& s,
                                   const kh::OrientedSmoothing& t, int extra_merges = 2) {
    using namespace kh;
    detail::CurveIx ix = detail::CurveIx::of(s, t);
    int n = ix.total();
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    auto bat = s.arc_at_table(), tat = t.arc_at_table();
    for (int p = 0; p < s.boundary_count; ++p) unite(ix.bot_arc(bat[p]), ix.top_arc(tat[p]));
    for (int e = 0; e < extra_merges && n > 1; ++e)
        if (uniform(rng, 0, 1)) unite(uniform(rng, 0, n - 1), uniform(rng, 0, n - 1));
    std::vector<int> naive(n);
    for (int i = 0; i < n; ++i) naive[i] = find(i);
    // normalize block labels and roll random dots
    std::vector<int> relabel(n, -1);
    int nb = 0;
    for (int i = 0; i < n; ++i)
        if (relabel[naive[i]] < 0) relabel[naive[i]] = nb++;
    for (int& b : naive) b = relabel[b];
    std::vector<int> dots(nb);
    for (int b = 0; b < nb; ++b) dots[b] = uniform(rng, 0, 1);
    Coeff coeff = Coeff(uniform(rng, 1, 3)) * (uniform(rng, 0, 1) ? 1 : -1);
    return expand_to_normal_form(s, t, naive, dots, coeff);
}

// small linear combination of random cobordisms
inline kh::CobLin random_coblin(Rng& rng, const kh::OrientedSmoothing& s,
                                const kh::OrientedSmoothing& t, int terms = 2) {
    kh::CobLin f(s, t);
    int n = uniform(rng, 1, terms);
    for (int i = 0; i < n; ++i) f += random_cobordism(rng, s, t);
    return f;
}

}  // namespace khtest
