#include "kh/complex.hpp"

#include <algorithm>

namespace kh {

void ChainComplex::validate() const {
    if (empty()) {
        require(diffs.empty(), Err::not_a_complex, "differentials without objects");
        return;
    }
    require(int(diffs.size()) == levels() - 1, Err::not_a_complex,
            "expected one differential per consecutive pair of levels");
    int bc = -1;
    for (const auto& obj : objects)
        for (const auto& g : obj) {
            if (bc < 0) bc = g.s.boundary_count;
            require(g.s.boundary_count == bc, Err::not_a_complex,
                    "objects with mixed boundary counts");
        }
    for (int i = 0; i < int(diffs.size()); ++i) {
        const MatMorphism& d = diffs[i];
        require(d.domain == objects[i] && d.codomain == objects[i + 1], Err::not_a_complex,
                "differential endpoints do not match objects");
        for (int r = 0; r < d.rows(); ++r)
            for (int c = 0; c < d.cols(); ++c) {
                const CobLin& cell = d.cells[r][c];
                require(cell.bottom == d.domain[c].s && cell.top == d.codomain[r].s,
                        Err::not_a_complex, "cell ends do not match objects");
                for (const auto& [cob, x] : cell.terms) {
                    int deg = degree(cell.bottom, cell.top, cob);
                    if (deg + d.codomain[r].q - d.domain[c].q != 0)
                        fail(Err::inhomogeneous,
                             "inhomogeneous differential at degree " +
                                 std::to_string(min_degree + i) + " cell (" + std::to_string(r) +
                                 "," + std::to_string(c) + ")");
                }
            }
    }
    for (int i = 0; i + 1 < int(diffs.size()); ++i) {
        if (!mat_compose(diffs[i + 1], diffs[i]).is_zero())
            fail(Err::not_a_complex, "d^2 != 0 at degree " + std::to_string(min_degree + i));
    }
}

std::optional<std::tuple<int, int, int>> ChainComplex::first_loop() const {
    for (int i = 0; i < levels(); ++i)
        for (int e = 0; e < int(objects[i].size()); ++e)
            if (!objects[i][e].s.loops.empty()) return std::make_tuple(min_degree + i, e, 0);
    return std::nullopt;
}

namespace detail {

DeloopMaps deloop_maps(const GradedSmoothing& g, int loop) {
    require(loop >= 0 && loop < int(g.s.loops.size()), Err::no_such_loop, "no such loop");
    DeloopMaps dm;
    OrientedSmoothing bare = remove_loop(g.s, loop);
    dm.plus = {bare, g.q + 1};
    dm.minus = {bare, g.q - 1};
    dm.fwd_plus = deloop_cap(g.s, loop, true);
    dm.fwd_minus = deloop_cap(g.s, loop, false);
    dm.bwd_plus = deloop_cup(g.s, loop, false);
    dm.bwd_minus = deloop_cup(g.s, loop, true);
    return dm;
}

void deloop_rows(MatMorphism& m, int entry, const DeloopMaps& dm) {
    std::vector<CobLin> old = std::move(m.cells[entry]);
    m.codomain[entry] = dm.plus;
    m.codomain.insert(m.codomain.begin() + entry + 1, dm.minus);
    std::vector<CobLin> row_plus, row_minus;
    for (int j = 0; j < int(old.size()); ++j) {
        row_plus.push_back(compose_cob(old[j], dm.fwd_plus));
        row_minus.push_back(compose_cob(old[j], dm.fwd_minus));
    }
    m.cells[entry] = std::move(row_plus);
    m.cells.insert(m.cells.begin() + entry + 1, std::move(row_minus));
}

void deloop_cols(MatMorphism& m, int entry, const DeloopMaps& dm) {
    m.domain[entry] = dm.plus;
    m.domain.insert(m.domain.begin() + entry + 1, dm.minus);
    for (auto& row : m.cells) {
        CobLin old = std::move(row[entry]);
        row[entry] = compose_cob(dm.bwd_plus, old);
        row.insert(row.begin() + entry + 1, compose_cob(dm.bwd_minus, old));
    }
}

bool invertible_cell(const MatMorphism& m, int i, int j, GroundRing ring) {
    if (m.domain[j] != m.codomain[i]) return false;
    const CobLin& cell = m.cells[i][j];
    if (cell.is_zero()) return false;
    auto u = identity_multiple(cell);
    return u && is_unit(*u, ring);
}

}  // namespace detail

void ChainComplex::deloop(int r, int entry, int loop) {
    int i = idx(r);
    require(i >= 0 && i < levels() && entry >= 0 && entry < int(objects[i].size()),
            Err::no_such_loop, "deloop target out of range");
    auto dm = detail::deloop_maps(objects[i][entry], loop);
    objects[i][entry] = dm.plus;
    objects[i].insert(objects[i].begin() + entry + 1, dm.minus);
    if (i > 0) detail::deloop_rows(diffs[i - 1], entry, dm);
    if (i < int(diffs.size())) detail::deloop_cols(diffs[i], entry, dm);
}

std::optional<std::tuple<int, int, int>> ChainComplex::find_invertible_entry(
    GroundRing ring) const {
    for (int i = 0; i < int(diffs.size()); ++i) {
        const MatMorphism& d = diffs[i];
        for (int j = 0; j < d.cols(); ++j)
            for (int r = 0; r < d.rows(); ++r)
                if (detail::invertible_cell(d, r, j, ring))
                    return std::make_tuple(min_degree + i, r, j);
    }
    return std::nullopt;
}

void ChainComplex::gaussian_eliminate(int r, int i, int j, GroundRing ring) {
    int lv = idx(r);
    require(lv >= 0 && lv < int(diffs.size()), Err::not_invertible, "no differential at degree");
    MatMorphism& d = diffs[lv];
    require(i >= 0 && i < d.rows() && j >= 0 && j < d.cols() &&
                detail::invertible_cell(d, i, j, ring),
            Err::not_invertible, "entry is not an invertible cell");
    Coeff inv = 1 / *identity_multiple(d.cells[i][j]);

    for (int r2 = 0; r2 < d.rows(); ++r2) {
        if (r2 == i) continue;
        const CobLin& gamma = d.cells[r2][j];
        if (gamma.is_zero()) continue;
        for (int c2 = 0; c2 < d.cols(); ++c2) {
            if (c2 == j) continue;
            const CobLin& delta = d.cells[i][c2];
            if (delta.is_zero()) continue;
            CobLin corr = compose_cob(delta, gamma);
            corr *= inv;
            d.cells[r2][c2] -= corr;
        }
    }
    d.delete_row(i);
    d.delete_col(j);
    objects[lv].erase(objects[lv].begin() + j);
    objects[lv + 1].erase(objects[lv + 1].begin() + i);
    if (lv > 0) diffs[lv - 1].delete_row(j);
    if (lv + 1 < int(diffs.size())) diffs[lv + 1].delete_col(i);
}

bool ChainComplex::is_reduced(GroundRing ring) const {
    return !first_loop().has_value() && !find_invertible_entry(ring).has_value();
}

ReductionReport ChainComplex::dg_reduce(GroundRing ring) {
    ReductionReport rep;
    for (;;) {
        if (auto l = first_loop()) {
            auto [r, e, lp] = *l;
            deloop(r, e, lp);
            rep.deloop_count++;
            continue;
        }
        if (auto inv = find_invertible_entry(ring)) {
            auto [r, i, j] = *inv;
            gaussian_eliminate(r, i, j, ring);
            rep.elimination_count++;
            continue;
        }
        break;
    }
    trim();
    return rep;
}

void ChainComplex::trim() {
    while (!objects.empty() && objects.front().empty()) {
        objects.erase(objects.begin());
        if (!diffs.empty()) diffs.erase(diffs.begin());
        min_degree++;
    }
    while (!objects.empty() && objects.back().empty()) {
        objects.pop_back();
        if (!diffs.empty()) diffs.pop_back();
    }
    if (objects.empty()) {
        diffs.clear();
        min_degree = 0;
    }
}

std::vector<std::tuple<int, OrientedSmoothing, int>> ChainComplex::graded_object_multiset()
    const {
    std::vector<std::tuple<int, OrientedSmoothing, int>> out;
    for (int i = 0; i < levels(); ++i)
        for (const auto& g : objects[i]) out.emplace_back(min_degree + i, g.s, g.q);
    std::sort(out.begin(), out.end());
    return out;
}

ChainComplex ChainComplex::single(int degree, MatObject obj) {
    ChainComplex c;
    c.min_degree = degree;
    c.objects.push_back(std::move(obj));
    return c;
}

}  // namespace kh
