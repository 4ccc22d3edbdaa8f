#include "kh/matcat.hpp"

namespace kh {

MatMorphism MatMorphism::zero(MatObject dom, MatObject cod) {
    MatMorphism m;
    m.domain = std::move(dom);
    m.codomain = std::move(cod);
    m.cells.resize(m.codomain.size());
    for (size_t i = 0; i < m.codomain.size(); ++i) {
        m.cells[i].reserve(m.domain.size());
        for (size_t j = 0; j < m.domain.size(); ++j)
            m.cells[i].emplace_back(m.domain[j].s, m.codomain[i].s);
    }
    return m;
}

MatMorphism MatMorphism::identity(const MatObject& o) {
    MatMorphism m = zero(o, o);
    for (size_t i = 0; i < o.size(); ++i) m.cells[i][i] = identity_cobordism(o[i].s);
    return m;
}

bool MatMorphism::is_zero() const {
    for (const auto& row : cells)
        for (const auto& c : row)
            if (!c.is_zero()) return false;
    return true;
}

void MatMorphism::delete_row(int i) {
    codomain.erase(codomain.begin() + i);
    cells.erase(cells.begin() + i);
}

void MatMorphism::delete_col(int j) {
    domain.erase(domain.begin() + j);
    for (auto& row : cells) row.erase(row.begin() + j);
}

MatMorphism mat_compose(const MatMorphism& F, const MatMorphism& G) {
    require(F.domain == G.codomain, Err::dimension_mismatch, "mat_compose: shapes do not chain");
    MatMorphism out = MatMorphism::zero(G.domain, F.codomain);
    for (int i = 0; i < F.rows(); ++i)
        for (int k = 0; k < F.cols(); ++k) {
            if (F.cells[i][k].is_zero()) continue;
            for (int j = 0; j < G.cols(); ++j) {
                if (G.cells[k][j].is_zero()) continue;
                out.cells[i][j] += compose_cob(G.cells[k][j], F.cells[i][k]);
            }
        }
    return out;
}

MatMorphism mat_add(const MatMorphism& F, const MatMorphism& G) {
    require(F.domain == G.domain && F.codomain == G.codomain, Err::dimension_mismatch,
            "mat_add: shapes differ");
    MatMorphism out = F;
    for (int i = 0; i < F.rows(); ++i)
        for (int j = 0; j < F.cols(); ++j) out.cells[i][j] += G.cells[i][j];
    return out;
}

}  // namespace kh
