#pragma once
#include <vector>

#include "kh/cobordism.hpp"

namespace kh {

// Formal direct sum of degree-shifted smoothings ("column vector" object).
using MatObject = std::vector<GradedSmoothing>;

// A matrix of formal cobordism sums; cells[i][j] : domain[j] -> codomain[i].
struct MatMorphism {
    MatObject domain, codomain;
    std::vector<std::vector<CobLin>> cells;

    static MatMorphism zero(MatObject dom, MatObject cod);
    static MatMorphism identity(const MatObject& o);
    bool is_zero() const;
    int rows() const { return int(codomain.size()); }
    int cols() const { return int(domain.size()); }
    void delete_row(int i);
    void delete_col(int j);
};

// F after G, by the matrix product (F o G)_{ij} = sum_k F_{ik} G_{kj}.
MatMorphism mat_compose(const MatMorphism& F, const MatMorphism& G);
MatMorphism mat_add(const MatMorphism& F, const MatMorphism& G);

}  // namespace kh
