#pragma once
#include "okmod/ideal.hpp"

namespace okmod {

using ElemRow = std::vector<FieldElement>;
using ElemMatrix = std::vector<ElemRow>;

// module sum_i ideals[i] * A[i]
struct PseudoMatrix {
    ElemMatrix A;
    std::vector<FractionalIdeal> ideals;

    size_t rows() const { return A.size(); }
    size_t cols() const { return A.empty() ? 0 : A[0].size(); }
};

// entries a_ij in row_ideals[i] * col_ideals[j]^-1
struct BiPseudoMatrix {
    ElemMatrix A;
    std::vector<FractionalIdeal> row_ideals, col_ideals;

    size_t size() const { return A.size(); }
};

} // namespace okmod
