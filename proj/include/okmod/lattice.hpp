#pragma once
#include "okmod/number_field.hpp"

// Lattice reduction of ideals with respect to the T2 form. LLL runs exactly
// on the integral Gram matrix G_e = R_e R_e^t, R_e = round(2^e chol(G)).

namespace okmod {

struct LatticeContext {
    long e = 0;
    IntMatrix Re;          // lower triangular, R_e R_e^t ~ 2^(2e) G
    IntMatrix Ge;          // R_e R_e^t
    Rat delta{99, 100};    // Lovasz parameter
    Rat eta{1, 2};         // size-reduction bound
    Rat theta{0};          // exact arithmetic: no additive slack
    Rat ell;               // upper bound on 1 / sqrt(delta - eta^2)
    Rat eps;               // |x Delta x^t| <= eps 2^(2e) T2(x), Delta = G_e - 2^(2e) G
    Rat C_quality;         // >= 1, loss from using G_e instead of G
    Rat C_quality_sq;      // exact square of C_quality (before the max with 1)
    Rat ell_abs;           // upper bound, ell_abs^(d(d-1)) >= C_quality^2 ell^(d(d-1))
    Rat bound_factor;      // exact: C_quality^2 (delta - eta^2)^(-d(d-1)/2)
};

long default_precision(size_t d, const Int &disc);
std::shared_ptr<const LatticeContext> build_context(const NumberField &K, long e);

// LLL (delta = 99/100) of the rows of M for the form x Gram y^t; rows must
// be linearly independent. The returned rows are a unimodular image of M.
IntMatrix lll_rows(const IntMatrix &M, const IntMatrix &Gram, IntMatrix *transform = nullptr);

// LLL-reduced basis of the lattice spanned by the rows of B (coordinates
// over the integral basis)
IntMatrix lll_reduce(const NumberField &K, const IntMatrix &B);
// first vector of the reduced basis
IntVec shortest_basis_element(const NumberField &K, const IntMatrix &B);

// rigorous bounds on T2(sum v_i w_i)
Rat T2_upper(const NumberField &K, const IntVec &v);
Rat T2_lower(const NumberField &K, const IntVec &v);

// the LLL guarantees transported to T2 for the lattice of index N in O:
//   T2(b_1)^d <= ell_abs^(d(d-1)) |disc| N^2
//   prod T2(b_i) <= ell_abs^(d(d-1)) |disc| N^2
struct QualityReport {
    bool first_ok = false;
    bool product_ok = false;
    Rat first_ratio;   // lhs / rhs of the first inequality (upper bound)
    Rat product_ratio;
};
QualityReport quality_check(const NumberField &K, const IntMatrix &reduced, const Int &N);

} // namespace okmod
