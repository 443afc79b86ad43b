#pragma once
#include "okmod/pseudo.hpp"

#include <functional>
#include <optional>

namespace okmod {

struct SnfTrace {
    // after every normalization, with the (integral) normalized ideal
    std::function<void(const FractionalIdeal &)> on_normalized;
    // at the end of every pass of the pivot loop for index i (0-based):
    // the ideal a_ii a_i b_i^-1 + d, and whether an off-diagonal
    // obstruction forced another pass
    std::function<void(size_t, const FractionalIdeal &, bool)> on_pass;
};

// a_ij in b_i a_j^-1 for all i, j
bool is_integral_bipseudo(const NumberField &K, const BiPseudoMatrix &B,
                          size_t *bad_i = nullptr, size_t *bad_j = nullptr);

// det(A) prod a_j b_j^-1
FractionalIdeal bipseudo_det_ideal(const NumberField &K, const BiPseudoMatrix &B, unsigned jobs = 1);

// first (row-major) entry (k, l), k, l < i, with a_kl a_l b_k^-1 not inside
// the test ideal t, and a witness g in b_i b_k^-1 (HNF basis order) with
// g a_kl not in t b_i a_l^-1
struct Obstruction {
    size_t k, l;
    FieldElement g;
};
std::optional<Obstruction> offdiag_obstruction_scan(const NumberField &K, const BiPseudoMatrix &B,
                                                    size_t i, const FractionalIdeal &t);

// elementary divisors d_1, ..., d_n (integral, d_(i-1) inside d_i) of the
// quotient; dd is det(A) prod a_j b_j^-1
std::vector<FractionalIdeal> pseudo_snf(const NumberField &K, const BiPseudoMatrix &B,
                                        const FractionalIdeal &dd, const SnfTrace &trace = {});

} // namespace okmod
