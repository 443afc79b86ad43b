#pragma once
#include "okmod/pseudo.hpp"
#include "okmod/redux.hpp"

#include <functional>

namespace okmod {

EuclidStep euclidean_step(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b,
                          const FieldElement &alpha, const FieldElement &beta);

// size bounds tracked alongside the elimination (diagnostics only)
struct HnfBounds {
    Rat B_id; // d^4 + d^2 log2 |disc|
    Rat B_e;  // S(d)/d + B_id/d + C
};
HnfBounds hnf_bounds(const NumberField &K, const FractionalIdeal &d);

// called with (row index, ideal) after every normalization
using NormalizationObserver = std::function<void(size_t, const FractionalIdeal &)>;

// Pseudo-HNF of a full-rank pseudo-matrix of a module in O_K^m, given a
// nonzero multiple dd of its determinantal ideal. Returns m rows: row k has
// a 1 in column k and zeros to its right.
PseudoMatrix pseudo_hnf(const NumberField &K, const PseudoMatrix &P, const FractionalIdeal &dd,
                        const NormalizationObserver &observer = {});

// unique representative: off-diagonal entries reduced on the HNF basis of
// b_i^-1 b_j with coordinates in [0, 1)
PseudoMatrix canonicalize(const NumberField &K, const PseudoMatrix &H);

// Z-basis (d n x d m) of the module: for each row i and each HNF basis
// element w of a_i, the coordinates of w A_i
IntMatrix to_absolute(const NumberField &K, const PseudoMatrix &P);

} // namespace okmod
