#pragma once
#include "okmod/pseudo.hpp"
#include "okmod/residue_crt.hpp"

namespace okmod {

// log2 of an upper bound on 2 |det A'|_inf over all k x k submatrices A'
// of the integral matrix A, k = min(rows, cols)
Rat det_bound(const NumberField &K, const ElemMatrix &A);

// determinant over a residue field, as integral-basis coordinates mod p
std::vector<fp::u64> det_mod_prime(const NumberField &K, const ResidueSystem &S,
                                   const ElemMatrix &A);

// exact determinant by multi-modular CRT; jobs > 1 spreads primes over threads
FieldElement det(const NumberField &K, const ElemMatrix &A, unsigned jobs = 1);

// rank and a nonsingular rank x rank submatrix (rows, cols ascending) with its
// determinant; the zero matrix gives rank 0 and determinant 1
struct RankWitness {
    size_t rank = 0;
    std::vector<size_t> rows, cols;
    FieldElement det_sub;
};
RankWitness rank_and_submatrix(const NumberField &K, const ElemMatrix &A, unsigned jobs = 1);

// det(A) prod ideals for square nonsingular A
FractionalIdeal determinantal_ideal(const NumberField &K, const PseudoMatrix &P,
                                    unsigned jobs = 1);
// one maximal minor's ideal: a multiple of the determinantal ideal (rank = cols)
FractionalIdeal determinantal_ideal_multiple(const NumberField &K, const PseudoMatrix &P,
                                             unsigned jobs = 1);

// product by balanced splitting
FractionalIdeal ideal_product(const NumberField &K, const std::vector<FractionalIdeal> &v);

} // namespace okmod
