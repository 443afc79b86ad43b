#pragma once
#include "okmod/matrix.hpp"

namespace okmod {

// Hermite forms are lower triangular in row convention: row c has its pivot
// in column c and nothing to the right of it; entries below a pivot are
// reduced into [0, pivot).

IntMatrix hnf(const IntMatrix &A);

// HNF of [A; lambda*I] computed with all arithmetic modulo lambda^2 (Howell
// form + canonical lift). Under lambda*Z^m in the row span this is hnf(A).
IntMatrix hnf_with_modulus(const IntMatrix &A, const Int &lambda);

// Howell form over Z/modulus in the usual echelon orientation (pivot is the
// leftmost nonzero entry, rows sorted by pivot column, zero rows dropped,
// entries above a pivot reduced into [0, pivot)).
IntMatrix howell(const IntMatrix &A, const Int &modulus);

// exact solve of A x = b (column orientation)
RatVec dixon_solve(const IntMatrix &A, const IntVec &b);
// exact solve of x A = b (row orientation)
RatVec dixon_solve_row(const IntMatrix &A, const IntVec &b);

// X with H X = B for lower-triangular H; arithmetic is done modulo
// modulus*|det H| and the result is returned reduced into [0, modulus).
// modulus == 0 means exact integer substitution.
IntMatrix back_substitute(const IntMatrix &H, const IntMatrix &B,
                          const Int &modulus);

// Smith form over Z, same shape as A, d1 | d2 | ... (test oracle)
IntMatrix z_snf(const IntMatrix &A);

// determinant via fraction-free elimination
Int det(const IntMatrix &A);
// rank over Q
size_t rank(const IntMatrix &A);
// inverse as adj / det, returned as canonical RatMatrix
RatMatrix inverse(const IntMatrix &A);
RatMatrix inverse(const RatMatrix &A);

// is v (rational row) in the Z-span of the rows of the lower-triangular
// full-rank H?  On success writes the coordinates to *coords.
bool in_lattice(const IntMatrix &H, const RatVec &v, IntVec *coords = nullptr);

} // namespace okmod
