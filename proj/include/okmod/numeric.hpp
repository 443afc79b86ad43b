#pragma once
#include "okmod/matrix.hpp"

// Certified numerics for the trace form. Everything leaving this header is an
// exact rational; floating point (MPFR) stays inside numeric.cpp.

namespace okmod {

// Gram matrix of T2 on the basis W (rows = basis elements over the power
// basis of f): |G_true(i,j) - mid(i,j)| <= rad for all i, j.
struct CertifiedGram {
    size_t d = 0;
    std::vector<Rat> mid;
    Rat rad;
    long prec = 0; // MPFR precision that achieved rad
};

// precision is doubled until rad < 2^-(target_bits)
CertifiedGram certified_gram(const IntVec &f, const RatMatrix &W, long target_bits);

// round(2^e * chol(G)) with G = R R^t, R lower triangular
IntMatrix rounded_cholesky(const CertifiedGram &G, long e);

// rational bounds on real functions, accurate to about 2^-bits relative
Rat sqrt_upper(const Rat &x, long bits = 64);
Rat sqrt_lower(const Rat &x, long bits = 64);
Rat pow_upper(const Rat &x, const Rat &y, long bits = 64); // x^y, x > 0
Rat pow_lower(const Rat &x, const Rat &y, long bits = 64);
Rat log2_upper(const Rat &x, long bits = 64);

// rational with denominator 2^bits that is >= x (<= x)
Rat round_up(const Rat &x, long bits = 64);
Rat round_down(const Rat &x, long bits = 64);

} // namespace okmod
