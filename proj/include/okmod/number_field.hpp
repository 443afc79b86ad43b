#pragma once
#include "okmod/matrix.hpp"
#include "okmod/numeric.hpp"

#include <memory>
#include <string>

namespace okmod {

struct LatticeContext;

// alpha = (sum c_i w_i) / den, gcd(den, content(c)) == 1, den > 0
struct FieldElement {
    IntVec c;
    Int den = 1;

    FieldElement() = default;
    FieldElement(IntVec coeffs, Int d = 1);

    bool is_zero() const;
    bool is_integral() const { return den == 1; }
    bool operator==(const FieldElement &o) const = default;
};

struct NumberField {
    size_t d = 0;
    IntVec f;             // c_0 .. c_d, monic
    RatMatrix W;          // row i: w_i over the power basis 1, x, ..., x^(d-1)
    IntMatrix P;          // row j: coordinates of x^j over the integral basis (P = W^-1)
    std::vector<IntMatrix> mul_table; // mul_table[i](j, k) = m_{i,j}^k
    IntMatrix T;          // Tr(w_i w_j)
    Int D;                // denominator of T^-1
    IntMatrix DT_inv;     // D * T^-1
    IntMatrix codiff;     // HNF of the rows of D * T^-1 (integral ideal)
    FieldElement delta1, delta2;  // two generators of codiff
    IntMatrix M_delta1, M_delta2;
    Int disc_K, disc_f, index;
    Rat C1, C2, C3, C;
    CertifiedGram gram;
    std::shared_ptr<const LatticeContext> lattice;
    std::string symbol = "x"; // printing only

    FieldElement one() const;
    FieldElement zero() const;
    FieldElement from_int(const Int &n) const;
    FieldElement from_rat(const Rat &q) const;
    FieldElement basis(size_t i) const;
};

// f = (c_0, ..., c_{d-1}, 1); basis rows over the power basis, first row 1.
// e <= 0 selects the default lattice precision.
std::shared_ptr<const NumberField> build_field(const IntVec &f, const RatMatrix &basis,
                                               long e = 0);

FieldElement canonical(FieldElement a);
FieldElement add(const FieldElement &a, const FieldElement &b);
FieldElement sub(const FieldElement &a, const FieldElement &b);
FieldElement neg(const FieldElement &a);
FieldElement scalar_mul(const Int &m, const FieldElement &a);
FieldElement scalar_mul(const Rat &q, const FieldElement &a);
FieldElement scalar_div(const FieldElement &a, const Int &m);

IntMatrix regular_representation(const NumberField &K, const FieldElement &g);
FieldElement mul(const NumberField &K, const FieldElement &a, const FieldElement &b);
FieldElement inv(const NumberField &K, const FieldElement &a);
FieldElement div(const NumberField &K, const FieldElement &a, const FieldElement &b);

Rat norm(const NumberField &K, const FieldElement &a);
Rat trace(const NumberField &K, const FieldElement &a);
// d * max log2|a_i| + d * log2(den), rounded up; size(0) = 0
Rat size(const NumberField &K, const FieldElement &a);
Int max_coeff(const FieldElement &a); // |numerator|_inf

// power-basis coordinates <-> integral-basis coordinates
RatVec to_power_basis(const NumberField &K, const FieldElement &a);
FieldElement from_power_basis(const NumberField &K, const RatVec &p);

} // namespace okmod
