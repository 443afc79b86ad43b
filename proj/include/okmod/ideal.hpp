#pragma once
#include "okmod/number_field.hpp"

#include <string>

namespace okmod {

// (1/den) * Z-span of the rows of num; num is in HNF (so num(0,0) = min of
// the numerator) and gcd(den, content(num)) == 1. Nonzero ideals only.
struct FractionalIdeal {
    IntMatrix num;
    Int den = 1;

    bool is_integral() const { return den == 1; }
    bool operator==(const FractionalIdeal &o) const = default;
};

FractionalIdeal make_ideal(IntMatrix hnf_num, Int den); // canonicalizes
FractionalIdeal unit_ideal(const NumberField &K);
FractionalIdeal principal(const NumberField &K, const FieldElement &a);
FractionalIdeal from_generators(const NumberField &K, const std::vector<FieldElement> &gens);
// ideal spanned over Z by rational rows num/den (need not be HNF)
FractionalIdeal from_basis(const NumberField &K, const IntMatrix &num, const Int &den);

FractionalIdeal add(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b);
FractionalIdeal mul(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b);
FractionalIdeal mul(const NumberField &K, const FieldElement &x, const FractionalIdeal &a);
FractionalIdeal scale(const FractionalIdeal &a, const Rat &q);
FractionalIdeal inv(const NumberField &K, const FractionalIdeal &a);
FractionalIdeal div(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b);

Rat min(const FractionalIdeal &a);   // generator of a intersect Q
Rat norm(const FractionalIdeal &a);  // absolute norm
// d^2 log2 min(numerator) + d^2 log2 den, rounded up
Rat size(const NumberField &K, const FractionalIdeal &a);
FieldElement basis_element(const FractionalIdeal &a, size_t i); // row i / den

bool contains(const NumberField &K, const FractionalIdeal &a, const FieldElement &x);
bool is_subset(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b);

// a, b integral with a + b = O: returns u in a with 1 - u in b
FieldElement idempotent(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b);

// g = alpha a + beta b, gamma in a g^-1, delta in b g^-1, alpha gamma + beta delta = 1
struct EuclidStep {
    FractionalIdeal g;
    FieldElement gamma, delta;
};
EuclidStep euclid(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b,
                  const FieldElement &alpha, const FieldElement &beta);

std::string to_string(const FractionalIdeal &a);

} // namespace okmod
