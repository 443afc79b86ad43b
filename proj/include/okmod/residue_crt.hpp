#pragma once
#include "okmod/number_field.hpp"

#include <cstdint>

// Residue fields of unramified primes and CRT recombination.

namespace okmod {

namespace fp {

using u64 = std::uint64_t;
using Poly = std::vector<u64>; // coefficients from the constant term up, no trailing zeros

u64 mulmod(u64 a, u64 b, u64 p);
u64 powmod(u64 a, u64 e, u64 p);
u64 invmod(u64 a, u64 p);
u64 reduce(const Int &x, u64 p); // into [0, p)

void trim(Poly &a);
Poly add(const Poly &a, const Poly &b, u64 p);
Poly sub(const Poly &a, const Poly &b, u64 p);
Poly mul(const Poly &a, const Poly &b, u64 p);
Poly scale(const Poly &a, u64 c, u64 p);
void divmod(const Poly &a, const Poly &b, u64 p, Poly *q, Poly *r);
Poly mod(const Poly &a, const Poly &b, u64 p);
Poly gcd(Poly a, Poly b, u64 p); // monic
Poly monic(const Poly &a, u64 p);
Poly mulmod(const Poly &a, const Poly &b, const Poly &m, u64 p);
Poly powmod(const Poly &a, const Int &e, const Poly &m, u64 p);
Poly invmod(const Poly &a, const Poly &m, u64 p); // throws if not invertible

// monic irreducible factors of a squarefree monic polynomial, sorted by
// degree and then by coefficients from the constant term up
std::vector<Poly> factor_squarefree(const Poly &f, u64 p);

} // namespace fp

struct ResidueSystem {
    fp::u64 p = 0;
    std::vector<fp::Poly> factors;             // f mod p = prod factors
    std::vector<std::vector<fp::Poly>> proj;   // proj[i][j] = image of w_j mod factors[i]
    std::vector<std::vector<fp::u64>> W_mod;   // row j: power-basis coefficients of w_j mod p
    std::vector<std::vector<fp::u64>> P_mod;   // row j: integral-basis coordinates of x^j mod p
};

struct PrimePlan {
    Rat log_B;
    std::vector<fp::u64> primes;
    Int N;
};

bool is_prime(fp::u64 n);
// primes in increasing order, skipping divisors of disc(f), until the product exceeds 2^(log_B + 1)
PrimePlan plan_primes(const NumberField &K, const Rat &log_B);
ResidueSystem split_prime(const NumberField &K, fp::u64 p);

using Residues = std::vector<fp::Poly>; // one value per factor
Residues project_element(const ResidueSystem &S, const FieldElement &b);
// the polynomial mod (f mod p) with the given residues
fp::Poly crt_combine_factors(const ResidueSystem &S, const Residues &v);
// integral-basis coordinates mod p of a polynomial mod f
std::vector<fp::u64> to_coordinates(const ResidueSystem &S, const fp::Poly &h);

// coefficientwise integer CRT with symmetric lift into (-N/2, N/2]
IntVec crt_combine_primes(const std::vector<std::vector<fp::u64>> &vals,
                          const std::vector<fp::u64> &primes);
// power-basis polynomial mod (f, N) -> field element with symmetric coordinates
FieldElement lift_to_field(const NumberField &K, const IntVec &poly, const Int &N);

} // namespace okmod
