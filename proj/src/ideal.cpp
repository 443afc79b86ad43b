#include "okmod/ideal.hpp"

#include "okmod/exact_linalg.hpp"

#include <sstream>

namespace okmod {

FractionalIdeal make_ideal(IntMatrix num, Int den) {
    if (den == 0)
        throw Error("ideal with zero denominator");
    if (den < 0)
        den = -den;
    Int g = gcd(content(num), den);
    if (g > 1) {
        for (auto &x : num.a)
            x /= g;
        den /= g;
    }
    return FractionalIdeal{std::move(num), std::move(den)};
}

FractionalIdeal unit_ideal(const NumberField &K) {
    return FractionalIdeal{IntMatrix::identity(K.d), 1};
}

FractionalIdeal from_basis(const NumberField &K, const IntMatrix &num, const Int &den) {
    IntMatrix H = hnf(num);
    if (H.rows != K.d)
        throw Error("from_basis: rows do not span a full-rank lattice");
    return make_ideal(std::move(H), den);
}

FractionalIdeal mul(const NumberField &K, const FieldElement &x, const FractionalIdeal &a) {
    if (x.is_zero())
        throw Error("ideal times zero");
    FieldElement xn(x.c, 1);
    IntMatrix M = a.num * regular_representation(K, xn);
    Rat n = norm(K, xn);
    Int lam = a.num(0, 0) * abs(n.get_num());
    return make_ideal(hnf_with_modulus(M, lam), a.den * x.den);
}

FractionalIdeal principal(const NumberField &K, const FieldElement &x) {
    return mul(K, x, unit_ideal(K));
}

FractionalIdeal from_generators(const NumberField &K, const std::vector<FieldElement> &gens) {
    Int L = 1;
    for (auto &g : gens)
        L = lcm(L, g.den);
    IntMatrix S(0, K.d);
    Int lam = 0;
    for (auto &g : gens) {
        if (g.is_zero())
            continue;
        FieldElement h = scalar_mul(L, g);
        S = vstack(S, regular_representation(K, h));
        lam = gcd(lam, abs(norm(K, h).get_num()));
    }
    if (lam == 0)
        throw Error("from_generators: all generators are zero");
    return make_ideal(hnf_with_modulus(S, lam), L);
}

FractionalIdeal add(const NumberField &, const FractionalIdeal &a, const FractionalIdeal &b) {
    Int l = lcm(a.den, b.den), sa = l / a.den, sb = l / b.den;
    IntMatrix A = a.num, B = b.num;
    for (auto &x : A.a)
        x *= sa;
    for (auto &x : B.a)
        x *= sb;
    Int lam = gcd(A(0, 0), B(0, 0));
    return make_ideal(hnf_with_modulus(vstack(A, B), lam), l);
}

FractionalIdeal mul(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b) {
    size_t d = K.d;
    IntMatrix S(d * d, d);
    for (size_t i = 0; i < d; ++i) {
        FieldElement x(a.num.row(i), 1);
        IntMatrix P = b.num * regular_representation(K, x);
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k)
                S(i * d + j, k) = P(j, k);
    }
    Int lam = a.num(0, 0) * b.num(0, 0);
    return make_ideal(hnf_with_modulus(S, lam), a.den * b.den);
}

FractionalIdeal scale(const FractionalIdeal &a, const Rat &q) {
    if (q == 0)
        throw Error("ideal scaled by zero");
    IntMatrix N = a.num;
    Int s = abs(q.get_num());
    for (auto &x : N.a)
        x *= s;
    return make_ideal(hnf(N), a.den * q.get_den());
}

FractionalIdeal inv(const NumberField &K, const FractionalIdeal &a) {
    size_t d = K.d;
    // a^-1 is the trace dual of a * codifferent; with H = HNF(a * D codiff)
    // the dual has basis H^-t (D T^-1)
    IntMatrix S = vstack(a.num * K.M_delta1, a.num * K.M_delta2);
    Int m = a.num(0, 0);
    IntMatrix H = hnf_with_modulus(S, m * K.codiff(0, 0));
    // H^t is upper triangular: reverse rows and columns to make it lower
    IntMatrix Ht(d, d), B(d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Ht(i, j) = H(d - 1 - j, d - 1 - i);
            B(i, j) = m * K.DT_inv(d - 1 - i, j);
        }
    IntMatrix Yr = back_substitute(Ht, B, m);
    IntMatrix Y(d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            Y(i, j) = Yr(d - 1 - i, j);
    // Y spans m * (numerator of a)^-1, which contains m O
    IntMatrix R = hnf_with_modulus(Y, m);
    // a = A / k  =>  a^-1 = k A^-1
    return scale(make_ideal(std::move(R), m), Rat(a.den));
}

FractionalIdeal div(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b) {
    return mul(K, a, inv(K, b));
}

Rat min(const FractionalIdeal &a) {
    Rat q(a.num(0, 0), a.den);
    q.canonicalize();
    return q;
}

Rat norm(const FractionalIdeal &a) {
    Int n = 1;
    for (size_t i = 0; i < a.num.rows; ++i)
        n *= a.num(i, i);
    Int dd;
    mpz_pow_ui(dd.get_mpz_t(), a.den.get_mpz_t(), a.num.rows);
    Rat q(abs(n), dd);
    q.canonicalize();
    return q;
}

Rat size(const NumberField &K, const FractionalIdeal &a) {
    Rat dd{Int((unsigned long)(K.d * K.d))}, s = 0;
    if (a.num(0, 0) > 1)
        s += dd * log2_upper(Rat(a.num(0, 0)), 32);
    if (a.den > 1)
        s += dd * log2_upper(Rat(a.den), 32);
    return s;
}

FieldElement basis_element(const FractionalIdeal &a, size_t i) {
    return FieldElement(a.num.row(i), a.den);
}

bool contains(const NumberField &K, const FractionalIdeal &a, const FieldElement &x) {
    RatVec v(K.d);
    for (size_t i = 0; i < K.d; ++i)
        v[i] = make_rat(x.c[i] * a.den, x.den);
    return in_lattice(a.num, v);
}

bool is_subset(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b) {
    for (size_t i = 0; i < a.num.rows; ++i)
        if (!contains(K, b, basis_element(a, i)))
            return false;
    return true;
}

FieldElement idempotent(const NumberField &K, const FractionalIdeal &a,
                        const FractionalIdeal &b) {
    if (!a.is_integral() || !b.is_integral())
        throw Error("idempotent: ideals must be integral");
    size_t d = K.d;
    IntMatrix S(2 * d, 2 * d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            S(i, j) = a.num(i, j);
            S(i, d + j) = a.num(i, j);
            S(d + i, d + j) = b.num(i, j);
        }
    IntMatrix H = hnf_with_modulus(S, a.num(0, 0) * b.num(0, 0));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            if (H(d + i, d + j) != (i == j ? 1 : 0))
                throw Error("idempotent: ideals are not coprime");
    IntVec u(d);
    for (size_t j = 0; j < d; ++j)
        u[j] = H(d, j);
    return FieldElement(u, 1);
}

EuclidStep euclid(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b,
                  const FieldElement &alpha, const FieldElement &beta) {
    if (alpha.is_zero() || beta.is_zero())
        throw Error("euclid: zero coefficient");
    FractionalIdeal aa = mul(K, alpha, a), bb = mul(K, beta, b);
    if (is_subset(K, bb, aa))
        return EuclidStep{aa, inv(K, alpha), K.zero()};
    if (is_subset(K, aa, bb))
        return EuclidStep{bb, K.zero(), inv(K, beta)};
    FractionalIdeal g = add(K, aa, bb);
    FractionalIdeal gi = inv(K, g);
    FractionalIdeal a1 = mul(K, aa, gi), b1 = mul(K, bb, gi);
    FieldElement u = idempotent(K, a1, b1);
    FieldElement v = sub(K.one(), u);
    return EuclidStep{g, div(K, u, alpha), div(K, v, beta)};
}

std::string to_string(const FractionalIdeal &a) {
    std::ostringstream os;
    os << "(" << to_string(a.num) << ") / " << a.den.get_str();
    return os.str();
}

} // namespace okmod
