#include "okmod/number_field.hpp"

#include "okmod/exact_linalg.hpp"
#include "okmod/lattice.hpp"

#include <algorithm>

namespace okmod {

FieldElement::FieldElement(IntVec coeffs, Int d) : c(std::move(coeffs)), den(std::move(d)) {
    *this = canonical(std::move(*this));
}

bool FieldElement::is_zero() const {
    for (auto &x : c)
        if (x != 0)
            return false;
    return true;
}

FieldElement canonical(FieldElement a) {
    if (a.den == 0)
        throw Error("field element with zero denominator");
    if (a.den < 0) {
        a.den = -a.den;
        for (auto &x : a.c)
            x = -x;
    }
    Int g = gcd(content(a.c), a.den);
    if (g == 0) { // zero vector
        a.den = 1;
        return a;
    }
    if (g > 1) {
        for (auto &x : a.c)
            x /= g;
        a.den /= g;
    }
    return a;
}

FieldElement NumberField::zero() const {
    FieldElement z;
    z.c.assign(d, 0);
    return z;
}

FieldElement NumberField::one() const { return from_int(1); }

FieldElement NumberField::from_int(const Int &n) const {
    FieldElement z = zero();
    z.c[0] = n;
    return z;
}

FieldElement NumberField::from_rat(const Rat &q) const {
    IntVec c(d);
    c[0] = q.get_num();
    return FieldElement(c, q.get_den());
}

FieldElement NumberField::basis(size_t i) const {
    FieldElement z = zero();
    z.c[i] = 1;
    return z;
}

FieldElement add(const FieldElement &a, const FieldElement &b) {
    if (a.c.size() != b.c.size())
        throw Error("add: degree mismatch");
    Int l = lcm(a.den, b.den), sa = l / a.den, sb = l / b.den;
    IntVec c(a.c.size());
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = a.c[i] * sa + b.c[i] * sb;
    return FieldElement(std::move(c), l);
}

FieldElement neg(const FieldElement &a) {
    FieldElement r = a;
    for (auto &x : r.c)
        x = -x;
    return r;
}

FieldElement sub(const FieldElement &a, const FieldElement &b) { return add(a, neg(b)); }

FieldElement scalar_mul(const Int &m, const FieldElement &a) {
    IntVec c = a.c;
    for (auto &x : c)
        x *= m;
    return FieldElement(std::move(c), a.den);
}

FieldElement scalar_mul(const Rat &q, const FieldElement &a) {
    IntVec c = a.c;
    for (auto &x : c)
        x *= q.get_num();
    return FieldElement(std::move(c), a.den * q.get_den());
}

FieldElement scalar_div(const FieldElement &a, const Int &m) {
    if (m == 0)
        throw Error("scalar_div: division by zero");
    return FieldElement(a.c, a.den * m);
}

IntMatrix regular_representation(const NumberField &K, const FieldElement &g) {
    if (!g.is_integral())
        throw Error("regular_representation: element is not integral");
    IntMatrix M(K.d, K.d);
    for (size_t i = 0; i < K.d; ++i) {
        if (g.c[i] == 0)
            continue;
        const IntMatrix &t = K.mul_table[i];
        for (size_t k = 0; k < M.a.size(); ++k)
            M.a[k] += g.c[i] * t.a[k];
    }
    return M;
}

FieldElement mul(const NumberField &K, const FieldElement &a, const FieldElement &b) {
    size_t d = K.d;
    IntVec c(d);
    for (size_t i = 0; i < d; ++i) {
        if (a.c[i] == 0)
            continue;
        const IntMatrix &t = K.mul_table[i];
        for (size_t j = 0; j < d; ++j) {
            if (b.c[j] == 0)
                continue;
            Int s = a.c[i] * b.c[j];
            for (size_t k = 0; k < d; ++k)
                if (t(j, k) != 0)
                    c[k] += s * t(j, k);
        }
    }
    return FieldElement(std::move(c), a.den * b.den);
}

FieldElement inv(const NumberField &K, const FieldElement &a) {
    if (a.is_zero())
        throw Error("inv: zero element");
    FieldElement num(a.c, 1);
    IntMatrix M = regular_representation(K, num);
    IntVec e1(K.d);
    e1[0] = 1;
    RatVec b = dixon_solve_row(M, e1);
    Int l = 1;
    for (auto &q : b)
        l = lcm(l, q.get_den());
    IntVec c(K.d);
    for (size_t i = 0; i < K.d; ++i)
        c[i] = Rat(b[i] * l).get_num() * a.den;
    return FieldElement(std::move(c), l);
}

FieldElement div(const NumberField &K, const FieldElement &a, const FieldElement &b) {
    return mul(K, a, inv(K, b));
}

Rat norm(const NumberField &K, const FieldElement &a) {
    FieldElement num(a.c, 1);
    Int n = det(regular_representation(K, num));
    Int dd;
    mpz_pow_ui(dd.get_mpz_t(), a.den.get_mpz_t(), K.d);
    Rat q(n, dd);
    q.canonicalize();
    return q;
}

Rat trace(const NumberField &K, const FieldElement &a) {
    Int t = 0;
    for (size_t i = 0; i < K.d; ++i)
        if (a.c[i] != 0)
            for (size_t j = 0; j < K.d; ++j)
                t += a.c[i] * K.mul_table[i](j, j);
    Rat q(t, a.den);
    q.canonicalize();
    return q;
}

Int max_coeff(const FieldElement &a) {
    Int m = 0;
    for (auto &x : a.c)
        if (abs(x) > m)
            m = abs(x);
    return m;
}

Rat size(const NumberField &K, const FieldElement &a) {
    if (a.is_zero())
        return 0;
    Rat s = 0;
    Int m = max_coeff(a);
    if (m > 1)
        s += Rat(Int(K.d)) * log2_upper(Rat(m), 32);
    if (a.den > 1)
        s += Rat(Int(K.d)) * log2_upper(Rat(a.den), 32);
    return s;
}

RatVec to_power_basis(const NumberField &K, const FieldElement &a) {
    RatVec p(K.d);
    for (size_t i = 0; i < K.d; ++i)
        if (a.c[i] != 0)
            for (size_t j = 0; j < K.d; ++j)
                p[j] += Rat(a.c[i]) * K.W.at(i, j);
    for (auto &x : p)
        x /= Rat(a.den);
    return p;
}

FieldElement from_power_basis(const NumberField &K, const RatVec &p) {
    Int l = 1;
    for (auto &q : p)
        l = lcm(l, q.get_den());
    IntVec v(K.d);
    for (size_t j = 0; j < K.d; ++j)
        v[j] = Rat(p[j] * l).get_num();
    return FieldElement(v * K.P, l);
}

namespace {

// (-1)^(d(d-1)/2) Res(f, f') through the Sylvester matrix
Int poly_disc(const IntVec &f) {
    size_t d = f.size() - 1;
    if (d == 1)
        return 1;
    IntVec df(d);
    for (size_t i = 1; i <= d; ++i)
        df[i - 1] = f[i] * Int((unsigned long)i);
    size_t n = 2 * d - 1;
    IntMatrix S(n, n);
    for (size_t r = 0; r < d - 1; ++r)
        for (size_t k = 0; k <= d; ++k)
            S(r, r + k) = f[d - k];
    for (size_t r = 0; r < d; ++r)
        for (size_t k = 0; k < d; ++k)
            S(d - 1 + r, r + k) = df[d - 1 - k];
    Int res = det(S);
    if (((d * (d - 1)) / 2) % 2)
        res = -res;
    return res;
}

// product of two polynomials of degree < d reduced modulo the monic f
IntVec polmulmod(const IntVec &a, const IntVec &b, const IntVec &f) {
    size_t d = f.size() - 1;
    IntVec r(2 * d, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] += a[i] * b[j];
    for (size_t k = 2 * d; k-- > d;) {
        if (r[k] == 0)
            continue;
        Int c = r[k];
        r[k] = 0;
        for (size_t i = 0; i < d; ++i)
            r[k - d + i] -= c * f[i];
    }
    r.resize(d);
    return r;
}

} // namespace

std::shared_ptr<const NumberField> build_field(const IntVec &f, const RatMatrix &basis, long e) {
    if (f.size() < 2)
        throw Error("build_field: polynomial must have degree >= 1");
    if (f.back() != 1)
        throw Error("build_field: polynomial is not monic");
    auto K = std::make_shared<NumberField>();
    size_t d = f.size() - 1;
    K->d = d;
    K->f = f;
    K->W = basis;
    if (basis.num.rows != d || basis.num.cols != d)
        throw Error("build_field: basis must be d x d");
    for (size_t j = 0; j < d; ++j)
        if (basis.at(0, j) != (j == 0 ? 1 : 0))
            throw Error("build_field: first basis element must be 1");
    if (det(basis.num) == 0)
        throw Error("build_field: basis matrix is singular");
    K->disc_f = poly_disc(f);
    if (K->disc_f == 0)
        throw Error("build_field: polynomial is not squarefree");
    RatMatrix Pinv = inverse(basis);
    if (Pinv.den != 1)
        throw Error("build_field: basis does not span a ring containing Z[x]");
    K->P = Pinv.num;
    K->index = abs(det(K->P));

    // structure constants through the power basis
    K->mul_table.assign(d, IntMatrix(d, d));
    Int den2 = basis.den * basis.den;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j < d; ++j) {
            IntVec prod = polmulmod(basis.num.row(i), basis.num.row(j), f);
            IntVec c = prod * K->P;
            for (size_t k = 0; k < d; ++k) {
                if (!mpz_divisible_p(c[k].get_mpz_t(), den2.get_mpz_t()))
                    throw Error("build_field: basis is not closed under multiplication");
                K->mul_table[i](j, k) = c[k] / den2;
                K->mul_table[j](i, k) = c[k] / den2;
            }
        }
    Int c3 = 0;
    for (auto &t : K->mul_table)
        c3 = std::max(c3, t.max_abs());
    K->C3 = Rat(c3);

    IntVec tr(d);
    for (size_t k = 0; k < d; ++k)
        for (size_t j = 0; j < d; ++j)
            tr[k] += K->mul_table[k](j, j);
    K->T = IntMatrix(d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k)
                K->T(i, j) += K->mul_table[i](j, k) * tr[k];
    K->disc_K = det(K->T);
    if (K->disc_K * K->index * K->index != K->disc_f)
        throw Error("build_field: disc(f) != disc(O) * index^2");
    RatMatrix Tinv = inverse(K->T);
    K->D = Tinv.den;
    K->DT_inv = Tinv.num;
    K->codiff = hnf(K->DT_inv);

    // certified trace form and the constants of the norm inequalities
    if (e <= 0)
        e = default_precision(d, K->disc_K);
    // precision is doubled when the certified enclosures are too coarse
    for (int attempt = 0;; ++attempt) {
        try {
            K->gram = certified_gram(f, basis, e + 2);
            Rat c1 = 0;
            for (size_t i = 0; i < d; ++i)
                c1 += sqrt_upper(K->gram.mid[i * d + i] + K->gram.rad, 48);
            K->C1 = c1;
            {
                // |a|_inf^2 <= max_j (G^-1)_jj T2(a), with a perturbation allowance
                IntMatrix Gnum(d, d);
                Int gden = 1;
                for (auto &q : K->gram.mid)
                    gden = lcm(gden, q.get_den());
                for (size_t k = 0; k < d * d; ++k)
                    Gnum.a[k] = Rat(K->gram.mid[k] * gden).get_num();
                RatMatrix Ginv = inverse(Gnum);
                Rat scale = Rat(gden) / Rat(Ginv.den);
                Rat mx = 0, frob = 0;
                for (size_t i = 0; i < d; ++i)
                    for (size_t j = 0; j < d; ++j) {
                        Rat v = Rat(Ginv.num(i, j)) * scale;
                        frob += v * v;
                        if (i == j && v > mx)
                            mx = v;
                    }
                Rat F = sqrt_upper(frob, 48);
                Rat E = Rat(Int(d)) * K->gram.rad;
                if (F * E >= Rat(1, 2))
                    throw Error("build_field: Gram matrix too ill-conditioned");
                Rat pert = F * F * E / (1 - F * E);
                K->C2 = sqrt_upper(mx + pert, 48);
            }
            {
                Rat dd{Int(d)};
                Rat a = 2 * dd * (d > 1 ? log2_upper(dd, 32) : Rat(0)) +
                        dd * (c3 > 1 ? log2_upper(Rat(c3), 32) : Rat(0));
                Rat b = dd * dd * (K->C1 > 1 ? log2_upper(K->C1, 32) : Rat(0)) +
                        dd * (K->C2 > 1 ? log2_upper(K->C2, 32) : Rat(0));
                K->C = std::max(a, b);
            }

            K->lattice = build_context(*K, e);
            break;
        } catch (const Error &) {
            if (attempt == 4)
                throw;
            e *= 2;
        }
    }

    // two generators of the codifferent numerator
    IntMatrix red = lll_rows(K->codiff, K->lattice->Ge);
    std::vector<IntVec> cand;
    for (size_t i = 0; i < d; ++i)
        cand.push_back(red.row(i));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j) {
            IntVec s(d), t(d);
            for (size_t k = 0; k < d; ++k) {
                s[k] = red(i, k) + red(j, k);
                t[k] = red(i, k) - red(j, k);
            }
            cand.push_back(s);
            cand.push_back(t);
        }
    auto q = [&](const IntVec &v) {
        IntVec w = v * K->lattice->Ge;
        Int s = 0;
        for (size_t k = 0; k < d; ++k)
            s += w[k] * v[k];
        return s;
    };
    std::stable_sort(cand.begin(), cand.end(),
                     [&](const IntVec &x, const IntVec &y) { return q(x) < q(y); });
    bool found = false;
    for (size_t a = 0; a < cand.size() && !found; ++a) {
        FieldElement ea(cand[a], 1);
        if (ea.is_zero())
            continue;
        IntMatrix Ma = regular_representation(*K, ea);
        for (size_t b = a; b < cand.size() && !found; ++b) {
            FieldElement eb(cand[b], 1);
            if (eb.is_zero())
                continue;
            IntMatrix Mb = regular_representation(*K, eb);
            if (hnf(vstack(Ma, Mb)) == K->codiff) {
                K->delta1 = ea;
                K->delta2 = eb;
                K->M_delta1 = Ma;
                K->M_delta2 = Mb;
                found = true;
            }
        }
    }
    if (!found)
        throw Error("build_field: no two-element representation of the codifferent found");
    return K;
}

} // namespace okmod
