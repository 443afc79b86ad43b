#include "okmod/pseudo_hnf.hpp"

#include "okmod/determinant.hpp"
#include "okmod/exact_linalg.hpp"

namespace okmod {

EuclidStep euclidean_step(const NumberField &K, const FractionalIdeal &a, const FractionalIdeal &b,
                          const FieldElement &alpha, const FieldElement &beta) {
    return euclid(K, a, b, alpha, beta);
}

HnfBounds hnf_bounds(const NumberField &K, const FractionalIdeal &dd) {
    HnfBounds h;
    Rat d{Int((unsigned long)K.d)};
    h.B_id = d * d * d * d;
    Int disc = abs(K.disc_K);
    if (disc > 1)
        h.B_id += d * d * log2_upper(Rat(disc), 32);
    h.B_e = size(K, dd) / d + h.B_id / d + K.C;
    return h;
}

namespace {

struct Work {
    const NumberField &K;
    ElemMatrix B;
    std::vector<FractionalIdeal> b;
    ReducedBasisCache cache;
    const NormalizationObserver &obs;

    void normalize(size_t i) {
        NormalizedRow r = normalize_row(K, B[i], b[i]);
        B[i] = std::move(r.row);
        b[i] = std::move(r.ideal);
        if (obs)
            obs(i, b[i]);
    }

    // entries of row i modulo the ideal m
    void reduce(size_t i, const FractionalIdeal &m) {
        for (auto &x : B[i])
            x = reduce_mod_ideal(K, x, m, &cache);
    }
};

} // namespace

PseudoMatrix pseudo_hnf(const NumberField &K, const PseudoMatrix &P, const FractionalIdeal &dd,
                        const NormalizationObserver &observer) {
    size_t n = P.rows(), m = P.cols();
    if (P.ideals.size() != n)
        throw Error("pseudo_hnf: one ideal per row expected");
    if (n < m)
        throw Error("pseudo_hnf: fewer rows than columns, module cannot have full rank");
    for (auto &row : P.A)
        if (row.size() != m)
            throw Error("pseudo_hnf: ragged matrix");
    for (size_t i = 0; i < n; ++i)
        for (auto &x : P.A[i])
            if (!x.is_zero() && !mul(K, x, P.ideals[i]).is_integral())
                throw Error("pseudo_hnf: module is not contained in O_K^m");
    if (rank_and_submatrix(K, P.A).rank < m)
        throw Error("pseudo_hnf: pseudo-matrix does not have full column rank");
    Work w{K, P.A, P.ideals, {}, observer};

    for (size_t i = 0; i < n; ++i) {
        w.normalize(i);
        w.reduce(i, div(K, dd, w.b[i]));
    }
    FractionalIdeal D = dd;

    for (size_t i = n; i-- > n - m;) {
        size_t c = i - (n - m);
        for (size_t j = i; j-- > 0;) {
            if (w.B[j][c].is_zero())
                continue;
            if (w.B[i][c].is_zero()) {
                std::swap(w.B[i], w.B[j]);
                std::swap(w.b[i], w.b[j]);
                continue;
            }
            FieldElement bji = w.B[j][c], bii = w.B[i][c];
            EuclidStep e = euclid(K, w.b[j], w.b[i], bji, bii);
            FractionalIdeal gi = inv(K, e.g);
            FractionalIdeal bj_new = mul(K, mul(K, w.b[j], w.b[i]), gi);
            ElemRow Bj(m), Bi(m);
            for (size_t k = 0; k < m; ++k) {
                Bj[k] = sub(mul(K, bii, w.B[j][k]), mul(K, bji, w.B[i][k]));
                Bi[k] = add(mul(K, e.gamma, w.B[j][k]), mul(K, e.delta, w.B[i][k]));
            }
            w.B[j] = std::move(Bj);
            w.B[i] = std::move(Bi);
            w.b[j] = std::move(bj_new);
            w.b[i] = e.g;
            w.normalize(j);
            w.normalize(i);
            w.reduce(j, div(K, dd, w.b[j]));
            w.reduce(i, div(K, dd, w.b[i]));
        }
        // absorb the running modulus into the pivot
        FieldElement bii = w.B[i][c];
        FractionalIdeal g;
        FieldElement gamma;
        if (bii.is_zero()) {
            g = D;
            gamma = K.zero();
        } else {
            EuclidStep e = euclid(K, w.b[i], D, bii, K.one());
            g = e.g;
            gamma = e.gamma;
        }
        FractionalIdeal Dg = div(K, D, g);
        for (size_t k = 0; k < m; ++k)
            w.B[i][k] = k == c ? K.one() : reduce_mod_ideal(K, mul(K, gamma, w.B[i][k]), Dg, &w.cache);
        w.b[i] = g;
        D = Dg;
    }

    PseudoMatrix out;
    for (size_t i = n - m; i < n; ++i) {
        out.A.push_back(std::move(w.B[i]));
        out.ideals.push_back(std::move(w.b[i]));
    }
    for (size_t i = 0; i < n - m; ++i)
        for (auto &x : w.B[i])
            if (!x.is_zero())
                throw Error("pseudo_hnf: leftover nonzero row, input is not full rank");
    return out;
}

PseudoMatrix canonicalize(const NumberField &K, const PseudoMatrix &H) {
    size_t m = H.rows();
    if (H.cols() != m || H.ideals.size() != m)
        throw Error("canonicalize: square pseudo-HNF expected");
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            const FieldElement &x = H.A[i][j];
            if ((j > i && !x.is_zero()) || (j == i && !(x == K.one())))
                throw Error("canonicalize: input is not in pseudo-HNF shape");
        }
    PseudoMatrix R = H;
    ReducedBasisCache cache;
    for (size_t i = 1; i < m; ++i) {
        FractionalIdeal bi_inv = inv(K, R.ideals[i]);
        for (size_t j = i; j-- > 0;) {
            FractionalIdeal mod = mul(K, bi_inv, R.ideals[j]);
            FieldElement r = reduce_canonical(K, R.A[i][j], mod, &cache);
            FieldElement q = sub(R.A[i][j], r);
            if (q.is_zero())
                continue;
            for (size_t k = 0; k <= j; ++k)
                R.A[i][k] = sub(R.A[i][k], mul(K, q, R.A[j][k]));
        }
    }
    return R;
}

IntMatrix to_absolute(const NumberField &K, const PseudoMatrix &P) {
    size_t n = P.rows(), m = P.cols(), d = K.d;
    IntMatrix M(d * n, d * m);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < d; ++k) {
            FieldElement a = basis_element(P.ideals[i], k);
            for (size_t j = 0; j < m; ++j) {
                FieldElement x = mul(K, a, P.A[i][j]);
                if (!x.is_integral())
                    throw Error("to_absolute: module is not contained in O_K^m");
                for (size_t t = 0; t < d; ++t)
                    M(i * d + k, j * d + t) = x.c[t];
            }
        }
    return M;
}

} // namespace okmod
