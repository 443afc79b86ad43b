#include "okmod/lattice.hpp"

#include "okmod/exact_linalg.hpp"

namespace okmod {

long default_precision(size_t d, const Int &disc) {
    long bl = disc == 0 ? 1 : (long)mpz_sizeinbase(disc.get_mpz_t(), 2);
    return 2 * ((long)d + bl) + 64;
}

namespace {

Int pow_int(const Int &b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rat pow_rat(const Rat &b, unsigned long e) {
    Rat r(pow_int(b.get_num(), e), pow_int(b.get_den(), e));
    return r;
}

} // namespace

std::shared_ptr<const LatticeContext> build_context(const NumberField &K, long e) {
    auto L = std::make_shared<LatticeContext>();
    size_t d = K.d;
    L->e = e;
    L->Re = rounded_cholesky(K.gram, e);
    L->Ge = L->Re * L->Re.transpose();

    Int two_2e = Int(1) << (unsigned long)(2 * e);
    Rat maxD = 0;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Rat v = abs(Rat(L->Ge(i, j)) - Rat(two_2e) * K.gram.mid[i * d + j]);
            if (v > maxD)
                maxD = v;
        }
    maxD += Rat(two_2e) * K.gram.rad;
    Rat dd{Int(d)};
    L->eps = dd * dd * maxD * K.C2 * K.C2 / Rat(two_2e);
    if (L->eps >= Rat(1, 2))
        throw Error("build_context: precision too low for the trace form");

    // rho^2 = det(R_e)^2 / (2^(2de) |disc|)
    Int dR = det(L->Re);
    Rat rho_sq(dR * dR, pow_int(two_2e, d) * abs(K.disc_K));
    rho_sq.canonicalize();
    Rat cq_sq = rho_sq / pow_rat(1 - L->eps, d);
    L->C_quality_sq = cq_sq < 1 ? Rat(1) : cq_sq;
    L->C_quality = sqrt_upper(L->C_quality_sq, 64);

    Rat gap = L->delta - L->eta * L->eta;
    L->ell = sqrt_upper(1 / gap, 64);
    unsigned long ex = d * (d - 1) / 2;
    L->bound_factor = L->C_quality_sq / pow_rat(gap, ex);
    if (d > 1)
        L->ell_abs =
            round_up(pow_upper(L->C_quality_sq, Rat(1, (unsigned long)(d * (d - 1))), 64) *
                         L->ell,
                     64);
    else
        L->ell_abs = L->ell;
    return L;
}

IntMatrix lll_rows(const IntMatrix &M, const IntMatrix &Gram, IntMatrix *transform) {
    size_t n = M.rows;
    std::vector<IntVec> b(n);
    for (size_t i = 0; i < n; ++i)
        b[i] = M.row(i);
    std::vector<IntVec> H(n, IntVec(n));
    for (size_t i = 0; i < n; ++i)
        H[i][i] = 1;
    if (n == 0) {
        if (transform)
            *transform = IntMatrix(0, 0);
        return M;
    }
    // integral Gram-Schmidt data: d[0] = 1, d[i+1] = d_i, lam[k][j] = lambda_{k,j}
    std::vector<Int> dv(n + 1);
    std::vector<IntVec> lam(n, IntVec(n));
    std::vector<IntVec> bG(n);
    const Int p = 99, q = 100;
    auto ip = [&](size_t i, size_t j) {
        Int s = 0;
        for (size_t k = 0; k < bG[i].size(); ++k)
            s += bG[i][k] * b[j][k];
        return s;
    };
    auto refresh = [&](size_t i) { bG[i] = b[i] * Gram; };
    for (size_t i = 0; i < n; ++i)
        refresh(i);

    dv[0] = 1;
    dv[1] = ip(0, 0);
    if (dv[1] <= 0)
        throw Error("lll: dependent vectors or indefinite form");
    size_t k = 1, kmax = 0;

    auto red = [&](size_t kk, size_t l) {
        Int two = 2 * abs(lam[kk][l]);
        if (two <= dv[l + 1])
            return;
        Int r;
        Int num = 2 * lam[kk][l] + dv[l + 1], den = 2 * dv[l + 1];
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        for (size_t c = 0; c < b[kk].size(); ++c)
            b[kk][c] -= r * b[l][c];
        for (size_t c = 0; c < n; ++c)
            H[kk][c] -= r * H[l][c];
        refresh(kk);
        lam[kk][l] -= r * dv[l + 1];
        for (size_t i = 0; i < l; ++i)
            lam[kk][i] -= r * lam[l][i];
    };
    auto swapk = [&](size_t kk) {
        std::swap(b[kk], b[kk - 1]);
        std::swap(bG[kk], bG[kk - 1]);
        std::swap(H[kk], H[kk - 1]);
        for (size_t j = 0; j + 1 < kk; ++j)
            std::swap(lam[kk][j], lam[kk - 1][j]);
        Int l = lam[kk][kk - 1];
        Int B = (dv[kk - 1] * dv[kk + 1] + l * l) / dv[kk];
        for (size_t i = kk + 1; i <= kmax; ++i) {
            Int t = lam[i][kk];
            lam[i][kk] = (dv[kk + 1] * lam[i][kk - 1] - l * t) / dv[kk];
            lam[i][kk - 1] = (B * t + l * lam[i][kk]) / dv[kk + 1];
        }
        dv[kk] = B;
    };

    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (size_t j = 0; j <= k; ++j) {
                Int u = ip(k, j);
                for (size_t i = 0; i < j; ++i)
                    u = (dv[i + 1] * u - lam[k][i] * lam[j][i]) / dv[i];
                if (j < k)
                    lam[k][j] = u;
                else {
                    if (u <= 0)
                        throw Error("lll: dependent vectors or indefinite form");
                    dv[k + 1] = u;
                }
            }
        }
        red(k, k - 1);
        Int l = lam[k][k - 1];
        if (q * dv[k + 1] * dv[k - 1] < p * dv[k] * dv[k] - q * l * l) {
            swapk(k);
            if (k > 1)
                --k;
        } else {
            for (size_t ll = k - 1; ll-- > 0;)
                red(k, ll);
            ++k;
        }
    }
    IntMatrix R = IntMatrix::from_rows(b, M.cols);
    if (transform)
        *transform = IntMatrix::from_rows(H, n);
    return R;
}

IntMatrix lll_reduce(const NumberField &K, const IntMatrix &B) {
    return lll_rows(B, K.lattice->Ge);
}

IntVec shortest_basis_element(const NumberField &K, const IntMatrix &B) {
    return lll_reduce(K, B).row(0);
}

Rat T2_upper(const NumberField &K, const IntVec &v) {
    size_t d = K.d;
    Rat s = 0;
    Int l1 = 0;
    for (size_t i = 0; i < d; ++i) {
        if (v[i] == 0)
            continue;
        l1 += abs(v[i]);
        for (size_t j = 0; j < d; ++j)
            if (v[j] != 0)
                s += Rat(v[i] * v[j]) * K.gram.mid[i * d + j];
    }
    return s + K.gram.rad * Rat(l1 * l1);
}

Rat T2_lower(const NumberField &K, const IntVec &v) {
    Rat u = T2_upper(K, v);
    Int l1 = 0;
    for (auto &x : v)
        l1 += abs(x);
    Rat r = u - 2 * K.gram.rad * Rat(l1 * l1);
    return r < 0 ? Rat(0) : r;
}

QualityReport quality_check(const NumberField &K, const IntMatrix &reduced, const Int &N) {
    QualityReport rep;
    size_t d = K.d;
    Rat rhs = K.lattice->bound_factor * Rat(abs(K.disc_K) * N * N);
    Rat t1 = T2_upper(K, reduced.row(0));
    Rat lhs1 = pow_rat(t1, d);
    Rat prod = 1;
    for (size_t i = 0; i < reduced.rows; ++i)
        prod *= T2_upper(K, reduced.row(i));
    rep.first_ratio = lhs1 / rhs;
    rep.product_ratio = prod / rhs;
    rep.first_ok = lhs1 <= rhs;
    rep.product_ok = prod <= rhs;
    return rep;
}

} // namespace okmod
