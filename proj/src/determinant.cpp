#include "okmod/determinant.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace okmod {

using fp::Poly;
using fp::u64;

namespace {

// the residue field F_p[x]/(F)
struct GF {
    Poly F;
    u64 p;
    Poly mul(const Poly &a, const Poly &b) const { return fp::mulmod(a, b, F, p); }
    Poly sub(const Poly &a, const Poly &b) const { return fp::sub(a, b, p); }
    Poly inv(const Poly &a) const { return fp::invmod(a, F, p); }
};

using GFMatrix = std::vector<std::vector<Poly>>;

// integral rows: row i scaled by the lcm of its denominators
ElemMatrix clear_rows(const ElemMatrix &A, std::vector<Int> *dens) {
    ElemMatrix B = A;
    if (dens)
        dens->clear();
    for (auto &row : B) {
        Int l = 1;
        for (auto &x : row)
            l = lcm(l, x.den);
        for (auto &x : row)
            x = scalar_mul(l, x);
        if (dens)
            dens->push_back(l);
    }
    return B;
}

std::vector<GFMatrix> project_matrix(const ResidueSystem &S, const ElemMatrix &A) {
    size_t g = S.factors.size();
    std::vector<GFMatrix> out(g, GFMatrix(A.size()));
    for (size_t i = 0; i < A.size(); ++i)
        for (auto &x : A[i]) {
            Residues r = project_element(S, x);
            for (size_t t = 0; t < g; ++t)
                out[t][i].push_back(std::move(r[t]));
        }
    return out;
}

Poly gf_det(const GF &F, GFMatrix M) {
    size_t n = M.size();
    Poly d{1};
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        for (size_t r = c; r < n; ++r)
            if (!M[r][c].empty()) {
                piv = r;
                break;
            }
        if (piv == n)
            return {};
        if (piv != c) {
            std::swap(M[piv], M[c]);
            d = fp::sub(Poly{}, d, F.p);
        }
        d = F.mul(d, M[c][c]);
        Poly iv = F.inv(M[c][c]);
        for (size_t r = c + 1; r < n; ++r) {
            if (M[r][c].empty())
                continue;
            Poly f = F.mul(M[r][c], iv);
            for (size_t k = c; k < n; ++k)
                M[r][k] = F.sub(M[r][k], F.mul(f, M[c][k]));
        }
    }
    return d;
}

// greedy independent subset of the given vectors, in order
std::vector<size_t> greedy_independent(const GF &F, const std::vector<std::vector<Poly>> &vecs) {
    std::vector<std::vector<Poly>> basis; // reduced rows, with pivots
    std::vector<size_t> pivots, chosen;
    for (size_t i = 0; i < vecs.size(); ++i) {
        std::vector<Poly> v = vecs[i];
        for (size_t b = 0; b < basis.size(); ++b) {
            size_t pc = pivots[b];
            if (v[pc].empty())
                continue;
            Poly f = F.mul(v[pc], F.inv(basis[b][pc]));
            for (size_t k = 0; k < v.size(); ++k)
                if (!basis[b][k].empty())
                    v[k] = F.sub(v[k], F.mul(f, basis[b][k]));
        }
        size_t pc = v.size();
        for (size_t k = 0; k < v.size(); ++k)
            if (!v[k].empty()) {
                pc = k;
                break;
            }
        if (pc == v.size())
            continue;
        basis.push_back(std::move(v));
        pivots.push_back(pc);
        chosen.push_back(i);
    }
    return chosen;
}

template <class F> void parallel_for(size_t n, unsigned jobs, F body) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<size_t>(jobs, n); ++t)
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next++;
                if (i >= n)
                    return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(mu);
                    if (!err)
                        err = std::current_exception();
                }
            }
        });
    for (auto &th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

} // namespace

Rat det_bound(const NumberField &K, const ElemMatrix &A) {
    size_t n = std::min(A.size(), A.empty() ? 0 : A[0].size());
    Int amax = 0;
    for (auto &row : A)
        for (auto &x : row) {
            if (!x.is_integral())
                throw Error("det_bound: matrix must be integral");
            amax = std::max(amax, max_coeff(x));
        }
    Rat b = 1; // the factor 2
    if (n == 0 || amax == 0)
        return b;
    Rat nn{Int((unsigned long)n)};
    Rat cm = std::max({K.C1, K.C2, Rat(1)});
    if (n > 1)
        b += nn * log2_upper(nn, 32);
    if (cm > 1)
        b += Rat(Int((unsigned long)(n + 1))) * log2_upper(cm, 32);
    if (K.d > 1)
        b += log2_upper(Rat(Int((unsigned long)K.d)), 32) / 2;
    if (amax > 1)
        b += nn * log2_upper(Rat(amax), 32);
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    return Rat(c);
}

std::vector<u64> det_mod_prime(const NumberField &K, const ResidueSystem &S, const ElemMatrix &A) {
    (void)K;
    std::vector<GFMatrix> Ms = project_matrix(S, A);
    Residues v(S.factors.size());
    for (size_t t = 0; t < S.factors.size(); ++t)
        v[t] = gf_det(GF{S.factors[t], S.p}, std::move(Ms[t]));
    return to_coordinates(S, crt_combine_factors(S, v));
}

FieldElement det(const NumberField &K, const ElemMatrix &A0, unsigned jobs) {
    size_t n = A0.size();
    for (auto &row : A0)
        if (row.size() != n)
            throw Error("det: matrix is not square");
    if (n == 0)
        return K.one();
    std::vector<Int> dens;
    ElemMatrix A = clear_rows(A0, &dens);
    PrimePlan plan = plan_primes(K, det_bound(K, A));
    std::vector<std::vector<u64>> vals(plan.primes.size());
    parallel_for(plan.primes.size(), jobs, [&](size_t i) {
        ResidueSystem S = split_prime(K, plan.primes[i]);
        vals[i] = det_mod_prime(K, S, A);
    });
    FieldElement d(crt_combine_primes(vals, plan.primes), 1);
    Int D = 1;
    for (auto &x : dens)
        D *= x;
    return scalar_div(d, D);
}

RankWitness rank_and_submatrix(const NumberField &K, const ElemMatrix &A0, unsigned jobs) {
    RankWitness w;
    w.det_sub = K.one();
    size_t n = A0.size(), m = A0.empty() ? 0 : A0[0].size();
    if (n == 0 || m == 0)
        return w;
    ElemMatrix A = clear_rows(A0, nullptr);
    size_t full = std::min(n, m);
    PrimePlan plan = plan_primes(K, det_bound(K, A));
    struct Probe {
        size_t rank = 0;
        std::vector<size_t> rows, cols;
    };
    // probe primes in batches; keep the first residue field with maximal rank
    Probe best;
    size_t batch = std::max<unsigned>(jobs, 1);
    for (size_t start = 0; start < plan.primes.size() && best.rank < full; start += batch) {
        size_t cnt = std::min(batch, plan.primes.size() - start);
        std::vector<std::vector<Probe>> res(cnt);
        parallel_for(cnt, jobs, [&](size_t k) {
            ResidueSystem S = split_prime(K, plan.primes[start + k]);
            std::vector<GFMatrix> Ms = project_matrix(S, A);
            for (size_t t = 0; t < S.factors.size(); ++t) {
                GF F{S.factors[t], S.p};
                Probe pr;
                pr.rows = greedy_independent(F, Ms[t]);
                pr.rank = pr.rows.size();
                std::vector<std::vector<Poly>> colv(m);
                for (size_t j = 0; j < m; ++j)
                    for (size_t r : pr.rows)
                        colv[j].push_back(Ms[t][r][j]);
                pr.cols = greedy_independent(F, colv);
                res[k].push_back(std::move(pr));
            }
        });
        for (auto &per : res)
            for (auto &pr : per)
                if (pr.rank > best.rank)
                    best = pr;
    }
    w.rank = best.rank;
    w.rows = best.rows;
    w.cols = best.cols;
    if (w.rank == 0)
        return w;
    ElemMatrix sub;
    for (size_t r : w.rows) {
        ElemRow row;
        for (size_t c : w.cols)
            row.push_back(A0[r][c]);
        sub.push_back(std::move(row));
    }
    w.det_sub = det(K, sub, jobs);
    if (w.det_sub.is_zero())
        throw Error("rank_and_submatrix: witness minor vanished");
    return w;
}

FractionalIdeal ideal_product(const NumberField &K, const std::vector<FractionalIdeal> &v) {
    if (v.empty())
        return unit_ideal(K);
    if (v.size() == 1)
        return v[0];
    size_t h = v.size() / 2;
    std::vector<FractionalIdeal> a(v.begin(), v.begin() + h), b(v.begin() + h, v.end());
    return mul(K, ideal_product(K, a), ideal_product(K, b));
}

FractionalIdeal determinantal_ideal(const NumberField &K, const PseudoMatrix &P, unsigned jobs) {
    if (P.ideals.size() != P.rows() || P.rows() != P.cols())
        throw Error("determinantal_ideal: square pseudo-matrix expected");
    FieldElement d = det(K, P.A, jobs);
    if (d.is_zero())
        throw Error("determinantal_ideal: matrix is singular");
    return mul(K, d, ideal_product(K, P.ideals));
}

FractionalIdeal determinantal_ideal_multiple(const NumberField &K, const PseudoMatrix &P,
                                             unsigned jobs) {
    if (P.ideals.size() != P.rows())
        throw Error("determinantal_ideal_multiple: one ideal per row expected");
    RankWitness w = rank_and_submatrix(K, P.A, jobs);
    if (w.rank < P.cols())
        throw Error("determinantal_ideal_multiple: matrix does not have full column rank");
    std::vector<FractionalIdeal> ids;
    for (size_t r : w.rows)
        ids.push_back(P.ideals[r]);
    return mul(K, w.det_sub, ideal_product(K, ids));
}

} // namespace okmod
