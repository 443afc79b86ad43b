#include "okmod/pseudo_snf.hpp"

#include "okmod/determinant.hpp"
#include "okmod/redux.hpp"

namespace okmod {

bool is_integral_bipseudo(const NumberField &K, const BiPseudoMatrix &B, size_t *bad_i,
                          size_t *bad_j) {
    size_t n = B.size();
    std::vector<FractionalIdeal> ainv;
    for (auto &a : B.col_ideals)
        ainv.push_back(inv(K, a));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            const FieldElement &x = B.A[i][j];
            if (x.is_zero())
                continue;
            if (!contains(K, mul(K, B.row_ideals[i], ainv[j]), x)) {
                if (bad_i)
                    *bad_i = i;
                if (bad_j)
                    *bad_j = j;
                return false;
            }
        }
    }
    return true;
}

FractionalIdeal bipseudo_det_ideal(const NumberField &K, const BiPseudoMatrix &B, unsigned jobs) {
    FieldElement dt = det(K, B.A, jobs);
    if (dt.is_zero())
        throw Error("pseudo_snf: matrix is singular");
    FractionalIdeal r = mul(K, dt, ideal_product(K, B.col_ideals));
    return div(K, r, ideal_product(K, B.row_ideals));
}

std::optional<Obstruction> offdiag_obstruction_scan(const NumberField &K, const BiPseudoMatrix &B,
                                                    size_t i, const FractionalIdeal &t) {
    for (size_t k = 0; k < i; ++k) {
        FractionalIdeal bk_inv = inv(K, B.row_ideals[k]);
        for (size_t l = 0; l < i; ++l) {
            const FieldElement &x = B.A[k][l];
            if (x.is_zero())
                continue;
            FractionalIdeal e = mul(K, x, mul(K, B.col_ideals[l], bk_inv));
            if (is_subset(K, e, t))
                continue;
            FractionalIdeal G = mul(K, B.row_ideals[i], bk_inv);
            FractionalIdeal target = div(K, mul(K, t, B.row_ideals[i]), B.col_ideals[l]);
            for (size_t h = 0; h < K.d; ++h) {
                FieldElement g = basis_element(G, h);
                if (!contains(K, target, mul(K, g, x)))
                    return Obstruction{k, l, g};
            }
            throw Error("offdiag_obstruction_scan: no witness found");
        }
    }
    return std::nullopt;
}

namespace {

struct SnfState {
    const NumberField &K;
    BiPseudoMatrix M;
    std::vector<FractionalIdeal> binv, ainv;
    FractionalIdeal D;
    ReducedBasisCache cache;
    const SnfTrace &trace;

    size_t n() const { return M.size(); }
    ElemMatrix &A() { return M.A; }

    void reduce_entry(size_t k, size_t l) {
        FieldElement &x = M.A[k][l];
        if (x.is_zero())
            return;
        FractionalIdeal m = mul(K, mul(K, D, M.row_ideals[k]), ainv[l]);
        x = reduce_mod_ideal(K, x, m, &cache);
    }

    void normalize_col(size_t j) {
        ElemRow col(n());
        for (size_t k = 0; k < n(); ++k)
            col[k] = M.A[k][j];
        NormalizedRow r = normalize_row(K, col, M.col_ideals[j]);
        for (size_t k = 0; k < n(); ++k)
            M.A[k][j] = std::move(r.row[k]);
        M.col_ideals[j] = std::move(r.ideal);
        ainv[j] = inv(K, M.col_ideals[j]);
        if (trace.on_normalized)
            trace.on_normalized(M.col_ideals[j]);
    }

    void normalize_row_i(size_t i) {
        NormalizedRow r = normalize_row(K, M.A[i], binv[i]);
        M.A[i] = std::move(r.row);
        binv[i] = std::move(r.ideal);
        M.row_ideals[i] = inv(K, binv[i]);
        if (trace.on_normalized)
            trace.on_normalized(binv[i]);
    }

    void swap_cols(size_t i, size_t j) {
        for (auto &row : M.A)
            std::swap(row[i], row[j]);
        std::swap(M.col_ideals[i], M.col_ideals[j]);
        std::swap(ainv[i], ainv[j]);
    }

    void swap_rows(size_t i, size_t j) {
        std::swap(M.A[i], M.A[j]);
        std::swap(M.row_ideals[i], M.row_ideals[j]);
        std::swap(binv[i], binv[j]);
    }

    void col_pivot(size_t i) {
        for (size_t j = i; j-- > 0;) {
            if (M.A[i][j].is_zero())
                continue;
            if (M.A[i][i].is_zero()) {
                swap_cols(i, j);
                continue;
            }
            FieldElement aii = M.A[i][i], aij = M.A[i][j];
            EuclidStep e = euclid(K, M.col_ideals[i], M.col_ideals[j], aii, aij);
            for (size_t k = 0; k < n(); ++k) {
                FieldElement ci = M.A[k][i], cj = M.A[k][j];
                M.A[k][i] = add(mul(K, e.gamma, ci), mul(K, e.delta, cj));
                M.A[k][j] = sub(mul(K, aii, cj), mul(K, aij, ci));
            }
            FractionalIdeal aj = div(K, mul(K, M.col_ideals[i], M.col_ideals[j]), e.g);
            M.col_ideals[j] = std::move(aj);
            M.col_ideals[i] = e.g;
            ainv[j] = inv(K, M.col_ideals[j]);
            ainv[i] = inv(K, M.col_ideals[i]);
            normalize_col(j);
            normalize_col(i);
            for (size_t k = 0; k <= i; ++k) {
                reduce_entry(k, j);
                if (k != i)
                    reduce_entry(k, i);
            }
        }
    }

    bool row_pivot(size_t i) {
        bool step_over = true;
        for (size_t j = i; j-- > 0;) {
            if (M.A[j][i].is_zero())
                continue;
            step_over = false;
            if (M.A[i][i].is_zero()) {
                swap_rows(i, j);
                continue;
            }
            FieldElement aii = M.A[i][i], aji = M.A[j][i];
            EuclidStep e = euclid(K, binv[i], binv[j], aii, aji);
            for (size_t k = 0; k < n(); ++k) {
                FieldElement ri = M.A[i][k], rj = M.A[j][k];
                M.A[i][k] = add(mul(K, e.gamma, ri), mul(K, e.delta, rj));
                M.A[j][k] = sub(mul(K, aii, rj), mul(K, aji, ri));
            }
            FractionalIdeal bj = mul(K, mul(K, M.row_ideals[i], M.row_ideals[j]), e.g);
            M.row_ideals[j] = std::move(bj);
            binv[j] = inv(K, M.row_ideals[j]);
            binv[i] = e.g;
            M.row_ideals[i] = inv(K, e.g);
            normalize_row_i(j);
            normalize_row_i(i);
            for (size_t k = 0; k <= i; ++k) {
                reduce_entry(j, k);
                if (k != i)
                    reduce_entry(i, k);
            }
        }
        return step_over;
    }

    FractionalIdeal pivot_ideal(size_t i) {
        const FieldElement &aii = M.A[i][i];
        if (aii.is_zero())
            return D;
        return add(K, mul(K, aii, mul(K, M.col_ideals[i], binv[i])), D);
    }
};

} // namespace

std::vector<FractionalIdeal> pseudo_snf(const NumberField &K, const BiPseudoMatrix &B,
                                        const FractionalIdeal &dd, const SnfTrace &trace) {
    size_t n = B.size();
    if (B.row_ideals.size() != n || B.col_ideals.size() != n)
        throw Error("pseudo_snf: one ideal per row and per column expected");
    for (auto &row : B.A)
        if (row.size() != n)
            throw Error("pseudo_snf: square matrix expected");
    if (!dd.is_integral())
        throw Error("pseudo_snf: determinantal ideal must be integral");
    SnfState s{K, B, {}, {}, dd, {}, trace};
    for (size_t i = 0; i < n; ++i) {
        s.binv.push_back(inv(K, B.row_ideals[i]));
        s.ainv.push_back(inv(K, B.col_ideals[i]));
    }
    for (size_t j = 0; j < n; ++j)
        s.normalize_col(j);
    for (size_t i = 0; i < n; ++i)
        s.normalize_row_i(i);
    for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l)
            s.reduce_entry(k, l);

    std::vector<FractionalIdeal> divisors(n);
    for (size_t i = n; i-- > 0;) {
        for (;;) {
            s.col_pivot(i);
            bool step_over = s.row_pivot(i);
            bool obstructed = false;
            FractionalIdeal t = s.pivot_ideal(i);
            if (step_over) {
                auto ob = offdiag_obstruction_scan(K, s.M, i, t);
                if (ob) {
                    for (size_t l = 0; l < n; ++l)
                        s.M.A[i][l] = add(s.M.A[i][l], mul(K, ob->g, s.M.A[ob->k][l]));
                    for (size_t l = 0; l < i; ++l)
                        s.reduce_entry(i, l);
                    step_over = false;
                    obstructed = true;
                }
            }
            if (trace.on_pass)
                trace.on_pass(i, t, obstructed);
            if (step_over)
                break;
        }
        FractionalIdeal di;
        FieldElement &aii = s.M.A[i][i];
        if (aii.is_zero()) {
            di = s.D;
        } else {
            s.M.col_ideals[i] = mul(K, aii, s.M.col_ideals[i]);
            s.ainv[i] = inv(K, s.M.col_ideals[i]);
            aii = K.one();
            di = add(K, mul(K, s.M.col_ideals[i], s.binv[i]), s.D);
        }
        if (!di.is_integral())
            throw Error("pseudo_snf: elementary divisor is not integral");
        s.D = div(K, s.D, di);
        divisors[i] = std::move(di);
    }
    return divisors;
}

} // namespace okmod
