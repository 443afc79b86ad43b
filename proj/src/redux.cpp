#include "okmod/redux.hpp"

#include "okmod/exact_linalg.hpp"
#include "okmod/lattice.hpp"

namespace okmod {

namespace {

std::string key_of(const FractionalIdeal &a) { return to_string(a.num) + "/" + a.den.get_str(); }

std::shared_ptr<const IdealBasis> make_basis(IntMatrix L, const Int &den) {
    auto b = std::make_shared<IdealBasis>();
    RatMatrix Li = inverse(L);
    b->L = std::move(L);
    b->den = den;
    b->adj = Li.num;
    b->det = Li.den;
    return b;
}

// coordinates y with x = sum y_i (L_i / den)
RatVec coordinates(const IdealBasis &B, const FieldElement &x) {
    IntVec v = x.c;
    for (auto &t : v)
        t *= B.den;
    IntVec w = v * B.adj;
    RatVec y(w.size());
    for (size_t i = 0; i < w.size(); ++i)
        y[i] = make_rat(w[i], x.den * B.det);
    return y;
}

FieldElement recombine(const IdealBasis &B, const RatVec &r) {
    Int l = 1;
    for (auto &q : r)
        l = lcm(l, q.get_den());
    IntVec s(r.size());
    for (size_t i = 0; i < r.size(); ++i)
        s[i] = Rat(r[i] * l).get_num();
    return FieldElement(s * B.L, l * B.den);
}

} // namespace

std::shared_ptr<const IdealBasis> ReducedBasisCache::reduced(const NumberField &K,
                                                             const FractionalIdeal &a) {
    std::string k = key_of(a);
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = red_.find(k);
        if (it != red_.end())
            return it->second;
    }
    auto b = make_basis(lll_reduce(K, a.num), a.den);
    std::lock_guard<std::mutex> g(mu_);
    return red_.emplace(k, b).first->second;
}

std::shared_ptr<const IdealBasis> ReducedBasisCache::hermite(const FractionalIdeal &a) {
    std::string k = key_of(a);
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = her_.find(k);
        if (it != her_.end())
            return it->second;
    }
    auto b = make_basis(a.num, a.den);
    std::lock_guard<std::mutex> g(mu_);
    return her_.emplace(k, b).first->second;
}

size_t ReducedBasisCache::size() const {
    std::lock_guard<std::mutex> g(mu_);
    return red_.size() + her_.size();
}

FieldElement reduce_mod_ideal(const NumberField &K, const FieldElement &alpha,
                              const FractionalIdeal &a, ReducedBasisCache *cache) {
    if (alpha.is_zero())
        return alpha;
    std::shared_ptr<const IdealBasis> B;
    if (cache)
        B = cache->reduced(K, a);
    else
        B = make_basis(lll_reduce(K, a.num), a.den);
    RatVec y = coordinates(*B, alpha);
    RatVec r(y.size());
    for (size_t i = 0; i < y.size(); ++i) {
        // c = ceil(y - 1/2), so y - c lies in (-1/2, 1/2]
        Rat t = y[i] - Rat(1, 2);
        Int c;
        mpz_cdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
        r[i] = y[i] - Rat(c);
    }
    return recombine(*B, r);
}

FieldElement reduce_canonical(const NumberField &K, const FieldElement &alpha,
                              const FractionalIdeal &a, ReducedBasisCache *cache) {
    (void)K;
    if (alpha.is_zero())
        return alpha;
    std::shared_ptr<const IdealBasis> B = cache ? cache->hermite(a) : make_basis(a.num, a.den);
    RatVec y = coordinates(*B, alpha);
    RatVec r(y.size());
    for (size_t i = 0; i < y.size(); ++i) {
        Int c;
        mpz_fdiv_q(c.get_mpz_t(), y[i].get_num_mpz_t(), y[i].get_den_mpz_t());
        r[i] = y[i] - Rat(c);
    }
    return recombine(*B, r);
}

NormalizedRow normalize_row(const NumberField &K, const PseudoRow &row, const FractionalIdeal &a) {
    // a = b / k, b^-1 = c / l, alpha short in c: a' = (alpha / l) b is integral
    FractionalIdeal b{a.num, 1};
    const Int &k = a.den;
    FractionalIdeal bi = inv(K, b);
    const Int &l = bi.den;
    FieldElement alpha(shortest_basis_element(K, bi.num), 1);
    FieldElement t = scalar_div(alpha, l); // in b^-1
    FractionalIdeal a2 = mul(K, t, b);
    if (!a2.is_integral())
        throw Error("normalize_row: internal error, ideal not integral");
    // row' = (l / (k alpha)) row = (1 / (k t)) row
    FieldElement s = inv(K, scalar_mul(k, t));
    NormalizedRow out;
    out.ideal = std::move(a2);
    out.scale = s;
    out.row.reserve(row.size());
    for (auto &x : row)
        out.row.push_back(mul(K, s, x));
    return out;
}

} // namespace okmod
