#include "okmod/residue_crt.hpp"

#include <algorithm>

namespace okmod {

namespace fp {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) {
    a %= p;
    if (a == 0)
        throw Error("invmod: zero is not invertible");
    return powmod(a, p - 2, p);
}

u64 reduce(const Int &x, u64 p) {
    Int r;
    Int pp((unsigned long)p);
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
    return r.get_ui();
}

void trim(Poly &a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

Poly add(const Poly &a, const Poly &b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + y) % p;
    }
    trim(r);
    return r;
}

Poly sub(const Poly &a, const Poly &b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

Poly mul(const Poly &a, const Poly &b, u64 p) {
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(r);
    return r;
}

Poly scale(const Poly &a, u64 c, u64 p) {
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = mulmod(a[i], c, p);
    trim(r);
    return r;
}

void divmod(const Poly &a, const Poly &b, u64 p, Poly *q, Poly *r) {
    if (b.empty())
        throw Error("poly division by zero");
    Poly rem = a;
    trim(rem);
    Poly quo;
    if (rem.size() >= b.size())
        quo.assign(rem.size() - b.size() + 1, 0);
    u64 il = invmod(b.back(), p);
    while (rem.size() >= b.size()) {
        size_t s = rem.size() - b.size();
        u64 c = mulmod(rem.back(), il, p);
        quo[s] = c;
        for (size_t i = 0; i < b.size(); ++i)
            rem[s + i] = (rem[s + i] + p - mulmod(c, b[i], p)) % p;
        trim(rem);
    }
    trim(quo);
    if (q)
        *q = std::move(quo);
    if (r)
        *r = std::move(rem);
}

Poly mod(const Poly &a, const Poly &b, u64 p) {
    Poly r;
    divmod(a, b, p, nullptr, &r);
    return r;
}

Poly monic(const Poly &a, u64 p) {
    if (a.empty())
        return a;
    return scale(a, invmod(a.back(), p), p);
}

Poly gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Poly mulmod(const Poly &a, const Poly &b, const Poly &m, u64 p) { return mod(mul(a, b, p), m, p); }

Poly powmod(const Poly &a, const Int &e, const Poly &m, u64 p) {
    Poly r = mod(Poly{1}, m, p), base = mod(a, m, p);
    size_t nb = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0)
        return r;
    for (size_t i = nb; i-- > 0;) {
        r = mulmod(r, r, m, p);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mulmod(r, base, m, p);
    }
    return r;
}

Poly invmod(const Poly &a, const Poly &m, u64 p) {
    // extended Euclid on (a, m)
    Poly r0 = mod(a, m, p), r1 = m, s0{1}, s1{};
    while (!r1.empty()) {
        Poly q, r;
        divmod(r0, r1, p, &q, &r);
        Poly s = sub(s0, mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1)
        throw Error("poly invmod: not invertible");
    return mod(scale(s0, invmod(r0[0], p), p), m, p);
}

namespace {

// deterministic equal-degree splitting of g (product of distinct degree-k
// irreducibles): try h = x, x + 1, ..., read off base-p digit strings
void edf(const Poly &g, size_t k, u64 p, std::vector<Poly> &out) {
    size_t n = g.size() - 1;
    if (n == k) {
        out.push_back(g);
        return;
    }
    Int pk = 1;
    for (size_t i = 0; i < k; ++i)
        pk *= Int((unsigned long)p);
    Int e = (pk - 1) / 2;
    for (u64 t = p;; ++t) { // constants never split
        Poly h;
        for (u64 x = t; x; x /= p)
            h.push_back(x % p);
        trim(h);
        if (h.size() > n)
            throw Error("edf: search space exhausted");
        Poly w;
        if (p == 2) {
            Poly s = mod(h, g, p), cur = s;
            for (size_t i = 1; i < k; ++i) {
                cur = mulmod(cur, cur, g, p);
                s = add(s, cur, p);
            }
            w = s;
        } else {
            w = sub(powmod(h, e, g, p), Poly{1}, p);
        }
        Poly r = gcd(g, w, p);
        if (r.size() > 1 && r.size() < g.size()) {
            Poly q;
            divmod(g, r, p, &q, nullptr);
            edf(r, k, p, out);
            edf(monic(q, p), k, p, out);
            return;
        }
    }
}

} // namespace

std::vector<Poly> factor_squarefree(const Poly &f0, u64 p) {
    Poly f = monic(f0, p);
    std::vector<Poly> out;
    Poly g = f, x{0, 1};
    Poly h = mod(x, g, p);
    for (size_t k = 1; g.size() > 1 && 2 * k <= g.size() - 1; ++k) {
        h = powmod(h, Int((unsigned long)p), g, p);
        Poly gk = gcd(g, sub(h, x, p), p);
        if (gk.size() > 1) {
            edf(gk, k, p, out);
            Poly q;
            divmod(g, gk, p, &q, nullptr);
            g = monic(q, p);
            h = mod(h, g, p);
        }
    }
    if (g.size() > 1)
        out.push_back(g);
    std::sort(out.begin(), out.end(), [](const Poly &a, const Poly &b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return out;
}

} // namespace fp

using fp::u64;

bool is_prime(u64 n) {
    if (n < 2)
        return false;
    for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0)
            return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while (!(d & 1)) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = fp::powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = fp::mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp)
            return false;
    }
    return true;
}

PrimePlan plan_primes(const NumberField &K, const Rat &log_B) {
    PrimePlan plan;
    plan.log_B = log_B;
    plan.N = 1;
    Rat t = log_B + 1;
    Int ex;
    mpz_cdiv_q(ex.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    if (ex < 1)
        ex = 1;
    Int target = Int(1) << (unsigned long)ex.get_ui();
    for (u64 n = 2; plan.N <= target; ++n) {
        if (!is_prime(n))
            continue;
        if (fp::reduce(K.disc_f, n) == 0)
            continue;
        plan.primes.push_back(n);
        plan.N *= Int((unsigned long)n);
    }
    return plan;
}

ResidueSystem split_prime(const NumberField &K, u64 p) {
    if (!is_prime(p))
        throw Error("split_prime: not a prime");
    if (fp::reduce(K.disc_f, p) == 0)
        throw Error("split_prime: prime divides disc(f)");
    ResidueSystem S;
    S.p = p;
    size_t d = K.d;
    fp::Poly fb(d + 1);
    for (size_t i = 0; i <= d; ++i)
        fb[i] = fp::reduce(K.f[i], p);
    fp::trim(fb);
    S.factors = fp::factor_squarefree(fb, p);
    u64 iden = fp::invmod(fp::reduce(K.W.den, p), p);
    S.W_mod.assign(d, std::vector<u64>(d));
    S.P_mod.assign(d, std::vector<u64>(d));
    for (size_t j = 0; j < d; ++j)
        for (size_t k = 0; k < d; ++k) {
            S.W_mod[j][k] = fp::mulmod(fp::reduce(K.W.num(j, k), p), iden, p);
            S.P_mod[j][k] = fp::reduce(K.P(j, k), p);
        }
    S.proj.resize(S.factors.size());
    for (size_t i = 0; i < S.factors.size(); ++i)
        for (size_t j = 0; j < d; ++j) {
            fp::Poly w(S.W_mod[j].begin(), S.W_mod[j].end());
            fp::trim(w);
            S.proj[i].push_back(fp::mod(w, S.factors[i], p));
        }
    return S;
}

Residues project_element(const ResidueSystem &S, const FieldElement &b) {
    if (!b.is_integral())
        throw Error("project_element: element is not integral");
    u64 p = S.p;
    std::vector<u64> c(b.c.size());
    for (size_t j = 0; j < c.size(); ++j)
        c[j] = fp::reduce(b.c[j], p);
    Residues out(S.factors.size());
    for (size_t i = 0; i < S.factors.size(); ++i) {
        fp::Poly acc;
        for (size_t j = 0; j < c.size(); ++j)
            if (c[j])
                acc = fp::add(acc, fp::scale(S.proj[i][j], c[j], p), p);
        out[i] = std::move(acc);
    }
    return out;
}

fp::Poly crt_combine_factors(const ResidueSystem &S, const Residues &v) {
    u64 p = S.p;
    if (v.size() != S.factors.size())
        throw Error("crt_combine_factors: one value per factor expected");
    fp::Poly fb{1};
    for (auto &F : S.factors)
        fb = fp::mul(fb, F, p);
    fp::Poly h;
    for (size_t i = 0; i < S.factors.size(); ++i) {
        if (v[i].empty())
            continue;
        fp::Poly Mi;
        fp::divmod(fb, S.factors[i], p, &Mi, nullptr);
        fp::Poly ei = fp::invmod(fp::mod(Mi, S.factors[i], p), S.factors[i], p);
        fp::Poly t = fp::mulmod(v[i], ei, S.factors[i], p);
        h = fp::add(h, fp::mul(t, Mi, p), p);
    }
    return fp::mod(h, fb, p);
}

std::vector<u64> to_coordinates(const ResidueSystem &S, const fp::Poly &h) {
    u64 p = S.p;
    size_t d = S.P_mod.size();
    std::vector<u64> c(d, 0);
    for (size_t j = 0; j < h.size() && j < d; ++j)
        if (h[j])
            for (size_t k = 0; k < d; ++k)
                c[k] = (c[k] + fp::mulmod(h[j], S.P_mod[j][k], p)) % p;
    return c;
}

IntVec crt_combine_primes(const std::vector<std::vector<u64>> &vals,
                          const std::vector<u64> &primes) {
    if (vals.size() != primes.size() || vals.empty())
        throw Error("crt_combine_primes: one vector per prime expected");
    size_t n = vals[0].size();
    IntVec x(n, 0);
    Int M = 1;
    for (size_t t = 0; t < primes.size(); ++t) {
        u64 p = primes[t];
        u64 Minv = fp::invmod(fp::reduce(M, p), p);
        for (size_t k = 0; k < n; ++k) {
            u64 cur = fp::reduce(x[k], p);
            u64 diff = (vals[t][k] % p + p - cur) % p;
            u64 c = fp::mulmod(diff, Minv, p);
            x[k] += M * Int((unsigned long)c);
        }
        M *= Int((unsigned long)p);
    }
    for (auto &v : x)
        v = mod_sym(v, M);
    return x;
}

FieldElement lift_to_field(const NumberField &K, const IntVec &poly, const Int &N) {
    IntVec q(K.d, 0);
    for (size_t j = 0; j < poly.size() && j < K.d; ++j)
        q[j] = poly[j];
    IntVec c = q * K.P;
    for (auto &v : c)
        v = mod_sym(v, N);
    return FieldElement(c, 1);
}

} // namespace okmod
