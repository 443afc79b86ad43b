#include "okmod/numeric.hpp"

#include <mpfr.h>

#include <cmath>

namespace okmod {

namespace {

// thin RAII handle; all values in one computation share a precision
class Real {
  public:
    mpfr_t v;
    explicit Real(long prec) {
        mpfr_init2(v, prec);
        mpfr_set_zero(v, 1);
    }
    Real(long prec, const Rat &q, mpfr_rnd_t rnd = MPFR_RNDN) : Real(prec) {
        mpfr_set_q(v, q.get_mpq_t(), rnd);
    }
    Real(long prec, double x) : Real(prec) { mpfr_set_d(v, x, MPFR_RNDN); }
    Real(const Real &o) {
        mpfr_init2(v, mpfr_get_prec(o.v));
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    Real &operator=(const Real &o) {
        if (this != &o) {
            mpfr_set_prec(v, mpfr_get_prec(o.v));
            mpfr_set(v, o.v, MPFR_RNDN);
        }
        return *this;
    }
    ~Real() { mpfr_clear(v); }

    long prec() const { return mpfr_get_prec(v); }

    Real operator+(const Real &o) const {
        Real r(prec());
        mpfr_add(r.v, v, o.v, MPFR_RNDN);
        return r;
    }
    Real operator-(const Real &o) const {
        Real r(prec());
        mpfr_sub(r.v, v, o.v, MPFR_RNDN);
        return r;
    }
    Real operator*(const Real &o) const {
        Real r(prec());
        mpfr_mul(r.v, v, o.v, MPFR_RNDN);
        return r;
    }
    Real operator/(const Real &o) const {
        Real r(prec());
        mpfr_div(r.v, v, o.v, MPFR_RNDN);
        return r;
    }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v, v, MPFR_RNDN);
        return r;
    }
    bool operator<(const Real &o) const { return mpfr_less_p(v, o.v); }
    bool operator>(const Real &o) const { return mpfr_greater_p(v, o.v); }

    Real abs() const {
        Real r(prec());
        mpfr_abs(r.v, v, MPFR_RNDN);
        return r;
    }
    Real sqrt() const {
        Real r(prec());
        mpfr_sqrt(r.v, v, MPFR_RNDN);
        return r;
    }
    // exact value as a rational
    Rat to_rat() const {
        if (mpfr_zero_p(v))
            return 0;
        Int m;
        mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
        Rat q(m);
        if (e >= 0)
            mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), e);
        else
            mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), -e);
        return q;
    }
};

Real pow2(long prec, long e) {
    Real r(prec);
    mpfr_set_ui_2exp(r.v, 1, e, MPFR_RNDN);
    return r;
}

struct Cx {
    Real re, im;
    explicit Cx(long p) : re(p), im(p) {}
    Cx(Real a, Real b) : re(std::move(a)), im(std::move(b)) {}
    Cx operator+(const Cx &o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx &o) const { return {re - o.re, im - o.im}; }
    Cx operator*(const Cx &o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Cx operator*(const Real &s) const { return {re * s, im * s}; }
    Cx operator/(const Cx &o) const {
        Real n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    Real abs() const { return (re * re + im * im).sqrt(); }
};

// Aberth iteration for all complex roots of the monic f (coefficients c_0..c_d)
std::vector<Cx> aberth(const IntVec &f, long P) {
    size_t d = f.size() - 1;
    std::vector<Real> c;
    for (auto &x : f)
        c.emplace_back(P, Rat(x));
    Real bound(P, 1.0);
    for (size_t i = 0; i < d; ++i)
        if (c[i].abs() > bound - Real(P, 1.0))
            bound = c[i].abs() + Real(P, 1.0);
    std::vector<Cx> z;
    for (size_t k = 0; k < d; ++k) {
        double ang = 2 * M_PI * double(k) / double(d) + 0.4;
        Real rad = bound * Real(P, 0.5);
        z.emplace_back(rad * Real(P, std::cos(ang)), rad * Real(P, std::sin(ang)));
    }
    auto eval = [&](const Cx &x, Cx &fx, Cx &dfx) {
        fx = Cx(c[d], Real(P));
        dfx = Cx(P);
        for (size_t i = d; i-- > 0;) {
            dfx = dfx * x + fx;
            fx = fx * x + Cx(c[i], Real(P));
        }
    };
    Real tol = pow2(P, -P + 16);
    for (int it = 0; it < 2000; ++it) {
        Real worst(P);
        for (size_t k = 0; k < d; ++k) {
            Cx fx(P), dfx(P);
            eval(z[k], fx, dfx);
            if (mpfr_zero_p(fx.re.v) && mpfr_zero_p(fx.im.v))
                continue;
            Cx ratio = fx / dfx;
            Cx s(P);
            for (size_t j = 0; j < d; ++j)
                if (j != k) {
                    Cx one(Real(P, 1.0), Real(P));
                    s = s + one / (z[k] - z[j]);
                }
            Cx one(Real(P, 1.0), Real(P));
            Cx w = ratio / (one - ratio * s);
            z[k] = z[k] - w;
            Real wa = w.abs() / (z[k].abs() + Real(P, 1.0));
            if (wa > worst)
                worst = wa;
        }
        if (worst < tol)
            break;
    }
    return z;
}

} // namespace

CertifiedGram certified_gram(const IntVec &f, const RatMatrix &W, long target_bits) {
    size_t d = f.size() - 1;
    if (W.num.rows != d || W.num.cols != d)
        throw Error("certified_gram: basis shape mismatch");
    long bits_f = 0;
    for (auto &x : f)
        bits_f = std::max<long>(bits_f, mpz_sizeinbase(x.get_mpz_t(), 2));
    long P = std::max<long>(128, 2 * target_bits + 8 * bits_f + 64);
    for (int attempt = 0; attempt < 12; ++attempt, P *= 2) {
        auto z = aberth(f, P);
        Real slack = pow2(P, -P + 12);
        // root radii: a root of f lies within d*|f(z)|/|f'(z)| of z
        std::vector<Real> r;
        bool ok = true;
        for (size_t k = 0; k < d && ok; ++k) {
            Cx fx(Cx(Real(P, Rat(f[d])), Real(P))), dfx(P);
            Real scale(P, Rat(abs(f[d])));
            Real za = z[k].abs();
            for (size_t i = d; i-- > 0;) {
                dfx = dfx * z[k] + fx;
                fx = fx * z[k] + Cx(Real(P, Rat(f[i])), Real(P));
                scale = scale * za + Real(P, Rat(abs(f[i])));
            }
            Real err = scale * slack * Real(P, double(d + 2));
            Real num = fx.abs() + err;
            Real den = dfx.abs() - err * Real(P, double(d));
            if (!(den > Real(P)))
                ok = false;
            else
                r.push_back(Real(P, double(d)) * num / den * Real(P, 2.0) + slack);
        }
        for (size_t i = 0; i < d && ok; ++i)
            for (size_t j = i + 1; j < d && ok; ++j)
                if (!((z[i] - z[j]).abs() > r[i] + r[j]))
                    ok = false;
        if (!ok)
            continue;
        // basis values and their radii
        std::vector<std::vector<Cx>> val(d, std::vector<Cx>(d, Cx(P)));
        std::vector<std::vector<Real>> vr(d, std::vector<Real>(d, Real(P)));
        std::vector<std::vector<Real>> vabs(d, std::vector<Real>(d, Real(P)));
        for (size_t k = 0; k < d; ++k) {
            Real zr = z[k].abs() + r[k];
            for (size_t i = 0; i < d; ++i) {
                Cx acc(P);
                Real rad(P), mag(P);
                Cx zp(Real(P, 1.0), Real(P));
                Real zrp(P, 1.0), zrpm1(P, 0.0); // (|z|+r)^j and (|z|+r)^(j-1)
                for (size_t j = 0; j < d; ++j) {
                    Real w(P, W.at(i, j));
                    Real wa = w.abs();
                    acc = acc + zp * w;
                    if (j > 0)
                        rad = rad + wa * Real(P, double(j)) * zrpm1 * r[k];
                    mag = mag + wa * zrp;
                    zp = zp * z[k];
                    zrpm1 = zrp;
                    zrp = zrp * zr;
                }
                rad = rad + mag * slack * Real(P, double(4 * d + 4));
                val[k][i] = acc;
                vr[k][i] = rad;
                vabs[k][i] = acc.abs();
            }
        }
        CertifiedGram G;
        G.d = d;
        G.prec = P;
        G.mid.resize(d * d);
        Real worst(P);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                Real s(P), rad(P);
                for (size_t k = 0; k < d; ++k) {
                    s = s + val[k][i].re * val[k][j].re + val[k][i].im * val[k][j].im;
                    rad = rad + (vabs[k][i] + vr[k][i]) * vr[k][j] + vabs[k][j] * vr[k][i] +
                          (vabs[k][i] * vabs[k][j] + Real(P, 1.0)) * slack;
                }
                G.mid[i * d + j] = s.to_rat();
                if (rad > worst)
                    worst = rad;
            }
        // symmetrize exactly
        for (size_t i = 0; i < d; ++i)
            for (size_t j = i + 1; j < d; ++j)
                G.mid[j * d + i] = G.mid[i * d + j];
        G.rad = round_up(worst.to_rat() * Rat(2), P);
        if (G.rad < Rat(1) / Rat(Int(1) << (unsigned long)target_bits))
            return G;
    }
    throw Error("certified_gram: precision limit reached");
}

IntMatrix rounded_cholesky(const CertifiedGram &G, long e) {
    size_t d = G.d;
    long P = std::max<long>(G.prec, 2 * e + 128);
    std::vector<Real> L(d * d, Real(P));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j <= i; ++j) {
            Real s(P, G.mid[i * d + j]);
            for (size_t k = 0; k < j; ++k)
                s = s - L[i * d + k] * L[j * d + k];
            if (i == j) {
                if (!(s > Real(P)))
                    throw Error("rounded_cholesky: Gram matrix not positive definite");
                L[i * d + i] = s.sqrt();
            } else {
                L[i * d + j] = s / L[j * d + j];
            }
        }
    IntMatrix R(d, d);
    Real scale = pow2(P, e), half(P, 0.5);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j <= i; ++j) {
            Real x = L[i * d + j] * scale + half;
            mpfr_get_z(R(i, j).get_mpz_t(), x.v, MPFR_RNDD);
        }
    return R;
}

namespace {

long working_prec(const Rat &x, long bits) {
    long nb = mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
    return bits + nb + 64;
}

} // namespace

Rat round_up(const Rat &x, long bits) {
    Rat s = x;
    mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), bits);
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    Rat r(c);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
    return r;
}

Rat round_down(const Rat &x, long bits) {
    Rat s = x;
    mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), bits);
    Int c;
    mpz_fdiv_q(c.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    Rat r(c);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
    return r;
}

Rat sqrt_upper(const Rat &x, long bits) {
    if (x < 0)
        throw Error("sqrt_upper: negative argument");
    long P = working_prec(x, bits);
    Real a(P, x, MPFR_RNDU), r(P);
    mpfr_sqrt(r.v, a.v, MPFR_RNDU);
    return round_up(r.to_rat(), bits);
}

Rat sqrt_lower(const Rat &x, long bits) {
    if (x < 0)
        throw Error("sqrt_lower: negative argument");
    long P = working_prec(x, bits);
    Real a(P, x, MPFR_RNDD), r(P);
    mpfr_sqrt(r.v, a.v, MPFR_RNDD);
    return round_down(r.to_rat(), bits);
}

namespace {

// x^y evaluated with a generous relative error budget of 2^-(P-16)
Rat pow_near(const Rat &x, const Rat &y, long P) {
    if (x <= 0)
        throw Error("pow: non-positive base");
    Real a(P, x), b(P, y), r(P);
    mpfr_pow(r.v, a.v, b.v, MPFR_RNDN);
    return r.to_rat();
}

} // namespace

Rat pow_upper(const Rat &x, const Rat &y, long bits) {
    long P = working_prec(x, bits) + working_prec(y, 0);
    Rat v = pow_near(x, y, P);
    Rat eps = Rat(1) / Rat(Int(1) << (unsigned long)(bits + 8));
    return round_up(v * (1 + eps), bits);
}

Rat pow_lower(const Rat &x, const Rat &y, long bits) {
    long P = working_prec(x, bits) + working_prec(y, 0);
    Rat v = pow_near(x, y, P);
    Rat eps = Rat(1) / Rat(Int(1) << (unsigned long)(bits + 8));
    return round_down(v * (1 - eps), bits);
}

Rat log2_upper(const Rat &x, long bits) {
    if (x <= 0)
        throw Error("log2_upper: non-positive argument");
    long P = working_prec(x, bits);
    Real a(P, x, MPFR_RNDU), r(P);
    mpfr_log2(r.v, a.v, MPFR_RNDU);
    Rat v = r.to_rat();
    Rat eps = Rat(1) / Rat(Int(1) << (unsigned long)bits);
    return round_up(v + eps, bits);
}

} // namespace okmod
