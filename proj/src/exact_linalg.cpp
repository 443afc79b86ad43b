#include "okmod/exact_linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

namespace okmod {

namespace {

using Row = std::vector<Int>;

// Triangular accumulator behind hnf / hnf_with_modulus / howell.
// slot c holds the row whose last nonzero entry sits in column c.
struct Echelon {
    size_t m;
    std::optional<Int> N; // arithmetic modulo N when set
    std::vector<Row> H;
    std::vector<bool> has;

    Echelon(size_t m_, std::optional<Int> n) : m(m_), N(std::move(n)), H(m_), has(m_, false) {}

    void reduce(Row &v, size_t upto) const {
        if (!N)
            return;
        for (size_t j = 0; j <= upto; ++j)
            v[j] = mod_pos(v[j], *N);
    }

    // a unit u modulo N with u*x = gcd(x, N) (mod N)
    Int unit_normalizer(const Int &x) const {
        Int g = gcd(x, *N);
        Int Ng = *N / g;
        if (Ng == 1)
            return 1;
        Int xg = mod_pos(x / g, Ng), u;
        mpz_invert(u.get_mpz_t(), xg.get_mpz_t(), Ng.get_mpz_t());
        while (gcd(u, *N) != 1)
            u += Ng;
        return u;
    }

    void set_pivot(size_t c, Row v) {
        if (N) {
            Int u = unit_normalizer(v[c]);
            for (size_t j = 0; j <= c; ++j)
                v[j] *= u;
            reduce(v, c);
        } else if (v[c] < 0) {
            for (size_t j = 0; j <= c; ++j)
                v[j] = -v[j];
        }
        H[c] = std::move(v);
        has[c] = true;
    }

    void insert(Row v, size_t top) {
        reduce(v, top);
        for (size_t cc = top + 1; cc-- > 0;) {
            const size_t c = cc;
            if (v[c] == 0)
                continue;
            if (!has[c]) {
                set_pivot(c, std::move(v));
                return;
            }
            Row &h = H[c];
            Int s, t, g;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[c].get_mpz_t(),
                       v[c].get_mpz_t());
            Int a = h[c] / g, b = v[c] / g;
            for (size_t j = 0; j <= c; ++j) {
                Int hj = h[j], vj = v[j];
                h[j] = s * hj + t * vj;
                v[j] = a * vj - b * hj;
            }
            if (N) {
                reduce(h, c);
                reduce(v, c);
                Int u = unit_normalizer(h[c]);
                if (u != 1) {
                    for (size_t j = 0; j <= c; ++j)
                        h[j] *= u;
                    reduce(h, c);
                }
            } else {
                if (h[c] < 0)
                    for (size_t j = 0; j <= c; ++j)
                        h[j] = -h[j];
                // keep v small against the known pivots
                reduce_against(v, c);
            }
        }
    }

    // reduce entries of v in columns < c against the pivots already present
    void reduce_against(Row &v, size_t c) const {
        for (size_t jj = c; jj-- > 0;) {
            if (!has[jj] || v[jj] == 0)
                continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), v[jj].get_mpz_t(), H[jj][jj].get_mpz_t());
            if (q != 0)
                for (size_t k = 0; k <= jj; ++k)
                    v[k] -= q * H[jj][k];
        }
    }

    // Howell completion: the annihilator multiple of every pivot row
    void complete() {
        for (size_t cc = m; cc-- > 0;) {
            if (!has[cc])
                continue;
            Int g = gcd(H[cc][cc], *N);
            Int k = *N / g;
            if (k == 1 || cc == 0)
                continue;
            Row v(m);
            for (size_t j = 0; j < cc; ++j)
                v[j] = H[cc][j] * k;
            insert(std::move(v), cc - 1);
        }
    }

    // off-diagonal entries into [0, pivot), column by column from the right
    void normalize_offdiag() {
        for (size_t cc = m; cc-- > 0;) {
            if (!has[cc])
                continue;
            const Int &p = H[cc][cc];
            for (size_t i = cc + 1; i < m; ++i) {
                if (!has[i])
                    continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), H[i][cc].get_mpz_t(), p.get_mpz_t());
                if (q != 0) {
                    for (size_t k = 0; k <= cc; ++k)
                        H[i][k] -= q * H[cc][k];
                    reduce(H[i], cc);
                }
            }
        }
    }
};

void insert_all(Echelon &E, const IntMatrix &A) {
    for (size_t i = 0; i < A.rows; ++i) {
        E.insert(A.row(i), A.cols - 1);
        if (!E.N && (i % 8 == 7))
            E.normalize_offdiag();
    }
}

// 64-bit modular helpers for Dixon lifting
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return (unsigned __int128)a * b % p;
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2)
        return false;
    for (uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % q == 0)
            return n == q;
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
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

// inverse of A mod p, or nullopt if singular mod p
std::optional<std::vector<uint64_t>> inverse_mod(const IntMatrix &A, uint64_t p) {
    size_t n = A.rows;
    std::vector<uint64_t> M(n * 2 * n, 0);
    Int P = (unsigned long)p;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            M[i * 2 * n + j] = mod_pos(A(i, j), P).get_ui();
        M[i * 2 * n + n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && M[piv * 2 * n + c] == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        if (piv != c)
            for (size_t j = 0; j < 2 * n; ++j)
                std::swap(M[c * 2 * n + j], M[piv * 2 * n + j]);
        uint64_t inv = powmod(M[c * 2 * n + c], p - 2, p);
        for (size_t j = 0; j < 2 * n; ++j)
            M[c * 2 * n + j] = mulmod(M[c * 2 * n + j], inv, p);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || M[i * 2 * n + c] == 0)
                continue;
            uint64_t f = M[i * 2 * n + c];
            for (size_t j = 0; j < 2 * n; ++j)
                M[i * 2 * n + j] = (M[i * 2 * n + j] + p - mulmod(f, M[c * 2 * n + j], p)) % p;
        }
    }
    std::vector<uint64_t> R(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            R[i * n + j] = M[i * 2 * n + n + j];
    return R;
}

Int ceil_sqrt(const Int &x) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    if (r * r < x)
        ++r;
    return r;
}

// n/d with n = d*x mod P, |n| <= nb, 0 < d <= db
std::optional<Rat> rat_recon(const Int &x, const Int &P, const Int &nb, const Int &db) {
    Int r0 = P, r1 = mod_pos(x, P), t0 = 0, t1 = 1;
    while (r1 > nb) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > db)
        return std::nullopt;
    Rat q(r1, t1);
    q.canonicalize();
    return q;
}

} // namespace

IntMatrix hnf(const IntMatrix &A) {
    size_t m = A.cols;
    Echelon E(m, std::nullopt);
    insert_all(E, A);
    E.normalize_offdiag();
    IntMatrix H(m, m);
    for (size_t c = 0; c < m; ++c) {
        if (!E.has[c])
            throw Error("hnf: matrix does not have full column rank");
        for (size_t j = 0; j <= c; ++j)
            H(c, j) = E.H[c][j];
    }
    return H;
}

IntMatrix hnf_with_modulus(const IntMatrix &A, const Int &lambda) {
    if (lambda <= 0)
        throw Error("hnf_with_modulus: modulus must be positive");
    size_t m = A.cols;
    if (lambda == 1)
        return IntMatrix::identity(m);
    Echelon E(m, Int(lambda * lambda));
    insert_all(E, A);
    for (size_t c = 0; c < m; ++c) {
        Row v(m);
        v[c] = lambda;
        E.insert(std::move(v), c);
    }
    E.complete();
    E.normalize_offdiag();
    IntMatrix H(m, m);
    for (size_t c = 0; c < m; ++c) {
        if (!E.has[c])
            throw Error("hnf_with_modulus: missing pivot");
        for (size_t j = 0; j <= c; ++j)
            H(c, j) = E.H[c][j];
    }
    return H;
}

IntMatrix howell(const IntMatrix &A, const Int &modulus) {
    if (modulus < 2)
        throw Error("howell: modulus must be >= 2");
    size_t m = A.cols;
    // reverse the columns so that the leftmost pivot becomes the rightmost
    IntMatrix R(A.rows, m);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < m; ++j)
            R(i, m - 1 - j) = A(i, j);
    Echelon E(m, modulus);
    insert_all(E, R);
    E.complete();
    E.normalize_offdiag();
    std::vector<IntVec> out;
    for (size_t cc = m; cc-- > 0;) {
        if (!E.has[cc])
            continue;
        IntVec v(m);
        for (size_t j = 0; j <= cc; ++j)
            v[m - 1 - j] = E.H[cc][j];
        out.push_back(std::move(v));
    }
    return IntMatrix::from_rows(out, m);
}

RatVec dixon_solve(const IntMatrix &A, const IntVec &b) {
    size_t n = A.rows;
    if (A.cols != n || b.size() != n)
        throw Error("dixon_solve: shape mismatch");
    if (n == 0)
        return {};
    // Hadamard bounds for det(A) and for the Cramer numerators
    Int hd = 1, hn = 1;
    for (size_t i = 0; i < n; ++i) {
        Int s = 0;
        for (size_t j = 0; j < n; ++j)
            s += A(i, j) * A(i, j);
        hd *= ceil_sqrt(s);
        hn *= ceil_sqrt(s + b[i] * b[i]);
    }
    uint64_t p = 65537;
    std::optional<std::vector<uint64_t>> Ainv;
    for (int tries = 0;; ++tries) {
        Ainv = inverse_mod(A, p);
        if (Ainv)
            break;
        if (tries == 16 && det(A) == 0)
            throw Error("dixon_solve: singular matrix");
        do
            p += 2;
        while (!is_prime_u64(p));
    }
    Int P = (unsigned long)p, pk = 1, bound = 2 * hn * hd + 1;
    IntVec r = b, x(n);
    std::vector<uint64_t> rm(n), xi(n);
    while (pk <= bound) {
        for (size_t i = 0; i < n; ++i)
            rm[i] = mod_pos(r[i], P).get_ui();
        for (size_t i = 0; i < n; ++i) {
            unsigned __int128 s = 0;
            for (size_t j = 0; j < n; ++j)
                s += (unsigned __int128)(*Ainv)[i * n + j] * rm[j];
            xi[i] = (uint64_t)(s % p);
        }
        for (size_t i = 0; i < n; ++i) {
            Int s = r[i];
            for (size_t j = 0; j < n; ++j)
                s -= A(i, j) * Int((unsigned long)xi[j]);
            r[i] = s / P; // exact
            x[i] += pk * Int((unsigned long)xi[i]);
        }
        pk *= P;
    }
    RatVec out(n);
    for (size_t i = 0; i < n; ++i) {
        auto q = rat_recon(x[i], pk, hn, hd);
        if (!q)
            throw Error("dixon_solve: rational reconstruction failed");
        out[i] = *q;
    }
    for (size_t i = 0; i < n; ++i) {
        Rat s = 0;
        for (size_t j = 0; j < n; ++j)
            s += Rat(A(i, j)) * out[j];
        if (s != Rat(b[i]))
            throw Error("dixon_solve: verification failed");
    }
    return out;
}

RatVec dixon_solve_row(const IntMatrix &A, const IntVec &b) {
    return dixon_solve(A.transpose(), b);
}

IntMatrix back_substitute(const IntMatrix &H, const IntMatrix &B, const Int &modulus) {
    size_t d = H.rows;
    if (H.cols != d || B.rows != d)
        throw Error("back_substitute: shape mismatch");
    Int W = 0;
    if (modulus != 0) {
        W = modulus;
        for (size_t i = 0; i < d; ++i)
            W *= abs(H(i, i));
    }
    IntMatrix X(d, B.cols);
    for (size_t i = 0; i < d; ++i) {
        if (H(i, i) == 0)
            throw Error("back_substitute: zero diagonal");
        for (size_t c = 0; c < B.cols; ++c) {
            Int t = B(i, c);
            for (size_t j = 0; j < i; ++j)
                t -= H(i, j) * X(j, c);
            if (!mpz_divisible_p(t.get_mpz_t(), H(i, i).get_mpz_t()))
                throw Error("back_substitute: system has no integral solution");
            X(i, c) = t / H(i, i);
        }
        if (W != 0) {
            W /= abs(H(i, i));
            for (size_t c = 0; c < B.cols; ++c)
                X(i, c) = mod_sym(X(i, c), W);
        }
    }
    if (modulus != 0)
        for (auto &x : X.a)
            x = mod_pos(x, modulus);
    return X;
}

IntMatrix z_snf(const IntMatrix &A0) {
    IntMatrix A = A0;
    size_t r = A.rows, c = A.cols, k = std::min(r, c);
    for (size_t t = 0; t < k; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            size_t pi = r, pj = c;
            for (size_t i = t; i < r; ++i)
                for (size_t j = t; j < c; ++j)
                    if (A(i, j) != 0 && (pi == r || abs(A(i, j)) < abs(A(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == r)
                goto done;
            if (pi != t)
                for (size_t j = 0; j < c; ++j)
                    std::swap(A(t, j), A(pi, j));
            if (pj != t)
                for (size_t i = 0; i < r; ++i)
                    std::swap(A(i, t), A(i, pj));
            bool clean = true;
            for (size_t i = t + 1; i < r; ++i) {
                Int q = A(i, t) / A(t, t);
                if (q != 0)
                    for (size_t j = t; j < c; ++j)
                        A(i, j) -= q * A(t, j);
                if (A(i, t) != 0)
                    clean = false;
            }
            for (size_t j = t + 1; j < c; ++j) {
                Int q = A(t, j) / A(t, t);
                if (q != 0)
                    for (size_t i = t; i < r; ++i)
                        A(i, j) -= q * A(i, t);
                if (A(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility of the trailing block
            size_t bad = r;
            for (size_t i = t + 1; i < r && bad == r; ++i)
                for (size_t j = t + 1; j < c; ++j)
                    if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == r)
                break;
            for (size_t j = t; j < c; ++j)
                A(t, j) += A(bad, j);
        }
        A(t, t) = abs(A(t, t));
    }
done:
    return A;
}

Int det(const IntMatrix &A0) {
    size_t n = A0.rows;
    if (A0.cols != n)
        throw Error("det: matrix not square");
    if (n == 0)
        return 1;
    IntMatrix A = A0;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            size_t s = k + 1;
            while (s < n && A(s, k) == 0)
                ++s;
            if (s == n)
                return 0;
            for (size_t j = 0; j < n; ++j)
                std::swap(A(k, j), A(s, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                A(i, j) = A(k, k) * A(i, j) - A(i, k) * A(k, j);
                mpz_divexact(A(i, j).get_mpz_t(), A(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

size_t rank(const IntMatrix &A0) {
    IntMatrix A = A0;
    size_t r = 0;
    for (size_t c = 0; c < A.cols && r < A.rows; ++c) {
        size_t piv = r;
        while (piv < A.rows && A(piv, c) == 0)
            ++piv;
        if (piv == A.rows)
            continue;
        for (size_t j = 0; j < A.cols; ++j)
            std::swap(A(r, j), A(piv, j));
        for (size_t i = r + 1; i < A.rows; ++i) {
            if (A(i, c) == 0)
                continue;
            Int g = gcd(A(r, c), A(i, c));
            Int a = A(r, c) / g, b = A(i, c) / g;
            for (size_t j = c; j < A.cols; ++j)
                A(i, j) = a * A(i, j) - b * A(r, j);
            Int ct = content(A.row(i));
            if (ct > 1)
                for (size_t j = c; j < A.cols; ++j)
                    A(i, j) /= ct;
        }
        ++r;
    }
    return r;
}

RatMatrix inverse(const RatMatrix &A) {
    size_t n = A.num.rows;
    if (A.num.cols != n)
        throw Error("inverse: matrix not square");
    std::vector<Rat> M(n * 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            M[i * 2 * n + j] = A.at(i, j);
        M[i * 2 * n + n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && M[piv * 2 * n + c] == 0)
            ++piv;
        if (piv == n)
            throw Error("inverse: singular matrix");
        if (piv != c)
            for (size_t j = 0; j < 2 * n; ++j)
                std::swap(M[c * 2 * n + j], M[piv * 2 * n + j]);
        Rat inv = 1 / M[c * 2 * n + c];
        for (size_t j = 0; j < 2 * n; ++j)
            M[c * 2 * n + j] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || M[i * 2 * n + c] == 0)
                continue;
            Rat f = M[i * 2 * n + c];
            for (size_t j = 0; j < 2 * n; ++j)
                M[i * 2 * n + j] -= f * M[c * 2 * n + j];
        }
    }
    Int den = 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            den = lcm(den, M[i * 2 * n + n + j].get_den());
    IntMatrix num(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rat v = M[i * 2 * n + n + j] * den;
            num(i, j) = v.get_num();
        }
    return RatMatrix(num, den);
}

RatMatrix inverse(const IntMatrix &A) { return inverse(RatMatrix(A, 1)); }

bool in_lattice(const IntMatrix &H, const RatVec &v, IntVec *coords) {
    size_t m = H.cols;
    if (H.rows != m || v.size() != m)
        throw Error("in_lattice: shape mismatch");
    RatVec w = v;
    IntVec y(m);
    for (size_t cc = m; cc-- > 0;) {
        Rat q = w[cc] / Rat(H(cc, cc));
        if (q.get_den() != 1)
            return false;
        y[cc] = q.get_num();
        if (y[cc] != 0)
            for (size_t k = 0; k <= cc; ++k)
                w[k] -= Rat(y[cc] * H(cc, k));
    }
    if (coords)
        *coords = std::move(y);
    return true;
}

} // namespace okmod
