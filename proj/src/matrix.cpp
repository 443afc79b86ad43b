#include "okmod/matrix.hpp"

#include <sstream>

namespace okmod {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    a.reserve(rows * cols);
    for (auto &r : init) {
        if (r.size() != cols)
            throw Error("IntMatrix: ragged initializer");
        for (long x : r)
            a.emplace_back(x);
    }
}

IntVec IntMatrix::row(size_t i) const {
    return IntVec(a.begin() + i * cols, a.begin() + (i + 1) * cols);
}

void IntMatrix::set_row(size_t i, const IntVec &v) {
    for (size_t j = 0; j < cols; ++j)
        (*this)(i, j) = v[j];
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    for (auto &x : a)
        if (x != 0)
            return false;
    return true;
}

Int IntMatrix::max_abs() const {
    Int m = 0;
    for (auto &x : a)
        if (abs(x) > m)
            m = abs(x);
    return m;
}

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec> &rs, size_t c) {
    IntMatrix m(rs.size(), c);
    for (size_t i = 0; i < rs.size(); ++i)
        m.set_row(i, rs[i]);
    return m;
}

RatMatrix::RatMatrix(IntMatrix n, Int d) : num(std::move(n)), den(std::move(d)) {
    canonicalize();
}

void RatMatrix::canonicalize() {
    if (den == 0)
        throw Error("RatMatrix: zero denominator");
    if (den < 0) {
        den = -den;
        for (auto &x : num.a)
            x = -x;
    }
    Int g = gcd(content(num), den);
    if (g > 1) {
        for (auto &x : num.a)
            x /= g;
        den /= g;
    }
}

IntMatrix operator*(const IntMatrix &x, const IntMatrix &y) {
    if (x.cols != y.rows)
        throw Error("matrix product: shape mismatch");
    IntMatrix r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            const Int &xik = x(i, k);
            if (xik == 0)
                continue;
            for (size_t j = 0; j < y.cols; ++j)
                r(i, j) += xik * y(k, j);
        }
    return r;
}

IntVec operator*(const IntVec &v, const IntMatrix &m) {
    if (v.size() != m.rows)
        throw Error("vector-matrix product: shape mismatch");
    IntVec r(m.cols);
    for (size_t k = 0; k < m.rows; ++k) {
        if (v[k] == 0)
            continue;
        for (size_t j = 0; j < m.cols; ++j)
            r[j] += v[k] * m(k, j);
    }
    return r;
}

IntMatrix vstack(const IntMatrix &top, const IntMatrix &bottom) {
    if (top.rows == 0)
        return bottom;
    if (bottom.rows == 0)
        return top;
    if (top.cols != bottom.cols)
        throw Error("vstack: column mismatch");
    IntMatrix r(top.rows + bottom.rows, top.cols);
    std::copy(top.a.begin(), top.a.end(), r.a.begin());
    std::copy(bottom.a.begin(), bottom.a.end(), r.a.begin() + top.a.size());
    return r;
}

Int content(const IntVec &v) {
    Int g = 0;
    for (auto &x : v) {
        g = gcd(g, x);
        if (g == 1)
            break;
    }
    return g;
}

Int content(const IntMatrix &m) { return content(m.a); }

std::string to_string(const IntMatrix &m) {
    std::ostringstream os;
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j)
            os << (j ? " " : "") << m(i, j);
        os << "\n";
    }
    return os.str();
}

Int mod_pos(const Int &x, const Int &m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int mod_sym(const Int &x, const Int &m) {
    Int r = mod_pos(x, m);
    if (2 * r > m)
        r -= m;
    return r;
}

} // namespace okmod
