#pragma once
#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace okmod {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// n / d in lowest terms
inline Rat make_rat(const Int &n, const Int &d) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

// dense row-major integer matrix; zero-sized shapes are allowed as results
struct IntMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init);

    Int &operator()(size_t i, size_t j) { return a[i * cols + j]; }
    const Int &operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    IntVec row(size_t i) const;
    void set_row(size_t i, const IntVec &v);
    IntMatrix transpose() const;
    bool is_zero() const;
    Int max_abs() const;

    static IntMatrix identity(size_t n);
    static IntMatrix from_rows(const std::vector<IntVec> &rows, size_t cols);

    bool operator==(const IntMatrix &o) const = default;
};

// numerator / denominator with gcd(den, content(num)) == 1
struct RatMatrix {
    IntMatrix num;
    Int den = 1;

    RatMatrix() = default;
    RatMatrix(IntMatrix n, Int d);
    Rat at(size_t i, size_t j) const { return make_rat(num(i, j), den); }
    void canonicalize();
    bool operator==(const RatMatrix &o) const = default;
};

IntMatrix operator*(const IntMatrix &x, const IntMatrix &y);
IntVec operator*(const IntVec &v, const IntMatrix &m); // row vector times matrix
IntMatrix vstack(const IntMatrix &top, const IntMatrix &bottom);
Int content(const IntVec &v);
Int content(const IntMatrix &m);
std::string to_string(const IntMatrix &m);

// symmetric residue in (-m/2, m/2]
Int mod_sym(const Int &x, const Int &m);
// residue in [0, m)
Int mod_pos(const Int &x, const Int &m);

} // namespace okmod
