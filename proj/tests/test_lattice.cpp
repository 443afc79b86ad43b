#include "oracles.hpp"

#include "okmod/exact_linalg.hpp"
#include "okmod/lattice.hpp"

#include <doctest.h>

#include <iostream>

using namespace okmod;

namespace {

const char *const kFields[] = {"Q", "gauss", "sqrt-5", "cubic", "sqrt5"};

void check_encloses(const NumberField &K, const IntVec &v, const Rat &exact) {
    Rat lo = T2_lower(K, v), hi = T2_upper(K, v);
    CHECK(lo <= exact);
    CHECK(exact <= hi);
    CHECK(hi - lo <= exact / Rat(1 << 20));
}

} // namespace

TEST_CASE("lattice context constants") {
    for (auto *name : kFields) {
        auto K = oracle::field(name);
        const LatticeContext &L = *K->lattice;
        CHECK(L.e == default_precision(K->d, K->disc_K));
        CHECK(L.eps < Rat(1, 2));
        CHECK(L.ell * L.ell * (L.delta - L.eta * L.eta) >= 1);
        CHECK(L.C_quality >= 1);
        CHECK(L.bound_factor >= 1);
        // G_e = R_e R_e^t
        CHECK(L.Ge == L.Re * L.Re.transpose());
        // ell_abs^(d(d-1)) >= bound_factor, vacuous in degree 1
        if (K->d == 1)
            continue;
        Rat p = 1;
        for (size_t i = 0; i < K->d * (K->d - 1); ++i)
            p *= L.ell_abs;
        CHECK(p >= L.bound_factor);
    }
}

TEST_CASE("T2 enclosures") {
    auto Q = oracle::field("Q");
    check_encloses(*Q, IntVec{7}, 49);
    auto G = oracle::field("gauss");
    check_encloses(*G, IntVec{3, -4}, 50);
    auto S = oracle::field("sqrt5");
    check_encloses(*S, IntVec{0, 1}, 3); // ((1 + sqrt 5)/2)^2 + ((1 - sqrt 5)/2)^2
    auto C = oracle::field("cubic");
    check_encloses(*C, IntVec{1, 0, 0}, 3);
    check_encloses(*C, IntVec{2, 0, 0}, 12);
}

TEST_CASE("integral LLL on an explicit Gram matrix") {
    IntMatrix M{{1, 0}, {1000, 1}};
    IntMatrix U;
    IntMatrix R = lll_rows(M, IntMatrix::identity(2), &U);
    CHECK(U * M == R);
    CHECK(abs(det(U)) == 1);
    CHECK(R.max_abs() == 1);
}

TEST_CASE("reduced ideal bases meet the quality guarantees") {
    const std::uint64_t seed = 401;
    std::cout << "lll quality seed " << seed << "\n";
    oracle::Gen g(seed);
    for (auto *name : kFields) {
        auto K = oracle::field(name);
        for (int t = 0; t < 20; ++t) {
            FractionalIdeal a = g.integral_ideal(*K, 200);
            IntMatrix B = lll_reduce(*K, a.num);
            CHECK(hnf(B) == a.num);
            Int N = norm(a).get_num();
            QualityReport q = quality_check(*K, B, N);
            CHECK(q.first_ok);
            CHECK(q.product_ok);
            IntVec s = shortest_basis_element(*K, a.num);
            CHECK(s == B.row(0));
        }
    }
}
