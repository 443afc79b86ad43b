#include "oracles.hpp"

#include "okmod/determinant.hpp"
#include "okmod/exact_linalg.hpp"
#include "okmod/lattice.hpp"
#include "okmod/pseudo_hnf.hpp"

#include <doctest.h>

#include <algorithm>
#include <iostream>

using namespace okmod;

namespace {

const char *const kFields[] = {"Q", "gauss", "sqrt-5", "cubic", "sqrt5"};

FractionalIdeal modulus(const NumberField &K, const PseudoMatrix &P) {
    return P.rows() == P.cols() ? determinantal_ideal(K, P) : determinantal_ideal_multiple(K, P);
}

bool unit_triangular(const NumberField &K, const PseudoMatrix &H) {
    for (size_t i = 0; i < H.rows(); ++i)
        for (size_t j = i; j < H.cols(); ++j)
            if (j == i ? !(H.A[i][j] == K.one()) : !H.A[i][j].is_zero())
                return false;
    return H.rows() == H.cols();
}

} // namespace

TEST_CASE("integer example over Q") {
    auto Q = oracle::field("Q");
    auto z = [&](long k) { return Q->from_int(k); };
    PseudoMatrix P{{{z(2), z(0)}, {z(0), z(2)}, {z(1), z(1)}},
                   {unit_ideal(*Q), unit_ideal(*Q), unit_ideal(*Q)}};
    FractionalIdeal dd = determinantal_ideal_multiple(*Q, P);
    PseudoMatrix H = canonicalize(*Q, pseudo_hnf(*Q, P, dd));
    REQUIRE(H.rows() == 2);
    CHECK(H.ideals[0] == principal(*Q, z(2)));
    CHECK(H.ideals[1] == unit_ideal(*Q));
    CHECK(H.A[1][0] == z(1));
    CHECK(to_absolute(*Q, H) == IntMatrix{{2, 0}, {1, 1}});
}

TEST_CASE("gaussian example") {
    auto K = oracle::field("gauss");
    auto e = [](long a, long b) { return FieldElement(IntVec{a, b}); };
    PseudoMatrix P{{{e(1, 1), e(2, 0)}, {e(0, 0), e(3, 0)}}, {unit_ideal(*K), unit_ideal(*K)}};
    PseudoMatrix H = pseudo_hnf(*K, P, determinantal_ideal(*K, P));
    CHECK(unit_triangular(*K, H));
    CHECK(oracle::same_module(*K, P, H));
    CHECK(ideal_product(*K, H.ideals) == principal(*K, e(3, 3)));
    IntMatrix abs_in = to_absolute(*K, P);
    CHECK(abs_in == IntMatrix{{1, 1, 2, 0}, {-1, 1, 0, 2}, {0, 0, 3, 0}, {0, 0, 0, 3}});
}

TEST_CASE("pseudo-HNF master oracle") {
    const std::uint64_t seed = 801;
    std::cout << "pseudo-HNF seed " << seed << "\n";
    oracle::Gen g(seed);
    for (auto *name : kFields) {
        auto K = oracle::field(name);
        Rat cap = K->lattice->bound_factor * Rat(abs(K->disc_K));
        for (int t = 0; t < 8; ++t) {
            size_t m = g.uniform(1, 3), n = m + g.uniform(0, 3);
            PseudoMatrix P = g.integral_pseudo(*K, n, m, 100, t % 2 ? 3 : 1);
            bool bounded = true;
            PseudoMatrix H = pseudo_hnf(*K, P, modulus(*K, P), [&](size_t, const FractionalIdeal &b) {
                bounded = bounded && b.is_integral() && norm(b) * norm(b) <= cap;
            });
            CHECK(bounded);
            CHECK(unit_triangular(*K, H));
            CHECK(oracle::same_module(*K, P, H));
            CHECK(ideal_product(*K, H.ideals) == oracle::determinantal_ideal(*K, P));
            for (auto &b : H.ideals)
                CHECK(b.is_integral());
            PseudoMatrix C = canonicalize(*K, H);
            CHECK(oracle::same_module(*K, P, C));
            CHECK(C.ideals == H.ideals);
        }
    }
}

TEST_CASE("canonical form does not depend on the generators") {
    const std::uint64_t seed = 802;
    std::cout << "canonical seed " << seed << "\n";
    oracle::Gen g(seed);
    for (auto *name : kFields) {
        auto K = oracle::field(name);
        for (int t = 0; t < 5; ++t) {
            size_t m = g.uniform(1, 3), n = m + g.uniform(0, 2);
            PseudoMatrix P = g.integral_pseudo(*K, n, m, 50, 1);
            // same module: shuffled rows, a redundant row, a rescaled row
            PseudoMatrix Q = P;
            std::vector<size_t> perm(n);
            for (size_t i = 0; i < n; ++i)
                perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), g.rng);
            for (size_t i = 0; i < n; ++i) {
                Q.A[i] = P.A[perm[i]];
                Q.ideals[i] = P.ideals[perm[i]];
            }
            FieldElement s = g.nonzero_element(*K, 5, 3);
            for (auto &x : Q.A[0])
                x = mul(*K, s, x);
            Q.ideals[0] = div(*K, Q.ideals[0], principal(*K, s));
            ElemRow extra(m);
            for (size_t j = 0; j < m; ++j)
                extra[j] = add(P.A[0][j], P.A[n - 1][j]);
            Q.A.push_back(extra);
            Q.ideals.push_back(mul(*K, P.ideals[0], P.ideals[n - 1]));
            REQUIRE(oracle::same_module(*K, P, Q));
            PseudoMatrix C1 = canonicalize(*K, pseudo_hnf(*K, P, modulus(*K, P)));
            PseudoMatrix C2 = canonicalize(*K, pseudo_hnf(*K, Q, modulus(*K, Q)));
            CHECK(C1.ideals == C2.ideals);
            CHECK(C1.A == C2.A);
        }
    }
}

TEST_CASE("degree one reproduces the integer HNF") {
    const std::uint64_t seed = 803;
    std::cout << "integer HNF seed " << seed << "\n";
    oracle::Gen g(seed);
    auto Q = oracle::field("Q");
    for (int t = 0; t < 20; ++t) {
        size_t m = g.uniform(1, 5), n = m + g.uniform(0, 3);
        IntMatrix A(n, m);
        PseudoMatrix P;
        for (size_t i = 0; i < n; ++i) {
            ElemRow r;
            for (size_t j = 0; j < m; ++j) {
                A(i, j) = g.uniform(-50, 50);
                r.push_back(Q->from_int(A(i, j)));
            }
            P.A.push_back(r);
            P.ideals.push_back(unit_ideal(*Q));
        }
        if (rank(A) < m)
            continue;
        PseudoMatrix C = canonicalize(*Q, pseudo_hnf(*Q, P, modulus(*Q, P)));
        CHECK(to_absolute(*Q, C) == oracle::naive_hnf(A));
    }
}

TEST_CASE("pseudo-HNF preconditions") {
    auto K = oracle::field("gauss");
    auto e = [](long a, long b) { return FieldElement(IntVec{a, b}); };
    PseudoMatrix P{{{e(1, 0), e(2, 0)}, {e(2, 0), e(4, 0)}}, {unit_ideal(*K), unit_ideal(*K)}};
    CHECK_THROWS_AS(pseudo_hnf(*K, P, unit_ideal(*K)), Error);
    PseudoMatrix R{{{e(1, 0), e(2, 0)}}, {unit_ideal(*K)}};
    CHECK_THROWS_AS(pseudo_hnf(*K, R, unit_ideal(*K)), Error);
    PseudoMatrix F{{{FieldElement(IntVec{1, 0}, 2)}}, {unit_ideal(*K)}};
    CHECK_THROWS_AS(pseudo_hnf(*K, F, unit_ideal(*K)), Error);
    HnfBounds b = hnf_bounds(*K, principal(*K, e(3, 3)));
    CHECK(b.B_id >= 16);
    CHECK(b.B_e > 0);
    EuclidStep s = euclidean_step(*K, unit_ideal(*K), unit_ideal(*K), e(2, 0), e(3, 0));
    CHECK(s.g == unit_ideal(*K));
}
