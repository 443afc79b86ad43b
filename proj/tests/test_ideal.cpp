#include "oracles.hpp"

#include "okmod/ideal.hpp"

#include <doctest.h>

#include <iostream>

using namespace okmod;

namespace {

const char *const kFields[] = {"Q", "gauss", "sqrt-5", "cubic", "sqrt5"};

bool divides(const Rat &a, const Rat &b) {
    Rat q = b / a;
    return q.get_den() == 1;
}

} // namespace

TEST_CASE("gaussian ideals") {
    auto K = oracle::field("gauss");
    FractionalIdeal p = principal(*K, FieldElement(IntVec{1, 1}));
    CHECK(p.num == IntMatrix{{2, 0}, {1, 1}});
    CHECK(min(p) == 2);
    CHECK(norm(p) == 2);
    FractionalIdeal pi = inv(*K, p);
    CHECK(pi.num == IntMatrix{{2, 0}, {1, 1}});
    CHECK(pi.den == 2);
    CHECK(mul(*K, p, p) == principal(*K, K->from_int(2)));
    CHECK(add(*K, p, principal(*K, K->from_int(3))) == unit_ideal(*K));
}

TEST_CASE("sqrt -5: a non-principal prime") {
    auto K = oracle::field("sqrt-5");
    // p = (2, 1 + sqrt -5), p^2 = (2)
    FractionalIdeal p = from_generators(*K, {K->from_int(2), FieldElement(IntVec{1, 1})});
    CHECK(norm(p) == 2);
    CHECK(mul(*K, p, p) == principal(*K, K->from_int(2)));
    CHECK(!contains(*K, p, K->one()));
    CHECK(contains(*K, p, FieldElement(IntVec{1, 1})));
}

TEST_CASE("ideal arithmetic agrees with naive span computations") {
    const std::uint64_t seed = 301;
    std::cout << "ideal arithmetic seed " << seed << "\n";
    oracle::Gen g(seed);
    for (auto *name : kFields) {
        auto K = oracle::field(name);
        for (int t = 0; t < 25; ++t) {
            FractionalIdeal a = g.ideal(*K, 20, 4), b = g.ideal(*K, 20, 4);
            CHECK(mul(*K, a, b) == oracle::product(*K, a, b));
            CHECK(add(*K, a, b) == oracle::sum(a, b));
            CHECK(norm(a) == oracle::norm(a));
            CHECK(mul(*K, a, inv(*K, a)) == unit_ideal(*K));
            CHECK(mul(*K, div(*K, a, b), b) == a);
            CHECK(norm(mul(*K, a, b)) == norm(a) * norm(b));
            FieldElement x = g.element(*K, 30, 3);
            CHECK(contains(*K, a, x) == oracle::contains(*K, a, x));
            FieldElement y = mul(*K, g.element(*K, 30), basis_element(a, g.uniform(0, (long)K->d - 1)));
            CHECK(contains(*K, a, y));
            CHECK(is_subset(*K, mul(*K, a, b), a) == is_subset(*K, b, unit_ideal(*K)));
            FieldElement z = g.nonzero_element(*K, 10, 3);
            CHECK(mul(*K, z, a) == mul(*K, principal(*K, z), a));
        }
    }
}

TEST_CASE("properties of the minimum") {
    const std::uint64_t seed = 302;
    std::cout << "minimum seed " << seed << "\n";
    oracle::Gen g(seed);
    for (auto *name : kFields) {
        auto K = oracle::field(name);
        for (int t = 0; t < 25; ++t) {
            FractionalIdeal a = g.integral_ideal(*K, 30), b = g.integral_ideal(*K, 30);
            Rat ma = min(a), mb = min(b);
            CHECK(divides(min(add(*K, a, b)), Rat(gcd(ma.get_num(), mb.get_num()))));
            CHECK(divides(min(mul(*K, a, b)), ma * mb));
            CHECK(Rat(inv(*K, a).den) == ma);
            long k = g.uniform(1, 12) * (g.uniform(0, 1) ? 1 : -1);
            CHECK(min(scale(a, Rat(k))) == Rat(std::labs(k)) * ma);
            CHECK(divides(ma, norm(a)));
            CHECK(contains(*K, a, K->from_rat(ma)));
        }
    }
}

TEST_CASE("idempotents and the euclidean step") {
    const std::uint64_t seed = 303;
    std::cout << "euclid seed " << seed << "\n";
    oracle::Gen g(seed);
    for (auto *name : kFields) {
        auto K = oracle::field(name);
        int done = 0;
        for (int t = 0; t < 200 && done < 15; ++t) {
            FractionalIdeal a = g.integral_ideal(*K, 15), b = g.integral_ideal(*K, 15);
            if (!(add(*K, a, b) == unit_ideal(*K)))
                continue;
            ++done;
            FieldElement u = idempotent(*K, a, b);
            CHECK(oracle::contains(*K, a, u));
            CHECK(oracle::contains(*K, b, sub(K->one(), u)));
        }
        CHECK(done > 0);
        for (int t = 0; t < 20; ++t) {
            FractionalIdeal a = g.ideal(*K, 15, 3), b = g.ideal(*K, 15, 3);
            FieldElement al = g.nonzero_element(*K, 10, 2), be = g.nonzero_element(*K, 10, 2);
            EuclidStep e = euclid(*K, a, b, al, be);
            CHECK(e.g == add(*K, mul(*K, al, a), mul(*K, be, b)));
            FractionalIdeal gi = inv(*K, e.g);
            CHECK((e.gamma.is_zero() || oracle::contains(*K, mul(*K, a, gi), e.gamma)));
            CHECK((e.delta.is_zero() || oracle::contains(*K, mul(*K, b, gi), e.delta)));
            CHECK(add(mul(*K, al, e.gamma), mul(*K, be, e.delta)) == K->one());
        }
    }
    auto K = oracle::field("gauss");
    CHECK_THROWS_AS(idempotent(*K, principal(*K, K->from_int(2)), principal(*K, K->from_int(4))),
                    Error);
}

TEST_CASE("size of an ideal") {
    auto K = oracle::field("gauss");
    FractionalIdeal a = scale(principal(*K, K->from_int(4)), Rat(1, 8));
    // min 1, den 2: d^2 log2(1) + d^2 log2(2)
    CHECK(size(*K, a) >= 4);
    CHECK(size(*K, a) <= Rat(4) + Rat(1, 1 << 20));
}
