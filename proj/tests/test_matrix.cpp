#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatconn/errors.hpp"
#include "flatconn/matrix.hpp"
#include "testutil.hpp"

using namespace flatconn;
using testutil::series_of;

TEST_CASE("shape checks and accessors") {
    SeriesMatrix m(2, 3, 2, 4);
    CHECK(m.is_zero());
    CHECK(m.prec() == 4);
    CHECK_THROWS_AS(m.at(2, 0), DimensionError);
    CHECK_THROWS_AS(m.set(0, 3, TruncatedSeries(2, 4)), DimensionError);
    CHECK_THROWS_AS(m.set(0, 0, TruncatedSeries(1, 4)), DimensionError);
    CHECK_THROWS_AS(SeriesMatrix(0, 1, 1, 1), DimensionError);

    SeriesMatrix a(1, 2, 1, 3);
    SeriesMatrix b(2, 1, 1, 3);
    CHECK_THROWS_AS(a + b, DimensionError);
    CHECK_THROWS_AS(b * b, DimensionError);
}

TEST_CASE("ring identities") {
    testutil::Rng rng(31u);
    for (int rep = 0; rep < 10; ++rep) {
        auto a = testutil::random_matrix(rng, 2, 2, 2, 4);
        auto b = testutil::random_matrix(rng, 2, 2, 2, 4);
        auto c = testutil::random_matrix(rng, 2, 2, 2, 4);
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        auto ident = SeriesMatrix::identity(2, 2, 4);
        CHECK(ident * a == a);
        CHECK(a * ident == a);
    }
}

TEST_CASE("entrywise derivative and Leibniz rule") {
    testutil::Rng rng(32u);
    for (int rep = 0; rep < 10; ++rep) {
        auto a = testutil::random_matrix(rng, 2, 2, 2, 4);
        auto b = testutil::random_matrix(rng, 2, 2, 2, 4);
        CHECK(partial_derivative(a * b, 1) ==
              partial_derivative(a, 1) * b + a * partial_derivative(b, 1));
    }
    CHECK_THROWS_AS(partial_derivative(SeriesMatrix(1, 1, 1, 0), 0),
                    PrecisionError);
}

TEST_CASE("exponential of a nilpotent matrix is polynomial") {
    // exp([[0, 3t],[0, 0]]) = I + [[0, 3t],[0, 0]]
    SeriesMatrix n(2, 2, 1, 5);
    n.set(0, 1, series_of(1, 5, {{{1}, "3"}}));
    auto e = exp(n);
    CHECK(e.at(0, 0) == series_of(1, 5, {{{0}, "1"}}));
    CHECK(e.at(0, 1) == series_of(1, 5, {{{1}, "3"}}));
    CHECK(e.at(1, 0).is_zero());
    CHECK(e.at(1, 1) == series_of(1, 5, {{{0}, "1"}}));

    SeriesMatrix bad(1, 1, 1, 2);
    bad.set(0, 0, series_of(1, 2, {{{0}, "1"}}));
    CHECK_THROWS_AS(exp(bad), DomainError);
}

TEST_CASE("exp(m) exp(-m) is the identity") {
    testutil::Rng rng(33u);
    for (int rep = 0; rep < 8; ++rep) {
        auto m = testutil::random_matrix(rng, 2, 2, 2, 4, 3, 1);
        CHECK(exp(m) * exp(-m) == SeriesMatrix::identity(2, 2, 4));
    }
}

TEST_CASE("inverse of unipotent matrices") {
    testutil::Rng rng(34u);
    for (int rep = 0; rep < 8; ++rep) {
        auto u = testutil::random_unit_matrix(rng, 3, 2, 4);
        auto v = invert(u);
        auto ident = SeriesMatrix::identity(3, 2, 4);
        CHECK(u * v == ident);
        CHECK(v * u == ident);
    }
    auto not_unit = SeriesMatrix(2, 2, 1, 3);
    CHECK_THROWS_AS(invert(not_unit), DomainError);
}

TEST_CASE("coefficient extraction and embedding") {
    SeriesMatrix m(2, 2, 1, 3);
    m.set(0, 0, series_of(1, 3, {{{0}, "1"}, {{2}, "5"}}));
    m.set(1, 1, series_of(1, 3, {{{2}, "-1/2"}}));
    auto c2 = coefficient_matrix(m, {2});
    CHECK(c2.at(0, 0) == 5);
    CHECK(c2.at(1, 1) == rational(-1, 2));
    CHECK(c2.at(0, 1) == 0);

    auto back = from_rational(c2, 1, 3);
    CHECK(back.at(0, 0) == series_of(1, 3, {{{0}, "5"}}));
}

TEST_CASE("projection and shifts act entrywise") {
    testutil::Rng rng(35u);
    auto m = testutil::random_matrix(rng, 2, 3, 2, 4);
    auto p = project(m, 2);
    CHECK(p.prec() == 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(p.at(i, j) == project(m.at(i, j), 2));
        }
    }
    auto s = mul_by_var_power(m, 0, 2, 6);
    CHECK(s.prec() == 6);
}
