#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatconn/errors.hpp"
#include "flatconn/io.hpp"
#include "testutil.hpp"

using namespace flatconn;
using testutil::series_of;

TEST_CASE("series literal parsing") {
    auto j = Json::parse(R"({
      "nvars": 2,
      "prec": 3,
      "terms": [
        {"exp": [0, 0], "coef": "1"},
        {"exp": [1, 1], "coef": "-2/3"},
        {"exp": [0, 3], "coef": "5"}
      ]
    })");
    auto s = series_from_json(j);
    CHECK(s.nvars() == 2);
    CHECK(s.prec() == 3);
    CHECK(s.coefficient({0, 0}) == 1);
    CHECK(s.coefficient({1, 1}) == rational(-2, 3));
    CHECK(s.coefficient({0, 3}) == 5);
    CHECK(s.terms().size() == 3);
}

TEST_CASE("series literal rejection paths") {
    auto base = Json::parse(
        R"({"nvars": 1, "prec": 2, "terms": [{"exp": [1], "coef": "1"}]})");

    auto mutate = [&](auto&& f) {
        Json j = base;
        f(j);
        return j;
    };

    // zero coefficient
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j["terms"][0]["coef"] = "0";
                    })),
                    ParseError);
    // duplicate exponent
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j["terms"].push_back(j["terms"][0]);
                    })),
                    ParseError);
    // degree beyond prec
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j["terms"][0]["exp"] = Json::array({3});
                    })),
                    ParseError);
    // exponent length mismatch
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j["terms"][0]["exp"] = Json::array({1, 0});
                    })),
                    ParseError);
    // negative exponent
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j["terms"][0]["exp"] = Json::array({-1});
                    })),
                    ParseError);
    // malformed and non-string coefficients
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j["terms"][0]["coef"] = "1/0";
                    })),
                    ParseError);
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j["terms"][0]["coef"] = 0.5;
                    })),
                    ParseError);
    // missing and unknown keys
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j.erase("prec");
                    })),
                    ParseError);
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j["extra"] = 1;
                    })),
                    ParseError);
    // header fields out of range
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j["nvars"] = 0;
                    })),
                    ParseError);
    CHECK_THROWS_AS(series_from_json(mutate([](Json& j) {
                        j["prec"] = -1;
                    })),
                    ParseError);
    CHECK_THROWS_AS(series_from_json(Json::array()), ParseError);
}

TEST_CASE("series round trip") {
    testutil::Rng rng(70u);
    for (int rep = 0; rep < 25; ++rep) {
        int nvars = 1 + static_cast<int>(rng() % 3);
        int prec = static_cast<int>(rng() % 6);
        auto s = testutil::random_series(rng, nvars, prec, 6);
        CHECK(series_from_json(series_to_json(s)) == s);
    }
    // serialization is deterministic
    auto s = testutil::random_series(rng, 2, 5, 6);
    CHECK(dump_json(series_to_json(s)) == dump_json(series_to_json(s)));
}

TEST_CASE("operator literal round trip") {
    testutil::Rng rng(71u);
    for (int rep = 0; rep < 15; ++rep) {
        std::map<MultiIndex, TruncatedSeries> terms;
        for (int k = 0; k < 3; ++k) {
            terms.insert_or_assign(testutil::random_exponent(rng, 2, 2),
                                   testutil::random_series(rng, 2, 4, 3));
        }
        auto op = DiffOperator::from_terms(2, std::move(terms));
        CHECK(operator_from_json(operator_to_json(op)) == op);
    }

    auto j = Json::parse(R"({
      "nvars": 1,
      "terms": [
        {"dexp": [1],
         "coef": {"nvars": 1, "prec": 2,
                  "terms": [{"exp": [0], "coef": "1"}]}}
      ]
    })");
    auto d = operator_from_json(j);
    CHECK(d == DiffOperator::partial(1, 0, 2));

    // duplicate derivative exponents are rejected
    j["terms"].push_back(j["terms"][0]);
    CHECK_THROWS_AS(operator_from_json(j), ParseError);
    // mismatched coefficient variable count
    auto k = Json::parse(R"({
      "nvars": 2,
      "terms": [
        {"dexp": [1, 0],
         "coef": {"nvars": 1, "prec": 2,
                  "terms": [{"exp": [0], "coef": "1"}]}}
      ]
    })");
    CHECK_THROWS_AS(operator_from_json(k), ParseError);
}

TEST_CASE("connection literal round trip") {
    testutil::Rng rng(72u);
    for (int rep = 0; rep < 10; ++rep) {
        int nvars = 1 + static_cast<int>(rng() % 2);
        int rank = 1 + static_cast<int>(rng() % 3);
        int prec = 1 + static_cast<int>(rng() % 5);
        auto gc = testutil::random_flat_connection(rng, nvars, rank,
                                                   std::max(prec, 1));
        auto j = connection_to_json(gc.connection);
        auto back = connection_from_json(j);
        CHECK(back.nvars() == gc.connection.nvars());
        CHECK(back.rank() == gc.connection.rank());
        for (int v = 0; v < back.nvars(); ++v) {
            CHECK(back.matrix(v) == gc.connection.matrix(v));
        }
    }

    auto j = Json::parse(R"({
      "nvars": 1, "rank": 1, "prec": 2,
      "matrices": [[[{"nvars": 1, "prec": 2, "terms": []}]]]
    })");
    auto c = connection_from_json(j);
    CHECK(c.rank() == 1);

    // matrix count must equal nvars
    j["matrices"].push_back(j["matrices"][0]);
    CHECK_THROWS_AS(connection_from_json(j), ParseError);
    // entry precision must match the header
    auto k = Json::parse(R"({
      "nvars": 1, "rank": 1, "prec": 2,
      "matrices": [[[{"nvars": 1, "prec": 3, "terms": []}]]]
    })");
    CHECK_THROWS_AS(connection_from_json(k), ParseError);
}

TEST_CASE("element literal round trip") {
    testutil::Rng rng(73u);
    for (int rep = 0; rep < 15; ++rep) {
        int nvars = 1 + static_cast<int>(rng() % 2);
        int rank = 1 + static_cast<int>(rng() % 3);
        int prec = static_cast<int>(rng() % 5);
        auto v = testutil::random_element(rng, rank, nvars, prec);
        CHECK(element_from_json(element_to_json(v)) == v);
    }
    auto j = Json::parse(R"({
      "nvars": 1, "rank": 2, "prec": 1,
      "entries": [{"nvars": 1, "prec": 1, "terms": []}]
    })");
    CHECK_THROWS_AS(element_from_json(j), ParseError);
}

TEST_CASE("ode problems use the univariate connection layout") {
    auto p = bjork_counterexample(5);
    auto j = ode_to_json(p);
    CHECK(j["nvars"] == 1);
    auto back = ode_from_json(j);
    CHECK(back.b == p.b);

    // a two-variable connection is not an ode problem
    testutil::Rng rng(74u);
    auto gc = testutil::random_flat_connection(rng, 2, 2, 3);
    CHECK_THROWS_AS(ode_from_json(connection_to_json(gc.connection)),
                    ParseError);
}

TEST_CASE("tower literal round trip") {
    testutil::Rng rng(75u);
    std::vector<TruncatedSeries> top;
    for (int c = 0; c < 2; ++c) {
        top.push_back(testutil::random_series(rng, 2, 6, 6));
    }
    auto t = tower_of_projections(top, {3, 5, 6});
    auto j = tower_to_json(t);
    auto back = tower_from_json(j);
    CHECK(back.levels == t.levels);
    CHECK(back.stages == t.stages);

    // incoherent levels are rejected at parse time
    j["levels"][0] = 5;
    CHECK_THROWS_AS(tower_from_json(j), ParseError);
}

TEST_CASE("file loading") {
    CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"), ParseError);
}
