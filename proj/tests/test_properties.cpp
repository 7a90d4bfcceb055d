#include <doctest.h>

#include "property_suite.hpp"

using curvelab::Rational;

TEST_CASE("randomized cross-module checks")
{
    for (unsigned seed : {1u, 2u, 3u}) {
        const oracle::PropertyReport r = oracle::run_property_suite(150, seed);
        INFO(oracle::describe(r));
        CHECK(r.ok());
        CHECK(r.curves == 150);
        CHECK(r.branch_pairs > 0);
    }
}

TEST_CASE("the oracles catch a broken table")
{
    oracle::ContactTable t;
    t.sheets = {{0, 0}, {1, 0}, {2, 0}};
    t.q = {{std::nullopt, Rational(2), Rational(5)},
           {Rational(2), std::nullopt, Rational(3)},
           {Rational(5), Rational(3), std::nullopt}};
    CHECK(oracle::ultrametric_violations(t) == 1);
}
