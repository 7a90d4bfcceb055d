#include <doctest.h>

#include <random>

#include "curvelab/projection.hpp"
#include "oracles.hpp"

using namespace curvelab;

namespace {

const char* const kS1 = "param (w^2, w^3, w^5)";
const char* const kS2 = "param (w, w^2, w^2)\nparam (w, w^2, -w^2)";

Direction dir(std::initializer_list<GaussianRational> b) { return {GaussianRational(), std::vector<GaussianRational>(b)}; }

CanonicalCode topology_along(const SpaceCurve& c, const Direction& d)
{
    const Projection p = project(c, d);
    REQUIRE(p.curve.has_value());
    return canonical_code(carrousel_tree(*p.curve));
}

std::vector<Direction> small_directions()
{
    std::vector<Direction> out;
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            if (a != 0 || b != 0)
                out.push_back(dir({a, b}));
    return out;
}

SpaceBranch random_space_branch(std::mt19937& rng, std::int64_t n)
{
    std::vector<std::vector<Term>> coords(2);
    std::uniform_int_distribution<std::int64_t> ed(n, 4 * n + 3);
    for (auto& coord : coords)
        for (int t = 0; t < 3; ++t)
            coord.push_back({ed(rng), oracle::random_coeff(rng)});
    coords[0].push_back({n + 1, 1});
    return SpaceBranch::from_param(n, coords);
}

}  // namespace

TEST_CASE("space curve parsing and essential exponents")
{
    const SpaceCurve s1 = parse_space_curve(kS1);
    REQUIRE(s1.size() == 1);
    CHECK(s1.dimension() == 3);
    CHECK(s1.branches()[0].n() == 2);
    CHECK(essential_exponents(s1.branches()[0]) == std::vector<std::int64_t>{3});
    CHECK(s1.branches()[0].coefficient(1, 2) == GaussianRational(1));
    CHECK(s1.branches()[0].coefficient(1, 3) == GaussianRational());
    CHECK(s1.branches()[0].coefficient(3, 5) == GaussianRational(1));
    CHECK_THROWS_AS(parse_space_curve("param (w, w^2, w^2)\nparam (w, w^2, w^2)"), InputError);
}

TEST_CASE("genericity verdicts")
{
    const SpaceCurve s1 = parse_space_curve(kS1);
    CHECK(is_generic(s1, dir({1, 0})).generic());
    const GenericityVerdict v = is_generic(s1, dir({0, 1}));
    CHECK(v.kind == GenericityVerdict::Kind::FailsBranch);
    CHECK(v.branch == 0);
    CHECK(v.exponent == 3);

    const SpaceCurve s2 = parse_space_curve(kS2);
    const GenericityVerdict p = is_generic(s2, dir({1, 0}));
    CHECK(p.kind == GenericityVerdict::Kind::FailsPair);
    CHECK(p.residue == 0);
    CHECK(p.exponent == 2);
    CHECK(is_generic(s2, dir({1, 1})).generic());
    CHECK(is_generic(s2, dir({0, 1})).generic());
}

TEST_CASE("find_generic_direction")
{
    const Direction d1 = find_generic_direction(parse_space_curve(kS1));
    CHECK(d1.b == std::vector<GaussianRational>{1, 0});
    const Direction d2 = find_generic_direction(parse_space_curve(kS2));
    CHECK(d2.b == std::vector<GaussianRational>{0, 1});
    const Direction de = find_generic_direction(embed(parse_curve("y = x^(3/2) + x^(13/6)\ny = x^(7/3)"), 3));
    CHECK(de.b == std::vector<GaussianRational>{1, 0});
}

TEST_CASE("project examples")
{
    const SpaceCurve s1 = parse_space_curve(kS1);
    const Projection p = project(s1, dir({1, 0}));
    REQUIRE(p.curve);
    CHECK(p.curve->branch(0) == parse_curve("y = x^(3/2)").branch(0));
    CHECK(p.warnings.empty());

    const Projection q = project(s1, dir({0, 1}));
    REQUIRE(q.curve);
    CHECK(q.curve->branch(0) == parse_curve("y = x^(5/2)").branch(0));
    CHECK_FALSE(q.verdict.generic());
    CHECK_FALSE(q.warnings.empty());

    const Projection r = project(parse_space_curve(kS2), dir({1, 1}));
    REQUIRE(r.curve);
    CHECK(*r.curve == parse_curve("y = 2*x^2\ny = 0"));

    const Projection collapse = project(parse_space_curve("param (w^2, w^3, w^3)"), dir({1, -1}));
    CHECK_FALSE(collapse.verdict.generic());
    CHECK_FALSE(collapse.warnings.empty());
}

TEST_CASE("generic projection topology")
{
    CHECK(generic_projection_topology(parse_space_curve(kS1)) == canonical_code(carrousel_tree(parse_curve("y = x^(3/2)"))));
    CHECK(generic_projection_topology(parse_space_curve(kS2)) == "(1:(2:L,L))");
    const Curve e = parse_curve("y = x^(3/2) + x^(13/6)\ny = x^(7/3)");
    CHECK(generic_projection_topology(embed(e, 3)) == canonical_code(carrousel_tree(e)));
}

TEST_CASE("verdicts are invariant under scaling the direction")
{
    const std::vector<GaussianRational> scales = {2, -1, GaussianRational::i(), GaussianRational(1, 1),
                                                  GaussianRational(Rational(-1, 3), Rational(2))};
    for (const char* text : {kS1, kS2}) {
        const SpaceCurve c = parse_space_curve(text);
        for (const Direction& d : small_directions()) {
            const GenericityVerdict v = is_generic(c, d);
            for (const GaussianRational& s : scales) {
                Direction scaled = d;
                for (GaussianRational& x : scaled.b)
                    x *= s;
                CHECK(is_generic(c, scaled) == v);
            }
        }
    }
}

TEST_CASE("generic directions of max-norm <= 2 agree on the topology")
{
    for (const char* text : {kS1, kS2}) {
        const SpaceCurve c = parse_space_curve(text);
        const CanonicalCode ref = generic_projection_topology(c);
        int generic = 0;
        for (const Direction& d : small_directions())
            if (is_generic(c, d).generic()) {
                ++generic;
                CHECK(topology_along(c, d) == ref);
            }
        CHECK(generic > 0);
    }
}

TEST_CASE("generic projections keep the essential exponents")
{
    std::mt19937 rng(61);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const std::int64_t n = std::uniform_int_distribution<std::int64_t>(2, 6)(rng);
        const SpaceBranch b = random_space_branch(rng, n);
        const SpaceCurve c({b});
        const Direction d = dir({oracle::random_coeff(rng), oracle::random_coeff(rng)});
        if (!is_generic(c, d).generic())
            continue;
        const Projection p = project(c, d);
        REQUIRE(p.curve);
        CHECK(essential_exponents(p.curve->branch(0)) == essential_exponents(b));
        ++checked;
    }
    CHECK(checked > 100);
}
