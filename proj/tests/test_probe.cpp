#include <doctest.h>

#include <cmath>
#include <random>

#include "curvelab/probe.hpp"
#include "oracles.hpp"

using namespace curvelab;

namespace {

const char* const kE = "y = x^(3/2) + x^(13/6)\ny = x^(7/3)";

double max_error(const Curve& c, const QMapEstimate& est)
{
    const QMap q = q_map(c);
    double worst = 0;
    for (std::size_t j = 0; j < q.sheets.size(); ++j)
        for (std::size_t k = 0; k < q.sheets.size(); ++k)
            if (j != k)
                worst = std::max(worst, std::abs(est.at(j, k) - q.q.at(j, k).value().to_double()));
    return worst;
}

Curve rotated(const Curve& c, const GaussianRational& u)
{
    std::vector<Branch> out;
    for (const Branch& b : c.branches()) {
        std::vector<Term> terms;
        for (const Term& t : b.terms())
            terms.push_back({t.exponent, t.coeff * u});
        out.push_back(Branch::from_param(b.n(), terms));
    }
    return Curve(out);
}

}  // namespace

TEST_CASE("sample grid")
{
    const SampleGrid g = SampleGrid::geometric();
    REQUIRE(g.t.size() == 20);
    CHECK(g.t.front() == doctest::Approx(1e-2));
    CHECK(g.t.back() == doctest::Approx(1e-4));
    for (std::size_t i = 1; i < g.t.size(); ++i)
        CHECK(g.t[i] < g.t[i - 1]);
    CHECK_NOTHROW(g.validate());
    const SampleGrid increasing{{0.1, 0.2}};
    const SampleGrid negative{{0.1, -0.2}};
    CHECK_THROWS_AS(increasing.validate(), InputError);
    CHECK_THROWS_AS(negative.validate(), InputError);
}

TEST_CASE("sample_points examples")
{
    const auto line = sample_points(parse_curve("y = 2*x"), 0.5);
    REQUIRE(line.size() == 1);
    CHECK(std::abs(line[0] - std::complex<double>(1.0, 0)) < 1e-15);

    const auto cusp = sample_points(parse_curve("y = x^(3/2)"), 0.04);
    REQUIRE(cusp.size() == 2);
    CHECK(std::abs(cusp[0] - std::complex<double>(0.008, 0)) < 1e-15);
    CHECK(std::abs(cusp[1] - std::complex<double>(-0.008, 0)) < 1e-15);

    const auto e = sample_points(parse_curve(kE), 0.01);
    REQUIRE(e.size() == 9);
    for (std::size_t s = 6; s < 9; ++s)
        CHECK(std::abs(std::abs(e[s]) - 2.154e-5) < 1e-8);
}

TEST_CASE("estimated contact exponents")
{
    const SampleGrid g = SampleGrid::geometric();
    for (const char* text : {kE, "y = x\ny = 2*x", "y = 0\ny = x^2", "y = x^(3/2)\ny = x^(3/2) + x^2"}) {
        const Curve c = parse_curve(text);
        INFO(text);
        CHECK(max_error(c, estimate_qmap(c, g)) <= 0.05);
    }
    const QMapEstimate lines = estimate_qmap(parse_curve("y = x\ny = 2*x"), g);
    CHECK(lines.at(0, 1) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::isinf(lines.at(0, 0)));
}

TEST_CASE("underflow guard fits the surviving prefix")
{
    const SampleGrid g = SampleGrid::geometric();
    const QMapEstimate est = estimate_qmap(parse_curve("y = 0\ny = x^80"), g);
    const std::size_t used = est.used[1];
    CHECK(used >= 3);
    CHECK(used < g.t.size());
    CHECK(est.at(0, 1) == doctest::Approx(80.0).epsilon(0.01));
}

TEST_CASE("serial and parallel estimators agree")
{
    std::mt19937 rng(83);
    const SampleGrid g = SampleGrid::geometric();
    for (int i = 0; i < 20; ++i) {
        const Curve c = oracle::random_curve(rng, 3, 6, 24);
        const QMapEstimate a = estimate_qmap(c, g);
        const QMapEstimate b = estimate_qmap_serial(c, g);
        CHECK(a.slope == b.slope);
        CHECK(a.used == b.used);
        CHECK(a.residual == b.residual);
    }
}

TEST_CASE("estimates are invariant under unit-modulus rescaling")
{
    const SampleGrid g = SampleGrid::geometric();
    const Curve c = parse_curve(kE);
    const QMapEstimate a = estimate_qmap(c, g);
    for (const GaussianRational& u : {GaussianRational(Rational(3, 5), Rational(4, 5)), GaussianRational::i(),
                                      GaussianRational(Rational(-5, 13), Rational(12, 13))}) {
        const QMapEstimate b = estimate_qmap(rotated(c, u), g);
        for (std::size_t j = 0; j < a.size; ++j)
            for (std::size_t k = 0; k < a.size; ++k)
                if (j != k)
                    CHECK(std::abs(a.at(j, k) - b.at(j, k)) <= 1e-12);
    }
}

TEST_CASE("rational rounding")
{
    CHECK(best_rational(2.16667, 24) == Rational(13, 6));
    CHECK(best_rational(1.5, 24) == Rational(3, 2));
    CHECK(best_rational(3.14159265, 10) == Rational(22, 7));
    CHECK(best_rational(1.5121, 24) == Rational(35, 23));
    CHECK(convergent_rational(1.5121, 24) == Rational(3, 2));
    CHECK(convergent_rational(2.3334, 24) == Rational(7, 3));
    CHECK(convergent_rational(-0.5, 8) == Rational(-1, 2));
    CHECK(best_rational(7.0, 1) == Rational(7));
}

TEST_CASE("tree recovery from sampled points")
{
    const SampleGrid g = SampleGrid::geometric();
    const Curve e = parse_curve(kE);
    const RecoveredTree r = recover_tree_numeric(sample_grid(e, g), g);
    CHECK(canonical_code(r.tree) == canonical_code(carrousel_tree(e)));

    const RecoveredTree one = recover_tree_numeric(sample_grid(parse_curve("y = 3*x"), g), g);
    CHECK(canonical_code(one.tree) == "(1:L)");

    const RecoveredTree tangent = recover_tree_numeric(sample_grid(parse_curve("y = x\ny = x + x^2"), g), g);
    CHECK(canonical_code(tangent.tree) == "(1:(2:L,L))");

    std::vector<std::vector<std::complex<double>>> bad(g.t.size());
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        const double t = g.t[i];
        bad[i] = {0.0, std::pow(t, 1.5), std::pow(t, 1.45)};
    }
    CHECK_THROWS_AS(recover_tree_numeric(bad, g, 3), InvariantError);
}

TEST_CASE("distance ratio experiment")
{
    const SampleGrid g = SampleGrid::geometric();
    const Curve a = parse_curve("y = x^(3/2) + x^(13/6)");
    const Curve b = parse_curve("y = 2*x^(3/2) + x^(13/6)");
    const RatioStats s = bilipschitz_ratio_experiment(a, b, {0}, g);
    REQUIRE(s.pairs.size() == 15);
    for (const RatioPair& p : s.pairs) {
        CHECK(p.min <= p.fitted);
        CHECK(p.fitted <= p.max);
        CHECK(p.ratios.size() == g.t.size());
        if ((p.j - p.l) % 2 != 0) {
            CHECK(p.i0 == Rational(3, 2));
            CHECK(p.predicted == doctest::Approx(0.5));
            CHECK(std::abs(p.fitted - 0.5) <= 0.02);
        } else {
            CHECK(p.i0 == Rational(13, 6));
            CHECK(std::abs(p.fitted - 1.0) <= 0.02);
        }
    }

    const RatioStats same = bilipschitz_ratio_experiment(a, a, {0}, g);
    for (const RatioPair& p : same.pairs)
        for (double r : p.ratios)
            CHECK(r == doctest::Approx(1.0));

    CHECK_THROWS_AS(bilipschitz_ratio_experiment(a, parse_curve("y = x^(5/2)"), {0}, g), InputError);
    CHECK_THROWS_AS(bilipschitz_ratio_experiment(a, b, {}, g), InputError);
}

TEST_CASE("CSV exports")
{
    const SampleGrid g = SampleGrid::geometric(1e-2, 1e-3, 4);
    const Curve c = parse_curve("y = x^(3/2)");
    const auto points = sample_grid(c, g);
    const std::string d = distances_csv(sheets(c), points, g, estimate_from_points(points, g));
    CHECK(d.rfind("kind,t,sheet_j,sheet_k,value\n", 0) == 0);
    CHECK(std::count(d.begin(), d.end(), '\n') == 1 + 4 + 1);
    const std::string r = ratios_csv(bilipschitz_ratio_experiment(c, c, {0}, g), g);
    CHECK(r.rfind("t,branch1,branch2,j,l,ratio\n", 0) == 0);
    CHECK(std::count(r.begin(), r.end(), '\n') == 1 + 4);
}
