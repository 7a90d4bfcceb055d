#include <doctest.h>

#include <random>
#include <regex>

#include "curvelab/carrousel_geom.hpp"
#include "curvelab/carrousel_tree.hpp"
#include "oracles.hpp"

using namespace curvelab;

namespace {

const char* const kE = "y = x^(3/2) + x^(13/6)\ny = x^(7/3)";

std::size_t internal_nodes(const CarrouselNode& n, bool root)
{
    if (n.is_leaf())
        return 0;
    std::size_t k = root ? 0 : 1;
    for (const CarrouselNode& c : n.children)
        k += internal_nodes(c, false);
    return k;
}

// alpha < |a| - gamma < |a| + gamma < beta, compared on squares.
bool constants_ok(const Piece& p)
{
    if (!(p.alpha < p.beta) || p.gamma.sign() <= 0)
        return false;
    for (const TaggedScalar& a : p.coefficients) {
        if (a.is_zero()) {
            if (!(p.gamma < p.beta))
                return false;
            continue;
        }
        const Rational lo = p.alpha + p.gamma;
        const Rational hi = p.beta - p.gamma;
        if (!(lo * lo < a.norm()) || !(a.norm() < hi * hi) || hi.sign() <= 0)
            return false;
    }
    return true;
}

std::size_t count_matches(const std::string& s, const std::string& pattern)
{
    const std::regex re(pattern);
    return static_cast<std::size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST_CASE("decomposition of E")
{
    const PieceDecomposition d = decompose(parse_curve(kE));
    CHECK(d.count(PieceKind::B1) == 1);
    CHECK(d.count(PieceKind::B) == 4);
    CHECK(d.count(PieceKind::A) == 4);
    CHECK(d.count(PieceKind::D) == 9);
    CHECK(d.pieces.size() == 18);
    CHECK(d.pieces[0].kind == PieceKind::B1);
    CHECK(inventory(d) == "B(1) x1, B x4 (3/2 [2 holes], 13/6 [3 holes] x2, 7/3 [3 holes]), A x4, D x9");
    for (const Piece& p : d.pieces) {
        if (p.kind == PieceKind::B)
            CHECK(constants_ok(p));
        if (p.kind == PieceKind::D)
            CHECK(p.children.empty());
        if (p.parent)
            CHECK(std::find(d.pieces[*p.parent].children.begin(), d.pieces[*p.parent].children.end(),
                            &p - d.pieces.data()) != d.pieces[*p.parent].children.end());
    }
}

TEST_CASE("decomposition of a sheared cusp and a line")
{
    const PieceDecomposition cusp = decompose(parse_curve("y = x + x^(3/2)"));
    CHECK(cusp.params.shear == 0);
    CHECK(inventory(cusp) == "B(1) x1, B x1 (3/2 [2 holes]), A x1, D x2");

    const PieceDecomposition line = decompose(parse_curve("y = x"));
    CHECK(line.count(PieceKind::B1) == 1);
    CHECK(line.count(PieceKind::D) == 1);
    CHECK(line.pieces.size() == 2);
}

TEST_CASE("axis tangents are sheared away")
{
    const auto [sheared, params] = prepare(parse_curve("y = x^(3/2)"));
    CHECK(params.shear == 1);
    CHECK(sheared.branch(0).tangent_slope() == GaussianRational(1));
    CHECK_THROWS_AS(decompose(parse_curve("y = x^(3/2)"), DecompositionParams{}), InputError);
    const auto [two, p2] = prepare(parse_curve("y = -x\ny = x^2"));
    CHECK(p2.shear == 2);
}

TEST_CASE("alignment inserts matching inessential levels")
{
    const PiecePairing pp = align_decompositions(parse_curve("y = x^(3/2)"), parse_curve("y = x^(3/2) + x^2"));
    REQUIRE(pp.insertions.size() == 2);
    for (const Insertion& i : pp.insertions) {
        CHECK(i.side == 1);
        CHECK(i.rate == Rational(2));
    }
    CHECK(structure_code(pp.first) == structure_code(pp.second));
    CHECK(pp.pairs.size() == pp.first.pieces.size());
    CHECK(pp.pairs.size() == pp.second.pieces.size());
}

TEST_CASE("alignment of equivalent curves is a kind and rate preserving bijection")
{
    const PiecePairing pp =
        align_decompositions(parse_curve(kE), parse_curve("y = 3*x^(3/2) + 5*x^(13/6)\ny = 7*x^(7/3)"));
    CHECK(pp.insertions.empty());
    std::set<std::size_t> seen1, seen2;
    for (const auto& [a, b] : pp.pairs) {
        seen1.insert(a);
        seen2.insert(b);
        const Piece& p = pp.first.pieces.at(a);
        const Piece& q = pp.second.pieces.at(b);
        CHECK(p.kind == q.kind);
        CHECK(p.rate == q.rate);
        CHECK(p.coefficients.size() == q.coefficients.size());
        if (p.kind == PieceKind::B) {
            CHECK(p.alpha == q.alpha);
            CHECK(p.beta == q.beta);
            CHECK(p.gamma == q.gamma);
            CHECK(constants_ok(p));
            CHECK(constants_ok(q));
        }
    }
    CHECK(seen1.size() == pp.first.pieces.size());
    CHECK(seen2.size() == pp.second.pieces.size());
}

TEST_CASE("alignment refuses inequivalent curves")
{
    CHECK_THROWS_WITH_AS(align_decompositions(parse_curve("y = x^(3/2)"), parse_curve("y = x^(5/2)")),
                         doctest::Contains("not equivalent"), InputError);
}

TEST_CASE("piece counts on random curves")
{
    std::mt19937 rng(71);
    for (int i = 0; i < 100; ++i) {
        const Curve c = oracle::random_curve(rng, 3, 6, 24);
        INFO(render_curve(c));
        const PieceDecomposition d = decompose(c);
        CHECK(d.count(PieceKind::B1) == 1);
        CHECK(d.count(PieceKind::D) == static_cast<std::size_t>(d.curve.multiplicity()));
        CHECK(d.count(PieceKind::A) == d.count(PieceKind::B));
        CHECK(d.count(PieceKind::B) >= internal_nodes(carrousel_tree(d.curve).root, true));
        for (const Piece& p : d.pieces)
            if (p.kind == PieceKind::B)
                CHECK(constants_ok(p));
    }
}

TEST_CASE("section checks and rendering")
{
    const PieceDecomposition d = decompose(parse_curve(kE));
    const auto t = max_verified_t(d);
    REQUIRE(t.has_value());
    CHECK(*t == doctest::Approx(1.0 / 128));
    CHECK(check_section(d, 1.0 / 128).ok());
    CHECK(check_section(d, 1.0 / 256).ok());

    const std::string svg = render_section(d, Rational(1, 10));
    CHECK(svg == render_section(d, Rational(1, 10)));
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count_matches(svg, "class=\"sheet\"") == 9);
    CHECK(count_matches(svg, "class=\"sheet\" data-branch=\"2\"") == 3);
    CHECK(count_matches(svg, "data-kind=\"D\"") == 9);
    CHECK(svg != render_section(d, Rational(1, 20)));

    CHECK_THROWS(render_section(d, Rational(0)));
    CHECK_THROWS(render_section(d, Rational(1, 2)));

    const PieceDecomposition line = decompose(parse_curve("y = x"));
    const std::string one = render_section(line, Rational(1, 8));
    CHECK(count_matches(one, "class=\"sheet\"") == 1);
    CHECK(check_section(line, 0.125).ok());
}
