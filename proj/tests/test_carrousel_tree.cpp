#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "curvelab/carrousel_tree.hpp"
#include "oracles.hpp"

using namespace curvelab;

namespace {

const char* const kE = "y = x^(3/2) + x^(13/6)\ny = x^(7/3)";

ContactMatrix permuted(const ContactMatrix& q, const std::vector<std::size_t>& p)
{
    ContactMatrix out(q.size());
    for (std::size_t j = 0; j < q.size(); ++j)
        for (std::size_t k = j + 1; k < q.size(); ++k)
            out.set(p[j], p[k], q.at(j, k));
    return out;
}

std::vector<std::size_t> child_sizes(const CarrouselNode& n)
{
    std::vector<std::size_t> out;
    for (const CarrouselNode& c : n.children)
        out.push_back(c.sheets.size());
    std::sort(out.begin(), out.end());
    return out;
}

void check_weights_increase(const CarrouselNode& n)
{
    for (const CarrouselNode& c : n.children) {
        CHECK(n.q < c.q);
        std::size_t total = 0;
        for (const CarrouselNode& g : n.children)
            total += g.sheets.size();
        CHECK(total == n.sheets.size());
        if (!c.is_leaf())
            CHECK(c.children.size() >= 2);
        check_weights_increase(c);
    }
}

void check_eggers_bookkeeping(const EggersNode& n, bool root)
{
    if (n.leaf)
        return;
    int extras = 0;
    for (const EggersNode& c : n.children) {
        extras += c.extra;
        if (c.leaf)
            continue;
        CHECK(c.n % n.n == 0);
        REQUIRE(c.s.has_value());
        CHECK(*c.s > 0);
        REQUIRE(c.r.has_value());
        CHECK(*c.r >= 1);
        CHECK(Rational(c.m, c.n) == c.q);
        check_eggers_bookkeeping(c, false);
    }
    CHECK(extras <= 1);
    if (root)
        CHECK(n.q == Rational(1));
}

}  // namespace

TEST_CASE("carrousel tree of E")
{
    const CarrouselTree t = carrousel_tree(parse_curve(kE));
    CHECK(t.root.q == ExtendedRational(Rational(1)));
    REQUIRE(t.root.children.size() == 1);
    const CarrouselNode& v = t.root.children[0];
    CHECK(v.q == ExtendedRational(Rational(3, 2)));
    REQUIRE(v.children.size() == 3);
    std::vector<Rational> qs;
    for (const CarrouselNode& c : v.children) {
        qs.push_back(c.q.value());
        CHECK(c.children.size() == 3);
        for (const CarrouselNode& l : c.children)
            CHECK(l.is_leaf());
    }
    std::sort(qs.begin(), qs.end());
    CHECK(qs == std::vector<Rational>{Rational(13, 6), Rational(13, 6), Rational(7, 3)});
    CHECK(leaf_count(t.root) == 9);
    CHECK(canonical_code(t) == "(1:(3/2:(13/6:L,L,L),(13/6:L,L,L),(7/3:L,L,L)))");
    check_weights_increase(t.root);
}

TEST_CASE("carrousel trees of the cusp and a smooth branch")
{
    const CarrouselTree cusp = carrousel_tree(parse_curve("y = x^(3/2)"));
    REQUIRE(cusp.root.children.size() == 1);
    CHECK(cusp.root.children[0].q == ExtendedRational(Rational(3, 2)));
    CHECK(child_sizes(cusp.root.children[0]) == std::vector<std::size_t>{1, 1});

    const CarrouselTree smooth = carrousel_tree(parse_curve("y = 4*x"));
    REQUIRE(smooth.root.children.size() == 1);
    CHECK(smooth.root.children[0].is_leaf());
    CHECK(canonical_code(smooth) == "(1:L)");

    const CarrouselTree lines = carrousel_tree(parse_curve("y = x\ny = -x"));
    CHECK(canonical_code(lines) == "(1:L,L)");
}

TEST_CASE("ultrametric violations are rejected")
{
    ContactMatrix bad(3);
    bad.set(0, 1, Rational(2));
    bad.set(1, 2, Rational(3));
    bad.set(0, 2, Rational(5));
    CHECK_THROWS_AS(build_carrousel_tree(bad), InvariantError);
}

TEST_CASE("Eggers decorations of E")
{
    const EggersTree e = eggers_reduce(carrousel_tree(parse_curve(kE)));
    REQUIRE(e.root.children.size() == 1);
    const EggersNode& v = e.root.children[0];
    CHECK(v.m == 3);
    CHECK(v.n == 2);
    CHECK(*v.r == 2);
    CHECK(*v.s == 1);
    REQUIRE(v.children.size() == 2);
    const EggersNode* a = nullptr;
    const EggersNode* b = nullptr;
    for (const EggersNode& c : v.children)
        (c.q == Rational(13, 6) ? a : b) = &c;
    REQUIRE(a);
    REQUIRE(b);
    CHECK_FALSE(a->extra);
    CHECK(b->extra);
    CHECK(a->m == 13);
    CHECK(a->n == 6);
    CHECK(*a->r == 3);
    CHECK(*a->s == 4);
    CHECK(b->q == Rational(7, 3));
    CHECK(b->m == 14);
    CHECK(b->n == 6);
    CHECK(*b->r == 3);
    CHECK(*b->s == 5);
    for (const EggersNode* x : {a, b}) {
        REQUIRE(x->children.size() == 1);
        CHECK(x->children[0].leaf);
    }
    CHECK(*a->children[0].branch == 0);
    CHECK(*b->children[0].branch == 1);
    check_eggers_bookkeeping(e.root, true);
}

TEST_CASE("Eggers reduction of the cusp")
{
    const EggersTree e = eggers_reduce(carrousel_tree(parse_curve("y = x^(3/2)")));
    const EggersNode& v = e.root.children.at(0);
    CHECK(v.m == 3);
    CHECK(v.n == 2);
    CHECK(*v.r == 2);
    CHECK(*v.s == 1);
    REQUIRE(v.children.size() == 1);
    CHECK(v.children[0].leaf);
    CHECK_FALSE(v.children[0].extra);
}

TEST_CASE("Eggers bookkeeping on random curves")
{
    std::mt19937 rng(31);
    for (int i = 0; i < 300; ++i) {
        const Curve c = oracle::random_curve(rng);
        const CarrouselTree t = carrousel_tree(c);
        CHECK(leaf_count(t.root) == static_cast<std::size_t>(c.multiplicity()));
        check_weights_increase(t.root);
        check_eggers_bookkeeping(eggers_reduce(t).root, true);
    }
}

TEST_CASE("canonical code ignores the sheet numbering")
{
    const QMap q = q_map(parse_curve(kE));
    const CanonicalCode ref = canonical_code(build_carrousel_tree(q.q));
    std::vector<std::size_t> p(q.sheets.size());
    std::iota(p.begin(), p.end(), 0);
    std::mt19937 rng(9);
    for (int i = 0; i < 2000; ++i) {
        std::shuffle(p.begin(), p.end(), rng);
        CHECK(canonical_code(build_carrousel_tree(permuted(q.q, p))) == ref);
    }
}

TEST_CASE("equivalence examples")
{
    const Curve e = parse_curve(kE);
    CHECK(equivalent(e, parse_curve("y = 5*x^(3/2) - 2*x^(13/6)\ny = -x^(7/3)")));
    CHECK(equivalent(e, parse_curve("y = 3*x^(3/2) + 5*x^(13/6)\ny = 7*x^(7/3)")));
    CHECK_FALSE(equivalent(parse_curve("y = x^(3/2) + x^(13/6)"), parse_curve("y = x^(3/2) + x^(11/6)")));
    CHECK_FALSE(equivalent(parse_curve("y = x^2\ny = -x^2"), parse_curve("y = x^2\ny = x^2 + x^3")));
    CHECK_FALSE(equivalent(parse_curve("y = x^(3/2)"), parse_curve("y = x^(5/2)")));
    CHECK(explain_difference(parse_curve("y = x^(3/2)"), parse_curve("y = x^(5/2)")).find("characteristic") !=
          std::string::npos);
    CHECK(explain_difference(e, e).empty());
}

TEST_CASE("equivalence is reflexive, symmetric and ignores coefficient rescaling")
{
    std::mt19937 rng(41);
    std::vector<Curve> pool;
    for (int i = 0; i < 40; ++i)
        pool.push_back(oracle::random_curve(rng));
    for (std::size_t a = 0; a < pool.size(); ++a) {
        CHECK(equivalent(pool[a], pool[a]));
        for (std::size_t b = a + 1; b < pool.size(); ++b)
            CHECK(equivalent(pool[a], pool[b]) == equivalent(pool[b], pool[a]));
    }
    for (int i = 0; i < 100; ++i) {
        const Branch b = oracle::random_branch(rng);
        std::vector<Term> scaled;
        for (const Term& t : b.terms())
            scaled.push_back({t.exponent, t.coeff * oracle::random_coeff(rng)});
        CHECK(equivalent(Curve({b}), Curve({Branch::from_param(b.n(), scaled)})));
    }
}

TEST_CASE("adding an inessential term keeps the code")
{
    std::mt19937 rng(43);
    int done = 0;
    while (done < 100) {
        const Branch b = oracle::random_branch(rng);
        const std::int64_t e = std::uniform_int_distribution<std::int64_t>(b.n() + 1, 60)(rng);
        if (b.coefficient(e) != GaussianRational())
            continue;
        std::int64_t g = b.n();
        for (const Term& t : b.terms())
            if (t.exponent < e)
                g = std::gcd(g, t.exponent);
        if (e % g != 0)
            continue;
        std::vector<Term> terms = b.terms();
        terms.push_back({e, oracle::random_coeff(rng)});
        const Branch extended = Branch::from_param(b.n(), terms);
        INFO(render_branch(b), " + x^(", e, "/", b.n(), ")");
        CHECK(canonical_code(carrousel_tree(Curve({b}))) == canonical_code(carrousel_tree(Curve({extended}))));
        ++done;
    }
}
