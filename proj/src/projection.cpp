#include "curvelab/projection.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace curvelab {

SpaceBranch SpaceBranch::from_param(std::int64_t n, const std::vector<std::vector<Term>>& coordinates)
{
    if (n < 1)
        throw InputError("multiplicity must be a positive integer");
    if (coordinates.empty())
        throw InputError("space branch needs at least one coordinate besides w^n");
    SpaceBranch b;
    std::int64_t g = n;
    for (const auto& coord : coordinates) {
        std::map<std::int64_t, GaussianRational> merged;
        for (const Term& t : coord)
            merged[t.exponent] += t.coeff;
        std::vector<Term> terms;
        for (auto& [exponent, coeff] : merged) {
            if (coeff.is_zero())
                continue;
            if (exponent < n)
                throw InputError("tangent to the z_1 = 0 hyperplane (exponent " + Rational(exponent, n).to_string() +
                                 " < 1)");
            g = std::gcd(g, exponent);
            terms.push_back({exponent, coeff});
        }
        b.coords_.push_back(std::move(terms));
    }
    b.n_ = n / g;
    for (auto& coord : b.coords_)
        for (Term& t : coord)
            t.exponent /= g;
    return b;
}

GaussianRational SpaceBranch::coefficient(std::size_t j, std::int64_t exponent) const
{
    if (j == 1)
        return exponent == n_ ? GaussianRational(1) : GaussianRational();
    for (const Term& t : coordinate(j))
        if (t.exponent == exponent)
            return t.coeff;
    return {};
}

std::vector<std::int64_t> SpaceBranch::support() const
{
    std::vector<std::int64_t> s{n_};
    for (const auto& coord : coords_)
        for (const Term& t : coord)
            s.push_back(t.exponent);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::vector<std::int64_t> essential_exponents(const SpaceBranch& b)
{
    const auto support = b.support();
    return essential_exponents(b.n(), support);
}

namespace {

bool same_space_branch(const SpaceBranch& a, const SpaceBranch& b)
{
    if (a.n() != b.n() || a.dimension() != b.dimension() || a.support() != b.support())
        return false;
    const auto support = a.support();
    for (std::int64_t k = 0; k < a.n(); ++k) {
        bool all = true;
        for (std::size_t j = 2; j <= a.dimension() && all; ++j)
            for (std::int64_t i : support) {
                const TaggedScalar lhs(a.coefficient(j, i), RootOfUnityTag(a.n(), checked_mul(k, i)));
                if (!tagged_equal(lhs, TaggedScalar(b.coefficient(j, i)))) {
                    all = false;
                    break;
                }
            }
        if (all)
            return true;
    }
    return false;
}

std::string gaussian_text(const GaussianRational& g) { return g.is_real() ? g.re().to_string() : g.to_string(); }

}  // namespace

SpaceCurve::SpaceCurve(std::vector<SpaceBranch> branches) : branches_(std::move(branches))
{
    if (branches_.empty())
        throw InputError("curve has no branches");
    for (const SpaceBranch& b : branches_)
        if (b.dimension() != branches_.front().dimension())
            throw InputError("branches live in different ambient dimensions");
    for (std::size_t a = 0; a < branches_.size(); ++a)
        for (std::size_t b = a + 1; b < branches_.size(); ++b)
            if (same_space_branch(branches_[a], branches_[b]))
                throw InputError("non-reduced curve (branches " + std::to_string(a + 1) + " and " +
                                 std::to_string(b + 1) + " coincide)");
}

SpaceCurve parse_space_curve(const std::string& text)
{
    std::vector<SpaceBranch> out;
    for (const RawBranch& raw : parse_raw(text)) {
        try {
            out.push_back(SpaceBranch::from_param(raw.n, raw.coordinates));
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(raw.line) + ": " + e.what());
        }
    }
    return SpaceCurve(std::move(out));
}

SpaceCurve embed(const Curve& c, std::size_t dimension)
{
    if (dimension < 2)
        throw std::invalid_argument("embedding dimension must be at least 2");
    std::vector<SpaceBranch> out;
    for (const Branch& b : c.branches()) {
        std::vector<std::vector<Term>> coords(dimension - 1);
        coords.front() = b.terms();
        out.push_back(SpaceBranch::from_param(b.n(), coords));
    }
    return SpaceCurve(std::move(out));
}

std::string Direction::to_string() const
{
    std::string s = "(";
    for (std::size_t j = 0; j < b.size(); ++j)
        s += (j ? ", " : "") + gaussian_text(b[j]);
    s += ")";
    if (!b1.is_zero())
        s += " with b1 = " + gaussian_text(b1);
    return s;
}

std::string GenericityVerdict::to_string() const
{
    switch (kind) {
    case Kind::Generic:
        return "GENERIC";
    case Kind::FailsBranch:
        return "FAILS_BRANCH(" + std::to_string(branch + 1) + ", " + std::to_string(exponent) + ")";
    case Kind::FailsPair:
        return "FAILS_PAIR(" + std::to_string(branch + 1) + ", " + std::to_string(other_branch + 1) +
               ", lambda = zeta_" + std::to_string(order) + "^" + std::to_string(residue) + ", " +
               std::to_string(exponent) + ")";
    }
    return {};
}

namespace {

// Sum_j b_j a_{ji} over j = 1..N for an exponent i of `branch`.
GaussianRational linear_form(const SpaceBranch& branch, const Direction& d, std::int64_t i)
{
    GaussianRational total = d.b1 * branch.coefficient(1, i);
    for (std::size_t j = 2; j <= branch.dimension(); ++j)
        total += d.b.at(j - 2) * branch.coefficient(j, i);
    return total;
}

// Coefficient of w^i after rewriting the branch with multiplicity n = factor * n_branch.
GaussianRational rescaled_coefficient(const SpaceBranch& b, std::size_t j, std::int64_t i, std::int64_t factor)
{
    if (i % factor != 0)
        return {};
    return b.coefficient(j, i / factor);
}

}  // namespace

GenericityVerdict is_generic(const SpaceCurve& c, const Direction& d)
{
    if (d.b.size() + 1 != c.dimension())
        throw InputError("direction has " + std::to_string(d.b.size()) + " entries, expected " +
                         std::to_string(c.dimension() - 1));
    if (std::all_of(d.b.begin(), d.b.end(), [](const GaussianRational& x) { return x.is_zero(); }))
        throw InputError("direction (b_2, ..., b_N) must not be zero");

    for (std::size_t bi = 0; bi < c.size(); ++bi)
        for (std::int64_t i : essential_exponents(c.branches()[bi]))
            if (linear_form(c.branches()[bi], d, i).is_zero())
                return {GenericityVerdict::Kind::FailsBranch, bi, 0, 0, 1, i};

    for (std::size_t b1 = 0; b1 < c.size(); ++b1)
        for (std::size_t b2 = b1 + 1; b2 < c.size(); ++b2) {
            const SpaceBranch& p = c.branches()[b1];
            const SpaceBranch& q = c.branches()[b2];
            const std::int64_t n = lcm64(p.n(), q.n());
            const std::int64_t fp = n / p.n();
            const std::int64_t fq = n / q.n();
            std::vector<std::int64_t> exponents;
            for (std::int64_t i : p.support())
                exponents.push_back(checked_mul(i, fp));
            for (std::int64_t i : q.support())
                exponents.push_back(checked_mul(i, fq));
            std::sort(exponents.begin(), exponents.end());
            exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());

            for (std::int64_t r = 0; r < n; ++r) {
                std::optional<std::int64_t> first;
                for (std::int64_t i : exponents) {
                    const RootOfUnityTag lambda_i(n, checked_mul(r, i));
                    for (std::size_t j = 1; j <= c.dimension() && !first; ++j) {
                        const TaggedScalar lhs(rescaled_coefficient(p, j, i, fp));
                        const TaggedScalar rhs(rescaled_coefficient(q, j, i, fq), lambda_i);
                        if (!tagged_equal(lhs, rhs))
                            first = i;
                    }
                    if (first)
                        break;
                }
                if (!first)
                    throw InputError("non-reduced curve (branches " + std::to_string(b1 + 1) + " and " +
                                     std::to_string(b2 + 1) + " coincide)");
                const std::int64_t i = *first;
                GaussianRational sp;
                GaussianRational sq;
                if (i % fp == 0)
                    sp = linear_form(p, d, i / fp);
                if (i % fq == 0)
                    sq = linear_form(q, d, i / fq);
                if (vanishes(sp, RootOfUnityTag(n, checked_mul(r, i)), sq))
                    return {GenericityVerdict::Kind::FailsPair, b1, b2, r, n, i};
            }
        }
    return {};
}

Direction find_generic_direction(const SpaceCurve& c)
{
    const std::size_t dims = c.dimension() - 1;
    for (long g = 1; g <= 10000; ++g) {
        // Entry values ordered by magnitude, positive before negative: 0, 1, -1, 2, -2, ...
        std::vector<long> values{0};
        for (long v = 1; v <= g; ++v) {
            values.push_back(v);
            values.push_back(-v);
        }
        std::vector<std::size_t> idx(dims, 0);
        for (;;) {
            long norm = 0;
            for (std::size_t k : idx)
                norm = std::max(norm, std::labs(values[k]));
            if (norm == g) {
                Direction d;
                for (std::size_t k : idx)
                    d.b.emplace_back(values[k]);
                if (is_generic(c, d).generic())
                    return d;
            }
            std::size_t pos = dims;
            while (pos > 0 && ++idx[pos - 1] == values.size()) {
                idx[pos - 1] = 0;
                --pos;
            }
            if (pos == 0)
                break;
        }
    }
    throw InvariantError("no generic direction found");
}

Projection project(const SpaceCurve& c, const Direction& d)
{
    Projection out;
    out.verdict = is_generic(c, d);
    if (!out.verdict.generic())
        out.warnings.push_back("direction " + d.to_string() + " is not generic: " + out.verdict.to_string());
    for (std::size_t bi = 0; bi < c.size(); ++bi) {
        const SpaceBranch& b = c.branches()[bi];
        std::vector<Term> terms;
        for (std::int64_t i : b.support())
            terms.push_back({i, linear_form(b, d, i)});
        Branch plane = Branch::from_param(b.n(), terms);
        if (plane.n() != b.n())
            out.warnings.push_back("non-generic collapse: branch " + std::to_string(bi + 1) +
                                   " projects with multiplicity " + std::to_string(plane.n()) + " instead of " +
                                   std::to_string(b.n()));
        out.branches.push_back(std::move(plane));
    }
    try {
        out.curve.emplace(out.branches);
    } catch (const InputError& e) {
        out.warnings.push_back(std::string("projected curve is not reduced: ") + e.what());
    }
    return out;
}

CanonicalCode generic_projection_topology(const SpaceCurve& c)
{
    const Projection p = project(c, find_generic_direction(c));
    if (!p.curve)
        throw InvariantError("generic projection is not reduced");
    return canonical_code(carrousel_tree(*p.curve));
}

}  // namespace curvelab
