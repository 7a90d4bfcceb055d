#include "curvelab/carrousel_geom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "curvelab/carrousel_tree.hpp"
#include "curvelab/contact.hpp"

namespace curvelab {

std::complex<double> SheetPoly::evaluate(double t) const
{
    std::complex<double> y = 0;
    for (const PolyTerm& term : terms)
        if (!term.coeff.is_zero())
            y += term.coeff.to_complex() * std::pow(t, term.rate.to_double());
    return y;
}

std::string to_string(PieceKind k)
{
    switch (k) {
    case PieceKind::B1:
        return "B1";
    case PieceKind::A:
        return "A";
    case PieceKind::B:
        return "B";
    case PieceKind::D:
        return "D";
    }
    return {};
}

std::complex<double> Piece::center_at(double t) const
{
    return SheetPoly{{}, center}.evaluate(t);
}

std::size_t PieceDecomposition::count(PieceKind k) const
{
    return static_cast<std::size_t>(
        std::count_if(pieces.begin(), pieces.end(), [k](const Piece& p) { return p.kind == k; }));
}

namespace {

std::vector<SheetPoly> sheet_polys(const Curve& c)
{
    std::vector<SheetPoly> out;
    for (const Sheet& s : sheets(c)) {
        const Branch& b = c.branch(s.branch);
        SheetPoly poly{s, {}};
        for (const Term& t : b.terms())
            poly.terms.push_back({Rational(t.exponent, b.n()), b.sheet_coefficient(s.k, t.exponent), false});
        out.push_back(std::move(poly));
    }
    return out;
}

const PolyTerm* term_at(const SheetPoly& p, const Rational& rate)
{
    for (const PolyTerm& t : p.terms)
        if (t.rate == rate)
            return &t;
    return nullptr;
}

std::optional<Rational> next_rate(const std::vector<SheetPoly>& polys, const std::vector<std::size_t>& s,
                                  const Rational& after)
{
    std::optional<Rational> best;
    for (std::size_t i : s)
        for (const PolyTerm& t : polys[i].terms)
            if (t.rate > after) {
                if (!best || t.rate < *best)
                    best = t.rate;
                break;
            }
    return best;
}

struct Group {
    TaggedScalar value;
    bool present = false;  // some sheet carries an explicit term at this rate
    std::vector<std::size_t> sheets;
};

std::vector<Group> group_at(const std::vector<SheetPoly>& polys, const std::vector<std::size_t>& s,
                            const Rational& rate)
{
    std::vector<Group> groups;
    for (std::size_t i : s) {
        const PolyTerm* t = term_at(polys[i], rate);
        const TaggedScalar v = t ? t->coeff : TaggedScalar();
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return tagged_equal(g.value, v); });
        if (it == groups.end()) {
            groups.push_back({v, t != nullptr, {i}});
        } else {
            it->present = it->present || t != nullptr;
            it->sheets.push_back(i);
        }
    }
    return groups;
}

struct Constants {
    Rational alpha;
    Rational beta;
    Rational gamma;
};

// Largest dyadic rational not exceeding 0.999 x, for x > 0.
Rational dyadic_below(double x)
{
    const int k = std::max(12, 12 - static_cast<int>(std::floor(std::log2(x))));
    const double scaled = std::floor(0.999 * x * std::ldexp(1.0, k));
    return Rational(BigInt(static_cast<long>(scaled)), BigInt(1) << k);
}

Constants constants_for(const std::vector<TaggedScalar>& coeffs, const Rational& at_rate)
{
    std::optional<Rational> h2;
    Rational m2{0};
    for (const TaggedScalar& a : coeffs)
        if (!a.is_zero()) {
            const Rational n = a.norm();
            if (!h2 || n < *h2)
                h2 = n;
            m2 = std::max(m2, n);
        }
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < coeffs.size(); ++a)
        for (std::size_t b = a + 1; b < coeffs.size(); ++b)
            g = std::min(g, std::abs(coeffs[a].to_complex() - coeffs[b].to_complex()));

    const Rational h_lo = h2 ? sqrt_lower(*h2) : Rational{1};
    const Rational m_hi = sqrt_upper(m2);
    Rational gamma = h_lo;
    if (std::isfinite(g)) {
        if (!(g > 0))
            throw InvariantError("coincident hole centers at rate " + at_rate.to_string());
        gamma = std::min(gamma, dyadic_below(g) / Rational{2});
    }
    gamma /= Rational{3};
    Constants c{h_lo / Rational{2}, Rational{2} * m_hi + gamma, gamma};
    if (c.gamma.sign() <= 0)
        throw InvariantError("constants infeasible at rate " + at_rate.to_string());
    for (const TaggedScalar& a : coeffs) {
        if (a.is_zero())
            continue;
        const Rational lo = c.alpha + c.gamma;
        const Rational hi = c.beta - c.gamma;
        if (!(lo * lo < a.norm()) || !(hi.sign() > 0 && hi * hi > a.norm()))
            throw InvariantError("constants infeasible at rate " + at_rate.to_string());
    }
    return c;
}

void assign_constants(Piece& p, const Constants& c)
{
    p.alpha = c.alpha;
    p.beta = c.beta;
    p.gamma = c.gamma;
}

bool has_zero_hole(const Piece& b)
{
    return std::any_of(b.coefficients.begin(), b.coefficients.end(), [](const TaggedScalar& a) { return a.is_zero(); });
}

// Outer radii of region roots follow from the constants of their parents.
void resolve_radii(PieceDecomposition& d)
{
    for (Piece& p : d.pieces) {
        if (!p.parent || (p.kind != PieceKind::A && p.kind != PieceKind::D))
            continue;
        const Piece& parent = d.pieces[*p.parent];
        p.outer_rate = parent.kind == PieceKind::B1 ? Rational{1} : parent.rate;
        if (parent.kind == PieceKind::B1)
            p.radius = d.params.eta;
        else if (p.in_center)
            p.radius = parent.alpha;
        else
            p.radius = parent.gamma;
        if (p.kind == PieceKind::D)
            p.rate = p.outer_rate;
    }
}

class Builder {
public:
    Builder(const Curve& c, const DecompositionParams& p, std::vector<SheetPoly> polys)
    {
        d_.curve = c;
        d_.params = p;
        d_.sheets = std::move(polys);
    }

    PieceDecomposition build()
    {
        d_.pieces.push_back(Piece{});
        std::vector<std::size_t> all(d_.sheets.size());
        std::iota(all.begin(), all.end(), 0);
        d_.pieces[0].sheets = all;

        const Rational one{1};
        for (const Group& sector : group_at(d_.sheets, all, one)) {
            if (sector.value.is_zero())
                throw InputError("a tangent line is the x-axis; shear the curve first");
            const std::size_t j = d_.slopes.size();
            d_.slopes.push_back(sector.value.to_complex());
            region({PolyTerm{one, sector.value, false}}, one, sector.sheets, 0, j);
        }
        resolve_radii(d_);
        assign_orbits();
        return std::move(d_);
    }

private:
    std::size_t add(Piece p, std::size_t parent)
    {
        p.parent = parent;
        d_.pieces.push_back(std::move(p));
        const std::size_t id = d_.pieces.size() - 1;
        d_.pieces[parent].children.push_back(id);
        return id;
    }

    void region(const std::vector<PolyTerm>& center, const Rational& p0, const std::vector<std::size_t>& s,
                std::size_t parent, std::size_t sector, bool in_center = false)
    {
        const auto next = next_rate(d_.sheets, s, p0);
        if (!next) {
            if (s.size() != 1)
                throw InvariantError("sheets share their whole polynomial");
            Piece dp;
            dp.kind = PieceKind::D;
            dp.sector = sector;
            dp.center = d_.sheets[s.front()].terms;
            dp.rate = p0;
            dp.sheets = s;
            dp.in_center = in_center;
            add(std::move(dp), parent);
            return;
        }

        Piece a;
        a.kind = PieceKind::A;
        a.sector = sector;
        a.center = center;
        a.outer_rate = p0;
        a.rate = *next;
        a.sheets = s;
        a.in_center = in_center;
        const std::size_t ai = add(std::move(a), parent);

        Piece b;
        b.kind = PieceKind::B;
        b.sector = sector;
        b.center = center;
        b.rate = *next;
        b.sheets = s;
        const auto groups = group_at(d_.sheets, s, *next);
        for (const Group& g : groups) {
            if (g.present)
                b.coefficients.push_back(g.value);
            else
                b.center_occupied = true;
        }
        assign_constants(b, constants_for(b.coefficients, *next));
        const std::size_t bi = add(std::move(b), ai);

        for (const Group& g : groups) {
            std::vector<PolyTerm> sub = center;
            if (g.present)
                sub.push_back({*next, g.value, term_at(d_.sheets[g.sheets.front()], *next)->inserted});
            region(sub, *next, g.sheets, bi, sector, !g.present);
        }
    }

    void assign_orbits()
    {
        // Conjugation x^(1/N) -> zeta_N x^(1/N) shifts every sheet index k by one.
        std::int64_t big_n = 1;
        for (const Branch& b : d_.curve.branches())
            big_n = lcm64(big_n, b.n());
        std::map<std::pair<std::size_t, std::int64_t>, std::size_t> index;
        for (std::size_t i = 0; i < d_.sheets.size(); ++i)
            index[{d_.sheets[i].sheet.branch, d_.sheets[i].sheet.k}] = i;

        std::map<std::pair<PieceKind, std::vector<std::size_t>>, std::size_t> orbit_of;
        std::map<PieceKind, std::size_t> next_id;
        for (Piece& p : d_.pieces) {
            std::vector<std::size_t> best;
            for (std::int64_t shift = 0; shift < big_n; ++shift) {
                std::vector<std::size_t> image;
                for (std::size_t i : p.sheets) {
                    const Sheet& s = d_.sheets[i].sheet;
                    const std::int64_t n = d_.curve.branch(s.branch).n();
                    image.push_back(index.at({s.branch, mod64(s.k + shift, n)}));
                }
                std::sort(image.begin(), image.end());
                if (shift == 0 || image < best)
                    best = std::move(image);
            }
            auto [it, fresh] = orbit_of.try_emplace({p.kind, best}, next_id[p.kind]);
            if (fresh)
                ++next_id[p.kind];
            p.orbit = it->second;
        }
    }

    PieceDecomposition d_;
};

Curve sheared(const Curve& c, std::int64_t lambda)
{
    if (lambda == 0)
        return c;
    std::vector<Branch> out;
    for (const Branch& b : c.branches()) {
        std::vector<Term> terms = b.terms();
        terms.push_back({b.n(), GaussianRational(lambda)});
        out.push_back(Branch::from_param(b.n(), terms));
    }
    return Curve(std::move(out));
}

std::int64_t auto_shear_amount(const Curve& c)
{
    auto is_axis = [](const GaussianRational& s) { return s.is_zero(); };
    const auto& bs = c.branches();
    if (std::none_of(bs.begin(), bs.end(), [&](const Branch& b) { return is_axis(b.tangent_slope()); }))
        return 0;
    for (std::int64_t lambda = 1;; ++lambda)
        if (std::none_of(bs.begin(), bs.end(), [&](const Branch& b) {
                return is_axis(b.tangent_slope() + GaussianRational(lambda));
            }))
            return lambda;
}

std::string piece_code(const PieceDecomposition& d, std::size_t i)
{
    const Piece& p = d.pieces[i];
    std::vector<std::string> kids;
    for (std::size_t c : p.children)
        kids.push_back(piece_code(d, c));
    std::sort(kids.begin(), kids.end());
    std::string out = to_string(p.kind) + "@" + p.rate.to_string();
    if (p.kind == PieceKind::B)
        out += "#" + std::to_string(p.coefficients.size()) + (p.center_occupied ? "c" : "");
    out += "[";
    for (std::size_t k = 0; k < kids.size(); ++k)
        out += (k ? "," : "") + kids[k];
    return out + "]";
}

}  // namespace

DecompositionParams default_params(const Curve& c)
{
    DecompositionParams p;
    std::vector<GaussianRational> slopes;
    for (const Branch& b : c.branches()) {
        const GaussianRational s = b.tangent_slope();
        if (std::find(slopes.begin(), slopes.end(), s) == slopes.end())
            slopes.push_back(s);
    }
    if (slopes.size() > 1) {
        std::optional<Rational> d2;
        for (std::size_t a = 0; a < slopes.size(); ++a)
            for (std::size_t b = a + 1; b < slopes.size(); ++b) {
                const Rational n = (slopes[a] - slopes[b]).norm();
                if (!d2 || n < *d2)
                    d2 = n;
            }
        p.eta = std::min(sqrt_lower(*d2) / Rational{4}, Rational{1, 2});
    }
    Rational m2{0};
    for (const GaussianRational& s : slopes)
        m2 = std::max(m2, s.norm());
    const Rational m = sqrt_upper(m2);
    BigInt ceil_m;
    mpz_cdiv_q(ceil_m.get_mpz_t(), m.num().get_mpz_t(), m.den().get_mpz_t());
    p.R = Rational(ceil_m + 1, BigInt(1));
    return p;
}

std::pair<Curve, DecompositionParams> prepare(const Curve& c, const DecomposeOptions& o)
{
    Curve work = c;
    if (o.truncate) {
        std::vector<Branch> truncated;
        for (std::size_t b = 0; b < c.size(); ++b)
            truncated.push_back(truncate_branch(c.branch(b), truncation_exponent(c, b)));
        work = Curve(std::move(truncated));
    }
    const std::int64_t lambda = o.auto_shear ? auto_shear_amount(work) : 0;
    work = sheared(work, lambda);
    DecompositionParams p = default_params(work);
    p.shear = lambda;
    return {work, p};
}

PieceDecomposition decompose(const Curve& c, const DecompositionParams& p)
{
    return Builder(c, p, sheet_polys(c)).build();
}

PieceDecomposition decompose(const Curve& c, const DecomposeOptions& o)
{
    const auto [work, params] = prepare(c, o);
    return decompose(work, params);
}

std::string inventory(const PieceDecomposition& d)
{
    std::map<std::pair<Rational, std::size_t>, std::size_t> b_kinds;
    for (const Piece& p : d.pieces)
        if (p.kind == PieceKind::B)
            ++b_kinds[{p.rate, p.coefficients.size()}];
    std::string out = "B(1) x" + std::to_string(d.count(PieceKind::B1)) + ", B x" +
                      std::to_string(d.count(PieceKind::B));
    if (!b_kinds.empty()) {
        out += " (";
        bool first = true;
        for (const auto& [key, n] : b_kinds) {
            out += (first ? "" : ", ") + key.first.to_string() + " [" + std::to_string(key.second) +
                   (key.second == 1 ? " hole]" : " holes]");
            if (n > 1)
                out += " x" + std::to_string(n);
            first = false;
        }
        out += ")";
    }
    out += ", A x" + std::to_string(d.count(PieceKind::A)) + ", D x" + std::to_string(d.count(PieceKind::D));
    return out;
}

std::string structure_code(const PieceDecomposition& d) { return piece_code(d, 0); }

namespace {

class Aligner {
public:
    Aligner(const Curve& c1, const Curve& c2)
    {
        const DecomposeOptions untruncated{true, false};
        std::tie(curve_[0], params_[0]) = prepare(c1, untruncated);
        std::tie(curve_[1], params_[1]) = prepare(c2, untruncated);
        for (int side = 0; side < 2; ++side) {
            polys_[side] = sheet_polys(curve_[side]);
            q_[side] = q_map(curve_[side]).q;
        }
    }

    PiecePairing run()
    {
        std::vector<std::size_t> all1(polys_[0].size());
        std::vector<std::size_t> all2(polys_[1].size());
        std::iota(all1.begin(), all1.end(), 0);
        std::iota(all2.begin(), all2.end(), 0);
        match(group_at(polys_[0], all1, Rational{1}), group_at(polys_[1], all2, Rational{1}), Rational{1});

        PiecePairing out;
        out.first = Builder(curve_[0], params_[0], polys_[0]).build();
        out.second = Builder(curve_[1], params_[1], polys_[1]).build();
        out.insertions = std::move(insertions_);
        pair_pieces(out, 0, 0);
        for (const auto& [i, j] : out.pairs) {
            Piece& a = out.first.pieces[i];
            Piece& b = out.second.pieces[j];
            if (a.kind != PieceKind::B)
                continue;
            std::vector<TaggedScalar> both = a.coefficients;
            for (const TaggedScalar& v : b.coefficients)
                if (std::none_of(both.begin(), both.end(), [&](const TaggedScalar& u) { return tagged_equal(u, v); }))
                    both.push_back(v);
            const Constants c = constants_for(both, a.rate);
            assign_constants(a, c);
            assign_constants(b, c);
        }
        resolve_radii(out.first);
        resolve_radii(out.second);
        std::sort(out.pairs.begin(), out.pairs.end());
        return out;
    }

private:
    const std::string& code(int side, const std::vector<std::size_t>& s)
    {
        auto it = codes_[side].find(s);
        if (it != codes_[side].end())
            return it->second;
        ContactMatrix sub(s.size());
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b)
                sub.set(a, b, q_[side].at(s[a], s[b]));
        return codes_[side][s] = canonical_code(build_carrousel_tree(sub));
    }

    void insert_zero(int side, const std::vector<std::size_t>& s, const Rational& rate)
    {
        for (std::size_t i : s) {
            auto& terms = polys_[side][i].terms;
            auto pos = std::find_if(terms.begin(), terms.end(), [&](const PolyTerm& t) { return t.rate > rate; });
            terms.insert(pos, PolyTerm{rate, TaggedScalar(), true});
            insertions_.push_back({side + 1, polys_[side][i].sheet, rate});
        }
    }

    void match(std::vector<Group> g1, std::vector<Group> g2, const Rational& rate)
    {
        if (g1.size() != g2.size())
            throw InvariantError("carrousels of equivalent curves split differently at rate " + rate.to_string());
        std::vector<bool> used(g2.size(), false);
        for (const Group& a : g1) {
            const std::string& ca = code(0, a.sheets);
            std::optional<std::size_t> pick;
            for (int pass = 0; pass < 2 && !pick; ++pass)
                for (std::size_t j = 0; j < g2.size(); ++j) {
                    if (used[j] || code(1, g2[j].sheets) != ca)
                        continue;
                    if (pass == 0 && a.present != g2[j].present)
                        continue;
                    pick = j;
                    break;
                }
            if (!pick)
                throw InvariantError("no matching sheet group at rate " + rate.to_string());
            used[*pick] = true;
            const Group& b = g2[*pick];
            if (!a.present && b.present)
                insert_zero(0, a.sheets, rate);
            if (a.present && !b.present)
                insert_zero(1, b.sheets, rate);
            descend(a.sheets, b.sheets, rate);
        }
    }

    void descend(const std::vector<std::size_t>& s1, const std::vector<std::size_t>& s2, const Rational& p0)
    {
        const auto n1 = next_rate(polys_[0], s1, p0);
        const auto n2 = next_rate(polys_[1], s2, p0);
        if (!n1 && !n2)
            return;
        const Rational next = !n1 ? *n2 : (!n2 ? *n1 : std::min(*n1, *n2));
        match(group_at(polys_[0], s1, next), group_at(polys_[1], s2, next), next);
    }

    void pair_pieces(PiecePairing& out, std::size_t i, std::size_t j)
    {
        out.pairs.emplace_back(i, j);
        const Piece& a = out.first.pieces[i];
        const Piece& b = out.second.pieces[j];
        if (a.children.size() != b.children.size())
            throw InvariantError("piece trees differ after alignment");
        std::vector<bool> used(b.children.size(), false);
        for (std::size_t ca : a.children) {
            const std::string code_a = piece_code(out.first, ca);
            bool found = false;
            for (std::size_t k = 0; k < b.children.size(); ++k)
                if (!used[k] && piece_code(out.second, b.children[k]) == code_a) {
                    used[k] = true;
                    found = true;
                    pair_pieces(out, ca, b.children[k]);
                    break;
                }
            if (!found)
                throw InvariantError("piece trees differ after alignment");
        }
    }

    Curve curve_[2] = {Curve({Branch()}), Curve({Branch()})};
    DecompositionParams params_[2];
    std::vector<SheetPoly> polys_[2];
    ContactMatrix q_[2];
    std::map<std::vector<std::size_t>, std::string> codes_[2];
    std::vector<Insertion> insertions_;
};

}  // namespace

PiecePairing align_decompositions(const Curve& c1, const Curve& c2)
{
    if (!equivalent(c1, c2))
        throw InputError("not equivalent (" + explain_difference(c1, c2) + ")");
    return Aligner(c1, c2).run();
}

SectionReport check_section(const PieceDecomposition& d, double t)
{
    SectionReport r;
    r.t = t;
    auto scale = [t](const Rational& rate) { return std::pow(t, rate.to_double()); };

    for (std::size_t s = 0; s < d.sheets.size(); ++s) {
        const std::complex<double> y = d.sheets[s].evaluate(t);
        std::size_t inside = 0;
        bool own = false;
        for (const Piece& p : d.pieces)
            if (p.kind == PieceKind::D && std::abs(y - p.center_at(t)) <= p.radius.to_double() * scale(p.rate)) {
                ++inside;
                own = own || p.sheets.front() == s;
            }
        if (inside != 1 || !own)
            r.failures.push_back("sheet (" + std::to_string(d.sheets[s].sheet.branch + 1) + "," +
                                 std::to_string(d.sheets[s].sheet.k) + ") lies in " + std::to_string(inside) +
                                 " D-pieces");
    }

    const double R = d.params.R.to_double();
    const double eta = d.params.eta.to_double();
    for (std::size_t a = 0; a < d.slopes.size(); ++a) {
        if (std::abs(d.slopes[a]) + eta > R)
            r.failures.push_back("cone " + std::to_string(a) + " leaves the square ball");
        for (std::size_t b = a + 1; b < d.slopes.size(); ++b)
            if (std::abs(d.slopes[a] - d.slopes[b]) <= 2 * eta)
                r.failures.push_back("cones " + std::to_string(a) + " and " + std::to_string(b) + " meet");
    }

    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        const Piece& p = d.pieces[i];
        if (p.kind != PieceKind::A)
            continue;
        const Piece& b = d.pieces[p.children.front()];
        if (b.beta.to_double() * scale(b.rate) >= p.radius.to_double() * scale(p.outer_rate))
            r.failures.push_back("A-piece " + std::to_string(i) + " at rate " + p.rate.to_string() +
                                 " has crossing boundaries");
    }

    for (std::size_t i = 0; i < d.pieces.size(); ++i)
        for (std::size_t j = i + 1; j < d.pieces.size(); ++j) {
            const Piece& a = d.pieces[i];
            const Piece& b = d.pieces[j];
            if (a.kind != PieceKind::B || b.kind != PieceKind::B || a.rate != b.rate)
                continue;
            const double gap = std::abs(a.center_at(t) - b.center_at(t));
            if (gap <= (a.beta + b.beta).to_double() * scale(a.rate))
                r.failures.push_back("B-pieces " + std::to_string(i) + " and " + std::to_string(j) + " at rate " +
                                     a.rate.to_string() + " overlap");
        }
    return r;
}

std::optional<double> max_verified_t(const PieceDecomposition& d, int max_halvings)
{
    for (int k = 0; k <= max_halvings; ++k) {
        const double t = std::ldexp(d.params.eps0.to_double(), -k);
        if (check_section(d, t).ok())
            return t;
    }
    return std::nullopt;
}

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v == 0 ? 0.0 : v);
    return buf;
}

void circle(std::ostringstream& os, std::complex<double> c, double r, const std::string& cls, double stroke)
{
    os << "    <circle class=\"" << cls << "\" cx=\"" << num(c.real()) << "\" cy=\"" << num(-c.imag())
       << "\" r=\"" << num(r) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << num(stroke) << "\"/>\n";
}

}  // namespace

std::string render_section(const PieceDecomposition& d, const Rational& t)
{
    if (t.sign() <= 0 || t > d.params.eps0)
        throw InputError("section parameter t = " + t.to_string() + " outside (0, " + d.params.eps0.to_string() + "]");
    const double td = t.to_double();
    auto scale = [td](const Rational& rate) { return std::pow(td, rate.to_double()); };
    const double half = 1.05 * d.params.R.to_double() * td;
    const double stroke = half / 400;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\""
       << num(-half) << " " << num(-half) << " " << num(2 * half) << " " << num(2 * half) << "\">\n"
       << "  <desc>section x = " << t.to_string() << "</desc>\n";

    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        const Piece& p = d.pieces[i];
        os << "  <g class=\"piece\" data-id=\"" << i << "\" data-kind=\"" << to_string(p.kind) << "\" data-rate=\""
           << p.rate.to_string() << "\" data-sector=\"" << p.sector << "\" data-orbit=\"" << p.orbit << "\">\n";
        switch (p.kind) {
        case PieceKind::B1:
            circle(os, 0, d.params.R.to_double() * td, "ball", stroke);
            for (std::complex<double> s : d.slopes)
                circle(os, s * td, d.params.eta.to_double() * td, "cone", stroke);
            break;
        case PieceKind::A:
            circle(os, p.center_at(td), p.radius.to_double() * scale(p.outer_rate), "outer", stroke);
            circle(os, p.center_at(td), d.pieces[p.children.front()].beta.to_double() * scale(p.rate), "inner",
                   stroke);
            break;
        case PieceKind::B: {
            const std::complex<double> f = p.center_at(td);
            const double u = scale(p.rate);
            circle(os, f, p.beta.to_double() * u, "outer", stroke);
            if (!has_zero_hole(p))
                circle(os, f, p.alpha.to_double() * u, "inner", stroke);
            for (const TaggedScalar& a : p.coefficients)
                circle(os, f + a.to_complex() * u, p.gamma.to_double() * u, "hole", stroke);
            break;
        }
        case PieceKind::D:
            circle(os, p.center_at(td), p.radius.to_double() * scale(p.rate), "disk", stroke);
            break;
        }
        os << "  </g>\n";
    }

    for (const SheetPoly& s : d.sheets) {
        const std::complex<double> y = s.evaluate(td);
        os << "  <circle class=\"sheet\" data-branch=\"" << s.sheet.branch + 1 << "\" data-k=\"" << s.sheet.k
           << "\" cx=\"" << num(y.real()) << "\" cy=\"" << num(-y.imag()) << "\" r=\"" << num(stroke * 3)
           << "\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace curvelab
