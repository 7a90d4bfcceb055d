#include "curvelab/puiseux.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "curvelab/contact.hpp"

namespace curvelab {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line), column_(column)
{
}

// ---------------------------------------------------------------------------
// Branch

Branch Branch::from_param(std::int64_t n, std::span<const Term> terms)
{
    if (n < 1)
        throw InputError("multiplicity must be a positive integer");
    std::map<std::int64_t, GaussianRational> merged;
    for (const Term& t : terms)
        merged[t.exponent] += t.coeff;

    Branch b;
    std::int64_t g = n;
    for (auto& [exponent, coeff] : merged) {
        if (coeff.is_zero())
            continue;
        if (exponent < n)
            throw InputError("tangent to y-axis (exponent " + Rational(exponent, n).to_string() + " < 1)");
        g = std::gcd(g, exponent);
        b.terms_.push_back({exponent, coeff});
    }
    b.n_ = n / g;
    for (Term& t : b.terms_)
        t.exponent /= g;
    return b;
}

Branch Branch::from_series(std::span<const SeriesTerm> terms)
{
    std::int64_t n = 1;
    for (const SeriesTerm& t : terms) {
        if (t.coeff.is_zero())
            continue;
        if (!t.exponent.den().fits_slong_p())
            throw InputError("exponent denominator too large");
        n = lcm64(n, t.exponent.den().get_si());
    }
    std::vector<Term> converted;
    for (const SeriesTerm& t : terms) {
        if (t.coeff.is_zero())
            continue;
        const Rational scaled = t.exponent * Rational(n);
        if (scaled.sign() < 0 || !scaled.num().fits_slong_p())
            throw InputError("tangent to y-axis (exponent " + t.exponent.to_string() + " < 1)");
        converted.push_back({scaled.num().get_si(), t.coeff});
    }
    return from_param(n, converted);
}

GaussianRational Branch::coefficient(std::int64_t exponent) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, std::int64_t e) { return t.exponent < e; });
    if (it != terms_.end() && it->exponent == exponent)
        return it->coeff;
    return {};
}

TaggedScalar Branch::sheet_coefficient(std::int64_t k, std::int64_t exponent) const
{
    const GaussianRational c = coefficient(exponent);
    if (c.is_zero())
        return {};
    return {c, RootOfUnityTag(n_, checked_mul(mod64(k, n_), mod64(exponent, n_)))};
}

bool same_branch(const Branch& a, const Branch& b)
{
    if (a.n() != b.n() || a.terms().size() != b.terms().size())
        return false;
    for (std::size_t t = 0; t < a.terms().size(); ++t)
        if (a.terms()[t].exponent != b.terms()[t].exponent)
            return false;
    for (std::int64_t k = 0; k < a.n(); ++k) {
        bool all = true;
        for (const Term& t : a.terms()) {
            if (!tagged_equal(a.sheet_coefficient(k, t.exponent), TaggedScalar(b.coefficient(t.exponent)))) {
                all = false;
                break;
            }
        }
        if (all)
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Curve

Curve::Curve(std::vector<Branch> branches) : branches_(std::move(branches))
{
    if (branches_.empty())
        throw InputError("curve has no branches");
    for (std::size_t a = 0; a < branches_.size(); ++a)
        for (std::size_t b = a + 1; b < branches_.size(); ++b)
            if (same_branch(branches_[a], branches_[b]))
                throw InputError("non-reduced curve (branches " + std::to_string(a + 1) + " and " +
                                 std::to_string(b + 1) + " coincide)");
}

std::int64_t Curve::multiplicity() const
{
    std::int64_t mu = 0;
    for (const Branch& b : branches_)
        mu = checked_add(mu, b.n());
    return mu;
}

std::vector<Sheet> sheets(const Curve& c)
{
    std::vector<Sheet> out;
    for (std::size_t b = 0; b < c.size(); ++b)
        for (std::int64_t k = 0; k < c.branch(b).n(); ++k)
            out.push_back({b, k});
    return out;
}

// ---------------------------------------------------------------------------
// Exponents

std::vector<std::int64_t> essential_exponents(std::int64_t n, std::span<const std::int64_t> support)
{
    std::vector<std::int64_t> sorted(support.begin(), support.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::int64_t> out;
    std::int64_t g = n;
    for (std::int64_t i : sorted) {
        if (i == n)
            continue;
        const std::int64_t next = std::gcd(g, i);
        if (next < g)
            out.push_back(i);
        g = next;
    }
    return out;
}

std::vector<std::int64_t> essential_exponents(const Branch& b)
{
    std::vector<std::int64_t> support;
    for (const Term& t : b.terms())
        support.push_back(t.exponent);
    return essential_exponents(b.n(), support);
}

std::vector<Rational> characteristic_exponents(const Branch& b)
{
    std::vector<Rational> out;
    for (std::int64_t i : essential_exponents(b))
        out.emplace_back(i, b.n());
    return out;
}

Branch truncate_branch(const Branch& b, const Rational& cut)
{
    std::vector<Term> kept;
    for (const Term& t : b.terms())
        if (Rational(t.exponent, b.n()) <= cut)
            kept.push_back(t);
    return Branch::from_param(b.n(), kept);
}

Rational truncation_exponent(const Curve& c, std::size_t branch)
{
    Rational best{1};
    for (const Rational& e : characteristic_exponents(c.branch(branch)))
        best = std::max(best, e);
    for (std::size_t other = 0; other < c.size(); ++other)
        if (other != branch)
            best = std::max(best, coincidence_exponent(c, branch, other));
    return best;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Monomial {
    GaussianRational coeff{1};
    Rational exponent{0};
    bool has_var = false;
};

class LineParser {
public:
    LineParser(const std::string& text, std::size_t line) : s_(text), line_(line) {}

    RawBranch parse()
    {
        RawBranch raw;
        raw.line = line_;
        skip_ws();
        if (accept_word("y")) {
            expect('=');
            std::vector<SeriesTerm> series;
            for (const Monomial& m : parse_sum('x'))
                series.push_back({m.exponent, m.coeff});
            raw = to_raw(series);
        } else if (accept_word("param")) {
            expect('(');
            skip_ws();
            if (!accept_char('w'))
                error("expected 'w^n' as first coordinate");
            raw.n = 1;
            skip_ws();
            if (accept_char('^'))
                raw.n = parse_nat_exponent();
            if (raw.n < 1)
                error("multiplicity must be positive");
            skip_ws();
            while (accept_char(',')) {
                std::vector<Term> coord;
                for (const Monomial& m : parse_sum('w')) {
                    if (!m.exponent.is_integer() || m.exponent.sign() < 0)
                        error("w-exponents must be natural numbers");
                    coord.push_back({m.exponent.num().get_si(), m.coeff});
                }
                raw.coordinates.push_back(std::move(coord));
                skip_ws();
            }
            expect(')');
            if (raw.coordinates.empty())
                error("param needs at least one polynomial coordinate");
        } else {
            error("expected 'y =' or 'param ('");
        }
        skip_ws();
        if (pos_ != s_.size())
            error("unexpected trailing input");
        raw.line = line_;
        return raw;
    }

private:
    RawBranch to_raw(const std::vector<SeriesTerm>& series)
    {
        RawBranch raw;
        std::int64_t n = 1;
        for (const SeriesTerm& t : series)
            if (!t.coeff.is_zero())
                n = lcm64(n, t.exponent.den().get_si());
        std::vector<Term> coord;
        for (const SeriesTerm& t : series) {
            if (t.coeff.is_zero())
                continue;
            const Rational scaled = t.exponent * Rational(n);
            coord.push_back({scaled.num().get_si(), t.coeff});
        }
        raw.n = n;
        raw.coordinates.push_back(std::move(coord));
        return raw;
    }

    [[noreturn]] void error(const std::string& what) const { throw ParseError(line_, pos_ + 1, what); }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool accept_char(char c)
    {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept_char(c))
            error(std::string("expected '") + c + "'");
    }

    bool accept_word(const std::string& w)
    {
        skip_ws();
        if (s_.compare(pos_, w.size(), w) != 0)
            return false;
        const std::size_t end = pos_ + w.size();
        if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end])))
            return false;
        pos_ = end;
        return true;
    }

    BigInt parse_digits()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            error("expected a number");
        return BigInt(s_.substr(start, pos_ - start), 10);
    }

    // int [ "/" nat ]
    Rational parse_number()
    {
        BigInt num = parse_digits();
        if (peek('/')) {
            ++pos_;
            BigInt den = parse_digits();
            if (den == 0)
                error("zero denominator");
            return Rational(num, den);
        }
        return Rational(num, BigInt(1));
    }

    std::int64_t parse_nat_exponent()
    {
        const bool paren = accept_char('(');
        BigInt v = parse_digits();
        if (paren)
            expect(')');
        if (!v.fits_slong_p())
            error("exponent too large");
        return v.get_si();
    }

    Rational parse_exponent()
    {
        if (accept_char('(')) {
            bool negative = false;
            if (accept_char('-'))
                negative = true;
            else
                accept_char('+');
            Rational r = parse_number();
            expect(')');
            return negative ? -r : r;
        }
        return parse_number();
    }

    bool starts_factor(char var)
    {
        skip_ws();
        if (pos_ >= s_.size())
            return false;
        const char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'i' || c == var;
    }

    Monomial parse_factor(char var)
    {
        skip_ws();
        if (pos_ >= s_.size())
            error("unexpected end of line");
        const char c = s_[pos_];
        Monomial m;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            m.coeff = parse_number();
        } else if (c == 'i') {
            ++pos_;
            m.coeff = GaussianRational::i();
        } else if (c == '(') {
            ++pos_;
            std::vector<Monomial> inner = parse_sum(0);
            expect(')');
            GaussianRational total;
            for (const Monomial& t : inner)
                total += t.coeff;
            m.coeff = total;
        } else if (var != 0 && c == var) {
            ++pos_;
            m.has_var = true;
            m.exponent = 1;
            if (accept_char('^'))
                m.exponent = var == 'x' ? parse_exponent() : Rational(parse_nat_exponent());
        } else {
            error(std::string("unexpected character '") + c + "'");
        }
        return m;
    }

    Monomial parse_term(char var)
    {
        Monomial term = parse_factor(var);
        for (;;) {
            if (accept_char('*')) {
                // explicit product
            } else if (!starts_factor(var)) {
                break;
            }
            Monomial f = parse_factor(var);
            if (f.has_var && term.has_var)
                error("repeated variable in a term");
            term.coeff *= f.coeff;
            if (f.has_var) {
                term.has_var = true;
                term.exponent = f.exponent;
            }
        }
        return term;
    }

    // var == 0 parses a pure coefficient expression.
    std::vector<Monomial> parse_sum(char var)
    {
        std::vector<Monomial> out;
        bool negative = false;
        if (accept_char('-'))
            negative = true;
        else
            accept_char('+');
        for (;;) {
            Monomial t = parse_term(var);
            if (negative)
                t.coeff = -t.coeff;
            out.push_back(std::move(t));
            if (accept_char('+'))
                negative = false;
            else if (accept_char('-'))
                negative = true;
            else
                break;
        }
        return out;
    }

    const std::string& s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<RawBranch> parse_raw(const std::string& text)
{
    std::vector<RawBranch> out;
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (std::all_of(line.begin(), line.end(), [](unsigned char ch) { return std::isspace(ch); }))
            continue;
        out.push_back(LineParser(line, number).parse());
    }
    if (out.empty())
        throw ParseError(number == 0 ? 1 : number, 1, "no branches in input");
    return out;
}

Curve parse_curve(const std::string& text)
{
    std::vector<Branch> branches;
    for (const RawBranch& raw : parse_raw(text)) {
        if (raw.coordinates.size() != 1)
            throw InputError("line " + std::to_string(raw.line) +
                             ": space-curve branch in a plane-curve input (use projection)");
        try {
            branches.push_back(Branch::from_param(raw.n, raw.coordinates.front()));
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(raw.line) + ": " + e.what());
        }
    }
    return Curve(std::move(branches));
}

namespace {

std::string render_coefficient_prefix(const GaussianRational& c, bool first)
{
    // Returns the sign-and-coefficient prefix of a term, "" meaning coefficient 1.
    std::string s;
    if (c.is_real()) {
        const Rational& r = c.re();
        if (r.sign() < 0)
            s = first ? "-" : " - ";
        else if (!first)
            s = " + ";
        const Rational a = abs(r);
        if (a != Rational{1})
            s += a.to_string() + "*";
        return s;
    }
    if (!first)
        s = " + ";
    std::string inner = c.re().is_zero() ? "" : c.re().to_string();
    if (!c.re().is_zero())
        inner += c.im().sign() < 0 ? "-" : "+";
    else if (c.im().sign() < 0)
        inner += "-";
    inner += abs(c.im()).to_string() + "i";
    return s + "(" + inner + ")*";
}

}  // namespace

std::string render_branch(const Branch& b)
{
    if (b.terms().empty())
        return "y = 0";
    std::string s = "y = ";
    bool first = true;
    for (const Term& t : b.terms()) {
        s += render_coefficient_prefix(t.coeff, first);
        first = false;
        const Rational e(t.exponent, b.n());
        s += e == Rational{1} ? "x" : "x^(" + e.to_string() + ")";
    }
    return s;
}

std::string render_curve(const Curve& c)
{
    std::string s;
    for (const Branch& b : c.branches())
        s += render_branch(b) + "\n";
    return s;
}

}  // namespace curvelab
