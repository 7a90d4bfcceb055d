#include "curvelab/contact.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#include <omp.h>

namespace curvelab {

ContactMatrix::ContactMatrix(std::size_t size) : size_(size), q_(size * size, ExtendedRational::infinity()) {}

void ContactMatrix::set(std::size_t j, std::size_t k, const ExtendedRational& v)
{
    q_[j * size_ + k] = v;
    q_[k * size_ + j] = v;
}

ExtendedRational sheet_contact(const Curve& c, const Sheet& s1, const Sheet& s2)
{
    const Branch& a = c.branch(s1.branch);
    const Branch& b = c.branch(s2.branch);
    const std::int64_t grid = lcm64(a.n(), b.n());
    const std::int64_t fa = grid / a.n();
    const std::int64_t fb = grid / b.n();
    constexpr std::int64_t none = std::numeric_limits<std::int64_t>::max();

    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.terms().size() || j < b.terms().size()) {
        const std::int64_t ea = i < a.terms().size() ? checked_mul(a.terms()[i].exponent, fa) : none;
        const std::int64_t eb = j < b.terms().size() ? checked_mul(b.terms()[j].exponent, fb) : none;
        const std::int64_t e = std::min(ea, eb);
        TaggedScalar ta;
        TaggedScalar tb;
        if (ea == e) {
            const Term& t = a.terms()[i++];
            ta = TaggedScalar(t.coeff, RootOfUnityTag(a.n(), checked_mul(s1.k, t.exponent)));
        }
        if (eb == e) {
            const Term& t = b.terms()[j++];
            tb = TaggedScalar(t.coeff, RootOfUnityTag(b.n(), checked_mul(s2.k, t.exponent)));
        }
        if (!tagged_equal(ta, tb))
            return Rational(e, grid);
    }
    if (s1 == s2)
        return ExtendedRational::infinity();
    throw InputError("non-reduced curve (sheets of branches " + std::to_string(s1.branch + 1) + " and " +
                     std::to_string(s2.branch + 1) + " coincide)");
}

QMap q_map_serial(const Curve& c)
{
    QMap out{sheets(c), ContactMatrix(0)};
    const std::size_t mu = out.sheets.size();
    out.q = ContactMatrix(mu);
    for (std::size_t j = 0; j < mu; ++j)
        for (std::size_t k = j + 1; k < mu; ++k)
            out.q.set(j, k, sheet_contact(c, out.sheets[j], out.sheets[k]));
    return out;
}

QMap q_map(const Curve& c)
{
    QMap out{sheets(c), ContactMatrix(0)};
    const auto mu = static_cast<std::int64_t>(out.sheets.size());
    out.q = ContactMatrix(out.sheets.size());
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < mu; ++j) {
        for (std::int64_t k = j + 1; k < mu; ++k) {
            try {
                // Each (j,k) cell pair is written by exactly one iteration.
                out.q.set(j, k, sheet_contact(c, out.sheets[j], out.sheets[k]));
            } catch (...) {
#pragma omp critical(curvelab_qmap_failure)
                if (!failure)
                    failure = std::current_exception();
            }
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

Rational coincidence_exponent(const Curve& c, std::size_t b1, std::size_t b2)
{
    if (b1 == b2)
        throw std::invalid_argument("coincidence_exponent needs two distinct branches");
    std::optional<Rational> best;
    for (std::int64_t k1 = 0; k1 < c.branch(b1).n(); ++k1)
        for (std::int64_t k2 = 0; k2 < c.branch(b2).n(); ++k2) {
            const Rational q = sheet_contact(c, {b1, k1}, {b2, k2}).value();
            if (!best || q > *best)
                best = q;
        }
    return *best;
}

BigInt intersection_multiplicity(const Curve& c, std::size_t b1, std::size_t b2)
{
    if (b1 == b2)
        throw std::invalid_argument("intersection_multiplicity needs two distinct branches");
    Rational total{0};
    for (std::int64_t k1 = 0; k1 < c.branch(b1).n(); ++k1)
        for (std::int64_t k2 = 0; k2 < c.branch(b2).n(); ++k2)
            total += sheet_contact(c, {b1, k1}, {b2, k2}).value();
    if (!total.is_integer())
        throw InvariantError("intersection multiplicity " + total.to_string() + " is not an integer");
    return total.num();
}

namespace {

bool isosceles(const ExtendedRational& a, const ExtendedRational& b, const ExtendedRational& c)
{
    const ExtendedRational& m = std::min({a, b, c});
    return (a == m) + (b == m) + (c == m) >= 2;
}

void scan_row(const ContactMatrix& q, std::size_t j, std::vector<Triple>& out)
{
    const std::size_t mu = q.size();
    for (std::size_t k = j + 1; k < mu; ++k)
        for (std::size_t l = k + 1; l < mu; ++l)
            if (!isosceles(q.at(j, k), q.at(k, l), q.at(j, l)))
                out.push_back({j, k, l});
}

}  // namespace

std::vector<Triple> verify_ultrametric_serial(const ContactMatrix& q)
{
    std::vector<Triple> out;
    for (std::size_t j = 0; j < q.size(); ++j)
        scan_row(q, j, out);
    return out;
}

std::vector<Triple> verify_ultrametric(const ContactMatrix& q)
{
    const auto mu = static_cast<std::int64_t>(q.size());
    std::vector<std::vector<Triple>> rows(q.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < mu; ++j)
        scan_row(q, static_cast<std::size_t>(j), rows[j]);
    std::vector<Triple> out;
    for (auto& row : rows)
        out.insert(out.end(), row.begin(), row.end());
    return out;
}

}  // namespace curvelab
