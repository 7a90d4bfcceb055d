#include "curvelab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>

namespace curvelab {

SampleGrid SampleGrid::geometric(double t_max, double t_min, std::size_t count)
{
    if (count < 2 || !(t_min > 0) || !(t_max > t_min))
        throw InputError("grid needs 0 < t_min < t_max and at least two points");
    SampleGrid g;
    const double ratio = std::log(t_min / t_max) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        g.t.push_back(i + 1 == count ? t_min : t_max * std::exp(ratio * static_cast<double>(i)));
    return g;
}

void SampleGrid::validate() const
{
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0) || !std::isfinite(t[i]))
            throw InputError("grid values must be positive");
        if (i > 0 && !(t[i] < t[i - 1]))
            throw InputError("grid values must be strictly decreasing");
    }
}

std::vector<std::complex<double>> sample_points(const Curve& c, double t)
{
    std::vector<std::complex<double>> out;
    for (const Sheet& s : sheets(c)) {
        const Branch& b = c.branch(s.branch);
        std::complex<double> y = 0;
        for (const Term& term : b.terms())
            y += b.sheet_coefficient(s.k, term.exponent).to_complex() *
                 std::pow(t, static_cast<double>(term.exponent) / static_cast<double>(b.n()));
        out.push_back(y);
    }
    return out;
}

std::vector<std::vector<std::complex<double>>> sample_grid(const Curve& c, const SampleGrid& g)
{
    std::vector<std::vector<std::complex<double>>> out;
    for (double t : g.t)
        out.push_back(sample_points(c, t));
    return out;
}

namespace {

constexpr double underflow_floor = 1e-300;

struct Fit {
    double slope;
    double residual;
    std::size_t used;
};

Fit fit_pair(const std::vector<std::vector<std::complex<double>>>& points, const SampleGrid& g, std::size_t j,
             std::size_t k)
{
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        const double d = std::abs(points[i][j] - points[i][k]);
        if (!(d >= underflow_floor))
            break;
        xs.push_back(std::log(g.t[i]));
        ys.push_back(std::log(d));
    }
    if (xs.size() < 2)
        return {std::numeric_limits<double>::infinity(), 0, xs.size()};
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (my + slope * (xs[i] - mx));
        res += e * e;
    }
    return {slope, res, xs.size()};
}

QMapEstimate prepare_estimate(const std::vector<std::vector<std::complex<double>>>& points, const SampleGrid& g)
{
    g.validate();
    if (g.t.size() < 3)
        throw InputError("grid needs at least 3 points");
    if (points.size() != g.t.size())
        throw InputError("one point list per grid value required");
    const std::size_t mu = points.front().size();
    for (const auto& row : points)
        if (row.size() != mu)
            throw InputError("point counts differ across the grid");
    QMapEstimate e;
    e.size = mu;
    e.slope.assign(mu * mu, std::numeric_limits<double>::infinity());
    e.residual.assign(mu * mu, 0.0);
    e.used.assign(mu * mu, 0);
    return e;
}

void store(QMapEstimate& e, std::size_t j, std::size_t k, const Fit& f)
{
    e.slope[j * e.size + k] = e.slope[k * e.size + j] = f.slope;
    e.residual[j * e.size + k] = e.residual[k * e.size + j] = f.residual;
    e.used[j * e.size + k] = e.used[k * e.size + j] = f.used;
}

void total_residual(QMapEstimate& e)
{
    e.residual_sum = 0;
    for (std::size_t j = 0; j < e.size; ++j)
        for (std::size_t k = j + 1; k < e.size; ++k)
            e.residual_sum += e.residual[j * e.size + k];
}

}  // namespace

QMapEstimate estimate_from_points_serial(const std::vector<std::vector<std::complex<double>>>& points,
                                         const SampleGrid& g)
{
    QMapEstimate e = prepare_estimate(points, g);
    for (std::size_t j = 0; j < e.size; ++j)
        for (std::size_t k = j + 1; k < e.size; ++k)
            store(e, j, k, fit_pair(points, g, j, k));
    total_residual(e);
    return e;
}

QMapEstimate estimate_from_points(const std::vector<std::vector<std::complex<double>>>& points, const SampleGrid& g)
{
    QMapEstimate e = prepare_estimate(points, g);
    const auto mu = static_cast<std::int64_t>(e.size);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < mu; ++j)
        for (std::int64_t k = j + 1; k < mu; ++k)
            store(e, static_cast<std::size_t>(j), static_cast<std::size_t>(k),
                  fit_pair(points, g, static_cast<std::size_t>(j), static_cast<std::size_t>(k)));
    total_residual(e);
    return e;
}

QMapEstimate estimate_qmap(const Curve& c, const SampleGrid& g) { return estimate_from_points(sample_grid(c, g), g); }

QMapEstimate estimate_qmap_serial(const Curve& c, const SampleGrid& g)
{
    return estimate_from_points_serial(sample_grid(c, g), g);
}

namespace {

Rational continued_fraction_round(double x, long bound, bool semiconvergents)
{
    if (bound < 1)
        throw InputError("denominator bound must be at least 1");
    if (!std::isfinite(x))
        throw InputError("cannot round a non-finite value");
    // Convergents h/k of the continued fraction, then the best semiconvergent.
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(r);
        const long a = static_cast<long>(fl);
        const long k2 = a * k1 + k0;
        if (k2 > bound) {
            const long amax = (bound - k0) / k1;
            const Rational last(h1, k1);
            if (amax == 0 || !semiconvergents)
                return last;
            const Rational semi(amax * h1 + h0, amax * k1 + k0);
            return std::abs(semi.to_double() - x) < std::abs(last.to_double() - x) ? semi : last;
        }
        const long h2 = a * h1 + h0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        const double frac = r - fl;
        if (frac < 1e-12)
            break;
        r = 1.0 / frac;
    }
    return Rational(h1, k1);
}

}  // namespace

Rational best_rational(double x, long bound) { return continued_fraction_round(x, bound, true); }

Rational convergent_rational(double x, long bound) { return continued_fraction_round(x, bound, false); }

RecoveredTree recover_tree_numeric(const std::vector<std::vector<std::complex<double>>>& points, const SampleGrid& g,
                                   long denominator_bound)
{
    const QMapEstimate e = estimate_from_points(points, g);
    RecoveredTree out{ContactMatrix(e.size), {}};
    for (std::size_t j = 0; j < e.size; ++j)
        for (std::size_t k = j + 1; k < e.size; ++k) {
            const double s = e.at(j, k);
            out.q.set(j, k, std::isfinite(s) ? ExtendedRational(convergent_rational(s, denominator_bound))
                                             : ExtendedRational::infinity());
        }
    if (const auto bad = verify_ultrametric(out.q); !bad.empty()) {
        std::string list;
        for (std::size_t i = 0; i < bad.size() && i < 5; ++i)
            list += (i ? " " : "") + std::to_string(bad[i][0]) + "," + std::to_string(bad[i][1]) + "," +
                    std::to_string(bad[i][2]);
        throw InvariantError("rounded exponents are not ultrametric (" + std::to_string(bad.size()) +
                             " triples: " + list + ")");
    }
    out.tree = build_carrousel_tree(out.q);
    return out;
}

namespace {

Rational first_separating_exponent(const Branch& a, const Branch& b, std::int64_t j, std::int64_t l)
{
    std::vector<std::int64_t> support;
    for (const Term& t : a.terms())
        support.push_back(t.exponent);
    for (const Term& t : b.terms())
        support.push_back(t.exponent);
    std::sort(support.begin(), support.end());
    const std::int64_t n = a.n();
    for (std::int64_t i : support)
        if (mod64(checked_mul(j - l, i), n) != 0)
            return Rational(i, n);
    throw InvariantError("sheets are not separated");
}

}  // namespace

RatioStats bilipschitz_ratio_experiment(const Curve& c1, const Curve& c2, const std::vector<std::size_t>& pairing,
                                        const SampleGrid& g)
{
    g.validate();
    if (g.t.empty())
        throw InputError("empty grid");
    if (pairing.size() != c1.size())
        throw InputError("invalid pairing: one partner per branch of the first curve required");
    std::vector<std::size_t> sorted = pairing;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || (!sorted.empty() && sorted.back() >= c2.size()))
        throw InputError("invalid pairing: partners must be distinct branches of the second curve");

    RatioStats stats;
    for (std::size_t b1 = 0; b1 < c1.size(); ++b1) {
        const Branch& a = c1.branch(b1);
        const Branch& b = c2.branch(pairing[b1]);
        if (a.n() != b.n() || essential_exponents(a) != essential_exponents(b))
            throw InputError("invalid pairing: branch " + std::to_string(b1 + 1) + " and branch " +
                             std::to_string(pairing[b1] + 1) + " differ in multiplicity or essential exponents");
        const Curve one_a({a});
        const Curve one_b({b});
        const auto pa = sample_grid(one_a, g);
        const auto pb = sample_grid(one_b, g);
        for (std::int64_t j = 0; j < a.n(); ++j)
            for (std::int64_t l = j + 1; l < a.n(); ++l) {
                RatioPair rp;
                rp.branch1 = b1;
                rp.branch2 = pairing[b1];
                rp.j = j;
                rp.l = l;
                rp.i0 = first_separating_exponent(a, b, j, l);
                const std::int64_t i0 = (rp.i0 * Rational(a.n())).num().get_si();
                const double na = std::abs(a.coefficient(i0).to_complex());
                const double nb = std::abs(b.coefficient(i0).to_complex());
                rp.predicted = nb == 0 ? std::numeric_limits<double>::infinity() : na / nb;
                for (std::size_t i = 0; i < g.t.size(); ++i) {
                    const auto ju = static_cast<std::size_t>(j);
                    const auto lu = static_cast<std::size_t>(l);
                    rp.ratios.push_back(std::abs(pa[i][ju] - pa[i][lu]) / std::abs(pb[i][ju] - pb[i][lu]));
                }
                rp.fitted = rp.ratios.back();
                rp.min = *std::min_element(rp.ratios.begin(), rp.ratios.end());
                rp.max = *std::max_element(rp.ratios.begin(), rp.ratios.end());
                stats.pairs.push_back(std::move(rp));
            }
    }
    return stats;
}

namespace {

std::string g6(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string sheet_label(const Sheet& s) { return std::to_string(s.branch + 1) + ":" + std::to_string(s.k); }

}  // namespace

std::string distances_csv(const std::vector<Sheet>& sheets, const std::vector<std::vector<std::complex<double>>>& points,
                          const SampleGrid& g, const QMapEstimate& est)
{
    std::ostringstream os;
    os << "kind,t,sheet_j,sheet_k,value\n";
    for (std::size_t i = 0; i < g.t.size(); ++i)
        for (std::size_t j = 0; j < sheets.size(); ++j)
            for (std::size_t k = j + 1; k < sheets.size(); ++k)
                os << "distance," << g6(g.t[i]) << "," << sheet_label(sheets[j]) << "," << sheet_label(sheets[k])
                   << "," << g6(std::abs(points[i][j] - points[i][k])) << "\n";
    for (std::size_t j = 0; j < sheets.size(); ++j)
        for (std::size_t k = j + 1; k < sheets.size(); ++k)
            os << "slope,," << sheet_label(sheets[j]) << "," << sheet_label(sheets[k]) << "," << g6(est.at(j, k))
               << "\n";
    return os.str();
}

std::string ratios_csv(const RatioStats& stats, const SampleGrid& g)
{
    std::ostringstream os;
    os << "t,branch1,branch2,j,l,ratio\n";
    for (const RatioPair& p : stats.pairs)
        for (std::size_t i = 0; i < g.t.size(); ++i)
            os << g6(g.t[i]) << "," << p.branch1 + 1 << "," << p.branch2 + 1 << "," << p.j << "," << p.l << ","
               << g6(p.ratios[i]) << "\n";
    return os.str();
}

}  // namespace curvelab
