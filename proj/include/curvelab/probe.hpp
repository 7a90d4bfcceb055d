#pragma once

// Floating-point experiments on the sections {x = t}: sampled sheet points,
// contact exponents by log-log regression, tree recovery from distances
// alone, and distance ratios under the parametrization-matching map.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "curvelab/carrousel_tree.hpp"
#include "curvelab/contact.hpp"

namespace curvelab {

struct SampleGrid {
    std::vector<double> t;  // strictly decreasing, positive

    // count points geometrically spaced from t_max down to t_min.
    static SampleGrid geometric(double t_max = 1e-2, double t_min = 1e-4, std::size_t count = 20);
    // Throws InputError unless strictly decreasing and positive.
    void validate() const;
};

// Sheet points in the order of sheets(c).
std::vector<std::complex<double>> sample_points(const Curve& c, double t);
// points[i] = sample_points(c, g.t[i]).
std::vector<std::vector<std::complex<double>>> sample_grid(const Curve& c, const SampleGrid& g);

struct QMapEstimate {
    std::size_t size = 0;
    std::vector<double> slope;     // size x size, +inf on the diagonal and for coincident points
    std::vector<double> residual;  // sum of squared residuals per pair
    std::vector<std::size_t> used; // grid points surviving the underflow guard
    double residual_sum = 0;

    [[nodiscard]] double at(std::size_t j, std::size_t k) const { return slope[j * size + k]; }
};

// Least-squares slope of log d(p_j, p_k) against log t. Pairs whose
// distance drops below 1e-300 are fitted on the surviving prefix.
QMapEstimate estimate_from_points(const std::vector<std::vector<std::complex<double>>>& points, const SampleGrid& g);
QMapEstimate estimate_from_points_serial(const std::vector<std::vector<std::complex<double>>>& points,
                                         const SampleGrid& g);
QMapEstimate estimate_qmap(const Curve& c, const SampleGrid& g);
QMapEstimate estimate_qmap_serial(const Curve& c, const SampleGrid& g);

// Best rational approximation with denominator <= bound.
Rational best_rational(double x, long bound);
// Last continued-fraction convergent with denominator <= bound; coarser than
// best_rational and therefore stable under small perturbations of x.
Rational convergent_rational(double x, long bound);

struct RecoveredTree {
    ContactMatrix q;  // rounded exponents
    CarrouselTree tree;
};

// Points must be listed in the same sheet order for every t. Throws
// InvariantError listing offending triples when the rounded matrix is not
// ultrametric.
RecoveredTree recover_tree_numeric(const std::vector<std::vector<std::complex<double>>>& points, const SampleGrid& g,
                                   long denominator_bound = 24);

struct RatioPair {
    std::size_t branch1 = 0;
    std::size_t branch2 = 0;
    std::int64_t j = 0;  // sheet indices on both branches
    std::int64_t l = 0;
    Rational i0;         // first exponent separating sheets j and l
    double predicted = 0;
    double fitted = 0;
    double min = 0;
    double max = 0;
    std::vector<double> ratios;  // one per grid point
};

struct RatioStats {
    std::vector<RatioPair> pairs;
};

// pairing[b] is the branch of c2 matched with branch b of c1; matched
// branches must share n and essential exponents. Sheets are paired through
// the common parameter: gamma_1(w) -> gamma_2(w).
RatioStats bilipschitz_ratio_experiment(const Curve& c1, const Curve& c2, const std::vector<std::size_t>& pairing,
                                        const SampleGrid& g);

// Header "kind,t,sheet_j,sheet_k,value"; "distance" rows per grid point,
// then "slope" rows with an empty t column.
std::string distances_csv(const std::vector<Sheet>& sheets,
                          const std::vector<std::vector<std::complex<double>>>& points, const SampleGrid& g,
                          const QMapEstimate& est);
// "t,branch1,branch2,j,l,ratio" rows.
std::string ratios_csv(const RatioStats& stats, const SampleGrid& g);

}  // namespace curvelab
