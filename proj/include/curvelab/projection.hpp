#pragma once

// Space curve germs in C^N, genericity of linear projections to C^2 and the
// topology of the generic plane projection.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvelab/carrousel_tree.hpp"
#include "curvelab/puiseux.hpp"

namespace curvelab {

// gamma(w) = (w^n, p_2(w), ..., p_N(w)).
class SpaceBranch {
public:
    static SpaceBranch from_param(std::int64_t n, const std::vector<std::vector<Term>>& coordinates);

    [[nodiscard]] std::int64_t n() const { return n_; }
    // Ambient dimension N (coordinates counted including the first).
    [[nodiscard]] std::size_t dimension() const { return coords_.size() + 1; }
    // Coordinate j in 2..N.
    [[nodiscard]] const std::vector<Term>& coordinate(std::size_t j) const { return coords_.at(j - 2); }
    // a_{ji} with the convention a_{1n} = 1 and a_{1i} = 0 for i != n.
    [[nodiscard]] GaussianRational coefficient(std::size_t j, std::int64_t exponent) const;
    // Sorted union of the coordinate supports together with n.
    [[nodiscard]] std::vector<std::int64_t> support() const;

    friend bool operator==(const SpaceBranch&, const SpaceBranch&) = default;

private:
    std::int64_t n_ = 1;
    std::vector<std::vector<Term>> coords_;
};

std::vector<std::int64_t> essential_exponents(const SpaceBranch& b);

class SpaceCurve {
public:
    // All branches must share one ambient dimension; throws InputError for
    // coinciding branches.
    explicit SpaceCurve(std::vector<SpaceBranch> branches);

    [[nodiscard]] const std::vector<SpaceBranch>& branches() const { return branches_; }
    [[nodiscard]] std::size_t size() const { return branches_.size(); }
    [[nodiscard]] std::size_t dimension() const { return branches_.front().dimension(); }

private:
    std::vector<SpaceBranch> branches_;
};

SpaceCurve parse_space_curve(const std::string& text);
SpaceCurve embed(const Curve& c, std::size_t dimension);

// l(z) = (z_1, b_1 z_1 + ... + b_N z_N).
struct Direction {
    GaussianRational b1;
    std::vector<GaussianRational> b;  // b_2 .. b_N

    [[nodiscard]] std::string to_string() const;
};

struct GenericityVerdict {
    enum class Kind { Generic, FailsBranch, FailsPair };
    Kind kind = Kind::Generic;
    std::size_t branch = 0;        // FailsBranch, and first branch of FailsPair
    std::size_t other_branch = 0;  // FailsPair
    std::int64_t residue = 0;      // FailsPair: lambda = zeta_n^residue
    std::int64_t order = 1;        // FailsPair: n = lcm of the multiplicities
    std::int64_t exponent = 0;     // failing exponent (w-units of the relevant n)

    [[nodiscard]] bool generic() const { return kind == Kind::Generic; }
    [[nodiscard]] std::string to_string() const;
    friend bool operator==(const GenericityVerdict&, const GenericityVerdict&) = default;
};

GenericityVerdict is_generic(const SpaceCurve& c, const Direction& d);
Direction find_generic_direction(const SpaceCurve& c);

struct Projection {
    std::vector<Branch> branches;  // projected plane branches, in input order
    std::optional<Curve> curve;    // absent when the projection is not reduced
    GenericityVerdict verdict;
    std::vector<std::string> warnings;
};

Projection project(const SpaceCurve& c, const Direction& d);
CanonicalCode generic_projection_topology(const SpaceCurve& c);

}  // namespace curvelab
