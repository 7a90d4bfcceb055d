#pragma once

// Carrousel decomposition of a small ball around the singular point of a
// plane curve: B-, A-, D- and B(1)-pieces with explicit rates and
// constants, alignment of the decompositions of two equivalent curves, and
// vector-graphic renderings of the sections {x = t}.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvelab/puiseux.hpp"

namespace curvelab {

struct DecompositionParams {
    Rational eps0{1, 4};  // outer radius
    Rational eta{1, 4};   // cone half-width
    Rational R{2};        // square ball |y| <= R |x|
    std::int64_t shear = 0;  // lambda in (x, y) -> (x, y + lambda x) applied before decomposing
};

struct DecomposeOptions {
    bool auto_shear = true;
    bool truncate = true;
};

// One term c x^rate of a sheet polynomial. `inserted` marks a zero term
// added to match an inessential term of a partner curve.
struct PolyTerm {
    Rational rate;
    TaggedScalar coeff;
    bool inserted = false;
};

struct SheetPoly {
    Sheet sheet;
    std::vector<PolyTerm> terms;  // increasing rates

    [[nodiscard]] std::complex<double> evaluate(double t) const;
};

enum class PieceKind { B1, A, B, D };
std::string to_string(PieceKind k);

struct Piece {
    PieceKind kind = PieceKind::B1;
    std::size_t sector = 0;
    // Polynomial f all section circles are centered on (terms below `rate`
    // for B-pieces, the full sheet polynomial for D-pieces).
    std::vector<PolyTerm> center;
    Rational rate{1};
    // A: outer boundary radius * t^outer_rate. D: disk radius * t^rate.
    Rational outer_rate{1};
    Rational radius{0};
    // B: hole centers a_{k nu}; alpha < |a| - gamma < |a| + gamma < beta.
    std::vector<TaggedScalar> coefficients;
    Rational alpha{0};
    Rational beta{0};
    Rational gamma{0};
    bool center_occupied = false;  // B: some sheets continue inside the alpha-disk
    bool in_center = false;        // A/D: region inside the parent's alpha-disk
    std::vector<std::size_t> sheets;  // indices into PieceDecomposition::sheets
    std::size_t orbit = 0;            // conjugacy orbit id (per kind)
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;

    [[nodiscard]] std::complex<double> center_at(double t) const;
};

struct PieceDecomposition {
    Curve curve{{Branch()}};  // the curve actually decomposed (after truncation and shear)
    DecompositionParams params;
    std::vector<SheetPoly> sheets;
    std::vector<std::complex<double>> slopes;  // sector tangent slopes
    std::vector<Piece> pieces;                 // piece 0 is B(1)

    [[nodiscard]] std::size_t count(PieceKind k) const;
};

// Sheared and/or truncated working curve with the default parameters.
std::pair<Curve, DecompositionParams> prepare(const Curve& c, const DecomposeOptions& o = {});
DecompositionParams default_params(const Curve& sheared);

PieceDecomposition decompose(const Curve& c, const DecomposeOptions& o = {});
// Decomposes `c` as given with explicit parameters; throws InputError when
// a tangent line is the x-axis.
PieceDecomposition decompose(const Curve& c, const DecompositionParams& p);

// "B(1) x1, B x4 (3/2 [2 holes], 13/6 [3 holes] x2, 7/3 [3 holes]), A x4, D x9"
std::string inventory(const PieceDecomposition& d);
// Code of the piece tree forgetting constants and coefficients.
std::string structure_code(const PieceDecomposition& d);

struct Insertion {
    int side;  // 1 or 2
    Sheet sheet;
    Rational rate;
};

struct PiecePairing {
    PieceDecomposition first;
    PieceDecomposition second;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<Insertion> insertions;
};

// Throws InputError("not equivalent (...)") unless equivalent(c1, c2).
PiecePairing align_decompositions(const Curve& c1, const Curve& c2);

struct SectionReport {
    double t = 0;
    std::vector<std::string> failures;
    [[nodiscard]] bool ok() const { return failures.empty(); }
};

// Numeric consistency of the section {x = t}: each sheet point in exactly
// one D-disk, nested boundaries, disjoint same-rate B-pieces.
SectionReport check_section(const PieceDecomposition& d, double t);
// Largest t = eps0 / 2^k (k <= max_halvings) passing check_section.
std::optional<double> max_verified_t(const PieceDecomposition& d, int max_halvings = 40);

// SVG 1.1 drawing of the section {x = t}; requires 0 < t <= eps0.
std::string render_section(const PieceDecomposition& d, const Rational& t);

}  // namespace curvelab
