#pragma once

// Plane and space curve germs given by primitive Puiseux parametrizations
// gamma(w) = (w^n, sum a_i w^i) with Gaussian-rational coefficients.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvelab/scalar.hpp"

namespace curvelab {

// Bad input: syntax errors, tangency to the y-axis, non-reduced curves.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// A broken internal invariant (ultrametric violation, non-integral
// intersection multiplicity, ...). Indicates a bug or out-of-scope input.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Term {
    std::int64_t exponent;  // in w-units
    GaussianRational coeff;
    friend bool operator==(const Term&, const Term&) = default;
};

// A term y = c x^e before normalization.
struct SeriesTerm {
    Rational exponent;  // in x-units
    GaussianRational coeff;
};

class Branch {
public:
    // The branch y = 0.
    Branch() = default;

    // Normalizes: merges equal exponents, drops zero coefficients, rejects
    // exponents below n, divides out gcd(n, exponents).
    static Branch from_param(std::int64_t n, std::span<const Term> terms);
    static Branch from_series(std::span<const SeriesTerm> terms);

    [[nodiscard]] std::int64_t n() const { return n_; }
    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
    [[nodiscard]] GaussianRational coefficient(std::int64_t exponent) const;
    // Coefficient of x^1, i.e. the slope of the tangent line.
    [[nodiscard]] GaussianRational tangent_slope() const { return coefficient(n_); }
    // Coefficient a_i zeta_n^{k i} of x^{i/n} on sheet k.
    [[nodiscard]] TaggedScalar sheet_coefficient(std::int64_t k, std::int64_t exponent) const;

    friend bool operator==(const Branch&, const Branch&) = default;

private:
    std::int64_t n_ = 1;
    std::vector<Term> terms_;
};

// Same branch up to the choice of n-th root: same n and a'_i = a_i zeta_n^{k i}.
bool same_branch(const Branch& a, const Branch& b);

class Curve {
public:
    // Throws InputError("non-reduced curve") when two branches coincide.
    explicit Curve(std::vector<Branch> branches);

    [[nodiscard]] const std::vector<Branch>& branches() const { return branches_; }
    [[nodiscard]] const Branch& branch(std::size_t b) const { return branches_.at(b); }
    [[nodiscard]] std::size_t size() const { return branches_.size(); }
    // Sum of branch multiplicities.
    [[nodiscard]] std::int64_t multiplicity() const;

    friend bool operator==(const Curve&, const Curve&) = default;

private:
    std::vector<Branch> branches_;
};

struct Sheet {
    std::size_t branch;
    std::int64_t k;
    friend bool operator==(const Sheet&, const Sheet&) = default;
};

// One raw "param (...)" or "y = ..." line, coordinates after the first.
struct RawBranch {
    std::int64_t n = 1;
    std::vector<std::vector<Term>> coordinates;
    std::size_t line = 0;
};

std::vector<RawBranch> parse_raw(const std::string& text);
Curve parse_curve(const std::string& text);
// Text in the same grammar; parse_curve(render_curve(c)) == c.
std::string render_curve(const Curve& c);
std::string render_branch(const Branch& b);

std::vector<std::int64_t> essential_exponents(const Branch& b);
std::vector<Rational> characteristic_exponents(const Branch& b);
// Shared helper for plane and space branches: strict drops of the running
// gcd over {n} and the sorted support.
std::vector<std::int64_t> essential_exponents(std::int64_t n, std::span<const std::int64_t> support);

std::vector<Sheet> sheets(const Curve& c);

// Terms with x-exponent <= cut, renormalized.
Branch truncate_branch(const Branch& b, const Rational& cut);
// Largest exponent that still matters for the topology of branch b within c
// (characteristic and coincidence exponents; 1 if there are none).
Rational truncation_exponent(const Curve& c, std::size_t branch);

}  // namespace curvelab
