#pragma once

// Pairwise contact exponents between sheets (the q-map), coincidence
// exponents and intersection multiplicities.

#include <array>
#include <cstddef>
#include <vector>

#include "curvelab/puiseux.hpp"
#include "curvelab/scalar.hpp"

namespace curvelab {

// Dense symmetric matrix of extended rationals; diagonal is infinity.
class ContactMatrix {
public:
    ContactMatrix() = default;
    explicit ContactMatrix(std::size_t size);

    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] const ExtendedRational& at(std::size_t j, std::size_t k) const { return q_[j * size_ + k]; }
    // Sets both (j,k) and (k,j).
    void set(std::size_t j, std::size_t k, const ExtendedRational& v);

    friend bool operator==(const ContactMatrix&, const ContactMatrix&) = default;

private:
    std::size_t size_ = 0;
    std::vector<ExtendedRational> q_;
};

struct QMap {
    std::vector<Sheet> sheets;
    ContactMatrix q;
};

// First x-exponent at which the two sheet series differ, infinity when s1 == s2.
ExtendedRational sheet_contact(const Curve& c, const Sheet& s1, const Sheet& s2);

// OpenMP-parallel over sheet pairs.
QMap q_map(const Curve& c);
// Single-threaded reference; same result as q_map.
QMap q_map_serial(const Curve& c);

Rational coincidence_exponent(const Curve& c, std::size_t b1, std::size_t b2);
BigInt intersection_multiplicity(const Curve& c, std::size_t b1, std::size_t b2);

using Triple = std::array<std::size_t, 3>;
// Triples j<k<l whose minimal pairwise value is attained only once.
std::vector<Triple> verify_ultrametric(const ContactMatrix& q);
std::vector<Triple> verify_ultrametric_serial(const ContactMatrix& q);

}  // namespace curvelab
