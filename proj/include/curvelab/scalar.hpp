#pragma once

// Exact arithmetic kernel: rationals, extended rationals, Gaussian rationals
// and root-of-unity tagged scalars.

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace curvelab {

using BigInt = mpz_class;

// Checked 64-bit helpers; they throw std::overflow_error instead of wrapping.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
// Mathematical remainder in [0, m).
std::int64_t mod64(std::int64_t a, std::int64_t m);

class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(const mpq_class& v);

    [[nodiscard]] BigInt num() const { return v_.get_num(); }
    [[nodiscard]] BigInt den() const { return v_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return v_; }

    [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
    [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(v_); }
    [[nodiscard]] double to_double() const { return v_.get_d(); }
    // "p" for integers, "p/q" otherwise.
    [[nodiscard]] std::string to_string() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_{0};
};

Rational abs(const Rational& r);
// Largest/smallest rational with denominator `scale` bounding sqrt(r) from below/above.
Rational sqrt_lower(const Rational& r, long scale = 4096);
Rational sqrt_upper(const Rational& r, long scale = 4096);
// Exact decimal or fraction literal, e.g. "0.05", "-3/2", "7".
Rational parse_rational(const std::string& text);

class ExtendedRational {
public:
    ExtendedRational() = default;
    ExtendedRational(Rational v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
    static ExtendedRational infinity() { return ExtendedRational(Tag{}); }

    [[nodiscard]] bool is_infinite() const { return !v_.has_value(); }
    [[nodiscard]] bool is_finite() const { return v_.has_value(); }
    // Precondition: finite.
    [[nodiscard]] const Rational& value() const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b)
    {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() <=> b.is_infinite();
        return *a.v_ <=> *b.v_;
    }

private:
    struct Tag {};
    explicit ExtendedRational(Tag) : v_(std::nullopt) {}
    std::optional<Rational> v_{Rational{0}};
};

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(long re) : re_(re) {}                 // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    static GaussianRational i() { return {Rational{0}, Rational{1}}; }

    [[nodiscard]] const Rational& re() const { return re_; }
    [[nodiscard]] const Rational& im() const { return im_; }
    [[nodiscard]] bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    [[nodiscard]] bool is_real() const { return im_.is_zero(); }
    // Squared modulus re^2 + im^2.
    [[nodiscard]] Rational norm() const { return re_ * re_ + im_ * im_; }
    [[nodiscard]] GaussianRational conj() const { return {re_, -im_}; }
    [[nodiscard]] GaussianRational inverse() const;
    [[nodiscard]] std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
    // "(a+b i)".
    [[nodiscard]] std::string to_string() const;

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

private:
    Rational re_{0};
    Rational im_{0};
};

// zeta_N^m with zeta_N = exp(2*pi*i/N); the residue is always reduced mod N.
class RootOfUnityTag {
public:
    RootOfUnityTag() = default;
    RootOfUnityTag(std::int64_t order, std::int64_t residue);

    [[nodiscard]] std::int64_t order() const { return order_; }
    [[nodiscard]] std::int64_t residue() const { return residue_; }
    // Same element expressed with order `n`, which must be a multiple of order().
    [[nodiscard]] RootOfUnityTag rescaled(std::int64_t n) const;
    [[nodiscard]] RootOfUnityTag inverse() const { return {order_, -residue_}; }
    [[nodiscard]] std::complex<double> to_complex() const;

    friend RootOfUnityTag operator*(const RootOfUnityTag& a, const RootOfUnityTag& b);
    friend bool operator==(const RootOfUnityTag& a, const RootOfUnityTag& b) = default;

private:
    std::int64_t order_ = 1;
    std::int64_t residue_ = 0;
};

// The value of zeta_N^m when it lies in Q(i), i.e. when its order divides 4.
std::optional<GaussianRational> unity_in_gaussians(std::int64_t order, std::int64_t residue);

// Either zero or c * zeta_N^m with c a nonzero Gaussian rational.
class TaggedScalar {
public:
    TaggedScalar() = default;
    TaggedScalar(GaussianRational c, RootOfUnityTag tag = {});
    static TaggedScalar zero() { return {}; }

    [[nodiscard]] bool is_zero() const { return !coeff_.has_value(); }
    // Preconditions: !is_zero().
    [[nodiscard]] const GaussianRational& coeff() const { return *coeff_; }
    [[nodiscard]] const RootOfUnityTag& tag() const { return tag_; }
    // |value|^2, exact.
    [[nodiscard]] Rational norm() const;
    [[nodiscard]] std::complex<double> to_complex() const;
    [[nodiscard]] std::string to_string() const;

    friend TaggedScalar operator*(const TaggedScalar& a, const TaggedScalar& b);
    friend TaggedScalar operator*(const TaggedScalar& a, const GaussianRational& b);

private:
    std::optional<GaussianRational> coeff_;
    RootOfUnityTag tag_;
};

// True iff a and b denote the same complex number.
bool tagged_equal(const TaggedScalar& a, const TaggedScalar& b);

// True iff a - zeta * b == 0 for Gaussian rationals a, b.
bool vanishes(const GaussianRational& a, const RootOfUnityTag& zeta, const GaussianRational& b);

}  // namespace curvelab
