#include "curvelab/scalar.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace curvelab {

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("64-bit overflow in exponent arithmetic");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("64-bit overflow in exponent arithmetic");
    return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0)
        return 0;
    const std::int64_t g = std::gcd(a, b);
    return checked_mul(a / g < 0 ? -(a / g) : a / g, b < 0 ? -b : b);
}

std::int64_t mod64(std::int64_t a, std::int64_t m)
{
    if (m <= 0)
        throw std::invalid_argument("mod64: modulus must be positive");
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(const BigInt& num, const BigInt& den)
{
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

std::string Rational::to_string() const
{
    if (is_integer())
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o)
{
    v_ += o.v_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    v_ -= o.v_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    v_ *= o.v_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw std::domain_error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational sqrt_lower(const Rational& r, long scale)
{
    if (r.sign() < 0)
        throw std::domain_error("sqrt of negative rational");
    // sqrt(p/q) = sqrt(p*q)/q
    BigInt radicand = r.num() * r.den() * scale * scale;
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
    return Rational(root, r.den() * scale);
}

Rational sqrt_upper(const Rational& r, long scale)
{
    Rational lo = sqrt_lower(r, scale);
    if (lo * lo == r)
        return lo;
    return lo + Rational(BigInt(1), r.den() * scale);
}

Rational parse_rational(const std::string& text)
{
    std::size_t pos = 0;
    auto fail = [&] { throw std::invalid_argument("malformed rational '" + text + "'"); };
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+'))
        negative = text[pos++] == '-';
    std::string digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        digits += text[pos++];
    if (digits.empty())
        fail();
    Rational value(BigInt(digits, 10), BigInt(1));
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::string frac;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            frac += text[pos++];
        if (frac.empty())
            fail();
        BigInt scale = 1;
        for (std::size_t k = 0; k < frac.size(); ++k)
            scale *= 10;
        value += Rational(BigInt(frac, 10), scale);
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::string den;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            den += text[pos++];
        if (den.empty() || BigInt(den, 10) == 0)
            fail();
        value = Rational(BigInt(digits, 10), BigInt(den, 10));
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos != text.size())
        fail();
    return negative ? -value : value;
}

// ---------------------------------------------------------------------------
// ExtendedRational

const Rational& ExtendedRational::value() const
{
    if (!v_)
        throw std::logic_error("value() of infinite extended rational");
    return *v_;
}

std::string ExtendedRational::to_string() const { return v_ ? v_->to_string() : "inf"; }

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational GaussianRational::inverse() const
{
    const Rational n = norm();
    if (n.is_zero())
        throw std::domain_error("inverse of zero Gaussian rational");
    return {re_ / n, -im_ / n};
}

std::string GaussianRational::to_string() const
{
    std::string s = "(" + re_.to_string();
    s += im_.sign() < 0 ? "-" : "+";
    s += abs(im_).to_string() + " i)";
    return s;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

// ---------------------------------------------------------------------------
// Roots of unity

RootOfUnityTag::RootOfUnityTag(std::int64_t order, std::int64_t residue) : order_(order)
{
    if (order < 1)
        throw std::invalid_argument("root of unity order must be positive");
    residue_ = mod64(residue, order);
}

RootOfUnityTag RootOfUnityTag::rescaled(std::int64_t n) const
{
    if (n % order_ != 0)
        throw std::invalid_argument("rescaled order must be a multiple of the tag order");
    return {n, checked_mul(residue_, n / order_)};
}

std::complex<double> RootOfUnityTag::to_complex() const
{
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(residue_) / static_cast<double>(order_);
    return std::polar(1.0, angle);
}

RootOfUnityTag operator*(const RootOfUnityTag& a, const RootOfUnityTag& b)
{
    const std::int64_t n = lcm64(a.order_, b.order_);
    const RootOfUnityTag ra = a.rescaled(n);
    const RootOfUnityTag rb = b.rescaled(n);
    return {n, checked_add(ra.residue_, rb.residue_)};
}

std::optional<GaussianRational> unity_in_gaussians(std::int64_t order, std::int64_t residue)
{
    if (order < 1)
        throw std::invalid_argument("unity_in_gaussians: order must be positive");
    const std::int64_t m = mod64(residue, order);
    const std::int64_t d = order / std::gcd(order, m);  // gcd(N, 0) = N gives d = 1
    if (d != 1 && d != 2 && d != 4)
        return std::nullopt;
    // zeta_N^m = zeta_d^(m d / N)
    switch (mod64(checked_mul(m, d) / order, d) * (4 / d)) {
    case 0:
        return GaussianRational(1);
    case 1:
        return GaussianRational::i();
    case 2:
        return GaussianRational(-1);
    default:
        return -GaussianRational::i();
    }
}

// ---------------------------------------------------------------------------
// TaggedScalar

TaggedScalar::TaggedScalar(GaussianRational c, RootOfUnityTag tag) : tag_(tag)
{
    if (!c.is_zero())
        coeff_ = std::move(c);
    else
        tag_ = {};
}

Rational TaggedScalar::norm() const { return coeff_ ? coeff_->norm() : Rational{0}; }

std::complex<double> TaggedScalar::to_complex() const
{
    if (!coeff_)
        return {0.0, 0.0};
    return coeff_->to_complex() * tag_.to_complex();
}

std::string TaggedScalar::to_string() const
{
    if (!coeff_)
        return "0";
    if (tag_.residue() == 0)
        return coeff_->to_string();
    return coeff_->to_string() + "*z" + std::to_string(tag_.order()) + "^" + std::to_string(tag_.residue());
}

TaggedScalar operator*(const TaggedScalar& a, const TaggedScalar& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    return {a.coeff() * b.coeff(), a.tag() * b.tag()};
}

TaggedScalar operator*(const TaggedScalar& a, const GaussianRational& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    return {a.coeff() * b, a.tag()};
}

bool tagged_equal(const TaggedScalar& a, const TaggedScalar& b)
{
    if (a.is_zero() || b.is_zero())
        return a.is_zero() && b.is_zero();
    // c_a z^{m_a} = c_b z^{m_b}  <=>  z^{m_b - m_a} = c_a / c_b
    const RootOfUnityTag quotient = b.tag() * a.tag().inverse();
    const auto unit = unity_in_gaussians(quotient.order(), quotient.residue());
    return unit && *unit == a.coeff() / b.coeff();
}

bool vanishes(const GaussianRational& a, const RootOfUnityTag& zeta, const GaussianRational& b)
{
    return tagged_equal(TaggedScalar(a), TaggedScalar(b, zeta));
}

}  // namespace curvelab
