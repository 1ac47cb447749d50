#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "catint/error.hpp"

namespace catint {

using Rational = boost::multiprecision::cpp_rational;

/// Scalar backends of the coefficient field k.  The complex backend is a pair
/// of doubles and carries no total order; ordered operations throw on it.
enum class Backend { rational, real, cplx };

std::string backend_name(Backend b);

class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    explicit Scalar(Rational q) : v_(std::move(q)) {}
    explicit Scalar(double x) : v_(x) {}
    explicit Scalar(std::complex<double> z) : v_(z) {}

    static Scalar rational(std::int64_t num, std::int64_t den = 1);
    static Scalar real(double x) { return Scalar(x); }
    static Scalar complex(double re, double im) { return Scalar(std::complex<double>(re, im)); }
    static Scalar zero(Backend b);
    static Scalar one(Backend b);
    static Scalar integer(std::int64_t n, Backend b);

    Backend backend() const;
    bool is_zero() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    bool operator==(const Scalar& o) const;

    /// |s| as a scalar: exact for rationals, modulus (real backend) for complex.
    Scalar abs() const;
    /// |s| as a double.
    double norm() const;

    /// Total-order comparison; OrderUnavailable on the complex backend.
    std::strong_ordering compare(const Scalar& o) const;

    /// Integer power, exact on rationals.  Negative exponents invert.
    Scalar pow_int(std::int64_t e) const;

    double to_double() const;
    std::complex<double> to_complex() const;
    const Rational& rat() const;

    /// Accepts "p/q", integers, and plain decimals ("0.25" stays exact on the
    /// rational backend).  Complex literals are assembled by the callers.
    static Scalar parse(std::string_view text, Backend b);

    std::string str() const;

private:
    std::variant<Rational, double, std::complex<double>> v_;
};

/// |s| per backend (absolute value; complex modulus).
inline Scalar scalar_norm(const Scalar& s) { return s.abs(); }

/// Trichotomous comparison for ordered backends.
inline std::strong_ordering scalar_compare(const Scalar& a, const Scalar& b) {
    return a.compare(b);
}

Scalar to_backend(const Scalar& s, Backend b);

} // namespace catint
