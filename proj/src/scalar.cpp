#include "catint/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace catint {

namespace {

[[noreturn]] void mismatch(const Scalar& a, const Scalar& b, const char* op) {
    throw BackendMismatch(std::string("backend mismatch in '") + op + "': " +
                          backend_name(a.backend()) + " vs " + backend_name(b.backend()));
}

} // namespace

std::string backend_name(Backend b) {
    switch (b) {
    case Backend::rational: return "rational";
    case Backend::real: return "real";
    case Backend::cplx: return "complex";
    }
    return "?";
}

Scalar Scalar::rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error("rational with zero denominator");
    return Scalar(Rational(num, den));
}

Scalar Scalar::zero(Backend b) {
    switch (b) {
    case Backend::rational: return Scalar(Rational(0));
    case Backend::real: return Scalar(0.0);
    case Backend::cplx: return Scalar(std::complex<double>(0.0, 0.0));
    }
    return Scalar();
}

Scalar Scalar::one(Backend b) {
    switch (b) {
    case Backend::rational: return Scalar(Rational(1));
    case Backend::real: return Scalar(1.0);
    case Backend::cplx: return Scalar(std::complex<double>(1.0, 0.0));
    }
    return Scalar();
}

Scalar Scalar::integer(std::int64_t n, Backend b) {
    switch (b) {
    case Backend::rational: return Scalar(Rational(n));
    case Backend::real: return Scalar(static_cast<double>(n));
    case Backend::cplx: return Scalar(std::complex<double>(static_cast<double>(n), 0.0));
    }
    return Scalar();
}

Backend Scalar::backend() const {
    switch (v_.index()) {
    case 0: return Backend::rational;
    case 1: return Backend::real;
    default: return Backend::cplx;
    }
}

bool Scalar::is_zero() const {
    switch (v_.index()) {
    case 0: return std::get<Rational>(v_) == 0;
    case 1: return std::get<double>(v_) == 0.0;
    default: {
        auto z = std::get<std::complex<double>>(v_);
        return z.real() == 0.0 && z.imag() == 0.0;
    }
    }
}

Scalar Scalar::operator-() const {
    switch (v_.index()) {
    case 0: return Scalar(Rational(-std::get<Rational>(v_)));
    case 1: return Scalar(-std::get<double>(v_));
    default: return Scalar(-std::get<std::complex<double>>(v_));
    }
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (v_.index() != o.v_.index()) mismatch(*this, o, "+");
    switch (v_.index()) {
    case 0: std::get<Rational>(v_) += std::get<Rational>(o.v_); break;
    case 1: std::get<double>(v_) += std::get<double>(o.v_); break;
    default: std::get<std::complex<double>>(v_) += std::get<std::complex<double>>(o.v_); break;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (v_.index() != o.v_.index()) mismatch(*this, o, "-");
    switch (v_.index()) {
    case 0: std::get<Rational>(v_) -= std::get<Rational>(o.v_); break;
    case 1: std::get<double>(v_) -= std::get<double>(o.v_); break;
    default: std::get<std::complex<double>>(v_) -= std::get<std::complex<double>>(o.v_); break;
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (v_.index() != o.v_.index()) mismatch(*this, o, "*");
    switch (v_.index()) {
    case 0: std::get<Rational>(v_) *= std::get<Rational>(o.v_); break;
    case 1: std::get<double>(v_) *= std::get<double>(o.v_); break;
    default: std::get<std::complex<double>>(v_) *= std::get<std::complex<double>>(o.v_); break;
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (v_.index() != o.v_.index()) mismatch(*this, o, "/");
    if (o.is_zero()) throw Error("scalar division by zero");
    switch (v_.index()) {
    case 0: std::get<Rational>(v_) /= std::get<Rational>(o.v_); break;
    case 1: std::get<double>(v_) /= std::get<double>(o.v_); break;
    default: std::get<std::complex<double>>(v_) /= std::get<std::complex<double>>(o.v_); break;
    }
    return *this;
}

bool Scalar::operator==(const Scalar& o) const {
    if (v_.index() != o.v_.index()) mismatch(*this, o, "==");
    return v_ == o.v_;
}

Scalar Scalar::abs() const {
    switch (v_.index()) {
    case 0: return Scalar(Rational(boost::multiprecision::abs(std::get<Rational>(v_))));
    case 1: return Scalar(std::fabs(std::get<double>(v_)));
    default: return Scalar(std::abs(std::get<std::complex<double>>(v_)));
    }
}

double Scalar::norm() const { return abs().to_double(); }

std::strong_ordering Scalar::compare(const Scalar& o) const {
    if (v_.index() != o.v_.index()) mismatch(*this, o, "compare");
    switch (v_.index()) {
    case 0: {
        const auto& a = std::get<Rational>(v_);
        const auto& b = std::get<Rational>(o.v_);
        if (a < b) return std::strong_ordering::less;
        if (a > b) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    case 1: {
        double a = std::get<double>(v_), b = std::get<double>(o.v_);
        if (a < b) return std::strong_ordering::less;
        if (a > b) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    default:
        throw OrderUnavailable("the complex backend carries no total order");
    }
}

Scalar Scalar::pow_int(std::int64_t e) const {
    if (e < 0) return Scalar::one(backend()) / pow_int(-e);
    Scalar acc = Scalar::one(backend());
    Scalar base = *this;
    std::uint64_t k = static_cast<std::uint64_t>(e);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

double Scalar::to_double() const {
    switch (v_.index()) {
    case 0: return std::get<Rational>(v_).convert_to<double>();
    case 1: return std::get<double>(v_);
    default: {
        auto z = std::get<std::complex<double>>(v_);
        if (z.imag() != 0.0)
            throw BackendMismatch("to_double on a complex scalar with nonzero imaginary part");
        return z.real();
    }
    }
}

std::complex<double> Scalar::to_complex() const {
    switch (v_.index()) {
    case 0: return {std::get<Rational>(v_).convert_to<double>(), 0.0};
    case 1: return {std::get<double>(v_), 0.0};
    default: return std::get<std::complex<double>>(v_);
    }
}

const Rational& Scalar::rat() const {
    if (v_.index() != 0) throw BackendMismatch("rat() on a non-rational scalar");
    return std::get<Rational>(v_);
}

namespace {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    // strip surrounding spaces
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw ParseError("empty scalar literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        try {
            Rational num(s.substr(0, slash));
            Rational den(s.substr(slash + 1));
            if (den == 0) throw ParseError("zero denominator in '" + s + "'");
            return num / den;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad rational literal '" + s + "'");
        }
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find_first_of("eE") != std::string::npos)
            throw ParseError("scientific notation is not exact; use p/q for rationals: '" + s + "'");
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac = s.size() - dot - 1;
        bool negative = false;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
            negative = digits[0] == '-';
            digits.erase(digits.begin());
        }
        // avoid boost's base detection on leading zeros
        while (digits.size() > 1 && digits[0] == '0') digits.erase(digits.begin());
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad decimal literal '" + s + "'");
        try {
            Rational num(digits);
            if (negative) num = -num;
            Rational den(1);
            for (std::size_t i = 0; i < frac; ++i) den *= 10;
            return num / den;
        } catch (const std::exception&) {
            throw ParseError("bad decimal literal '" + s + "'");
        }
    }
    std::string digits = s;
    bool negative = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        negative = digits[0] == '-';
        digits.erase(digits.begin());
    }
    while (digits.size() > 1 && digits[0] == '0') digits.erase(digits.begin());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad integer literal '" + s + "'");
    try {
        Rational out(digits);
        return negative ? Rational(-out) : out;
    } catch (const std::exception&) {
        throw ParseError("bad integer literal '" + s + "'");
    }
}

} // namespace

Scalar Scalar::parse(std::string_view text, Backend b) {
    switch (b) {
    case Backend::rational:
        return Scalar(parse_rational(text));
    case Backend::real: {
        auto slash = text.find('/');
        if (slash != std::string_view::npos)
            return Scalar(parse_rational(text).convert_to<double>());
        std::string s(text);
        char* end = nullptr;
        double x = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || (end && *end != '\0'))
            throw ParseError("bad real literal '" + s + "'");
        return Scalar(x);
    }
    case Backend::cplx:
        // Plain text literal: a real number promoted to (x, 0).
        return Scalar(std::complex<double>(Scalar::parse(text, Backend::real).to_double(), 0.0));
    }
    throw ParseError("unknown backend");
}

std::string Scalar::str() const {
    switch (v_.index()) {
    case 0: {
        std::ostringstream os;
        os << std::get<Rational>(v_);
        return os.str();
    }
    case 1: {
        std::ostringstream os;
        os.precision(17);
        os << std::get<double>(v_);
        return os.str();
    }
    default: {
        auto z = std::get<std::complex<double>>(v_);
        std::ostringstream os;
        os.precision(17);
        os << "(" << z.real() << "," << z.imag() << ")";
        return os.str();
    }
    }
}

Scalar to_backend(const Scalar& s, Backend b) {
    if (s.backend() == b) return s;
    switch (b) {
    case Backend::real:
        return Scalar(s.to_double());
    case Backend::cplx:
        return Scalar(s.to_complex());
    case Backend::rational:
        throw BackendMismatch("no exact conversion to the rational backend from " +
                              backend_name(s.backend()));
    }
    throw BackendMismatch("unknown backend");
}

} // namespace catint
