#include <doctest.h>

#include <cmath>
#include <numbers>

#include "catint/random.hpp"
#include "catint/scalar.hpp"

using namespace catint;

TEST_CASE("scalar norms per backend") {
    CHECK(scalar_norm(Scalar::rational(0)).is_zero());
    CHECK(scalar_norm(Scalar::rational(-3, 2)) == Scalar::rational(3, 2));
    // |(0, -2/pi)| = 2/pi
    Scalar z = Scalar::complex(0.0, -2.0 / std::numbers::pi);
    CHECK(scalar_norm(z).to_double() == doctest::Approx(0.63662).epsilon(1e-5));
}

TEST_CASE("scalar comparison and trichotomy") {
    CHECK(scalar_compare(Scalar::rational(1, 2), Scalar::rational(1, 2)) ==
          std::strong_ordering::equal);
    CHECK(scalar_compare(Scalar::rational(0), Scalar::rational(1)) == std::strong_ordering::less);
    CHECK(scalar_compare(Scalar::real(2.0), Scalar::real(1.0)) == std::strong_ordering::greater);
    CHECK_THROWS_AS(scalar_compare(Scalar::complex(0, 1), Scalar::complex(0, 1)),
                    OrderUnavailable);
}

TEST_CASE("mixed backends are rejected") {
    CHECK_THROWS_AS(Scalar::rational(1) + Scalar::real(1.0), BackendMismatch);
    CHECK_THROWS_AS(Scalar::real(1.0) * Scalar::complex(1, 0), BackendMismatch);
}

TEST_CASE("rational arithmetic is exact and in lowest terms") {
    Scalar a = Scalar::rational(2, 4);
    CHECK(a.str() == "1/2");
    Scalar b = Scalar::rational(1, 3);
    CHECK((a + b).str() == "5/6");
    CHECK((a * b).str() == "1/6");
    CHECK((a / b).str() == "3/2");
    CHECK((a - a).is_zero());
    CHECK_THROWS_AS(a / Scalar::rational(0), Error);
}

TEST_CASE("multiplicativity and triangle inequality on random rationals") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        Scalar s = random_scalar(rng, Backend::rational, 1000, 100);
        Scalar t = random_scalar(rng, Backend::rational, 1000, 100);
        CHECK((s * t).abs() == s.abs() * t.abs());
        CHECK_FALSE((s + t).abs().compare(s.abs() + t.abs()) == std::strong_ordering::greater);
    }
}

TEST_CASE("float multiplicativity within 4 ulp") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        Scalar s = random_scalar(rng, Backend::real);
        Scalar t = random_scalar(rng, Backend::real);
        double lhs = (s * t).norm();
        double rhs = s.norm() * t.norm();
        CHECK(std::fabs(lhs - rhs) <=
              4 * std::numeric_limits<double>::epsilon() * std::fabs(rhs));
    }
}

TEST_CASE("scalar parsing") {
    CHECK(Scalar::parse("3/4", Backend::rational) == Scalar::rational(3, 4));
    CHECK(Scalar::parse("-7", Backend::rational) == Scalar::rational(-7));
    CHECK(Scalar::parse("0.25", Backend::rational) == Scalar::rational(1, 4));
    CHECK(Scalar::parse("1e-3", Backend::real).to_double() == doctest::Approx(1e-3));
    CHECK_THROWS_AS(Scalar::parse("1/0", Backend::rational), ParseError);
    CHECK_THROWS_AS(Scalar::parse("abc", Backend::rational), ParseError);
    CHECK_THROWS_AS(Scalar::parse("2.5e-1", Backend::rational), ParseError);
}

TEST_CASE("integer powers") {
    CHECK(Scalar::rational(2, 3).pow_int(3) == Scalar::rational(8, 27));
    CHECK(Scalar::rational(2).pow_int(-2) == Scalar::rational(1, 4));
    CHECK(Scalar::rational(5).pow_int(0) == Scalar::rational(1));
}
