#pragma once

#include <cstdint>
#include <random>

#include "catint/scalar.hpp"

namespace catint {

/// Deterministic generators used by the property suites and tests.
inline Rational random_rational_value(std::mt19937_64& rng, std::int64_t max_num = 64,
                                      std::int64_t max_den = 16) {
    std::uniform_int_distribution<std::int64_t> num(-max_num, max_num);
    std::uniform_int_distribution<std::int64_t> den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline Scalar random_scalar(std::mt19937_64& rng, Backend b, std::int64_t max_num = 64,
                            std::int64_t max_den = 16) {
    switch (b) {
    case Backend::rational:
        return Scalar(random_rational_value(rng, max_num, max_den));
    case Backend::real: {
        std::uniform_real_distribution<double> d(-8.0, 8.0);
        return Scalar(d(rng));
    }
    case Backend::cplx: {
        std::uniform_real_distribution<double> d(-8.0, 8.0);
        return Scalar::complex(d(rng), d(rng));
    }
    }
    return Scalar();
}

} // namespace catint
