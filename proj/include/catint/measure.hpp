#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "catint/scalar.hpp"

namespace catint {

enum class Convention { midpoint, left, right };

/// Dyadic splitting of [a,b] driven by a point xi in (a,b) and the affine
/// order-preserving bijections kappa_a: [a,b]->[a,xi], kappa_b: [a,b]->[xi,b].
/// Level-u cell s is the image of [a,b] under the composition picked by the
/// binary digits of s (most significant digit = coarsest split).
class SplitScheme {
public:
    SplitScheme(Scalar a, Scalar b, Scalar xi);

    const Scalar& lower() const { return a_; }
    const Scalar& upper() const { return b_; }
    const Scalar& xi() const { return xi_; }
    Backend backend() const { return a_.backend(); }

    /// Cell endpoints [xi_{u,s}, xi_{u,s+1}].
    std::pair<Scalar, Scalar> cell(unsigned level, std::uint64_t s) const;
    /// Split point xi_{u,s}, 0 <= s <= 2^u.
    Scalar point(unsigned level, std::uint64_t s) const;
    Scalar representative(unsigned level, std::uint64_t s, Convention c) const;

    /// All 2^u + 1 split points of one level, computed in one refinement
    /// sweep (linear in the output size).
    std::vector<Scalar> points(unsigned level) const;
    std::vector<Scalar> representatives(unsigned level, Convention c) const;

private:
    Scalar a_, b_, xi_;
};

/// Atomless measure on [a,b] given by a nondecreasing distribution function F
/// in closed form; mu([x,y]) = F(y) - F(x).
class DistributionMeasure {
public:
    enum class Kind { lebesgue, power, poly };

    static DistributionMeasure lebesgue(Scalar a, Scalar b);
    /// F(x) = x^q.  On the rational backend q must be a positive integer so
    /// that rational split points keep rational measures.
    static DistributionMeasure power(Scalar a, Scalar b, Scalar q);
    /// F given by polynomial coefficients (ascending degree); the derivative
    /// must be nonnegative on [a,b], checked at every interval evaluation.
    static DistributionMeasure polynomial(Scalar a, Scalar b, std::vector<Scalar> coeffs);

    Kind kind() const { return kind_; }
    Backend backend() const { return a_.backend(); }
    const Scalar& lower() const { return a_; }
    const Scalar& upper() const { return b_; }

    Scalar cdf(const Scalar& x) const; // OutOfDomain outside [a,b]
    Scalar total() const;

private:
    DistributionMeasure(Kind k, Scalar a, Scalar b, Scalar q, std::vector<Scalar> coeffs);
    Kind kind_;
    Scalar a_, b_;
    Scalar q_;
    std::vector<Scalar> coeffs_;
};

/// F(y) - F(x) for a <= x <= y <= b; open/closed endpoints indistinguishable.
Scalar interval_measure(const DistributionMeasure& m, const Scalar& x, const Scalar& y);

/// Product measure on the box: one distribution and one split scheme per
/// dimension.  mu(box) = 0 is rejected at construction.
class BoxMeasure {
public:
    BoxMeasure(std::vector<DistributionMeasure> measures, std::vector<SplitScheme> schemes);

    unsigned dim() const { return static_cast<unsigned>(measures_.size()); }
    Backend backend() const { return measures_[0].backend(); }
    const DistributionMeasure& measure(unsigned d) const { return measures_.at(d); }
    const SplitScheme& scheme(unsigned d) const { return schemes_.at(d); }
    std::span<const SplitScheme> schemes() const { return schemes_; }

    /// Measure of dimension d's level-u interval number i.
    Scalar dim_cell_measure(unsigned d, unsigned level, std::uint64_t i) const;
    /// All 2^u interval measures of one dimension at one level.
    std::vector<Scalar> dim_cell_measures(unsigned d, unsigned level) const;
    /// Product measure of the level-u box cell with the given multi-index.
    Scalar cell_measure(unsigned level, std::span<const std::uint64_t> idx) const;
    Scalar cell_measure_flat(unsigned level, std::uint64_t flat) const;
    Scalar total() const;

    static BoxMeasure unit_lebesgue(unsigned n, Backend b);

private:
    std::vector<DistributionMeasure> measures_;
    std::vector<SplitScheme> schemes_;
};

} // namespace catint
