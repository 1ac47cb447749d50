#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <vector>

#include "catint/engine.hpp"

namespace catint {

/// Scalar integration target (k, mu(I_Lambda), m).  delta weights the 2^n
/// children of the tower cell it is applied at by their measure share
/// mu(child)/mu(parent); at the root this is the printed map
/// m(k_1..k_{2^n}) = sum k_j mu(block_j)/mu(I_Lambda), and for measures that
/// are self-similar under the affine kappa maps (Lebesgue with any xi) every
/// cell gives that same map.
class IntegrationTarget {
public:
    using Value = Scalar;

    IntegrationTarget(Algebra A, TauMap tau, BoxMeasure bm);
    /// Same carrier and delta with a custom distinguished element (any v is
    /// admissible for the weighted average); v = 0 gives the zero morphism.
    IntegrationTarget(Algebra A, TauMap tau, BoxMeasure bm, Scalar v);

    IntegrationTarget(const IntegrationTarget& o);
    IntegrationTarget(IntegrationTarget&&) noexcept = default;
    IntegrationTarget& operator=(const IntegrationTarget&) = delete;
    IntegrationTarget& operator=(IntegrationTarget&&) noexcept = default;

    unsigned box_dim() const { return bm_.dim(); }
    Backend backend() const { return backend_; }
    double total_measure() const { return bm_.total().to_double(); }
    const BoxMeasure& box() const { return bm_; }
    const Algebra& algebra() const { return algebra_; }
    const TauMap& tau() const { return tau_; }

    Value distinguished() const { return v_; }
    Value zero() const { return Scalar::zero(backend_); }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value scale(const Scalar& c, const Value& x) const { return c * x; }
    Value lambda_action(const AlgebraElement& a, const Value& x) const;
    Value delta(std::span<const Value> parts, CellRef where) const;
    double norm(const Value& x) const { return x.norm(); }
    double distance(const Value& a, const Value& b) const { return (a - b).norm(); }
    bool equal(const Value& a, const Value& b) const { return a == b; }
    Value random_element(std::mt19937_64& rng) const { return random_scalar(rng, backend_); }

    /// The direct-sum formula of the step-function integral: sum over cells
    /// of k * mu(cell).  Kept as an algebraic route independent of the
    /// recursion for the dual-route checks.
    Value closed_form(const StepFunction& f) const;

    /// Root weight mu(block_j)/mu(I_Lambda) of corner j.
    Scalar corner_weight(std::uint64_t corner) const;

private:
    const Scalar& child_ratio(unsigned d, unsigned parent_level, std::uint64_t child_index) const;
    void ensure_level(unsigned parent_level) const;

    Algebra algebra_;
    TauMap tau_;
    BoxMeasure bm_;
    Scalar v_;
    Backend backend_;
    // ratios[d][l][i] = mu_d(cell(l+1, i)) / mu_d(cell(l, i/2)), zero when the
    // parent cell has measure zero.  Grown lazily under the mutex.
    struct RatioCache {
        std::mutex mutex;
        std::vector<std::vector<std::vector<Scalar>>> ratios;
    };
    std::unique_ptr<RatioCache> cache_;
};

IntegrationTarget integration_target(const Algebra& A, const TauMap& tau, const BoxMeasure& bm);

struct IntegrateOptions {
    double tol = 1e-6; // 0 demands exact agreement of successive levels
    unsigned u_min = 4;
    unsigned u_max = 16;
    Convention convention = Convention::midpoint;
};

/// Integral of a step function: theta under the integration target.
Scalar integrate(const StepFunction& f, const IntegrationTarget& t);
/// Integral of a sampled function via the convergence loop.
std::pair<Scalar, ConvergenceReport> integrate(const Sampler& g, const IntegrationTarget& t,
                                               const IntegrateOptions& opts = {});

/// Piecewise-linear function on [0,1] with breakpoints at the 2^u + 1 dyadic
/// points and F(0) = 0; the carrier of the antiderivative target.
class PiecewiseLinear {
public:
    PiecewiseLinear(unsigned level, std::vector<Scalar> values);
    static PiecewiseLinear identity(Backend b, unsigned level = 0);
    static PiecewiseLinear zero(Backend b);

    unsigned level() const { return level_; }
    Backend backend() const { return backend_; }
    std::span<const Scalar> values() const { return values_; }
    const Scalar& value(std::uint64_t j) const { return values_.at(j); }

    PiecewiseLinear refine() const; // midpoint interpolation, exact
    PiecewiseLinear refine_to(unsigned level) const;
    Scalar eval(const Scalar& x) const;

private:
    unsigned level_;
    std::vector<Scalar> values_;
    Backend backend_;
};

PiecewiseLinear pl_add(const PiecewiseLinear& a, const PiecewiseLinear& b);
PiecewiseLinear pl_scale(const Scalar& c, const PiecewiseLinear& f);
double pl_sup_norm(const PiecewiseLinear& f);
double pl_sup_distance(const PiecewiseLinear& a, const PiecewiseLinear& b);
bool pl_equal(const PiecewiseLinear& a, const PiecewiseLinear& b);

/// (C_*([0,1]), id, kappa) in the paper's own configuration: n = 1,
/// Lambda = k, tau = id, Lebesgue measure on [0,1], xi = 1/2.
class AntiderivativeTarget {
public:
    using Value = PiecewiseLinear;

    explicit AntiderivativeTarget(Backend b);

    unsigned box_dim() const { return 1; }
    Backend backend() const { return backend_; }
    double total_measure() const { return 1.0; }

    Value distinguished() const { return PiecewiseLinear::identity(backend_); }
    Value zero() const { return PiecewiseLinear::zero(backend_); }
    Value add(const Value& a, const Value& b) const { return pl_add(a, b); }
    Value scale(const Scalar& c, const Value& x) const { return pl_scale(c, x); }
    Value delta(std::span<const Value> parts, CellRef) const; // kappa
    double norm(const Value& x) const { return pl_sup_norm(x); }
    double distance(const Value& a, const Value& b) const { return pl_sup_distance(a, b); }
    bool equal(const Value& a, const Value& b) const { return pl_equal(a, b); }
    Value random_element(std::mt19937_64& rng) const;

private:
    Backend backend_;
};

AntiderivativeTarget antiderivative_target(Backend b = Backend::rational);

/// Variable-upper-limit integral of a level-u step function on [0,1]:
/// breakpoint j carries the running sum of k * 2^{-u}.
PiecewiseLinear antiderive(const StepFunction& f, unsigned u_out = 0);

/// Cellwise slopes: coefficient j = (F(x_{j+1}) - F(x_j)) * 2^u.  Inverts
/// antiderive exactly.
StepFunction weak_derivative(const PiecewiseLinear& F);

struct FourierOptions {
    unsigned u_min = 4;
    unsigned u_max = 12;
    double tol = 1e-6;
    Convention convention = Convention::midpoint;
};

struct FourierResult {
    Scalar value; // complex backend
    ConvergenceReport report;
};

/// c_k = integral of f(x) e^{-2 pi i k x} dx over [0,1], computed as two real
/// integrations (cos and -sin samplers multiplied cellwise).
FourierResult fourier_coefficient(const Sampler& g, std::int64_t k, const FourierOptions& opts = {});
FourierResult fourier_coefficient(const StepFunction& f, std::int64_t k,
                                  const FourierOptions& opts = {});

Scalar poly_eval(std::span<const Scalar> coeffs, const Scalar& x);

struct PolyNormResult {
    double value;
    ConvergenceReport report;
};

/// ((A^p) integral |P|^p dmu)^{1/p} on a one-dimensional box, float backend.
PolyNormResult poly_norm(std::span<const Scalar> coeffs, double p, const BoxMeasure& bm,
                         const IntegrateOptions& opts = {});

} // namespace catint
