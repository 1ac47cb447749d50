#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "catint/algebra.hpp"
#include "catint/measure.hpp"
#include "catint/scalar.hpp"

namespace catint {

/// Default level caps chosen to bound tensors at ~2^24 coefficients.
unsigned default_max_level(unsigned n);

/// Element of the tower space E_u: a dense coefficient tensor over the
/// 2^{un} level-u cells.  Per-dimension index bits record left/right choices
/// from the coarsest split down; the flat index packs dimension 1 into the
/// most significant bits.
class StepFunction {
public:
    StepFunction(unsigned n, unsigned level, std::vector<Scalar> coeffs);
    static StepFunction constant(unsigned n, const Scalar& value);

    unsigned dim() const { return n_; }
    unsigned level() const { return level_; }
    Backend backend() const { return backend_; }
    std::uint64_t cell_count() const { return coeffs_.size(); }
    std::span<const Scalar> coeffs() const { return coeffs_; }
    const Scalar& coeff(std::uint64_t flat) const;
    const Scalar& coeff(std::span<const std::uint64_t> idx) const;

    std::uint64_t flat_index(std::span<const std::uint64_t> idx) const;

private:
    unsigned n_;
    unsigned level_;
    std::vector<Scalar> coeffs_;
    Backend backend_;
};

/// One refinement step: every coefficient duplicated to its 2^n children.
StepFunction refine(const StepFunction& f, unsigned max_level = 0);
StepFunction refine_to(const StepFunction& f, unsigned level, unsigned max_level = 0);

/// gamma_xi: assembles 2^n level-u parts into one level-(u+1) function.  Part
/// order: corner tuple over {a,b}^n encoded a=0, b=1, dimension 1 most
/// significant.
StepFunction juxtapose(std::span<const StepFunction> parts, unsigned max_level = 0);

/// gamma_xi^{-1}: the 2^n corner parts of a level-u function, u >= 1.
std::vector<StepFunction> split(const StepFunction& f);

/// Lambda-action through tau: every coefficient multiplied by tau(a).
StepFunction module_action(const Algebra& A, const TauMap& t, const AlgebraElement& a,
                           const StepFunction& f);

/// Exact p-th power of the step-function norm: sum over cells of
/// (|k| mu(cell))^p, integer p >= 1.
Scalar step_norm_pow(const StepFunction& f, const BoxMeasure& bm, unsigned p);
/// (sum (|k| mu(cell))^p)^{1/p} on the stored level; InvalidP if p < 1.
double step_norm_p(const StepFunction& f, const BoxMeasure& bm, double p);

StepFunction pw_add(const StepFunction& a, const StepFunction& b);
StepFunction pw_sub(const StepFunction& a, const StepFunction& b);
StepFunction pw_scale(const Scalar& k, const StepFunction& f);
StepFunction pw_multiply(const StepFunction& a, const StepFunction& b);
StepFunction pw_abs(const StepFunction& f); // OrderUnavailable on complex

/// Equality as a.e. classes: refine both to the common level and compare.
bool step_equal(const StepFunction& a, const StepFunction& b);

using Sampler = std::function<Scalar(std::span<const Scalar>)>;

/// Coefficients taken from g at each cell's representative point.
StepFunction sample(const Sampler& g, std::span<const SplitScheme> schemes, unsigned level,
                    Convention conv, unsigned max_level = 0);

/// Value of f at an interior point; ties on split hyperplanes resolve to the
/// upper cell.
Scalar value_at(const StepFunction& f, std::span<const SplitScheme> schemes,
                std::span<const Scalar> point);

StepFunction convert_backend(const StepFunction& f, Backend b);

/// (w * sum ||x_i||^p)^{1/p} over the 2^n summands of the direct sum.
double direct_sum_norm(std::span<const double> part_norms, double p, double weight);
double paper_weight(const BoxMeasure& bm); // (mu(I)/mu(I_Lambda))^n as printed
double leinster_weight(unsigned n);        // 2^{-n}

} // namespace catint
