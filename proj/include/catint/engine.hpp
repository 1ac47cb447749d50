#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "catint/random.hpp"
#include "catint/stepfn.hpp"

namespace catint {

/// Tower cell at which a delta combination is applied: the parent cell's
/// level and flat index.  The root is {0, 0}.  Targets whose delta is the
/// same at every node simply ignore it; the shipped integration target uses
/// it to weight children by their measure share, which reduces to the single
/// printed map exactly when the measure is self-similar under the kappa maps.
struct CellRef {
    unsigned level = 0;
    std::uint64_t index = 0;
};

/// Object (V, v, delta) offered to the universal-morphism recursion.
template <typename T>
concept TargetObject = requires(const T& t, const typename T::Value& x,
                                std::span<const typename T::Value> parts, const Scalar& c,
                                CellRef where, std::mt19937_64& rng) {
    typename T::Value;
    { t.box_dim() } -> std::convertible_to<unsigned>;
    { t.backend() } -> std::convertible_to<Backend>;
    { t.distinguished() } -> std::convertible_to<typename T::Value>;
    { t.total_measure() } -> std::convertible_to<double>;
    { t.add(x, x) } -> std::convertible_to<typename T::Value>;
    { t.scale(c, x) } -> std::convertible_to<typename T::Value>;
    { t.delta(parts, where) } -> std::convertible_to<typename T::Value>;
    { t.norm(x) } -> std::convertible_to<double>;
    { t.distance(x, x) } -> std::convertible_to<double>;
    { t.equal(x, x) } -> std::convertible_to<bool>;
    { t.random_element(rng) } -> std::convertible_to<typename T::Value>;
};

struct ConvergenceReport {
    std::vector<unsigned> levels;
    std::vector<double> residuals; // distance to the previous iterate, per level after the first
    bool converged = false;
    double final_residual = 0.0;
    unsigned level_reached = 0;
};

namespace detail {

inline std::uint64_t child_flat(unsigned n, unsigned child_level, std::uint64_t parent,
                                std::uint64_t corner) {
    // parent is a flat index at child_level-1; corner bits are dimension 1 first.
    std::uint64_t flat = 0;
    const unsigned pl = child_level - 1;
    for (unsigned d = 0; d < n; ++d) {
        std::uint64_t j = (parent >> (pl * (n - 1 - d))) & ((std::uint64_t{1} << pl) - 1);
        std::uint64_t bit = (corner >> (n - 1 - d)) & 1;
        flat = (flat << child_level) | (j * 2 + bit);
    }
    return flat;
}

} // namespace detail

/// Checks the object axioms: delta(v,...,v) = v at the root, the norm bound
/// on v, and (statistically) additivity and homogeneity of delta at random
/// tower cells.  Lambda-equivariance follows from homogeneity because the
/// Lambda-action on every shipped carrier factors through tau into k.
template <TargetObject T>
ValidationReport validate_target(const T& t, unsigned trials, std::mt19937_64& rng) {
    ValidationReport rep;
    const unsigned n = t.box_dim();
    const std::uint64_t arity = std::uint64_t{1} << n;
    using Value = typename T::Value;

    std::vector<Value> vs(arity, t.distinguished());
    if (!t.equal(t.delta(vs, CellRef{0, 0}), t.distinguished()))
        rep.failures.push_back("delta(v,...,v) != v");
    if (t.norm(t.distinguished()) > t.total_measure() * (1.0 + 1e-12) + 1e-12)
        rep.failures.push_back("||v|| exceeds mu(I_Lambda)");

    const bool exact = t.backend() == Backend::rational;
    const double tol = exact ? 0.0 : 1e-9;
    std::uniform_int_distribution<unsigned> lvl_dist(0, 4);
    for (unsigned trial = 0; trial < trials; ++trial) {
        unsigned lvl = lvl_dist(rng);
        std::uniform_int_distribution<std::uint64_t> idx_dist(
            0, (std::uint64_t{1} << (lvl * n)) - 1);
        CellRef where{lvl, idx_dist(rng)};

        std::vector<Value> xs, ys, sums, scaled;
        for (std::uint64_t i = 0; i < arity; ++i) {
            xs.push_back(t.random_element(rng));
            ys.push_back(t.random_element(rng));
            sums.push_back(t.add(xs.back(), ys.back()));
        }
        Value lhs_add = t.delta(sums, where);
        Value rhs_add = t.add(t.delta(xs, where), t.delta(ys, where));
        if (!(exact ? t.equal(lhs_add, rhs_add) : t.distance(lhs_add, rhs_add) <= tol))
            rep.failures.push_back("delta not additive at level " + std::to_string(lvl));

        Scalar c = random_scalar(rng, t.backend());
        for (const auto& x : xs) scaled.push_back(t.scale(c, x));
        Value lhs_h = t.delta(scaled, where);
        Value rhs_h = t.scale(c, t.delta(xs, where));
        if (!(exact ? t.equal(lhs_h, rhs_h) : t.distance(lhs_h, rhs_h) <= tol))
            rep.failures.push_back("delta not homogeneous at level " + std::to_string(lvl));
    }
    return rep;
}

/// The universal morphism on E_u: theta_0(c*1) = c*v, and
/// theta_u = delta o theta_{u-1}^{x 2^n} o gamma^{-1}.  Implemented as one
/// bottom-up pass over the coefficient tensor; equivalence with the literal
/// recursion is covered by tests.
template <TargetObject T>
typename T::Value theta(const StepFunction& f, const T& t) {
    if (f.dim() != t.box_dim())
        throw DimensionMismatch("step function and target dimensions differ");
    if (f.backend() != t.backend())
        throw BackendMismatch("step function and target backends differ");
    const unsigned n = f.dim();
    const std::uint64_t arity = std::uint64_t{1} << n;
    using Value = typename T::Value;

    {
        std::vector<Value> vs(arity, t.distinguished());
        if (!t.equal(t.delta(vs, CellRef{0, 0}), t.distinguished()))
            throw TargetInvalid("target violates delta(v,...,v) = v");
    }

    std::vector<Value> cur;
    cur.reserve(f.cell_count());
    for (const auto& c : f.coeffs()) cur.push_back(t.scale(c, t.distinguished()));

    std::vector<Value> tuple;
    for (unsigned lvl = f.level(); lvl >= 1; --lvl) {
        const std::uint64_t parents = std::uint64_t{1} << ((lvl - 1) * n);
        std::vector<Value> next;
        next.reserve(parents);
        for (std::uint64_t p = 0; p < parents; ++p) {
            tuple.clear();
            for (std::uint64_t corner = 0; corner < arity; ++corner)
                tuple.push_back(std::move(cur[detail::child_flat(n, lvl, p, corner)]));
            next.push_back(t.delta(tuple, CellRef{lvl - 1, p}));
        }
        cur = std::move(next);
    }
    return std::move(cur[0]);
}

/// Operational stand-in for the completion morphism: evaluate theta on
/// samples of g at increasing levels until two successive target values are
/// within tol (tol = 0 demands exact equality).
template <TargetObject T>
std::pair<typename T::Value, ConvergenceReport>
theta_limit(const Sampler& g, std::span<const SplitScheme> schemes, const T& t, double tol,
            unsigned u_min, unsigned u_max, Convention conv) {
    if (tol < 0.0) throw Error("tolerance must be nonnegative");
    if (u_min > u_max) throw Error("u_min must not exceed u_max");
    using Value = typename T::Value;
    ConvergenceReport rep;
    Value prev = t.distinguished();
    Value best = t.distinguished();
    bool have_prev = false;
    for (unsigned u = u_min; u <= u_max; ++u) {
        StepFunction f = sample(g, schemes, u, conv);
        Value cur = theta(f, t);
        rep.levels.push_back(u);
        rep.level_reached = u;
        if (have_prev) {
            double d = t.distance(cur, prev);
            rep.residuals.push_back(d);
            rep.final_residual = d;
            bool ok = (tol == 0.0) ? t.equal(cur, prev) : d <= tol;
            if (ok) {
                rep.converged = true;
                best = std::move(cur);
                return {std::move(best), std::move(rep)};
            }
        }
        prev = std::move(cur);
        have_prev = true;
    }
    best = std::move(prev);
    return {std::move(best), std::move(rep)};
}

/// theta(gamma(parts)) == delta(theta(parts)...) at the root cell.
template <TargetObject T>
bool verify_morphism_square(const T& t, std::span<const StepFunction> parts, double tol = 0.0) {
    using Value = typename T::Value;
    StepFunction assembled = juxtapose(parts);
    Value lhs = theta(assembled, t);
    std::vector<Value> images;
    images.reserve(parts.size());
    for (const auto& p : parts) images.push_back(theta(p, t));
    Value rhs = t.delta(images, CellRef{0, 0});
    return tol == 0.0 ? t.equal(lhs, rhs) : t.distance(lhs, rhs) <= tol;
}

/// Evaluates theta along two routes (the recursion, and the recursion after
/// one extra refinement) and demands agreement; targets exposing a closed
/// form are additionally checked against it.
template <TargetObject T>
bool verify_uniqueness(const StepFunction& f, const T& t, double tol = 0.0) {
    using Value = typename T::Value;
    Value a = theta(f, t);
    Value b = theta(refine(f), t);
    bool ok = tol == 0.0 ? t.equal(a, b) : t.distance(a, b) <= tol;
    if constexpr (requires { t.closed_form(f); }) {
        Value c = t.closed_form(f);
        ok = ok && (tol == 0.0 ? t.equal(a, c) : t.distance(a, c) <= tol);
    }
    return ok;
}

} // namespace catint
