#include "catint/verify.hpp"

#include <algorithm>
#include <cmath>

namespace catint {

StepFunction random_step_function(std::mt19937_64& rng, unsigned n, unsigned level, Backend b,
                                  std::int64_t max_num, std::int64_t max_den) {
    std::uint64_t cells = std::uint64_t{1} << (level * n);
    std::vector<Scalar> coeffs;
    coeffs.reserve(cells);
    for (std::uint64_t i = 0; i < cells; ++i) coeffs.push_back(random_scalar(rng, b, max_num, max_den));
    return StepFunction(n, level, std::move(coeffs));
}

BoxMeasure unit_box(unsigned n, Backend b) { return BoxMeasure::unit_lebesgue(n, b); }

BoxMeasure unit_box_power(unsigned n, Backend b, int q) {
    std::vector<DistributionMeasure> ms;
    std::vector<SplitScheme> ss;
    for (unsigned d = 0; d < n; ++d) {
        ms.push_back(
            DistributionMeasure::power(Scalar::zero(b), Scalar::one(b), Scalar::integer(q, b)));
        ss.emplace_back(Scalar::zero(b), Scalar::one(b), Scalar::one(b) / Scalar::integer(2, b));
    }
    return BoxMeasure(std::move(ms), std::move(ss));
}

BoxMeasure unit_box_xi(unsigned n, Backend b, const Scalar& xi) {
    std::vector<DistributionMeasure> ms;
    std::vector<SplitScheme> ss;
    for (unsigned d = 0; d < n; ++d) {
        ms.push_back(DistributionMeasure::lebesgue(Scalar::zero(b), Scalar::one(b)));
        ss.emplace_back(Scalar::zero(b), Scalar::one(b), xi);
    }
    return BoxMeasure(std::move(ms), std::move(ss));
}

namespace {

struct Check {
    SuiteResult& res;
    void operator()(bool ok, const std::string& what) {
        ++res.checked;
        if (!ok) {
            ++res.violations;
            if (res.messages.size() < 10) res.messages.push_back(what);
        }
    }
};

Scalar half_rational() { return Scalar::rational(1, 2); }

SuiteResult suite_scalars(std::uint64_t cases, std::uint64_t seed) {
    SuiteResult res{"scalars", 0, 0, {}};
    Check check{res};
    std::mt19937_64 rng(seed);

    for (std::uint64_t i = 0; i < cases; ++i) {
        Scalar s = random_scalar(rng, Backend::rational, 1000, 100);
        Scalar t = random_scalar(rng, Backend::rational, 1000, 100);
        check((s * t).abs() == s.abs() * t.abs(), "rational |st| != |s||t|");
        check(!(((s + t).abs()).compare(s.abs() + t.abs()) == std::strong_ordering::greater),
              "rational |s+t| > |s|+|t|");
        check(s.abs().is_zero() == s.is_zero(), "rational |s| = 0 iff s = 0");
    }
    for (std::uint64_t i = 0; i < cases; ++i) {
        Scalar s = random_scalar(rng, Backend::real);
        Scalar t = random_scalar(rng, Backend::real);
        double lhs = (s * t).norm(), rhs = s.norm() * t.norm();
        double err = std::fabs(lhs - rhs);
        double ulp = std::ldexp(std::numeric_limits<double>::epsilon(), 2) * std::fabs(rhs);
        check(err <= std::max(ulp, 4 * std::numeric_limits<double>::denorm_min()),
              "float multiplicativity beyond 4 ulp");
        check((s + t).norm() <= s.norm() + t.norm() + 1e-15, "float triangle inequality");
    }
    for (std::uint64_t i = 0; i < cases; ++i) {
        Scalar z = random_scalar(rng, Backend::cplx);
        Scalar w = random_scalar(rng, Backend::cplx);
        double lhs = (z * w).norm(), rhs = z.norm() * w.norm();
        check(std::fabs(lhs - rhs) <= 8 * std::numeric_limits<double>::epsilon() * std::fabs(rhs) +
                                          1e-300,
              "complex multiplicativity");
        check((z + w).norm() <= z.norm() + w.norm() + 1e-12, "complex triangle inequality");
    }
    return res;
}

Algebra triangular_algebra(Backend b) {
    // Lower-triangular 2x2 matrices, basis {E11, E21, E22}.
    auto O = Scalar::zero(b);
    auto I = Scalar::one(b);
    std::vector<std::vector<std::vector<Scalar>>> c(
        3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3, O)));
    // E11*E11=E11, E21*E11=E21, E22*E21=E21, E22*E22=E22; all other products 0.
    c[0][0][0] = I;
    c[1][0][1] = I;
    c[2][1][1] = I;
    c[2][2][2] = I;
    return Algebra({"E11", "E21", "E22"}, std::move(c), {I, O, I}, {}, b);
}

SuiteResult suite_algebra(std::uint64_t cases, std::uint64_t seed) {
    SuiteResult res{"algebra", 0, 0, {}};
    Check check{res};
    std::mt19937_64 rng(seed);
    Backend b = Backend::rational;

    check(validate_algebra(Algebra::field(b)).ok(), "k is not a valid algebra");
    check(validate_algebra(Algebra::product_field(2, b)).ok(), "k^2 is not a valid algebra");
    Algebra tri = triangular_algebra(b);
    check(validate_algebra(tri).ok(), "triangular algebra invalid");

    Quiver q12{{"1", "2"}, {{"a", "1", "2"}}, {}};
    PathAlgebra pa12 = path_algebra_from_quiver(q12);
    check(pa12.algebra.dim() == 3, "path algebra of 1->2 should have dim 3");
    check(validate_algebra(pa12.algebra).ok(), "path algebra of 1->2 invalid");
    Quiver q123{{"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}, {{"a", "b"}}};
    PathAlgebra pa123 = path_algebra_from_quiver(q123);
    check(pa123.algebra.dim() == 5, "path algebra of 1->2->3 mod ba should have dim 5");
    check(validate_algebra(pa123.algebra).ok(), "path algebra of 1->2->3 invalid");

    for (std::uint64_t i = 0; i < cases; ++i) {
        std::vector<Scalar> coords, coords2;
        for (unsigned j = 0; j < 3; ++j) {
            coords.push_back(random_scalar(rng, b));
            coords2.push_back(random_scalar(rng, b));
        }
        AlgebraElement x = tri.element(coords), y = tri.element(coords2);
        Scalar k = random_scalar(rng, b);

        for (unsigned p = 1; p <= 2; ++p) {
            Scalar lhs = algebra_norm_pow(tri, scale(tri, k, x), p);
            Scalar rhs = k.abs().pow_int(p) * algebra_norm_pow(tri, x, p);
            check(lhs == rhs, "norm homogeneity fails at p=" + std::to_string(p));
        }
        Scalar l1_sum = algebra_norm_pow(tri, add(tri, x, y), 1);
        Scalar l1_parts = algebra_norm_pow(tri, x, 1) + algebra_norm_pow(tri, y, 1);
        check(!(l1_sum.compare(l1_parts) == std::strong_ordering::greater),
              "p=1 triangle inequality fails");
        double l2_sum = algebra_norm_p(tri, add(tri, x, y), 2.0);
        double l2_parts = algebra_norm_p(tri, x, 2.0) + algebra_norm_p(tri, y, 2.0);
        check(l2_sum <= l2_parts * (1 + 1e-12) + 1e-12, "p=2 triangle inequality fails");
    }
    return res;
}

SuiteResult suite_measure(std::uint64_t cases, std::uint64_t seed) {
    SuiteResult res{"measure", 0, 0, {}};
    Check check{res};
    (void)seed;
    Backend b = Backend::rational;

    std::vector<BoxMeasure> boxes;
    boxes.push_back(unit_box(1, b));
    boxes.push_back(unit_box_power(1, b, 2));
    boxes.push_back(unit_box_xi(1, b, Scalar::rational(1, 3)));
    {
        std::vector<DistributionMeasure> ms;
        std::vector<SplitScheme> ss;
        ms.push_back(DistributionMeasure::polynomial(
            Scalar::zero(b), Scalar::one(b),
            {Scalar::zero(b), half_rational(), half_rational()})); // F = x/2 + x^2/2
        ss.emplace_back(Scalar::zero(b), Scalar::one(b), half_rational());
        boxes.push_back(BoxMeasure(std::move(ms), std::move(ss)));
    }
    boxes.push_back(unit_box(2, b));
    boxes.push_back(unit_box_power(2, b, 2));

    unsigned max_u = cases >= 256 ? 8 : 6;
    for (const auto& box : boxes) {
        unsigned n = box.dim();
        unsigned cap = n == 1 ? max_u : std::min(max_u, 5u);
        for (unsigned u = 0; u <= cap; ++u) {
            Scalar sum = Scalar::zero(b);
            std::uint64_t cells = std::uint64_t{1} << (u * n);
            for (std::uint64_t flat = 0; flat < cells; ++flat)
                sum += box.cell_measure_flat(u, flat);
            check(sum == box.total(), "level sum != total measure at u=" + std::to_string(u));
        }
        // additivity: parent cell = sum of its children, per dimension
        for (unsigned d = 0; d < n; ++d)
            for (unsigned u = 0; u < cap; ++u)
                for (std::uint64_t i = 0; i < (std::uint64_t{1} << u); ++i) {
                    Scalar parent = box.dim_cell_measure(d, u, i);
                    Scalar kids =
                        box.dim_cell_measure(d, u + 1, 2 * i) + box.dim_cell_measure(d, u + 1, 2 * i + 1);
                    check(parent == kids, "cell additivity fails");
                }
    }
    return res;
}

SuiteResult suite_stepfn(std::uint64_t cases, std::uint64_t seed) {
    SuiteResult res{"stepfn", 0, 0, {}};
    Check check{res};
    std::mt19937_64 rng(seed);
    Backend b = Backend::rational;
    Algebra tri = triangular_algebra(b);
    TauMap tau{{Scalar::one(b), Scalar::zero(b), Scalar::zero(b)}};

    std::uniform_int_distribution<unsigned> lvl1(1, 8), lvl2(1, 4), corner(0, 3);
    std::vector<BoxMeasure> boxes1;
    boxes1.push_back(unit_box(1, b));
    boxes1.push_back(unit_box_power(1, b, 2));
    boxes1.push_back(unit_box_xi(1, b, Scalar::rational(1, 3)));

    for (std::uint64_t i = 0; i < cases; ++i) {
        unsigned n = (i % 4 == 3) ? 2 : 1;
        unsigned u = n == 1 ? lvl1(rng) : lvl2(rng);

        // split o juxtapose and juxtapose o split round trips
        StepFunction f = random_step_function(rng, n, u, b);
        auto parts = split(f);
        check(step_equal(juxtapose(parts), f), "juxtapose(split(f)) != f");
        std::vector<StepFunction> tuple;
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c)
            tuple.push_back(random_step_function(rng, n, u - 1, b));
        auto back = split(juxtapose(tuple));
        bool same = true;
        for (std::size_t c = 0; c < tuple.size(); ++c) same = same && step_equal(back[c], tuple[c]);
        check(same, "split(juxtapose(parts)) != parts");

        // gamma is Lambda-linear
        if (n == 1) {
            std::vector<Scalar> coords{random_scalar(rng, b), random_scalar(rng, b),
                                       random_scalar(rng, b)};
            AlgebraElement a = tri.element(coords);
            std::vector<StepFunction> acted;
            for (const auto& p : tuple) acted.push_back(module_action(tri, tau, a, p));
            check(step_equal(juxtapose(acted), module_action(tri, tau, a, juxtapose(tuple))),
                  "gamma is not Lambda-linear");
        }

        // refinement is pointwise stable at cell midpoints
        if (n == 1) {
            const BoxMeasure& box = boxes1[i % boxes1.size()];
            StepFunction g = refine(f);
            std::uniform_int_distribution<std::uint64_t> cell(0, f.cell_count() - 1);
            std::uint64_t s = cell(rng);
            Scalar pt = box.scheme(0).representative(f.level(), s, Convention::midpoint);
            check(value_at(f, box.schemes(), std::vector<Scalar>{pt}) ==
                      value_at(g, box.schemes(), std::vector<Scalar>{pt}),
                  "refinement changes midpoint values");

            // p = 1 norm is representation independent
            check(step_norm_pow(f, box, 1) == step_norm_pow(g, box, 1),
                  "p=1 norm changes under refinement");
        }

        // triangle inequality
        if (n == 1) {
            const BoxMeasure& box = boxes1[i % boxes1.size()];
            StepFunction g2 = random_step_function(rng, 1, u, b);
            Scalar lhs = step_norm_pow(pw_add(f, g2), box, 1);
            Scalar rhs = step_norm_pow(f, box, 1) + step_norm_pow(g2, box, 1);
            check(!(lhs.compare(rhs) == std::strong_ordering::greater),
                  "step norm triangle inequality fails at p=1");
            double l2 = step_norm_p(pw_add(f, g2), box, 2.0);
            double r2 = step_norm_p(f, box, 2.0) + step_norm_p(g2, box, 2.0);
            check(l2 <= r2 * (1 + 1e-12) + 1e-12, "step norm triangle inequality fails at p=2");
        }
    }
    return res;
}

SuiteResult suite_engine(std::uint64_t cases, std::uint64_t seed) {
    SuiteResult res{"engine", 0, 0, {}};
    Check check{res};
    std::mt19937_64 rng(seed);
    Backend b = Backend::rational;

    struct Config {
        IntegrationTarget target;
        unsigned n;
    };
    std::vector<Config> configs;
    {
        Algebra k = Algebra::field(b);
        TauMap id{{Scalar::one(b)}};
        configs.push_back({IntegrationTarget(k, id, unit_box(1, b)), 1});
        configs.push_back({IntegrationTarget(k, id, unit_box_xi(1, b, Scalar::rational(1, 3))), 1});
        Algebra k2 = Algebra::product_field(2, b);
        TauMap tau2{{Scalar::one(b), Scalar::zero(b)}};
        configs.push_back({IntegrationTarget(k2, tau2, unit_box(2, b)), 2});
    }
    AntiderivativeTarget anti(b);
    Algebra kf = Algebra::field(b);
    TauMap idf{{Scalar::one(b)}};
    IntegrationTarget power_target(kf, idf, unit_box_power(1, b, 2));
    IntegrationTarget zero_target(kf, idf, unit_box(1, b), Scalar::zero(b));

    std::uniform_int_distribution<unsigned> lvl(0, 6);
    for (std::uint64_t i = 0; i < cases; ++i) {
        // morphism squares on the self-similar configurations
        const Config& cfg = configs[i % configs.size()];
        unsigned u = cfg.n == 1 ? lvl(rng) : lvl(rng) / 2;
        std::vector<StepFunction> parts;
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << cfg.n); ++c)
            parts.push_back(random_step_function(rng, cfg.n, u, b));
        check(verify_morphism_square(cfg.target, parts), "integration morphism square fails");

        std::vector<StepFunction> parts1;
        parts1.push_back(random_step_function(rng, 1, u, b));
        parts1.push_back(random_step_function(rng, 1, u, b));
        check(verify_morphism_square(anti, parts1), "antiderivative morphism square fails");

        // uniqueness along two routes (plus the closed form for integration),
        // including the non-self-similar box
        StepFunction f = random_step_function(rng, 1, u, b);
        check(verify_uniqueness(f, configs[0].target), "uniqueness fails (Lebesgue)");
        check(verify_uniqueness(f, power_target), "uniqueness fails (x^2 measure)");
        check(verify_uniqueness(f, anti), "uniqueness fails (antiderivative)");

        // theta is Lambda-linear (k-linearity through tau = id here)
        Scalar ka = random_scalar(rng, b), kb = random_scalar(rng, b);
        StepFunction g = random_step_function(rng, 1, u, b);
        Scalar lhs = theta(pw_add(pw_scale(ka, f), pw_scale(kb, g)), power_target);
        Scalar rhs = ka * theta(f, power_target) + kb * theta(g, power_target);
        check(lhs == rhs, "theta is not linear");

        // level stability
        check(theta(refine(f), power_target) == theta(f, power_target),
              "theta changes under refinement (integration)");
        check(pl_equal(theta(refine(f), anti), theta(f, anti)),
              "theta changes under refinement (antiderivative)");

        // zero distinguished element forces the zero morphism
        check(theta(f, zero_target).is_zero(), "zero-v target must send everything to 0");
    }

    // theta_limit on degree <= 1 samplers with midpoint sampling is level
    // independent after u = 1
    {
        BoxMeasure box = unit_box(1, b);
        Sampler s = [](std::span<const Scalar> x) {
            return Scalar::rational(3, 2) * x[0] - Scalar::rational(1, 4);
        };
        auto [value, rep] = theta_limit(s, box.schemes(), configs[0].target, 0.0, 1, 6,
                                        Convention::midpoint);
        check(rep.converged && rep.level_reached == 2, "midpoint theta_limit should stop at u=2");
        check(value == Scalar::rational(1, 2), "degree-1 midpoint integral wrong");
    }
    return res;
}

SuiteResult suite_targets(std::uint64_t cases, std::uint64_t seed) {
    SuiteResult res{"targets", 0, 0, {}};
    Check check{res};
    std::mt19937_64 rng(seed);
    Backend b = Backend::rational;
    Algebra k = Algebra::field(b);
    TauMap id{{Scalar::one(b)}};
    IntegrationTarget leb(k, id, unit_box(1, b));
    IntegrationTarget pow2(k, id, unit_box_power(1, b, 2));
    AntiderivativeTarget anti(b);

    std::uniform_int_distribution<unsigned> lvl(1, 10), lvl_small(1, 6);
    for (std::uint64_t i = 0; i < cases; ++i) {
        unsigned u = lvl(rng);
        StepFunction f = random_step_function(rng, 1, u, b);

        // fundamental consistency and the calculus round trip
        PiecewiseLinear F = antiderive(f);
        check(integrate(f, leb) == F.value(F.values().size() - 1),
              "integrate(f) != antiderive(f)(1)");
        check(step_equal(weak_derivative(F), f), "weak_derivative(antiderive(f)) != f");

        // D-square: D(kappa(F1,F2)) = juxtapose(D F1, D F2)
        unsigned us = lvl_small(rng);
        StepFunction f1 = random_step_function(rng, 1, us, b);
        StepFunction f2 = random_step_function(rng, 1, us, b);
        PiecewiseLinear F1 = antiderive(f1), F2 = antiderive(f2);
        std::vector<PiecewiseLinear> FF{F1, F2};
        PiecewiseLinear K = anti.delta(FF, CellRef{0, 0});
        std::vector<StepFunction> dd{weak_derivative(F1), weak_derivative(F2)};
        check(step_equal(weak_derivative(K), juxtapose(dd)), "D-square fails");

        // positivity, triangle, Cauchy-Schwarz
        StepFunction fa = pw_abs(f);
        const IntegrationTarget& target = (i % 2 == 0) ? leb : pow2;
        Scalar int_fa = integrate(fa, target);
        check(!(int_fa.compare(Scalar::zero(b)) == std::strong_ordering::less),
              "positivity fails");
        Scalar int_f = integrate(f, target);
        check(!(int_f.abs().compare(int_fa) == std::strong_ordering::greater),
              "|T(f)| <= T(|f|) fails");
        StepFunction g = random_step_function(rng, 1, u, b);
        Scalar s_fg = integrate(pw_multiply(f, g), target);
        Scalar s_ff = integrate(pw_multiply(f, f), target);
        Scalar s_gg = integrate(pw_multiply(g, g), target);
        check(!((s_fg * s_fg).compare(s_ff * s_gg) == std::strong_ordering::greater),
              "Cauchy-Schwarz fails");

        // Lambda-linearity of integration through tau
        Algebra tri = triangular_algebra(b);
        TauMap tau{{Scalar::one(b), Scalar::zero(b), Scalar::zero(b)}};
        std::vector<Scalar> ca{random_scalar(rng, b), random_scalar(rng, b), random_scalar(rng, b)};
        std::vector<Scalar> cb{random_scalar(rng, b), random_scalar(rng, b), random_scalar(rng, b)};
        AlgebraElement a1 = tri.element(ca), a2 = tri.element(cb);
        StepFunction combo = pw_add(module_action(tri, tau, a1, f), module_action(tri, tau, a2, g));
        Scalar expect = tau_apply(tri, tau, a1) * int_f + tau_apply(tri, tau, a2) * integrate(g, target);
        check(integrate(combo, target) == expect, "integration is not Lambda-linear");
    }
    return res;
}

} // namespace

std::vector<std::string> suite_names() {
    return {"scalars", "algebra", "measure", "stepfn", "engine", "targets"};
}

std::vector<SuiteResult> run_suites(const std::string& name, std::uint64_t cases,
                                    std::uint64_t seed) {
    std::vector<SuiteResult> out;
    auto want = [&](const char* s) { return name == "all" || name == s; };
    if (want("scalars")) out.push_back(suite_scalars(cases, seed));
    if (want("algebra")) out.push_back(suite_algebra(cases, seed + 1));
    if (want("measure")) out.push_back(suite_measure(cases, seed + 2));
    if (want("stepfn")) out.push_back(suite_stepfn(cases, seed + 3));
    if (want("engine")) out.push_back(suite_engine(cases, seed + 4));
    if (want("targets")) out.push_back(suite_targets(cases, seed + 5));
    if (out.empty()) throw Error("unknown suite '" + name + "'");
    return out;
}

} // namespace catint
