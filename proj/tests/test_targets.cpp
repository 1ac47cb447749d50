#include <doctest.h>

#include <numbers>

#include "catint/targets.hpp"
#include "catint/verify.hpp"

using namespace catint;

namespace {
const Backend B = Backend::rational;
Scalar rat(std::int64_t n, std::int64_t d = 1) { return Scalar::rational(n, d); }

IntegrationTarget make_target(const BoxMeasure& box) {
    return IntegrationTarget(Algebra::field(B), TauMap{{Scalar::one(B)}}, box);
}
} // namespace

TEST_CASE("integration target weights") {
    IntegrationTarget leb = make_target(unit_box(1, B));
    std::vector<Scalar> pair{rat(3), rat(5)};
    CHECK(leb.delta(pair, CellRef{0, 0}) == rat(4));
    CHECK(leb.corner_weight(0) == rat(1, 2));

    // F(x) = x^2: the printed map is m(k1, k2) = 1/4 k1 + 3/4 k2
    IntegrationTarget pow2 = make_target(unit_box_power(1, B, 2));
    CHECK(pow2.corner_weight(0) == rat(1, 4));
    CHECK(pow2.corner_weight(1) == rat(3, 4));
    std::vector<Scalar> kk{rat(1), rat(0)};
    CHECK(pow2.delta(kk, CellRef{0, 0}) == rat(1, 4));

    // m(v, ..., v) = v
    std::vector<Scalar> vv{pow2.distinguished(), pow2.distinguished()};
    CHECK(pow2.delta(vv, CellRef{0, 0}) == pow2.distinguished());
}

TEST_CASE("integrals of step functions") {
    IntegrationTarget leb = make_target(unit_box(1, B));
    CHECK(integrate(StepFunction::constant(1, rat(1)), leb) == rat(1));

    IntegrationTarget pow2 = make_target(unit_box_power(1, B, 2));
    CHECK(integrate(StepFunction::constant(1, rat(1)), pow2) == rat(1));

    StepFunction f(1, 1, {rat(3), rat(5)});
    CHECK(integrate(f, leb) == rat(4));
    CHECK(integrate(f, pow2) == rat(3, 4) + rat(15, 4)); // 3*(1/4) + 5*(3/4)
}

TEST_CASE("integrals of samplers") {
    IntegrationTarget leb = make_target(unit_box(1, B));
    Sampler idf = [](std::span<const Scalar> x) { return x[0]; };
    auto [v1, r1] = integrate(idf, leb, IntegrateOptions{0.0, 2, 12, Convention::midpoint});
    CHECK(r1.converged);
    CHECK(v1 == rat(1, 2));

    // d(F) = 2x dx: integral of x is 2/3
    BoxMeasure pow_box_f = unit_box_power(1, Backend::real, 2);
    IntegrationTarget pow2f(Algebra::field(Backend::real), TauMap{{Scalar::one(Backend::real)}},
                            pow_box_f);
    Sampler idf_f = [](std::span<const Scalar> x) { return x[0]; };
    auto [v2, r2] = integrate(idf_f, pow2f, IntegrateOptions{1e-9, 4, 16, Convention::midpoint});
    CHECK(v2.to_double() == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("piecewise linear carrier") {
    PiecewiseLinear id = PiecewiseLinear::identity(B, 1);
    CHECK(id.value(0).is_zero());
    CHECK(id.value(1) == rat(1, 2));
    CHECK(id.value(2) == rat(1));

    PiecewiseLinear r = id.refine();
    CHECK(r.level() == 2);
    CHECK(r.value(1) == rat(1, 4));
    CHECK(pl_equal(id, r));

    CHECK(id.eval(rat(3, 8)) == rat(3, 8));
    CHECK(pl_sup_norm(pl_scale(rat(-2), id)) == doctest::Approx(2.0));
    CHECK_THROWS(PiecewiseLinear(1, {rat(1), rat(0), rat(0)})); // F(0) != 0
}

TEST_CASE("kappa and the antiderivative target") {
    AntiderivativeTarget anti(B);
    PiecewiseLinear id = PiecewiseLinear::identity(B);

    std::vector<PiecewiseLinear> idid{id, id};
    CHECK(pl_equal(anti.delta(idid, CellRef{0, 0}), id));

    // theta(1) = id
    CHECK(pl_equal(theta(StepFunction::constant(1, rat(1)), anti), id));
}

TEST_CASE("antiderivatives are running sums") {
    // f = 1 at u=1: breakpoints (0, 1/2, 1)
    StepFunction one(1, 1, {rat(1), rat(1)});
    PiecewiseLinear F1 = antiderive(one);
    CHECK(F1.value(0).is_zero());
    CHECK(F1.value(1) == rat(1, 2));
    CHECK(F1.value(2) == rat(1));

    // f = (2, 0): breakpoints (0, 1, 1)
    StepFunction f(1, 1, {rat(2), rat(0)});
    PiecewiseLinear F2 = antiderive(f);
    CHECK(F2.value(1) == rat(1));
    CHECK(F2.value(2) == rat(1));

    // f = 0: all zero
    PiecewiseLinear F3 = antiderive(StepFunction::constant(1, rat(0)));
    for (const auto& v : F3.values()) CHECK(v.is_zero());

    // requested output level refines the breakpoints
    PiecewiseLinear F4 = antiderive(f, 3);
    CHECK(F4.level() == 3);
    CHECK(pl_equal(F4, F2));

    CHECK_THROWS_AS(antiderive(StepFunction::constant(2, rat(1))), UnsupportedConfiguration);
}

TEST_CASE("weak derivatives invert antiderivatives") {
    CHECK(step_equal(weak_derivative(PiecewiseLinear::identity(B, 3)),
                     StepFunction::constant(1, rat(1))));
    CHECK(step_equal(weak_derivative(PiecewiseLinear::zero(B)),
                     StepFunction::constant(1, rat(0))));

    StepFunction f(1, 1, {rat(3), rat(5)});
    CHECK(step_equal(weak_derivative(antiderive(f)), f));

    std::mt19937_64 rng(73);
    IntegrationTarget leb = make_target(unit_box(1, B));
    for (int i = 0; i < 200; ++i) {
        unsigned u = 1 + static_cast<unsigned>(i % 10);
        StepFunction g = random_step_function(rng, 1, u, B);
        PiecewiseLinear G = antiderive(g);
        CHECK(step_equal(weak_derivative(G), g));
        // fundamental consistency: F(1) is the integral
        CHECK(G.value(G.values().size() - 1) == integrate(g, leb));
    }
}

TEST_CASE("differentiation commutes with juxtaposition") {
    std::mt19937_64 rng(79);
    AntiderivativeTarget anti(B);
    for (int i = 0; i < 100; ++i) {
        StepFunction f1 = random_step_function(rng, 1, 4, B);
        StepFunction f2 = random_step_function(rng, 1, 4, B);
        PiecewiseLinear F1 = antiderive(f1), F2 = antiderive(f2);
        std::vector<PiecewiseLinear> FF{F1, F2};
        std::vector<StepFunction> dd{weak_derivative(F1), weak_derivative(F2)};
        CHECK(step_equal(weak_derivative(anti.delta(FF, CellRef{0, 0})), juxtapose(dd)));
    }
}

TEST_CASE("integral inequalities, exact") {
    std::mt19937_64 rng(83);
    IntegrationTarget leb = make_target(unit_box(1, B));
    IntegrationTarget pow2 = make_target(unit_box_power(1, B, 2));
    for (int i = 0; i < 200; ++i) {
        const IntegrationTarget& t = (i % 2 == 0) ? leb : pow2;
        StepFunction f = random_step_function(rng, 1, 5, B);
        StepFunction g = random_step_function(rng, 1, 5, B);

        Scalar tf = integrate(f, t);
        Scalar tfa = integrate(pw_abs(f), t);
        CHECK_FALSE(tfa.compare(Scalar::zero(B)) == std::strong_ordering::less);
        CHECK_FALSE(tf.abs().compare(tfa) == std::strong_ordering::greater);

        Scalar fg = integrate(pw_multiply(f, g), t);
        Scalar ff = integrate(pw_multiply(f, f), t);
        Scalar gg = integrate(pw_multiply(g, g), t);
        CHECK_FALSE((fg * fg).compare(ff * gg) == std::strong_ordering::greater);
    }
}

TEST_CASE("fourier coefficients") {
    // c_0(1) = 1 exactly
    FourierResult c0 = fourier_coefficient(
        StepFunction::constant(1, Scalar::real(1.0)), 0, FourierOptions{2, 8, 1e-12, Convention::midpoint});
    CHECK(c0.value.to_complex().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c0.value.to_complex().imag() == doctest::Approx(0.0));
    CHECK(c0.report.converged);

    // c_1(1) = 0
    FourierResult c1 = fourier_coefficient(StepFunction::constant(1, Scalar::real(1.0)), 1,
                                           FourierOptions{4, 12, 1e-6, Convention::midpoint});
    CHECK(std::abs(c1.value.to_complex()) < 1e-6);

    // square wave: c_1 = -2i/pi
    StepFunction sq(1, 1, {Scalar::real(1.0), Scalar::real(-1.0)});
    FourierResult w = fourier_coefficient(sq, 1, FourierOptions{4, 12, 1e-6, Convention::midpoint});
    CHECK(w.value.to_complex().real() == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(w.value.to_complex().imag() ==
          doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-3));
    CHECK(w.value.backend() == Backend::cplx);
}

TEST_CASE("polynomial norms") {
    BoxMeasure box = unit_box(1, Backend::real);
    auto one = std::vector<Scalar>{Scalar::real(1.0)};
    CHECK(poly_norm(one, 1.0, box).value == doctest::Approx(1.0));

    auto x = std::vector<Scalar>{Scalar::real(0.0), Scalar::real(1.0)};
    CHECK(poly_norm(x, 1.0, box, IntegrateOptions{1e-9, 4, 16, Convention::midpoint}).value ==
          doctest::Approx(0.5).epsilon(1e-6));

    auto tent = std::vector<Scalar>{Scalar::real(-1.0), Scalar::real(2.0)}; // 2x - 1
    CHECK(poly_norm(tent, 1.0, box, IntegrateOptions{1e-9, 4, 16, Convention::midpoint}).value ==
          doctest::Approx(0.5).epsilon(1e-6));

    CHECK_THROWS_AS(poly_norm(one, 0.5, box), InvalidP);
}

TEST_CASE("integration is Lambda-linear through tau") {
    std::mt19937_64 rng(89);
    // k x k with tau the first projection, on the 2-dimensional box
    Algebra k2 = Algebra::product_field(2, B);
    TauMap tau{{Scalar::one(B), Scalar::zero(B)}};
    IntegrationTarget t(k2, tau, unit_box(2, B));
    for (int i = 0; i < 60; ++i) {
        StepFunction f = random_step_function(rng, 2, 2, B);
        StepFunction g = random_step_function(rng, 2, 3, B);
        AlgebraElement a = k2.element({random_scalar(rng, B), random_scalar(rng, B)});
        AlgebraElement b = k2.element({random_scalar(rng, B), random_scalar(rng, B)});
        StepFunction combo = pw_add(module_action(k2, tau, a, f), module_action(k2, tau, b, g));
        Scalar expect =
            tau_apply(k2, tau, a) * integrate(f, t) + tau_apply(k2, tau, b) * integrate(g, t);
        CHECK(integrate(combo, t) == expect);
    }
}

TEST_CASE("antiderivative target rejects complex backends") {
    CHECK_THROWS_AS(AntiderivativeTarget(Backend::cplx), UnsupportedConfiguration);
}
