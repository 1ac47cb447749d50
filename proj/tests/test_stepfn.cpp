#include <doctest.h>

#include "catint/random.hpp"
#include "catint/stepfn.hpp"
#include "catint/verify.hpp"

using namespace catint;

namespace {
const Backend B = Backend::rational;
Scalar rat(std::int64_t n, std::int64_t d = 1) { return Scalar::rational(n, d); }
StepFunction step1(std::vector<std::int64_t> values, unsigned level) {
    std::vector<Scalar> cs;
    for (auto v : values) cs.push_back(rat(v));
    return StepFunction(1, level, std::move(cs));
}
} // namespace

TEST_CASE("refine duplicates coefficients") {
    StepFunction c = StepFunction::constant(1, rat(7));
    StepFunction r = refine(c);
    CHECK(r.level() == 1);
    CHECK(r.coeff(std::uint64_t{0}) == rat(7));
    CHECK(r.coeff(std::uint64_t{1}) == rat(7));

    StepFunction f = step1({3, 5}, 1);
    StepFunction g = refine(f);
    CHECK(g.coeff(std::uint64_t{0}) == rat(3));
    CHECK(g.coeff(std::uint64_t{1}) == rat(3));
    CHECK(g.coeff(std::uint64_t{2}) == rat(5));
    CHECK(g.coeff(std::uint64_t{3}) == rat(5));
}

TEST_CASE("refinement preserves midpoint samples and the p=1 norm") {
    std::mt19937_64 rng(5);
    BoxMeasure box = unit_box(1, B);
    for (int i = 0; i < 50; ++i) {
        StepFunction f = random_step_function(rng, 1, 4, B);
        StepFunction g = refine(f);
        for (std::uint64_t s = 0; s < f.cell_count(); ++s) {
            Scalar pt = box.scheme(0).representative(4, s, Convention::midpoint);
            std::vector<Scalar> p{pt};
            CHECK(value_at(f, box.schemes(), p) == value_at(g, box.schemes(), p));
        }
        CHECK(step_norm_pow(f, box, 1) == step_norm_pow(g, box, 1));
    }
}

TEST_CASE("juxtapose assembles corner blocks") {
    // n = 1: (const 3, const 5) -> (3, 5)
    std::vector<StepFunction> parts{StepFunction::constant(1, rat(3)),
                                    StepFunction::constant(1, rat(5))};
    StepFunction f = juxtapose(parts);
    CHECK(f.level() == 1);
    CHECK(f.coeff(std::uint64_t{0}) == rat(3));
    CHECK(f.coeff(std::uint64_t{1}) == rat(5));

    // gamma(1, 1, ..., 1) = 1
    std::vector<StepFunction> ones(4, StepFunction::constant(2, rat(1)));
    CHECK(step_equal(juxtapose(ones), StepFunction::constant(2, rat(1))));

    // n = 2: four constants land on their corner blocks.  Corner tuple
    // (d1, d2), a=0/b=1, dimension 1 most significant.
    std::vector<StepFunction> quads{
        StepFunction::constant(2, rat(10)), // (a,a)
        StepFunction::constant(2, rat(20)), // (a,b)
        StepFunction::constant(2, rat(30)), // (b,a)
        StepFunction::constant(2, rat(40)), // (b,b)
    };
    StepFunction q = juxtapose(quads);
    CHECK(q.level() == 1);
    std::vector<std::uint64_t> aa{0, 0}, ab{0, 1}, ba{1, 0}, bb{1, 1};
    CHECK(q.coeff(aa) == rat(10));
    CHECK(q.coeff(ab) == rat(20));
    CHECK(q.coeff(ba) == rat(30));
    CHECK(q.coeff(bb) == rat(40));
}

TEST_CASE("split inverts juxtapose") {
    // split(1) = (1, ..., 1)
    StepFunction one = refine(StepFunction::constant(1, rat(1)));
    auto halves = split(one);
    CHECK(halves.size() == 2);
    CHECK(step_equal(halves[0], StepFunction::constant(1, rat(1))));

    // split((3,5)) = (const 3, const 5)
    auto parts = split(step1({3, 5}, 1));
    CHECK(step_equal(parts[0], StepFunction::constant(1, rat(3))));
    CHECK(step_equal(parts[1], StepFunction::constant(1, rat(5))));

    CHECK_THROWS_AS(split(StepFunction::constant(1, rat(1))), LevelZero);
}

TEST_CASE("round trips at levels 1..8 including n = 2") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        unsigned n = (i % 3 == 2) ? 2 : 1;
        unsigned u = 1 + static_cast<unsigned>(i % (n == 1 ? 8 : 4));
        StepFunction f = random_step_function(rng, n, u, B);
        CHECK(step_equal(juxtapose(split(f)), f));
        std::vector<StepFunction> tuple;
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c)
            tuple.push_back(random_step_function(rng, n, u - 1, B));
        auto back = split(juxtapose(tuple));
        for (std::size_t c = 0; c < tuple.size(); ++c) CHECK(step_equal(back[c], tuple[c]));
    }
}

TEST_CASE("module action scales by tau") {
    auto O = Scalar::zero(B);
    auto I = Scalar::one(B);
    std::vector<std::vector<std::vector<Scalar>>> c(
        3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3, O)));
    c[0][0][0] = I;
    c[1][0][1] = I;
    c[2][1][1] = I;
    c[2][2][2] = I;
    Algebra tri({"E11", "E21", "E22"}, std::move(c), {I, O, I}, {}, B);

    StepFunction f = step1({3, -5}, 1);

    // tau = id on the field: doubling
    Algebra k = Algebra::field(B);
    TauMap id{{I}};
    StepFunction doubled = module_action(k, id, k.element({rat(2)}), f);
    CHECK(step_equal(doubled, step1({6, -10}, 1)));

    // vertex-2 projection kills E11
    TauMap tau2{{O, O, I}};
    StepFunction dead = module_action(tri, tau2, tri.basis_element(0), f);
    CHECK(step_equal(dead, pw_scale(O, f)));

    // norm law: ||a f||_1 = |tau(a)| ||f||_1
    BoxMeasure box = unit_box(1, B);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        AlgebraElement a = tri.element(
            {random_scalar(rng, B), random_scalar(rng, B), random_scalar(rng, B)});
        StepFunction g = random_step_function(rng, 1, 3, B);
        TauMap tau1{{I, O, O}};
        CHECK(step_norm_pow(module_action(tri, tau1, a, g), box, 1) ==
              tau_apply(tri, tau1, a).abs() * step_norm_pow(g, box, 1));
    }
}

TEST_CASE("step norms") {
    BoxMeasure box = unit_box(1, B);
    CHECK(step_norm_pow(pw_scale(rat(0), step1({1, 1}, 1)), box, 1).is_zero());
    CHECK(step_norm_pow(step1({3, 5}, 1), box, 1) == rat(4)); // 3/2 + 5/2
    CHECK(step_norm_pow(StepFunction::constant(1, rat(1)), box, 1) == box.total());
    CHECK(step_norm_p(step1({3, 5}, 1), box, 1.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(step_norm_p(step1({3, 5}, 1), box, 0.5), InvalidP);
}

TEST_CASE("pointwise operations") {
    CHECK(step_equal(pw_abs(step1({3, -5}, 1)), step1({3, 5}, 1)));
    CHECK(step_equal(pw_multiply(step1({3, 5}, 1), step1({2, 2}, 1)), step1({6, 10}, 1)));
    // mixed levels align by refinement: (3) + (1,2) = (4,5)
    CHECK(step_equal(pw_add(StepFunction::constant(1, rat(3)), step1({1, 2}, 1)),
                     step1({4, 5}, 1)));
    CHECK_THROWS_AS(pw_abs(StepFunction::constant(1, Scalar::complex(1, 1))), OrderUnavailable);
    CHECK_THROWS_AS(pw_add(StepFunction::constant(1, rat(1)),
                           StepFunction::constant(1, Scalar::real(1.0))),
                    BackendMismatch);
}

TEST_CASE("sampling") {
    BoxMeasure box = unit_box(1, B);
    Sampler id = [](std::span<const Scalar> x) { return x[0]; };
    StepFunction mid = sample(id, box.schemes(), 1, Convention::midpoint);
    CHECK(mid.coeff(std::uint64_t{0}) == rat(1, 4));
    CHECK(mid.coeff(std::uint64_t{1}) == rat(3, 4));
    StepFunction left = sample(id, box.schemes(), 1, Convention::left);
    CHECK(left.coeff(std::uint64_t{0}) == rat(0));
    CHECK(left.coeff(std::uint64_t{1}) == rat(1, 2));
    Sampler c = [](std::span<const Scalar>) { return Scalar::rational(9); };
    CHECK(step_equal(sample(c, box.schemes(), 3, Convention::midpoint),
                     StepFunction::constant(1, rat(9))));

    Sampler bad = [](std::span<const Scalar>) -> Scalar { throw std::runtime_error("boom"); };
    CHECK_THROWS_AS(sample(bad, box.schemes(), 1, Convention::midpoint), EvaluationFailure);
}

TEST_CASE("level caps") {
    std::mt19937_64 rng(1);
    StepFunction f = random_step_function(rng, 3, 8, B); // n=3 cap is 8
    CHECK_THROWS_AS(refine(f), LevelOverflow);
}

TEST_CASE("equality is an a.e. identification across levels") {
    StepFunction f = step1({3, 5}, 1);
    CHECK(step_equal(f, refine(refine(f))));
    CHECK_FALSE(step_equal(f, step1({3, 6}, 1)));
}

TEST_CASE("direct sum norms") {
    std::vector<double> zeros{0.0, 0.0};
    CHECK(direct_sum_norm(zeros, 1.0, leinster_weight(1)) == 0.0);
    std::vector<double> ones{1.0, 1.0};
    CHECK(direct_sum_norm(ones, 1.0, leinster_weight(1)) == doctest::Approx(1.0));
    BoxMeasure box = unit_box(1, B);
    CHECK(paper_weight(box) == doctest::Approx(1.0));
    CHECK(direct_sum_norm(ones, 1.0, paper_weight(box)) == doctest::Approx(2.0));
    CHECK_THROWS_AS(direct_sum_norm(ones, 1.0, 0.0), InvalidWeight);
    CHECK_THROWS_AS(direct_sum_norm(ones, 0.5, 1.0), InvalidP);
}

TEST_CASE("gamma is Lambda-linear") {
    std::mt19937_64 rng(31);
    Algebra k = Algebra::field(B);
    TauMap id{{Scalar::one(B)}};
    for (int i = 0; i < 100; ++i) {
        AlgebraElement a = k.element({random_scalar(rng, B)});
        std::vector<StepFunction> parts{random_step_function(rng, 1, 3, B),
                                        random_step_function(rng, 1, 3, B)};
        std::vector<StepFunction> acted{module_action(k, id, a, parts[0]),
                                        module_action(k, id, a, parts[1])};
        CHECK(step_equal(juxtapose(acted), module_action(k, id, a, juxtapose(parts))));
    }
}

TEST_CASE("norm invariance under refinement holds for non-Lebesgue boxes too") {
    std::mt19937_64 rng(37);
    BoxMeasure pow2 = unit_box_power(1, B, 2);
    BoxMeasure skew = unit_box_xi(1, B, Scalar::rational(1, 3));
    for (int i = 0; i < 50; ++i) {
        StepFunction f = random_step_function(rng, 1, 5, B);
        CHECK(step_norm_pow(f, pow2, 1) == step_norm_pow(refine(f), pow2, 1));
        CHECK(step_norm_pow(f, skew, 1) == step_norm_pow(refine(f), skew, 1));
    }
}
