#include "catint/targets.hpp"

#include <cmath>
#include <numbers>

namespace catint {

IntegrationTarget::IntegrationTarget(Algebra A, TauMap tau, BoxMeasure bm)
    : IntegrationTarget(std::move(A), std::move(tau), std::move(bm), Scalar()) {
    v_ = to_backend(bm_.total(), backend_);
}

IntegrationTarget::IntegrationTarget(Algebra A, TauMap tau, BoxMeasure bm, Scalar v)
    : algebra_(std::move(A)), tau_(std::move(tau)), bm_(std::move(bm)), v_(std::move(v)),
      cache_(std::make_unique<RatioCache>()) {
    backend_ = algebra_.backend();
    if (algebra_.dim() != bm_.dim())
        throw DimensionMismatch("the box has one dimension per basis element of the algebra");
    if (bm_.backend() != backend_ && !(backend_ == Backend::cplx && bm_.backend() == Backend::real))
        throw BackendMismatch("measure backend must match the algebra");
    ValidationReport tau_rep = validate_tau(algebra_, tau_);
    if (!tau_rep.ok()) throw TargetInvalid("tau is not an algebra homomorphism: " + tau_rep.failures[0]);
    if (v_.backend() != backend_) v_ = to_backend(v_, backend_);
    cache_->ratios.resize(bm_.dim());
}

IntegrationTarget::IntegrationTarget(const IntegrationTarget& o)
    : algebra_(o.algebra_), tau_(o.tau_), bm_(o.bm_), v_(o.v_), backend_(o.backend_),
      cache_(std::make_unique<RatioCache>()) {
    cache_->ratios.resize(bm_.dim());
}

IntegrationTarget integration_target(const Algebra& A, const TauMap& tau, const BoxMeasure& bm) {
    return IntegrationTarget(A, tau, bm);
}

IntegrationTarget::Value IntegrationTarget::lambda_action(const AlgebraElement& a,
                                                          const Value& x) const {
    return tau_apply(algebra_, tau_, a) * x;
}

void IntegrationTarget::ensure_level(unsigned parent_level) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    Backend mb = bm_.backend();
    for (unsigned d = 0; d < bm_.dim(); ++d) {
        auto& per_dim = cache_->ratios[d];
        while (per_dim.size() <= parent_level) {
            unsigned l = static_cast<unsigned>(per_dim.size());
            std::vector<Scalar> parents = bm_.dim_cell_measures(d, l);
            std::vector<Scalar> children = bm_.dim_cell_measures(d, l + 1);
            std::vector<Scalar> row;
            row.reserve(children.size());
            for (std::size_t i = 0; i < children.size(); ++i) {
                const Scalar& parent = parents[i / 2];
                row.push_back(parent.is_zero() ? Scalar::zero(mb) : children[i] / parent);
            }
            per_dim.push_back(std::move(row));
        }
    }
}

const Scalar& IntegrationTarget::child_ratio(unsigned d, unsigned parent_level,
                                             std::uint64_t child_index) const {
    return cache_->ratios[d][parent_level][child_index];
}

IntegrationTarget::Value IntegrationTarget::delta(std::span<const Value> parts,
                                                  CellRef where) const {
    const unsigned n = bm_.dim();
    if (parts.size() != (std::uint64_t{1} << n))
        throw DimensionMismatch("delta needs 2^n arguments");
    ensure_level(where.level);
    Backend mb = bm_.backend();
    Scalar out = Scalar::zero(backend_);
    for (std::uint64_t corner = 0; corner < parts.size(); ++corner) {
        Scalar w = Scalar::one(mb);
        for (unsigned d = 0; d < n; ++d) {
            std::uint64_t j =
                (where.index >> (where.level * (n - 1 - d))) & ((std::uint64_t{1} << where.level) - 1);
            std::uint64_t bit = (corner >> (n - 1 - d)) & 1;
            w *= child_ratio(d, where.level, j * 2 + bit);
        }
        out += to_backend(w, backend_) * parts[corner];
    }
    return out;
}

IntegrationTarget::Value IntegrationTarget::closed_form(const StepFunction& f) const {
    if (f.dim() != bm_.dim()) throw DimensionMismatch("step function dimension mismatch");
    const unsigned n = bm_.dim(), u = f.level();
    std::vector<std::vector<Scalar>> dims;
    dims.reserve(n);
    for (unsigned d = 0; d < n; ++d) dims.push_back(bm_.dim_cell_measures(d, u));
    const std::uint64_t mask = (std::uint64_t{1} << u) - 1;
    Scalar sum = Scalar::zero(backend_);
    for (std::uint64_t flat = 0; flat < f.cell_count(); ++flat) {
        Scalar m = dims[0][(flat >> (u * (n - 1))) & mask];
        for (unsigned d = 1; d < n; ++d) m *= dims[d][(flat >> (u * (n - 1 - d))) & mask];
        sum += f.coeff(flat) * to_backend(m, backend_);
    }
    // the recursion sends the unit mass to v, so a custom v rescales the sum
    return sum * v_ / to_backend(bm_.total(), backend_);
}

Scalar IntegrationTarget::corner_weight(std::uint64_t corner) const {
    const unsigned n = bm_.dim();
    if (corner >= (std::uint64_t{1} << n)) throw IndexOutOfRange("corner out of range");
    ensure_level(0);
    Scalar w = Scalar::one(bm_.backend());
    for (unsigned d = 0; d < n; ++d) w *= child_ratio(d, 0, (corner >> (n - 1 - d)) & 1);
    return w;
}

Scalar integrate(const StepFunction& f, const IntegrationTarget& t) { return theta(f, t); }

std::pair<Scalar, ConvergenceReport> integrate(const Sampler& g, const IntegrationTarget& t,
                                               const IntegrateOptions& opts) {
    return theta_limit(g, t.box().schemes(), t, opts.tol, opts.u_min, opts.u_max, opts.convention);
}

PiecewiseLinear::PiecewiseLinear(unsigned level, std::vector<Scalar> values)
    : level_(level), values_(std::move(values)) {
    if (level_ >= 62 || values_.size() != (std::uint64_t{1} << level_) + 1)
        throw DimensionMismatch("piecewise-linear data needs 2^u + 1 breakpoint values");
    backend_ = values_[0].backend();
    for (const auto& v : values_)
        if (v.backend() != backend_) throw BackendMismatch("breakpoint values must share a backend");
    if (backend_ == Backend::cplx)
        throw UnsupportedConfiguration("the antiderivative carrier needs an ordered backend");
    if (!values_[0].is_zero()) throw Error("piecewise-linear functions must satisfy F(0) = 0");
}

PiecewiseLinear PiecewiseLinear::identity(Backend b, unsigned level) {
    std::vector<Scalar> vals;
    std::uint64_t m = std::uint64_t{1} << level;
    Scalar den = Scalar::integer(static_cast<std::int64_t>(m), b);
    for (std::uint64_t j = 0; j <= m; ++j)
        vals.push_back(Scalar::integer(static_cast<std::int64_t>(j), b) / den);
    return PiecewiseLinear(level, std::move(vals));
}

PiecewiseLinear PiecewiseLinear::zero(Backend b) {
    return PiecewiseLinear(0, {Scalar::zero(b), Scalar::zero(b)});
}

PiecewiseLinear PiecewiseLinear::refine() const {
    std::vector<Scalar> vals;
    vals.reserve(values_.size() * 2 - 1);
    Scalar two = Scalar::integer(2, backend_);
    for (std::size_t j = 0; j + 1 < values_.size(); ++j) {
        vals.push_back(values_[j]);
        vals.push_back((values_[j] + values_[j + 1]) / two);
    }
    vals.push_back(values_.back());
    return PiecewiseLinear(level_ + 1, std::move(vals));
}

PiecewiseLinear PiecewiseLinear::refine_to(unsigned level) const {
    if (level < level_) throw LevelOverflow("cannot coarsen a piecewise-linear function");
    PiecewiseLinear out = *this;
    while (out.level() < level) out = out.refine();
    return out;
}

Scalar PiecewiseLinear::eval(const Scalar& x) const {
    Scalar zero = Scalar::zero(backend_);
    Scalar one = Scalar::one(backend_);
    if (x.compare(zero) == std::strong_ordering::less || one.compare(x) == std::strong_ordering::less)
        throw OutOfDomain("evaluation point outside [0,1]");
    std::uint64_t m = std::uint64_t{1} << level_;
    Scalar scaled = x * Scalar::integer(static_cast<std::int64_t>(m), backend_);
    // locate the breakpoint interval
    std::uint64_t j = 0;
    for (std::uint64_t step = m; step > 0; step /= 2) {
        while (j + step <= m - 1 &&
               !(scaled.compare(Scalar::integer(static_cast<std::int64_t>(j + step), backend_)) ==
                 std::strong_ordering::less))
            j += step;
    }
    Scalar t = scaled - Scalar::integer(static_cast<std::int64_t>(j), backend_);
    return values_[j] + t * (values_[j + 1] - values_[j]);
}

PiecewiseLinear pl_add(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    if (a.backend() != b.backend()) throw BackendMismatch("operands must share a backend");
    unsigned u = std::max(a.level(), b.level());
    PiecewiseLinear x = a.refine_to(u), y = b.refine_to(u);
    std::vector<Scalar> vals(x.values().begin(), x.values().end());
    for (std::size_t j = 0; j < vals.size(); ++j) vals[j] += y.value(j);
    return PiecewiseLinear(u, std::move(vals));
}

PiecewiseLinear pl_scale(const Scalar& c, const PiecewiseLinear& f) {
    if (c.backend() != f.backend()) throw BackendMismatch("scale factor backend mismatch");
    std::vector<Scalar> vals(f.values().begin(), f.values().end());
    for (auto& v : vals) v *= c;
    return PiecewiseLinear(f.level(), std::move(vals));
}

double pl_sup_norm(const PiecewiseLinear& f) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, v.norm());
    return m;
}

double pl_sup_distance(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    unsigned u = std::max(a.level(), b.level());
    PiecewiseLinear x = a.refine_to(u), y = b.refine_to(u);
    double m = 0.0;
    for (std::size_t j = 0; j < x.values().size(); ++j)
        m = std::max(m, (x.value(j) - y.value(j)).norm());
    return m;
}

bool pl_equal(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    if (a.backend() != b.backend()) return false;
    unsigned u = std::max(a.level(), b.level());
    PiecewiseLinear x = a.refine_to(u), y = b.refine_to(u);
    for (std::size_t j = 0; j < x.values().size(); ++j)
        if (!(x.value(j) == y.value(j))) return false;
    return true;
}

AntiderivativeTarget::AntiderivativeTarget(Backend b) : backend_(b) {
    if (b == Backend::cplx)
        throw UnsupportedConfiguration("the antiderivative target needs an ordered backend");
}

AntiderivativeTarget antiderivative_target(Backend b) { return AntiderivativeTarget(b); }

AntiderivativeTarget::Value AntiderivativeTarget::delta(std::span<const Value> parts,
                                                        CellRef) const {
    if (parts.size() != 2) throw DimensionMismatch("kappa combines exactly two functions");
    unsigned u = std::max(parts[0].level(), parts[1].level());
    PiecewiseLinear f1 = parts[0].refine_to(u), f2 = parts[1].refine_to(u);
    std::uint64_t m = std::uint64_t{1} << u;
    Scalar half = Scalar::one(backend_) / Scalar::integer(2, backend_);
    std::vector<Scalar> vals;
    vals.reserve(2 * m + 1);
    for (std::uint64_t j = 0; j <= m; ++j) vals.push_back(half * f1.value(j));
    const Scalar& top = f1.value(m);
    for (std::uint64_t j = 1; j <= m; ++j) vals.push_back(half * (top + f2.value(j)));
    return PiecewiseLinear(u + 1, std::move(vals));
}

AntiderivativeTarget::Value AntiderivativeTarget::random_element(std::mt19937_64& rng) const {
    std::uniform_int_distribution<unsigned> lvl(0, 5);
    unsigned u = lvl(rng);
    std::vector<Scalar> vals;
    vals.push_back(Scalar::zero(backend_));
    for (std::uint64_t j = 1; j <= (std::uint64_t{1} << u); ++j)
        vals.push_back(random_scalar(rng, backend_));
    return PiecewiseLinear(u, std::move(vals));
}

PiecewiseLinear antiderive(const StepFunction& f, unsigned u_out) {
    if (f.dim() != 1)
        throw UnsupportedConfiguration("antiderivatives are defined for the n = 1 configuration");
    AntiderivativeTarget t(f.backend());
    PiecewiseLinear out = theta(f, t);
    if (u_out > out.level()) out = out.refine_to(u_out);
    return out;
}

StepFunction weak_derivative(const PiecewiseLinear& F) {
    unsigned u = F.level();
    Scalar scale = Scalar::integer(std::int64_t{1} << u, F.backend());
    std::vector<Scalar> coeffs;
    coeffs.reserve(std::uint64_t{1} << u);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << u); ++j)
        coeffs.push_back((F.value(j + 1) - F.value(j)) * scale);
    return StepFunction(1, u, std::move(coeffs));
}

namespace {

ConvergenceReport merge_reports(const ConvergenceReport& a, const ConvergenceReport& b) {
    ConvergenceReport out;
    out.levels = a.levels.size() >= b.levels.size() ? a.levels : b.levels;
    std::size_t m = std::max(a.residuals.size(), b.residuals.size());
    for (std::size_t i = 0; i < m; ++i) {
        double x = i < a.residuals.size() ? a.residuals[i] : 0.0;
        double y = i < b.residuals.size() ? b.residuals[i] : 0.0;
        out.residuals.push_back(std::max(x, y));
    }
    out.converged = a.converged && b.converged;
    out.final_residual = std::max(a.final_residual, b.final_residual);
    out.level_reached = std::max(a.level_reached, b.level_reached);
    return out;
}

} // namespace

FourierResult fourier_coefficient(const Sampler& g, std::int64_t k, const FourierOptions& opts) {
    BoxMeasure bm = BoxMeasure::unit_lebesgue(1, Backend::real);
    IntegrationTarget t(Algebra::field(Backend::real), TauMap{{Scalar::one(Backend::real)}}, bm);
    const double tau_k = 2.0 * std::numbers::pi * static_cast<double>(k);
    Sampler h_cos = [&](std::span<const Scalar> x) {
        return g(x) * Scalar(std::cos(tau_k * x[0].to_double()));
    };
    Sampler h_sin = [&](std::span<const Scalar> x) {
        return g(x) * Scalar(std::sin(tau_k * x[0].to_double()));
    };
    auto [re, rep_re] =
        theta_limit(h_cos, bm.schemes(), t, opts.tol, opts.u_min, opts.u_max, opts.convention);
    auto [im, rep_im] =
        theta_limit(h_sin, bm.schemes(), t, opts.tol, opts.u_min, opts.u_max, opts.convention);
    FourierResult out;
    out.value = Scalar::complex(re.to_double(), -im.to_double());
    out.report = merge_reports(rep_re, rep_im);
    return out;
}

FourierResult fourier_coefficient(const StepFunction& f, std::int64_t k,
                                  const FourierOptions& opts) {
    if (f.dim() != 1)
        throw UnsupportedConfiguration("Fourier coefficients are defined on the unit interval");
    StepFunction fr = convert_backend(f, Backend::real);
    BoxMeasure bm = BoxMeasure::unit_lebesgue(1, Backend::real);
    std::vector<SplitScheme> schemes(bm.schemes().begin(), bm.schemes().end());
    FourierOptions o = opts;
    o.u_min = std::max(o.u_min, f.level());
    o.u_max = std::max(o.u_max, o.u_min);
    Sampler g = [fr, schemes](std::span<const Scalar> x) { return value_at(fr, schemes, x); };
    return fourier_coefficient(g, k, o);
}

Scalar poly_eval(std::span<const Scalar> coeffs, const Scalar& x) {
    Scalar acc = Scalar::zero(x.backend());
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

PolyNormResult poly_norm(std::span<const Scalar> coeffs, double p, const BoxMeasure& bm,
                         const IntegrateOptions& opts) {
    if (p < 1.0) throw InvalidP("p must be >= 1");
    if (bm.dim() != 1)
        throw UnsupportedConfiguration("polynomial norms are defined on one-dimensional boxes");
    if (bm.backend() != Backend::real)
        throw BackendMismatch("polynomial norms run on the float backend");
    std::vector<Scalar> cs;
    for (const auto& c : coeffs) cs.push_back(to_backend(c, Backend::real));
    IntegrationTarget t(Algebra::field(Backend::real), TauMap{{Scalar::one(Backend::real)}}, bm);
    Sampler g = [cs, p](std::span<const Scalar> x) {
        return Scalar(std::pow(poly_eval(cs, x[0]).norm(), p));
    };
    auto [value, report] =
        theta_limit(g, bm.schemes(), t, opts.tol, opts.u_min, opts.u_max, opts.convention);
    return PolyNormResult{std::pow(value.to_double(), 1.0 / p), std::move(report)};
}

} // namespace catint
