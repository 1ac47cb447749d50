#include "catint/stepfn.hpp"

#include <cmath>

namespace catint {

unsigned default_max_level(unsigned n) {
    if (n <= 1) return 24;
    if (n == 2) return 12;
    return 8;
}

namespace {

unsigned effective_max(unsigned n, unsigned max_level) {
    return max_level == 0 ? default_max_level(n) : max_level;
}

std::uint64_t pow2(unsigned e) { return std::uint64_t{1} << e; }

} // namespace

StepFunction::StepFunction(unsigned n, unsigned level, std::vector<Scalar> coeffs)
    : n_(n), level_(level), coeffs_(std::move(coeffs)) {
    if (n_ == 0) throw DimensionMismatch("step functions need at least one dimension");
    if (static_cast<std::uint64_t>(level_) * n_ >= 63) throw LevelOverflow("tensor too large");
    if (coeffs_.size() != pow2(level_ * n_))
        throw DimensionMismatch("coefficient tensor must have 2^{un} entries");
    backend_ = coeffs_[0].backend();
    for (const auto& c : coeffs_)
        if (c.backend() != backend_)
            throw BackendMismatch("all coefficients must share a backend");
}

StepFunction StepFunction::constant(unsigned n, const Scalar& value) {
    return StepFunction(n, 0, {value});
}

const Scalar& StepFunction::coeff(std::uint64_t flat) const {
    if (flat >= coeffs_.size()) throw IndexOutOfRange("flat cell index out of range");
    return coeffs_[flat];
}

std::uint64_t StepFunction::flat_index(std::span<const std::uint64_t> idx) const {
    if (idx.size() != n_) throw DimensionMismatch("multi-index arity mismatch");
    std::uint64_t flat = 0;
    for (unsigned d = 0; d < n_; ++d) {
        if (idx[d] >= pow2(level_)) throw IndexOutOfRange("cell index out of range");
        flat = (flat << level_) | idx[d];
    }
    return flat;
}

const Scalar& StepFunction::coeff(std::span<const std::uint64_t> idx) const {
    return coeffs_[flat_index(idx)];
}

StepFunction refine(const StepFunction& f, unsigned max_level) {
    const unsigned n = f.dim(), u = f.level();
    if (u + 1 > effective_max(n, max_level))
        throw LevelOverflow("refinement beyond the configured max level " +
                            std::to_string(effective_max(n, max_level)));
    std::vector<Scalar> out(pow2((u + 1) * n), Scalar::zero(f.backend()));
    std::vector<std::uint64_t> idx(n, 0);
    const std::uint64_t cells = f.cell_count();
    for (std::uint64_t flat = 0; flat < cells; ++flat) {
        // decode parent multi-index
        std::uint64_t rest = flat;
        for (unsigned d = n; d-- > 0;) {
            idx[d] = rest & (pow2(u) - 1);
            rest >>= u;
        }
        const Scalar& c = f.coeff(flat);
        for (std::uint64_t corner = 0; corner < pow2(n); ++corner) {
            std::uint64_t child = 0;
            for (unsigned d = 0; d < n; ++d) {
                std::uint64_t bit = (corner >> (n - 1 - d)) & 1;
                child = (child << (u + 1)) | (idx[d] * 2 + bit);
            }
            out[child] = c;
        }
    }
    return StepFunction(n, u + 1, std::move(out));
}

StepFunction refine_to(const StepFunction& f, unsigned level, unsigned max_level) {
    if (level < f.level()) throw LevelOverflow("cannot refine to a coarser level");
    StepFunction g = f;
    while (g.level() < level) g = refine(g, max_level);
    return g;
}

StepFunction juxtapose(std::span<const StepFunction> parts, unsigned max_level) {
    if (parts.empty()) throw DimensionMismatch("juxtapose needs 2^n parts");
    const unsigned n = parts[0].dim(), u = parts[0].level();
    const Backend b = parts[0].backend();
    if (parts.size() != pow2(n)) throw DimensionMismatch("juxtapose needs exactly 2^n parts");
    for (const auto& p : parts) {
        if (p.dim() != n) throw DimensionMismatch("juxtapose parts must share the dimension");
        if (p.level() != u) throw MixedLevels("juxtapose parts must share a level");
        if (p.backend() != b) throw BackendMismatch("juxtapose parts must share a backend");
    }
    if (u + 1 > effective_max(n, max_level))
        throw LevelOverflow("juxtaposition beyond the configured max level");
    std::vector<Scalar> out(pow2((u + 1) * n), Scalar::zero(b));
    std::vector<std::uint64_t> idx(n, 0);
    for (std::uint64_t corner = 0; corner < pow2(n); ++corner) {
        const StepFunction& part = parts[corner];
        const std::uint64_t cells = part.cell_count();
        for (std::uint64_t flat = 0; flat < cells; ++flat) {
            std::uint64_t rest = flat;
            for (unsigned d = n; d-- > 0;) {
                idx[d] = rest & (pow2(u) - 1);
                rest >>= u;
            }
            std::uint64_t dest = 0;
            for (unsigned d = 0; d < n; ++d) {
                std::uint64_t bit = (corner >> (n - 1 - d)) & 1;
                dest = (dest << (u + 1)) | (bit * pow2(u) + idx[d]);
            }
            out[dest] = part.coeff(flat);
        }
    }
    return StepFunction(n, u + 1, std::move(out));
}

std::vector<StepFunction> split(const StepFunction& f) {
    const unsigned n = f.dim(), u = f.level();
    if (u == 0) throw LevelZero("cannot split a level-0 step function");
    std::vector<std::vector<Scalar>> parts(pow2(n));
    for (auto& p : parts) p.assign(pow2((u - 1) * n), Scalar::zero(f.backend()));
    std::vector<std::uint64_t> idx(n, 0);
    const std::uint64_t cells = f.cell_count();
    for (std::uint64_t flat = 0; flat < cells; ++flat) {
        std::uint64_t rest = flat;
        for (unsigned d = n; d-- > 0;) {
            idx[d] = rest & (pow2(u) - 1);
            rest >>= u;
        }
        std::uint64_t corner = 0, sub = 0;
        for (unsigned d = 0; d < n; ++d) {
            std::uint64_t top = idx[d] >> (u - 1);
            corner = (corner << 1) | top;
            sub = (sub << (u - 1)) | (idx[d] & (pow2(u - 1) - 1));
        }
        parts[corner][sub] = f.coeff(flat);
    }
    std::vector<StepFunction> out;
    out.reserve(parts.size());
    for (auto& p : parts) out.emplace_back(n, u - 1, std::move(p));
    return out;
}

StepFunction module_action(const Algebra& A, const TauMap& t, const AlgebraElement& a,
                           const StepFunction& f) {
    Scalar s = tau_apply(A, t, a);
    if (s.backend() != f.backend())
        throw BackendMismatch("algebra and step function backends differ");
    return pw_scale(s, f);
}

namespace {

std::vector<std::vector<Scalar>> per_dim_measures(const StepFunction& f, const BoxMeasure& bm) {
    std::vector<std::vector<Scalar>> out;
    out.reserve(bm.dim());
    for (unsigned d = 0; d < bm.dim(); ++d) out.push_back(bm.dim_cell_measures(d, f.level()));
    return out;
}

Scalar cell_measure_from(const std::vector<std::vector<Scalar>>& dims, unsigned n, unsigned level,
                         std::uint64_t flat) {
    Scalar m = dims[0][(flat >> (level * (n - 1))) & (pow2(level) - 1)];
    for (unsigned d = 1; d < n; ++d)
        m *= dims[d][(flat >> (level * (n - 1 - d))) & (pow2(level) - 1)];
    return m;
}

} // namespace

Scalar step_norm_pow(const StepFunction& f, const BoxMeasure& bm, unsigned p) {
    if (p < 1) throw InvalidP("p must be >= 1");
    if (bm.dim() != f.dim()) throw DimensionMismatch("measure dimension mismatch");
    Backend mb = bm.backend();
    auto dims = per_dim_measures(f, bm);
    Scalar sum = Scalar::zero(mb);
    const std::uint64_t cells = f.cell_count();
    for (std::uint64_t flat = 0; flat < cells; ++flat) {
        Scalar term = to_backend(f.coeff(flat).abs(), mb) *
                      cell_measure_from(dims, f.dim(), f.level(), flat);
        sum += term.pow_int(p);
    }
    return sum;
}

double step_norm_p(const StepFunction& f, const BoxMeasure& bm, double p) {
    if (p < 1.0) throw InvalidP("p must be >= 1");
    if (bm.dim() != f.dim()) throw DimensionMismatch("measure dimension mismatch");
    auto dims = per_dim_measures(f, bm);
    double sum = 0.0;
    const std::uint64_t cells = f.cell_count();
    for (std::uint64_t flat = 0; flat < cells; ++flat) {
        double term = f.coeff(flat).norm() *
                      cell_measure_from(dims, f.dim(), f.level(), flat).to_double();
        sum += std::pow(term, p);
    }
    return std::pow(sum, 1.0 / p);
}

namespace {

std::pair<StepFunction, StepFunction> aligned(const StepFunction& a, const StepFunction& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("operands must share the dimension");
    if (a.backend() != b.backend()) throw BackendMismatch("operands must share a backend");
    unsigned u = std::max(a.level(), b.level());
    return {refine_to(a, u), refine_to(b, u)};
}

} // namespace

StepFunction pw_add(const StepFunction& a, const StepFunction& b) {
    auto [x, y] = aligned(a, b);
    std::vector<Scalar> out(x.coeffs().begin(), x.coeffs().end());
    for (std::uint64_t i = 0; i < out.size(); ++i) out[i] += y.coeff(i);
    return StepFunction(x.dim(), x.level(), std::move(out));
}

StepFunction pw_sub(const StepFunction& a, const StepFunction& b) {
    auto [x, y] = aligned(a, b);
    std::vector<Scalar> out(x.coeffs().begin(), x.coeffs().end());
    for (std::uint64_t i = 0; i < out.size(); ++i) out[i] -= y.coeff(i);
    return StepFunction(x.dim(), x.level(), std::move(out));
}

StepFunction pw_scale(const Scalar& k, const StepFunction& f) {
    if (k.backend() != f.backend()) throw BackendMismatch("scale factor backend mismatch");
    std::vector<Scalar> out(f.coeffs().begin(), f.coeffs().end());
    for (auto& c : out) c *= k;
    return StepFunction(f.dim(), f.level(), std::move(out));
}

StepFunction pw_multiply(const StepFunction& a, const StepFunction& b) {
    auto [x, y] = aligned(a, b);
    std::vector<Scalar> out(x.coeffs().begin(), x.coeffs().end());
    for (std::uint64_t i = 0; i < out.size(); ++i) out[i] *= y.coeff(i);
    return StepFunction(x.dim(), x.level(), std::move(out));
}

StepFunction pw_abs(const StepFunction& f) {
    if (f.backend() == Backend::cplx)
        throw OrderUnavailable("abs needs an ordered backend");
    std::vector<Scalar> out(f.coeffs().begin(), f.coeffs().end());
    for (auto& c : out) c = c.abs();
    return StepFunction(f.dim(), f.level(), std::move(out));
}

bool step_equal(const StepFunction& a, const StepFunction& b) {
    if (a.dim() != b.dim() || a.backend() != b.backend()) return false;
    auto [x, y] = aligned(a, b);
    for (std::uint64_t i = 0; i < x.cell_count(); ++i)
        if (!(x.coeff(i) == y.coeff(i))) return false;
    return true;
}

StepFunction sample(const Sampler& g, std::span<const SplitScheme> schemes, unsigned level,
                    Convention conv, unsigned max_level) {
    const unsigned n = static_cast<unsigned>(schemes.size());
    if (n == 0) throw DimensionMismatch("sample needs at least one dimension");
    if (level > effective_max(n, max_level))
        throw LevelOverflow("sampling beyond the configured max level");
    std::vector<std::vector<Scalar>> reps;
    reps.reserve(n);
    for (unsigned d = 0; d < n; ++d) reps.push_back(schemes[d].representatives(level, conv));
    std::vector<Scalar> out;
    out.reserve(pow2(level * n));
    std::vector<Scalar> point(n, Scalar::zero(schemes[0].backend()));
    const std::uint64_t cells = pow2(level * n);
    for (std::uint64_t flat = 0; flat < cells; ++flat) {
        std::uint64_t rest = flat;
        for (unsigned d = n; d-- > 0;) {
            point[d] = reps[d][rest & (pow2(level) - 1)];
            rest >>= level;
        }
        try {
            out.push_back(g(point));
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw EvaluationFailure(std::string("sampler failed: ") + e.what());
        }
    }
    return StepFunction(n, level, std::move(out));
}

Scalar value_at(const StepFunction& f, std::span<const SplitScheme> schemes,
                std::span<const Scalar> point) {
    const unsigned n = f.dim(), u = f.level();
    if (schemes.size() != n || point.size() != n)
        throw DimensionMismatch("point arity must match the step function dimension");
    std::vector<std::uint64_t> idx(n, 0);
    for (unsigned d = 0; d < n; ++d) {
        const SplitScheme& ss = schemes[d];
        if (point[d].compare(ss.lower()) == std::strong_ordering::less ||
            ss.upper().compare(point[d]) == std::strong_ordering::less)
            throw OutOfDomain("evaluation point outside the box");
        Scalar r = (ss.xi() - ss.lower()) / (ss.upper() - ss.lower());
        Scalar lo = ss.lower(), hi = ss.upper();
        std::uint64_t i = 0;
        for (unsigned lvl = 0; lvl < u; ++lvl) {
            Scalar mid = lo + r * (hi - lo);
            if (point[d].compare(mid) == std::strong_ordering::less) {
                i = i << 1;
                hi = std::move(mid);
            } else {
                i = (i << 1) | 1;
                lo = std::move(mid);
            }
        }
        idx[d] = i;
    }
    return f.coeff(idx);
}

StepFunction convert_backend(const StepFunction& f, Backend b) {
    std::vector<Scalar> out;
    out.reserve(f.cell_count());
    for (const auto& c : f.coeffs()) out.push_back(to_backend(c, b));
    return StepFunction(f.dim(), f.level(), std::move(out));
}

double direct_sum_norm(std::span<const double> part_norms, double p, double weight) {
    if (p < 1.0) throw InvalidP("p must be >= 1");
    if (!(weight > 0.0)) throw InvalidWeight("direct-sum weight must be positive");
    double sum = 0.0;
    for (double x : part_norms) sum += std::pow(x, p);
    return std::pow(weight * sum, 1.0 / p);
}

double paper_weight(const BoxMeasure& bm) {
    // (mu(I)/mu(I_Lambda))^n; for heterogeneous dimensions the printed formula
    // reduces to prod_d mu_d(I) / mu(I_Lambda)^n = mu(I_Lambda)^{1-n}.
    double total = bm.total().to_double();
    return std::pow(total, 1.0 - static_cast<double>(bm.dim()));
}

double leinster_weight(unsigned n) { return std::ldexp(1.0, -static_cast<int>(n)); }

} // namespace catint
