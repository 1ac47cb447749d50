#include "catint/measure.hpp"

#include <cmath>

namespace catint {

SplitScheme::SplitScheme(Scalar a, Scalar b, Scalar xi)
    : a_(std::move(a)), b_(std::move(b)), xi_(std::move(xi)) {
    if (a_.backend() != b_.backend() || a_.backend() != xi_.backend())
        throw BackendMismatch("interval endpoints and xi must share a backend");
    if (a_.backend() == Backend::cplx)
        throw OrderUnavailable("split schemes need an ordered scalar backend");
    if (!(a_.compare(xi_) == std::strong_ordering::less &&
          xi_.compare(b_) == std::strong_ordering::less))
        throw Error("split point must satisfy a < xi < b");
}

std::pair<Scalar, Scalar> SplitScheme::cell(unsigned level, std::uint64_t s) const {
    if (level >= 63 || s >= (std::uint64_t{1} << level))
        throw IndexOutOfRange("cell index out of range at this level");
    // Relative position of xi inside [a,b]; constant under affine kappa maps.
    Scalar r = (xi_ - a_) / (b_ - a_);
    Scalar lo = a_, hi = b_;
    for (unsigned bit = level; bit-- > 0;) {
        Scalar mid = lo + r * (hi - lo);
        if ((s >> bit) & 1)
            lo = std::move(mid);
        else
            hi = std::move(mid);
    }
    return {lo, hi};
}

Scalar SplitScheme::point(unsigned level, std::uint64_t s) const {
    if (level >= 63 || s > (std::uint64_t{1} << level))
        throw IndexOutOfRange("split point index out of range");
    if (s == (std::uint64_t{1} << level)) return b_;
    return cell(level, s).first;
}

Scalar SplitScheme::representative(unsigned level, std::uint64_t s, Convention c) const {
    auto [lo, hi] = cell(level, s);
    switch (c) {
    case Convention::left: return lo;
    case Convention::right: return hi;
    case Convention::midpoint: break;
    }
    Scalar two = Scalar::integer(2, lo.backend());
    return (lo + hi) / two;
}

std::vector<Scalar> SplitScheme::points(unsigned level) const {
    if (level >= 62) throw IndexOutOfRange("level too deep");
    Scalar r = (xi_ - a_) / (b_ - a_);
    std::vector<Scalar> cur{a_, b_};
    for (unsigned l = 0; l < level; ++l) {
        std::vector<Scalar> next;
        next.reserve(cur.size() * 2 - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            next.push_back(cur[i]);
            next.push_back(cur[i] + r * (cur[i + 1] - cur[i]));
        }
        next.push_back(cur.back());
        cur = std::move(next);
    }
    return cur;
}

std::vector<Scalar> SplitScheme::representatives(unsigned level, Convention c) const {
    std::vector<Scalar> pts = points(level);
    std::vector<Scalar> out;
    out.reserve(pts.size() - 1);
    Scalar two = Scalar::integer(2, backend());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        switch (c) {
        case Convention::left: out.push_back(pts[i]); break;
        case Convention::right: out.push_back(pts[i + 1]); break;
        case Convention::midpoint: out.push_back((pts[i] + pts[i + 1]) / two); break;
        }
    }
    return out;
}

DistributionMeasure::DistributionMeasure(Kind k, Scalar a, Scalar b, Scalar q,
                                         std::vector<Scalar> coeffs)
    : kind_(k), a_(std::move(a)), b_(std::move(b)), q_(std::move(q)), coeffs_(std::move(coeffs)) {
    if (a_.backend() != b_.backend())
        throw BackendMismatch("interval endpoints must share a backend");
    if (a_.backend() == Backend::cplx)
        throw OrderUnavailable("measures need an ordered scalar backend");
    if (!(a_.compare(b_) == std::strong_ordering::less))
        throw Error("measure domain must satisfy a < b");
}

DistributionMeasure DistributionMeasure::lebesgue(Scalar a, Scalar b) {
    Backend bk = a.backend();
    return DistributionMeasure(Kind::lebesgue, std::move(a), std::move(b), Scalar::one(bk), {});
}

DistributionMeasure DistributionMeasure::power(Scalar a, Scalar b, Scalar q) {
    Backend bk = a.backend();
    if (q.backend() != bk) q = to_backend(q, bk);
    if (bk == Backend::rational) {
        const Rational& qr = q.rat();
        if (boost::multiprecision::denominator(qr) != 1 || qr < 1)
            throw Error("power measure on the rational backend needs integer q >= 1; "
                        "use the float backend for fractional exponents");
    } else if (!(q.to_double() > 0.0)) {
        throw Error("power measure needs q > 0");
    }
    if (a.compare(Scalar::zero(bk)) == std::strong_ordering::less)
        throw Error("power measure needs a >= 0 for a nondecreasing F");
    return DistributionMeasure(Kind::power, std::move(a), std::move(b), std::move(q), {});
}

DistributionMeasure DistributionMeasure::polynomial(Scalar a, Scalar b,
                                                    std::vector<Scalar> coeffs) {
    Backend bk = a.backend();
    if (coeffs.empty()) coeffs.push_back(Scalar::zero(bk));
    for (const auto& c : coeffs)
        if (c.backend() != bk) throw BackendMismatch("polynomial coefficients must match the backend");
    return DistributionMeasure(Kind::poly, std::move(a), std::move(b), Scalar::one(bk),
                               std::move(coeffs));
}

Scalar DistributionMeasure::cdf(const Scalar& x) const {
    if (x.compare(a_) == std::strong_ordering::less ||
        b_.compare(x) == std::strong_ordering::less)
        throw OutOfDomain("point outside the measure domain [" + a_.str() + "," + b_.str() + "]");
    switch (kind_) {
    case Kind::lebesgue:
        return x;
    case Kind::power:
        if (backend() == Backend::rational)
            return x.pow_int(q_.rat().convert_to<std::int64_t>());
        return Scalar(std::pow(x.to_double(), q_.to_double()));
    case Kind::poly: {
        Scalar acc = Scalar::zero(backend());
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }
    }
    return Scalar::zero(backend());
}

Scalar DistributionMeasure::total() const { return cdf(b_) - cdf(a_); }

Scalar interval_measure(const DistributionMeasure& m, const Scalar& x, const Scalar& y) {
    if (y.compare(x) == std::strong_ordering::less)
        throw OutOfDomain("interval endpoints must satisfy x <= y");
    Scalar v = m.cdf(y) - m.cdf(x);
    if (v.compare(Scalar::zero(v.backend())) == std::strong_ordering::less)
        throw Error("distribution function decreases on [" + x.str() + "," + y.str() + "]");
    return v;
}

BoxMeasure::BoxMeasure(std::vector<DistributionMeasure> measures, std::vector<SplitScheme> schemes)
    : measures_(std::move(measures)), schemes_(std::move(schemes)) {
    if (measures_.empty() || measures_.size() != schemes_.size())
        throw DimensionMismatch("box measure needs one distribution and one scheme per dimension");
    Backend b = measures_[0].backend();
    for (std::size_t d = 0; d < measures_.size(); ++d) {
        if (measures_[d].backend() != b || schemes_[d].backend() != b)
            throw BackendMismatch("box dimensions must share a scalar backend");
        if (!(measures_[d].lower() == schemes_[d].lower()) ||
            !(measures_[d].upper() == schemes_[d].upper()))
            throw Error("measure domain and split scheme interval disagree in dimension " +
                        std::to_string(d + 1));
    }
    if (total().is_zero()) throw ZeroTotalMeasure("the box has total measure zero");
}

Scalar BoxMeasure::dim_cell_measure(unsigned d, unsigned level, std::uint64_t i) const {
    auto [lo, hi] = schemes_.at(d).cell(level, i);
    return interval_measure(measures_.at(d), lo, hi);
}

std::vector<Scalar> BoxMeasure::dim_cell_measures(unsigned d, unsigned level) const {
    std::vector<Scalar> pts = schemes_.at(d).points(level);
    const DistributionMeasure& m = measures_.at(d);
    std::vector<Scalar> cdf;
    cdf.reserve(pts.size());
    for (const auto& p : pts) cdf.push_back(m.cdf(p));
    std::vector<Scalar> out;
    out.reserve(pts.size() - 1);
    Scalar zero = Scalar::zero(backend());
    for (std::size_t i = 0; i + 1 < cdf.size(); ++i) {
        Scalar v = cdf[i + 1] - cdf[i];
        if (v.compare(zero) == std::strong_ordering::less)
            throw Error("distribution function decreases inside the box");
        out.push_back(std::move(v));
    }
    return out;
}

Scalar BoxMeasure::cell_measure(unsigned level, std::span<const std::uint64_t> idx) const {
    if (idx.size() != measures_.size())
        throw DimensionMismatch("cell multi-index must have one entry per dimension");
    Scalar out = Scalar::one(backend());
    for (unsigned d = 0; d < dim(); ++d) out *= dim_cell_measure(d, level, idx[d]);
    return out;
}

Scalar BoxMeasure::cell_measure_flat(unsigned level, std::uint64_t flat) const {
    const unsigned n = dim();
    std::vector<std::uint64_t> idx(n);
    for (unsigned d = n; d-- > 0;) {
        idx[d] = flat & ((std::uint64_t{1} << level) - 1);
        flat >>= level;
    }
    return cell_measure(level, idx);
}

Scalar BoxMeasure::total() const {
    Scalar out = Scalar::one(backend());
    for (const auto& m : measures_) out *= m.total();
    return out;
}

BoxMeasure BoxMeasure::unit_lebesgue(unsigned n, Backend b) {
    std::vector<DistributionMeasure> ms;
    std::vector<SplitScheme> ss;
    for (unsigned d = 0; d < n; ++d) {
        ms.push_back(DistributionMeasure::lebesgue(Scalar::zero(b), Scalar::one(b)));
        ss.emplace_back(Scalar::zero(b), Scalar::one(b),
                        Scalar::one(b) / Scalar::integer(2, b));
    }
    return BoxMeasure(std::move(ms), std::move(ss));
}

} // namespace catint
