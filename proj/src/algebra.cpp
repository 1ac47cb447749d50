#include "catint/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace catint {

Algebra::Algebra(std::vector<std::string> basis,
                 std::vector<std::vector<std::vector<Scalar>>> structure, std::vector<Scalar> unit,
                 std::vector<Scalar> nu, Backend backend)
    : basis_(std::move(basis)), structure_(std::move(structure)), unit_(std::move(unit)),
      nu_(std::move(nu)), backend_(backend) {
    const std::size_t n = basis_.size();
    if (n == 0) throw DimensionMismatch("algebra needs at least one basis element");
    if (structure_.size() != n) throw DimensionMismatch("structure constants must be n x n x n");
    for (const auto& row : structure_) {
        if (row.size() != n) throw DimensionMismatch("structure constants must be n x n x n");
        for (const auto& c : row)
            if (c.size() != n) throw DimensionMismatch("structure constants must be n x n x n");
    }
    if (unit_.size() != n) throw DimensionMismatch("unit coordinates must have length n");
    if (nu_.empty()) nu_.assign(n, Scalar::one(backend_ == Backend::cplx ? Backend::real : backend_));
    if (nu_.size() != n) throw DimensionMismatch("nu must assign a value to each basis element");
    for (const auto& v : nu_)
        if (!(v.norm() > 0.0)) throw Error("nu must be positive on every basis element");
}

const std::vector<Scalar>& Algebra::structure(std::size_t i, std::size_t j) const {
    if (i >= dim() || j >= dim()) throw IndexOutOfRange("basis index out of range");
    return structure_[i][j];
}

AlgebraElement Algebra::element(std::vector<Scalar> coords) const {
    if (coords.size() != dim())
        throw DimensionMismatch("coordinate vector length does not match the algebra dimension");
    return AlgebraElement{std::move(coords)};
}

AlgebraElement Algebra::basis_element(std::size_t i) const {
    if (i >= dim()) throw IndexOutOfRange("basis index out of range");
    std::vector<Scalar> c(dim(), Scalar::zero(backend_));
    c[i] = Scalar::one(backend_);
    return AlgebraElement{std::move(c)};
}

AlgebraElement Algebra::zero() const {
    return AlgebraElement{std::vector<Scalar>(dim(), Scalar::zero(backend_))};
}

Algebra Algebra::field(Backend b) {
    std::vector<std::vector<std::vector<Scalar>>> c{{{Scalar::one(b)}}};
    return Algebra({"1"}, std::move(c), {Scalar::one(b)}, {}, b);
}

Algebra Algebra::product_field(std::size_t n, Backend b) {
    std::vector<std::string> basis;
    std::vector<std::vector<std::vector<Scalar>>> c(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(b))));
    for (std::size_t i = 0; i < n; ++i) {
        basis.push_back("e" + std::to_string(i + 1));
        c[i][i][i] = Scalar::one(b);
    }
    std::vector<Scalar> unit(n, Scalar::one(b));
    return Algebra(std::move(basis), std::move(c), std::move(unit), {}, b);
}

AlgebraElement multiply(const Algebra& A, const AlgebraElement& a, const AlgebraElement& b) {
    const std::size_t n = A.dim();
    if (a.coords.size() != n || b.coords.size() != n)
        throw DimensionMismatch("element coordinates do not match the algebra dimension");
    AlgebraElement out = A.zero();
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coords[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.coords[j].is_zero()) continue;
            Scalar w = a.coords[i] * b.coords[j];
            const auto& c = A.structure(i, j);
            for (std::size_t l = 0; l < n; ++l)
                if (!c[l].is_zero()) out.coords[l] += w * c[l];
        }
    }
    return out;
}

AlgebraElement add(const Algebra& A, const AlgebraElement& a, const AlgebraElement& b) {
    const std::size_t n = A.dim();
    if (a.coords.size() != n || b.coords.size() != n)
        throw DimensionMismatch("element coordinates do not match the algebra dimension");
    AlgebraElement out = a;
    for (std::size_t i = 0; i < n; ++i) out.coords[i] += b.coords[i];
    return out;
}

AlgebraElement scale(const Algebra& A, const Scalar& k, const AlgebraElement& a) {
    if (a.coords.size() != A.dim())
        throw DimensionMismatch("element coordinates do not match the algebra dimension");
    AlgebraElement out = a;
    for (auto& c : out.coords) c *= k;
    return out;
}

namespace {

bool element_equal(const AlgebraElement& a, const AlgebraElement& b) {
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        if (!(a.coords[i] == b.coords[i])) return false;
    return true;
}

} // namespace

ValidationReport validate_algebra(const Algebra& A) {
    ValidationReport rep;
    const std::size_t n = A.dim();
    for (std::size_t i = 0; i < n; ++i) {
        AlgebraElement bi = A.basis_element(i);
        AlgebraElement left = multiply(A, A.unit(), bi);
        AlgebraElement right = multiply(A, bi, A.unit());
        if (!element_equal(left, bi))
            rep.failures.push_back("unit law fails: 1*" + A.basis()[i]);
        if (!element_equal(right, bi))
            rep.failures.push_back("unit law fails: " + A.basis()[i] + "*1");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) {
                AlgebraElement lhs =
                    multiply(A, multiply(A, A.basis_element(i), A.basis_element(j)), A.basis_element(l));
                AlgebraElement rhs =
                    multiply(A, A.basis_element(i), multiply(A, A.basis_element(j), A.basis_element(l)));
                if (!element_equal(lhs, rhs))
                    rep.failures.push_back("associativity fails on (" + A.basis()[i] + "," +
                                           A.basis()[j] + "," + A.basis()[l] + ")");
            }
    return rep;
}

Scalar algebra_norm_pow(const Algebra& A, const AlgebraElement& a, unsigned p) {
    if (p < 1) throw InvalidP("p must be >= 1");
    if (a.coords.size() != A.dim())
        throw DimensionMismatch("element coordinates do not match the algebra dimension");
    Backend nb = A.nu()[0].backend();
    Scalar sum = Scalar::zero(nb);
    for (std::size_t i = 0; i < A.dim(); ++i) {
        Scalar term = to_backend(a.coords[i].abs(), nb) * A.nu()[i];
        sum += term.pow_int(p);
    }
    return sum;
}

double algebra_norm_p(const Algebra& A, const AlgebraElement& a, double p) {
    if (p < 1.0) throw InvalidP("p must be >= 1");
    if (a.coords.size() != A.dim())
        throw DimensionMismatch("element coordinates do not match the algebra dimension");
    double sum = 0.0;
    for (std::size_t i = 0; i < A.dim(); ++i)
        sum += std::pow(a.coords[i].norm() * A.nu()[i].to_double(), p);
    return std::pow(sum, 1.0 / p);
}

Scalar tau_apply(const Algebra& A, const TauMap& t, const AlgebraElement& a) {
    if (t.images.size() != A.dim()) throw DimensionMismatch("tau images must cover the basis");
    if (a.coords.size() != A.dim())
        throw DimensionMismatch("element coordinates do not match the algebra dimension");
    Scalar out = Scalar::zero(A.backend());
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (!a.coords[i].is_zero()) out += a.coords[i] * t.images[i];
    return out;
}

ValidationReport validate_tau(const Algebra& A, const TauMap& t) {
    ValidationReport rep;
    if (t.images.size() != A.dim()) {
        rep.failures.push_back("tau images must cover the basis");
        return rep;
    }
    Scalar one = Scalar::one(A.backend());
    if (!(tau_apply(A, t, A.unit()) == one)) rep.failures.push_back("tau(1) != 1");
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j) {
            Scalar lhs = tau_apply(A, t, multiply(A, A.basis_element(i), A.basis_element(j)));
            Scalar rhs = t.images[i] * t.images[j];
            if (!(lhs == rhs))
                rep.failures.push_back("tau not multiplicative on (" + A.basis()[i] + "," +
                                       A.basis()[j] + ")");
        }
    return rep;
}

namespace {

struct Path {
    std::vector<std::size_t> arrows; // traversal order
    std::size_t source;
    std::size_t target;
};

bool contains_relation(const std::vector<std::size_t>& arrows,
                       const std::vector<std::vector<std::size_t>>& relations) {
    for (const auto& rel : relations) {
        if (rel.size() > arrows.size()) continue;
        for (std::size_t off = 0; off + rel.size() <= arrows.size(); ++off) {
            if (std::equal(rel.begin(), rel.end(), arrows.begin() + off)) return true;
        }
    }
    return false;
}

} // namespace

PathAlgebra path_algebra_from_quiver(const Quiver& q, Backend backend, std::size_t max_dim) {
    std::map<std::string, std::size_t> vidx;
    for (std::size_t i = 0; i < q.vertices.size(); ++i) {
        if (!vidx.emplace(q.vertices[i], i).second)
            throw MalformedRelation("duplicate vertex name '" + q.vertices[i] + "'");
    }
    std::map<std::string, std::size_t> aidx;
    for (std::size_t i = 0; i < q.arrows.size(); ++i) {
        const auto& ar = q.arrows[i];
        if (!vidx.count(ar.from) || !vidx.count(ar.to))
            throw MalformedRelation("arrow '" + ar.name + "' references an unknown vertex");
        if (!aidx.emplace(ar.name, i).second)
            throw MalformedRelation("duplicate arrow name '" + ar.name + "'");
    }

    std::vector<std::vector<std::size_t>> relations;
    for (const auto& rel : q.relations) {
        if (rel.size() < 2)
            throw MalformedRelation("relations must be composable paths of length >= 2");
        std::vector<std::size_t> r;
        for (std::size_t k = 0; k < rel.size(); ++k) {
            auto it = aidx.find(rel[k]);
            if (it == aidx.end())
                throw MalformedRelation("relation references unknown arrow '" + rel[k] + "'");
            r.push_back(it->second);
            if (k > 0 && q.arrows[r[k - 1]].to != q.arrows[r[k]].from)
                throw MalformedRelation("relation is not a composable path at '" + rel[k] + "'");
        }
        relations.push_back(std::move(r));
    }

    // Breadth-first enumeration of relation-free paths, trivial paths first.
    std::vector<Path> paths;
    std::deque<Path> queue;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        Path p{{}, v, v};
        paths.push_back(p);
        queue.push_back(p);
    }
    while (!queue.empty()) {
        Path p = std::move(queue.front());
        queue.pop_front();
        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
            if (vidx.at(q.arrows[a].from) != p.target) continue;
            Path ext{p.arrows, p.source, vidx.at(q.arrows[a].to)};
            ext.arrows.push_back(a);
            if (contains_relation(ext.arrows, relations)) continue;
            paths.push_back(ext);
            queue.push_back(ext);
            if (paths.size() > max_dim)
                throw InfiniteDimensional("path count exceeds the bound " + std::to_string(max_dim));
        }
    }

    const std::size_t n = paths.size();
    std::vector<std::string> labels;
    labels.reserve(n);
    for (const auto& p : paths) {
        if (p.arrows.empty()) {
            labels.push_back("e" + q.vertices[p.source]);
        } else {
            std::string s;
            for (std::size_t k = 0; k < p.arrows.size(); ++k) {
                if (k) s += '*';
                s += q.arrows[p.arrows[k]].name;
            }
            labels.push_back(std::move(s));
        }
    }

    // Index of every surviving arrow sequence, for product lookup.
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_arrows;
    for (std::size_t i = 0; i < n; ++i) by_arrows[paths[i].arrows].push_back(i);

    auto find_path = [&](const std::vector<std::size_t>& arrows, std::size_t source) -> std::size_t {
        auto it = by_arrows.find(arrows);
        if (it == by_arrows.end()) return n;
        for (std::size_t i : it->second)
            if (paths[i].source == source) return i;
        return n;
    };

    std::vector<std::vector<std::vector<Scalar>>> c(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(backend))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // b_i * b_j walks b_j first: defined when source(b_i) == target(b_j).
            if (paths[i].source != paths[j].target) continue;
            std::vector<std::size_t> concat = paths[j].arrows;
            concat.insert(concat.end(), paths[i].arrows.begin(), paths[i].arrows.end());
            if (contains_relation(concat, relations)) continue;
            std::size_t l = find_path(concat, paths[j].source);
            if (l == n) continue; // pruned by a relation subpath
            c[i][j][l] = Scalar::one(backend);
        }

    std::vector<Scalar> unit(n, Scalar::zero(backend));
    for (std::size_t i = 0; i < n; ++i)
        if (paths[i].arrows.empty()) unit[i] = Scalar::one(backend);

    PathAlgebra out{Algebra(std::move(labels), std::move(c), std::move(unit), {}, backend),
                    {},
                    {},
                    {},
                    q.vertices};
    for (const auto& p : paths) {
        out.paths.push_back(p.arrows);
        out.source.push_back(p.source);
        out.target.push_back(p.target);
    }
    return out;
}

TauMap path_algebra_tau(const PathAlgebra& pa, const std::string& vertex) {
    auto it = std::find(pa.vertex_names.begin(), pa.vertex_names.end(), vertex);
    if (it == pa.vertex_names.end()) throw MalformedRelation("unknown tau vertex '" + vertex + "'");
    std::size_t v = static_cast<std::size_t>(it - pa.vertex_names.begin());
    Backend b = pa.algebra.backend();
    TauMap t;
    t.images.assign(pa.algebra.dim(), Scalar::zero(b));
    for (std::size_t i = 0; i < pa.paths.size(); ++i)
        if (pa.paths[i].empty() && pa.source[i] == v) t.images[i] = Scalar::one(b);
    return t;
}

} // namespace catint
