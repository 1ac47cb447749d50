#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "catint/scalar.hpp"

namespace catint {

struct AlgebraElement {
    std::vector<Scalar> coords;
};

struct ValidationReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Finite-dimensional k-algebra given by basis labels, structure constants
/// c[i][j] (the coordinates of b_i * b_j), unit coordinates, and the positive
/// basis-norm values used by the p-norm.
class Algebra {
public:
    Algebra(std::vector<std::string> basis, std::vector<std::vector<std::vector<Scalar>>> structure,
            std::vector<Scalar> unit, std::vector<Scalar> nu, Backend backend);

    std::size_t dim() const { return basis_.size(); }
    Backend backend() const { return backend_; }
    const std::vector<std::string>& basis() const { return basis_; }
    const std::vector<Scalar>& structure(std::size_t i, std::size_t j) const;
    const std::vector<Scalar>& nu() const { return nu_; }

    AlgebraElement element(std::vector<Scalar> coords) const;
    AlgebraElement basis_element(std::size_t i) const;
    AlgebraElement unit() const { return AlgebraElement{unit_}; }
    AlgebraElement zero() const;

    /// The field k itself: dim 1, nu(1) = 1.
    static Algebra field(Backend b);
    /// Product algebra k^n (n isolated idempotents); the default box algebra
    /// for n-dimensional runs.
    static Algebra product_field(std::size_t n, Backend b);

private:
    std::vector<std::string> basis_;
    std::vector<std::vector<std::vector<Scalar>>> structure_;
    std::vector<Scalar> unit_;
    std::vector<Scalar> nu_;
    Backend backend_;
};

AlgebraElement multiply(const Algebra& A, const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement add(const Algebra& A, const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scale(const Algebra& A, const Scalar& k, const AlgebraElement& a);

/// Checks associativity on all basis triples and the unit law on all basis
/// elements; failures are returned, not thrown.
ValidationReport validate_algebra(const Algebra& A);

/// Exact p-th power of the norm of Eq.-style ((|k_1|nu_1)^p + ... ); p >= 1
/// integer.  Exact on the rational backend.
Scalar algebra_norm_pow(const Algebra& A, const AlgebraElement& a, unsigned p);

/// The p-norm itself as a double; InvalidP if p < 1.
double algebra_norm_p(const Algebra& A, const AlgebraElement& a, double p);

struct TauMap {
    std::vector<Scalar> images; // tau(b_i)
};

Scalar tau_apply(const Algebra& A, const TauMap& t, const AlgebraElement& a);

/// Verifies tau(1) = 1 and multiplicativity on all basis pairs.
ValidationReport validate_tau(const Algebra& A, const TauMap& t);

struct QuiverArrow {
    std::string name;
    std::string from;
    std::string to;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<QuiverArrow> arrows;
    /// Monomial relations as composable arrow-name sequences in traversal
    /// order (first arrow walked first).
    std::vector<std::vector<std::string>> relations;
};

/// Path algebra modulo the monomial relations.  Basis paths keep their
/// traversal order; labels are "e<vertex>" for trivial paths and arrow names
/// joined by '*' otherwise.
struct PathAlgebra {
    Algebra algebra;
    std::vector<std::vector<std::size_t>> paths; // arrow index sequences, traversal order
    std::vector<std::size_t> source;             // vertex index per basis path
    std::vector<std::size_t> target;
    std::vector<std::string> vertex_names;
};

PathAlgebra path_algebra_from_quiver(const Quiver& q, Backend backend = Backend::rational,
                                     std::size_t max_dim = 1024);

/// tau picked out by a vertex: 1 on that trivial path, 0 elsewhere (forced by
/// orthogonality of the idempotents).
TauMap path_algebra_tau(const PathAlgebra& pa, const std::string& vertex);

} // namespace catint
