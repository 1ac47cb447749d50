#include "catint/jsonio.hpp"

#include <cmath>

namespace catint {

Scalar scalar_from_json(const Json& j, Backend b) {
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), b);
    if (j.is_number_integer()) return Scalar::integer(j.get<std::int64_t>(), b);
    if (j.is_number_float()) {
        if (b == Backend::rational)
            throw ParseError("rational scalars must be written as strings (\"p/q\"), got " +
                             j.dump());
        return to_backend(Scalar(j.get<double>()), b);
    }
    if (j.is_object() && j.contains("re") && j.contains("im")) {
        if (b != Backend::cplx) throw ParseError("complex literal on a non-complex backend");
        return Scalar::complex(scalar_from_json(j.at("re"), Backend::real).to_double(),
                               scalar_from_json(j.at("im"), Backend::real).to_double());
    }
    throw ParseError("bad scalar literal: " + j.dump());
}

OrderedJson scalar_to_json(const Scalar& s) {
    switch (s.backend()) {
    case Backend::rational:
        return OrderedJson(s.str());
    case Backend::real:
        return OrderedJson(s.to_double());
    case Backend::cplx: {
        auto z = s.to_complex();
        OrderedJson o;
        o["re"] = z.real();
        o["im"] = z.imag();
        return o;
    }
    }
    return OrderedJson();
}

namespace {

std::vector<Scalar> coords_from_json(const Json& j, Backend b, std::size_t n, const char* what) {
    if (!j.is_array() || j.size() != n)
        throw ParseError(std::string(what) + " must be an array of length " + std::to_string(n));
    std::vector<Scalar> out;
    out.reserve(n);
    for (const auto& e : j) out.push_back(scalar_from_json(e, b));
    return out;
}

} // namespace

std::pair<Algebra, TauMap> algebra_from_json(const Json& j, Backend b) {
    if (!j.contains("basis")) throw ParseError("algebra spec needs a \"basis\" array");
    std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
    const std::size_t n = basis.size();

    const Json& st = j.at("structure");
    if (!st.is_array() || st.size() != n) throw ParseError("\"structure\" must be an n x n x n array");
    std::vector<std::vector<std::vector<Scalar>>> structure;
    for (const auto& row : st) {
        if (!row.is_array() || row.size() != n)
            throw ParseError("\"structure\" must be an n x n x n array");
        std::vector<std::vector<Scalar>> r;
        for (const auto& cell : row) r.push_back(coords_from_json(cell, b, n, "structure entry"));
        structure.push_back(std::move(r));
    }

    std::vector<Scalar> unit = coords_from_json(j.at("unit"), b, n, "unit");
    std::vector<Scalar> nu;
    if (j.contains("nu")) {
        Backend nb = b == Backend::cplx ? Backend::real : b;
        nu = coords_from_json(j.at("nu"), nb, n, "nu");
    }
    Algebra A(std::move(basis), std::move(structure), std::move(unit), std::move(nu), b);
    TauMap tau{coords_from_json(j.at("tau"), b, n, "tau")};
    return {std::move(A), std::move(tau)};
}

std::pair<PathAlgebra, std::string> quiver_from_json(const Json& j) {
    Quiver q;
    q.vertices = j.at("vertices").get<std::vector<std::string>>();
    if (j.contains("arrows"))
        for (const auto& a : j.at("arrows"))
            q.arrows.push_back(QuiverArrow{a.at("name").get<std::string>(),
                                           a.at("from").get<std::string>(),
                                           a.at("to").get<std::string>()});
    if (j.contains("relations"))
        q.relations = j.at("relations").get<std::vector<std::vector<std::string>>>();
    std::string tau_vertex =
        j.contains("tau_vertex") ? j.at("tau_vertex").get<std::string>() : q.vertices.at(0);
    return {path_algebra_from_quiver(q), std::move(tau_vertex)};
}

namespace {

DistributionMeasure measure_from_json(const Json& j, const Scalar& a, const Scalar& b, Backend bk) {
    std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "lebesgue";
    if (kind == "lebesgue") return DistributionMeasure::lebesgue(a, b);
    if (kind == "power") {
        Scalar q = j.contains("q") ? scalar_from_json(j.at("q"), bk) : Scalar::integer(2, bk);
        return DistributionMeasure::power(a, b, q);
    }
    if (kind == "poly") {
        std::vector<Scalar> coeffs;
        for (const auto& c : j.at("coeffs")) coeffs.push_back(scalar_from_json(c, bk));
        return DistributionMeasure::polynomial(a, b, std::move(coeffs));
    }
    throw ParseError("unknown measure kind '" + kind + "'");
}

std::pair<DistributionMeasure, SplitScheme> dim_from_json(const Json& j, Backend bk) {
    Scalar a = Scalar::zero(bk), b = Scalar::one(bk);
    if (j.contains("interval")) {
        a = scalar_from_json(j.at("interval").at("a"), bk);
        b = scalar_from_json(j.at("interval").at("b"), bk);
    }
    Scalar xi = j.contains("xi") ? scalar_from_json(j.at("xi"), bk)
                                 : (a + b) / Scalar::integer(2, bk);
    DistributionMeasure m =
        j.contains("measure") ? measure_from_json(j.at("measure"), a, b, bk)
                              : DistributionMeasure::lebesgue(a, b);
    return {std::move(m), SplitScheme(a, b, xi)};
}

} // namespace

BoxMeasure box_measure_from_json(const Json& dims, Backend b) {
    std::vector<DistributionMeasure> ms;
    std::vector<SplitScheme> ss;
    if (dims.is_array()) {
        for (const auto& d : dims) {
            auto [m, s] = dim_from_json(d, b);
            ms.push_back(std::move(m));
            ss.push_back(std::move(s));
        }
    } else {
        auto [m, s] = dim_from_json(dims, b);
        ms.push_back(std::move(m));
        ss.push_back(std::move(s));
    }
    return BoxMeasure(std::move(ms), std::move(ss));
}

StepFunction step_from_json(const Json& j, Backend b) {
    unsigned n = j.contains("n") ? j.at("n").get<unsigned>() : 1;
    unsigned u = j.at("u").get<unsigned>();
    std::vector<Scalar> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(scalar_from_json(c, b));
    return StepFunction(n, u, std::move(coeffs));
}

OrderedJson step_to_json(const StepFunction& f) {
    OrderedJson o;
    o["n"] = f.dim();
    o["u"] = f.level();
    OrderedJson cs = OrderedJson::array();
    for (const auto& c : f.coeffs()) cs.push_back(scalar_to_json(c));
    o["coeffs"] = std::move(cs);
    return o;
}

} // namespace catint
