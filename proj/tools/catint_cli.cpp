// Batch front end: integrations, antiderivatives, weak derivatives, Fourier
// coefficients, invariant suites, and convergence tables from JSON configs.
//
// Exit codes: 0 success, 1 parse/config error, 2 non-convergence,
// 3 verification failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "catint/expr.hpp"
#include "catint/jsonio.hpp"
#include "catint/verify.hpp"

using namespace catint;

namespace {

struct RunConfig {
    Backend backend = Backend::real;
    Json dims;                 // per-dimension measure specs
    std::string function;      // expression, "step:...", "poly:...", or "pl:..."
    unsigned u_min = 4;
    unsigned u_max = 16;
    double tol = -1.0;         // <0: backend default (1e-6 float, 0 rational)
    Convention convention = Convention::midpoint;
    std::string weight = "paper";
    std::optional<Json> algebra;
    std::optional<Json> quiver;
    std::int64_t k = 1;        // Fourier index
    std::uint64_t cases = 1000;
    std::uint64_t seed = 42;
    std::string suite = "all";
};

Convention convention_from_string(const std::string& s) {
    if (s == "midpoint") return Convention::midpoint;
    if (s == "left") return Convention::left;
    if (s == "right") return Convention::right;
    throw ParseError("unknown sampling convention '" + s + "'");
}

Backend backend_from_string(const std::string& s) {
    if (s == "rational") return Backend::rational;
    if (s == "float" || s == "real") return Backend::real;
    throw ParseError("unknown backend '" + s + "' (use rational or float)");
}

std::vector<Scalar> parse_scalar_list(const std::string& text, Backend b) {
    std::vector<Scalar> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        out.push_back(Scalar::parse(item, b));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

/// "step:"-literals with a non-power-of-two count are padded with their last
/// value up to the next dyadic level.
StepFunction step_from_literal(const std::string& body, Backend b) {
    std::vector<Scalar> coeffs = parse_scalar_list(body, b);
    if (coeffs.empty()) throw ParseError("empty step literal");
    unsigned u = 0;
    while ((std::uint64_t{1} << u) < coeffs.size()) ++u;
    coeffs.resize(std::uint64_t{1} << u, coeffs.back());
    return StepFunction(1, u, std::move(coeffs));
}

struct Problem {
    RunConfig cfg;
    BoxMeasure box;
    Algebra algebra;
    TauMap tau;
    IntegrationTarget target;
};

Problem build_problem(const RunConfig& cfg, unsigned want_dims) {
    Json dims = cfg.dims;
    if (dims.is_null()) {
        dims = Json::array();
        for (unsigned d = 0; d < want_dims; ++d) dims.push_back(Json::object());
    }
    BoxMeasure box = box_measure_from_json(dims, cfg.backend);

    std::optional<Algebra> A;
    std::optional<TauMap> tau;
    if (cfg.quiver) {
        auto [pa, tau_vertex] = quiver_from_json(*cfg.quiver);
        if (pa.algebra.backend() != cfg.backend)
            throw ParseError("quiver algebras are rational; use --backend rational");
        tau = path_algebra_tau(pa, tau_vertex);
        A = std::move(pa.algebra);
    } else if (cfg.algebra) {
        auto [alg, t] = algebra_from_json(*cfg.algebra, cfg.backend);
        A = std::move(alg);
        tau = std::move(t);
    } else {
        A = Algebra::product_field(box.dim(), cfg.backend);
        std::vector<Scalar> images(box.dim(), Scalar::zero(cfg.backend));
        images[0] = Scalar::one(cfg.backend);
        tau = TauMap{std::move(images)};
    }
    if (A->dim() != box.dim())
        throw ParseError("algebra dimension " + std::to_string(A->dim()) +
                         " does not match the box dimension " + std::to_string(box.dim()));
    ValidationReport rep = validate_algebra(*A);
    if (!rep.ok()) throw ParseError("invalid algebra: " + rep.failures[0]);
    IntegrationTarget target(*A, *tau, box);
    return Problem{cfg, std::move(box), std::move(*A), std::move(*tau), std::move(target)};
}

double effective_tol(const RunConfig& cfg) {
    if (cfg.tol >= 0.0) return cfg.tol;
    return cfg.backend == Backend::rational ? 0.0 : 1e-6;
}

Sampler sampler_from_expression(const std::string& text, unsigned n, Backend) {
    Expression expr = Expression::parse(text, n);
    auto shared = std::make_shared<Expression>(std::move(expr));
    return [shared](std::span<const Scalar> x) { return shared->eval(x); };
}

OrderedJson report_json(const ConvergenceReport& rep) {
    OrderedJson o;
    o["level_reached"] = rep.level_reached;
    o["converged"] = rep.converged;
    o["residual"] = rep.final_residual;
    return o;
}

int emit(const OrderedJson& value, const ConvergenceReport& rep) {
    OrderedJson o;
    o["value"] = value;
    auto r = report_json(rep);
    for (auto& [k, v] : r.items()) o[k] = v;
    std::cout << o.dump() << std::endl;
    return rep.converged ? 0 : 2;
}

int run_integrate(const RunConfig& cfg) {
    Problem p = build_problem(cfg, 1);
    if (cfg.function.rfind("step:", 0) == 0) {
        StepFunction f = step_from_literal(cfg.function.substr(5), cfg.backend);
        if (p.box.dim() != 1) throw ParseError("step literals are one-dimensional");
        Scalar v = integrate(f, p.target);
        ConvergenceReport rep;
        rep.converged = true;
        rep.level_reached = f.level();
        rep.final_residual = 0.0;
        return emit(scalar_to_json(v), rep);
    }
    IntegrateOptions opts{effective_tol(cfg), cfg.u_min, cfg.u_max, cfg.convention};
    Sampler g;
    if (cfg.function.rfind("poly:", 0) == 0) {
        auto coeffs = parse_scalar_list(cfg.function.substr(5), cfg.backend);
        g = [coeffs](std::span<const Scalar> x) { return poly_eval(coeffs, x[0]); };
    } else {
        g = sampler_from_expression(cfg.function, p.box.dim(), cfg.backend);
    }
    auto [value, rep] = integrate(g, p.target, opts);
    return emit(scalar_to_json(value), rep);
}

int run_table(const RunConfig& cfg) {
    Problem p = build_problem(cfg, 1);
    Sampler g = sampler_from_expression(cfg.function, p.box.dim(), cfg.backend);
    std::cout << "level,value,residual\n";
    bool have_prev = false;
    Scalar prev = Scalar::zero(cfg.backend);
    for (unsigned u = cfg.u_min; u <= cfg.u_max; ++u) {
        StepFunction f = sample(g, p.box.schemes(), u, cfg.convention);
        Scalar cur = theta(f, p.target);
        std::cout << u << "," << cur.to_double() << ",";
        if (have_prev) std::cout << (cur - prev).norm();
        std::cout << "\n";
        prev = cur;
        have_prev = true;
    }
    return 0;
}

PiecewiseLinear pl_from_config(const RunConfig& cfg, unsigned level) {
    if (cfg.function.rfind("pl:", 0) == 0) {
        std::vector<Scalar> vals = parse_scalar_list(cfg.function.substr(3), cfg.backend);
        unsigned u = 0;
        while ((std::uint64_t{1} << u) + 1 < vals.size()) ++u;
        if (vals.size() != (std::uint64_t{1} << u) + 1)
            throw ParseError("pl: literal needs 2^u + 1 breakpoint values");
        return PiecewiseLinear(u, std::move(vals));
    }
    Expression expr = Expression::parse(cfg.function, 1);
    std::vector<Scalar> vals;
    Scalar den = Scalar::integer(std::int64_t{1} << level, cfg.backend);
    for (std::uint64_t j = 0; j <= (std::uint64_t{1} << level); ++j) {
        std::vector<Scalar> x{Scalar::integer(static_cast<std::int64_t>(j), cfg.backend) / den};
        vals.push_back(expr.eval(x));
    }
    if (!vals[0].is_zero())
        throw ParseError("weak derivatives need F(0) = 0; shift the function first");
    return PiecewiseLinear(level, std::move(vals));
}

int run_antiderive(const RunConfig& cfg) {
    StepFunction f = cfg.function.rfind("step:", 0) == 0
                         ? step_from_literal(cfg.function.substr(5), cfg.backend)
                         : [&] {
                               Problem p = build_problem(cfg, 1);
                               Sampler g =
                                   sampler_from_expression(cfg.function, 1, cfg.backend);
                               return sample(g, p.box.schemes(), std::min(cfg.u_max, 12u),
                                             cfg.convention);
                           }();
    PiecewiseLinear F = antiderive(f);
    OrderedJson vals = OrderedJson::array();
    for (const auto& v : F.values()) vals.push_back(scalar_to_json(v));
    ConvergenceReport rep;
    rep.converged = true;
    rep.level_reached = F.level();
    return emit(vals, rep);
}

int run_differentiate(const RunConfig& cfg) {
    PiecewiseLinear F = pl_from_config(cfg, std::min(cfg.u_max, 12u));
    StepFunction f = weak_derivative(F);
    OrderedJson vals = OrderedJson::array();
    for (const auto& c : f.coeffs()) vals.push_back(scalar_to_json(c));
    ConvergenceReport rep;
    rep.converged = true;
    rep.level_reached = f.level();
    return emit(vals, rep);
}

int run_fourier(const RunConfig& cfg) {
    if (cfg.backend == Backend::rational)
        throw ParseError("fourier runs on the float backend");
    FourierOptions opts;
    opts.u_min = cfg.u_min;
    opts.u_max = std::min(cfg.u_max, 16u);
    opts.tol = effective_tol(cfg);
    opts.convention = cfg.convention;
    FourierResult res;
    if (cfg.function.rfind("step:", 0) == 0) {
        StepFunction f = step_from_literal(cfg.function.substr(5), cfg.backend);
        res = fourier_coefficient(f, cfg.k, opts);
    } else {
        Sampler g = sampler_from_expression(cfg.function, 1, cfg.backend);
        res = fourier_coefficient(g, cfg.k, opts);
    }
    auto z = res.value.to_complex();
    OrderedJson o;
    o["k"] = cfg.k;
    o["re"] = z.real();
    o["im"] = z.imag();
    auto r = report_json(res.report);
    for (auto& [key, v] : r.items()) o[key] = v;
    std::cout << o.dump() << std::endl;
    return res.report.converged ? 0 : 2;
}

int run_verify(const RunConfig& cfg) {
    auto results = run_suites(cfg.suite, cfg.cases, cfg.seed);
    std::uint64_t total_checked = 0, total_violations = 0;
    for (const auto& r : results) {
        std::cout << r.name << ": checked=" << r.checked << " violations=" << r.violations
                  << (r.violations == 0 ? " [pass]" : " [FAIL]") << "\n";
        for (const auto& m : r.messages) std::cerr << "  " << r.name << ": " << m << "\n";
        total_checked += r.checked;
        total_violations += r.violations;
    }
    std::cout << "total: checked=" << total_checked << " violations=" << total_violations
              << std::endl;
    return total_violations == 0 ? 0 : 3;
}

void merge_config_file(RunConfig& cfg, const std::string& path, const CLI::App& sub) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("bad config JSON: " + std::string(e.what()));
    }
    auto flag_given = [&](const std::string& name) {
        const CLI::Option* o = sub.get_option_no_throw(name);
        return o != nullptr && o->count() > 0;
    };
    if (j.contains("backend") && !flag_given("--backend"))
        cfg.backend = backend_from_string(j.at("backend").get<std::string>());
    if (j.contains("dims")) cfg.dims = j.at("dims");
    if (j.contains("measure") || j.contains("interval") || j.contains("xi")) cfg.dims = j;
    if (j.contains("function") && !flag_given("--function"))
        cfg.function = j.at("function").get<std::string>();
    if (j.contains("levels") && !flag_given("--levels")) {
        std::string lv = j.at("levels").get<std::string>();
        auto colon = lv.find(':');
        if (colon == std::string::npos) throw ParseError("levels must look like \"4:16\"");
        cfg.u_min = static_cast<unsigned>(std::stoul(lv.substr(0, colon)));
        cfg.u_max = static_cast<unsigned>(std::stoul(lv.substr(colon + 1)));
    }
    if (j.contains("tol") && !flag_given("--tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("convention") && !flag_given("--convention"))
        cfg.convention = convention_from_string(j.at("convention").get<std::string>());
    if (j.contains("weight") && !flag_given("--weight"))
        cfg.weight = j.at("weight").get<std::string>();
    if (j.contains("algebra")) cfg.algebra = j.at("algebra");
    if (j.contains("quiver")) cfg.quiver = j.at("quiver");
    if (j.contains("k") && !flag_given("--k")) cfg.k = j.at("k").get<std::int64_t>();
    if (j.contains("seed") && !flag_given("--seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("cases") && !flag_given("--cases"))
        cfg.cases = j.at("cases").get<std::uint64_t>();
    if (j.contains("suite") && !flag_given("--suite"))
        cfg.suite = j.at("suite").get<std::string>();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"step-function tower calculus: integrals, antiderivatives, weak "
                 "derivatives, Fourier coefficients, and invariant suites"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string backend_str, convention_str, levels_str, config_path;

    CLI::App* integrate_cmd = app.add_subcommand("integrate", "integrate a function");
    CLI::App* antiderive_cmd = app.add_subcommand("antiderive", "variable-upper-limit integral");
    CLI::App* differentiate_cmd = app.add_subcommand("differentiate", "weak derivative");
    CLI::App* fourier_cmd = app.add_subcommand("fourier", "Fourier coefficient c_k");
    CLI::App* verify_cmd = app.add_subcommand("verify", "run invariant suites");
    CLI::App* table_cmd = app.add_subcommand("table", "CSV convergence table");

    std::string measure_str;
    double power_q = 2.0;
    std::string interval_str, xi_str;
    unsigned n_dims = 1;
    for (CLI::App* sub : {integrate_cmd, antiderive_cmd, differentiate_cmd, fourier_cmd, table_cmd}) {
        sub->add_option("--config", config_path, "JSON config file; explicit flags win");
        sub->add_option("--backend", backend_str, "rational | float (default float)");
        sub->add_option("--function", cfg.function,
                        "expression in x1..xn, or a step:/poly:/pl: literal");
        sub->add_option("--levels", levels_str, "u_min:u_max (default 4:16)");
        sub->add_option("--tol", cfg.tol, "convergence tolerance (default 1e-6 float, 0 rational)");
        sub->add_option("--convention", convention_str, "midpoint | left | right");
        sub->add_option("--weight", cfg.weight, "paper | leinster direct-sum weight");
        sub->add_option("--measure", measure_str, "lebesgue | power | poly (all dimensions)");
        sub->add_option("--q", power_q, "exponent for the power measure");
        sub->add_option("--interval", interval_str, "a:b (default 0:1)");
        sub->add_option("--xi", xi_str, "split point (default midpoint)");
        sub->add_option("--n", n_dims, "box dimensions (default 1)");
    }
    fourier_cmd->add_option("--k", cfg.k, "coefficient index");
    verify_cmd->add_option("--suite", cfg.suite, "scalars|algebra|measure|stepfn|engine|targets|all");
    verify_cmd->add_option("--cases", cfg.cases, "random cases per suite");
    verify_cmd->add_option("--seed", cfg.seed, "RNG seed");
    verify_cmd->add_option("--config", config_path, "JSON config file");

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    auto given = [&](const std::string& name) {
        const CLI::Option* o = sub->get_option_no_throw(name);
        return o != nullptr && o->count() > 0;
    };

    try {
        if (!config_path.empty()) merge_config_file(cfg, config_path, *sub);
        if (given("--backend")) cfg.backend = backend_from_string(backend_str);
        if (given("--convention")) cfg.convention = convention_from_string(convention_str);
        if (given("--levels")) {
            auto colon = levels_str.find(':');
            if (colon == std::string::npos) throw ParseError("levels must look like \"4:16\"");
            cfg.u_min = static_cast<unsigned>(std::stoul(levels_str.substr(0, colon)));
            cfg.u_max = static_cast<unsigned>(std::stoul(levels_str.substr(colon + 1)));
        }
        if (cfg.u_min > cfg.u_max) throw ParseError("u_min must not exceed u_max");

        // flag-driven measure spec applied to every dimension
        if (given("--measure") || given("--interval") || given("--xi") || given("--n")) {
            Json dim = Json::object();
            if (given("--measure")) {
                Json m;
                m["kind"] = measure_str;
                if (measure_str == "power") m["q"] = power_q;
                dim["measure"] = m;
            }
            if (given("--interval")) {
                auto colon = interval_str.find(':');
                if (colon == std::string::npos) throw ParseError("interval must look like \"0:1\"");
                dim["interval"] = {{"a", interval_str.substr(0, colon)},
                                   {"b", interval_str.substr(colon + 1)}};
            }
            if (given("--xi")) dim["xi"] = xi_str;
            Json dims = Json::array();
            for (unsigned d = 0; d < n_dims; ++d) dims.push_back(dim);
            cfg.dims = dims;
        }

        if (sub == integrate_cmd) return run_integrate(cfg);
        if (sub == antiderive_cmd) return run_antiderive(cfg);
        if (sub == differentiate_cmd) return run_differentiate(cfg);
        if (sub == fourier_cmd) return run_fourier(cfg);
        if (sub == verify_cmd) return run_verify(cfg);
        if (sub == table_cmd) return run_table(cfg);
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
