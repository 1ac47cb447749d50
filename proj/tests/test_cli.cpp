#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(CATINT_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

} // namespace

TEST_CASE("integrate x over the unit interval") {
    RunResult r = run_cli("integrate --function x1 --measure lebesgue --levels 4:16 --tol 1e-6");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("value").get<double>() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(j.at("converged").get<bool>());
}

TEST_CASE("rational backend reports exact values") {
    RunResult r = run_cli("integrate --function \"step:3,5\" --backend rational");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("value").get<std::string>() == "4");
    CHECK(j.at("residual").get<double>() == 0.0);
}

TEST_CASE("power measure integral") {
    RunResult r = run_cli(
        "integrate --function x1 --measure power --q 2 --levels 4:14 --tol 1e-7");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("value").get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("fourier of the square wave literal") {
    RunResult r = run_cli("fourier --function \"step:1,1,-1\" --k 1 --levels 4:12");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("re").get<double>() == doctest::Approx(0.0).epsilon(1e-3));
    CHECK(j.at("im").get<double>() == doctest::Approx(-0.6366).epsilon(1e-3));
}

TEST_CASE("antiderive and differentiate round trip") {
    RunResult r = run_cli("antiderive --function \"step:2,0\" --backend rational");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    auto vals = j.at("value");
    REQUIRE(vals.size() == 3);
    CHECK(vals[0].get<std::string>() == "0");
    CHECK(vals[1].get<std::string>() == "1");
    CHECK(vals[2].get<std::string>() == "1");

    RunResult d = run_cli("differentiate --function \"pl:0,1,1\" --backend rational");
    CHECK(d.exit_code == 0);
    auto jd = nlohmann::json::parse(d.out);
    CHECK(jd.at("value")[0].get<std::string>() == "2");
    CHECK(jd.at("value")[1].get<std::string>() == "0");
}

TEST_CASE("verify runs the suites") {
    RunResult r = run_cli("verify --suite scalars --cases 50 --seed 42");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("violations=0") != std::string::npos);
}

TEST_CASE("exit code 1 on parse errors") {
    CHECK(run_cli("integrate --function \"x1 +\"").exit_code == 1);
    CHECK(run_cli("integrate --function \"y9\"").exit_code == 1);
    CHECK(run_cli("integrate --function x1 --levels banana").exit_code == 1);
}

TEST_CASE("exit code 2 on non-convergence") {
    RunResult r =
        run_cli("integrate --function x1 --convention left --levels 4:6 --tol 1e-12");
    CHECK(r.exit_code == 2);
    auto j = nlohmann::json::parse(r.out);
    CHECK_FALSE(j.at("converged").get<bool>());
}

TEST_CASE("determinism: identical config and seed give identical bytes") {
    std::string cmd = "verify --suite stepfn --cases 40 --seed 7";
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    CHECK(a.out == b.out);
    RunResult c = run_cli("integrate --function \"sin(x1)\" --levels 4:14 --tol 1e-8");
    RunResult d = run_cli("integrate --function \"sin(x1)\" --levels 4:14 --tol 1e-8");
    CHECK(c.out == d.out);
}

TEST_CASE("convergence table emits fixed CSV columns") {
    RunResult r = run_cli("table --function x1 --convention left --levels 2:6");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("level,value,residual\n", 0) == 0);
    int lines = 0;
    for (char ch : r.out)
        if (ch == '\n') ++lines;
    CHECK(lines == 6); // header + 5 levels
}

TEST_CASE("config file merges under explicit flags") {
    std::string path = "/tmp/catint_cfg_test.json";
    {
        std::ofstream out(path);
        out << R"({"function": "x1", "levels": "4:10", "convention": "midpoint",
                   "measure": {"kind": "power", "q": 2}})";
    }
    RunResult r = run_cli("integrate --config " + path + " --tol 1e-5");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("value").get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-3));

    // explicit flag wins over the file
    RunResult r2 = run_cli("integrate --config " + path + " --function \"step:1,1\"");
    CHECK(r2.exit_code == 0);
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2.at("value").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("expression grammar covers pow sin cos exp abs") {
    RunResult r = run_cli(
        "integrate --function \"abs(2*x1 - 1)\" --levels 4:14 --tol 1e-6");
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out).at("value").get<double>() ==
          doctest::Approx(0.5).epsilon(1e-4));

    RunResult p = run_cli("integrate --function \"pow(x1, 2)\" --levels 4:14 --tol 1e-7");
    CHECK(p.exit_code == 0);
    CHECK(nlohmann::json::parse(p.out).at("value").get<double>() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-4));

    RunResult e = run_cli("integrate --function \"exp(x1)\" --levels 4:16 --tol 1e-7");
    CHECK(e.exit_code == 0);
    CHECK(nlohmann::json::parse(e.out).at("value").get<double>() ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-5));

    RunResult s = run_cli("integrate --function \"cos(x1)\" --levels 4:16 --tol 1e-7");
    CHECK(s.exit_code == 0);
    CHECK(nlohmann::json::parse(s.out).at("value").get<double>() ==
          doctest::Approx(std::sin(1.0)).epsilon(1e-5));
}

TEST_CASE("sin on the rational backend is a config error") {
    CHECK(run_cli("integrate --function \"sin(x1)\" --backend rational").exit_code == 1);
}

TEST_CASE("quiver config drives the algebra") {
    std::string path = "/tmp/catint_quiver_test.json";
    {
        std::ofstream out(path);
        out << R"({"backend": "rational",
                   "function": "step:1,1",
                   "quiver": {"vertices": ["1", "2"], "arrows": [],
                              "relations": [], "tau_vertex": "1"},
                   "dims": [{}, {}]})";
    }
    RunResult r = run_cli("integrate --config " + path);
    CHECK(r.exit_code == 1); // step literals are one-dimensional, box has 2 dims
    std::string path2 = "/tmp/catint_quiver_test2.json";
    {
        std::ofstream out(path2);
        out << R"({"backend": "rational",
                   "function": "x1 * x2",
                   "levels": "2:8",
                   "quiver": {"vertices": ["1", "2"], "arrows": [],
                              "relations": [], "tau_vertex": "1"},
                   "dims": [{}, {}]})";
    }
    RunResult r2 = run_cli("integrate --config " + path2);
    CHECK(r2.exit_code == 0);
    auto j = nlohmann::json::parse(r2.out);
    CHECK(j.at("value").get<std::string>() == "1/4");
}
