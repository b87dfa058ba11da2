#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "commands.hpp"
#include "fixtures.hpp"

using namespace fx;
using mpk::io::json;
namespace fs = std::filesystem;

namespace {

std::string samples_dir() {
    const char* s = std::getenv("MPK_SAMPLES");
    return s ? s : MPK_SAMPLES_DIR;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream b;
    b << in.rdbuf();
    return b.str();
}

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

Outcome run_cmd(const std::string& cmd, const std::string& sample, mpk::cli::Flags flags = {}) {
    std::ostringstream out, err;
    Outcome o;
    o.code = mpk::cli::run(cmd, slurp(samples_dir() + "/" + sample), flags, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

/// Runs the installed binary with separate stdout/stderr capture.
std::string cli_path() {
    const char* s = std::getenv("MPK_CLI");
    return s ? s : MPK_CLI_PATH;
}

Outcome run_binary(const std::string& args, const std::string& env = "") {
    std::string exe = cli_path();
    Outcome o;
    fs::path tmp = fs::temp_directory_path() / ("mpk_cli_" + std::to_string(::getpid()));
    fs::create_directories(tmp);
    std::string cmd = env + " '" + std::string(exe) + "' " + args + " > '" + (tmp / "out").string() + "' 2> '" +
                      (tmp / "err").string() + "'";
    int status = std::system(cmd.c_str());
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.out = slurp((tmp / "out").string());
    o.err = slurp((tmp / "err").string());
    fs::remove_all(tmp);
    return o;
}

MatrixQ matrix_of(const json& j) { return mpk::io::matrix_from_json(j, "/"); }

}  // namespace

TEST(Cli, ExitCodes) {
    struct Case {
        std::string cmd, sample;
        int code;
    };
    std::vector<Case> cases{
        {"diagonalize", "cubic3x3.json", 0},    {"diagonalize", "identity.json", 0},
        {"diagonalize", "bad_rational.json", 1},  {"spectrum", "bad_syntax.json", 1},
        {"solve-ode", "singular.json", 2},        {"represent", "cubic3x3.json", 3},
        {"represent", "not_hermitian.json", 3},   {"represent", "divergent2x2.json", 4},
        {"represent", "complex_spectrum.json", 5}, {"represent", "irrational_spectrum.json", 5},
        {"represent", "hermitian2x2.json", 0},      {"represent", "nonzero_limit.json", 0},
        {"represent", "gaussian.json", 0},        {"represent", "identity.json", 0},
        {"spectrum", "irrational_spectrum.json", 6}, {"jordan", "cubic3x3.json", 0},
        {"verify", "cubic3x3_triple.json", 0}, {"verify", "hermitian2x2_gamma.json", 0},
        {"verify", "cubic3x3.json", 0},         {"solve-ode", "cubic3x3.json", 0},
    };
    for (const auto& c : cases) {
        auto o = run_cmd(c.cmd, c.sample);
        EXPECT_EQ(o.code, c.code) << c.cmd << " " << c.sample << ": " << o.err;
        if (c.code != 0 && c.code != 2) {
            EXPECT_TRUE(o.out.empty()) << "no machine output on failure";
            EXPECT_FALSE(o.err.empty());
        }
    }
}

TEST(Cli, ParseErrorsCarryPosition) {
    auto o = run_cmd("spectrum", "bad_syntax.json");
    EXPECT_NE(o.err.find("line 3"), std::string::npos) << o.err;
    EXPECT_NE(o.err.find("column 1"), std::string::npos) << o.err;
    try {
        mpk::io::load_input("{\"n\": 1,\n  \"entries\": [[[\"1/0\"]]]}");
        FAIL();
    } catch (const mpk::io::InputError& e) {
        EXPECT_EQ(e.path(), "/entries/0/0/0");
    }
    EXPECT_THROW(mpk::io::load_input("{\"n\": 2, \"entries\": [[[\"1\"]]]}"), mpk::io::InputError);
    EXPECT_THROW(mpk::io::load_input("{\"n\": 1, \"entries\": [[[\"1\"]]], \"extra\": 1}"), mpk::io::InputError);
    EXPECT_THROW(mpk::io::load_input("{\"n\": 1, \"entries\": [[[{\"re\": \"1\", \"img\": \"2\"}]]]}"),
                 mpk::io::InputError);
}

TEST(Cli, SingularInputMessage) {
    auto o = run_cmd("solve-ode", "singular.json");
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("det L \xe2\x89\xa1 0"), std::string::npos) << o.err;
}

TEST(Cli, Divergent2x2CitesInfinity) {
    auto o = run_cmd("represent", "divergent2x2.json");
    EXPECT_EQ(o.code, 4);
    EXPECT_NE(o.err.find("infinity"), std::string::npos) << o.err;
}

TEST(Cli, DiagonalizeDocuments) {
    auto o = run_cmd("diagonalize", "identity.json", {true, false, false});
    ASSERT_EQ(o.code, 0);
    json d = o.doc();
    DiagForm f = mpk::io::diagform_from_json(d["diag_form"], "/diag_form");
    EXPECT_EQ(f.D, identity(2));
    EXPECT_EQ(f.S, identity(2));
    EXPECT_EQ(f.T, identity(2));
    EXPECT_TRUE(d["verification"]["ok"].get<bool>());
    EXPECT_TRUE(d.contains("latex"));

    auto e = run_cmd("diagonalize", "cubic3x3.json");
    DiagForm g = mpk::io::diagform_from_json(e.doc()["diag_form"], "/diag_form");
    std::vector<std::pair<std::string, unsigned>> roots;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.d(i).degree() >= 1)
            for (const auto& r : find_roots(g.d(i)).roots) roots.emplace_back(r.to_string(), r.multiplicity);
    std::sort(roots.begin(), roots.end());
    EXPECT_EQ(roots, (std::vector<std::pair<std::string, unsigned>>{{"0", 1}, {"0", 2}, {"1", 1}}));
    EXPECT_TRUE(verify_diag(cubic3x3(), g).ok());
}

TEST(Cli, SolveOde) {
    auto o = run_cmd("solve-ode", "cubic3x3.json", {true, true, false});
    ASSERT_EQ(o.code, 0) << o.err;
    json d = o.doc();
    EXPECT_EQ(d["dimension"].get<int>(), 4);
    for (const auto& t : d["terms"]) {
        EXPECT_TRUE(t["residual_zero"].get<bool>());
        EXPECT_TRUE(t.contains("latex"));
    }
    auto z = run_cmd("solve-ode", "identity.json");
    EXPECT_EQ(z.doc()["dimension"].get<int>(), 0);
}

TEST(Cli, RepresentHermitian2x2) {
    auto o = run_cmd("represent", "hermitian2x2.json");
    ASSERT_EQ(o.code, 0) << o.err;
    json d = o.doc();
    EXPECT_EQ(d["representation"]["kappa"].get<int>(), 2);
    EXPECT_EQ(matrix_of(d["representation"]["A"]), MQ({{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}));
    EXPECT_EQ(matrix_of(d["representation"]["J"]), MQ({{0, -1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}}));
    for (const auto& l : d["chain_limits"]) EXPECT_EQ(mpk::io::gr_from_json(l["limit"], "/"), Q(-1));
    EXPECT_TRUE(d["verification"]["ok"].get<bool>());
}

TEST(Cli, RepresentNonzeroLimit) {
    auto o = run_cmd("represent", "nonzero_limit.json");
    ASSERT_EQ(o.code, 0) << o.err;
    json d = o.doc();
    EXPECT_EQ(matrix_of(d["representation"]["S_inf"]), MQ({{0, 0}, {0, -1}}));
    EXPECT_EQ(d["representation"]["kappa"].get<int>(), 0);
}

TEST(Cli, NumericRootsNeedTheFlag) {
    EXPECT_EQ(run_cmd("jordan", "irrational_spectrum.json").code, 6);
    auto o = run_cmd("spectrum", "irrational_spectrum.json", {false, false, true});
    ASSERT_EQ(o.code, 0) << o.err;
    json d = o.doc();
    for (const auto& e : d["eigenvalues"]) {
        EXPECT_FALSE(e["alpha"]["exact"].get<bool>());
        EXPECT_TRUE(e["alpha"]["value"]["approx"].get<bool>());
    }
    auto s = run_cmd("solve-ode", "irrational_spectrum.json", {false, true, true});
    EXPECT_EQ(s.code, 0) << s.err;
}

TEST(Cli, VerifyRejectsBadTriple) {
    std::string text = slurp(samples_dir() + "/cubic3x3_triple.json");
    json j = json::parse(text);
    j["diag_form"]["T"][0][2] = json::array({"0", "0", "-1"});
    std::ostringstream out, err;
    int code = mpk::cli::run("verify", j.dump(), {}, out, err);
    EXPECT_EQ(code, 2);
    json d = json::parse(out.str());
    EXPECT_EQ(d["diag_form"]["failed_check"], "a");
}

TEST(RoundTrip, InputDocuments) {
    for (const auto& s : {"cubic3x3.json", "hermitian2x2.json", "nonzero_limit.json", "gaussian.json"}) {
        auto doc = mpk::io::load_input(slurp(samples_dir() + "/" + s));
        json a = mpk::io::to_json(doc);
        auto back = mpk::io::input_from_json(json::parse(a.dump()));
        EXPECT_EQ(back.L, doc.L);
        EXPECT_EQ(mpk::io::to_json(back), a);
    }
}

TEST(RoundTrip, EmittedDocumentsReparse) {
    for (const auto& cmd : mpk::cli::commands())
        for (const auto& s : {"cubic3x3.json", "hermitian2x2.json", "nonzero_limit.json"}) {
            auto o = run_cmd(cmd, s);
            if (o.out.empty()) continue;
            json a = json::parse(o.out);
            EXPECT_EQ(json::parse(a.dump()), a);
        }
    auto d = run_cmd("diagonalize", "hermitian2x2.json").doc()["diag_form"];
    EXPECT_EQ(mpk::io::to_json(mpk::io::diagform_from_json(d, "/diag_form")), d);
    auto r = run_cmd("represent", "hermitian2x2.json").doc()["representation"];
    EXPECT_EQ(mpk::io::to_json(mpk::io::representation_from_json(r, "/representation", 2)), r);
}

TEST(Binary, StreamsAndExitCodes) {
    if (!fs::exists(cli_path())) GTEST_SKIP() << "mpk binary not built";
    std::string dir = samples_dir();
    auto ok = run_binary("represent '" + dir + "/hermitian2x2.json'");
    EXPECT_EQ(ok.code, 0);
    EXPECT_TRUE(json::accept(ok.out));
    EXPECT_TRUE(ok.err.empty());
    auto bad = run_binary("represent '" + dir + "/divergent2x2.json'");
    EXPECT_EQ(bad.code, 4);
    EXPECT_TRUE(bad.out.empty());
    EXPECT_FALSE(bad.err.empty());
    EXPECT_EQ(run_binary("diagonalize '" + dir + "/bad_rational.json'").code, 1);
    EXPECT_EQ(run_binary("diagonalize '" + dir + "/does_not_exist.json'").code, 1);
    EXPECT_EQ(run_binary("frobnicate '" + dir + "/hermitian2x2.json'").code, 1);
    auto latex = run_binary("represent --latex '" + dir + "/hermitian2x2.json'");
    EXPECT_TRUE(json::parse(latex.out).contains("latex"));
}

TEST(Binary, NumericToleranceFromEnvironment) {
    if (!fs::exists(cli_path())) GTEST_SKIP() << "mpk binary not built";
    auto o = run_binary("spectrum --allow-numeric-roots '" + samples_dir() + "/irrational_spectrum.json'", "MPK_NUMERIC_TOL=1e-12");
    EXPECT_EQ(o.code, 0) << o.err;
    ::setenv("MPK_NUMERIC_TOL", "1e-12", 1);
    EXPECT_DOUBLE_EQ(mpk::numeric_tolerance(), 1e-12);
    ::unsetenv("MPK_NUMERIC_TOL");
    EXPECT_DOUBLE_EQ(mpk::numeric_tolerance(), 1e-10);
}
