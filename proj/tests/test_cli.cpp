#include "mcor/csv.hpp"
#include "mcor/harness.hpp"
#include "mcor/rng.hpp"

#include <json.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

// End-to-end checks of the installed command line: exit codes, JSON output,
// byte stability. The binary path is injected by the build.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "mcor_cli_out.txt";
    const fs::path err = fs::temp_directory_path() / "mcor_cli_err.txt";
    const std::string cmd = std::string(MCOR_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    RunResult r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
    fs::remove(out);
    fs::remove(err);
    return r;
}

fs::path write_fixture(const char* name, bool dependent) {
    const fs::path path = fs::temp_directory_path() / name;
    mcor::Rng rng(2024);
    mcor::Matrix data(60, 3);
    for (std::size_t r = 0; r < 60; ++r) {
        const double x = mcor::normal_quantile(rng.uniform());
        data(r, 0) = x;
        data(r, 1) = mcor::normal_quantile(rng.uniform());
        data(r, 2) = dependent ? x +  0.3 * mcor::normal_quantile(rng.uniform())
                               : mcor::normal_quantile(rng.uniform());
    }
    mcor::write_csv(path, {"x", "y", "z"}, data);
    return path;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("measure outputs json and is byte stable") {
    const fs::path data = write_fixture("mcor_cli_fixture.csv", true);
    const std::string args =
        "measure --input " + data.string() + " --partition \"1,2|3\" --estimator biased";

    const RunResult a = run_cli(args);
    REQUIRE(a.exit_code == 0);
    const json j = json::parse(a.out);
    CHECK(j["command"] == "measure");
    CHECK(j["variant"] == "mcor-total");
    CHECK(j["n_components"] == 2);
    CHECK(j["sample_size"] == 60);
    CHECK(j["value"].get<double>() > 0.0);
    CHECK(j["value"].get<double>() <= 1.0 + 1e-9);

    const RunResult b = run_cli(args);
    CHECK(a.out == b.out);
    fs::remove(data);
}

TEST_CASE("copula measure requires a seed") {
    const fs::path data = write_fixture("mcor_cli_fixture2.csv", true);
    const RunResult r =
        run_cli("measure --input " + data.string() + " --partition \"1|2|3\" --copula");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("--seed") != std::string::npos);

    const RunResult ok = run_cli("measure --input " + data.string() +
                                 " --partition \"1|2|3\" --copula --seed 42");
    CHECK(ok.exit_code == 0);
    CHECK(json::parse(ok.out)["seed"] == 42);
    fs::remove(data);
}

TEST_CASE("argument and data errors exit with code 2") {
    const fs::path data = write_fixture("mcor_cli_fixture3.csv", false);
    CHECK(run_cli("measure --input " + data.string() + " --partition \"1|2\"").exit_code == 2);
    CHECK(run_cli("measure --input " + data.string() +
                  " --partition \"1|2|3\" --variant nope").exit_code == 2);
    CHECK(run_cli("measure --input /no/such/file.csv --partition \"1|2\"").exit_code == 2);
    CHECK(run_cli("bogus-subcommand").exit_code == 2);

    const fs::path bad = fs::temp_directory_path() / "mcor_cli_bad.csv";
    {
        std::ofstream out(bad);
        out << "a,b\n1,NA\n";
    }
    const RunResult r = run_cli("measure --input " + bad.string() + " --partition \"1|2\"");
    CHECK(r.exit_code == 2);
    fs::remove(bad);
    fs::remove(data);
}

TEST_CASE("degenerate statistics exit with code 3") {
    const fs::path path = fs::temp_directory_path() / "mcor_cli_const.csv";
    {
        std::ofstream out(path);
        out << "a,b\n";
        for (int i = 0; i < 10; ++i) out << "1.0," << i << ".5\n";
    }
    const RunResult r =
        run_cli("measure --input " + path.string() + " --partition \"1|2\" --estimator biased");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("degenerate") != std::string::npos);
    fs::remove(path);
}

TEST_CASE("permutation and bound tests run end to end") {
    const fs::path data = write_fixture("mcor_cli_fixture4.csv", true);
    const RunResult perm = run_cli("test --input " + data.string() +
                                   " --partition \"1,2|3\" --permutations 199 --seed 7");
    REQUIRE(perm.exit_code == 0);
    const json j = json::parse(perm.out);
    CHECK(j["method"] == "permutation");
    CHECK(j["permutations"] == 199);
    const double p = j["p_value"].get<double>();
    CHECK(p > 0.0);
    CHECK(p <= 1.0);

    const RunResult bound = run_cli("test --input " + data.string() +
                                    " --partition \"1,2|3\" --method bound --estimator biased");
    REQUIRE(bound.exit_code == 0);
    const json jb = json::parse(bound.out);
    CHECK(jb["method"] == "conservative-bound");
    CHECK(jb["p_value"].get<double>() <= 1.0);

    // permutation without a seed is refused
    CHECK(run_cli("test --input " + data.string() + " --partition \"1,2|3\"").exit_code == 2);
    fs::remove(data);
}

TEST_CASE("transform emits a csv that replays bit for bit") {
    const fs::path data = write_fixture("mcor_cli_fixture5.csv", false);
    const fs::path out1 = fs::temp_directory_path() / "mcor_cli_t1.csv";
    const fs::path out2 = fs::temp_directory_path() / "mcor_cli_t2.csv";
    REQUIRE(run_cli("transform --input " + data.string() + " --seed 3 --out " + out1.string())
                .exit_code == 0);
    REQUIRE(run_cli("transform --input " + data.string() + " --seed 3 --out " + out2.string())
                .exit_code == 0);

    std::ifstream a(out1), b(out2);
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());

    const mcor::CsvTable t = mcor::ingest_csv(out1);
    CHECK(t.values.rows() == 60);
    for (std::size_t r = 0; r < t.values.rows(); ++r)
        for (std::size_t c = 0; c < t.values.cols(); ++c) {
            CHECK(t.values(r, c) >= 0.0);
            CHECK(t.values(r, c) <= 1.0);
        }
    fs::remove(data);
    fs::remove(out1);
    fs::remove(out2);
}

TEST_CASE("experiment subcommand writes report files") {
    const fs::path dir = fs::temp_directory_path() / "mcor_cli_exp";
    fs::remove_all(dir);
    const RunResult r = run_cli("experiment dominance --cases 30 --n 40 --seed 5 --out " +
                                dir.string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["experiment"] == "dominance");
    CHECK(j["cells"].size() == 12); // 4 pairs, ordered off-diagonal cells
    CHECK(fs::exists(dir / "dominance.csv"));
    CHECK(fs::exists(dir / "dominance.json"));

    // byte-stable report files
    std::ifstream f1(dir / "dominance.csv");
    std::ostringstream s1;
    s1 << f1.rdbuf();
    const RunResult again = run_cli("experiment dominance --cases 30 --n 40 --seed 5 --out " +
                                    dir.string());
    REQUIRE(again.exit_code == 0);
    std::ifstream f2(dir / "dominance.csv");
    std::ostringstream s2;
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    fs::remove_all(dir);
}

TEST_CASE("help succeeds") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("measure --help").exit_code == 0);
}

} // TEST_SUITE
