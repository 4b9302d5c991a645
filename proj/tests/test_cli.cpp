#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = PHI3_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string out, err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    static int counter = 0;
    auto base = std::filesystem::temp_directory_path() / ("phi3cli_" + std::to_string(++counter));
    const std::string out = base.string() + ".out", err = base.string() + ".err";
    const std::string cmd = kCli + " " + args + " > " + out + " 2> " + err;
    const int rc = std::system(cmd.c_str());
    RunResult r{WEXITSTATUS(rc), slurp(out), slurp(err)};
    std::filesystem::remove(out);
    std::filesystem::remove(err);
    return r;
}

}  // namespace

TEST_CASE("solve: success, free point, critical refusal", "[cli]") {
    auto ok = run("solve --lambda 0.2");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("\"residual\"") != std::string::npos);
    CHECK(ok.out.find("\"lambda_c\": 0.49068") != std::string::npos);

    auto free = run("solve --lambda 0");
    CHECK(free.exit_code == 0);
    CHECK(free.out.find("\"re\": 0.0") != std::string::npos);

    auto bad = run("solve --lambda 0.6");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("0.4906") != std::string::npos);
}

TEST_CASE("eval: boundary parsing and exit codes", "[cli]") {
    auto v = run("eval --lambda 0.3 --boundaries \"1|2\"");
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("g_1plus1") != std::string::npos);

    auto z = run("eval --lambda 0 --boundaries \"1,2,3\"");
    CHECK(z.exit_code == 0);
    CHECK(z.out.find("\"re\": 0.0") != std::string::npos);

    CHECK(run("eval --lambda 0.3 --boundaries \"1,,2\"").exit_code == 2);
    CHECK(run("eval --lambda 0.3 --boundaries \"1|x\"").exit_code == 2);
    CHECK(run("eval --lambda 0.3").exit_code == 2);               // missing required option
    CHECK(run("eval --lambda 0.3 --lambda2 0.09 --boundaries \"1\"").exit_code == 2);
}

TEST_CASE("table: deterministic CSV output", "[cli]") {
    auto a = run("table --lambda 0.3 --target W --from 1 --to 100 --steps 100");
    auto b = run("table --lambda 0.3 --target W --from 1 --to 100 --steps 100");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    // header + 100 rows
    int lines = 0;
    for (char ch : a.out)
        if (ch == '\n') ++lines;
    CHECK(lines == 101);
    CHECK(a.out.rfind("arg,re,im\n", 0) == 0);

    auto g0 = run("table --lambda 0 --target G1 --from 0 --to 10 --steps 5");
    CHECK(g0.exit_code == 0);
    CHECK(g0.out.find(",0,0\n") != std::string::npos);

    auto s2 = run("table --lambda 0.2 --target S2 --from 0 --to 10 --steps 6");
    CHECK(s2.exit_code == 0);
    {
        // positive and decreasing over the physical range
        std::istringstream in(s2.out);
        std::string line;
        std::getline(in, line);  // header
        double prev = 1e300;
        int rows = 0;
        while (std::getline(in, line)) {
            const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
            const double re = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
            CHECK(re > 0.0);
            CHECK(re < prev);
            prev = re;
            ++rows;
        }
        CHECK(rows == 6);
    }

    CHECK(run("table --lambda 0.2 --from 5 --to 1").exit_code == 2);
}

TEST_CASE("verify subcommands", "[cli]") {
    auto g = run("verify --suite gamma --max-b 7");
    CHECK(g.exit_code == 0);
    CHECK(g.out.find("\"passed\": true") != std::string::npos);

    auto c = run("verify --suite conjecture --max-l 2 --max-n 2");
    CHECK(c.exit_code == 0);
    CHECK(c.out.find("\"passed\": true") != std::string::npos);

    auto s = run("verify --suite schwinger --lambda 0.3");
    CHECK(s.exit_code == 0);
    CHECK(s.out.find("stieltjes_violated") != std::string::npos);
}

TEST_CASE("schwinger scan emits a CSV grid", "[cli]") {
    auto base = std::filesystem::temp_directory_path() / "phi3cli_scan.csv";
    auto r = run("schwinger --lambda2 -0.04 --scan \"0:2:3,-1:1:3\" --scan-out " + base.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("stieltjes_violated") != std::string::npos);
    const std::string csv = slurp(base);
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 10);  // header + 9 grid points
    std::filesystem::remove(base);
}

TEST_CASE("config file provides defaults, flags win", "[cli]") {
    auto cfg = std::filesystem::temp_directory_path() / "phi3cli_cfg.toml";
    {
        std::ofstream out(cfg);
        out << "[solve]\nlambda = 0.1\n";
    }
    auto from_cfg = run("solve --config " + cfg.string());
    auto direct = run("solve --lambda 0.1");
    CHECK(from_cfg.exit_code == 0);
    CHECK(from_cfg.out == direct.out);

    auto flag_wins = run("solve --config " + cfg.string() + " --lambda 0.2");
    CHECK(flag_wins.out == run("solve --lambda 0.2").out);
    std::filesystem::remove(cfg);
}
