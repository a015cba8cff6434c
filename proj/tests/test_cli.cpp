#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

const std::string kCli = RYDPOL_CLI;
const std::string kData = RYDPOL_TEST_DATA;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args) {
    static int counter = 0;
    const std::string err_path = "cli_stderr_" + std::to_string(counter++) + ".txt";
    const std::string cmd = kCli + " " + args + " 2>" + err_path;
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    std::remove(err_path.c_str());
    return r;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("golden files are reproduced byte for byte") {
    std::ifstream commands(kData + "/golden/commands.txt");
    std::string line;
    int checked = 0;
    while (std::getline(commands, line)) {
        const auto space = line.find(' ');
        const std::string name = line.substr(0, space);
        const auto r = run(line.substr(space + 1));
        CAPTURE(name);
        CHECK(r.code == 0);
        CHECK(r.out == slurp(kData + "/golden/" + name));
        ++checked;
    }
    CHECK(checked >= 8);
}

TEST_CASE("params") {
    const auto r = run("params --N 2500 --R-um 10 --c6-ghz-um6 880 --tau-ns 0.72 --T-ns 720 --format json");
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["T_R_ns"].get<double>() == doctest::Approx(180.0).epsilon(0.01));
    CHECK(j["t_pulse"].get<double>() == doctest::Approx(0.004).epsilon(0.01));
    CHECK(j["t"].get<double>() == doctest::Approx(4.0).epsilon(0.01));

    const auto unit = run("params --N 2500 --R-um 10 --c6-ghz-um6 880 --tau-ns 0.72 --T-ns 180.857889877154 --format json");
    CHECK(json::parse(unit.out)["t"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(run("params --N 2500 --R-um 10 --c6-ghz-um6 880 --tau-ns 0.72").code == 2);
    CHECK(run("params --N 2500 --R-um 10 --tau-ns 0.72 --T-ns 720").code == 2);
    CHECK(run("params --N 2500 --R-um -10 --c6-ghz-um6 880 --tau-ns 0.72 --T-ns 720").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("un") {
    const auto ones = csv(run("un --n 1 --t 0:4:9").out);
    REQUIRE(ones.size() == 10);
    CHECK(ones[0][0] == "t");
    for (std::size_t k = 1; k < ones.size(); ++k) {
        CHECK(ones[k][2] == "1");
        CHECK(ones[k][3] == "0");
    }
    const std::string args = "un --n 2,3,4 --t 0:4:6 --method ansatz-m2,mc --samples 20000 --seed 7";
    const auto a = run(args);
    const auto b = run(args);
    const auto c = run(args + " --threads 4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(run(args + " --seed 8").out != a.out);

    CHECK(run("un --n 2 --t 1 --method simpson").code == 2);
    CHECK(run("un --n -1 --t 1").code == 2);
    CHECK(run("un --n two --t 1").code == 2);
    CHECK(run("un --n 2 --t 1 --method mc --samples 10").code == 2);
    CHECK(run("un --n 2 --t -1").code == 2);
}

TEST_CASE("evolve") {
    const auto t0 = json::parse(run("evolve --alpha 1 --t 0").out);
    const double c0 = std::exp(-0.5);
    CHECK(t0["amplitudes"][0][0].get<double>() == doctest::Approx(c0).epsilon(1e-15));
    CHECK(t0["amplitudes"][2][0].get<double>() == doctest::Approx(c0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(t0["readout"] == "renormalized");

    const auto vac = json::parse(run("evolve --alpha 0 --t 4").out);
    CHECK(vac["amplitudes"][0][0].get<double>() == 1.0);
    for (std::size_t n = 1; n < vac["amplitudes"].size(); ++n) CHECK(vac["amplitudes"][n][0].get<double>() == 0.0);

    const auto t4 = json::parse(run("evolve --alpha 1 --t 4").out);
    const double re = t4["amplitudes"][2][0].get<double>(), im = t4["amplitudes"][2][1].get<double>();
    CHECK(std::hypot(re, im) / (c0 / std::sqrt(2.0)) == doctest::Approx(0.31184902604571878).epsilon(1e-10));

    CHECK(run("evolve --alpha 1 --t 4 --method expansion --samples 1000").code == 3);
    CHECK(run("evolve --alpha 1 --t 4 --readout lossy").code == 2);
}

TEST_CASE("wigner") {
    const auto vac = run("wigner --state " + kData + "/data/vacuum.json --step 0.1");
    REQUIRE(vac.code == 0);
    const auto summary = json::parse(vac.err);
    CHECK(summary["min_w"].get<double>() >= 0.0);
    CHECK(summary["trace"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    const auto rows = csv(vac.out);
    CHECK(rows[0] == std::vector<std::string>{"q", "p", "w"});
    CHECK(rows.size() == 1 + 101 * 101);

    REQUIRE(run("evolve --alpha 1 --t 4 -o cli_scissors.json").code == 0);
    const auto sc = run("wigner --state cli_scissors.json --step 0.1 -o cli_scissors.csv --summary cli_summary.json");
    CHECK(sc.code == 0);
    CHECK(sc.out.empty());
    const auto s = json::parse(slurp("cli_summary.json"));
    CHECK(s["min_w"].get<double>() < 0.0);
    CHECK(s["fidelity"].get<double>() >= 0.976191550441931 - 1e-10);
    std::remove("cli_scissors.json");
    std::remove("cli_scissors.csv");
    std::remove("cli_summary.json");

    const auto bad = run("wigner --state " + kData + "/data/malformed.json");
    CHECK(bad.code != 0);
    CHECK(bad.err.find("error") != std::string::npos);
    CHECK(run("wigner --state /nonexistent.json").code != 0);
    CHECK(run("wigner --state " + kData + "/data/vacuum.json --q 5").code == 2);
}

TEST_CASE("integrals") {
    const auto rows = csv(run("integrals --t 0.004 --method analytic,quadrature").out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][7] == "analytic");
    CHECK(rows[2][7] == "quadrature");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(std::stod(rows[2][1])).epsilon(1e-10));
    CHECK(std::stod(rows[1][2]) == doctest::Approx(std::stod(rows[2][2])).epsilon(1e-10));

    const auto zeros = csv(run("integrals --t 0").out);
    CHECK(zeros[1][1] == "0");
    CHECK(zeros[1][2] == "0");
    const auto mc = csv(run("integrals --t 0 --method mc --samples 1000").out);
    for (int col = 1; col <= 6; ++col) CHECK(mc[1][col] == "0");
}

TEST_CASE("blockade") {
    const auto rows = csv(run("blockade --tau 0.004 --T 0.004 --pulse square").out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"tau", "T", "c_real", "c_imag_ratio"});
    CHECK(std::stod(rows[1][2]) > 0.0);
    CHECK(std::stod(rows[1][2]) <= 1.0);
    CHECK(run("blockade --tau 1 --T 0.5").code == 3);
}

TEST_CASE("errors as JSON on stderr") {
    const auto r = run("params --N 2500 --R-um 10 --tau-ns 0.72 --T-ns 720 --format json");
    CHECK(r.code == 2);
    const auto j = json::parse(r.err);
    CHECK(j["exit_code"] == 2);
    CHECK(j["error"].get<std::string>().find("c6") != std::string::npos);
}
