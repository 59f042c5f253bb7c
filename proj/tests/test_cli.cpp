// End-to-end tests of the command-line driver: flags, config files, output
// artifacts, manifests, determinism, and exit codes.
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "doctest.h"
#include "primelab/sha256.hpp"

using nlohmann::json;

namespace {

std::string bin_path() {
    const char* p = std::getenv("PRIMELAB_BIN");
    REQUIRE(p != nullptr);
    return p;
}

std::string zeros_path() {
    const char* p = std::getenv("PRIMELAB_ZEROS_FILE");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int code = -1;
    std::string output;  // stdout and stderr combined
};

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = bin_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    std::string path;
    TempDir() {
        char tmpl[] = "/tmp/primelab_cli_XXXXXX";
        REQUIRE(mkdtemp(tmpl) != nullptr);
        path = tmpl;
    }
    ~TempDir() {
        int rc = std::system(("rm -rf '" + path + "'").c_str());
        (void)rc;
    }
    std::string file(const std::string& name) const { return path + "/" + name; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

// A deliberately short but well-formed zero table (first ordinates only), for
// exercising the insufficient-table paths.
std::string truncated_table(const std::string& dir, int count) {
    std::ifstream in(zeros_path());
    REQUIRE(in.good());
    std::string line, body;
    int kept = 0;
    while (kept < count && std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        body += line;
        body += '\n';
        ++kept;
    }
    REQUIRE(kept == count);
    std::string path = dir + "/short_zeros.txt";
    write_file(path, body);
    return path;
}

}  // namespace

// ---------------------------------------------------------------- usage ----

TEST_CASE("cli: help and version exit clean") {
    RunResult help = run("--help");
    CHECK(help.code == 0);
    CHECK(help.output.find("series") != std::string::npos);
    CHECK(help.output.find("fetch-zeros") != std::string::npos);
    RunResult ver = run("--version");
    CHECK(ver.code == 0);
    CHECK(ver.output.find("1.0.0") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
    CHECK(run("").code == 2);                       // missing subcommand
    CHECK(run("frobnicate").code == 2);             // unknown subcommand
    CHECK(run("series --no-such-flag").code == 2);  // unknown flag
    CHECK(run("dist --form nonsense --b 1e5").code == 2);
}

// --------------------------------------------------------------- series ----

TEST_CASE("cli: series produces a CSV, a manifest, and is deterministic") {
    TempDir dir;
    std::string out = dir.file("series.csv");
    std::string args = "series --b 1e4 --samples 50 --out '" + out + "'";
    RunResult r1 = run(args);
    CHECK(r1.code == 0);

    std::string csv = read_file(out);
    std::vector<std::string> rows = lines_of(csv);
    REQUIRE(rows.size() == 51);
    CHECK(rows[0] == "x,s_hat");
    // every data row has one comma and parses to finite doubles
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::size_t comma = rows[i].find(',');
        REQUIRE(comma != std::string::npos);
        double x = std::stod(rows[i].substr(0, comma));
        double s = std::stod(rows[i].substr(comma + 1));
        CHECK(x > 5000.0);
        CHECK(x < 10000.0);
        CHECK(std::isfinite(s));
    }

    json manifest = json::parse(read_file(dir.file("manifest.json")));
    CHECK(manifest["config"]["b"] == 1e4);
    CHECK(manifest["outputs"]["series.csv"] == primelab::sha256_file(out));
    CHECK(manifest["zeros_count_used"].get<int>() > 0);
    CHECK(manifest["tool_version"] == "1.0.0");

    // rerun: data artifact is byte-identical
    RunResult r2 = run(args);
    CHECK(r2.code == 0);
    CHECK(read_file(out) == csv);
}

TEST_CASE("cli: series optional columns") {
    TempDir dir;
    std::string out = dir.file("series.csv");
    RunResult r = run("series --b 1e4 --samples 5 --with-direct --with-rsigma --out '" + out +
                      "'");
    CHECK(r.code == 0);
    std::vector<std::string> rows = lines_of(read_file(out));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "x,s_hat,s_direct,r_sigma");
}

TEST_CASE("cli: series random sampling is seed-deterministic") {
    TempDir dir;
    std::string out = dir.file("series.csv");
    std::string base = "series --b 1e4 --samples 20 --sampling random --out '" + out + "'";
    CHECK(run(base + " --seed 9").code == 0);
    std::string first = read_file(out);
    CHECK(run(base + " --seed 9").code == 0);
    CHECK(read_file(out) == first);
    CHECK(run(base + " --seed 10").code == 0);
    CHECK(read_file(out) != first);
}

TEST_CASE("cli: series with a short zero table exits 2") {
    TempDir dir;
    std::string shorts = truncated_table(dir.path, 20);
    RunResult r = run("series --b 1e6 --samples 5 --zeros '" + shorts + "' --out '" +
                      dir.file("s.csv") + "'");
    CHECK(r.code == 2);
    CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("cli: series with a missing zero table exits 3") {
    TempDir dir;
    RunResult r = run("series --b 1e4 --samples 5 --zeros /no/such/file --out '" +
                      dir.file("s.csv") + "'");
    CHECK(r.code == 3);
}

// ----------------------------------------------------------------- dist ----

TEST_CASE("cli: dist closed form needs no zero table") {
    TempDir dir;
    std::string out = dir.file("dist.csv");
    RunResult r = run("dist --b 1e5 --points 21 --span 2 --zeros /no/such/file --out '" + out +
                      "'");
    CHECK(r.code == 0);  // closed-only: the zeros flag is never touched
    std::vector<std::string> rows = lines_of(read_file(out));
    REQUIRE(rows.size() == 22);
    CHECK(rows[0] == "lambda,expected_closed");
    // the curve peaks at the center row and decays toward both edges
    auto value_at = [&](std::size_t i) {
        std::string row = rows[i];
        return std::stod(row.substr(row.find(',') + 1));
    };
    double center = value_at(11);
    CHECK(center > value_at(1));
    CHECK(center > value_at(21));
}

TEST_CASE("cli: dist with midform and empirical columns") {
    TempDir dir;
    std::string out = dir.file("dist.csv");
    RunResult r = run("dist --b 1e5 --points 7 --form both --with-empirical --samples 500 "
                      "--out '" +
                      out + "'");
    CHECK(r.code == 0);
    std::vector<std::string> rows = lines_of(read_file(out));
    REQUIRE(rows.size() == 8);
    CHECK(rows[0] == "lambda,expected_closed,expected_midform,empirical");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream ss(rows[i]);
        std::string cell;
        int cells = 0;
        while (std::getline(ss, cell, ',')) {
            CHECK(!cell.empty());
            ++cells;
        }
        CHECK(cells == 4);
    }
}

TEST_CASE("cli: dist rejects a degenerate grid") {
    CHECK(run("dist --b 1e5 --points 1").code == 2);
}

// -------------------------------------------------------------- scatter ----

TEST_CASE("cli: scatter emits data, fit report, and manifest") {
    TempDir dir;
    std::string out = dir.file("scatter.csv");
    std::string fit = dir.file("fit.json");
    RunResult r = run("scatter --b 1e4 --samples 300 --out '" + out + "' --fit-out '" + fit +
                      "'");
    CHECK(r.code == 0);
    std::vector<std::string> rows = lines_of(read_file(out));
    REQUIRE(rows.size() == 301);
    CHECK(rows[0] == "x,s_hat,r_sigma");

    json f = json::parse(read_file(fit));
    for (const char* key : {"m", "r", "m_over_r", "variance", "band_fraction", "gof_stat",
                            "gof_cells", "p_value", "n_points"})
        CHECK(f.contains(key));
    CHECK(f["n_points"] == 300);
    CHECK(f["variance"].get<double>() > 0.0);
    CHECK(f["r"].get<double>() <= 1.0);
    CHECK(f["p_value"].get<double>() >= 0.0);
    CHECK(f["p_value"].get<double>() <= 1.0);

    json manifest = json::parse(read_file(dir.file("manifest.json")));
    CHECK(manifest["outputs"].contains("scatter.csv"));
    CHECK(manifest["outputs"].contains("fit.json"));
}

// ------------------------------------------------------------------- mc ----

TEST_CASE("cli: mc reports per-level statistics and is seed-deterministic") {
    TempDir dir;
    std::string out = dir.file("mc.json");
    // the closed column needs a > 4*pi*sigma for off-center levels, so stay at 1e5
    std::string base = "mc --b 1e5 --trials 12 --levels 1.0 --levels 0.995 --out '" + out + "'";
    RunResult r = run(base + " --seed 5");
    CHECK(r.code == 0);
    json arr = json::parse(read_file(out));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    for (const json& row : arr) {
        CHECK(row["trials"] == 12);
        CHECK(row["seed"] == 5);
        CHECK(row["mean"].get<double>() >= 0.0);
        CHECK(row["stderr"].get<double>() >= 0.0);
        CHECK(row["midform"].get<double>() > 0.0);
        CHECK(row["closed"].get<double>() > 0.0);
    }
    std::string first = read_file(out);
    CHECK(run(base + " --seed 5").code == 0);
    CHECK(read_file(out) == first);
    CHECK(run(base + " --seed 6").code == 0);
    CHECK(read_file(out) != first);
}

TEST_CASE("cli: mc rejects too few trials") {
    CHECK(run("mc --b 1e4 --trials 1").code == 2);
}

// ------------------------------------------------------------- validate ----

TEST_CASE("cli: validate passes end to end with the bundled table") {
    TempDir dir;
    std::string report = dir.file("report.json");
    RunResult r = run("validate --zeros '" + zeros_path() + "' --report '" + report + "'");
    CHECK(r.code == 0);
    json rep = json::parse(read_file(report));
    CHECK(rep["failed"] == 0);
    CHECK(rep["passed"] == 14);
    for (const json& c : rep["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("cli: validate with a truncated table fails the named zero checks") {
    TempDir dir;
    std::string shorts = truncated_table(dir.path, 100);
    std::string report = dir.file("report.json");
    RunResult r = run("validate --b 1e7 --zeros '" + shorts + "' --report '" + report + "'");
    CHECK(r.code == 1);
    json rep = json::parse(read_file(report));
    CHECK(rep["failed"].get<int>() > 0);
    bool rvm_failed = false, sieve_passed = false;
    for (const json& c : rep["checks"]) {
        if (c["name"] == "zeros.rvm_agreement" && c["pass"] == false) rvm_failed = true;
        if (c["name"] == "sieve.lambda_oracle" && c["pass"] == true) sieve_passed = true;
    }
    CHECK(rvm_failed);
    CHECK(sieve_passed);  // unrelated checks still ran
}

// ---------------------------------------------------------- config file ----

TEST_CASE("cli: config file fills values and flags override it") {
    TempDir dir;
    std::string cfg = dir.file("cfg.json");
    write_file(cfg, "{\"b\": 1e4, \"samples\": 40, \"seed\": 7}\n");
    std::string out = dir.file("series.csv");

    RunResult r1 = run("series --config '" + cfg + "' --out '" + out + "'");
    CHECK(r1.code == 0);
    CHECK(lines_of(read_file(out)).size() == 41);

    RunResult r2 = run("series --config '" + cfg + "' --samples 10 --out '" + out + "'");
    CHECK(r2.code == 0);
    CHECK(lines_of(read_file(out)).size() == 11);

    json manifest = json::parse(read_file(dir.file("manifest.json")));
    CHECK(manifest["config"]["seed"] == 7);
}

TEST_CASE("cli: config file rejects unknown keys and bad JSON") {
    TempDir dir;
    std::string bad_key = dir.file("bad_key.json");
    write_file(bad_key, "{\"b\": 1e4, \"bogus\": 1}\n");
    RunResult r1 = run("series --config '" + bad_key + "'");
    CHECK(r1.code == 2);
    CHECK(r1.output.find("bogus") != std::string::npos);

    std::string bad_json = dir.file("bad.json");
    write_file(bad_json, "{not json\n");
    CHECK(run("series --config '" + bad_json + "'").code == 2);

    CHECK(run("series --config /no/such/config.json").code == 3);
}

TEST_CASE("cli: invalid parameter combinations exit 2") {
    CHECK(run("series --b 100 --samples 5").code == 2);           // b below minimum
    CHECK(run("series --b 1e5 --rho 2.0 --samples 5").code == 2); // rho too small
    CHECK(run("series --b 1e5 --vartheta 1.5 --samples 5").code == 2);
}

// ---------------------------------------------------------- fetch-zeros ----

TEST_CASE("cli: offline fetch with a cold cache exits 3") {
    TempDir dir;
    RunResult r = run("fetch-zeros --offline --cache '" + dir.path +
                      "' --url http://127.0.0.1:1/zeros --count 10");
    CHECK(r.code == 3);
}
