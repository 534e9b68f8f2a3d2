#include <cstdio>
#include <unistd.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("cqnc_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CQNC_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmallRun =
    "preset = cqnc-matched\n"
    "freq_min = 0.1\nfreq_max = 2\nfreq_count = 64\n"
    "power_min = 1e-12\npower_max = 1\npower_count = 48\n"
    "opa_gains = 0,0.1,0.3\n";

std::size_t count_data_rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::size_t rows = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            seen_header = true;
            continue;
        }
        ++rows;
    }
    return rows;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    TempDir tmp;
    const fs::path out = tmp.path / "never.csv";
    CHECK(run_cli("psd --config /missing.cfg --out " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));  // no output file on config error

    const fs::path bad = tmp.path / "bad.cfg";
    write_text(bad, "preset = fig2\nmode = sideways\n");
    CHECK(run_cli("psd --config " + bad.string()) == 2);
    CHECK(run_cli("psd --config " + bad.string() + " --format yaml") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("") == 2);
}

TEST_CASE("psd table rows and golden output") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "run.cfg";
    write_text(cfg, kSmallRun);
    const fs::path out = tmp.path / "psd.csv";
    REQUIRE(run_cli("psd --config " + cfg.string() + " --out " + out.string()) == 0);
    const std::string csv = read_text(out);
    CHECK(count_data_rows(csv) == 64);

    // Golden file pinned from the first verified run.
    const std::string golden = read_text(fs::path(CQNC_TEST_DATA_DIR) / "fig2_psd_n64.csv");
    REQUIRE(golden.size() > 0);
    CHECK(csv == golden);
}

TEST_CASE("every command is byte-identical across reruns") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "run.cfg";
    write_text(cfg, kSmallRun);
    const char* commands[] = {"psd", "power-sweep", "roots", "check"};
    for (const char* cmd : commands) {
        const fs::path a = tmp.path / (std::string(cmd) + "_a.out");
        const fs::path b = tmp.path / (std::string(cmd) + "_b.out");
        const int rc1 = run_cli(std::string(cmd) + " --config " + cfg.string() + " --out " +
                                a.string());
        const int rc2 = run_cli(std::string(cmd) + " --config " + cfg.string() + " --out " +
                                b.string());
        CHECK(rc1 == rc2);
        CHECK(rc1 <= 1);  // 0 or an honest check failure
        CHECK(read_text(a) == read_text(b));
        CHECK(read_text(a).size() > 0);
    }
}

TEST_CASE("json format mirrors the table") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "run.cfg";
    write_text(cfg, kSmallRun);
    const fs::path out = tmp.path / "roots.json";
    REQUIRE(run_cli("roots --config " + cfg.string() + " --format json --out " +
                    out.string()) == 0);
    const std::string json = read_text(out);
    CHECK(json.find("\"columns\"") != std::string::npos);
    CHECK(json.find("omega_re_rad_s") != std::string::npos);
}

TEST_CASE("check verdicts") {
    TempDir tmp;

    // Away from resonance every tolerance holds and the check passes.
    const fs::path offres = tmp.path / "offres.cfg";
    write_text(offres,
               "preset = cqnc-matched\n"
               "freq_min = 0.1\nfreq_max = 0.7\nfreq_count = 64\n");
    const fs::path report = tmp.path / "report.txt";
    CHECK(run_cli("check --config " + offres.string() + " --out " + report.string()) == 0);
    CHECK(read_text(report).find("RESULT: all checks passed") != std::string::npos);

    // The full band includes the near-resonance window where the residual
    // amplification breaks the oracle-equivalence tolerances: exit 1.
    const fs::path fullband = tmp.path / "fullband.cfg";
    write_text(fullband, kSmallRun);
    CHECK(run_cli("check --config " + fullband.string() + " --out " +
                  (tmp.path / "full.txt").string()) == 1);

    // No electromechanical coupling: matching flags fail, exit 1.
    const fs::path nogem = tmp.path / "nogem.cfg";
    write_text(nogem, "preset = fig2\nfreq_count = 16\n");
    CHECK(run_cli("check --config " + nogem.string() + " --out " +
                  (tmp.path / "nogem.txt").string()) == 1);
}
