// Command line front end. Built purely against the C API in cqnc.h.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "cqnc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string config;
    std::string out = "-";
    std::string format = "csv";
    std::string mode;     // empty: take from config
    std::string thermal;  // empty: take from config
};

void warn(const std::string& message) {
    std::fputs(("cqnc: warning: " + message + "\n").c_str(), stderr);
}

int die(const std::string& message) {
    std::fputs(("cqnc: error: " + message + "\n").c_str(), stderr);
    return kExitUsage;
}

int load(const Options& opt, cqnc_params** params, cqnc_run_setup* setup) {
    if (cqnc_setup_load(opt.config.c_str(), params, setup) != CQNC_OK)
        return die(cqnc_last_error());
    if (!opt.mode.empty()) {
        if (opt.mode == "consistent") setup->mode = 0;
        else if (opt.mode == "literal") setup->mode = 1;
        else return die("--mode must be literal or consistent");
    }
    if (!opt.thermal.empty()) {
        if (opt.thermal == "on") setup->thermal = 1;
        else if (opt.thermal == "off") setup->thermal = 0;
        else return die("--thermal must be on or off");
    }
    if (opt.format != "csv" && opt.format != "json") return die("--format must be csv or json");
    return kExitOk;
}

int emit_table(cqnc_table* table, const Options& opt) {
    const int as_json = opt.format == "json" ? 1 : 0;
    for (size_t i = 0; i < cqnc_table_warning_count(table); ++i)
        warn(cqnc_table_warning(table, i));
    if (opt.out == "-") {
        std::fputs(cqnc_table_render(table, as_json), stdout);
    } else if (cqnc_table_write(table, opt.out.c_str(), as_json) != CQNC_OK) {
        const int rc = die(cqnc_last_error());
        cqnc_table_free(table);
        return rc;
    }
    cqnc_table_free(table);
    return kExitOk;
}

int run_psd(const Options& opt) {
    cqnc_params* params = nullptr;
    cqnc_run_setup setup;
    if (const int rc = load(opt, &params, &setup); rc != kExitOk) return rc;
    cqnc_table* table = nullptr;
    if (cqnc_psd_table(params, &setup, &table) != CQNC_OK) {
        cqnc_params_free(params);
        return die(cqnc_last_error());
    }
    cqnc_params_free(params);
    return emit_table(table, opt);
}

int run_power_sweep(const Options& opt) {
    cqnc_params* params = nullptr;
    cqnc_run_setup setup;
    if (const int rc = load(opt, &params, &setup); rc != kExitOk) return rc;
    cqnc_table* table = nullptr;
    if (cqnc_power_table(params, &setup, &table) != CQNC_OK) {
        cqnc_params_free(params);
        return die(cqnc_last_error());
    }
    cqnc_params_free(params);
    return emit_table(table, opt);
}

int run_roots(const Options& opt) {
    cqnc_params* params = nullptr;
    cqnc_run_setup setup;
    if (const int rc = load(opt, &params, &setup); rc != kExitOk) return rc;
    cqnc_table* table = nullptr;
    if (cqnc_roots_table(params, &table) != CQNC_OK) {
        cqnc_params_free(params);
        return die(cqnc_last_error());
    }
    cqnc_params_free(params);
    return emit_table(table, opt);
}

int run_check(const Options& opt) {
    cqnc_params* params = nullptr;
    cqnc_run_setup setup;
    if (const int rc = load(opt, &params, &setup); rc != kExitOk) return rc;
    cqnc_report* report = nullptr;
    if (cqnc_check_run(params, &setup, &report) != CQNC_OK) {
        cqnc_params_free(params);
        return die(cqnc_last_error());
    }
    cqnc_params_free(params);

    const char* rendered =
        opt.format == "json" ? cqnc_report_json(report) : cqnc_report_text(report);
    if (opt.out == "-") {
        std::fputs(rendered, stdout);
    } else {
        FILE* f = std::fopen(opt.out.c_str(), "wb");
        if (!f) {
            cqnc_report_free(report);
            return die("cannot open for writing: " + opt.out);
        }
        std::fputs(rendered, f);
        std::fclose(f);
    }
    const int rc = cqnc_report_passed(report) ? kExitOk : kExitCheckFailed;
    cqnc_report_free(report);
    return rc;
}

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--config", opt.config, "parameter/run config file")->required();
    cmd->add_option("--out", opt.out, "output path ('-' for stdout)");
    cmd->add_option("--format", opt.format, "csv or json");
    cmd->add_option("--mode", opt.mode, "literal or consistent (overrides config)");
    cmd->add_option("--thermal", opt.thermal, "on or off (overrides config)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noise spectral density toolkit for hybrid electro-optomechanical "
                 "force sensing"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* psd = app.add_subcommand("psd", "noise PSD vs frequency (table)");
    CLI::App* power = app.add_subcommand("power-sweep", "noise PSD vs drive power at resonance");
    CLI::App* chk = app.add_subcommand("check", "run every consistency check");
    CLI::App* roots = app.add_subcommand("roots", "coupling-constraint roots");
    for (CLI::App* cmd : {psd, power, chk, roots}) add_common(cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return kExitOk;
        }
        app.exit(e);
        return kExitUsage;
    }

    if (psd->parsed()) return run_psd(opt);
    if (power->parsed()) return run_power_sweep(opt);
    if (chk->parsed()) return run_check(opt);
    if (roots->parsed()) return run_roots(opt);
    return kExitUsage;
}
