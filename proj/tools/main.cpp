#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "wfdtd/checks.hpp"
#include "wfdtd/config.hpp"
#include "wfdtd/errors.hpp"
#include "wfdtd/experiments.hpp"

namespace {

// Exit codes: 0 ok, 1 invariant/assertion failure, 2 config error,
// 3 numerical abort.
constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void print_results(const std::vector<wfdtd::CheckResult>& rs, bool& any_fail) {
    for (const wfdtd::CheckResult& r : rs) {
        std::printf("[%s] %-55s measured %.3e %s bound %.3e%s%s\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.measured, r.at_most ? "<=" : ">=", r.bound,
                    r.note.empty() ? "" : "  # ", r.note.c_str());
        if (!r.pass) any_fail = true;
    }
    std::fflush(stdout);
}

std::string default_out_root(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("WIREFDTD_OUT")) return env;
    return "runs";
}

int cmd_verify(const std::string& profile, double tamper) {
    const bool full = profile == "full";
    bool any_fail = false;
    print_results(wfdtd::check_bspline_identities(), any_fail);
    print_results(wfdtd::check_charge_conservation(full ? 50 : 12, 2026), any_fail);
    print_results(wfdtd::check_adjointness(full ? 200 : 50, 2027, tamper), any_fail);
    print_results(wfdtd::check_loop_emf(full ? 50 : 10, 2028), any_fail);
    print_results(wfdtd::check_quadrature_breakpoint_control(2029), any_fail);
    print_results(wfdtd::check_gauss_ledger(full ? 400 : 200, 2030), any_fail);
    print_results(wfdtd::check_energy_conservation(full ? 5000 : 1500, 2031), any_fail);
    print_results(wfdtd::check_operator_norms(), any_fail);
    if (full) print_results(wfdtd::check_pml_reflection(), any_fail);
    std::printf("%s\n", any_fail ? "VERIFY: FAIL" : "VERIFY: PASS");
    return any_fail ? kExitInvariant : kExitOk;
}

int cmd_run(const std::string& config_path, const std::string& out) {
    const wfdtd::SimConfig cfg = wfdtd::SimConfig::from_file(config_path);
    const std::string root =
        !out.empty() ? out : (!cfg.out_dir.empty() ? cfg.out_dir : default_out_root(""));
    const wfdtd::RunResult r = wfdtd::run_scenario(cfg, root);
    std::printf("run %s: %zu steps, peak |I_gap| %.6g A, outputs in %s\n", cfg.run_id().c_str(),
                r.series.t.size(), r.peak_current, r.run_dir.c_str());
    return kExitOk;
}

int cmd_sweep(const std::string& profile, const std::string& out, int jobs) {
    const std::string root = default_out_root(out);
    const wfdtd::SweepSummary s = wfdtd::run_sweep(profile, root, jobs);
    int failures = 0;
    for (const wfdtd::SweepCell& c : s.cells) {
        if (!c.ok) {
            ++failures;
            std::printf("sweep cell %s FAILED: %s\n", c.cfg.run_id().c_str(), c.error.c_str());
        }
    }
    std::printf("sweep (%s): %zu runs, %d failed; summary in %s/summary.csv\n", profile.c_str(),
                s.cells.size(), failures, root.c_str());
    return kExitOk;  // partial failures are recorded in the summary, not fatal
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FDTD thin-wire antenna solver with B-spline wire-grid coupling"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the machine-precision verification suite");
    std::string verify_profile = "fast";
    verify->add_option("--profile", verify_profile, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));
    double tamper = 1.0;
    verify->add_option("--tamper-interp", tamper,
                       "scale interpolation outputs (test hook; breaks adjointness)")
        ->group("");

    auto* run = app.add_subcommand("run", "execute one scenario from a config file");
    std::string config_path, run_out;
    run->add_option("--config", config_path, "config file path")->required();
    run->add_option("--out", run_out, "output root directory");

    auto* sweep = app.add_subcommand("sweep", "run the full scenario x orientation x kernel matrix");
    std::string sweep_profile = "paper", sweep_out;
    int jobs = 1;
    sweep->add_option("--profile", sweep_profile, "paper or smoke")
        ->check(CLI::IsMember({"paper", "smoke"}));
    sweep->add_option("--out", sweep_out, "output root directory");
    sweep->add_option("--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(verify_profile, tamper);
        if (run->parsed()) return cmd_run(config_path, run_out);
        if (sweep->parsed()) return cmd_sweep(sweep_profile, sweep_out, jobs);
    } catch (const wfdtd::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const wfdtd::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvariant;
    }
    return kExitOk;
}
