#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pla/pla.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;
constexpr int kExitCapabilityError = 4;

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string out_path;  // empty = stdout
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config file")->required();
    cmd->add_option("--seed", opts.seed, "override master_seed");
    cmd->add_option("--trials", opts.trials, "override trials");
    cmd->add_option("--out", opts.out_path, "write CSV here instead of stdout");
}

pla::ExperimentConfig load(const CommonOpts& opts) {
    auto cfg = pla::load_config(opts.config_path);
    if (opts.seed) cfg.master_seed = *opts.seed;
    if (opts.trials) cfg.trials = *opts.trials;
    return cfg;
}

void emit(const pla::CsvTable& table, const CommonOpts& opts) {
    if (opts.out_path.empty()) {
        std::cout << table.to_string();
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw pla::config_error("cannot open output file " + opts.out_path);
    out << table.to_string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Physical-layer authentication simulator and bounds engine"};
    app.require_subcommand(1);

    CommonOpts auth_opts, attack_opts, bounds_opts, cal_opts;
    auto* auth = app.add_subcommand("auth-sweep",
                                    "calibrated detector performance over an Eb/N0 sweep");
    add_common(auth, auth_opts);
    auto* attack = app.add_subcommand("attack-sweep",
                                      "key-recovery or impersonation attack over a sweep");
    add_common(attack, attack_opts);
    auto* bounds = app.add_subcommand("bounds", "tabulate capacity and sphere-packing bound");
    add_common(bounds, bounds_opts);
    auto* calibrate = app.add_subcommand("calibrate", "threshold calibration per sweep point");
    add_common(calibrate, cal_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (auth->parsed()) {
            emit(pla::run_auth_sweep(load(auth_opts)), auth_opts);
        } else if (attack->parsed()) {
            auto cfg = load(attack_opts);
            if (cfg.attack == pla::AttackKind::None)
                throw pla::config_error("attack-sweep: set attack = ml or impersonation");
            emit(pla::run_attack_sweep(cfg), attack_opts);
        } else if (bounds->parsed()) {
            auto cfg = load(bounds_opts);
            emit(pla::tabulate_bounds(cfg.l_t, cfg.rc(), cfg.sweep_eb_n0_db), bounds_opts);
        } else if (calibrate->parsed()) {
            emit(pla::run_calibrate(load(cal_opts)), cal_opts);
        }
    } catch (const pla::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const pla::parameter_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const pla::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const pla::calibration_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const pla::capability_error& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return kExitCapabilityError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
