// holoq — command-line runner for the qutrit holonomic-gate experiments:
// theta sweeps, gate sequences, Bloch trajectories and chi reconstruction
// from measurement-record files.

#include "holo/chi_io.hpp"
#include "holo/experiment.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::string config_path;
    std::string output_dir;
    long seed = -1;
    bool exact = false;
    bool no_noise = false;
};

holo::ExperimentConfig make_config(const CommonOptions& opts) {
    holo::ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = holo::load_config(opts.config_path);
    if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
    if (opts.seed >= 0) {
        cfg.tomography.seed = static_cast<unsigned long>(opts.seed);
        if (!cfg.tomography.shots) cfg.tomography.shots = 10000;
    }
    if (opts.exact) cfg.tomography.shots.reset();
    if (opts.no_noise) cfg.noise.enabled = false;
    return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "key-value config file");
    cmd->add_option("--output", opts.output_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "shot-sampling seed (enables sampling)");
    cmd->add_flag("--exact", opts.exact, "disable shot sampling");
    cmd->add_flag("--no-noise", opts.no_noise, "disable the dissipative model");
}

std::filesystem::path ensure_output_dir(const holo::ExperimentConfig& cfg) {
    std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pulse-level simulator of non-adiabatic holonomic qutrit gates"};
    app.require_subcommand(1);

    CommonOptions sweep_opts, seq_opts, bloch_opts, tomo_opts;

    auto* sweep_cmd = app.add_subcommand("sweep", "theta sweep of the reduced process matrix");
    add_common(sweep_cmd, sweep_opts);

    auto* seq_cmd = app.add_subcommand("sequence", "composite gate sequence and non-commutativity");
    add_common(seq_cmd, seq_opts);

    auto* bloch_cmd = app.add_subcommand("bloch", "Bloch trajectory of the gate sequence");
    add_common(bloch_cmd, bloch_opts);
    std::string bloch_initial;
    bloch_cmd->add_option("--initial", bloch_initial, "initial logical state (0,1,+,-,+i,-i)");

    auto* tomo_cmd = app.add_subcommand("tomography", "reconstruct chi from a records JSON file");
    add_common(tomo_cmd, tomo_opts);
    std::string records_path;
    bool force_mle = false;
    tomo_cmd->add_option("--records", records_path, "measurement records JSON")->required();
    tomo_cmd->add_flag("--mle", force_mle, "use maximum likelihood even on exact records");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sweep_cmd->parsed()) {
            const auto cfg = make_config(sweep_opts);
            const auto dir = ensure_output_dir(cfg);
            const auto result = holo::run_sweep(cfg);
            holo::write_file((dir / "sweep.csv").string(), result.csv());
            std::cout << result.csv();
            std::cout << "wrote " << (dir / "sweep.csv").string() << "\n";
        } else if (seq_cmd->parsed()) {
            const auto cfg = make_config(seq_opts);
            const auto dir = ensure_output_dir(cfg);
            const auto result = holo::run_sequence(cfg);
            holo::write_file((dir / "sequence.csv").string(), result.csv());
            holo::write_file((dir / "sequence_chi_ideal.json").string(),
                             holo::chi_to_json(result.ideal_chi));
            if (result.noisy_chi) {
                holo::write_file((dir / "sequence_chi_noisy.json").string(),
                                 holo::chi_to_json(*result.noisy_chi));
            }
            holo::write_file((dir / "sequence_records.json").string(),
                             holo::record_to_json(result.record));
            std::cout << result.csv();
            std::cout << "wrote " << (dir / "sequence.csv").string() << "\n";
        } else if (bloch_cmd->parsed()) {
            auto cfg = make_config(bloch_opts);
            if (!bloch_initial.empty()) cfg.bloch.initial = bloch_initial;
            const auto dir = ensure_output_dir(cfg);
            const auto initial = holo::bloch_initial_state(cfg.bloch.initial);
            const auto result = holo::export_bloch(cfg, initial);
            holo::write_file((dir / "bloch.csv").string(), result.csv());
            std::cout << "endpoint: " << result.endpoint.transpose()
                      << "  analytic: " << result.analytic_endpoint.transpose() << "\n";
            std::cout << "wrote " << (dir / "bloch.csv").string() << "\n";
        } else if (tomo_cmd->parsed()) {
            const auto cfg = make_config(tomo_opts);
            const auto dir = ensure_output_dir(cfg);
            const auto record = holo::record_from_json(holo::read_file(records_path));
            holo::ProcessMatrix chi;
            if (record.sampled || force_mle) {
                const auto mle = holo::mle_reconstruct(record);
                if (!mle.converged) {
                    std::cerr << "warning: MLE stopped before convergence ("
                              << mle.iterations << " iterations)\n";
                }
                chi = mle.chi;
            } else {
                chi = holo::linear_inversion(record);
            }
            holo::write_file((dir / "chi.json").string(), holo::chi_to_json(chi));
            const auto reduced = holo::reduce_chi(chi);
            holo::write_file((dir / "chi_reduced.json").string(), holo::chi_to_json(reduced));
            std::cout << "tr(chi~) = " << reduced.trace()
                      << "  tp residual = " << chi.tp_residual() << "\n";
            std::cout << "wrote " << (dir / "chi.json").string() << "\n";
        }
    } catch (const holo::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const holo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
