#include "holo/experiment.hpp"

#include "holo/chi_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace holo {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& value, int line, const std::string& field) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + value + "'", line, field);
    }
}

long parse_long(const std::string& value, int line, const std::string& field) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + value + "'", line, field);
    }
}

bool parse_bool(const std::string& value, int line, const std::string& field) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("expected true/false, got '" + value + "'", line, field);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Noiseless stepping of a pure state through one pulse, appending Bloch
// samples at every integrator step.
void bloch_trace_pulse(Vector3c& psi, const PulseSpec& spec, double t_offset,
                       std::vector<BlochSample>& out) {
    const InteractionHamiltonian h{spec.drive, spec.envelope};
    const double length = spec.envelope.total_length;
    long n = std::lround(length / spec.time_step);
    n = std::max<long>(n, 1);
    const double step = length / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
        const double a = static_cast<double>(k) * step;
        const Matrix3c gen =
            (step / 6.0) * (h.at(a) + 4.0 * h.at(a + 0.5 * step) + h.at(a + step));
        psi = expm_hermitian(gen, 1.0) * psi;
        const Eigen::Vector3d v = bloch_vector(Matrix3c(psi * psi.adjoint()));
        out.push_back({t_offset + a + step, v(0), v(1), v(2)});
    }
}

ReducedProcessMatrix reconstruct_reduced(const MeasurementRecord& record) {
    if (record.sampled) return reduce_chi(mle_reconstruct(record).chi);
    return reduce_chi(linear_inversion(record));
}

}  // namespace

ExperimentConfig::ExperimentConfig() {
    for (int k = 0; k < 9; ++k) {
        sweep.theta.push_back(kPi / 2.0 * static_cast<double>(k) / 8.0);
    }
    gates = {GateSpec::hadamard(), GateSpec::not_gate()};
}

GateSpec gate_from_token(const std::string& token, int line) {
    std::string t = trim(token);
    std::string upper = t;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (upper == "Z") return GateSpec::z();
    if (upper == "H") return GateSpec::hadamard();
    if (upper == "NOT" || upper == "X") return GateSpec::not_gate();
    const auto parts = split(t, ':');
    if (parts.size() == 2) {
        GateSpec g;
        g.theta = parse_double(parts[0], line, "gates");
        g.phi = parse_double(parts[1], line, "gates");
        g.label = t;
        if (g.theta < 0.0 || g.theta > kPi) {
            throw ConfigError("theta must lie in [0, pi]", line, "gates");
        }
        return g;
    }
    throw ConfigError("unknown gate '" + t + "' (use Z, H, NOT or theta:phi)", line, "gates");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string section;
    std::string raw;
    int line = 0;
    bool theta_given = false;
    bool gates_given = false;
    std::optional<double> theta_min, theta_max;
    std::optional<long> theta_points;

    while (std::getline(in, raw)) {
        ++line;
        std::string text = raw;
        const auto comment = text.find_first_of("#;");
        if (comment != std::string::npos) text = text.substr(0, comment);
        text = trim(text);
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError("unterminated section header", line, "");
            section = trim(text.substr(1, text.size() - 2));
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line, section);
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        const std::string field = section.empty() ? key : section + "." + key;

        if (section == "pulse") {
            if (key == "sigma_ns") cfg.pulse.sigma_ns = parse_double(value, line, field);
            else if (key == "length_ns") cfg.pulse.length_ns = parse_double(value, line, field);
            else if (key == "dt_ns") cfg.pulse.dt_ns = parse_double(value, line, field);
            else throw ConfigError("unknown key", line, field);
        } else if (section == "noise") {
            if (key == "enabled") cfg.noise.enabled = parse_bool(value, line, field);
            else if (key == "t1_us") cfg.noise.t1_us = parse_double(value, line, field);
            else if (key == "t2_0e_us") cfg.noise.t2_0e_us = parse_double(value, line, field);
            else if (key == "t2_e1_us") cfg.noise.t2_e1_us = parse_double(value, line, field);
            else throw ConfigError("unknown key", line, field);
        } else if (section == "tomography") {
            if (key == "mode") {
                if (value == "exact") cfg.tomography.shots.reset();
                else if (value == "sampled") {
                    if (!cfg.tomography.shots) cfg.tomography.shots = 10000;
                } else throw ConfigError("mode must be exact or sampled", line, field);
            } else if (key == "shots") {
                const long s = parse_long(value, line, field);
                if (s <= 0) throw ConfigError("shots must be positive", line, field);
                cfg.tomography.shots = s;
            } else if (key == "seed") {
                cfg.tomography.seed = static_cast<unsigned long>(parse_long(value, line, field));
            } else throw ConfigError("unknown key", line, field);
        } else if (section == "sweep") {
            if (key == "theta_list") {
                cfg.sweep.theta.clear();
                for (const auto& tok : split(value, ',')) {
                    if (tok.empty()) continue;
                    cfg.sweep.theta.push_back(parse_double(tok, line, field));
                }
                theta_given = true;
            } else if (key == "theta_points") theta_points = parse_long(value, line, field);
            else if (key == "theta_min") theta_min = parse_double(value, line, field);
            else if (key == "theta_max") theta_max = parse_double(value, line, field);
            else if (key == "phi") cfg.sweep.phi = parse_double(value, line, field);
            else throw ConfigError("unknown key", line, field);
        } else if (section == "gates") {
            if (key == "gate") {
                if (!gates_given) {
                    cfg.gates.clear();
                    gates_given = true;
                }
                cfg.gates.push_back(gate_from_token(value, line));
            } else if (key == "gates") {
                cfg.gates.clear();
                gates_given = true;
                for (const auto& tok : split(value, ',')) {
                    if (!tok.empty()) cfg.gates.push_back(gate_from_token(tok, line));
                }
            } else throw ConfigError("unknown key", line, field);
        } else if (section == "bloch") {
            if (key == "initial") cfg.bloch.initial = value;
            else throw ConfigError("unknown key", line, field);
        } else if (section == "output") {
            if (key == "dir") cfg.output_dir = value;
            else throw ConfigError("unknown key", line, field);
        } else {
            throw ConfigError("unknown section '" + section + "'", line, field);
        }
    }

    if (!theta_given && theta_points) {
        if (*theta_points < 2) throw ConfigError("theta_points must be >= 2", 0, "sweep");
        const double lo = theta_min.value_or(0.0);
        const double hi = theta_max.value_or(kPi / 2.0);
        cfg.sweep.theta.clear();
        for (long k = 0; k < *theta_points; ++k) {
            cfg.sweep.theta.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                               static_cast<double>(*theta_points - 1));
        }
    }

    // validation
    if (cfg.pulse.sigma_ns <= 0 || cfg.pulse.length_ns <= 0 || cfg.pulse.dt_ns <= 0) {
        throw ConfigError("pulse times must be positive", 0, "pulse");
    }
    if (cfg.noise.t1_us <= 0 || cfg.noise.t2_0e_us <= 0 || cfg.noise.t2_e1_us <= 0) {
        throw ConfigError("noise times must be positive", 0, "noise");
    }
    for (double th : cfg.sweep.theta) {
        if (th < 0.0 || th > kPi) throw ConfigError("theta must lie in [0, pi]", 0, "sweep.theta");
    }
    if (cfg.gates.empty()) throw ConfigError("gates list is empty", 0, "gates");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, "");
    return parse_config(in);
}

SweepResult run_sweep(const ExperimentConfig& config) {
    SweepResult result;
    const double phi = config.sweep.phi;
    const auto shot_spec = config.shot_spec();

    PulsedSequenceContext noisy_ctx;
    if (config.noise.enabled) {
        noisy_ctx = PulsedSequenceContext::make(config.noise_model(), config.pulse.sigma_ns,
                                                config.pulse.length_ns, config.pulse.dt_ns);
    }

    for (double theta : config.sweep.theta) {
        SweepRow row{};
        row.theta = theta;
        row.phi = phi;

        const GateSpec g{theta, phi, "sweep"};
        const PulseSpec spec = gate_pulse(theta, phi, config.pulse.sigma_ns,
                                          config.pulse.length_ns, config.pulse.dt_ns);
        const ReducedProcessMatrix chi_th = reduce_chi(chi_of_unitary(embed_logical(analytic_unitary(g))));

        const Matrix3c u = propagator(spec);
        const ProcessMatrix chi_ideal_full = process_tomography(
            [&u](const Matrix3c& rho) { return Matrix3c(u * rho * u.adjoint()); },
            ShotSpec::exact());
        const ReducedProcessMatrix chi_ideal = reduce_chi(chi_ideal_full);
        row.ideal_ii = chi_ideal.chi_tilde(0, 0).real();
        row.ideal_xx = chi_ideal.chi_tilde(1, 1).real();
        row.ideal_yy = chi_ideal.chi_tilde(2, 2).real();
        row.ideal_zz = chi_ideal.chi_tilde(3, 3).real();
        row.ideal_trace = chi_ideal.trace();
        row.ideal_fidelity = process_fidelity(chi_ideal, chi_th);

        if (config.noise.enabled) {
            const MeasurementRecord record =
                measure_pulsed_sequence({spec}, noisy_ctx, shot_spec);
            const ReducedProcessMatrix chi_noisy = reconstruct_reduced(record);
            row.noisy_ii = chi_noisy.chi_tilde(0, 0).real();
            row.noisy_xx = chi_noisy.chi_tilde(1, 1).real();
            row.noisy_yy = chi_noisy.chi_tilde(2, 2).real();
            row.noisy_zz = chi_noisy.chi_tilde(3, 3).real();
            row.noisy_trace = chi_noisy.trace();
            row.noisy_fidelity = process_fidelity(chi_noisy, chi_th);
        } else {
            row.noisy_ii = row.noisy_xx = row.noisy_yy = row.noisy_zz =
                std::numeric_limits<double>::quiet_NaN();
            row.noisy_trace = row.noisy_fidelity = std::numeric_limits<double>::quiet_NaN();
        }
        result.rows.push_back(row);
    }
    return result;
}

std::string SweepResult::csv() const {
    std::string out =
        "theta,phi,ideal_II,ideal_XX,ideal_YY,ideal_ZZ,ideal_trace,ideal_fidelity,"
        "noisy_II,noisy_XX,noisy_YY,noisy_ZZ,noisy_trace,noisy_fidelity\n";
    for (const auto& r : rows) {
        out += format_double(r.theta) + "," + format_double(r.phi) + "," +
               format_double(r.ideal_ii) + "," + format_double(r.ideal_xx) + "," +
               format_double(r.ideal_yy) + "," + format_double(r.ideal_zz) + "," +
               format_double(r.ideal_trace) + "," + format_double(r.ideal_fidelity) + "," +
               format_double(r.noisy_ii) + "," + format_double(r.noisy_xx) + "," +
               format_double(r.noisy_yy) + "," + format_double(r.noisy_zz) + "," +
               format_double(r.noisy_trace) + "," + format_double(r.noisy_fidelity) + "\n";
    }
    return out;
}

SequenceResult run_sequence(const ExperimentConfig& config) {
    if (config.gates.empty()) throw ConfigError("gates list is empty", 0, "gates");
    SequenceResult result;

    // analytic composite, first listed gate applied first
    LogicalUnitary target = LogicalUnitary::Identity();
    std::string label;
    for (const auto& g : config.gates) {
        target = compose(target, analytic_unitary(g));
        label = g.label + (label.empty() ? "" : "*" + label);
    }
    result.label = label;
    result.analytic = target;
    const ReducedProcessMatrix chi_th = reduce_chi(chi_of_unitary(embed_logical(target)));

    std::vector<PulseSpec> pulses;
    for (const auto& g : config.gates) {
        pulses.push_back(gate_pulse(g.theta, g.phi, config.pulse.sigma_ns,
                                    config.pulse.length_ns, config.pulse.dt_ns));
    }

    Matrix3c u = Matrix3c::Identity();
    for (const auto& spec : pulses) u = propagator(spec) * u;
    const MeasurementRecord ideal_record = measure_channel(
        [&u](const Matrix3c& rho) { return Matrix3c(u * rho * u.adjoint()); },
        ShotSpec::exact());
    result.record = ideal_record;
    result.ideal_chi = reduce_chi(linear_inversion(ideal_record));
    result.ideal_fidelity = process_fidelity(result.ideal_chi, chi_th);

    if (config.gates.size() == 2) {
        const LogicalUnitary u1 = analytic_unitary(config.gates[0]);
        const LogicalUnitary u2 = analytic_unitary(config.gates[1]);
        result.overlap = commutation_overlap(compose(u1, u2), compose(u2, u1));

        // reversed ordering, for the non-commutativity comparison
        Matrix3c ur = Matrix3c::Identity();
        for (auto it = pulses.rbegin(); it != pulses.rend(); ++it) ur = propagator(*it) * ur;
        const ReducedProcessMatrix chi_rev_th = reduce_chi(chi_of_unitary(embed_logical(compose(u2, u1))));
        const ProcessMatrix chi_rev = process_tomography(
            [&ur](const Matrix3c& rho) { return Matrix3c(ur * rho * ur.adjoint()); },
            ShotSpec::exact());
        result.reversed_ideal_fidelity = process_fidelity(reduce_chi(chi_rev), chi_rev_th);
    }

    if (config.noise.enabled) {
        const auto ctx = PulsedSequenceContext::make(config.noise_model(), config.pulse.sigma_ns,
                                                     config.pulse.length_ns, config.pulse.dt_ns);
        const MeasurementRecord record = measure_pulsed_sequence(pulses, ctx, config.shot_spec());
        result.record = record;
        result.noisy_chi = reconstruct_reduced(record);
        result.noisy_fidelity = process_fidelity(*result.noisy_chi, chi_th);
    }
    return result;
}

std::string SequenceResult::csv() const {
    std::string out = "label,ideal_fidelity,noisy_fidelity,overlap,reversed_ideal_fidelity\n";
    out += label + "," + format_double(ideal_fidelity) + ",";
    out += (noisy_fidelity ? format_double(*noisy_fidelity) : "") + std::string(",");
    out += (overlap ? format_double(*overlap) : "") + std::string(",");
    out += (reversed_ideal_fidelity ? format_double(*reversed_ideal_fidelity) : "");
    out += "\n";
    return out;
}

QutritState bloch_initial_state(const std::string& token) {
    const Vector3c k0 = ket(L0), k1 = ket(L1);
    const double s = 1.0 / std::sqrt(2.0);
    if (token == "0") return QutritState(k0);
    if (token == "1") return QutritState(k1);
    if (token == "+") return QutritState(s * (k0 + k1));
    if (token == "-") return QutritState(s * (k0 - k1));
    if (token == "+i") return QutritState(s * (k0 + kI * k1));
    if (token == "-i") return QutritState(s * (k0 - kI * k1));
    throw ConfigError("unknown initial state '" + token + "'", 0, "bloch.initial");
}

BlochResult export_bloch(const ExperimentConfig& config, const QutritState& initial) {
    if (initial.population(LE) > 1e-12) {
        throw InitialStateLeaked("bloch export requires a logical initial state");
    }
    BlochResult result;
    Vector3c psi = initial.amplitudes();
    {
        const Eigen::Vector3d v = bloch_vector(Matrix3c(psi * psi.adjoint()));
        result.samples.push_back({0.0, v(0), v(1), v(2)});
    }
    double t_offset = 0.0;
    for (const auto& g : config.gates) {
        const PulseSpec spec = gate_pulse(g.theta, g.phi, config.pulse.sigma_ns,
                                          config.pulse.length_ns, config.pulse.dt_ns);
        bloch_trace_pulse(psi, spec, t_offset, result.samples);
        t_offset += spec.envelope.total_length;
    }
    result.endpoint = Eigen::Vector3d(result.samples.back().x, result.samples.back().y,
                                      result.samples.back().z);

    LogicalUnitary target = LogicalUnitary::Identity();
    for (const auto& g : config.gates) target = compose(target, analytic_unitary(g));
    Eigen::Vector2cd logical;
    logical << initial.amplitude(L0), initial.amplitude(L1);
    const Eigen::Vector2cd final_logical = target * logical;
    Matrix2c rho2 = final_logical * final_logical.adjoint();
    result.analytic_endpoint = bloch_vector(rho2);
    return result;
}

std::string BlochResult::csv() const {
    std::string out = "time_ns,x,y,z\n";
    for (const auto& s : samples) {
        out += format_double(s.time) + "," + format_double(s.x) + "," + format_double(s.y) +
               "," + format_double(s.z) + "\n";
    }
    return out;
}

}  // namespace holo
