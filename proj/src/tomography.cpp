#include "holo/tomography.hpp"

#include "holo/holonomy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace holo {

namespace {

constexpr double kRoot2Inv = 0.70710678118654752440;

// Canonical Hermitian basis of 3x3 matrices for real least-squares work.
const std::array<Matrix3c, 9>& hermitian_basis() {
    static const std::array<Matrix3c, 9> basis = [] {
        std::array<Matrix3c, 9> b;
        int k = 0;
        for (int i = 0; i < 3; ++i) {
            Matrix3c m = Matrix3c::Zero();
            m(i, i) = 1.0;
            b[static_cast<std::size_t>(k++)] = m;
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                Matrix3c s = Matrix3c::Zero();
                s(i, j) = kRoot2Inv;
                s(j, i) = kRoot2Inv;
                b[static_cast<std::size_t>(k++)] = s;
                Matrix3c a = Matrix3c::Zero();
                a(i, j) = Complex(0.0, -kRoot2Inv);
                a(j, i) = Complex(0.0, kRoot2Inv);
                b[static_cast<std::size_t>(k++)] = a;
            }
        }
        return b;
    }();
    return basis;
}

Matrix9c kron3(const Matrix3c& a, const Matrix3c& b) {
    Matrix9c out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    return out;
}

Matrix3c partial_trace_out(const Matrix9c& g) {
    Matrix3c out = Matrix3c::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int r = 0; r < 3; ++r) out(i, j) += g(3 * i + r, 3 * j + r);
    return out;
}

// Columns vectorize the basis operators: V[(i*3)+r, m] = P_m(r, i),
// so that the Choi matrix of E(rho) = sum chi_mn P_m rho P_n^dag is
// J = V chi V^dag.
const Matrix9c& basis_vectorization() {
    static const Matrix9c v = [] {
        Matrix9c out;
        const auto& ops = OperatorBasis9::standard().operators();
        for (int m = 0; m < 9; ++m)
            for (int i = 0; i < 3; ++i)
                for (int r = 0; r < 3; ++r)
                    out(3 * i + r, m) = ops[static_cast<std::size_t>(m)](r, i);
        return out;
    }();
    return v;
}

struct ChiSolver {
    Eigen::Matrix<Complex, 81, 81> design;
    Eigen::FullPivLU<Eigen::Matrix<Complex, 81, 81>> lu;

    static const ChiSolver& instance() {
        static const ChiSolver solver;
        return solver;
    }

  private:
    ChiSolver() {
        const auto& ops = OperatorBasis9::standard().operators();
        const auto& inputs = InputStateSet::standard();
        for (int j = 0; j < 9; ++j) {
            const Matrix3c rho = inputs.projector(j);
            for (int m = 0; m < 9; ++m) {
                for (int n = 0; n < 9; ++n) {
                    const Matrix3c term = ops[static_cast<std::size_t>(m)] * rho *
                                          ops[static_cast<std::size_t>(n)].adjoint();
                    for (int r = 0; r < 3; ++r)
                        for (int s = 0; s < 3; ++s)
                            design(9 * j + 3 * r + s, 9 * m + n) = term(r, s);
                }
            }
        }
        lu.compute(design);
        if (!lu.isInvertible()) {
            throw ReconstructionSingular("chi design matrix is singular: inputs incomplete");
        }
    }
};

struct StateSolver {
    Eigen::Matrix<double, 27, 9> design;
    Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 27, 9>> qr;
    std::array<Matrix3c, 27> povm;  // effective operators per (setting, outcome)

    static const StateSolver& instance() {
        static const StateSolver solver;
        return solver;
    }

  private:
    StateSolver() {
        const auto& dsg = TomographyDesign::standard();
        const auto& hb = hermitian_basis();
        for (int s = 0; s < 9; ++s) {
            const Matrix3c& r = dsg.setting_unitary(s);
            for (int o = 0; o < 3; ++o) {
                const Matrix3c m = r.adjoint() * ketbra(static_cast<Level>(o),
                                                        static_cast<Level>(o)) * r;
                povm[static_cast<std::size_t>(3 * s + o)] = m;
                for (int k = 0; k < 9; ++k) {
                    design(3 * s + o, k) = hs_inner(m, hb[static_cast<std::size_t>(k)]).real();
                }
            }
        }
        qr.compute(design);
        if (qr.rank() < 9) {
            throw ReconstructionSingular("state tomography settings are not informationally complete");
        }
    }
};

void sample_multinomial(const Eigen::Vector3d& p, long shots, std::mt19937_64& rng,
                        Eigen::Vector3d& counts) {
    double remaining_p = 1.0;
    long remaining_n = shots;
    for (int o = 0; o < 2; ++o) {
        const double q = std::clamp(remaining_p > 0.0 ? p(o) / remaining_p : 0.0, 0.0, 1.0);
        std::binomial_distribution<long> dist(remaining_n, q);
        const long c = dist(rng);
        counts(o) = static_cast<double>(c);
        remaining_n -= c;
        remaining_p -= p(o);
    }
    counts(2) = static_cast<double>(remaining_n);
}

}  // namespace

// --- pulses and input states ----------------------------------------------

Matrix3c pulse_unitary(const PreparationPulse& p) {
    const Complex amp = std::exp(Complex(0.0, p.phase));
    Matrix3c gen = Matrix3c::Zero();
    if (p.transition == 0) {
        gen(LE, L0) = amp;
        gen(L0, LE) = std::conj(amp);
    } else {
        gen(LE, L1) = amp;
        gen(L1, LE) = std::conj(amp);
    }
    return expm_hermitian((0.5 * p.area) * gen, 1.0);
}

Matrix3c recipe_unitary(const PulseRecipe& recipe) {
    Matrix3c u = Matrix3c::Identity();
    for (const auto& p : recipe) u = pulse_unitary(p) * u;
    return u;
}

InputStateSet::InputStateSet() {
    const Vector3c k0 = ket(L0), ke = ket(LE), k1 = ket(L1);
    states_ = {k0,
               ke,
               k1,
               kRoot2Inv * (k0 + ke),
               kRoot2Inv * (k0 + kI * ke),
               kRoot2Inv * (k0 + k1),
               kRoot2Inv * (k0 + kI * k1),
               kRoot2Inv * (ke + k1),
               kRoot2Inv * (ke + kI * k1)};

    // Recipes derived once by find_recipe() and frozen here; a test
    // re-runs the enumeration and checks this table.
    const double pi = kPi;
    recipes_ = {PulseRecipe{},
                PulseRecipe{{0, pi, 0.0}},
                PulseRecipe{{0, pi, 0.0}, {1, pi, 0.0}},
                PulseRecipe{{0, pi / 2, pi / 2}},
                PulseRecipe{{0, pi / 2, pi}},
                PulseRecipe{{0, pi / 2, pi}, {1, pi, 0.0}},
                PulseRecipe{{0, pi / 2, pi}, {1, pi, 1.5 * pi}},
                PulseRecipe{{0, pi, 0.0}, {1, pi / 2, 1.5 * pi}},
                PulseRecipe{{0, pi, 0.0}, {1, pi / 2, pi}}};
}

const InputStateSet& InputStateSet::standard() {
    static const InputStateSet instance;
    return instance;
}

Matrix3c InputStateSet::projector(int index) const {
    const auto& s = states_[static_cast<std::size_t>(index)];
    return s * s.adjoint();
}

std::optional<PulseRecipe> InputStateSet::find_recipe(const Vector3c& target, double tol) {
    std::vector<PreparationPulse> grid;
    for (int tr : {0, 1})
        for (double area : {kPi, kPi / 2})
            for (double phase : {0.0, kPi / 2, kPi, 1.5 * kPi})
                grid.push_back({tr, area, phase});

    auto matches = [&](const PulseRecipe& recipe) {
        const Vector3c psi = recipe_unitary(recipe) * ket(L0);
        return std::abs(std::abs(psi.dot(target)) - 1.0) < tol;
    };

    if (matches({})) return PulseRecipe{};
    for (const auto& p : grid) {
        if (matches({p})) return PulseRecipe{p};
    }
    for (const auto& p1 : grid) {
        for (const auto& p2 : grid) {
            if (matches({p1, p2})) return PulseRecipe{p1, p2};
        }
    }
    return std::nullopt;
}

TomographyDesign::TomographyDesign() {
    const auto& inputs = InputStateSet::standard();
    for (int s = 0; s < 9; ++s) {
        const auto& prep = inputs.recipes()[static_cast<std::size_t>(s)];
        settings_[static_cast<std::size_t>(s)] = recipe_unitary(prep).adjoint();
        PulseRecipe inverse;
        for (auto it = prep.rbegin(); it != prep.rend(); ++it) {
            inverse.push_back({it->transition, it->area, it->phase + kPi});
        }
        recipes_[static_cast<std::size_t>(s)] = inverse;
    }

    // Informational completeness of the input set: the Gram matrix of the
    // nine state projectors must be nonsingular.
    Eigen::Matrix<double, 9, 9> gram;
    for (int j = 0; j < 9; ++j)
        for (int k = 0; k < 9; ++k)
            gram(j, k) = hs_inner(inputs.projector(j), inputs.projector(k)).real();
    if (std::abs(gram.fullPivLu().determinant()) < 1e-12) {
        throw ReconstructionSingular("input states do not span the Hermitian operators");
    }
}

const TomographyDesign& TomographyDesign::standard() {
    static const TomographyDesign instance;
    return instance;
}

Eigen::Vector3d TomographyDesign::outcome_probabilities(const Matrix3c& rho, int s) const {
    const Matrix3c rotated = setting_unitary(s) * rho * setting_unitary(s).adjoint();
    Eigen::Vector3d p;
    for (int o = 0; o < 3; ++o) p(o) = std::max(0.0, rotated(o, o).real());
    const double total = p.sum();
    if (total > 0.0) p /= total;
    return p;
}

Eigen::Vector3d MeasurementRecord::probabilities(int input, int setting) const {
    const Eigen::Vector3d& v =
        values[static_cast<std::size_t>(input)][static_cast<std::size_t>(setting)];
    if (!sampled) return v;
    const double total = v.sum();
    if (total <= 0.0) {
        throw InfeasibleRecords("empty counts for input " + std::to_string(input) +
                                ", setting " + std::to_string(setting));
    }
    return v / total;
}

// --- preparation -----------------------------------------------------------

DensityMatrix prepare_input(int index) {
    if (index < 0 || index > 8) throw Error("prepare_input: index out of range");
    const auto& s = InputStateSet::standard().states()[static_cast<std::size_t>(index)];
    return DensityMatrix::pure(s);
}

PulsedSequenceContext PulsedSequenceContext::make(const NoiseModel& noise, double sigma,
                                                  double length, double dt) {
    PulsedSequenceContext ctx;
    ctx.envelope = calibrate_peak(sigma, length, dt);
    ctx.dt = dt;
    ctx.noise = CollapseSet::from_noise(noise);
    return ctx;
}

PulsedSequenceContext PulsedSequenceContext::noiseless(double sigma, double length, double dt) {
    PulsedSequenceContext ctx;
    ctx.envelope = calibrate_peak(sigma, length, dt);
    ctx.dt = dt;
    ctx.noise = CollapseSet::none();
    return ctx;
}

Matrix3c PulsedSequenceContext::apply_pulse(const Matrix3c& rho,
                                            const PreparationPulse& p) const {
    GaussianEnvelope env = envelope;
    env.peak *= p.area / kTwoPi;  // rotation angle = pulse area
    DriveConfig drive;
    const Complex amp = std::exp(Complex(0.0, p.phase));
    drive.a = (p.transition == 0) ? amp : Complex(0.0);
    drive.b = (p.transition == 0) ? Complex(0.0) : amp;
    drive.theta = (p.transition == 0) ? kPi : 0.0;
    drive.phi = p.phase;
    const InteractionHamiltonian h{drive, env};
    return lindblad_propagate(rho, [&h](double t) { return h.at(t); }, noise, 0.0,
                              env.total_length, dt);
}

Matrix3c PulsedSequenceContext::idle_slot(const Matrix3c& rho) const {
    return free_evolve(rho, noise, envelope.total_length);
}

Matrix3c PulsedSequenceContext::gap_evolve(const Matrix3c& rho) const {
    return free_evolve(rho, noise, gap, gap);
}

DensityMatrix prepare_input(int index, const PulsedSequenceContext& ctx) {
    if (index < 0 || index > 8) throw Error("prepare_input: index out of range");
    const auto& recipe = InputStateSet::standard().recipes()[static_cast<std::size_t>(index)];
    Matrix3c rho = ketbra(L0, L0);
    // two slots, idle slots leading so the pulses sit next to the gate
    for (std::size_t k = recipe.size(); k < 2; ++k) {
        rho = ctx.idle_slot(rho);
        rho = ctx.gap_evolve(rho);
    }
    for (std::size_t k = 0; k < recipe.size(); ++k) {
        rho = ctx.apply_pulse(rho, recipe[k]);
        rho = ctx.gap_evolve(rho);
    }
    return DensityMatrix(rho, 1e-8, 1e-6, -1e-7);
}

// --- state tomography ------------------------------------------------------

Matrix3c reconstruct_state(const std::array<Eigen::Vector3d, 9>& probabilities, bool project) {
    const auto& solver = StateSolver::instance();
    Eigen::Matrix<double, 27, 1> b;
    for (int s = 0; s < 9; ++s)
        for (int o = 0; o < 3; ++o) b(3 * s + o) = probabilities[static_cast<std::size_t>(s)](o);
    const Eigen::Matrix<double, 9, 1> x = solver.qr.solve(b);
    Matrix3c rho = Matrix3c::Zero();
    const auto& hb = hermitian_basis();
    for (int k = 0; k < 9; ++k) rho += x(k) * hb[static_cast<std::size_t>(k)];
    return project ? project_to_density(rho) : rho;
}

Matrix3c project_to_density(const Matrix3c& m) {
    const Matrix3c sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix3c> es(sym);
    Eigen::Vector3d lam = es.eigenvalues();

    // Euclidean projection of the spectrum onto the probability simplex.
    Eigen::Vector3d sorted = lam;
    std::sort(sorted.data(), sorted.data() + 3, std::greater<double>());
    double cumulative = 0.0;
    double shift = 0.0;
    int support = 0;
    for (int k = 0; k < 3; ++k) {
        cumulative += sorted(k);
        const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted(k) - candidate > 0.0) {
            support = k + 1;
            shift = candidate;
        }
    }
    (void)support;
    Eigen::Vector3d clipped;
    for (int k = 0; k < 3; ++k) clipped(k) = std::max(0.0, lam(k) - shift);

    return es.eigenvectors() * clipped.cast<Complex>().asDiagonal() *
           es.eigenvectors().adjoint();
}

DensityMatrix state_tomography(const DensityMatrix& rho_true, const ShotSpec& shots) {
    const auto& design = TomographyDesign::standard();
    std::array<Eigen::Vector3d, 9> values;
    if (!shots.shots) {
        for (int s = 0; s < 9; ++s) values[static_cast<std::size_t>(s)] =
            design.outcome_probabilities(rho_true.matrix(), s);
        return DensityMatrix(reconstruct_state(values, false), 1e-8, 1e-8, -1e-7);
    }
    std::mt19937_64 rng(shots.seed);
    for (int s = 0; s < 9; ++s) {
        const Eigen::Vector3d p = design.outcome_probabilities(rho_true.matrix(), s);
        Eigen::Vector3d counts;
        sample_multinomial(p, *shots.shots, rng, counts);
        values[static_cast<std::size_t>(s)] = counts / static_cast<double>(*shots.shots);
    }
    return DensityMatrix(reconstruct_state(values, true), 1e-10, 1e-10, -1e-10);
}

// --- records ---------------------------------------------------------------

MeasurementRecord measure_channel(const Channel& channel, const ShotSpec& shots) {
    const auto& design = TomographyDesign::standard();
    const auto& inputs = InputStateSet::standard();
    MeasurementRecord record;
    record.sampled = shots.shots.has_value();
    record.shots = shots.shots.value_or(0);
    record.seed = shots.seed;
    std::mt19937_64 rng(shots.seed);
    for (int j = 0; j < 9; ++j) {
        const Matrix3c out = channel(inputs.projector(j));
        for (int s = 0; s < 9; ++s) {
            const Eigen::Vector3d p = design.outcome_probabilities(out, s);
            auto& cell = record.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
            if (record.sampled) {
                sample_multinomial(p, record.shots, rng, cell);
            } else {
                cell = p;
            }
        }
    }
    return record;
}

MeasurementRecord measure_pulsed_sequence(const std::vector<PulseSpec>& gate_pulses,
                                          const PulsedSequenceContext& ctx,
                                          const ShotSpec& shots) {
    const auto& design = TomographyDesign::standard();
    MeasurementRecord record;
    record.sampled = shots.shots.has_value();
    record.shots = shots.shots.value_or(0);
    record.seed = shots.seed;
    std::mt19937_64 rng(shots.seed);

    for (int j = 0; j < 9; ++j) {
        // preparation slots and the gate slots, shared across settings
        Matrix3c rho = prepare_input(j, ctx).matrix();
        for (const auto& spec : gate_pulses) {
            const InteractionHamiltonian h{spec.drive, spec.envelope};
            rho = lindblad_propagate(rho, [&h](double t) { return h.at(t); }, ctx.noise, 0.0,
                                     spec.envelope.total_length, ctx.dt);
            rho = ctx.gap_evolve(rho);
        }
        for (int s = 0; s < 9; ++s) {
            Matrix3c out = rho;
            const auto& analysis = design.setting_recipe(s);
            std::size_t applied = 0;
            for (const auto& p : analysis) {
                out = ctx.apply_pulse(out, p);
                if (++applied < 2) out = ctx.gap_evolve(out);
            }
            for (std::size_t k = analysis.size(); k < 2; ++k) {
                out = ctx.idle_slot(out);
                if (++applied < 2) out = ctx.gap_evolve(out);
            }
            Eigen::Vector3d p;
            for (int o = 0; o < 3; ++o) p(o) = std::max(0.0, out(o, o).real());
            if (p.sum() > 0.0) p /= p.sum();
            auto& cell = record.values[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
            if (record.sampled) {
                sample_multinomial(p, record.shots, rng, cell);
            } else {
                cell = p;
            }
        }
    }
    return record;
}

// --- chi reconstruction ------------------------------------------------------

ProcessMatrix linear_inversion(const MeasurementRecord& record) {
    const auto& solver = ChiSolver::instance();
    Eigen::Matrix<Complex, 81, 1> b;
    for (int j = 0; j < 9; ++j) {
        std::array<Eigen::Vector3d, 9> probs;
        for (int s = 0; s < 9; ++s) probs[static_cast<std::size_t>(s)] = record.probabilities(j, s);
        const Matrix3c out = reconstruct_state(probs, false);
        for (int r = 0; r < 3; ++r)
            for (int s = 0; s < 3; ++s) b(9 * j + 3 * r + s) = out(r, s);
    }
    const Eigen::Matrix<Complex, 81, 1> x = solver.lu.solve(b);
    ProcessMatrix chi;
    for (int m = 0; m < 9; ++m)
        for (int n = 0; n < 9; ++n) chi.chi(m, n) = x(9 * m + n);
    chi.chi = 0.5 * (chi.chi + chi.chi.adjoint()).eval();
    return chi;
}

ProcessMatrix process_tomography(const Channel& channel, const ShotSpec& shots) {
    const MeasurementRecord record = measure_channel(channel, shots);
    if (!record.sampled) return linear_inversion(record);
    return mle_reconstruct(record).chi;
}

// --- maximum likelihood -------------------------------------------------------

namespace {

struct MleOps {
    std::array<Matrix9c, 243> effects;  // rho_j^T (x) M_{s,o}

    static const MleOps& instance() {
        static const MleOps ops;
        return ops;
    }

  private:
    MleOps() {
        const auto& inputs = InputStateSet::standard();
        const auto& state_solver = StateSolver::instance();
        for (int j = 0; j < 9; ++j) {
            const Matrix3c rho_t = inputs.projector(j).transpose();
            for (int s = 0; s < 9; ++s)
                for (int o = 0; o < 3; ++o)
                    effects[static_cast<std::size_t>(27 * j + 3 * s + o)] =
                        kron3(rho_t, state_solver.povm[static_cast<std::size_t>(3 * s + o)]);
        }
    }
};

double log_likelihood(const Eigen::Matrix<double, 243, 1>& f,
                      const Eigen::Matrix<double, 243, 1>& p) {
    double ll = 0.0;
    for (int v = 0; v < 243; ++v) {
        if (f(v) > 0.0) ll += f(v) * std::log(std::max(p(v), 1e-300));
    }
    return ll;
}

void probabilities_of(const Matrix9c& choi, const MleOps& ops,
                      Eigen::Matrix<double, 243, 1>& p) {
    for (int v = 0; v < 243; ++v) {
        p(v) = (choi.cwiseProduct(ops.effects[static_cast<std::size_t>(v)].transpose())).sum().real();
    }
}

Matrix9c tp_normalize(const Matrix9c& g) {
    const Matrix3c lambda = partial_trace_out(g);
    const Matrix3c n = inv_sqrt_hermitian(lambda);
    return kron3(n, Matrix3c::Identity()) * g * kron3(n.adjoint(), Matrix3c::Identity());
}

}  // namespace

MleResult mle_reconstruct(const MeasurementRecord& record, long max_iterations, double rel_tol,
                          std::vector<double>* ll_history) {
    const auto& ops = MleOps::instance();

    Eigen::Matrix<double, 243, 1> f;
    for (int j = 0; j < 9; ++j) {
        for (int s = 0; s < 9; ++s) {
            const Eigen::Vector3d p = record.probabilities(j, s);
            for (int o = 0; o < 3; ++o) {
                if (p(o) < 0.0) throw InfeasibleRecords("negative record value");
                f(27 * j + 3 * s + o) = p(o);
            }
        }
    }
    if (f.sum() <= 0.0) throw InfeasibleRecords("records carry no events");

    // seed: PSD-projected linear inversion, TP-normalized
    Matrix9c choi = choi_of_chi(linear_inversion(record));
    choi = project_psd(choi);
    choi += 1e-9 * Matrix9c::Identity();
    choi = tp_normalize(choi);

    Eigen::Matrix<double, 243, 1> p;
    probabilities_of(choi, ops, p);
    double ll = log_likelihood(f, p);
    if (ll_history) ll_history->push_back(ll);

    MleResult result;
    bool converged = false;
    long it = 0;
    for (; it < max_iterations && !converged; ++it) {
        Matrix9c k = Matrix9c::Zero();
        for (int v = 0; v < 243; ++v) {
            const double w = f(v) / std::max(p(v), 1e-300);
            if (w != 0.0) k += w * ops.effects[static_cast<std::size_t>(v)];
        }
        const double kscale = k.trace().real() / 9.0;

        double eps = 1.0;
        Matrix9c next;
        double ll_next = ll;
        bool improved = false;
        for (int halving = 0; halving < 60; ++halving) {
            const Matrix9c step = (1.0 - eps) * kscale * Matrix9c::Identity() + eps * k;
            next = tp_normalize(step * choi * step.adjoint());
            Eigen::Matrix<double, 243, 1> p_next;
            probabilities_of(next, ops, p_next);
            ll_next = log_likelihood(f, p_next);
            if (ll_next >= ll - 1e-13 * (std::abs(ll) + 1.0)) {
                p = p_next;
                improved = true;
                break;
            }
            eps *= 0.5;
        }
        if (!improved) break;  // stationary to machine precision

        const double delta = std::abs(ll_next - ll);
        choi = next;
        ll = ll_next;
        if (ll_history) ll_history->push_back(ll);
        if (delta <= rel_tol * (std::abs(ll) + 1.0)) converged = true;
    }

    result.chi = chi_of_choi(choi);
    result.converged = converged;
    result.iterations = it;
    result.log_likelihood = ll;
    return result;
}

// --- derived quantities -------------------------------------------------------

double ProcessMatrix::hermiticity() const { return hermiticity_error(chi); }

double ProcessMatrix::min_eigenvalue() const { return hermitian_eigenvalues(chi).minCoeff(); }

double ProcessMatrix::tp_residual() const {
    const auto& ops = OperatorBasis9::standard().operators();
    Matrix3c acc = Matrix3c::Zero();
    for (int m = 0; m < 9; ++m)
        for (int n = 0; n < 9; ++n)
            acc += chi(m, n) * ops[static_cast<std::size_t>(n)].adjoint() *
                   ops[static_cast<std::size_t>(m)];
    return (acc - Matrix3c::Identity()).cwiseAbs().maxCoeff();
}

ReducedProcessMatrix reduce_chi(const ProcessMatrix& chi) {
    ReducedProcessMatrix reduced;
    reduced.chi_tilde = chi.chi.block<4, 4>(0, 0);
    return reduced;
}

double process_fidelity(const Eigen::MatrixXcd& chi_exp, const Eigen::MatrixXcd& chi_th) {
    if (chi_exp.rows() != chi_th.rows() || chi_exp.cols() != chi_th.cols() ||
        chi_exp.rows() != chi_exp.cols()) {
        throw DimensionMismatch("process_fidelity: incompatible chi dimensions");
    }
    const Complex t = (chi_exp * chi_th).trace();
    if (std::abs(t.imag()) > 1e-10) {
        throw Error("process_fidelity: imaginary residual " + std::to_string(t.imag()));
    }
    return t.real();
}

double process_fidelity(const ProcessMatrix& chi_exp, const ProcessMatrix& chi_th) {
    return process_fidelity(Eigen::MatrixXcd(chi_exp.chi), Eigen::MatrixXcd(chi_th.chi));
}

double process_fidelity(const ReducedProcessMatrix& chi_exp, const ReducedProcessMatrix& chi_th) {
    return process_fidelity(Eigen::MatrixXcd(chi_exp.chi_tilde),
                            Eigen::MatrixXcd(chi_th.chi_tilde));
}

ProcessMatrix chi_of_unitary(const Matrix3c& u) {
    const Vector9c c = decompose(u);
    ProcessMatrix chi;
    chi.chi = c * c.adjoint();
    return chi;
}

Matrix3c apply_chi(const ProcessMatrix& chi, const Matrix3c& rho) {
    const auto& ops = OperatorBasis9::standard().operators();
    Matrix3c out = Matrix3c::Zero();
    for (int m = 0; m < 9; ++m) {
        if (chi.chi.row(m).cwiseAbs().maxCoeff() == 0.0) continue;
        const Matrix3c left = ops[static_cast<std::size_t>(m)] * rho;
        for (int n = 0; n < 9; ++n) {
            if (chi.chi(m, n) == Complex(0.0)) continue;
            out += chi.chi(m, n) * left * ops[static_cast<std::size_t>(n)].adjoint();
        }
    }
    return out;
}

Matrix9c choi_of_chi(const ProcessMatrix& chi) {
    const Matrix9c& v = basis_vectorization();
    return v * chi.chi * v.adjoint();
}

ProcessMatrix chi_of_choi(const Matrix9c& choi) {
    const Matrix9c& v = basis_vectorization();
    static const Eigen::FullPivLU<Matrix9c> lu(v);
    const Matrix9c tmp = lu.solve(choi);                       // V^-1 J
    ProcessMatrix chi;
    chi.chi = lu.solve(tmp.adjoint()).adjoint();               // (V^-1 (V^-1 J)^dag)^dag
    chi.chi = 0.5 * (chi.chi + chi.chi.adjoint()).eval();
    return chi;
}

}  // namespace holo
