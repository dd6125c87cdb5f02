#include "holo/pulse.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

double pulse_area(const GaussianEnvelope& env, double dt) {
    if (env.total_length <= 0.0) return 0.0;
    long n = std::lround(env.total_length / dt);
    n = std::max<long>(n, 2);
    if (n % 2 != 0) ++n;
    const double h = env.total_length / static_cast<double>(n);
    // composite Simpson over n subintervals
    double sum = env.value(0.0) + env.value(env.total_length);
    for (long k = 1; k < n; ++k) {
        sum += env.value(static_cast<double>(k) * h) * (k % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

GaussianEnvelope calibrate_peak(double sigma, double total_length, double dt,
                                bool offset_subtracted) {
    if (sigma <= 0.0 || total_length <= 0.0) {
        throw DegenerateEnvelope("calibrate_peak: sigma and total_length must be positive");
    }
    GaussianEnvelope unit{sigma, total_length, 1.0, offset_subtracted};
    const double area = pulse_area(unit, dt);
    if (area <= 0.0) {
        throw DegenerateEnvelope("calibrate_peak: offset-subtracted envelope has no area");
    }
    unit.peak = kTwoPi / area;
    return unit;
}

DriveConfig drive_from_angles(double theta, double phi) {
    DriveConfig d;
    d.theta = theta;
    d.phi = phi;
    d.a = std::exp(Complex(0.0, phi)) * std::sin(0.5 * theta);
    d.b = std::cos(0.5 * theta);
    return d;
}

DriveConfig drive_for_holonomy(double gate_theta, double gate_phi) {
    double phi_drive = kPi - gate_phi;
    phi_drive = std::fmod(phi_drive, kTwoPi);
    if (phi_drive < 0.0) phi_drive += kTwoPi;
    return drive_from_angles(gate_theta, phi_drive);
}

void angles_from_drive(const DriveConfig& d, double& theta, double& phi) {
    theta = 2.0 * std::atan2(std::abs(d.a), std::abs(d.b));
    phi = (std::abs(d.b) > 0.0 && std::abs(d.a) > 0.0) ? std::arg(d.a / d.b) : 0.0;
}

PulseSpec gate_pulse(double gate_theta, double gate_phi, double sigma, double total_length,
                     double dt) {
    PulseSpec spec;
    spec.envelope = calibrate_peak(sigma, total_length, dt);
    spec.drive = drive_for_holonomy(gate_theta, gate_phi);
    spec.time_step = dt;
    return spec;
}

}  // namespace holo
