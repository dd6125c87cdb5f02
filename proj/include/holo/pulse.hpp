// pulse.hpp — truncated-Gaussian envelopes, 2*pi area calibration and the
// (theta, phi) <-> (a, b) drive-amplitude maps

#pragma once

#include "holo/errors.hpp"
#include "holo/types.hpp"

#include <cmath>

namespace holo {

// Offset-subtracted truncated Gaussian
//   Omega(t) = peak * [exp(-(t - tau/2)^2 / 2 sigma^2) - exp(-tau^2 / 8 sigma^2)]
// on [0, tau], identically zero outside. The subtraction makes the envelope
// vanish exactly at both edges.
struct GaussianEnvelope {
    double sigma;         // ns
    double total_length;  // ns
    double peak;          // rad/ns
    bool offset_subtracted = true;

    double edge_value() const {
        return offset_subtracted
                   ? std::exp(-total_length * total_length / (8.0 * sigma * sigma))
                   : 0.0;
    }

    double value(double t) const {
        if (t < 0.0 || t > total_length) return 0.0;
        const double x = t - 0.5 * total_length;
        return peak * (std::exp(-x * x / (2.0 * sigma * sigma)) - edge_value());
    }
};

inline double envelope_value(const GaussianEnvelope& env, double t) { return env.value(t); }

// Integral of Omega over [0, total_length] by composite Simpson with
// subinterval count derived from dt (forced even).
double pulse_area(const GaussianEnvelope& env, double dt = kDefaultTimeStep);

// Envelope with peak solved so that pulse_area == 2*pi. Gate pulses use
// the offset-subtracted form; the plain truncated Gaussian (no
// subtraction) is kept for limits where the subtracted form degenerates,
// e.g. sigma >> total_length where it tends to a flat top of height
// 2*pi/total_length.
GaussianEnvelope calibrate_peak(double sigma, double total_length,
                                double dt = kDefaultTimeStep, bool offset_subtracted = true);

// Two-tone drive amplitudes with |a|^2 + |b|^2 = 1 and
// e^{i phi} tan(theta/2) = a / b (theta = pi is the b = 0 limit).
struct DriveConfig {
    Complex a;
    Complex b;
    double theta;
    double phi;
};

// Amplitudes from drive angles: a = e^{i phi} sin(theta/2), b = cos(theta/2).
// The gauge is fixed by b real nonnegative.
DriveConfig drive_from_angles(double theta, double phi);

// Drive amplitudes whose 2*pi-area holonomy equals the Eq.-style target
// matrix [[cos t, e^{i p} sin t], [e^{-i p} sin t, -cos t]] at the given
// gate angles. The cyclic evolution picks up a sign on the bright state,
// which shifts the drive phase: phi_drive = pi - phi_gate.
DriveConfig drive_for_holonomy(double gate_theta, double gate_phi);

// Recover (theta, phi) from amplitudes: theta = 2 atan2(|a|, |b|), phi = arg(a/b).
void angles_from_drive(const DriveConfig& d, double& theta, double& phi);

struct PulseSpec {
    GaussianEnvelope envelope;
    DriveConfig drive;
    double time_step = kDefaultTimeStep;
};

// Calibrated gate pulse for holonomy angles (theta, phi).
PulseSpec gate_pulse(double gate_theta, double gate_phi, double sigma = 10.0,
                     double total_length = 40.0, double dt = kDefaultTimeStep);

}  // namespace holo
