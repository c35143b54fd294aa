// Physical parameters, decoupling rotations and derived mode frequencies
// for two coupled oscillators interacting with a single resonant bath mode.

#pragma once

#include <cstdint>

#include "hidaprop/errors.hpp"

namespace hidaprop::core {

// Masses, frequencies and couplings of the model
//
//   H = p1^2/2m + p2^2/2m + p_q^2/2m
//     + (1/2) m omega^2 (x1^2 + x2^2) - lambda_c x1 x2
//     + (1/2) m omega_q^2 q^2         - c_coupling q (x1 + x2).
//
// Sign convention: lambda_c > 0 stiffens the antisymmetric mode
// (x1 - x2)/sqrt(2) and c_coupling > 0 stiffens (q2 - q)/sqrt(2); this is
// the convention under which the decoupled frequencies below are exact.
struct SystemParams {
    double m;           // common oscillator mass
    double omega;       // system angular frequency
    double omega_q;     // bath angular frequency
    double lambda_c;    // system-system coupling, energy/length^2
    double c_coupling;  // system-bath coupling, energy/length^2
    double hbar;        // reduced Planck constant

    SystemParams(double m_, double omega_, double omega_q_, double lambda,
                 double c, double hbar_ = 1.0);
};

// Decoupled normal-mode frequencies:
//   omega1^2 = omega^2 + lambda_c/m            on q1 = (x1 - x2)/sqrt(2)
//   omega2^2 = omega^2 - lambda_c/m            on q2 = (x1 + x2)/sqrt(2)
//   phi2^2   = omega2^2 + sqrt(2) c_coupling/m on Q2 = (q2 - q)/sqrt(2)
//   phi^2    = omega2^2 - sqrt(2) c_coupling/m on Q  = (q2 + q)/sqrt(2)
struct ModeFrequencies {
    double omega1;
    double omega2;
    double phi2;
    double phi;
};

// Returns (2n+1) pi/4, the angle that removes the bilinear coupling on
// branch n (same formula for both rotation stages).
double rotation_angle(unsigned branch_n);

// The two rotation angles, each restricted to odd multiples of pi/4.
struct RotationAngles {
    double phi_angle;    // system-system stage
    double theta_angle;  // system-bath stage
    unsigned branch_n;   // branch of the first stage

    // Default branch n = 0 for both stages (phi = theta = pi/4).
    explicit RotationAngles(unsigned n = 0) : RotationAngles(n, n) {}
    RotationAngles(unsigned n_phi, unsigned n_theta)
        : phi_angle(rotation_angle(n_phi)),
          theta_angle(rotation_angle(n_theta)),
          branch_n(n_phi) {}
};

// Coefficients of the once-rotated Lagrangian:
//   alpha = (1/2) m omega^2 + lambda cos(phi) sin(phi)
//   beta  = (1/2) m omega^2 - lambda cos(phi) sin(phi)
//   gamma = lambda cos(2 phi)
//   mu    = cos(phi) - sin(phi)
//   nu    = cos(phi) + sin(phi)
struct CouplingCoefficients {
    double alpha;
    double beta;
    double gamma;
    double mu;
    double nu;
};

CouplingCoefficients coupling_coefficients(const SystemParams& p, double phi_angle);

// Coefficients of the twice-rotated Lagrangian:
//   a = (1/2) m omega2^2 + sqrt(2) C cos(theta) sin(theta)
//   b = (1/2) m omega2^2 - sqrt(2) C cos(theta) sin(theta)
//   d = sqrt(2) C cos(2 theta)
struct BathCoefficients {
    double a;
    double b;
    double d;
};

BathCoefficients bath_coefficients(const SystemParams& p, double omega2,
                                   double theta_angle);

// Computes all four decoupled frequencies.
//
// Throws ImaginaryFrequency if any radicand is <= 0, and ResonanceViolation
// if omega2 differs from omega_q by more than 1e-9 relative (the closed-form
// kernels assume the bath mode is resonant with the rotated system mode).
ModeFrequencies mode_frequencies(const SystemParams& p);

struct NormalModes {
    double q1;  // antisymmetric system mode
    double Q2;  // rotated (q2, q) difference mode
    double Q;   // rotated (q2, q) sum mode
};

struct LabCoords {
    double x1;
    double x2;
    double q;
};

// Applies the two decoupling rotations:
//   q1 = x1 cos(phi) - x2 sin(phi),  q2 = x1 sin(phi) + x2 cos(phi),
//   Q2 = q2 cos(theta) - q sin(theta),  Q = q2 sin(theta) + q cos(theta).
NormalModes to_normal_modes(double x1, double x2, double q,
                            const RotationAngles& angles = RotationAngles{});

// Inverse of to_normal_modes; composing the two is the identity.
LabCoords from_normal_modes(const NormalModes& modes,
                            const RotationAngles& angles = RotationAngles{});

// The quadratic potential whose normal modes are exactly
// (q1, omega1), (Q2, phi2), (Q, phi):
//   V = (1/2) m omega^2 (x1^2 + x2^2) - lambda_c x1 x2
//     + (1/2) m omega_q^2 q^2 - c_coupling q (x1 + x2).
double model_potential(const SystemParams& p, double x1, double x2, double q);

// System-only restriction (bath coordinate absent, requires c_coupling = 0).
double model_potential_system(const SystemParams& p, double x1, double x2);

} // namespace hidaprop::core
