// Error taxonomy shared by all hidaprop modules.

#pragma once

#include <stdexcept>
#include <string>

namespace hidaprop {

// Base class for every failure the library reports deliberately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A normal-mode radicand came out non-positive: the decoupling does not
// produce three real oscillator frequencies for these parameters.
class ImaginaryFrequency : public Error {
public:
    using Error::Error;
};

// The resonance assumption omega2 == omega_q is violated beyond tolerance.
class ResonanceViolation : public Error {
public:
    using Error::Error;
};

// det(form) vanished in a Gaussian integral.
class SingularForm : public Error {
public:
    using Error::Error;
};

// A Gaussian integral fails its convergence condition.
class Divergent : public Error {
public:
    using Error::Error;
};

// (I - K dt) is singular: the discretized operator sits on a caustic.
class SingularOperator : public Error {
public:
    using Error::Error;
};

// An oscillatory integrand failed its decay check at the cutoff.
class NonConvergent : public Error {
public:
    using Error::Error;
};

// sin(omega t) is below the caustic threshold for some mode.
class Caustic : public Error {
public:
    using Error::Error;
};

// A grid state does not decay below tolerance at the grid boundary.
class GridTooNarrow : public Error {
public:
    using Error::Error;
};

// Split-operator norm drifted beyond tolerance.
class UnstableStep : public Error {
public:
    using Error::Error;
};

// Dense-exponentiation grid exceeds the supported size.
class TooLarge : public Error {
public:
    using Error::Error;
};

// A Liouville-space operation was requested with the bath coupling retained.
class CouplingNotTraced : public Error {
public:
    using Error::Error;
};

} // namespace hidaprop
