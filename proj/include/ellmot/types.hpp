#ifndef ELLMOT_TYPES_HPP
#define ELLMOT_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ellmot {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline const cplx two_pi_i{0.0, 2.0 * pi};

namespace tol {
// Default tolerances; the analytic/quadrature ones are overridable via the CLI.
inline constexpr double analytic = 1e-9;
inline constexpr double quadrature = 1e-6;
// Arguments closer than this to a pole are rejected rather than extrapolated.
inline constexpr double pole_reject = 1e-8;
// Minimum distance an integration path must keep from the integrand's poles.
inline constexpr double pole_clearance = 1e-3;
// Relative stopping threshold for series summation.
inline constexpr double series_eps = 1e-15;
} // namespace tol

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lattice basis is degenerate (Im(omega2/omega1) == 0) or omega1 == 0.
class orientation_error : public error {
public:
    using error::error;
};

// g2^3 - 27 g3^2 == 0.
class singular_curve_error : public error {
public:
    using error::error;
};

// Argument lies on (or too close to) the pole set of the function.
class pole_error : public error {
public:
    using error::error;
};

// wp(z) == wp(q): the third-kind pullback is singular there.
class singularity_error : public error {
public:
    using error::error;
};

// Integration path violates pole clearance or encloses an ambiguous pole set.
class path_error : public error {
public:
    using error::error;
};

// Malformed or inconsistent user input (schemas, relation shapes, off-curve points).
class input_error : public error {
public:
    using error::error;
};

// Iteration limits exceeded or error estimates out of tolerance.
class numeric_error : public error {
public:
    using error::error;
};

// input_error carrying the JSON field path that failed validation.
class schema_error : public input_error {
public:
    schema_error(std::string path, const std::string& what)
        : input_error(path + ": " + what), field_path(std::move(path)) {}
    std::string field_path;
};

// Distance between two values modulo 2*pi*i*Z, using the representative of
// minimal absolute value.
inline double dist_mod_2pii(const cplx& x, const cplx& y) {
    const cplx d = x - y;
    const double k = std::round(d.imag() / (2.0 * pi));
    return std::abs(d - cplx(0.0, 2.0 * pi * k));
}

} // namespace ellmot

#endif
