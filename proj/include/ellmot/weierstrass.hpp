#ifndef ELLMOT_WEIERSTRASS_HPP
#define ELLMOT_WEIERSTRASS_HPP

#include <utility>

#include "ellmot/lattice.hpp"
#include "ellmot/types.hpp"

namespace ellmot {

/// A point on y^2 = 4x^3 - g2 x - g3, or the point at infinity.
struct AffinePoint {
    cplx x{};
    cplx y{};
    bool at_infinity = false;

    static AffinePoint infinity() { return AffinePoint{cplx{}, cplx{}, true}; }
};

// Residual of the curve equation, relative to the size of its terms.
double curve_equation_residual(const AffinePoint& p, const CurveData& curve);

// wp(z), wp'(z). Throws pole_error for z within 1e-8 of the lattice.
std::pair<cplx, cplx> wp_and_prime(cplx z, const CurveData& curve);

cplx wp(cplx z, const CurveData& curve);

cplx zeta(cplx z, const CurveData& curve);

// Entire; no pole handling needed.
cplx sigma(cplx z, const CurveData& curve);

// (2*zeta(omega1/2), 2*zeta(omega2/2)), an evaluation route independent of
// the theta-constant route stored on CurveData.
std::pair<cplx, cplx> quasi_periods(const CurveData& curve);

// z in Lambda maps to the point at infinity, otherwise (wp(z), wp'(z)).
AffinePoint elliptic_exp(cplx z, const CurveData& curve);

// Inverse of elliptic_exp in the fundamental parallelogram; the branch is
// fixed by matching wp'. Throws input_error when P is off the curve.
cplx elliptic_log(const AffinePoint& p, const CurveData& curve);

} // namespace ellmot

#endif
