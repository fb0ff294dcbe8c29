#ifndef ELLMOT_SERRE_HPP
#define ELLMOT_SERRE_HPP

#include <array>

#include "ellmot/weierstrass.hpp"

namespace ellmot {

/// The extension data for one G_m-extension of a curve: the curve together
/// with an elliptic logarithm q of the parameterizing point Q != 0.
struct ThirdKindContext {
    ThirdKindContext(CurveData curve_in, cplx q_in);

    CurveData curve;
    cplx q;
    cplx zeta_q;  // zeta(q), cached: it enters every f_q evaluation
};

// f_q(z) = sigma(z+q) / (sigma(z) sigma(q)) * exp(-zeta(q) z).
// Simple pole of residue 1 at every lattice point, zero at -q + Lambda.
cplx f_q(cplx z, const ThirdKindContext& ctx);

// Principal branch of log f_q(z); downstream comparisons work mod 2*pi*i.
cplx log_f_q(cplx z, const ThirdKindContext& ctx);

// Pullback of the third-kind differential along the elliptic exponential:
// (1/2) (wp'(z) - wp'(q)) / (wp(z) - wp(q)) = f_q'(z)/f_q(z).
cplx xi_pullback(cplx z, const ThirdKindContext& ctx);

// eta_i q - omega_i zeta(q), the logarithm of the quasi-quasi-period over
// cycle i in {1, 2}.
cplx third_kind_quasi_period(int i, const ThirdKindContext& ctx);

// The uniformization C^2 -> G(C) in P^4:
// sigma(z)^3 [wp, wp', 1, e^w f_q, e^w f_q (wp + (wp'(z)-wp'(q))/(wp(z)-wp(q)))].
std::array<cplx, 5> semiabelian_exp(cplx w, cplx z, const ThirdKindContext& ctx);

// Largest relative deviation between two projective tuples.
double projective_distance(const std::array<cplx, 5>& a, const std::array<cplx, 5>& b);

} // namespace ellmot

#endif
