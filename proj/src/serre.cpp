#include "ellmot/serre.hpp"

#include <algorithm>
#include <cmath>

namespace ellmot {

ThirdKindContext::ThirdKindContext(CurveData curve_in, cplx q_in)
    : curve(std::move(curve_in)), q(q_in) {
    if (curve.lattice.distance(q) < tol::pole_reject) {
        throw input_error("third-kind context: q lies on the period lattice (Q = 0)");
    }
    zeta_q = zeta(q, curve);
}

cplx f_q(cplx z, const ThirdKindContext& ctx) {
    if (ctx.curve.lattice.distance(z) < tol::pole_reject) {
        throw pole_error("f_q: argument lies on the period lattice");
    }
    return sigma(z + ctx.q, ctx.curve) / (sigma(z, ctx.curve) * sigma(ctx.q, ctx.curve)) *
           std::exp(-ctx.zeta_q * z);
}

cplx log_f_q(cplx z, const ThirdKindContext& ctx) {
    return std::log(f_q(z, ctx));
}

cplx xi_pullback(cplx z, const ThirdKindContext& ctx) {
    const auto [pz, pzp] = wp_and_prime(z, ctx.curve);
    const auto [pq, pqp] = wp_and_prime(ctx.q, ctx.curve);
    const double scale = std::max({1.0, std::abs(pz), std::abs(pq)});
    if (std::abs(pz - pq) <= 1e-10 * scale) {
        throw singularity_error("xi_pullback: wp(z) = wp(q), z = +-q mod Lambda");
    }
    return 0.5 * (pzp - pqp) / (pz - pq);
}

cplx third_kind_quasi_period(int i, const ThirdKindContext& ctx) {
    if (i != 1 && i != 2) {
        throw input_error("third_kind_quasi_period: cycle index must be 1 or 2");
    }
    const cplx eta_i = (i == 1) ? ctx.curve.eta1 : ctx.curve.eta2;
    const cplx omega_i = (i == 1) ? ctx.curve.lattice.omega1() : ctx.curve.lattice.omega2();
    return eta_i * ctx.q - omega_i * ctx.zeta_q;
}

std::array<cplx, 5> semiabelian_exp(cplx w, cplx z, const ThirdKindContext& ctx) {
    const auto& b = ctx.curve.lattice;
    const cplx ew = std::exp(w);
    if (b.distance(z) < tol::pole_reject) {
        // Limit of the cleared tuple as z -> lambda in Lambda: sigma^3*wp -> 0,
        // sigma^3*wp' -> -2, sigma^3 -> 0, sigma^3 e^w f_q -> 0, and the last
        // coordinate picks up the third-kind quasi-period of the shift:
        // exp_G(w, lambda) ~ exp_G(w + eta(lambda) q - lambda zeta(q), 0).
        const auto red = b.reduce_centered_reduced(z);
        const cplx lam = static_cast<double>(red.m) * b.reduced_omega1() +
                         static_cast<double>(red.n) * b.reduced_omega2();
        const cplx eta_lam = static_cast<double>(red.m) * b.reduced_eta1() +
                             static_cast<double>(red.n) * b.reduced_eta2();
        const cplx shift = eta_lam * ctx.q - lam * ctx.zeta_q;
        return {cplx(0.0), cplx(-2.0), cplx(0.0), cplx(0.0), ew * std::exp(shift)};
    }

    const cplx s = sigma(z, ctx.curve);
    const cplx s3 = s * s * s;
    const auto [pz, pzp] = wp_and_prime(z, ctx.curve);
    const auto [pq, pqp] = wp_and_prime(ctx.q, ctx.curve);
    const cplx sq = sigma(ctx.q, ctx.curve);
    const cplx szq = sigma(z + ctx.q, ctx.curve);
    const cplx efac = std::exp(-ctx.zeta_q * z);
    const cplx fq = szq / (s * sq) * efac;

    // Last coordinate, written through
    //   wp(z) - wp(q) = -sigma(z+q) sigma(z-q) / (sigma(z)^2 sigma(q)^2)
    // so that the apparent singularity at z = -q + Lambda cancels.
    cplx second_term;
    if (b.distance(z - ctx.q) < tol::pole_reject) {
        // z = q mod Lambda: (wp'(z) - wp'(q)) / sigma(z-q) -> wp''(q).
        const cplx wppq = 6.0 * pq * pq - ctx.curve.g2 / 2.0;
        second_term = -ew * efac * s3 * s * sq * wppq;
    } else {
        second_term = -ew * efac * s3 * s * sq * (pzp - pqp) / sigma(z - ctx.q, ctx.curve);
    }
    const cplx c5 = ew * efac * s * s * pz * szq / sq + second_term;

    return {s3 * pz, s3 * pzp, s3, ew * s3 * fq, c5};
}

double projective_distance(const std::array<cplx, 5>& a, const std::array<cplx, 5>& b) {
    std::size_t pivot = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double m = std::min(std::abs(a[i]), std::abs(b[i]));
        if (m > best) {
            best = m;
            pivot = i;
        }
    }
    if (best == 0.0) {
        return 0.0;
    }
    double dist = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const cplx ai = a[i] / a[pivot];
        const cplx bi = b[i] / b[pivot];
        dist = std::max(dist, std::abs(ai - bi));
        scale = std::max({scale, std::abs(ai), std::abs(bi)});
    }
    return dist / std::max(scale, 1.0);
}

} // namespace ellmot
