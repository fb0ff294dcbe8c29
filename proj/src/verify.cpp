#include "ellmot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ellmot/quadrature.hpp"

namespace ellmot {

namespace {

double relc(const cplx& a, const cplx& b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

cplx sample_point(std::mt19937_64& rng, const LatticeBasis& b, const std::vector<cplx>& avoid,
                  double clear = 5e-2) {
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    for (int tries = 0; tries < 2000; ++tries) {
        const cplx z = unit(rng) * b.omega1() + unit(rng) * b.omega2();
        if (b.distance(z) < clear) {
            continue;
        }
        bool ok = true;
        for (const cplx& a : avoid) {
            if (b.distance(z - a) < clear || b.distance(z + a) < clear) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return z;
        }
    }
    throw numeric_error("verification point sampling failed");
}

struct Suite {
    std::vector<CheckResult> results;

    void add(std::string name, double resid, double tolerance) {
        results.push_back({std::move(name), resid, tolerance, resid <= tolerance});
    }
};

std::string jtag(std::size_t j) {
    return "[j=" + std::to_string(j + 1) + "]";
}

std::string jitag(std::size_t j, std::size_t i) {
    return "[j=" + std::to_string(j + 1) + ",i=" + std::to_string(i + 1) + "]";
}

// Straight path base -> base + p realizing the beta path, with clearance for
// the given form; deterministic retries on pole collisions.
IntegrationResult beta_integral(FormKind form, const CurveData& curve,
                                const ThirdKindContext* ctx, const cplx& p, cplx* base_out) {
    const auto& b = curve.lattice;
    for (int k = 0; k < 64; ++k) {
        const double fa = std::fmod(0.31 + 0.6180339887498949 * k, 1.0);
        const double fb = std::fmod(0.23 + 0.3819660112501051 * k, 1.0);
        const cplx base = fa * b.omega1() + fb * b.omega2();
        try {
            const auto path = PathSpec::segment(base, base + p);
            const IntegrationResult res =
                ctx ? integrate(form, path, *ctx) : integrate(form, path, curve);
            if (base_out) {
                *base_out = base;
            }
            return res;
        } catch (const path_error&) {
            continue;
        }
    }
    throw path_error("no pole-free realization of the beta path was found");
}

} // namespace

bool all_pass(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

std::vector<CheckResult> verify_motive(const OneMotiveSpec& m, const VerifyOptions& opt) {
    m.validate();
    Suite suite;
    std::mt19937_64 rng(opt.seed);
    const double tol_a = opt.tol_analytic;
    const double tol_r = 10.0 * opt.tol_analytic; // ODE / residue budget
    const double tol_q = opt.tol_quadrature;

    for (std::size_t j = 0; j < m.n; ++j) {
        const CurveData& curve = m.curves[j];
        const auto& b = curve.lattice;

        suite.add("legendre" + jtag(j),
                  std::abs(curve.eta1 * b.omega2() - curve.eta2 * b.omega1() - two_pi_i), tol_a);

        const auto [qp1, qp2] = quasi_periods(curve);
        suite.add("quasi_period_consistency" + jtag(j),
                  std::max(relc(qp1, curve.eta1), relc(qp2, curve.eta2)), tol_a);

        double r_wp = 0, r_zeta = 0, r_sigma = 0, r_ode = 0, r_pseudo = 0;
        for (int t = 0; t < opt.points; ++t) {
            const cplx z = sample_point(rng, b, {});
            for (int c = 1; c <= 2; ++c) {
                const cplx omega = (c == 1) ? b.omega1() : b.omega2();
                const cplx eta = (c == 1) ? curve.eta1 : curve.eta2;
                r_wp = std::max(r_wp, relc(wp(z + omega, curve), wp(z, curve)));
                r_zeta = std::max(r_zeta, relc(zeta(z + omega, curve), zeta(z, curve) + eta));
                r_sigma = std::max(
                    r_sigma, relc(sigma(z + omega, curve),
                                  -sigma(z, curve) * std::exp(eta * (z + omega / 2.0))));
            }
            const auto [p, pp] = wp_and_prime(z, curve);
            const cplx lhs = pp * pp;
            const cplx rhs = 4.0 * p * p * p - curve.g2 * p - curve.g3;
            r_ode = std::max(r_ode, std::abs(lhs - rhs) /
                                        std::max({1.0, std::abs(lhs),
                                                  4.0 * std::pow(std::abs(p), 3)}));
            const cplx y = sample_point(rng, b, {z});
            if (b.distance(z + y) >= 5e-2 && b.distance(z - y) >= 5e-2) {
                const auto [py, ppy] = wp_and_prime(y, curve);
                r_pseudo = std::max(
                    r_pseudo, relc(zeta(z + y, curve) - zeta(z, curve) - zeta(y, curve),
                                   0.5 * (pp - ppy) / (p - py)));
            }
        }
        suite.add("wp_periodicity" + jtag(j), r_wp, tol_a);
        suite.add("zeta_quasi_periodicity" + jtag(j), r_zeta, tol_a);
        suite.add("sigma_transformation" + jtag(j), r_sigma, tol_a);
        suite.add("weierstrass_ode" + jtag(j), r_ode, tol_r);
        suite.add("zeta_pseudo_addition" + jtag(j), r_pseudo, tol_a);
    }

    // Third-kind functional equations per extension factor.
    for (std::size_t j = 0; j < m.n; ++j) {
        const CurveData& curve = m.curves[j];
        const auto& b = curve.lattice;
        for (std::size_t i = 0; i < m.s; ++i) {
            const cplx q = m.q_logs[j][i];
            if (b.distance(q) < tol::pole_reject) {
                continue; // split factor: no f_q laws to check
            }
            const ThirdKindContext ctx(curve, q);
            double r_fq = 0, r_add = 0;
            for (int t = 0; t < opt.points; ++t) {
                const cplx z = sample_point(rng, b, {q});
                for (int c = 1; c <= 2; ++c) {
                    const cplx omega = (c == 1) ? b.omega1() : b.omega2();
                    r_fq = std::max(
                        r_fq, relc(f_q(z + omega, ctx),
                                   f_q(z, ctx) * std::exp(third_kind_quasi_period(c, ctx))));
                }
                const cplx z2 = sample_point(rng, b, {q, z});
                if (b.distance(z + z2) < 5e-2 || b.distance(q + z) < 5e-2 ||
                    b.distance(q + z2) < 5e-2 || b.distance(q + z + z2) < 5e-2) {
                    continue;
                }
                const cplx lhs = f_q(z + z2, ctx) / (f_q(z, ctx) * f_q(z2, ctx));
                const cplx rhs = sigma(q + z + z2, curve) * sigma(q, curve) * sigma(z, curve) *
                                 sigma(z2, curve) /
                                 (sigma(q + z, curve) * sigma(z + z2, curve) *
                                  sigma(q + z2, curve));
                r_add = std::max(r_add, relc(lhs, rhs));
            }
            suite.add("fq_quasi_quasi_periods" + jitag(j, i), r_fq, tol_a);
            suite.add("fq_sigma_addition" + jitag(j, i), r_add, tol_a);
        }
    }

    if (!opt.with_quadrature) {
        return suite.results;
    }

    for (std::size_t j = 0; j < m.n; ++j) {
        const CurveData& curve = m.curves[j];
        const auto& b = curve.lattice;
        double r_first = 0, r_second = 0;
        for (int c = 1; c <= 2; ++c) {
            const cplx omega = (c == 1) ? b.omega1() : b.omega2();
            const cplx eta = (c == 1) ? curve.eta1 : curve.eta2;
            r_first = std::max(r_first,
                               std::abs(cycle_integral(FormKind::first(), c, curve).value - omega));
            r_second = std::max(
                r_second, std::abs(cycle_integral(FormKind::second(), c, curve).value - eta));
        }
        suite.add("cycle_first_kind" + jtag(j), r_first, tol_q);
        suite.add("cycle_second_kind" + jtag(j), r_second, tol_q);

        for (std::size_t i = 0; i < m.s; ++i) {
            const cplx q = m.q_logs[j][i];
            if (b.distance(q) < tol::pole_reject) {
                continue;
            }
            const ThirdKindContext ctx(curve, q);
            double r_third = 0;
            for (int c = 1; c <= 2; ++c) {
                r_third = std::max(r_third,
                                   dist_mod_2pii(cycle_integral(FormKind::third(), c, ctx).value,
                                                 third_kind_quasi_period(c, ctx)));
            }
            suite.add("cycle_third_kind" + jitag(j, i), r_third, tol_q);

            const double res0 =
                std::abs(residue_loop(FormKind::third(), cplx(0.0), ctx).value + two_pi_i);
            const double resq =
                std::abs(residue_loop(FormKind::third(), -q, ctx).value - two_pi_i);
            suite.add("residues" + jitag(j, i), std::max(res0, resq), tol_r);
        }
    }

    // Period-matrix entries against quadrature along concrete beta paths.
    for (const auto& comp : decompose(m)) {
        std::ostringstream tag;
        tag << "[j=" << comp.j + 1 << ",i=" << comp.i + 1 << ",k=" << comp.k + 1 << "]";
        const CurveData& curve = comp.curve;

        cplx base(0.0);
        const cplx quad_first =
            beta_integral(FormKind::first(), curve, nullptr, comp.p, &base).value;
        suite.add("entry_p" + tag.str(), std::abs(quad_first - comp.p), tol_q);

        // zeta(p) = int(-wp dz) over base -> base+p, corrected by the
        // pseudo-addition term, which is a rational function of wp values.
        const cplx quad_second =
            beta_integral(FormKind::second(), curve, nullptr, comp.p, &base).value;
        const auto [wp_p, wpp_p] = wp_and_prime(comp.p, curve);
        const auto [wp_b, wpp_b] = wp_and_prime(base, curve);
        const cplx correction = 0.5 * (wpp_p - wpp_b) / (wp_p - wp_b);
        suite.add("entry_zeta_p" + tag.str(),
                  std::abs(quad_second - correction - zeta(comp.p, curve)), tol_q);

        if (!comp.split_toric) {
            const ThirdKindContext ctx(curve, comp.q);
            const cplx quad_third =
                beta_integral(FormKind::third(), curve, &ctx, comp.p, &base).value;
            // log f_q(p) = int(f'/f) - log of the sigma quotient of the
            // addition law at (p, base), mod 2 pi i.
            const cplx quotient =
                sigma(ctx.q + comp.p + base, curve) * sigma(ctx.q, curve) * sigma(comp.p, curve) *
                sigma(base, curve) /
                (sigma(ctx.q + comp.p, curve) * sigma(comp.p + base, curve) *
                 sigma(ctx.q + base, curve));
            suite.add("entry_logf" + tag.str(),
                      dist_mod_2pii(quad_third - std::log(quotient), log_f_q(comp.p, ctx)),
                      tol_q);
        }
    }

    return suite.results;
}

} // namespace ellmot
