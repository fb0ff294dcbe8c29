#include "ellmot/weierstrass.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "ellmot/detail/numerics.hpp"

namespace ellmot {

namespace {

void check_not_pole(cplx z, const LatticeBasis& basis, const char* what) {
    if (basis.distance(z) < tol::pole_reject) {
        throw pole_error(what);
    }
}

// sigma restricted to the centered cell of the reduced basis.
cplx sigma_centered(const LatticeBasis& b, const cplx& z0) {
    const cplx w = b.reduced_omega1();
    const cplx v = pi * z0 / w;
    const auto th = detail::theta1(v, b.nome());
    return w * std::exp(b.reduced_eta1() * z0 * z0 / (2.0 * w)) * th.t / (pi * b.theta1_prime0());
}

cplx sigma_impl(const LatticeBasis& b, const cplx& z) {
    const auto red = b.reduce_centered_reduced(z);
    const cplx s0 = sigma_centered(b, red.z0);
    if (red.m == 0 && red.n == 0) {
        return s0;
    }
    const double md = static_cast<double>(red.m), nd = static_cast<double>(red.n);
    const cplx lam = md * b.reduced_omega1() + nd * b.reduced_omega2();
    const cplx eta_lam = md * b.reduced_eta1() + nd * b.reduced_eta2();
    const long long parity = red.m + red.n + red.m * red.n;
    const double sign = (((parity % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
    return sign * s0 * std::exp(eta_lam * (red.z0 + lam / 2.0));
}

cplx zeta_impl(const LatticeBasis& b, const cplx& z) {
    const auto red = b.reduce_centered_reduced(z);
    const cplx w = b.reduced_omega1();
    const cplx v = pi * red.z0 / w;
    const auto th = detail::theta1(v, b.nome());
    const cplx base = b.reduced_eta1() * red.z0 / w + (pi / w) * th.tp / th.t;
    return base + static_cast<double>(red.m) * b.reduced_eta1() +
           static_cast<double>(red.n) * b.reduced_eta2();
}

cplx wp_impl(const LatticeBasis& b, const cplx& z) {
    const auto red = b.reduce_centered_reduced(z);
    const cplx w = b.reduced_omega1();
    const cplx v = pi * red.z0 / w;
    const auto th = detail::theta1(v, b.nome());
    const cplx ratio_p = th.tp / th.t;
    return -b.reduced_eta1() / w - (pi / w) * (pi / w) * (th.tpp / th.t - ratio_p * ratio_p);
}

cplx wp_prime_impl(const LatticeBasis& b, const cplx& z) {
    const cplx s = sigma_impl(b, z);
    return -sigma_impl(b, 2.0 * z) / (s * s * s * s);
}

} // namespace

double curve_equation_residual(const AffinePoint& p, const CurveData& curve) {
    if (p.at_infinity) {
        return 0.0;
    }
    const cplx lhs = p.y * p.y;
    const cplx rhs = 4.0 * p.x * p.x * p.x - curve.g2 * p.x - curve.g3;
    const double scale = std::max({1.0, std::abs(lhs), 4.0 * std::pow(std::abs(p.x), 3),
                                   std::abs(curve.g2 * p.x), std::abs(curve.g3)});
    return std::abs(lhs - rhs) / scale;
}

std::pair<cplx, cplx> wp_and_prime(cplx z, const CurveData& curve) {
    const auto& b = curve.lattice;
    check_not_pole(z, b, "wp: argument lies on the period lattice");
    return {wp_impl(b, z), wp_prime_impl(b, z)};
}

cplx wp(cplx z, const CurveData& curve) {
    check_not_pole(z, curve.lattice, "wp: argument lies on the period lattice");
    return wp_impl(curve.lattice, z);
}

cplx zeta(cplx z, const CurveData& curve) {
    check_not_pole(z, curve.lattice, "zeta: argument lies on the period lattice");
    return zeta_impl(curve.lattice, z);
}

cplx sigma(cplx z, const CurveData& curve) {
    return sigma_impl(curve.lattice, z);
}

std::pair<cplx, cplx> quasi_periods(const CurveData& curve) {
    const auto& b = curve.lattice;
    return {2.0 * zeta_impl(b, b.omega1() / 2.0), 2.0 * zeta_impl(b, b.omega2() / 2.0)};
}

AffinePoint elliptic_exp(cplx z, const CurveData& curve) {
    const auto& b = curve.lattice;
    if (b.distance(z) < tol::pole_reject) {
        return AffinePoint::infinity();
    }
    return AffinePoint{wp_impl(b, z), wp_prime_impl(b, z), false};
}

namespace {

// Newton refinement of wp(z) = x with the branch already chosen.
cplx newton_polish(const LatticeBasis& b, cplx z, const cplx& x) {
    for (int i = 0; i < 8; ++i) {
        if (b.distance(z) < tol::pole_reject) {
            break;
        }
        const cplx f = wp_impl(b, z) - x;
        const cplx fp = wp_prime_impl(b, z);
        if (std::abs(fp) < 1e-13 * (1.0 + std::abs(x))) {
            break; // 2-torsion: wp' vanishes, the seed is already as good as it gets
        }
        const cplx step = f / fp;
        z -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) {
            break;
        }
    }
    return z;
}

bool log_candidate_ok(const LatticeBasis& b, const cplx& z, const AffinePoint& p,
                      double rel) {
    if (b.distance(z) < tol::pole_reject) {
        return false;
    }
    const cplx wx = wp_impl(b, z);
    const cplx wy = wp_prime_impl(b, z);
    const double sx = std::max(1.0, std::abs(p.x));
    const double sy = std::max(1.0, std::abs(p.y));
    return std::abs(wx - p.x) <= rel * sx && std::abs(wy - p.y) <= 100.0 * rel * sy;
}

} // namespace

cplx elliptic_log(const AffinePoint& p, const CurveData& curve) {
    const auto& b = curve.lattice;
    if (p.at_infinity) {
        return cplx(0.0);
    }
    if (curve_equation_residual(p, curve) > 1e-6) {
        throw input_error("elliptic_log: point does not satisfy the curve equation");
    }

    // 2-torsion: wp - x has a double zero at a half period, where Newton on
    // wp stalls; the half periods themselves are exact preimages.
    if (std::abs(p.y) <= 1e-7 * std::max(1.0, std::abs(p.x))) {
        for (const cplx half : {b.omega1() / 2.0, b.omega2() / 2.0,
                                (b.omega1() + b.omega2()) / 2.0}) {
            if (std::abs(wp_impl(b, half) - p.x) <= 1e-8 * std::max(1.0, std::abs(p.x))) {
                return b.reduce(half).z0;
            }
        }
    }

    const auto roots = detail::weierstrass_cubic_roots(curve.g2, curve.g3);
    cplx z = detail::carlson_rf(p.x - roots[0], p.x - roots[1], p.x - roots[2]);
    // R_F parameterizes the branch with wp' = -y; flip to match the given y.
    {
        const cplx cand = (b.distance(z) >= tol::pole_reject) ? wp_prime_impl(b, z) : cplx(0.0);
        if (std::abs(cand - p.y) > std::abs(cand + p.y)) {
            z = -z;
        }
    }
    z = newton_polish(b, z, p.x);
    if (std::abs(wp_prime_impl(b, z) + p.y) < std::abs(wp_prime_impl(b, z) - p.y)) {
        z = -z;
        z = newton_polish(b, z, p.x);
    }
    if (!log_candidate_ok(b, z, p, 1e-9)) {
        // Branch repair failed; locate the preimage by a direct search over the cell.
        constexpr int grid = 36;
        std::vector<std::pair<double, cplx>> seeds;
        for (int i = 0; i < grid; ++i) {
            for (int j = 0; j < grid; ++j) {
                const double a = (i + 0.5) / grid;
                const double bb = (j + 0.5) / grid;
                const cplx zz = a * b.omega1() + bb * b.omega2();
                if (b.distance(zz) < 1e-3) {
                    continue;
                }
                seeds.emplace_back(std::abs(wp_impl(b, zz) - p.x), zz);
            }
        }
        std::sort(seeds.begin(), seeds.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        bool found = false;
        for (std::size_t k = 0; k < std::min<std::size_t>(seeds.size(), 8); ++k) {
            cplx zz = newton_polish(b, seeds[k].second, p.x);
            if (std::abs(wp_prime_impl(b, zz) + p.y) < std::abs(wp_prime_impl(b, zz) - p.y)) {
                zz = -zz;
            }
            if (log_candidate_ok(b, zz, p, 1e-9)) {
                z = zz;
                found = true;
                break;
            }
        }
        if (!found) {
            throw numeric_error("elliptic_log did not converge");
        }
    }
    return b.reduce(z).z0;
}

} // namespace ellmot
