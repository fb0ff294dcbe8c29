#include "ellmot/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "ellmot/detail/numerics.hpp"

namespace ellmot {

namespace {

struct TauReduction {
    cplx tau;
    UnimodularMap map;
};

// Reduce tau to |Re| <= 1/2, |tau| >= 1 by T/S moves, tracking the map.
TauReduction reduce_tau(cplx tau) {
    UnimodularMap m;
    constexpr long long entry_limit = 1LL << 52; // stay exactly representable
    for (int iter = 0; iter < 512; ++iter) {
        const double shift = std::round(tau.real());
        if (shift != 0.0) {
            if (std::abs(shift) > 1e15) {
                throw numeric_error("tau reduction: basis too far from reduced");
            }
            const auto n = static_cast<long long>(shift);
            tau -= shift;
            m.a -= n * m.c;
            m.b -= n * m.d;
            if (std::llabs(m.a) > entry_limit || std::llabs(m.b) > entry_limit ||
                std::llabs(m.c) > entry_limit || std::llabs(m.d) > entry_limit) {
                throw numeric_error("tau reduction: unimodular map entries overflow");
            }
        }
        if (std::norm(tau) < 1.0 - 1e-14) {
            tau = -1.0 / tau;
            const UnimodularMap inv{-m.c, -m.d, m.a, m.b};
            m = inv;
        } else {
            return {tau, m};
        }
    }
    throw numeric_error("fundamental-domain reduction of tau did not terminate");
}

std::pair<double, double> solve_coordinates(const cplx& z, const cplx& w1, const cplx& w2) {
    const double det = w1.real() * w2.imag() - w2.real() * w1.imag();
    const double alpha = (z.real() * w2.imag() - z.imag() * w2.real()) / det;
    const double beta = (z.imag() * w1.real() - z.real() * w1.imag()) / det;
    return {alpha, beta};
}

bool invariants_close(const cplx& g2a, const cplx& g3a, const cplx& g2b, const cplx& g3b,
                      double rel) {
    // Homogeneous scale: g2 has weight 4, g3 weight 6.
    const double s = std::max(std::pow(std::abs(g2a), 0.25), std::pow(std::abs(g3a), 1.0 / 6.0));
    const double s4 = std::pow(s, 4), s6 = std::pow(s, 6);
    return std::abs(g2a - g2b) <= rel * std::max(s4, 1e-300) &&
           std::abs(g3a - g3b) <= rel * std::max(s6, 1e-300);
}

} // namespace

LatticeBasis::LatticeBasis(cplx omega1, cplx omega2) : omega1_(omega1), omega2_(omega2) {
    if (!(std::abs(omega1_) > 0.0) || !std::isfinite(std::abs(omega1_)) ||
        !std::isfinite(std::abs(omega2_))) {
        throw orientation_error("omega1 must be nonzero and both periods finite");
    }
    cplx tau = omega2_ / omega1_;
    if (tau.imag() < 0.0) {
        // Orientation normalization: same lattice, positively oriented basis.
        omega2_ = -omega2_;
        tau = -tau;
    }
    if (!(tau.imag() > 1e-14 * std::abs(tau))) {
        throw orientation_error("degenerate basis: omega2/omega1 is real");
    }

    const auto red = reduce_tau(tau);
    map_ = red.map;
    red_omega1_ = static_cast<double>(map_.c) * omega2_ + static_cast<double>(map_.d) * omega1_;
    red_omega2_ = static_cast<double>(map_.a) * omega2_ + static_cast<double>(map_.b) * omega1_;
    const cplx rtau = red_omega2_ / red_omega1_;
    nome_ = std::exp(cplx(0.0, pi) * rtau);
    th1p0_ = detail::theta1_prime0(nome_);

    // Quasi-periods of the reduced basis, then of the given one.
    red_eta1_ = -pi * pi * detail::theta1_ppp0(nome_) / (3.0 * red_omega1_ * th1p0_);
    red_eta2_ = (red_eta1_ * red_omega2_ - two_pi_i) / red_omega1_;
    eta1_ = static_cast<double>(map_.a) * red_eta1_ - static_cast<double>(map_.c) * red_eta2_;
    eta2_ = -static_cast<double>(map_.b) * red_eta1_ + static_cast<double>(map_.d) * red_eta2_;

    scale_ = std::max(std::abs(omega1_), std::abs(omega2_));
}

LatticeBasis::Reduction LatticeBasis::reduce(cplx z) const {
    const auto [alpha, beta] = solve_coordinates(z, omega1_, omega2_);
    const auto m = static_cast<long long>(std::floor(alpha));
    const auto n = static_cast<long long>(std::floor(beta));
    const cplx z0 = z - static_cast<double>(m) * omega1_ - static_cast<double>(n) * omega2_;
    return {z0, m, n};
}

LatticeBasis::Reduction LatticeBasis::reduce_centered_reduced(cplx z) const {
    const auto [alpha, beta] = solve_coordinates(z, red_omega1_, red_omega2_);
    const auto m = static_cast<long long>(std::floor(alpha + 0.5));
    const auto n = static_cast<long long>(std::floor(beta + 0.5));
    const cplx z0 = z - static_cast<double>(m) * red_omega1_ - static_cast<double>(n) * red_omega2_;
    return {z0, m, n};
}

std::pair<double, double> LatticeBasis::coordinates(cplx z) const {
    return solve_coordinates(z, omega1_, omega2_);
}

double LatticeBasis::distance(cplx z) const {
    const auto red = reduce_centered_reduced(z);
    double best = std::abs(red.z0);
    for (int dm = -1; dm <= 1; ++dm) {
        for (int dn = -1; dn <= 1; ++dn) {
            const cplx p = static_cast<double>(dm) * red_omega1_ + static_cast<double>(dn) * red_omega2_;
            best = std::min(best, std::abs(red.z0 - p));
        }
    }
    return best;
}

cplx cm_generator_for_discriminant(long long d) {
    const double dd = static_cast<double>(d);
    return cplx(dd / 2.0, std::sqrt(-dd) / 2.0);
}

std::pair<cplx, cplx> invariants_from_periods(const LatticeBasis& basis) {
    const cplx q_std = basis.nome() * basis.nome();
    const cplx w = basis.reduced_omega1();
    const cplx w4 = w * w * w * w;
    const cplx g2 = (4.0 * std::pow(pi, 4) / 3.0) * detail::eisenstein_e4(q_std) / w4;
    const cplx g3 = (8.0 * std::pow(pi, 6) / 27.0) * detail::eisenstein_e6(q_std) / (w4 * w * w);
    return {g2, g3};
}

CurveData curve_from_periods(cplx omega1, cplx omega2, std::optional<CmDescriptor> cm) {
    LatticeBasis basis(omega1, omega2);
    const auto [g2, g3] = invariants_from_periods(basis);
    const cplx eta1 = basis.eta1();
    const cplx eta2 = basis.eta2();
    return CurveData{g2, g3, std::move(basis), eta1, eta2, std::move(cm)};
}

namespace {

// Try to build a curve from a candidate basis and accept it only when the
// invariants round-trip.
std::optional<CurveData> try_basis(const cplx& w1, const cplx& w2, const cplx& g2,
                                   const cplx& g3, const std::optional<CmDescriptor>& cm) {
    if (!std::isfinite(std::abs(w1)) || !std::isfinite(std::abs(w2)) || std::abs(w1) == 0.0 ||
        std::abs(w2) == 0.0) {
        return std::nullopt;
    }
    try {
        CurveData curve = curve_from_periods(w1, w2, cm);
        if (invariants_close(g2, g3, curve.g2, curve.g3, 1e-10)) {
            return curve;
        }
    } catch (const error&) {
    }
    return std::nullopt;
}

} // namespace

CurveData curve_from_invariants(cplx g2, cplx g3, std::optional<CmDescriptor> cm) {
    if (!std::isfinite(std::abs(g2)) || !std::isfinite(std::abs(g3))) {
        throw input_error("non-finite invariants");
    }
    const cplx delta = g2 * g2 * g2 - 27.0 * g3 * g3;
    const double dscale = std::pow(std::abs(g2), 3) + 27.0 * std::pow(std::abs(g3), 2);
    if (std::abs(delta) <= 1e-10 * std::max(dscale, 1e-300)) {
        throw singular_curve_error("g2^3 - 27 g3^2 = 0: the cubic has a repeated root");
    }

    auto roots = detail::weierstrass_cubic_roots(g2, g3);
    std::sort(roots.begin(), roots.end(), [](const cplx& l, const cplx& r) {
        if (l.real() != r.real()) {
            return l.real() > r.real();
        }
        return l.imag() > r.imag();
    });
    // Real invariants with three real roots: clear the Cardano rounding noise
    // so that the classical ordering e1 > e2 > e3 yields the real rectangular
    // basis (omega1 real positive, omega2 purely imaginary).
    const double rscale =
        std::max({std::abs(roots[0]), std::abs(roots[1]), std::abs(roots[2]), 1e-300});
    if (std::abs(g2.imag()) <= 1e-14 * std::abs(g2) && std::abs(g3.imag()) <= 1e-14 * std::abs(g3)) {
        for (auto& e : roots) {
            if (std::abs(e.imag()) <= 1e-10 * rscale) {
                e = cplx(e.real(), 0.0);
            }
        }
    }
    const std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

    std::vector<cplx> taus;
    for (const auto& p : perms) {
        const cplx ei = roots[static_cast<std::size_t>(p[0])];
        const cplx ej = roots[static_cast<std::size_t>(p[1])];
        const cplx ek = roots[static_cast<std::size_t>(p[2])];
        const cplx a = std::sqrt(ei - ek);
        const cplx b = std::sqrt(ei - ej);
        const cplx c = std::sqrt(ej - ek);
        cplx w1, w2;
        try {
            w1 = pi / detail::agm_optimal(a, b);
            w2 = pi * cplx(0.0, 1.0) / detail::agm_optimal(a, c);
        } catch (const error&) {
            continue;
        }
        if (auto curve = try_basis(w1, w2, g2, g3, cm)) {
            return *std::move(curve);
        }
        const cplx t = w2 / w1;
        taus.push_back(t.imag() > 0.0 ? t : -t);
    }

    // Repair pass: the AGM assignment can land on an index-2 relative of the
    // true lattice. Rescale candidate taus (and their index-2 neighbours) so
    // that the invariants match, then round-trip check again.
    for (const cplx& t0 : taus) {
        const std::array<cplx, 5> variants{t0, 2.0 * t0, t0 / 2.0, (t0 + 1.0) / 2.0,
                                           t0 / (t0 + 1.0)};
        for (const cplx& tv : variants) {
            if (!(tv.imag() > 1e-12)) {
                continue;
            }
            std::pair<cplx, cplx> unit;
            try {
                unit = invariants_from_periods(LatticeBasis(cplx(1.0), tv));
            } catch (const error&) {
                continue;
            }
            const auto [g2u, g3u] = unit;
            // Solve g2 = g2u / lam^4, g3 = g3u / lam^6 for the scale lam.
            std::vector<cplx> lams;
            if (std::abs(g2) > 1e-12 * std::pow(std::abs(delta), 1.0 / 3.0)) {
                const cplx lam = std::pow(g2u / g2, 0.25);
                for (int k = 0; k < 4; ++k) {
                    lams.push_back(lam * std::exp(cplx(0.0, pi * k / 2.0)));
                }
            } else {
                const cplx lam = std::pow(g3u / g3, 1.0 / 6.0);
                for (int k = 0; k < 6; ++k) {
                    lams.push_back(lam * std::exp(cplx(0.0, pi * k / 3.0)));
                }
            }
            for (const cplx& lam : lams) {
                if (auto curve = try_basis(lam, lam * tv, g2, g3, cm)) {
                    return *std::move(curve);
                }
            }
        }
    }

    std::ostringstream oss;
    oss << "period recovery did not converge for g2=(" << g2.real() << "," << g2.imag()
        << "), g3=(" << g3.real() << "," << g3.imag() << ")";
    throw numeric_error(oss.str());
}

} // namespace ellmot
