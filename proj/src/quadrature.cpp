#include "ellmot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ellmot {

namespace {

double dist_point_segment(const cplx& p, const cplx& a, const cplx& b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) {
        return std::abs(p - a);
    }
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

// Translates of `base` by the lattice that come near the rectangle hull of
// the given anchor points, inflated by `margin`. Enumeration runs in the
// reduced basis, whose cells are well conditioned.
std::vector<cplx> lattice_translates_near(const LatticeBasis& basis, const cplx& base,
                                          const std::vector<cplx>& anchors, double margin) {
    const cplx w1 = basis.reduced_omega1();
    const cplx w2 = basis.reduced_omega2();
    const double det = w1.real() * w2.imag() - w2.real() * w1.imag();
    const auto coords = [&](const cplx& z) {
        return std::pair<double, double>{(z.real() * w2.imag() - z.imag() * w2.real()) / det,
                                         (z.imag() * w1.real() - z.real() * w1.imag()) / det};
    };
    double alo = 0, ahi = 0, blo = 0, bhi = 0;
    bool first = true;
    for (const cplx& z : anchors) {
        const auto [al, be] = coords(z - base);
        if (first) {
            alo = ahi = al;
            blo = bhi = be;
            first = false;
        } else {
            alo = std::min(alo, al);
            ahi = std::max(ahi, al);
            blo = std::min(blo, be);
            bhi = std::max(bhi, be);
        }
    }
    const double pad = 2.0 + margin / std::min(std::abs(w1), std::abs(w2));
    std::vector<cplx> out;
    const long long m0 = static_cast<long long>(std::floor(alo - pad));
    const long long m1 = static_cast<long long>(std::ceil(ahi + pad));
    const long long n0 = static_cast<long long>(std::floor(blo - pad));
    const long long n1 = static_cast<long long>(std::ceil(bhi + pad));
    if ((m1 - m0) * (n1 - n0) > 40000) {
        throw path_error("path spans too many lattice cells");
    }
    for (long long m = m0; m <= m1; ++m) {
        for (long long n = n0; n <= n1; ++n) {
            out.push_back(base + static_cast<double>(m) * w1 + static_cast<double>(n) * w2);
        }
    }
    return out;
}

// The pole set of the pulled-back form within reach of the anchors.
std::vector<cplx> poles_near(FormKind form, const LatticeBasis& basis, const cplx* q,
                             const std::vector<cplx>& anchors, double margin) {
    std::vector<cplx> poles;
    if (form.tag == FormKind::Tag::first) {
        return poles;
    }
    poles = lattice_translates_near(basis, cplx(0.0), anchors, margin);
    if ((form.tag == FormKind::Tag::third || form.tag == FormKind::Tag::semiabelian) && q != nullptr) {
        const auto extra = lattice_translates_near(basis, -*q, anchors, margin);
        poles.insert(poles.end(), extra.begin(), extra.end());
    }
    return poles;
}

void check_segment_clearance(FormKind form, const LatticeBasis& basis, const cplx* q,
                             const cplx& a, const cplx& b) {
    if (form.tag == FormKind::Tag::first) {
        return;
    }
    for (const cplx& p : poles_near(form, basis, q, {a, b}, tol::pole_clearance)) {
        if (dist_point_segment(p, a, b) < tol::pole_clearance) {
            throw path_error("integration segment passes too close to a pole");
        }
    }
}

template <typename F>
IntegrationResult gk(const F& f) {
    double err = 0.0;
    const cplx value =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, 1.0, 14, 1e-11, &err);
    if (!(err <= 1e-9 * std::max(1.0, std::abs(value))) || !std::isfinite(std::abs(value))) {
        throw numeric_error("quadrature error estimate exceeds 1e-9");
    }
    return {value, err};
}

// Integrand of the pullback in the z-plane. The third-kind logarithmic
// derivative is evaluated as zeta(z+q) - zeta(z) - zeta(q), whose poles are
// exactly Lambda and -q + Lambda; this keeps the oracle's evaluation route
// separate from the wp-quotient used by xi_pullback.
cplx form_value(FormKind form, const CurveData& curve, const ThirdKindContext* ctx, const cplx& z) {
    switch (form.tag) {
    case FormKind::Tag::first:
        return cplx(1.0);
    case FormKind::Tag::second:
        return -wp(z, curve);
    case FormKind::Tag::third:
    case FormKind::Tag::semiabelian:
        return zeta(z + ctx->q, curve) - zeta(z, curve) - ctx->zeta_q;
    }
    throw input_error("unknown form kind");
}

IntegrationResult cycle_integral_impl(FormKind form, int i, const CurveData& curve,
                                      const ThirdKindContext* ctx);

IntegrationResult integrate_impl(FormKind form, const PathSpec& path, const CurveData& curve,
                                 const ThirdKindContext* ctx) {
    if ((form.tag == FormKind::Tag::third || form.tag == FormKind::Tag::semiabelian) &&
        ctx == nullptr) {
        throw input_error("third-kind integration requires a ThirdKindContext");
    }
    const auto& basis = curve.lattice;
    const cplx* qptr = ctx ? &ctx->q : nullptr;

    cplx w_part(0.0);
    if (path.lifted_w && form.tag == FormKind::Tag::semiabelian) {
        w_part = path.lifted_w->second - path.lifted_w->first;
    }

    switch (path.kind) {
    case PathSpec::Kind::segment: {
        if (std::abs(path.b - path.a) == 0.0) {
            return {w_part, 0.0};
        }
        check_segment_clearance(form, basis, qptr, path.a, path.b);
        const cplx d = path.b - path.a;
        auto res = gk([&](double t) { return form_value(form, curve, ctx, path.a + t * d) * d; });
        res.value += w_part;
        return res;
    }
    case PathSpec::Kind::loop: {
        if (!(path.radius > 0.0)) {
            throw path_error("loop radius must be positive");
        }
        for (const cplx& p : poles_near(form, basis, qptr, {path.a}, path.radius + tol::pole_clearance)) {
            if (std::abs(std::abs(p - path.a) - path.radius) < tol::pole_clearance) {
                throw path_error("loop passes too close to a pole");
            }
        }
        auto res = gk([&](double t) {
            const cplx e = std::exp(cplx(0.0, 2.0 * pi * t));
            const cplx z = path.a + path.radius * e;
            return form_value(form, curve, ctx, z) * cplx(0.0, 2.0 * pi) * path.radius * e;
        });
        res.value += w_part;
        return res;
    }
    case PathSpec::Kind::cycle1:
    case PathSpec::Kind::cycle2:
        return cycle_integral_impl(form, path.kind == PathSpec::Kind::cycle1 ? 1 : 2, curve, ctx);
    }
    throw input_error("unknown path kind");
}

IntegrationResult cycle_integral_impl(FormKind form, int i, const CurveData& curve,
                                      const ThirdKindContext* ctx) {
    if (i != 1 && i != 2) {
        throw input_error("cycle index must be 1 or 2");
    }
    const auto& basis = curve.lattice;
    const cplx omega_i = (i == 1) ? basis.omega1() : basis.omega2();
    const cplx* qptr = ctx ? &ctx->q : nullptr;
    // Default base 0.37*omega1 + 0.29*omega2; golden-ratio offsets on collision.
    for (int k = 0; k < 64; ++k) {
        const double fa = std::fmod(0.37 + 0.6180339887498949 * k, 1.0);
        const double fb = std::fmod(0.29 + 0.3819660112501051 * k, 1.0);
        const cplx base = fa * basis.omega1() + fb * basis.omega2();
        try {
            check_segment_clearance(form, basis, qptr, base, base + omega_i);
        } catch (const path_error&) {
            continue;
        }
        const cplx d = omega_i;
        return gk([&](double t) {
            return form_value(form, curve, ctx, base + t * d) * d;
        });
    }
    throw path_error("no pole-free realization of the cycle was found");
}

IntegrationResult residue_loop_impl(FormKind form, const cplx& center, const CurveData& curve,
                                    const ThirdKindContext* ctx) {
    const auto& basis = curve.lattice;
    const cplx* qptr = ctx ? &ctx->q : nullptr;
    const double cell = std::min(std::abs(basis.reduced_omega1()), std::abs(basis.reduced_omega2()));
    const auto poles = poles_near(form, basis, qptr, {center}, cell);
    // Nearest pole distance, ignoring a pole sitting at the center itself.
    double nearest_other = cell;
    for (const cplx& p : poles) {
        const double d = std::abs(p - center);
        if (d > 1e-9) {
            nearest_other = std::min(nearest_other, d);
        }
    }
    const double radius = std::max(std::min(0.45 * nearest_other, 0.2 * cell), 2.5 * tol::pole_clearance);
    int enclosed = 0;
    for (const cplx& p : poles) {
        if (std::abs(p - center) < radius) {
            ++enclosed;
        }
    }
    if (enclosed > 1) {
        throw path_error("residue loop would enclose more than one pole");
    }
    return integrate_impl(form, PathSpec::loop(center, radius), curve, ctx);
}

} // namespace

IntegrationResult integrate(FormKind form, const PathSpec& path, const CurveData& curve) {
    return integrate_impl(form, path, curve, nullptr);
}

IntegrationResult integrate(FormKind form, const PathSpec& path, const ThirdKindContext& ctx) {
    return integrate_impl(form, path, ctx.curve, &ctx);
}

IntegrationResult cycle_integral(FormKind form, int i, const CurveData& curve) {
    return cycle_integral_impl(form, i, curve, nullptr);
}

IntegrationResult cycle_integral(FormKind form, int i, const ThirdKindContext& ctx) {
    return cycle_integral_impl(form, i, ctx.curve, &ctx);
}

IntegrationResult residue_loop(FormKind form, cplx center, const CurveData& curve) {
    return residue_loop_impl(form, center, curve, nullptr);
}

IntegrationResult residue_loop(FormKind form, cplx center, const ThirdKindContext& ctx) {
    return residue_loop_impl(form, center, ctx.curve, &ctx);
}

} // namespace ellmot
