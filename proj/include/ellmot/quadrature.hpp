#ifndef ELLMOT_QUADRATURE_HPP
#define ELLMOT_QUADRATURE_HPP

#include <optional>
#include <utility>

#include "ellmot/serre.hpp"

namespace ellmot {

/// A concrete path in the z-plane (optionally lifted by a linear w-component
/// for paths on the semi-abelian group carrying dw).
struct PathSpec {
    enum class Kind { cycle1, cycle2, segment, loop };

    Kind kind = Kind::segment;
    cplx a{};                  // segment start / loop center
    cplx b{};                  // segment end
    double radius = 0.0;       // loop radius
    std::optional<std::pair<cplx, cplx>> lifted_w;

    static PathSpec cycle(int i) {
        PathSpec p;
        p.kind = (i == 1) ? Kind::cycle1 : Kind::cycle2;
        if (i != 1 && i != 2) {
            throw input_error("cycle index must be 1 or 2");
        }
        return p;
    }
    static PathSpec segment(cplx za, cplx zb) {
        PathSpec p;
        p.kind = Kind::segment;
        p.a = za;
        p.b = zb;
        return p;
    }
    static PathSpec loop(cplx center, double radius) {
        PathSpec p;
        p.kind = Kind::loop;
        p.a = center;
        p.radius = radius;
        return p;
    }
    PathSpec with_w(cplx wa, cplx wb) const {
        PathSpec p = *this;
        p.lifted_w = std::make_pair(wa, wb);
        return p;
    }
};

/// Which pulled-back differential to integrate: dz, -wp(z) dz,
/// (f_q'/f_q) dz, or dw + (f_q'/f_q) dz.
struct FormKind {
    enum class Tag { first, second, third, semiabelian };
    Tag tag = Tag::first;

    static FormKind first() { return {Tag::first}; }
    static FormKind second() { return {Tag::second}; }
    static FormKind third() { return {Tag::third}; }
    static FormKind semiabelian() { return {Tag::semiabelian}; }
};

struct IntegrationResult {
    cplx value{};
    double error = 0.0;
};

// Adaptive Gauss-Kronrod along the path. Verifies pole clearance (>= 1e-3)
// before integrating; throws path_error on violation and numeric_error when
// the error estimate misses 1e-9.
IntegrationResult integrate(FormKind form, const PathSpec& path, const CurveData& curve);
IntegrationResult integrate(FormKind form, const PathSpec& path, const ThirdKindContext& ctx);

// Integral over cycle i in {1,2}, realized as a straight segment
// base -> base + omega_i with the base moved off the singular set.
IntegrationResult cycle_integral(FormKind form, int i, const CurveData& curve);
IntegrationResult cycle_integral(FormKind form, int i, const ThirdKindContext& ctx);

// Small-loop integral around `center`, radius chosen automatically so that at
// most the pole at `center` is enclosed. Throws path_error when more than one
// pole would be enclosed.
IntegrationResult residue_loop(FormKind form, cplx center, const CurveData& curve);
IntegrationResult residue_loop(FormKind form, cplx center, const ThirdKindContext& ctx);

} // namespace ellmot

#endif
