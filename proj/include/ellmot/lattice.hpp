#ifndef ELLMOT_LATTICE_HPP
#define ELLMOT_LATTICE_HPP

#include <optional>
#include <utility>

#include "ellmot/types.hpp"

namespace ellmot {

// Records the unimodular change of basis tau_red = (a*tau + b)/(c*tau + d).
struct UnimodularMap {
    long long a = 1, b = 0, c = 0, d = 1;
};

/// An oriented period lattice Z*omega1 + Z*omega2 with Im(omega2/omega1) > 0.
///
/// Construction normalizes the orientation (negating omega2 if needed),
/// reduces tau to the standard fundamental domain |Re| <= 1/2, |tau| >= 1, and
/// computes the quasi-periods of both the given and the reduced basis. All
/// series evaluation downstream happens in the reduced basis, where the nome
/// satisfies |q| <= exp(-pi*sqrt(3)/2).
class LatticeBasis {
public:
    LatticeBasis(cplx omega1, cplx omega2);

    cplx omega1() const { return omega1_; }
    cplx omega2() const { return omega2_; }
    cplx tau() const { return omega2_ / omega1_; }
    cplx eta1() const { return eta1_; }
    cplx eta2() const { return eta2_; }

    cplx reduced_omega1() const { return red_omega1_; }
    cplx reduced_omega2() const { return red_omega2_; }
    cplx reduced_tau() const { return red_omega2_ / red_omega1_; }
    cplx reduced_eta1() const { return red_eta1_; }
    cplx reduced_eta2() const { return red_eta2_; }
    const UnimodularMap& reduction() const { return map_; }

    // Nome exp(i*pi*tau_red) of the reduced basis.
    cplx nome() const { return nome_; }
    cplx theta1_prime0() const { return th1p0_; }

    struct Reduction {
        cplx z0;
        long long m = 0;
        long long n = 0;
    };

    // z = z0 + m*omega1 + n*omega2 with both lattice coordinates of z0 in [0,1).
    Reduction reduce(cplx z) const;
    // Same decomposition against the reduced basis, coordinates in [-1/2,1/2).
    Reduction reduce_centered_reduced(cplx z) const;

    // Real lattice coordinates of z in the given basis.
    std::pair<double, double> coordinates(cplx z) const;

    // Euclidean distance from z to the nearest lattice point.
    double distance(cplx z) const;

    double scale() const { return scale_; }

private:
    cplx omega1_, omega2_;
    cplx red_omega1_, red_omega2_;
    UnimodularMap map_;
    cplx nome_;
    cplx eta1_, eta2_;
    cplx red_eta1_, red_eta2_;
    cplx th1p0_;
    double scale_ = 0.0;
};

struct CmDescriptor {
    long long discriminant = 0; // d < 0, d = 0 or 1 mod 4
    cplx generator;             // complex number by which the CM generator acts
};

// Canonical generator (d + sqrt(d))/2 of the order of discriminant d.
cplx cm_generator_for_discriminant(long long d);

/// An elliptic curve y^2 = 4x^3 - g2 x - g3 together with its period data.
struct CurveData {
    cplx g2, g3;
    LatticeBasis lattice;
    cplx eta1, eta2;
    std::optional<CmDescriptor> cm;

    cplx discriminant() const { return g2 * g2 * g2 - 27.0 * g3 * g3; }
};

// 60*G4 and 140*G6 of the lattice, via Eisenstein q-series after reduction.
std::pair<cplx, cplx> invariants_from_periods(const LatticeBasis& basis);

CurveData curve_from_periods(cplx omega1, cplx omega2,
                             std::optional<CmDescriptor> cm = std::nullopt);

// Inverse direction: recover an oriented basis from the invariants.
// Throws singular_curve_error when g2^3 - 27 g3^2 == 0 and numeric_error when
// no candidate basis reproduces the invariants.
CurveData curve_from_invariants(cplx g2, cplx g3,
                                std::optional<CmDescriptor> cm = std::nullopt);

inline LatticeBasis::Reduction reduce_mod_lattice(cplx z, const LatticeBasis& basis) {
    return basis.reduce(z);
}

} // namespace ellmot

#endif
