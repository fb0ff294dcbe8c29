#ifndef ELLMOT_DETAIL_NUMERICS_HPP
#define ELLMOT_DETAIL_NUMERICS_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "ellmot/types.hpp"

// Series and root-finding kernels shared by the lattice and Weierstrass layers.
// Everything here assumes the nome satisfies |q| <= exp(-pi*sqrt(3)/2), which
// the lattice layer guarantees by reducing tau to the fundamental domain.

namespace ellmot::detail {

inline constexpr std::size_t max_series_iter = 64;

struct Theta1Values {
    cplx t;   // theta1(v, q)
    cplx tp;  // d/dv theta1(v, q)
    cplx tpp; // d^2/dv^2 theta1(v, q)
};

// theta1(v,q) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1)v), with the two
// v-derivatives accumulated in the same sweep.
inline Theta1Values theta1(const cplx& v, const cplx& q) {
    const cplx q2 = q * q;
    const cplx q_quarter = std::pow(q, 0.25);
    cplx pw(1.0, 0.0);  // q^{n(n+1)}
    cplx q2n = q2;      // q^{2(n+1)}
    cplx t(0.0), tp(0.0), tpp(0.0);
    int quiet = 0;
    for (std::size_t n = 0; n < max_series_iter; ++n) {
        const double m = 2.0 * static_cast<double>(n) + 1.0;
        const cplx s = std::sin(m * v);
        const cplx c = std::cos(m * v);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const cplx base = sign * pw;
        const cplx add_t = base * s;
        const cplx add_tp = base * m * c;
        const cplx add_tpp = -base * m * m * s;
        t += add_t;
        tp += add_tp;
        tpp += add_tpp;
        const double scale = std::abs(t) + std::abs(tp) + std::abs(tpp);
        const double inc = std::abs(add_t) + std::abs(add_tp) + std::abs(add_tpp);
        if (inc <= tol::series_eps * scale) {
            if (++quiet == 2) {
                return {2.0 * q_quarter * t, 2.0 * q_quarter * tp, 2.0 * q_quarter * tpp};
            }
        } else {
            quiet = 0;
        }
        pw *= q2n;
        q2n *= q2;
    }
    throw numeric_error("theta series did not converge (nome too close to 1?)");
}

// theta1'(0,q) = 2 sum (-1)^n (2n+1) q^{(n+1/2)^2}
inline cplx theta1_prime0(const cplx& q) {
    const cplx q2 = q * q;
    cplx pw(1.0, 0.0);
    cplx q2n = q2;
    cplx acc(0.0);
    for (std::size_t n = 0; n < max_series_iter; ++n) {
        const double m = 2.0 * static_cast<double>(n) + 1.0;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const cplx add = sign * m * pw;
        acc += add;
        if (std::abs(add) <= tol::series_eps * std::abs(acc)) {
            return 2.0 * std::pow(q, 0.25) * acc;
        }
        pw *= q2n;
        q2n *= q2;
    }
    throw numeric_error("theta1'(0) series did not converge");
}

// theta1'''(0,q) = -2 sum (-1)^n (2n+1)^3 q^{(n+1/2)^2}
inline cplx theta1_ppp0(const cplx& q) {
    const cplx q2 = q * q;
    cplx pw(1.0, 0.0);
    cplx q2n = q2;
    cplx acc(0.0);
    for (std::size_t n = 0; n < max_series_iter; ++n) {
        const double m = 2.0 * static_cast<double>(n) + 1.0;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const cplx add = sign * m * m * m * pw;
        acc += add;
        if (std::abs(add) <= tol::series_eps * std::abs(acc)) {
            return -2.0 * std::pow(q, 0.25) * acc;
        }
        pw *= q2n;
        q2n *= q2;
    }
    throw numeric_error("theta1'''(0) series did not converge");
}

// Eisenstein series E4, E6 in the nome q_std = exp(2*pi*i*tau).
inline cplx eisenstein_e4(const cplx& q_std) {
    cplx acc(1.0);
    cplx qn = q_std;
    for (std::size_t n = 1; n < max_series_iter; ++n) {
        const double nd = static_cast<double>(n);
        const cplx add = 240.0 * nd * nd * nd * qn / (1.0 - qn);
        acc += add;
        if (std::abs(add) <= tol::series_eps * std::abs(acc)) {
            return acc;
        }
        qn *= q_std;
    }
    throw numeric_error("E4 series did not converge");
}

inline cplx eisenstein_e6(const cplx& q_std) {
    cplx acc(1.0);
    cplx qn = q_std;
    for (std::size_t n = 1; n < max_series_iter; ++n) {
        const double nd = static_cast<double>(n);
        const cplx add = -504.0 * nd * nd * nd * nd * nd * qn / (1.0 - qn);
        acc += add;
        if (std::abs(add) <= tol::series_eps * std::abs(acc)) {
            return acc;
        }
        qn *= q_std;
    }
    throw numeric_error("E6 series did not converge");
}

// Roots of the Weierstrass cubic 4 x^3 - g2 x - g3 (Cardano, complex
// coefficients). No particular ordering is guaranteed.
inline std::array<cplx, 3> weierstrass_cubic_roots(const cplx& g2, const cplx& g3) {
    // Depressed monic form x^3 + p x + q with p = -g2/4, q = -g3/4.
    const cplx p = -g2 / 4.0;
    const cplx q = -g3 / 4.0;
    const cplx d = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cplx u3 = -q / 2.0 + d;
    if (std::abs(u3) < std::abs(-q / 2.0 - d)) {
        u3 = -q / 2.0 - d;
    }
    if (std::abs(u3) == 0.0) {
        // p == q == 0: triple root at the origin (degenerate curve).
        return {cplx(0.0), cplx(0.0), cplx(0.0)};
    }
    const cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx w(-0.5, std::sqrt(3.0) / 2.0);
    std::array<cplx, 3> roots{};
    cplx uk = u;
    for (int k = 0; k < 3; ++k) {
        roots[static_cast<std::size_t>(k)] = uk - p / (3.0 * uk);
        uk *= w;
    }
    return roots;
}

// Arithmetic-geometric mean with the "optimal" square-root branch: at every
// step the sign of the geometric mean is chosen so that |a-g| <= |a+g|
// (ties broken towards Im(g/a) > 0).
inline cplx agm_optimal(cplx a, cplx g) {
    for (std::size_t i = 0; i < max_series_iter; ++i) {
        if (std::abs(a - g) <= 1e-15 * (std::abs(a) + std::abs(g))) {
            return (a + g) / 2.0;
        }
        const cplx am = (a + g) / 2.0;
        cplx gm = std::sqrt(a * g);
        const double d_minus = std::abs(am - gm);
        const double d_plus = std::abs(am + gm);
        if (d_minus > d_plus ||
            (d_minus == d_plus && (gm / am).imag() < 0.0)) {
            gm = -gm;
        }
        a = am;
        g = gm;
    }
    throw numeric_error("complex AGM did not converge");
}

// Carlson symmetric integral R_F(x,y,z) by the duplication theorem.
// Valid for complex arguments off the negative real axis; callers verify the
// result downstream and fall back to a direct search when the branch is wrong.
inline cplx carlson_rf(cplx x, cplx y, cplx z) {
    const cplx x0 = x, y0 = y;
    const cplx a0 = (x + y + z) / 3.0;
    cplx a = a0;
    const double q0 = std::pow(3.0 * 1e-16, -1.0 / 8.0) *
                      std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
    double fourm = 1.0; // 4^m
    for (std::size_t m = 0; m < 100 && q0 > fourm * std::abs(a); ++m) {
        const cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const cplx lam = sx * sy + sy * sz + sz * sx;
        x = (x + lam) / 4.0;
        y = (y + lam) / 4.0;
        z = (z + lam) / 4.0;
        a = (a + lam) / 4.0;
        fourm *= 4.0;
    }
    const cplx X = (a0 - x0) / (fourm * a);
    const cplx Y = (a0 - y0) / (fourm * a);
    const cplx Z = -(X + Y);
    const cplx e2 = X * Y - Z * Z;
    const cplx e3 = X * Y * Z;
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

} // namespace ellmot::detail

#endif
