#ifndef ELLMOT_VERIFY_HPP
#define ELLMOT_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ellmot/one_motive.hpp"

namespace ellmot {

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    double tol_analytic = tol::analytic;
    double tol_quadrature = tol::quadrature;
    int points = 100;       // random arguments per functional-equation check
    std::uint64_t seed = 42;
    bool with_quadrature = true;
};

// Functional-equation and oracle suites for every curve and extension factor
// of the motive: Legendre, the three periodicity laws, the sigma and f_q
// transformation laws, the Weierstrass ODE residual, residue loops, cycle
// integrals against their closed forms, and the period-matrix entries against
// quadrature (mod 2*pi*i where multivalued).
std::vector<CheckResult> verify_motive(const OneMotiveSpec& m, const VerifyOptions& opt);

bool all_pass(const std::vector<CheckResult>& checks);

} // namespace ellmot

#endif
