#ifndef ELLMOT_ONE_MOTIVE_HPP
#define ELLMOT_ONE_MOTIVE_HPP

#include <string>
#include <vector>

#include "ellmot/serre.hpp"

namespace ellmot {

/// M = [u: Z^r -> G], G an extension of E_1 x ... x E_n by G_m^s, specified
/// logarithm-first: elliptic logs p_{jk} of the points under u, elliptic logs
/// q_{ji} of the extension points, toric logs l_{jik} of the G_m coordinates.
///
/// Index convention: j = curve (0..n-1), i = torus factor (0..s-1),
/// k = lattice generator (0..r-1). l_logs is indexed [j][i][k]; when n = 0 it
/// carries a single slice [0][i][k] with the toric logs of the points R_k.
struct OneMotiveSpec {
    std::size_t r = 0, s = 0, n = 0;
    std::vector<CurveData> curves;
    std::vector<std::vector<cplx>> q_logs;
    std::vector<std::vector<cplx>> p_logs;
    std::vector<std::vector<std::vector<cplx>>> l_logs;

    void validate() const; // shape consistency; throws input_error
};

/// The (j,i,k) component M_{jik} = [z_k Z -> G_{ji}] of the decomposition.
struct ComponentMotive {
    std::size_t j = 0, i = 0, k = 0;
    CurveData curve;
    cplx q{}, p{}, l{};
    // q in Lambda: the extension factor is trivial and the xi column follows
    // the split (elliptico-toric) formulas.
    bool split_toric = false;
};

struct PeriodMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<cplx> entries; // row-major
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    cplx& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

struct LabeledValue {
    std::string label;
    cplx value{};
};

// The r*s*n components of M, ordered lexicographically by (j, i, k).
std::vector<ComponentMotive> decompose(const OneMotiveSpec& m);

// The 4x4 matrix
//   [ 1   p    zeta(p)  log f_q(p) + l ]
//   [ 0  om1   eta1     eta1 q - om1 zeta(q) ]
//   [ 0  om2   eta2     eta2 q - om2 zeta(q) ]
//   [ 0   0    0        2 pi i ]
// with the xi column replaced by (l, 0, 0, 2 pi i) for split components.
PeriodMatrix component_period_matrix(const ComponentMotive& c);

// Block matrix [[A,B,C],[0,D,E],[0,0,F]] of size rn+2n+s (n >= 1), or
// [[Id_r, L],[0, 2 pi i Id_s]] for the torus-only case n = 0.
PeriodMatrix full_period_matrix(const OneMotiveSpec& m);

// Deduplicated labeled generator list of the period field:
// {1, 2 pi i, omega, eta} + {p, zeta(p)} + {third-kind quasi-periods} +
// {log f_q(p) + l}; 2 + 4n + 2rn + 2sn + rsn labels before deduplication.
std::vector<LabeledValue> period_generators(const OneMotiveSpec& m);

// Determinant by Gaussian elimination (test and report helper).
cplx matrix_determinant(const PeriodMatrix& m);

} // namespace ellmot

#endif
