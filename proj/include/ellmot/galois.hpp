#ifndef ELLMOT_GALOIS_HPP
#define ELLMOT_GALOIS_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ellmot/one_motive.hpp"

namespace ellmot {

/// Q, or the imaginary quadratic field Q(gamma) with gamma = (d + sqrt(d))/2,
/// so gamma^2 = s0 + t0*gamma with t0 = d, s0 = -(d^2 - d)/4.
struct QuadraticField {
    bool is_rational = true;
    long long discriminant = 0;
    mpq_class s0{0}, t0{0};

    static QuadraticField rationals() { return {}; }
    static QuadraticField imaginary_quadratic(long long d);
    static QuadraticField for_curve(const CurveData& curve);
};

/// a + b*gamma, exact. Over Q the gamma part must be zero.
struct QuadraticFieldScalar {
    mpq_class a{0}, b{0};

    QuadraticFieldScalar() = default;
    QuadraticFieldScalar(mpq_class a_in, mpq_class b_in = mpq_class(0))
        : a(std::move(a_in)), b(std::move(b_in)) {}

    bool is_zero() const { return a == 0 && b == 0; }
};

QuadraticFieldScalar qf_add(const QuadraticFieldScalar& x, const QuadraticFieldScalar& y);
QuadraticFieldScalar qf_sub(const QuadraticFieldScalar& x, const QuadraticFieldScalar& y);
QuadraticFieldScalar qf_mul(const QuadraticField& f, const QuadraticFieldScalar& x,
                            const QuadraticFieldScalar& y);
QuadraticFieldScalar qf_inv(const QuadraticField& f, const QuadraticFieldScalar& x);

// Numeric embedding with the CM generator acting as `gen`.
cplx qf_embed(const QuadraticFieldScalar& x, const cplx& gen);

// Rank of the span of the relation rows by exact Gaussian elimination.
std::size_t rank_over_field(const QuadraticField& field,
                            const std::vector<std::vector<QuadraticFieldScalar>>& relations,
                            std::size_t num_symbols);

/// One declared k_j-linear relation among the symbols {p_{j,1..r}, q_{j,1..s}}
/// of curve j, asserting the combination lies in k_j*omega1 + k_j*omega2.
struct AbelianRelation {
    std::size_t curve = 0; // 0-based j
    std::vector<QuadraticFieldScalar> coeffs; // length r + s
};

/// Declared linear-dependence data standing in for the transcendence facts:
/// per-curve abelian relations, the declared kernel of the composed Weil
/// pairing over the (k,i) symbols, rational relations among the non-kernel
/// pairing logs, and rational relations among the psi logs of kernel pairs
/// (both mod 2*pi*i*Q). pairing_kernel is indexed [k][i]; relation vectors
/// run over the corresponding pairs in row-major (k,i) order.
struct DependenceProfile {
    std::vector<AbelianRelation> abelian_relations;
    std::vector<std::vector<bool>> pairing_kernel;
    std::vector<std::vector<mpq_class>> pairing_relations;
    std::vector<std::vector<mpq_class>> psi_relations;
};

struct GaloisDims {
    long long dim_reductive = 0;
    long long dim_b = 0;         // abelian part of the unipotent radical, halved
    long long dim_z1 = 0;
    long long dim_z_over_z1 = 0;
    long long dim_ur = 0;        // = 2*dim_b + dim_z1 + dim_z_over_z1
    long long dim_total = 0;     // = dim_reductive + dim_ur
};

// 4 sum_j (dim_Q k_j)^{-1} - n + 1 for n >= 1 (equals 3 n1 + n2 + 1);
// 1 for n = 0, s >= 1; 0 for n = s = 0.
long long dim_reductive(const OneMotiveSpec& m);

// The unipotent-radical dimensions from the declared profile.
GaloisDims dim_unipotent(const OneMotiveSpec& m, const DependenceProfile& profile);

GaloisDims dim_galois(const OneMotiveSpec& m, const DependenceProfile& profile);

// W_{-2} vanishes identically: every pair declared in the pairing kernel and
// every psi log declared rational mod 2*pi*i.
bool is_deficient(const OneMotiveSpec& m, const DependenceProfile& profile);

struct CaseTableRow {
    std::string label;
    long long dim_ur = 0;
    long long dim_total_cm = 0;
    long long dim_total_noncm = 0;
};

// The six torsion/independence cases for r = n = s = 1.
std::vector<CaseTableRow> case_table();

struct ConjectureReport {
    std::vector<LabeledValue> lhs_generators;
    GaloisDims dims;
    long long rhs = 0;
    std::string inequality_text;
};

// Both sides of the period-conjecture inequality: the labeled generator list
// of K(periods(M)) and the motivic Galois dimension. No transcendence
// judgment is made.
ConjectureReport conjecture_report(const OneMotiveSpec& m, const DependenceProfile& profile);

struct RelationResidual {
    std::size_t curve = 0;
    std::size_t relation_index = 0;
    double residual = 0.0;
    bool flagged = false;
};

// Numeric sanity check of the declared abelian relations: evaluates each
// combination and measures its distance to the rational lattice span
// (denominators up to 64). Report-only.
std::vector<RelationResidual> validate_profile(const OneMotiveSpec& m,
                                               const DependenceProfile& profile,
                                               double tolerance = 1e-6);

} // namespace ellmot

#endif
