#include "ellmot/galois.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ellmot/weierstrass.hpp"

namespace ellmot {

QuadraticField QuadraticField::imaginary_quadratic(long long d) {
    if (d >= 0 || (((d % 4) + 4) % 4 != 0 && ((d % 4) + 4) % 4 != 1)) {
        throw input_error("CM discriminant must be negative and 0 or 1 mod 4");
    }
    QuadraticField f;
    f.is_rational = false;
    f.discriminant = d;
    const mpq_class dq(static_cast<long>(d));
    f.t0 = dq;
    f.s0 = -dq * (dq - 1) / 4;
    return f;
}

QuadraticField QuadraticField::for_curve(const CurveData& curve) {
    if (!curve.cm) {
        return rationals();
    }
    return imaginary_quadratic(curve.cm->discriminant);
}

QuadraticFieldScalar qf_add(const QuadraticFieldScalar& x, const QuadraticFieldScalar& y) {
    return {x.a + y.a, x.b + y.b};
}

QuadraticFieldScalar qf_sub(const QuadraticFieldScalar& x, const QuadraticFieldScalar& y) {
    return {x.a - y.a, x.b - y.b};
}

QuadraticFieldScalar qf_mul(const QuadraticField& f, const QuadraticFieldScalar& x,
                            const QuadraticFieldScalar& y) {
    // (a1 + b1 g)(a2 + b2 g), g^2 = s0 + t0 g.
    return {x.a * y.a + x.b * y.b * f.s0, x.a * y.b + x.b * y.a + x.b * y.b * f.t0};
}

QuadraticFieldScalar qf_inv(const QuadraticField& f, const QuadraticFieldScalar& x) {
    if (x.is_zero()) {
        throw input_error("inverse of zero field element");
    }
    // Conjugate (a + b t0) - b g; norm a^2 + a b t0 - s0 b^2.
    const mpq_class norm = x.a * x.a + x.a * x.b * f.t0 - f.s0 * x.b * x.b;
    return {(x.a + x.b * f.t0) / norm, -x.b / norm};
}

cplx qf_embed(const QuadraticFieldScalar& x, const cplx& gen) {
    return cplx(x.a.get_d()) + cplx(x.b.get_d()) * gen;
}

std::size_t rank_over_field(const QuadraticField& field,
                            const std::vector<std::vector<QuadraticFieldScalar>>& relations,
                            std::size_t num_symbols) {
    std::vector<std::vector<QuadraticFieldScalar>> rows;
    rows.reserve(relations.size());
    for (const auto& rel : relations) {
        if (rel.size() != num_symbols) {
            throw input_error("relation vector length does not match the symbol count");
        }
        if (field.is_rational) {
            for (const auto& c : rel) {
                if (c.b != 0) {
                    throw input_error("gamma coefficient on a relation over Q");
                }
            }
        }
        rows.push_back(rel);
    }

    std::size_t rank = 0;
    for (std::size_t col = 0; col < num_symbols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        const QuadraticFieldScalar pinv = qf_inv(field, rows[rank][col]);
        for (std::size_t r2 = rank + 1; r2 < rows.size(); ++r2) {
            if (rows[r2][col].is_zero()) {
                continue;
            }
            const QuadraticFieldScalar factor = qf_mul(field, rows[r2][col], pinv);
            for (std::size_t t = col; t < num_symbols; ++t) {
                rows[r2][t] = qf_sub(rows[r2][t], qf_mul(field, factor, rows[rank][t]));
            }
        }
        ++rank;
    }
    return rank;
}

namespace {

struct MotiveShape {
    std::size_t r = 0, s = 0, n = 0;
    std::vector<bool> cm;
};

MotiveShape shape_of(const OneMotiveSpec& m) {
    MotiveShape sh{m.r, m.s, m.n, {}};
    sh.cm.reserve(m.n);
    for (const auto& c : m.curves) {
        sh.cm.push_back(c.cm.has_value());
    }
    return sh;
}

long long dim_reductive_shape(const MotiveShape& sh) {
    if (sh.n == 0) {
        return sh.s > 0 ? 1 : 0;
    }
    long long n1 = 0, n2 = 0;
    for (bool cm : sh.cm) {
        (cm ? n2 : n1) += 1;
    }
    // 4 sum (dim_Q k_j)^{-1} - n + 1; each summand is 4 (non-CM) or 2 (CM).
    const long long via_sum = 4 * n1 + 2 * n2 - static_cast<long long>(sh.n) + 1;
    const long long via_counts = 3 * n1 + n2 + 1;
    if (via_sum != via_counts) {
        throw numeric_error("reductive dimension cross-check failed");
    }
    return via_sum;
}

GaloisDims dims_from_shape(const MotiveShape& sh, const std::vector<QuadraticField>& fields,
                           const DependenceProfile& profile) {
    const std::size_t r = sh.r, s = sh.s, n = sh.n;

    // Per-curve abelian ranks over k_j.
    std::vector<std::vector<std::vector<QuadraticFieldScalar>>> per_curve(n);
    for (const auto& rel : profile.abelian_relations) {
        if (rel.curve >= n) {
            throw input_error("abelian relation references a curve out of range");
        }
        if (rel.coeffs.size() != r + s) {
            throw input_error("abelian relation must have r + s coefficients");
        }
        per_curve[rel.curve].push_back(rel.coeffs);
    }
    long long dim_b = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t rank = rank_over_field(fields[j], per_curve[j], r + s);
        dim_b += static_cast<long long>(r + s - rank);
    }

    // Kernel bookkeeping over the (k,i) pairs.
    std::size_t kernel_count = 0, nonkernel_count = 0;
    if (r > 0 && s > 0) {
        if (profile.pairing_kernel.size() != r) {
            throw input_error("pairing_kernel must be an r x s boolean matrix");
        }
        for (std::size_t k = 0; k < r; ++k) {
            if (profile.pairing_kernel[k].size() != s) {
                throw input_error("pairing_kernel must be an r x s boolean matrix");
            }
            for (std::size_t i = 0; i < s; ++i) {
                const bool in_kernel = profile.pairing_kernel[k][i];
                if (!in_kernel && n == 0) {
                    throw input_error("pairing kernel flags inconsistent: with no abelian part "
                                      "every pair lies in the kernel");
                }
                (in_kernel ? kernel_count : nonkernel_count) += 1;
            }
        }
    }

    auto rational_rank = [](const std::vector<std::vector<mpq_class>>& rels,
                            std::size_t symbols) {
        std::vector<std::vector<QuadraticFieldScalar>> rows;
        rows.reserve(rels.size());
        for (const auto& rel : rels) {
            if (rel.size() != symbols) {
                throw input_error("pairing/psi relation length does not match its symbol count");
            }
            std::vector<QuadraticFieldScalar> row;
            row.reserve(rel.size());
            for (const auto& c : rel) {
                row.emplace_back(c);
            }
            rows.push_back(std::move(row));
        }
        return rank_over_field(QuadraticField::rationals(), rows, symbols);
    };

    const std::size_t z1_rank = rational_rank(profile.pairing_relations, nonkernel_count);
    const std::size_t z2_rank = rational_rank(profile.psi_relations, kernel_count);

    GaloisDims dims;
    dims.dim_reductive = dim_reductive_shape(sh);
    dims.dim_b = dim_b;
    dims.dim_z1 = static_cast<long long>(nonkernel_count - z1_rank);
    dims.dim_z_over_z1 = static_cast<long long>(kernel_count - z2_rank);
    dims.dim_ur = 2 * dims.dim_b + dims.dim_z1 + dims.dim_z_over_z1;
    dims.dim_total = dims.dim_reductive + dims.dim_ur;
    return dims;
}

} // namespace

long long dim_reductive(const OneMotiveSpec& m) {
    return dim_reductive_shape(shape_of(m));
}

GaloisDims dim_unipotent(const OneMotiveSpec& m, const DependenceProfile& profile) {
    std::vector<QuadraticField> fields;
    fields.reserve(m.n);
    for (const auto& curve : m.curves) {
        fields.push_back(QuadraticField::for_curve(curve));
    }
    return dims_from_shape(shape_of(m), fields, profile);
}

GaloisDims dim_galois(const OneMotiveSpec& m, const DependenceProfile& profile) {
    GaloisDims dims = dim_unipotent(m, profile);
    if (dims.dim_ur != 2 * dims.dim_b + dims.dim_z1 + dims.dim_z_over_z1 ||
        dims.dim_total != dims.dim_reductive + dims.dim_ur || dims.dim_b < 0 ||
        dims.dim_b > static_cast<long long>(m.n * (m.r + m.s)) || dims.dim_z1 < 0 ||
        dims.dim_z_over_z1 < 0 ||
        dims.dim_z1 + dims.dim_z_over_z1 > static_cast<long long>(m.r * m.s)) {
        throw numeric_error("GaloisDims invariants violated");
    }
    return dims;
}

bool is_deficient(const OneMotiveSpec& m, const DependenceProfile& profile) {
    if (m.r == 0 || m.s == 0) {
        return true;
    }
    const GaloisDims dims = dim_unipotent(m, profile); // validates the profile shape
    for (std::size_t k = 0; k < m.r; ++k) {
        for (std::size_t i = 0; i < m.s; ++i) {
            if (!profile.pairing_kernel[k][i]) {
                return false;
            }
        }
    }
    return dims.dim_z1 == 0 && dims.dim_z_over_z1 == 0;
}

std::vector<CaseTableRow> case_table() {
    const QuadraticFieldScalar one{mpq_class(1)};
    const QuadraticFieldScalar zero{mpq_class(0)};
    const std::vector<QuadraticFieldScalar> rel_p{one, zero}; // p = 0 in C/(k w1 + k w2)
    const std::vector<QuadraticFieldScalar> rel_q{zero, one};

    struct RowSpec {
        std::string label;
        bool p_torsion, q_torsion, r_torsion;
    };
    const std::vector<RowSpec> rows{
        {"Q,R torsion", true, true, true},   {"P,Q torsion", true, true, false},
        {"R torsion", true, false, true},    {"Q torsion", false, true, false},
        {"P torsion", true, false, false},   {"P,Q End(E)xQ-lin.indep.", false, false, false},
    };

    std::vector<CaseTableRow> out;
    for (const auto& rs : rows) {
        DependenceProfile profile;
        if (rs.p_torsion) {
            profile.abelian_relations.push_back({0, rel_p});
        }
        if (rs.q_torsion) {
            profile.abelian_relations.push_back({0, rel_q});
        }
        // P or Q torsion forces the single Weil pairing value to be a root of
        // unity; in the generic last row the pair is not in the kernel.
        const bool kernel = rs.p_torsion || rs.q_torsion;
        profile.pairing_kernel = {{kernel}};
        if (kernel && rs.r_torsion) {
            profile.psi_relations.push_back({mpq_class(1)});
        }

        const MotiveShape cm_shape{1, 1, 1, {true}};
        const MotiveShape noncm_shape{1, 1, 1, {false}};
        const GaloisDims cm_dims =
            dims_from_shape(cm_shape, {QuadraticField::imaginary_quadratic(-4)}, profile);
        const GaloisDims noncm_dims =
            dims_from_shape(noncm_shape, {QuadraticField::rationals()}, profile);
        if (cm_dims.dim_ur != noncm_dims.dim_ur) {
            throw numeric_error("case table: UR dimension should not depend on CM");
        }
        out.push_back({rs.label, cm_dims.dim_ur, cm_dims.dim_total, noncm_dims.dim_total});
    }
    return out;
}

ConjectureReport conjecture_report(const OneMotiveSpec& m, const DependenceProfile& profile) {
    ConjectureReport report;
    report.dims = dim_galois(m, profile);
    report.rhs = report.dims.dim_total;

    const auto tag = [](std::size_t a) { return std::to_string(a + 1); };

    // Field-of-definition generators: invariants and canonical point coordinates.
    for (std::size_t j = 0; j < m.n; ++j) {
        report.lhs_generators.push_back({"g2_" + tag(j), m.curves[j].g2});
        report.lhs_generators.push_back({"g3_" + tag(j), m.curves[j].g3});
    }
    for (std::size_t j = 0; j < m.n; ++j) {
        for (std::size_t i = 0; i < m.s; ++i) {
            const bool split = m.curves[j].lattice.distance(m.q_logs[j][i]) < tol::pole_reject;
            const cplx xq = split ? cplx(0.0) : wp(m.q_logs[j][i], m.curves[j]);
            report.lhs_generators.push_back({"Q_" + tag(j) + "_" + tag(i), xq});
        }
    }
    for (std::size_t k = 0; k < m.r; ++k) {
        // Canonical coordinate of R_k: the G_m coordinate of its first toric
        // factor when s >= 1, otherwise the x-coordinate of its first abelian
        // projection.
        cplx value(0.0);
        if (m.s > 0 && !m.l_logs.empty()) {
            value = std::exp(m.l_logs[0][0][k]);
        } else if (m.n > 0) {
            value = wp(m.p_logs[0][k], m.curves[0]);
        }
        report.lhs_generators.push_back({"R_" + tag(k), value});
    }

    // Period generators; for CM curves omega_2 and eta_2 already lie in the
    // field generated by the others and are omitted.
    for (const auto& gen : period_generators(m)) {
        bool drop = false;
        for (std::size_t j = 0; j < m.n; ++j) {
            if (m.curves[j].cm &&
                (gen.label == "omega_" + tag(j) + "_2" || gen.label == "eta_" + tag(j) + "_2")) {
                drop = true;
                break;
            }
        }
        if (!drop) {
            report.lhs_generators.push_back(gen);
        }
    }

    report.inequality_text =
        "tran.deg >= " + std::to_string(report.rhs);
    return report;
}

namespace {

// Best rational approximation with denominator <= maxden (continued fractions).
std::pair<long long, long long> best_rational(double x, long long maxden) {
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(v);
        const auto a = static_cast<long long>(fl);
        const long long p2 = a * p1 + p0;
        const long long q2 = a * q1 + q0;
        if (q2 > maxden || q2 < 0) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double rem = v - fl;
        if (rem < 1e-18) {
            break;
        }
        v = 1.0 / rem;
    }
    if (q1 == 0) {
        return {p0, q0};
    }
    return {p1, q1};
}

} // namespace

std::vector<RelationResidual> validate_profile(const OneMotiveSpec& m,
                                               const DependenceProfile& profile,
                                               double tolerance) {
    std::vector<RelationResidual> out;
    std::size_t rel_index = 0;
    for (const auto& rel : profile.abelian_relations) {
        if (rel.curve >= m.n || rel.coeffs.size() != m.r + m.s) {
            throw input_error("abelian relation shape does not match the motive");
        }
        const CurveData& curve = m.curves[rel.curve];
        const cplx gen = curve.cm ? (std::abs(curve.cm->generator) > 0.0
                                         ? curve.cm->generator
                                         : cm_generator_for_discriminant(curve.cm->discriminant))
                                  : cplx(0.0);
        cplx combo(0.0);
        for (std::size_t t = 0; t < m.r; ++t) {
            combo += qf_embed(rel.coeffs[t], gen) * m.p_logs[rel.curve][t];
        }
        for (std::size_t t = 0; t < m.s; ++t) {
            combo += qf_embed(rel.coeffs[m.r + t], gen) * m.q_logs[rel.curve][t];
        }
        // Distance to the rational span of the lattice: both coordinates must
        // be rationals of small height.
        const auto [alpha, beta] = curve.lattice.coordinates(combo);
        const auto [pa, qa] = best_rational(alpha, 64);
        const auto [pb, qb] = best_rational(beta, 64);
        const cplx nearest = (static_cast<double>(pa) / static_cast<double>(qa)) *
                                 curve.lattice.omega1() +
                             (static_cast<double>(pb) / static_cast<double>(qb)) *
                                 curve.lattice.omega2();
        const double residual = std::abs(combo - nearest);
        out.push_back({rel.curve, rel_index++, residual, residual > tolerance});
    }
    return out;
}

} // namespace ellmot
