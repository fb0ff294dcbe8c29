#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "ellmot/galois.hpp"
#include "test_support.hpp"

using namespace ellmot;
using namespace ellmot::testing;

namespace {

QuadraticFieldScalar qs(long a, long b = 0) {
    return {mpq_class(a), mpq_class(b)};
}

// Floating rank oracle: count singular values above a relative threshold.
std::size_t svd_rank(const std::vector<std::vector<QuadraticFieldScalar>>& rows,
                     std::size_t cols) {
    if (rows.empty()) {
        return 0;
    }
    Eigen::MatrixXd a(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j].a.get_d();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > 1e-9 * sv(0)) {
            ++rank;
        }
    }
    return rank;
}

// Profile for the generic last row of the case table, shaped for (r,s).
DependenceProfile generic_profile(std::size_t r, std::size_t s) {
    DependenceProfile p;
    p.pairing_kernel.assign(r, std::vector<bool>(s, false));
    return p;
}

CurveData cm_curve() {
    // The lemniscatic curve has CM by Z[i] (discriminant -4).
    return curve_from_invariants(cplx(4.0), cplx(0.0),
                                 CmDescriptor{-4, cm_generator_for_discriminant(-4)});
}

} // namespace

TEST_CASE("quadratic field arithmetic") {
    const QuadraticField f = QuadraticField::imaginary_quadratic(-4);
    // gamma = (d + sqrt(d))/2: gamma^2 = d gamma - (d^2 - d)/4 = -4 gamma - 5.
    const QuadraticFieldScalar gamma = qs(0, 1);
    const QuadraticFieldScalar g2v = qf_mul(f, gamma, gamma);
    CHECK(g2v.a == mpq_class(-5));
    CHECK(g2v.b == mpq_class(-4));

    // x * x^{-1} = 1 for a few elements.
    for (const auto& x : {qs(3, 2), qs(-1, 5), qs(7, 0), qs(0, -3)}) {
        const QuadraticFieldScalar prod = qf_mul(f, x, qf_inv(f, x));
        CHECK(prod.a == mpq_class(1));
        CHECK(prod.b == mpq_class(0));
    }
    CHECK_THROWS_AS((void)qf_inv(f, qs(0)), input_error);

    // The numeric embedding satisfies the same quadratic relation.
    const cplx g = cm_generator_for_discriminant(-4);
    CHECK(std::abs(g * g - (qf_embed(g2v, g))) < 1e-12);

    CHECK_THROWS_AS(QuadraticField::imaginary_quadratic(-5), input_error);
    CHECK_THROWS_AS(QuadraticField::imaginary_quadratic(4), input_error);
}

TEST_CASE("rank engine basics") {
    const QuadraticField f = QuadraticField::rationals();

    SUBCASE("no relations") {
        CHECK(rank_over_field(f, {}, 5) == 0);
    }
    SUBCASE("duplicate rows do not change the rank") {
        const std::vector<QuadraticFieldScalar> row{qs(1), qs(2), qs(3)};
        CHECK(rank_over_field(f, {row}, 3) == 1);
        CHECK(rank_over_field(f, {row, row, row}, 3) == 1);
    }
    SUBCASE("inconsistent lengths are rejected") {
        CHECK_THROWS_AS((void)rank_over_field(f, {{qs(1), qs(2)}}, 3), input_error);
    }
    SUBCASE("gamma coefficients over Q are rejected") {
        CHECK_THROWS_AS((void)rank_over_field(f, {{qs(1, 1)}}, 1), input_error);
    }
}

TEST_CASE("rank engine agrees with a floating SVD oracle") {
    auto rng = make_rng(50);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<std::size_t> inner(1, 6);
    const QuadraticField f = QuadraticField::rationals();
    for (int t = 0; t < 50; ++t) {
        // Random 6x6 integer matrix of controlled rank: product of 6xk and kx6.
        const std::size_t k = inner(rng);
        std::vector<std::vector<long>> bmat(6, std::vector<long>(k));
        std::vector<std::vector<long>> cmat(k, std::vector<long>(6));
        for (auto& row : bmat) {
            for (auto& x : row) {
                x = entry(rng);
            }
        }
        for (auto& row : cmat) {
            for (auto& x : row) {
                x = entry(rng);
            }
        }
        std::vector<std::vector<QuadraticFieldScalar>> rows(6);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                long acc = 0;
                for (std::size_t u = 0; u < k; ++u) {
                    acc += bmat[i][u] * cmat[u][j];
                }
                rows[i].push_back(qs(acc));
            }
        }
        CHECK(rank_over_field(f, rows, 6) == svd_rank(rows, 6));
    }
}

TEST_CASE("adding relations never increases quotient dimensions") {
    auto rng = make_rng(51);
    std::uniform_int_distribution<int> entry(-2, 2);
    const QuadraticField f = QuadraticField::rationals();
    for (int t = 0; t < 20; ++t) {
        std::vector<std::vector<QuadraticFieldScalar>> rows;
        std::size_t prev_quotient = 4;
        for (int add = 0; add < 6; ++add) {
            std::vector<QuadraticFieldScalar> row;
            for (int j = 0; j < 4; ++j) {
                row.push_back(qs(entry(rng)));
            }
            rows.push_back(std::move(row));
            const std::size_t quotient = 4 - rank_over_field(f, rows, 4);
            CHECK(quotient <= prev_quotient);
            prev_quotient = quotient;
        }
    }
}

TEST_CASE("reductive dimension") {
    auto rng = make_rng(52);

    SUBCASE("single curve") {
        OneMotiveSpec m = make_motive(rng, 1, 1, 1);
        CHECK(dim_reductive(m) == 4);
        m.curves[0].cm = CmDescriptor{-4, cm_generator_for_discriminant(-4)};
        CHECK(dim_reductive(m) == 2);
    }
    SUBCASE("two curves, one CM") {
        OneMotiveSpec m = make_motive(rng, 1, 1, 2);
        m.curves[1].cm = CmDescriptor{-7, cm_generator_for_discriminant(-7)};
        CHECK(dim_reductive(m) == 5); // 4(1 + 1/2) - 2 + 1 = 3*1 + 1*1 + 1
    }
    SUBCASE("degenerate shapes") {
        CHECK(dim_reductive(make_motive(rng, 1, 1, 0)) == 1);
        CHECK(dim_reductive(make_motive(rng, 2, 0, 0)) == 0);
    }
    SUBCASE("3 n1 + n2 + 1 identity, exhaustive over CM flags, n <= 6") {
        for (std::size_t n = 1; n <= 6; ++n) {
            OneMotiveSpec m = make_motive(rng, 0, 0, n);
            for (std::size_t mask = 0; mask < (1u << n); ++mask) {
                long long n1 = 0, n2 = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (mask & (1u << j)) {
                        m.curves[j].cm = CmDescriptor{-4, cm_generator_for_discriminant(-4)};
                        ++n2;
                    } else {
                        m.curves[j].cm.reset();
                        ++n1;
                    }
                }
                CHECK(dim_reductive(m) == 3 * n1 + n2 + 1);
            }
        }
    }
}

TEST_CASE("unipotent dimensions for the r=n=s=1 torsion cases") {
    auto rng = make_rng(53);
    const OneMotiveSpec m = make_motive(rng, 1, 1, 1);
    const std::vector<QuadraticFieldScalar> rel_p{qs(1), qs(0)};
    const std::vector<QuadraticFieldScalar> rel_q{qs(0), qs(1)};

    SUBCASE("P,Q torsion, R non-torsion: dim UR = 1") {
        DependenceProfile prof;
        prof.abelian_relations = {{0, rel_p}, {0, rel_q}};
        prof.pairing_kernel = {{true}};
        const GaloisDims d = dim_unipotent(m, prof);
        CHECK(d.dim_b == 0);
        CHECK(d.dim_z1 == 0);
        CHECK(d.dim_z_over_z1 == 1);
        CHECK(d.dim_ur == 1);
    }
    SUBCASE("Q torsion, P,R non-torsion: dim UR = 3") {
        DependenceProfile prof;
        prof.abelian_relations = {{0, rel_q}};
        prof.pairing_kernel = {{true}};
        const GaloisDims d = dim_unipotent(m, prof);
        CHECK(d.dim_b == 1);
        CHECK(d.dim_z1 == 0);
        CHECK(d.dim_z_over_z1 == 1);
        CHECK(d.dim_ur == 3);
    }
    SUBCASE("P,Q independent: dim UR = 5") {
        const DependenceProfile prof = generic_profile(1, 1);
        const GaloisDims d = dim_unipotent(m, prof);
        CHECK(d.dim_b == 2);
        CHECK(d.dim_z1 == 1);
        CHECK(d.dim_z_over_z1 == 0);
        CHECK(d.dim_ur == 5);
    }
}

TEST_CASE("total Galois dimension") {
    auto rng = make_rng(54);

    SUBCASE("generic non-CM r=n=s=1 gives 9") {
        const OneMotiveSpec m = make_motive(rng, 1, 1, 1);
        CHECK(dim_galois(m, generic_profile(1, 1)).dim_total == 9);
    }
    SUBCASE("CM curve with R torsion gives 4") {
        OneMotiveSpec m = make_motive(rng, 1, 1, 1);
        m.curves[0] = cm_curve();
        m.q_logs[0][0] = random_cell_point(rng, m.curves[0].lattice);
        m.p_logs[0][0] = random_cell_point(rng, m.curves[0].lattice);
        DependenceProfile prof;
        prof.abelian_relations = {{0, {qs(1), qs(0)}}}; // R torsion forces P torsion
        prof.pairing_kernel = {{true}};
        prof.psi_relations = {{mpq_class(1)}};
        const GaloisDims d = dim_galois(m, prof);
        CHECK(d.dim_reductive == 2);
        CHECK(d.dim_ur == 2);
        CHECK(d.dim_total == 4);
    }
    SUBCASE("torus-only Schanuel case gives 1 + 1 = 2") {
        const OneMotiveSpec m = make_motive(rng, 1, 1, 0);
        DependenceProfile prof;
        prof.pairing_kernel = {{true}};
        const GaloisDims d = dim_galois(m, prof);
        CHECK(d.dim_reductive == 1);
        CHECK(d.dim_z_over_z1 == 1);
        CHECK(d.dim_total == 2);
    }
    SUBCASE("non-kernel flags with no abelian part are rejected") {
        const OneMotiveSpec m = make_motive(rng, 1, 1, 0);
        CHECK_THROWS_AS((void)dim_galois(m, generic_profile(1, 1)), input_error);
    }
    SUBCASE("CM coefficients in relations change the rank") {
        OneMotiveSpec m = make_motive(rng, 1, 1, 1);
        m.curves[0] = cm_curve();
        m.q_logs[0][0] = random_cell_point(rng, m.curves[0].lattice);
        m.p_logs[0][0] = random_cell_point(rng, m.curves[0].lattice);
        // q = gamma * p: one relation over k_j, none over Q.
        DependenceProfile prof;
        prof.abelian_relations = {{0, {qs(0, 1), qs(-1)}}};
        prof.pairing_kernel = {{false}};
        const GaloisDims d = dim_galois(m, prof);
        CHECK(d.dim_b == 1);
        CHECK(d.dim_ur == 2 * 1 + 1 + 0);
    }
}

TEST_CASE("per-curve relations accumulate independently") {
    auto rng = make_rng(59);
    const OneMotiveSpec m = make_motive(rng, 1, 1, 2);
    DependenceProfile prof;
    // Only curve 2 carries a relation: dim_b = (2 - 0) + (2 - 1) = 3.
    prof.abelian_relations = {{1, {qs(1), qs(0)}}};
    prof.pairing_kernel = {{false}};
    const GaloisDims d = dim_unipotent(m, prof);
    CHECK(d.dim_b == 3);
    CHECK(d.dim_z1 == 1);
    CHECK(d.dim_ur == 7);
}

TEST_CASE("deficiency") {
    auto rng = make_rng(55);
    const OneMotiveSpec m = make_motive(rng, 1, 1, 1);

    SUBCASE("all pairing torsion and psi rational gives deficient") {
        DependenceProfile prof;
        prof.pairing_kernel = {{true}};
        prof.psi_relations = {{mpq_class(1)}};
        CHECK(is_deficient(m, prof));
    }
    SUBCASE("generic profile is not deficient") {
        CHECK_FALSE(is_deficient(m, generic_profile(1, 1)));
    }
    SUBCASE("kernel pair with free psi log is not deficient") {
        DependenceProfile prof;
        prof.pairing_kernel = {{true}};
        CHECK_FALSE(is_deficient(m, prof));
    }
    SUBCASE("r = s = 0 is vacuously deficient") {
        const OneMotiveSpec m0 = make_motive(rng, 0, 0, 1);
        CHECK(is_deficient(m0, DependenceProfile{}));
    }
}

TEST_CASE("case table matches the six torsion cases") {
    const auto rows = case_table();
    REQUIRE(rows.size() == 6);
    const long long expect[6][3] = {{0, 2, 4}, {1, 3, 5}, {2, 4, 6},
                                    {3, 5, 7}, {3, 5, 7}, {5, 7, 9}};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(rows[i].dim_ur == expect[i][0]);
        CHECK(rows[i].dim_total_cm == expect[i][1]);
        CHECK(rows[i].dim_total_noncm == expect[i][2]);
    }
    CHECK(rows[2].label == "R torsion");
    CHECK(rows[4].label == "P torsion");
}

TEST_CASE("conjecture report") {
    auto rng = make_rng(56);

    SUBCASE("generic non-CM r=n=s=1: 9 of 15") {
        const OneMotiveSpec m = make_motive(rng, 1, 1, 1);
        const ConjectureReport rep = conjecture_report(m, generic_profile(1, 1));
        CHECK(rep.rhs == 9);
        CHECK(rep.lhs_generators.size() == 15);
        CHECK(rep.inequality_text == "tran.deg >= 9");
    }
    SUBCASE("generic CM r=n=s=1: 7 of 13") {
        OneMotiveSpec m = make_motive(rng, 1, 1, 1);
        m.curves[0] = cm_curve();
        m.q_logs[0][0] = random_cell_point(rng, m.curves[0].lattice);
        m.p_logs[0][0] = random_cell_point(rng, m.curves[0].lattice);
        const ConjectureReport rep = conjecture_report(m, generic_profile(1, 1));
        CHECK(rep.rhs == 7);
        CHECK(rep.lhs_generators.size() == 13);
        for (const auto& g : rep.lhs_generators) {
            CHECK(g.label != "omega_1_2");
            CHECK(g.label != "eta_1_2");
        }
    }
    SUBCASE("torus-only case has the Schanuel shape") {
        const OneMotiveSpec m = make_motive(rng, 1, 1, 0);
        DependenceProfile prof;
        prof.pairing_kernel = {{true}};
        const ConjectureReport rep = conjecture_report(m, prof);
        CHECK(rep.rhs == 2);
        REQUIRE(rep.lhs_generators.size() == 4);
        // x and e^x pairs plus 1 and 2 pi i: the Schanuel data.
        cplx lval{}, rval{};
        for (const auto& g : rep.lhs_generators) {
            if (g.label == "l_1_1") {
                lval = g.value;
            }
            if (g.label == "R_1") {
                rval = g.value;
            }
        }
        CHECK(std::abs(std::exp(lval) - rval) < 1e-12);
    }
}

TEST_CASE("profile validation residuals") {
    auto rng = make_rng(57);
    OneMotiveSpec m = make_motive(rng, 1, 1, 1);

    SUBCASE("true torsion relation has residual zero") {
        m.p_logs[0][0] = m.curves[0].lattice.omega1() / 3.0;
        DependenceProfile prof;
        prof.abelian_relations = {{0, {qs(3), qs(0)}}};
        prof.pairing_kernel = {{true}};
        const auto res = validate_profile(m, prof);
        REQUIRE(res.size() == 1);
        CHECK(res[0].residual < 1e-10);
        CHECK_FALSE(res[0].flagged);
    }
    SUBCASE("small-denominator rational coordinates pass as well") {
        m.p_logs[0][0] = m.curves[0].lattice.omega1() / 3.0 +
                         m.curves[0].lattice.omega2() * (2.0 / 7.0);
        DependenceProfile prof;
        prof.abelian_relations = {{0, {qs(1), qs(0)}}};
        prof.pairing_kernel = {{true}};
        const auto res = validate_profile(m, prof);
        REQUIRE(res.size() == 1);
        CHECK_FALSE(res[0].flagged);
    }
    SUBCASE("fabricated relation is flagged") {
        DependenceProfile prof;
        prof.abelian_relations = {{0, {qs(1), qs(0)}}};
        prof.pairing_kernel = {{true}};
        const auto res = validate_profile(m, prof);
        REQUIRE(res.size() == 1);
        CHECK(res[0].flagged);
    }
    SUBCASE("empty profile gives an empty report") {
        CHECK(validate_profile(m, DependenceProfile{}).empty());
    }
}

TEST_CASE("GaloisDims arithmetic identities on random profiles") {
    auto rng = make_rng(58);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int t = 0; t < 25; ++t) {
        const std::size_t r = 1 + static_cast<std::size_t>(coin(rng));
        const std::size_t s = 1 + static_cast<std::size_t>(coin(rng));
        const std::size_t n = 1 + static_cast<std::size_t>(coin(rng));
        const OneMotiveSpec m = make_motive(rng, r, s, n);
        DependenceProfile prof;
        std::size_t kernel = 0;
        prof.pairing_kernel.assign(r, std::vector<bool>(s, false));
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t i = 0; i < s; ++i) {
                const bool flag = coin(rng) == 1;
                prof.pairing_kernel[k][i] = flag;
                kernel += flag ? 1 : 0;
            }
        }
        if (kernel > 0 && coin(rng)) {
            std::vector<mpq_class> rel(kernel, mpq_class(0));
            rel[0] = 1;
            prof.psi_relations.push_back(rel);
        }
        const GaloisDims d = dim_galois(m, prof);
        CHECK(d.dim_ur == 2 * d.dim_b + d.dim_z1 + d.dim_z_over_z1);
        CHECK(d.dim_total == d.dim_reductive + d.dim_ur);
        CHECK(d.dim_b >= 0);
        CHECK(d.dim_b <= static_cast<long long>(n * (r + s)));
        CHECK(d.dim_z1 + d.dim_z_over_z1 <= static_cast<long long>(r * s));
    }
}
