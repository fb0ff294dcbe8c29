#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <set>

#include "ellmot/one_motive.hpp"
#include "ellmot/quadrature.hpp"
#include "test_support.hpp"

using namespace ellmot;
using namespace ellmot::testing;

TEST_CASE("decomposition into (j,i,k) components") {
    auto rng = make_rng(40);

    SUBCASE("r = n = s = 1 gives one component with the same data") {
        const OneMotiveSpec m = make_motive(rng, 1, 1, 1);
        const auto comps = decompose(m);
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].q == m.q_logs[0][0]);
        CHECK(comps[0].p == m.p_logs[0][0]);
        CHECK(comps[0].l == m.l_logs[0][0][0]);
        CHECK_FALSE(comps[0].split_toric);
    }
    SUBCASE("r=2, n=2, s=3 gives 12 components, each index triple once") {
        const OneMotiveSpec m = make_motive(rng, 2, 3, 2);
        const auto comps = decompose(m);
        REQUIRE(comps.size() == 12);
        std::set<std::array<std::size_t, 3>> seen;
        for (const auto& c : comps) {
            CHECK(c.q == m.q_logs[c.j][c.i]);
            CHECK(c.p == m.p_logs[c.j][c.k]);
            CHECK(c.l == m.l_logs[c.j][c.i][c.k]);
            seen.insert({c.j, c.i, c.k});
        }
        CHECK(seen.size() == 12);
    }
}

TEST_CASE("component period matrix") {
    auto rng = make_rng(41);
    const OneMotiveSpec m = make_motive(rng, 1, 1, 1);
    const auto comps = decompose(m);
    const PeriodMatrix pm = component_period_matrix(comps[0]);

    SUBCASE("structure") {
        CHECK(pm.rows == 4);
        CHECK(pm.cols == 4);
        CHECK(pm.at(0, 0) == cplx(1.0));
        for (int i = 1; i < 4; ++i) {
            CHECK(pm.at(i, 0) == cplx(0.0));
        }
        CHECK(pm.at(3, 0) == cplx(0.0));
        CHECK(pm.at(3, 1) == cplx(0.0));
        CHECK(pm.at(3, 2) == cplx(0.0));
        CHECK(pm.at(3, 3) == two_pi_i);
        CHECK(pm.row_labels == std::vector<std::string>{"beta", "gamma_1", "gamma_2", "delta"});
        CHECK(pm.col_labels == std::vector<std::string>{"df", "omega", "eta", "xi"});
    }
    SUBCASE("entries are the closed forms") {
        const CurveData& curve = m.curves[0];
        CHECK(pm.at(1, 1) == curve.lattice.omega1());
        CHECK(pm.at(2, 1) == curve.lattice.omega2());
        CHECK(pm.at(1, 2) == curve.eta1);
        CHECK(pm.at(0, 1) == m.p_logs[0][0]);
        const ThirdKindContext ctx(curve, m.q_logs[0][0]);
        CHECK(std::abs(pm.at(1, 3) - third_kind_quasi_period(1, ctx)) == 0.0);
        CHECK(std::abs(pm.at(0, 3) - (log_f_q(m.p_logs[0][0], ctx) + m.l_logs[0][0][0])) == 0.0);
    }
    SUBCASE("determinant is +-(2 pi i)^2") {
        const cplx det = matrix_determinant(pm);
        const cplx tpi2 = two_pi_i * two_pi_i;
        CHECK(std::min(std::abs(det - tpi2), std::abs(det + tpi2)) < 1e-9 * std::abs(tpi2));
    }
    SUBCASE("p on the lattice is an entry error naming the component") {
        ComponentMotive bad = comps[0];
        bad.p = bad.curve.lattice.omega1();
        try {
            component_period_matrix(bad);
            FAIL("expected pole_error");
        } catch (const pole_error& e) {
            CHECK(std::string(e.what()).find("(j=1,i=1,k=1)") != std::string::npos);
        }
    }
}

TEST_CASE("split toric factor (q in Lambda) routes to the split formulas") {
    auto rng = make_rng(42);
    OneMotiveSpec m = make_motive(rng, 1, 1, 1);
    m.q_logs[0][0] = m.curves[0].lattice.omega1() + m.curves[0].lattice.omega2();
    const auto comps = decompose(m);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].split_toric);
    const PeriodMatrix pm = component_period_matrix(comps[0]);
    CHECK(pm.at(0, 3) == m.l_logs[0][0][0]);
    CHECK(pm.at(1, 3) == cplx(0.0));
    CHECK(pm.at(2, 3) == cplx(0.0));
    CHECK(pm.at(3, 3) == two_pi_i);
    // The full matrix accepts it as well.
    CHECK_NOTHROW((void)full_period_matrix(m));
    CHECK_NOTHROW((void)period_generators(m));
}

TEST_CASE("full period matrix, r=2 n=2 s=3") {
    auto rng = make_rng(43);
    const OneMotiveSpec m = make_motive(rng, 2, 3, 2);
    const PeriodMatrix pm = full_period_matrix(m);
    const std::size_t rn = 4;

    REQUIRE(pm.rows == 11);
    REQUIRE(pm.cols == 11);

    SUBCASE("A block is the exact identity") {
        for (std::size_t i = 0; i < rn; ++i) {
            for (std::size_t j = 0; j < rn; ++j) {
                CHECK(pm.at(i, j) == (i == j ? cplx(1.0) : cplx(0.0)));
            }
        }
    }
    SUBCASE("lower-left zero blocks are exact") {
        for (std::size_t i = rn; i < 11; ++i) {
            for (std::size_t j = 0; j < rn; ++j) {
                CHECK(pm.at(i, j) == cplx(0.0));
            }
        }
        for (std::size_t i = rn + 4; i < 11; ++i) {
            for (std::size_t j = rn; j < rn + 4; ++j) {
                CHECK(pm.at(i, j) == cplx(0.0));
            }
        }
    }
    SUBCASE("F block is exactly 2 pi i times the identity") {
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(pm.at(8 + i, 8 + j) == (i == j ? two_pi_i : cplx(0.0)));
            }
        }
    }
    SUBCASE("B and D blocks are block-diagonal per curve") {
        // Curve-1 beta rows have zeros in curve-2 omega/eta columns.
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(pm.at(k, 6) == cplx(0.0));
            CHECK(pm.at(k, 7) == cplx(0.0));
            CHECK(pm.at(2 + k, 4) == cplx(0.0));
            CHECK(pm.at(2 + k, 5) == cplx(0.0));
        }
        CHECK(pm.at(4, 6) == cplx(0.0));
        CHECK(pm.at(6, 4) == cplx(0.0));
        CHECK(pm.at(0, 4) == m.p_logs[0][0]);
        CHECK(pm.at(3, 6) == m.p_logs[1][1]);
        CHECK(pm.at(4, 4) == m.curves[0].lattice.omega1());
        CHECK(pm.at(7, 7) == m.curves[1].eta2);
    }
    SUBCASE("C and E entries agree with the component matrices") {
        for (const auto& c : decompose(m)) {
            const PeriodMatrix cm = component_period_matrix(c);
            const std::size_t brow = c.j * 2 + c.k;
            const std::size_t xcol = 8 + c.i;
            CHECK(pm.at(brow, xcol) == cm.at(0, 3));
            CHECK(pm.at(rn + 2 * c.j, xcol) == cm.at(1, 3));
            CHECK(pm.at(rn + 2 * c.j + 1, xcol) == cm.at(2, 3));
            CHECK(pm.at(brow, rn + 2 * c.j) == cm.at(0, 1));
            CHECK(pm.at(brow, rn + 2 * c.j + 1) == cm.at(0, 2));
        }
    }
    SUBCASE("labels") {
        CHECK(pm.row_labels[0] == "beta_1_1");
        CHECK(pm.row_labels[3] == "beta_2_2");
        CHECK(pm.row_labels[4] == "gamma_1_1");
        CHECK(pm.row_labels[10] == "delta_3");
        CHECK(pm.col_labels[4] == "omega_1");
        CHECK(pm.col_labels[8] == "xi_1");
    }
}

TEST_CASE("full matrix for r=n=s=1 coincides with the component matrix") {
    auto rng = make_rng(44);
    const OneMotiveSpec m = make_motive(rng, 1, 1, 1);
    const PeriodMatrix full = full_period_matrix(m);
    const PeriodMatrix comp = component_period_matrix(decompose(m)[0]);
    REQUIRE(full.rows == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(full.at(i, j) == comp.at(i, j));
        }
    }
}

TEST_CASE("torus-only degeneration n = 0") {
    auto rng = make_rng(45);
    const OneMotiveSpec m = make_motive(rng, 2, 2, 0);
    const PeriodMatrix pm = full_period_matrix(m);
    REQUIRE(pm.rows == 4);
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t t = 0; t < 2; ++t) {
            CHECK(pm.at(k, t) == (k == t ? cplx(1.0) : cplx(0.0)));
            CHECK(pm.at(2 + k, 2 + t) == (k == t ? two_pi_i : cplx(0.0)));
            CHECK(pm.at(2 + k, t) == cplx(0.0));
            CHECK(pm.at(k, 2 + t) == m.l_logs[0][t][k]);
        }
    }
}

TEST_CASE("period generator list") {
    auto rng = make_rng(46);

    SUBCASE("r = n = s = 1 has 11 labeled generators") {
        const OneMotiveSpec m = make_motive(rng, 1, 1, 1);
        const auto gens = period_generators(m);
        CHECK(gens.size() == 11);
        CHECK(gens[0].label == "1");
        CHECK(gens[1].label == "two_pi_i");
    }
    SUBCASE("count formula for (r,s,n) = (2,3,2)") {
        const OneMotiveSpec m = make_motive(rng, 2, 3, 2);
        const auto gens = period_generators(m);
        CHECK(gens.size() == 2 + 4 * 2 + 2 * 2 * 2 + 2 * 3 * 2 + 2 * 3 * 2);
        CHECK(gens.size() == 42);
    }
    SUBCASE("torus-only r = s = 1") {
        const OneMotiveSpec m = make_motive(rng, 1, 1, 0);
        const auto gens = period_generators(m);
        REQUIRE(gens.size() == 3);
        CHECK(gens[0].label == "1");
        CHECK(gens[1].label == "two_pi_i");
        CHECK(gens[2].label == "l_1_1");
    }
}

TEST_CASE("analytic entries agree with the quadrature oracle") {
    auto rng = make_rng(47);
    const OneMotiveSpec m = make_motive(rng, 1, 1, 1);
    const auto c = decompose(m)[0];
    const PeriodMatrix pm = component_period_matrix(c);
    const CurveData& curve = m.curves[0];
    const ThirdKindContext ctx(curve, c.q);

    for (int cyc = 1; cyc <= 2; ++cyc) {
        CHECK(std::abs(cycle_integral(FormKind::first(), cyc, curve).value -
                       pm.at(static_cast<std::size_t>(cyc), 1)) < 1e-6);
        CHECK(std::abs(cycle_integral(FormKind::second(), cyc, curve).value -
                       pm.at(static_cast<std::size_t>(cyc), 2)) < 1e-6);
        CHECK(dist_mod_2pii(cycle_integral(FormKind::third(), cyc, ctx).value,
                            pm.at(static_cast<std::size_t>(cyc), 3)) < 1e-6);
    }
    // delta row: the residue loop around -q gives the 2 pi i entry.
    CHECK(std::abs(residue_loop(FormKind::third(), -c.q, ctx).value - pm.at(3, 3)) < 1e-6);
}

TEST_CASE("motive shape validation") {
    auto rng = make_rng(48);
    OneMotiveSpec m = make_motive(rng, 2, 1, 1);
    m.p_logs[0].pop_back();
    CHECK_THROWS_AS((void)decompose(m), input_error);
}
