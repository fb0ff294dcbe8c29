#include "ellmot/one_motive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ellmot {

namespace {

bool is_split_toric(const CurveData& curve, const cplx& q) {
    return curve.lattice.distance(q) < tol::pole_reject;
}

std::string idx3(std::size_t j, std::size_t i, std::size_t k) {
    std::ostringstream oss;
    oss << "(j=" << j + 1 << ",i=" << i + 1 << ",k=" << k + 1 << ")";
    return oss.str();
}

void check_p_entry(const ComponentMotive& c) {
    if (c.curve.lattice.distance(c.p) < tol::pole_reject) {
        throw pole_error("period matrix entry at " + idx3(c.j, c.i, c.k) +
                         ": p lies on the period lattice (P = 0)");
    }
}

} // namespace

void OneMotiveSpec::validate() const {
    if (curves.size() != n) {
        throw input_error("motive: curves array must have n entries");
    }
    auto check2 = [&](const std::vector<std::vector<cplx>>& a, std::size_t inner,
                      const char* name) {
        if (a.size() != n) {
            throw input_error(std::string("motive: ") + name + " must have n rows");
        }
        for (const auto& row : a) {
            if (row.size() != inner) {
                throw input_error(std::string("motive: inconsistent row length in ") + name);
            }
        }
    };
    check2(q_logs, s, "q_logs");
    check2(p_logs, r, "p_logs");
    const std::size_t slices = (n == 0) ? ((r > 0 && s > 0) ? 1 : 0) : n;
    if (l_logs.size() != slices) {
        throw input_error("motive: l_logs must have n slices (one slice when n = 0)");
    }
    for (const auto& slice : l_logs) {
        if (slice.size() != s) {
            throw input_error("motive: each l_logs slice must have s rows");
        }
        for (const auto& row : slice) {
            if (row.size() != r) {
                throw input_error("motive: each l_logs row must have r entries");
            }
        }
    }
}

std::vector<ComponentMotive> decompose(const OneMotiveSpec& m) {
    m.validate();
    std::vector<ComponentMotive> out;
    out.reserve(m.r * m.s * m.n);
    for (std::size_t j = 0; j < m.n; ++j) {
        for (std::size_t i = 0; i < m.s; ++i) {
            for (std::size_t k = 0; k < m.r; ++k) {
                ComponentMotive c{j, i, k, m.curves[j], m.q_logs[j][i], m.p_logs[j][k],
                                  m.l_logs[j][i][k], false};
                c.split_toric = is_split_toric(c.curve, c.q);
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

PeriodMatrix component_period_matrix(const ComponentMotive& c) {
    check_p_entry(c);
    PeriodMatrix pm;
    pm.rows = pm.cols = 4;
    pm.entries.assign(16, cplx(0.0));
    pm.row_labels = {"beta", "gamma_1", "gamma_2", "delta"};
    pm.col_labels = {"df", "omega", "eta", "xi"};

    const auto& b = c.curve.lattice;
    pm.at(0, 0) = cplx(1.0);
    pm.at(0, 1) = c.p;
    pm.at(0, 2) = zeta(c.p, c.curve);
    pm.at(1, 1) = b.omega1();
    pm.at(1, 2) = c.curve.eta1;
    pm.at(2, 1) = b.omega2();
    pm.at(2, 2) = c.curve.eta2;
    pm.at(3, 3) = two_pi_i;
    if (c.split_toric) {
        pm.at(0, 3) = c.l;
    } else {
        const ThirdKindContext ctx(c.curve, c.q);
        pm.at(0, 3) = log_f_q(c.p, ctx) + c.l;
        pm.at(1, 3) = third_kind_quasi_period(1, ctx);
        pm.at(2, 3) = third_kind_quasi_period(2, ctx);
    }
    return pm;
}

PeriodMatrix full_period_matrix(const OneMotiveSpec& m) {
    m.validate();
    PeriodMatrix pm;

    if (m.n == 0) {
        pm.rows = pm.cols = m.r + m.s;
        pm.entries.assign(pm.rows * pm.cols, cplx(0.0));
        for (std::size_t k = 0; k < m.r; ++k) {
            pm.row_labels.push_back("beta_" + std::to_string(k + 1));
            pm.col_labels.push_back("df_" + std::to_string(k + 1));
            pm.at(k, k) = cplx(1.0);
        }
        for (std::size_t i = 0; i < m.s; ++i) {
            pm.row_labels.push_back("delta_" + std::to_string(i + 1));
            pm.col_labels.push_back("xi_" + std::to_string(i + 1));
            pm.at(m.r + i, m.r + i) = two_pi_i;
            for (std::size_t k = 0; k < m.r; ++k) {
                pm.at(k, m.r + i) = m.l_logs[0][i][k];
            }
        }
        return pm;
    }

    const std::size_t rn = m.r * m.n;
    pm.rows = pm.cols = rn + 2 * m.n + m.s;
    pm.entries.assign(pm.rows * pm.cols, cplx(0.0));

    for (std::size_t j = 0; j < m.n; ++j) {
        for (std::size_t k = 0; k < m.r; ++k) {
            const std::string suffix = std::to_string(j + 1) + "_" + std::to_string(k + 1);
            pm.row_labels.push_back("beta_" + suffix);
            pm.col_labels.push_back("df_" + suffix);
        }
    }
    for (std::size_t j = 0; j < m.n; ++j) {
        for (int c = 1; c <= 2; ++c) {
            pm.row_labels.push_back("gamma_" + std::to_string(j + 1) + "_" + std::to_string(c));
        }
        pm.col_labels.push_back("omega_" + std::to_string(j + 1));
        pm.col_labels.push_back("eta_" + std::to_string(j + 1));
    }
    for (std::size_t i = 0; i < m.s; ++i) {
        pm.row_labels.push_back("delta_" + std::to_string(i + 1));
        pm.col_labels.push_back("xi_" + std::to_string(i + 1));
    }

    const auto beta_row = [&](std::size_t j, std::size_t k) { return j * m.r + k; };
    const auto gamma_row = [&](std::size_t j, int c) {
        return rn + 2 * j + static_cast<std::size_t>(c - 1);
    };
    const auto omega_col = [&](std::size_t j) { return rn + 2 * j; };
    const auto xi_col = [&](std::size_t i) { return rn + 2 * m.n + i; };

    // A block (exact identity).
    for (std::size_t t = 0; t < rn; ++t) {
        pm.at(t, t) = cplx(1.0);
    }
    // F block (exact 2 pi i identity).
    for (std::size_t i = 0; i < m.s; ++i) {
        pm.at(rn + 2 * m.n + i, xi_col(i)) = two_pi_i;
    }
    // B and D blocks.
    for (std::size_t j = 0; j < m.n; ++j) {
        const CurveData& curve = m.curves[j];
        for (std::size_t k = 0; k < m.r; ++k) {
            if (curve.lattice.distance(m.p_logs[j][k]) < tol::pole_reject) {
                throw pole_error("period matrix entry at (j=" + std::to_string(j + 1) +
                                 ",k=" + std::to_string(k + 1) +
                                 "): p lies on the period lattice (P = 0)");
            }
            pm.at(beta_row(j, k), omega_col(j)) = m.p_logs[j][k];
            pm.at(beta_row(j, k), omega_col(j) + 1) = zeta(m.p_logs[j][k], curve);
        }
        pm.at(gamma_row(j, 1), omega_col(j)) = curve.lattice.omega1();
        pm.at(gamma_row(j, 1), omega_col(j) + 1) = curve.eta1;
        pm.at(gamma_row(j, 2), omega_col(j)) = curve.lattice.omega2();
        pm.at(gamma_row(j, 2), omega_col(j) + 1) = curve.eta2;
    }
    // C and E blocks.
    for (std::size_t j = 0; j < m.n; ++j) {
        const CurveData& curve = m.curves[j];
        for (std::size_t i = 0; i < m.s; ++i) {
            if (is_split_toric(curve, m.q_logs[j][i])) {
                for (std::size_t k = 0; k < m.r; ++k) {
                    pm.at(beta_row(j, k), xi_col(i)) = m.l_logs[j][i][k];
                }
                continue;
            }
            const ThirdKindContext ctx(curve, m.q_logs[j][i]);
            for (std::size_t k = 0; k < m.r; ++k) {
                pm.at(beta_row(j, k), xi_col(i)) =
                    log_f_q(m.p_logs[j][k], ctx) + m.l_logs[j][i][k];
            }
            pm.at(gamma_row(j, 1), xi_col(i)) = third_kind_quasi_period(1, ctx);
            pm.at(gamma_row(j, 2), xi_col(i)) = third_kind_quasi_period(2, ctx);
        }
    }
    return pm;
}

std::vector<LabeledValue> period_generators(const OneMotiveSpec& m) {
    m.validate();
    std::vector<LabeledValue> out;
    out.push_back({"1", cplx(1.0)});
    out.push_back({"two_pi_i", two_pi_i});

    const auto tag = [](std::size_t a) { return std::to_string(a + 1); };

    for (std::size_t j = 0; j < m.n; ++j) {
        const CurveData& curve = m.curves[j];
        out.push_back({"omega_" + tag(j) + "_1", curve.lattice.omega1()});
        out.push_back({"omega_" + tag(j) + "_2", curve.lattice.omega2()});
        out.push_back({"eta_" + tag(j) + "_1", curve.eta1});
        out.push_back({"eta_" + tag(j) + "_2", curve.eta2});
    }
    for (std::size_t j = 0; j < m.n; ++j) {
        for (std::size_t k = 0; k < m.r; ++k) {
            out.push_back({"p_" + tag(j) + "_" + tag(k), m.p_logs[j][k]});
            out.push_back({"zeta_p_" + tag(j) + "_" + tag(k), zeta(m.p_logs[j][k], m.curves[j])});
        }
    }
    for (std::size_t j = 0; j < m.n; ++j) {
        for (std::size_t i = 0; i < m.s; ++i) {
            if (is_split_toric(m.curves[j], m.q_logs[j][i])) {
                out.push_back({"xi_" + tag(j) + "_" + tag(i) + "_1", cplx(0.0)});
                out.push_back({"xi_" + tag(j) + "_" + tag(i) + "_2", cplx(0.0)});
                continue;
            }
            const ThirdKindContext ctx(m.curves[j], m.q_logs[j][i]);
            out.push_back(
                {"xi_" + tag(j) + "_" + tag(i) + "_1", third_kind_quasi_period(1, ctx)});
            out.push_back(
                {"xi_" + tag(j) + "_" + tag(i) + "_2", third_kind_quasi_period(2, ctx)});
        }
    }
    for (std::size_t j = 0; j < m.n; ++j) {
        for (std::size_t i = 0; i < m.s; ++i) {
            const bool split = is_split_toric(m.curves[j], m.q_logs[j][i]);
            for (std::size_t k = 0; k < m.r; ++k) {
                const std::string label = "logf_" + tag(j) + "_" + tag(i) + "_" + tag(k);
                if (split) {
                    out.push_back({label, m.l_logs[j][i][k]});
                } else {
                    const ThirdKindContext ctx(m.curves[j], m.q_logs[j][i]);
                    out.push_back({label, log_f_q(m.p_logs[j][k], ctx) + m.l_logs[j][i][k]});
                }
            }
        }
    }
    if (m.n == 0) {
        for (std::size_t i = 0; i < m.s; ++i) {
            for (std::size_t k = 0; k < m.r; ++k) {
                out.push_back({"l_" + tag(i) + "_" + tag(k), m.l_logs[0][i][k]});
            }
        }
    }

    // Deduplicate numerically identical values, keeping the first label.
    std::vector<LabeledValue> dedup;
    for (const auto& lv : out) {
        const bool seen = std::any_of(dedup.begin(), dedup.end(), [&](const LabeledValue& d) {
            return d.value == lv.value;
        });
        if (!seen) {
            dedup.push_back(lv);
        }
    }
    return dedup;
}

cplx matrix_determinant(const PeriodMatrix& m) {
    if (m.rows != m.cols) {
        throw input_error("determinant of a non-square matrix");
    }
    std::vector<cplx> a = m.entries;
    const std::size_t nn = m.rows;
    cplx det(1.0);
    for (std::size_t col = 0; col < nn; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < nn; ++row) {
            if (std::abs(a[row * nn + col]) > std::abs(a[pivot * nn + col])) {
                pivot = row;
            }
        }
        if (std::abs(a[pivot * nn + col]) == 0.0) {
            return cplx(0.0);
        }
        if (pivot != col) {
            for (std::size_t t = 0; t < nn; ++t) {
                std::swap(a[pivot * nn + t], a[col * nn + t]);
            }
            det = -det;
        }
        det *= a[col * nn + col];
        for (std::size_t row = col + 1; row < nn; ++row) {
            const cplx f = a[row * nn + col] / a[col * nn + col];
            for (std::size_t t = col; t < nn; ++t) {
                a[row * nn + t] -= f * a[col * nn + t];
            }
        }
    }
    return det;
}

} // namespace ellmot
