#include "ellmot/io.hpp"

#include <cstdio>
#include <sstream>

namespace ellmot::io {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) {
        throw schema_error(path, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw schema_error(path + "." + key, "missing required field");
    }
    return *it;
}

double parse_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        throw schema_error(path, "expected a number");
    }
    return j.get<double>();
}

std::size_t parse_size(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw schema_error(path, "expected a nonnegative integer");
    }
    return static_cast<std::size_t>(j.get<long long>());
}

} // namespace

cplx parse_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
        throw schema_error(path, "expected a complex number as [re, im]");
    }
    return {parse_number(j[0], path + "[0]"), parse_number(j[1], path + "[1]")};
}

mpq_class parse_rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) {
        return mpq_class(j.get<long>());
    }
    if (j.is_string()) {
        try {
            mpq_class q(j.get<std::string>());
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
            throw schema_error(path, "expected a rational like 3 or \"2/5\"");
        }
    }
    throw schema_error(path, "expected a rational (integer or \"n/d\" string)");
}

CurveData parse_curve(const json& j, const std::string& path) {
    if (!j.is_object()) {
        throw schema_error(path, "expected a curve object");
    }
    const bool has_inv = j.contains("g2") || j.contains("g3");
    const bool has_per = j.contains("omega1") || j.contains("omega2");
    if (has_inv == has_per) {
        throw schema_error(path, "give exactly one of {g2,g3} or {omega1,omega2}");
    }
    std::optional<CmDescriptor> cm;
    if (j.contains("cm")) {
        const json& c = j["cm"];
        if (!c.is_object() || !c.contains("discriminant") ||
            !c["discriminant"].is_number_integer()) {
            throw schema_error(path + ".cm", "expected {\"discriminant\": d < 0, ...}");
        }
        CmDescriptor d;
        d.discriminant = c["discriminant"].get<long long>();
        if (d.discriminant >= 0) {
            throw schema_error(path + ".cm.discriminant", "must be negative");
        }
        d.generator = c.contains("generator")
                          ? parse_complex(c["generator"], path + ".cm.generator")
                          : cm_generator_for_discriminant(d.discriminant);
        cm = d;
    }
    try {
        if (has_inv) {
            const cplx g2 = parse_complex(require_field(j, "g2", path), path + ".g2");
            const cplx g3 = parse_complex(require_field(j, "g3", path), path + ".g3");
            return curve_from_invariants(g2, g3, cm);
        }
        const cplx w1 = parse_complex(require_field(j, "omega1", path), path + ".omega1");
        const cplx w2 = parse_complex(require_field(j, "omega2", path), path + ".omega2");
        return curve_from_periods(w1, w2, cm);
    } catch (const schema_error&) {
        throw;
    } catch (const error& e) {
        throw schema_error(path, e.what());
    }
}

OneMotiveSpec parse_motive(const json& j, const std::string& path) {
    OneMotiveSpec m;
    const json& curves = require_field(j, "curves", path);
    if (!curves.is_array()) {
        throw schema_error(path + ".curves", "expected an array of curves");
    }
    m.n = curves.size();
    for (std::size_t t = 0; t < m.n; ++t) {
        m.curves.push_back(parse_curve(curves[t], path + ".curves[" + std::to_string(t) + "]"));
    }

    auto parse_matrix = [&](const char* key, std::size_t expect_rows,
                            bool rows_known) -> std::vector<std::vector<cplx>> {
        const json& a = require_field(j, key, path);
        const std::string p = path + "." + key;
        if (!a.is_array() || (rows_known && a.size() != expect_rows)) {
            throw schema_error(p, "expected an array with one row per curve");
        }
        std::vector<std::vector<cplx>> out;
        for (std::size_t row = 0; row < a.size(); ++row) {
            const std::string rp = p + "[" + std::to_string(row) + "]";
            if (!a[row].is_array()) {
                throw schema_error(rp, "expected an array of complex numbers");
            }
            std::vector<cplx> v;
            for (std::size_t col = 0; col < a[row].size(); ++col) {
                v.push_back(parse_complex(a[row][col], rp + "[" + std::to_string(col) + "]"));
            }
            out.push_back(std::move(v));
        }
        return out;
    };

    m.q_logs = parse_matrix("q_logs", m.n, true);
    m.p_logs = parse_matrix("p_logs", m.n, true);

    if (m.n > 0) {
        m.s = m.q_logs.empty() ? 0 : m.q_logs[0].size();
        m.r = m.p_logs.empty() ? 0 : m.p_logs[0].size();
    } else {
        if (!j.contains("r") || !j.contains("s")) {
            throw schema_error(path, "torus-only motive (no curves) needs explicit \"r\" and \"s\"");
        }
        m.r = parse_size(j["r"], path + ".r");
        m.s = parse_size(j["s"], path + ".s");
    }
    if (j.contains("r") && parse_size(j["r"], path + ".r") != m.r) {
        throw schema_error(path + ".r", "inconsistent with p_logs row length");
    }
    if (j.contains("s") && parse_size(j["s"], path + ".s") != m.s) {
        throw schema_error(path + ".s", "inconsistent with q_logs row length");
    }

    const json& l = require_field(j, "l_logs", path);
    if (!l.is_array()) {
        throw schema_error(path + ".l_logs", "expected an array");
    }
    for (std::size_t sl = 0; sl < l.size(); ++sl) {
        const std::string sp = path + ".l_logs[" + std::to_string(sl) + "]";
        if (!l[sl].is_array()) {
            throw schema_error(sp, "expected an s x r array");
        }
        std::vector<std::vector<cplx>> slice;
        for (std::size_t row = 0; row < l[sl].size(); ++row) {
            const std::string rp = sp + "[" + std::to_string(row) + "]";
            if (!l[sl][row].is_array()) {
                throw schema_error(rp, "expected an array of complex numbers");
            }
            std::vector<cplx> v;
            for (std::size_t col = 0; col < l[sl][row].size(); ++col) {
                v.push_back(parse_complex(l[sl][row][col], rp + "[" + std::to_string(col) + "]"));
            }
            slice.push_back(std::move(v));
        }
        m.l_logs.push_back(std::move(slice));
    }

    try {
        m.validate();
    } catch (const error& e) {
        throw schema_error(path, e.what());
    }
    return m;
}

DependenceProfile parse_profile(const json& j, const OneMotiveSpec& m, const std::string& path) {
    if (!j.is_object()) {
        throw schema_error(path, "expected a profile object");
    }
    DependenceProfile profile;

    if (j.contains("abelian_relations")) {
        const json& rels = j["abelian_relations"];
        const std::string p = path + ".abelian_relations";
        if (!rels.is_array()) {
            throw schema_error(p, "expected an array of relations");
        }
        for (std::size_t t = 0; t < rels.size(); ++t) {
            const std::string rp = p + "[" + std::to_string(t) + "]";
            const json& rel = rels[t];
            AbelianRelation ar;
            const json& jc = require_field(rel, "curve", rp);
            if (!jc.is_number_integer() || jc.get<long long>() < 1 ||
                jc.get<std::size_t>() > m.n) {
                throw schema_error(rp + ".curve", "expected a 1-based curve index");
            }
            ar.curve = jc.get<std::size_t>() - 1;
            const json& coeffs = require_field(rel, "coeffs", rp);
            if (!coeffs.is_array() || coeffs.size() != m.r + m.s) {
                throw schema_error(rp + ".coeffs", "expected r + s coefficients");
            }
            for (std::size_t c = 0; c < coeffs.size(); ++c) {
                const std::string cp = rp + ".coeffs[" + std::to_string(c) + "]";
                if (coeffs[c].is_array()) {
                    if (coeffs[c].size() != 2) {
                        throw schema_error(cp, "expected [a, b] with rationals a, b");
                    }
                    ar.coeffs.emplace_back(parse_rational(coeffs[c][0], cp + "[0]"),
                                           parse_rational(coeffs[c][1], cp + "[1]"));
                } else {
                    ar.coeffs.emplace_back(parse_rational(coeffs[c], cp));
                }
            }
            profile.abelian_relations.push_back(std::move(ar));
        }
    }

    if (m.r > 0 && m.s > 0) {
        const json& pk = require_field(j, "pairing_kernel", path);
        const std::string p = path + ".pairing_kernel";
        if (!pk.is_array() || pk.size() != m.r) {
            throw schema_error(p, "expected an r x s boolean matrix");
        }
        for (std::size_t k = 0; k < m.r; ++k) {
            const std::string rp = p + "[" + std::to_string(k) + "]";
            if (!pk[k].is_array() || pk[k].size() != m.s) {
                throw schema_error(rp, "expected s booleans");
            }
            std::vector<bool> row;
            for (std::size_t i = 0; i < m.s; ++i) {
                if (!pk[k][i].is_boolean()) {
                    throw schema_error(rp + "[" + std::to_string(i) + "]", "expected a boolean");
                }
                row.push_back(pk[k][i].get<bool>());
            }
            profile.pairing_kernel.push_back(std::move(row));
        }
    }

    auto parse_rat_rows = [&](const char* key) {
        std::vector<std::vector<mpq_class>> rows;
        if (!j.contains(key)) {
            return rows;
        }
        const json& a = j[key];
        const std::string p = path + "." + key;
        if (!a.is_array()) {
            throw schema_error(p, "expected an array of relation vectors");
        }
        for (std::size_t t = 0; t < a.size(); ++t) {
            const std::string rp = p + "[" + std::to_string(t) + "]";
            if (!a[t].is_array()) {
                throw schema_error(rp, "expected an array of rationals");
            }
            std::vector<mpq_class> row;
            for (std::size_t c = 0; c < a[t].size(); ++c) {
                row.push_back(parse_rational(a[t][c], rp + "[" + std::to_string(c) + "]"));
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    profile.pairing_relations = parse_rat_rows("pairing_relations");
    profile.psi_relations = parse_rat_rows("psi_relations");
    return profile;
}

// ---- emission ----

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string jstr(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string jcplx(const cplx& z) {
    return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string period_matrix_json(const PeriodMatrix& m) {
    std::ostringstream o;
    o << "{\"rows\":" << m.rows << ",\"cols\":" << m.cols << ",\"row_labels\":[";
    for (std::size_t i = 0; i < m.row_labels.size(); ++i) {
        o << (i ? "," : "") << jstr(m.row_labels[i]);
    }
    o << "],\"col_labels\":[";
    for (std::size_t i = 0; i < m.col_labels.size(); ++i) {
        o << (i ? "," : "") << jstr(m.col_labels[i]);
    }
    o << "],\"entries\":[";
    for (std::size_t i = 0; i < m.rows; ++i) {
        o << (i ? "," : "") << "[";
        for (std::size_t j = 0; j < m.cols; ++j) {
            o << (j ? "," : "") << jcplx(m.at(i, j));
        }
        o << "]";
    }
    o << "]}\n";
    return o.str();
}

std::string period_matrix_csv(const PeriodMatrix& m) {
    std::ostringstream o;
    o << "row";
    for (const auto& c : m.col_labels) {
        o << "," << csv_cell(c + "_re") << "," << csv_cell(c + "_im");
    }
    o << "\n";
    for (std::size_t i = 0; i < m.rows; ++i) {
        o << csv_cell(m.row_labels[i]);
        for (std::size_t j = 0; j < m.cols; ++j) {
            o << "," << format_double(m.at(i, j).real()) << ","
              << format_double(m.at(i, j).imag());
        }
        o << "\n";
    }
    return o.str();
}

std::string galois_dims_json(const GaloisDims& d, bool deficient) {
    std::ostringstream o;
    o << "{\"dim_reductive\":" << d.dim_reductive << ",\"dim_b\":" << d.dim_b
      << ",\"dim_z1\":" << d.dim_z1 << ",\"dim_z_over_z1\":" << d.dim_z_over_z1
      << ",\"dim_ur\":" << d.dim_ur << ",\"dim_total\":" << d.dim_total
      << ",\"deficient\":" << (deficient ? "true" : "false") << "}\n";
    return o.str();
}

std::string galois_dims_csv(const GaloisDims& d, bool deficient) {
    std::ostringstream o;
    o << "dim_reductive,dim_b,dim_z1,dim_z_over_z1,dim_ur,dim_total,deficient\n";
    o << d.dim_reductive << "," << d.dim_b << "," << d.dim_z1 << "," << d.dim_z_over_z1 << ","
      << d.dim_ur << "," << d.dim_total << "," << (deficient ? "true" : "false") << "\n";
    return o.str();
}

std::string case_table_json(const std::vector<CaseTableRow>& rows) {
    std::ostringstream o;
    o << "{\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        o << (i ? "," : "") << "{\"label\":" << jstr(rows[i].label)
          << ",\"dim_ur\":" << rows[i].dim_ur << ",\"dim_total_cm\":" << rows[i].dim_total_cm
          << ",\"dim_total_noncm\":" << rows[i].dim_total_noncm << "}";
    }
    o << "]}\n";
    return o.str();
}

std::string case_table_csv(const std::vector<CaseTableRow>& rows) {
    std::ostringstream o;
    o << "label,dim_ur,dim_total_cm,dim_total_noncm\n";
    for (const auto& r : rows) {
        o << csv_cell(r.label) << "," << r.dim_ur << "," << r.dim_total_cm << ","
          << r.dim_total_noncm << "\n";
    }
    return o.str();
}

std::string conjecture_report_json(const ConjectureReport& r) {
    std::ostringstream o;
    o << "{\"inequality\":" << jstr(r.inequality_text) << ",\"rhs\":" << r.rhs
      << ",\"lhs_count\":" << r.lhs_generators.size() << ",\"dims\":{\"dim_reductive\":"
      << r.dims.dim_reductive << ",\"dim_ur\":" << r.dims.dim_ur << ",\"dim_total\":"
      << r.dims.dim_total << "},\"lhs_generators\":[";
    for (std::size_t i = 0; i < r.lhs_generators.size(); ++i) {
        o << (i ? "," : "") << "{\"label\":" << jstr(r.lhs_generators[i].label)
          << ",\"value\":" << jcplx(r.lhs_generators[i].value) << "}";
    }
    o << "]}\n";
    return o.str();
}

std::string conjecture_report_csv(const ConjectureReport& r) {
    std::ostringstream o;
    o << "label,value_re,value_im\n";
    for (const auto& g : r.lhs_generators) {
        o << csv_cell(g.label) << "," << format_double(g.value.real()) << ","
          << format_double(g.value.imag()) << "\n";
    }
    o << csv_cell("rhs:dim_galois") << "," << r.rhs << ",0\n";
    return o.str();
}

std::string residuals_json(const std::vector<RelationResidual>& residuals) {
    std::ostringstream o;
    bool all_ok = true;
    o << "{\"residuals\":[";
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        const auto& r = residuals[i];
        all_ok = all_ok && !r.flagged;
        o << (i ? "," : "") << "{\"curve\":" << r.curve + 1 << ",\"relation\":" << r.relation_index
          << ",\"residual\":" << format_double(r.residual)
          << ",\"flagged\":" << (r.flagged ? "true" : "false") << "}";
    }
    o << "],\"all_ok\":" << (all_ok ? "true" : "false") << "}\n";
    return o.str();
}

std::string residuals_csv(const std::vector<RelationResidual>& residuals) {
    std::ostringstream o;
    o << "curve,relation,residual,flagged\n";
    for (const auto& r : residuals) {
        o << r.curve + 1 << "," << r.relation_index << "," << format_double(r.residual) << ","
          << (r.flagged ? "true" : "false") << "\n";
    }
    return o.str();
}

std::string check_results_json(const std::vector<CheckResult>& checks) {
    std::ostringstream o;
    o << "{\"checks\":[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        o << (i ? "," : "") << "{\"name\":" << jstr(c.name)
          << ",\"max_residual\":" << format_double(c.max_residual)
          << ",\"tolerance\":" << format_double(c.tolerance)
          << ",\"pass\":" << (c.pass ? "true" : "false") << "}";
    }
    o << "],\"all_pass\":" << (all_pass(checks) ? "true" : "false") << "}\n";
    return o.str();
}

std::string check_results_csv(const std::vector<CheckResult>& checks) {
    std::ostringstream o;
    o << "name,max_residual,tolerance,pass\n";
    for (const auto& c : checks) {
        o << csv_cell(c.name) << "," << format_double(c.max_residual) << ","
          << format_double(c.tolerance) << "," << (c.pass ? "true" : "false") << "\n";
    }
    return o.str();
}

} // namespace ellmot::io
