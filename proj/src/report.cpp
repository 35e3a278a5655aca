#include "blowup/report.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "blowup/errors.hpp"

namespace blowup {

using nlohmann::ordered_json;

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw InputError("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

// NaN and infinities become null in JSON.
ordered_json number(double value) {
    if (!std::isfinite(value)) return nullptr;
    return value;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

class KeyValueTable {
public:
    void add(const std::string& key, const std::string& value) {
        out_ << key << ',' << value << '\n';
    }
    void add(const std::string& key, double value) { add(key, format_number(value)); }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

}  // namespace

std::string format_validation(const ValidationReport& report, OutputFormat format) {
    if (format == OutputFormat::Json) {
        ordered_json j;
        j["result"] = report.pass ? "pass" : "fail";
        j["violations"] = report.violations;
        j["warnings"] = report.warnings;
        return dump(j);
    }
    std::ostringstream out;
    out << "result," << (report.pass ? "pass" : "fail") << '\n';
    for (const auto& v : report.violations) out << "violation," << v << '\n';
    for (const auto& w : report.warnings) out << "warning," << w << '\n';
    return out.str();
}

std::string format_bound(const LifespanBound& b, OutputFormat format) {
    if (format == OutputFormat::Json) {
        ordered_json j;
        j["branch"] = to_string(b.branch);
        j["tie"] = b.tie;
        j["mode"] = to_string(b.mode);
        j["theta"] = number(b.theta);
        j["lifespan_exponent"] = number(b.constants.lifespan_exponent);
        j["C"] = number(b.constants.C);
        j["D"] = number(b.constants.D);
        j["R_inf"] = number(b.constants.r_infinity);
        j["product_value"] = number(b.product_value);
        j["formula_value"] = number(b.formula_value);
        j["log_T_bound"] = number(b.log_T_bound);
        j["T_bound"] = number(b.T_bound);
        return dump(j);
    }
    KeyValueTable t;
    t.add("branch", std::string(to_string(b.branch)));
    t.add("tie", b.tie ? "true" : "false");
    t.add("mode", std::string(to_string(b.mode)));
    t.add("theta", b.theta);
    t.add("lifespan_exponent", b.constants.lifespan_exponent);
    t.add("C", b.constants.C);
    t.add("D", b.constants.D);
    t.add("R_inf", b.constants.r_infinity);
    t.add("product_value", b.product_value);
    t.add("formula_value", b.formula_value);
    t.add("log_T_bound", b.log_T_bound);
    t.add("T_bound", b.T_bound);
    return t.str();
}

std::string format_frames(const std::vector<Frame>& exact, const std::vector<Frame>& closed,
                          OutputFormat format) {
    if (exact.size() != closed.size()) throw InputError("format_frames: length mismatch");
    if (format == OutputFormat::Json) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < exact.size(); ++i) {
            ordered_json r;
            r["j"] = exact[i].j;
            r["b_j"] = number(exact[i].loglog_exponent);
            r["c_j"] = number(exact[i].slicedlog_exponent);
            r["R_j"] = number(exact[i].slice_radius);
            r["log_A_exact"] = number(exact[i].log_amplitude);
            r["log_A_closed_form"] = number(closed[i].log_amplitude);
            rows.push_back(std::move(r));
        }
        return dump(rows);
    }
    std::ostringstream out;
    out << "j,b_j,c_j,R_j,log_A_exact,log_A_closed_form\n";
    for (std::size_t i = 0; i < exact.size(); ++i) {
        out << exact[i].j << ',' << format_number(exact[i].loglog_exponent) << ','
            << format_number(exact[i].slicedlog_exponent) << ','
            << format_number(exact[i].slice_radius) << ','
            << format_number(exact[i].log_amplitude) << ','
            << format_number(closed[i].log_amplitude) << '\n';
    }
    return out.str();
}

std::string format_solution_summary(const Solution& s, const BlowupEstimate* estimate,
                                    double log_T_bound, OutputFormat format) {
    const bool blew_up = s.status == SolveStatus::BlewUp;
    const double log_T = estimate ? estimate->log_T_num : s.log_T_num;
    const double margin = blew_up ? log_T_bound - log_T : std::nan("");
    if (format == OutputFormat::Json) {
        ordered_json j;
        j["status"] = blew_up ? "blew_up" : "survived";
        j["log_T_num"] = number(log_T);
        j["T_num"] = number(blew_up ? std::exp(log_T) : std::nan(""));
        j["log_T_bound"] = number(log_T_bound);
        j["margin"] = number(margin);
        j["blowup_node"] = s.blowup_node;
        j["horizon"] = number(s.horizon);
        j["h"] = number(s.grid.h);
        j["cap"] = number(s.cap);
        j["forcing_dominated"] = s.forcing_dominated;
        j["max_growth_ratio"] = number(s.max_growth_ratio);
        j["max_corrector_change"] = number(s.max_corrector_change);
        if (estimate) {
            ordered_json levels = ordered_json::array();
            for (std::size_t i = 0; i < estimate->log_T_levels.size(); ++i) {
                levels.push_back({{"h", estimate->h_levels[i]},
                                  {"log_T_num", number(estimate->log_T_levels[i])}});
            }
            j["levels"] = levels;
            j["converged"] = estimate->converged;
            j["note"] = estimate->note;
        }
        return dump(j);
    }
    KeyValueTable t;
    t.add("status", blew_up ? "blew_up" : "survived");
    t.add("log_T_num", log_T);
    t.add("T_num", blew_up ? std::exp(log_T) : std::nan(""));
    t.add("log_T_bound", log_T_bound);
    t.add("margin", margin);
    t.add("blowup_node", std::to_string(s.blowup_node));
    t.add("horizon", s.horizon);
    t.add("h", s.grid.h);
    t.add("cap", s.cap);
    t.add("forcing_dominated", s.forcing_dominated ? "true" : "false");
    t.add("max_growth_ratio", s.max_growth_ratio);
    t.add("max_corrector_change", s.max_corrector_change);
    if (estimate) {
        for (std::size_t i = 0; i < estimate->log_T_levels.size(); ++i) {
            t.add("level_" + std::to_string(i) + "_h", estimate->h_levels[i]);
            t.add("level_" + std::to_string(i) + "_log_T_num", estimate->log_T_levels[i]);
        }
        t.add("converged", estimate->converged ? "true" : "false");
        if (!estimate->note.empty()) t.add("note", estimate->note);
    }
    return t.str();
}

std::string format_trace(const Solution& s) {
    std::ostringstream out;
    out << "t,sigma,F,H,I,J\n";
    for (Eigen::Index k = 0; k < s.H.size(); ++k) {
        out << format_number(s.t(k)) << ',' << format_number(s.sigma(k)) << ','
            << format_number(s.forcing(k)) << ',' << format_number(s.H(k)) << ','
            << format_number(s.inner(k)) << ',' << format_number(s.outer(k)) << '\n';
    }
    return out.str();
}

std::string format_audit(const std::vector<CheckReport>& reports, OutputFormat format) {
    if (format == OutputFormat::Json) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : reports) {
            ordered_json row;
            row["check"] = r.check;
            row["j"] = r.j;
            row["pass"] = r.pass;
            row["worst_margin"] = number(r.worst_margin);
            row["samples_skipped"] = r.skipped;
            row["checked"] = r.checked;
            row["trivially_dominated"] = r.trivially_dominated;
            rows.push_back(std::move(row));
        }
        return dump(rows);
    }
    std::ostringstream out;
    out << "check,j,pass,worst_margin,samples_skipped,checked,trivially_dominated\n";
    for (const auto& r : reports) {
        out << r.check << ',' << r.j << ',' << (r.pass ? "pass" : "fail") << ','
            << format_number(r.worst_margin) << ',' << r.skipped << ',' << r.checked << ','
            << r.trivially_dominated << '\n';
    }
    return out.str();
}

std::string format_sweep(const std::vector<SweepRecord>& records, OutputFormat format) {
    if (format == OutputFormat::Json) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : records) {
            ordered_json row;
            row["A"] = number(r.A);
            row["p"] = number(r.params.p);
            row["B"] = number(r.params.B);
            row["R"] = number(r.params.R);
            row["theta"] = number(r.theta);
            row["branch"] = to_string(r.branch);
            row["log_T_bound"] = number(r.log_T_bound);
            row["log_T_num"] = number(r.log_T_num);
            row["margin"] = number(r.margin);
            row["h"] = number(r.h);
            row["cap"] = number(r.cap);
            row["converged"] = r.converged;
            rows.push_back(std::move(row));
        }
        return dump(rows);
    }
    std::ostringstream out;
    out << "A,p,B,R,theta,branch,log_T_bound,log_T_num,margin,h,cap,converged\n";
    for (const auto& r : records) {
        out << format_number(r.A) << ',' << format_number(r.params.p) << ','
            << format_number(r.params.B) << ',' << format_number(r.params.R) << ','
            << format_number(r.theta) << ',' << to_string(r.branch) << ','
            << format_number(r.log_T_bound) << ',' << format_number(r.log_T_num) << ','
            << format_number(r.margin) << ',' << format_number(r.h) << ','
            << format_number(r.cap) << ',' << (r.converged ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace blowup
