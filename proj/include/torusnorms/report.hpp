#pragma once

/*
 * Report emission for check runs.  CSV keeps the fixed portable column set;
 * JSON is its faithful superset carrying the error budgets, skip reasons
 * and near-fail polynomial dumps.  Doubles are printed with %.17g (CSV) or
 * shortest-round-trip (JSON), so identical runs serialize byte-identically
 * and reports parse back without loss.
 */

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "torusnorms/checks.hpp"

namespace torusnorms {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string params_to_string(const std::map<std::string, double>& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ';';
        out += k;
        out += '=';
        out += format_g17(v);
    }
    return out;
}

namespace reportdetail {

inline std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (const std::string& s : parts) {
        if (!out.empty()) out += sep;
        out += s;
    }
    return out;
}

}  // namespace reportdetail

inline nlohmann::json check_to_json(const TheoremCheck& c) {
    nlohmann::json j;
    j["theorem_id"] = c.theorem_id;
    j["params"] = c.params;
    j["corpus_index"] = c.corpus_index;
    j["variant"] = c.variant;
    j["skipped"] = c.skipped;
    j["skip_reason"] = c.skip_reason;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["ratio"] = c.ratio;
    j["slack"] = c.slack;
    j["error_sum"] = c.error_sum;
    j["pass"] = c.pass;
    j["warning"] = c.warning;
    j["methods"] = c.methods;
    j["witnesses"] = c.witnesses;
    j["near_fail"] = c.near_fail;
    return j;
}

inline TheoremCheck check_from_json(const nlohmann::json& j) {
    TheoremCheck c;
    c.theorem_id = j.at("theorem_id").get<std::string>();
    c.params = j.at("params").get<std::map<std::string, double>>();
    c.corpus_index = j.at("corpus_index").get<std::size_t>();
    c.variant = j.at("variant").get<std::string>();
    c.skipped = j.at("skipped").get<bool>();
    c.skip_reason = j.at("skip_reason").get<std::string>();
    c.lhs = j.at("lhs").get<double>();
    c.rhs = j.at("rhs").get<double>();
    c.ratio = j.at("ratio").get<double>();
    c.slack = j.at("slack").get<double>();
    c.error_sum = j.at("error_sum").get<double>();
    c.pass = j.at("pass").get<bool>();
    c.warning = j.at("warning").get<bool>();
    c.methods = j.at("methods").get<std::vector<std::string>>();
    c.witnesses = j.at("witnesses").get<std::vector<std::string>>();
    c.near_fail = j.at("near_fail");
    return c;
}

inline nlohmann::json run_to_json(const CheckRun& r) {
    nlohmann::json j;
    j["theorem_id"] = r.theorem_id;
    j["params"] = r.params;
    j["corpus_size"] = r.corpus_size;
    j["checked"] = r.checked;
    j["skipped"] = r.skipped;
    j["all_pass"] = r.all_pass;
    j["all_skipped"] = r.all_skipped;
    nlohmann::json arr = nlohmann::json::array();
    for (const TheoremCheck& c : r.checks) arr.push_back(check_to_json(c));
    j["checks"] = std::move(arr);
    return j;
}

inline CheckRun run_from_json(const nlohmann::json& j) {
    CheckRun r;
    r.theorem_id = j.at("theorem_id").get<std::string>();
    r.params = j.at("params").get<std::map<std::string, double>>();
    r.corpus_size = j.at("corpus_size").get<std::size_t>();
    r.checked = j.at("checked").get<std::size_t>();
    r.skipped = j.at("skipped").get<std::size_t>();
    r.all_pass = j.at("all_pass").get<bool>();
    r.all_skipped = j.at("all_skipped").get<bool>();
    for (const auto& jc : j.at("checks")) r.checks.push_back(check_from_json(jc));
    return r;
}

inline const char* kCsvHeader = "theorem_id,params,lhs,rhs,ratio,pass,methods,witness";

/// One CSV row per check; skipped rows leave the numeric cells empty and set
/// the pass cell to "skipped".
inline std::string check_to_csv_row(const TheoremCheck& c) {
    std::string row = c.theorem_id;
    row += ',';
    row += params_to_string(c.params);
    row += ',';
    if (!c.skipped) {
        row += format_g17(c.lhs);
        row += ',';
        row += format_g17(c.rhs);
        row += ',';
        row += format_g17(c.ratio);
        row += ',';
        row += c.pass ? "true" : "false";
    } else {
        row += ",,,skipped";
    }
    row += ',';
    row += reportdetail::join(c.methods, '|');
    row += ',';
    row += reportdetail::join(c.witnesses, '|');
    return row;
}

inline std::string runs_to_csv(const std::vector<CheckRun>& runs) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const CheckRun& r : runs)
        for (const TheoremCheck& c : r.checks) {
            out += check_to_csv_row(c);
            out += '\n';
        }
    return out;
}

inline nlohmann::json runs_to_json(const std::vector<CheckRun>& runs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckRun& r : runs) arr.push_back(run_to_json(r));
    return nlohmann::json{{"runs", std::move(arr)}};
}

/// Writes the runs to `path` as "csv" or "json".  I/O problems carry the
/// path in the error message.
inline void emit_report(const std::vector<CheckRun>& runs, const std::string& format,
                        const std::string& path) {
    if (runs.empty()) throw std::invalid_argument("emit_report: no check runs");
    std::string payload;
    if (format == "csv")
        payload = runs_to_csv(runs);
    else if (format == "json")
        payload = runs_to_json(runs).dump(2) + "\n";
    else
        throw std::invalid_argument("emit_report: unknown format " + format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_report: cannot open " + path);
    out << payload;
    out.flush();
    if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

inline void emit_report(const CheckRun& run, const std::string& format,
                        const std::string& path) {
    emit_report(std::vector<CheckRun>{run}, format, path);
}

inline nlohmann::json scan_to_json(const ScanTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ScanRow& r : t.rows) {
        rows.push_back(nlohmann::json{{"params", r.params},
                                      {"value", r.value},
                                      {"reference", r.reference},
                                      {"note", r.note}});
    }
    return nlohmann::json{{"family", t.family},
                          {"value_name", t.value_name},
                          {"reference_name", t.reference_name},
                          {"rows", std::move(rows)}};
}

inline std::string scan_to_csv(const ScanTable& t) {
    std::string out = "family,params,";
    out += t.value_name + ',' + t.reference_name + ",note\n";
    for (const ScanRow& r : t.rows) {
        out += t.family;
        out += ',';
        out += params_to_string(r.params);
        out += ',';
        out += format_g17(r.value);
        out += ',';
        out += format_g17(r.reference);
        out += ',';
        out += r.note;
        out += '\n';
    }
    return out;
}

}  // namespace torusnorms
