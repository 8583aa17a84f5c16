#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitsamp/errors.hpp"
#include "splitsamp/mechanism.hpp"
#include "splitsamp/plan.hpp"
#include "splitsamp/reconstruct.hpp"
#include "splitsamp/simulate.hpp"

namespace splitsamp {

// Fixed-format float serialization: round-trippable and byte-stable.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --- Plan JSON --------------------------------------------------------------
// Boundaries are derived on load, never stored.

inline nlohmann::json plan_to_json(const ShiftingPlan& plan) {
    nlohmann::json j;
    j["S"] = plan.S;
    j["M"] = plan.M;
    auto support = nlohmann::json::array();
    for (const auto& [lo, hi] : plan.support.dims) support.push_back({lo, hi});
    j["support"] = support;
    switch (plan.representative) {
        case Representative::midpoint: j["representatives"] = "midpoint"; break;
        case Representative::left_edge: j["representatives"] = "left"; break;
        case Representative::custom: j["representatives"] = plan.custom_representatives; break;
    }
    return j;
}

inline ShiftingPlan plan_from_json(const nlohmann::json& j) {
    if (!j.contains("S") || !j.contains("M") || !j.contains("support"))
        throw data_error("plan JSON must contain S, M and support");
    SupportBox box;
    for (const auto& dim : j.at("support"))
        box.dims.emplace_back(dim.at(0).get<double>(), dim.at(1).get<double>());
    Representative rep = Representative::midpoint;
    std::vector<std::vector<double>> custom;
    if (j.contains("representatives")) {
        const auto& r = j.at("representatives");
        if (r.is_string()) {
            const auto tag = r.get<std::string>();
            if (tag == "midpoint") rep = Representative::midpoint;
            else if (tag == "left") rep = Representative::left_edge;
            else throw data_error("unknown representatives tag: " + tag);
        } else {
            rep = Representative::custom;
            custom = r.get<std::vector<std::vector<double>>>();
        }
    }
    ShiftingPlan plan = build_shifting_plan(j.at("S").get<int>(), j.at("M").get<int>(), box, rep);
    plan.custom_representatives = std::move(custom);
    return plan;
}

inline void save_plan(const ShiftingPlan& plan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open for writing: " + path);
    out << plan_to_json(plan).dump(2) << "\n";
}

inline ShiftingPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("invalid plan JSON: ") + e.what());
    }
    return plan_from_json(j);
}

// --- CSV --------------------------------------------------------------------
// Dialect: comma separator, mandatory header, UTF-8, '.' decimal point.

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw data_error("missing CSV column: " + name);
    }
    std::vector<double> numeric_column(const std::string& name) const {
        const int c = column(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            try {
                out.push_back(std::stod(rows[r].at(c)));
            } catch (...) {
                throw data_error("non-numeric value in column " + name + ", row " +
                                 std::to_string(r + 1));
            }
        }
        return out;
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open: " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.eof()) break;
        std::vector<std::string> fields;
        std::string field;
        std::stringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        if (first) {
            t.header = fields;
            first = false;
        } else {
            if (fields.size() != t.header.size())
                throw data_error("CSV row " + std::to_string(t.rows.size() + 1) +
                                 " has wrong field count");
            t.rows.push_back(fields);
        }
    }
    if (first) throw data_error("CSV file has no header: " + path);
    return t;
}

inline void write_csv(const CsvTable& t, std::ostream& out) {
    for (std::size_t i = 0; i < t.header.size(); ++i)
        out << (i ? "," : "") << t.header[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

inline void write_csv(const CsvTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open for writing: " + path);
    write_csv(t, out);
}

// --- Dataset / synthetic-sample serialization ------------------------------
// Provider output carries only (record_id, s, m, v) plus pass-through
// covariates; raw sensitive values never appear.

inline CsvTable dataset_to_csv(const DiscretizedDataset& ds) {
    CsvTable t;
    const int P = ds.plan.P();
    t.header = {"record_id", "s"};
    for (int p = 1; p <= P; ++p) t.header.push_back("m_" + std::to_string(p));
    for (int p = 1; p <= P; ++p) t.header.push_back("v_" + std::to_string(p));
    for (const auto& [name, col] : ds.covariates) t.header.push_back(name);
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& rec = ds.records[i];
        std::vector<std::string> row{std::to_string(rec.id), std::to_string(rec.s)};
        for (int p = 0; p < P; ++p) row.push_back(std::to_string(rec.m[p]));
        for (int p = 0; p < P; ++p) row.push_back(format_double(rec.v[p]));
        for (const auto& [name, col] : ds.covariates) row.push_back(format_double(col[i]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline DiscretizedDataset dataset_from_csv(const CsvTable& t, const ShiftingPlan& plan) {
    DiscretizedDataset ds;
    ds.plan = plan;
    const int P = plan.P();
    const int id_c = t.column("record_id"), s_c = t.column("s");
    std::vector<int> m_c(P), v_c(P);
    for (int p = 0; p < P; ++p) {
        m_c[p] = t.column("m_" + std::to_string(p + 1));
        v_c[p] = t.column("v_" + std::to_string(p + 1));
    }
    for (const auto& row : t.rows) {
        DiscretizedRecord rec;
        rec.id = std::stoll(row[id_c]);
        rec.s = std::stoi(row[s_c]);
        if (rec.s < 1 || rec.s > plan.S) throw data_error("split index out of range in CSV");
        for (int p = 0; p < P; ++p) {
            rec.m.push_back(std::stoi(row[m_c[p]]));
            if (rec.m[p] < 1 || rec.m[p] > plan.M)
                throw data_error("cell index out of range in CSV");
            rec.v.push_back(std::stod(row[v_c[p]]));
        }
        ds.records.push_back(std::move(rec));
    }
    // Pass-through covariates: all other columns.
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        const std::string& name = t.header[c];
        if (name == "record_id" || name == "s" || name.rfind("m_", 0) == 0 ||
            name.rfind("v_", 0) == 0)
            continue;
        ds.covariates[name] = t.numeric_column(name);
    }
    ds.truncated_flags.assign(ds.records.size(), false);
    return ds;
}

inline CsvTable synthetic_to_csv(const SyntheticSample& sample) {
    CsvTable t;
    const int P = static_cast<int>(sample.b.size());
    t.header = {"record_id"};
    for (int p = 1; p <= P; ++p) t.header.push_back("b_" + std::to_string(p));
    for (int p = 1; p <= P; ++p) t.header.push_back("zdagger_" + std::to_string(p));
    for (std::size_t i = 0; i < sample.size(); ++i) {
        std::vector<std::string> row{
            std::to_string(sample.source ? sample.source->records[i].id
                                         : static_cast<std::int64_t>(i))};
        for (int p = 0; p < P; ++p) row.push_back(std::to_string(sample.b[p][i]));
        for (int p = 0; p < P; ++p) row.push_back(format_double(sample.z[p][i]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline CsvTable ecdf_to_csv(const Ecdf& e) {
    CsvTable t;
    t.header = {"value", "F"};
    for (std::size_t i = 0; i < e.sorted.size(); ++i)
        t.rows.push_back({format_double(e.sorted[i]),
                          format_double(static_cast<double>(i + 1) / e.sorted.size())});
    return t;
}

// --- Simulation config / result ---------------------------------------------

inline SimConfig sim_config_from_json(const nlohmann::json& j) {
    SimConfig cfg;
    cfg.case_tag = j.value("case", cfg.case_tag);
    cfg.dist_tag = j.value("distribution", cfg.dist_tag);
    // Defaults depend on the case.
    cfg = make_benchmark_config(cfg.case_tag, cfg.dist_tag, cfg.seed);
    cfg.N = j.value("N", cfg.N);
    cfg.R = j.value("R", cfg.R);
    cfg.S = j.value("S", cfg.S);
    cfg.M = j.value("M", cfg.M);
    cfg.L = j.value("L", cfg.L);
    cfg.beta = j.value("beta", cfg.beta);
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("x_support"))
        cfg.x_support = {j.at("x_support").at(0).get<double>(),
                         j.at("x_support").at(1).get<double>()};
    if (j.contains("y_support"))
        cfg.y_support = {j.at("y_support").at(0).get<double>(),
                         j.at("y_support").at(1).get<double>()};
    if (j.contains("x_support_midpoint"))
        cfg.x_support_midpoint = {{j.at("x_support_midpoint").at(0).get<double>(),
                                   j.at("x_support_midpoint").at(1).get<double>()}};
    return cfg;
}

inline SimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("invalid config JSON: ") + e.what());
    }
    return sim_config_from_json(j);
}

inline CsvTable sim_result_to_csv(const SimResult& res) {
    CsvTable t;
    t.header = {"case", "distribution", "estimator", "mean_bias", "sd", "N", "R",
                "S",    "M",            "L",         "failures"};
    const auto& c = res.config;
    auto row = [&](const std::string& est, double bias, double sd) {
        t.rows.push_back({c.case_tag, c.dist_tag, est, format_double(bias),
                          format_double(sd), std::to_string(c.N),
                          std::to_string(res.replications), std::to_string(c.S),
                          std::to_string(c.M), std::to_string(c.L),
                          std::to_string(res.failures)});
    };
    row("shifting", res.mean_bias_shifting, res.sd_shifting);
    row("midpoint", res.mean_bias_midpoint, res.sd_midpoint);
    return t;
}

inline std::string to_string(const CsvTable& t) {
    std::ostringstream ss;
    write_csv(t, ss);
    return ss.str();
}

}  // namespace splitsamp
