// splitsamp: command-line front end for the split-sampling library.
//
// Subcommands: plan, discretize, reconstruct, ecdf, estimate, privacy,
// simulate.  Exit codes: 0 success, 1 usage error, 2 data/schema error,
// 3 numerical failure.  Every randomized subcommand requires --seed (or the
// SPLITSAMP_SEED environment variable) and is byte-reproducible.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "splitsamp/splitsamp.hpp"

namespace {

using namespace splitsamp;

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed_flag) {
    if (seed_flag) return *seed_flag;
    if (const char* env = std::getenv("SPLITSAMP_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw invalid_argument_error("SPLITSAMP_SEED is not an integer");
        }
    }
    throw invalid_argument_error(
        "randomized subcommand requires --seed (or SPLITSAMP_SEED)");
}

std::pair<double, double> parse_support(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw invalid_argument_error("--support must be lo,hi");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (...) {
        throw invalid_argument_error("--support must be numeric lo,hi");
    }
}

void print_regression(const RegressionResult& r, const std::string& out_path) {
    CsvTable t;
    t.header = {"coefficient", "estimate", "se", "t", "case", "N"};
    auto add = [&](const std::string& name, double est, double se) {
        t.rows.push_back({name, format_double(est), format_double(se),
                          format_double(se > 0 ? est / se : 0.0), r.case_tag,
                          std::to_string(r.n)});
    };
    for (Eigen::Index j = 0; j < r.beta.size(); ++j)
        add("beta_" + std::to_string(j + 1), r.beta[j], r.se[j]);
    for (Eigen::Index j = 0; j < r.gamma.size(); ++j)
        add("w_" + std::to_string(j + 1), r.gamma[j], r.se[r.beta.size() + j]);
    if (out_path.empty())
        write_csv(t, std::cout);
    else
        write_csv(t, out_path);
}

int run(int argc, char** argv) {
    CLI::App app{"split sampling with shifted interval schemes"};
    app.require_subcommand(1);

    // ---- plan ----
    auto* cmd_plan = app.add_subcommand("plan", "build a discretization plan");
    int S = 4, M = 4, dims = 1, grid = 1000, L = 50;
    std::string support_str = "0,6", out_path, in_path, plan_path, rep_tag = "midpoint";
    cmd_plan->add_option("--S", S, "number of split samples")->required();
    cmd_plan->add_option("--M", M, "cells per scheme")->required();
    cmd_plan->add_option("--support", support_str, "support as lo,hi")->required();
    cmd_plan->add_option("--dims", dims, "number of sensitive dimensions");
    cmd_plan->add_option("--representatives", rep_tag, "midpoint|left");
    cmd_plan->add_option("--out", out_path, "output plan JSON")->required();

    // ---- discretize ----
    auto* cmd_disc = app.add_subcommand("discretize", "provider-side discretization");
    std::string columns;
    bool truncate = false;
    std::optional<std::uint64_t> seed_flag;
    cmd_disc->add_option("--plan", plan_path)->required();
    cmd_disc->add_option("--in", in_path, "input CSV")->required();
    cmd_disc->add_option("--columns", columns, "comma-separated sensitive columns")->required();
    cmd_disc->add_option("--out", out_path)->required();
    cmd_disc->add_option("--seed", seed_flag);
    cmd_disc->add_flag("--truncate", truncate, "drop boundary-cell records");

    // ---- reconstruct ----
    auto* cmd_rec = app.add_subcommand("reconstruct", "analyst-side synthetic sample");
    cmd_rec->add_option("--plan", plan_path)->required();
    cmd_rec->add_option("--in", in_path, "discretized CSV")->required();
    cmd_rec->add_option("--out", out_path)->required();
    cmd_rec->add_option("--seed", seed_flag);

    // ---- ecdf ----
    auto* cmd_ecdf = app.add_subcommand("ecdf", "empirical CDF of a CSV column");
    std::string column = "zdagger_1";
    cmd_ecdf->add_option("--in", in_path)->required();
    cmd_ecdf->add_option("--column", column);
    cmd_ecdf->add_option("--out", out_path)->required();

    // ---- estimate ----
    auto* cmd_est = app.add_subcommand("estimate", "three-step OLS pipelines");
    std::string case_tag, y_col = "y", x_col = "x", disc_path, disc_x_path, data_path;
    cmd_est->add_option("--case", case_tag, "rhs|lhs|both|naive")->required();
    cmd_est->add_option("--plan", plan_path, "plan JSON for the discretized variable");
    cmd_est->add_option("--disc", disc_path, "discretized CSV (X* for rhs, y* for lhs/both)");
    cmd_est->add_option("--disc-x", disc_x_path, "discretized X* CSV (both case)");
    cmd_est->add_option("--data", data_path, "CSV with the observed columns")->required();
    cmd_est->add_option("--y", y_col, "outcome column in --data");
    cmd_est->add_option("--x", x_col, "regressor column in --data");
    cmd_est->add_option("--L", L, "partition bins for the lhs case");
    cmd_est->add_option("--out", out_path);
    cmd_est->add_option("--seed", seed_flag);

    // ---- privacy ----
    auto* cmd_priv = app.add_subcommand("privacy", "realized epsilon/delta");
    std::string dist_out;
    cmd_priv->add_option("--plan", plan_path)->required();
    cmd_priv->add_option("--grid", grid, "evaluation grid size");
    cmd_priv->add_option("--distribution-out", dist_out,
                         "optional CSV of assignment distributions over the grid");

    // ---- simulate ----
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo bias harness");
    std::string config_path;
    int threads = 1;
    cmd_sim->add_option("--config", config_path, "config JSON")->required();
    cmd_sim->add_option("--threads", threads);
    cmd_sim->add_option("--out", out_path);
    cmd_sim->add_option("--seed", seed_flag, "overrides the config seed");

    CLI11_PARSE(app, argc, argv);

    if (*cmd_plan) {
        if (dims < 1) throw invalid_argument_error("--dims must be >= 1");
        const auto [lo, hi] = parse_support(support_str);
        SupportBox box;
        for (int p = 0; p < dims; ++p) box.dims.emplace_back(lo, hi);
        Representative rep = Representative::midpoint;
        if (rep_tag == "left") rep = Representative::left_edge;
        else if (rep_tag != "midpoint")
            throw invalid_argument_error("--representatives must be midpoint or left");
        const auto plan = build_shifting_plan(S, M, box, rep);
        save_plan(plan, out_path);
        std::cout << "h = " << format_double(plan.h[0]) << ", B = " << plan.B() << "\n";
    } else if (*cmd_disc) {
        const auto plan = load_plan(plan_path);
        const auto seed = require_seed(seed_flag);
        const auto table = read_csv(in_path);
        std::vector<std::string> names;
        std::stringstream ss(columns);
        std::string name;
        while (std::getline(ss, name, ',')) names.push_back(name);
        if (static_cast<int>(names.size()) != plan.P())
            throw data_error("number of --columns must match plan dimension");
        std::vector<std::vector<double>> rows(table.rows.size(),
                                              std::vector<double>(plan.P()));
        for (int p = 0; p < plan.P(); ++p) {
            const auto col = table.numeric_column(names[p]);
            for (std::size_t i = 0; i < col.size(); ++i) rows[i][p] = col[i];
        }
        auto ds = discretize_dataset(rows, plan, seed);
        // Pass through every non-sensitive column.
        for (const auto& h : table.header)
            if (std::find(names.begin(), names.end(), h) == names.end())
                ds.covariates[h] = table.numeric_column(h);
        if (truncate) {
            ds = truncate_unbounded(ds);
            std::cout << "dropped " << ds.dropped << " boundary records\n";
        }
        write_csv(dataset_to_csv(ds), out_path);
    } else if (*cmd_rec) {
        const auto plan = load_plan(plan_path);
        const auto seed = require_seed(seed_flag);
        const auto ds = dataset_from_csv(read_csv(in_path), plan);
        write_csv(synthetic_to_csv(synthesize(ds, seed)), out_path);
    } else if (*cmd_ecdf) {
        const auto table = read_csv(in_path);
        write_csv(ecdf_to_csv(ecdf(table.numeric_column(column))), out_path);
    } else if (*cmd_est) {
        const auto data = read_csv(data_path);
        if (case_tag == "naive") {
            const auto y = detail::to_eigen(data.numeric_column(y_col));
            const auto x = detail::to_eigen(data.numeric_column(x_col));
            print_regression(midpoint_ols(y, x), out_path);
        } else if (case_tag == "rhs") {
            const auto plan = load_plan(plan_path);
            const auto ds = dataset_from_csv(read_csv(disc_path), plan);
            const auto y = detail::to_eigen(data.numeric_column(y_col));
            print_regression(
                estimate_rhs(y, ds, Eigen::MatrixXd(), require_seed(seed_flag)), out_path);
        } else if (case_tag == "lhs") {
            const auto plan = load_plan(plan_path);
            const auto ds = dataset_from_csv(read_csv(disc_path), plan);
            const auto xv = data.numeric_column(x_col);
            const auto x = detail::to_eigen(xv);
            const double lo = *std::min_element(xv.begin(), xv.end());
            const double hi = *std::max_element(xv.begin(), xv.end());
            const auto partition = PartitionPlan::equal_width(lo, hi + 1e-12, L);
            print_regression(estimate_lhs(ds, x, partition, require_seed(seed_flag)),
                             out_path);
        } else if (case_tag == "both") {
            const auto plan_y = load_plan(plan_path);
            if (disc_x_path.empty())
                throw invalid_argument_error("--disc-x required for the both case");
            const auto plan_x_path = disc_x_path + ".plan.json";
            // The X* plan rides next to its CSV as a sidecar.
            const auto plan_x = load_plan(plan_x_path);
            const auto ds_y = dataset_from_csv(read_csv(disc_path), plan_y);
            const auto ds_x = dataset_from_csv(read_csv(disc_x_path), plan_x);
            print_regression(estimate_both(ds_y, ds_x, Eigen::MatrixXd(), std::nullopt,
                                           require_seed(seed_flag)),
                             out_path);
        } else {
            throw invalid_argument_error("--case must be rhs, lhs, both or naive");
        }
    } else if (*cmd_priv) {
        const auto plan = load_plan(plan_path);
        const auto rep = epsilon_delta(plan, grid);
        std::cout << "epsilon = " << format_double(rep.epsilon)
                  << "\ndelta = " << format_double(rep.delta) << "\ngrid: "
                  << rep.grid_description << "\n";
        if (rep.epsilon > 0)
            std::cout << "attained by z = " << format_double(rep.worst_z) << " vs z' = "
                      << format_double(rep.worst_z_peer) << " at working cell "
                      << rep.worst_cell << "\n";
        if (!dist_out.empty()) {
            CsvTable t;
            t.header = {"z"};
            for (int b = 1; b <= plan.B(); ++b) t.header.push_back("p_" + std::to_string(b));
            for (double z : default_privacy_grid(plan, grid)) {
                std::vector<std::string> row{format_double(z)};
                for (double p : assignment_distribution(plan, z))
                    row.push_back(format_double(p));
                t.rows.push_back(std::move(row));
            }
            write_csv(t, dist_out);
        }
    } else if (*cmd_sim) {
        SimConfig cfg = load_sim_config(config_path);
        if (seed_flag) cfg.seed = *seed_flag;
        if (cfg.seed == 0 && !seed_flag) cfg.seed = require_seed(seed_flag);
        cfg.threads = threads;
        const auto res = run_mc(cfg);
        const auto table = sim_result_to_csv(res);
        if (out_path.empty())
            write_csv(table, std::cout);
        else
            write_csv(table, out_path);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const splitsamp::invalid_argument_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const splitsamp::data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const splitsamp::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
