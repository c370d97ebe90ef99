#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "caputo/analysis.hpp"
#include "caputo/dcc.hpp"
#include "caputo/kernels.hpp"
#include "caputo/mesh.hpp"
#include "caputo/solver.hpp"

namespace caputo {

enum class ProblemKind { Ode, Pde };
enum class ReportLevel { Begin, End, Max };

inline std::string to_string(ProblemKind k) { return k == ProblemKind::Ode ? "ode" : "pde"; }

inline std::string to_string(ReportLevel l) {
    switch (l) {
        case ReportLevel::Begin: return "begin";
        case ReportLevel::End: return "end";
        case ReportLevel::Max: return "max";
    }
    return "?";
}

inline ProblemKind parse_problem(const std::string& s) {
    if (s == "ode") return ProblemKind::Ode;
    if (s == "pde") return ProblemKind::Pde;
    throw DomainError("problem", "expected ode or pde, got '" + s + "'");
}

inline ReportLevel parse_level(const std::string& s) {
    if (s == "begin") return ReportLevel::Begin;
    if (s == "end") return ReportLevel::End;
    if (s == "max") return ReportLevel::Max;
    throw DomainError("report_levels", "expected begin, end or max, got '" + s + "'");
}

struct SweepConfig {
    double alpha = 0.6;
    double beta = 0.3;
    double kappa = 1.0;
    double T = 1.0;
    std::vector<double> r_list{1.0};
    std::vector<std::size_t> n_list{64, 128, 256, 512};
    ProblemKind problem = ProblemKind::Ode;
    std::size_t M = 1024;
    std::vector<ReportLevel> report_levels{ReportLevel::End};
    bool parallel = true;

    void validate() const {
        OdeProblem{alpha, beta, kappa, uniform_mesh(1.0, 1)}.validate();
        if (!(T > 0.0)) throw DomainError("T", "horizon must be positive");
        if (r_list.empty()) throw DomainError("r_list", "need at least one grading exponent");
        for (double r : r_list) {
            if (!(r >= 1.0)) throw DomainError("r_list", "grading exponents must be >= 1");
        }
        if (n_list.empty()) throw DomainError("n_list", "need at least one N");
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            if (n_list[i] == 0) throw DomainError("n_list", "N must be positive");
            if (i > 0 && n_list[i] != 2 * n_list[i - 1]) {
                throw DomainError("n_list", "N values must double from one entry to the next");
            }
        }
        if (problem == ProblemKind::Pde && M < 2) throw DomainError("M", "need at least two spatial intervals");
        if (report_levels.empty()) throw DomainError("report_levels", "need at least one level");
    }
};

/// Critical grading exponent (2 - alpha) / (1 + beta - alpha).
inline double critical_grading(double alpha, double beta) { return (2.0 - alpha) / (1.0 + beta - alpha); }

struct TheoreticalOrder {
    double value = 0.0;
    bool log_factor = false;  ///< order holds up to a (1 + ln N) factor
};

/// Predicted order in N at the requested level on t_n = T (n/N)^r.
/// End level: min{r(1 + beta - alpha), 2 - alpha}, with a log factor at
/// r = r*. Beginning level (n = 1): error ~ tau_1^beta = N^{-r beta}.
/// Max over levels: min{r beta, 2 - alpha}.
inline TheoreticalOrder theoretical_order(double alpha, double beta, double r, ReportLevel level) {
    if (level == ReportLevel::Begin) return {r * beta, false};
    // The max over levels is carried by the first step, whose error is O(tau_1^beta).
    if (level == ReportLevel::Max) return {std::min(r * beta, 2.0 - alpha), false};
    const double r_star = critical_grading(alpha, beta);
    if (std::abs(r - r_star) <= 1e-9 * r_star) return {2.0 - alpha, true};
    return {std::min(r * (1.0 + beta - alpha), 2.0 - alpha), false};
}

/// Per-level errors of one (r, N) solve.
struct LevelErrors {
    double begin = 0.0;
    double end = 0.0;
    double max = 0.0;

    double at(ReportLevel l) const {
        switch (l) {
            case ReportLevel::Begin: return begin;
            case ReportLevel::End: return end;
            case ReportLevel::Max: return max;
        }
        return end;
    }
};

inline LevelErrors run_cell(const SweepConfig& config, double r, std::size_t N) {
    const auto mesh = graded_mesh(config.T, N, r);
    const Trajectory traj = config.problem == ProblemKind::Ode
                                ? solve_ode(OdeProblem{config.alpha, config.beta, config.kappa, mesh})
                                : solve_pde(PdeProblem{config.alpha, config.beta, config.kappa, mesh, config.M});
    LevelErrors e;
    e.begin = traj.errors.at(1);
    e.end = traj.errors.back();
    e.max = *std::max_element(traj.errors.begin(), traj.errors.end());
    return e;
}

struct ConvergenceRow {
    std::size_t N = 0;
    double error = 0.0;
    std::optional<double> order;  ///< against the previous N
};

struct ConvergenceColumn {
    double r = 1.0;
    ReportLevel level = ReportLevel::End;
    TheoreticalOrder theo;
    std::vector<ConvergenceRow> rows;
};

struct ConvergenceReport {
    SweepConfig config;
    std::vector<ConvergenceColumn> columns;  ///< r-major, then report level
};

/// Solves every (r, N) cell, concurrently when config.parallel is set.
/// Output order follows the config and never depends on completion order.
inline ConvergenceReport run_sweep(const SweepConfig& config) {
    config.validate();
    const std::size_t nr = config.r_list.size();
    const std::size_t nn = config.n_list.size();
    std::vector<LevelErrors> cells(nr * nn);

    auto cell = [&](std::size_t i) {
        const double r = config.r_list[i / nn];
        const std::size_t N = config.n_list[i % nn];
        try {
            return run_cell(config, r, N);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "sweep cell (r=" << r << ", N=" << N << "): " << e.what();
            throw std::runtime_error(os.str());
        }
    };

    if (config.parallel) {
        std::vector<std::future<LevelErrors>> jobs;
        jobs.reserve(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) jobs.push_back(std::async(std::launch::async, cell, i));
        for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = jobs[i].get();
    } else {
        for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = cell(i);
    }

    ConvergenceReport report{config, {}};
    for (std::size_t ir = 0; ir < nr; ++ir) {
        for (ReportLevel level : config.report_levels) {
            ConvergenceColumn col;
            col.r = config.r_list[ir];
            col.level = level;
            col.theo = theoretical_order(config.alpha, config.beta, col.r, level);
            for (std::size_t in = 0; in < nn; ++in) {
                ConvergenceRow row{config.n_list[in], cells[ir * nn + in].at(level), std::nullopt};
                if (in > 0) row.order = observed_order(col.rows.back().error, row.error);
                col.rows.push_back(row);
            }
            report.columns.push_back(std::move(col));
        }
    }
    return report;
}

namespace detail {

inline std::string format_error(double e) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", e);
    return buf;
}

inline std::string format_order(std::optional<double> o) {
    if (!o) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *o);
    return buf;
}

inline std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace detail

/// CSV `problem,level,r,N,error,order,theo`; errors in 4 significant digits.
inline void write_csv(std::ostream& os, const ConvergenceReport& report) {
    os << "problem,level,r,N,error,order,theo\n";
    for (const auto& col : report.columns) {
        const std::string theo = detail::format_order(col.theo.value) + (col.theo.log_factor ? "-" : "");
        for (const auto& row : col.rows) {
            os << to_string(report.config.problem) << ',' << to_string(col.level) << ','
               << detail::format_real(col.r) << ',' << row.N << ',' << detail::format_error(row.error) << ','
               << detail::format_order(row.order) << ',' << theo << '\n';
        }
    }
}

inline nlohmann::json to_json(const SweepConfig& c) {
    nlohmann::json levels = nlohmann::json::array();
    for (auto l : c.report_levels) levels.push_back(to_string(l));
    return {{"alpha", c.alpha}, {"beta", c.beta},     {"kappa", c.kappa},
            {"T", c.T},         {"r_list", c.r_list}, {"n_list", c.n_list},
            {"problem", to_string(c.problem)},        {"M", c.M},
            {"report_levels", levels}};
}

/// Missing keys keep their defaults.
inline SweepConfig sweep_config_from_json(const nlohmann::json& j) {
    SweepConfig c;
    c.alpha = j.value("alpha", c.alpha);
    c.beta = j.value("beta", c.beta);
    c.kappa = j.value("kappa", c.kappa);
    c.T = j.value("T", c.T);
    c.r_list = j.value("r_list", c.r_list);
    c.n_list = j.value("n_list", c.n_list);
    c.M = j.value("M", c.M);
    c.parallel = j.value("parallel", c.parallel);
    if (j.contains("problem")) c.problem = parse_problem(j.at("problem").get<std::string>());
    if (j.contains("report_levels")) {
        c.report_levels.clear();
        for (const auto& l : j.at("report_levels")) c.report_levels.push_back(parse_level(l.get<std::string>()));
    }
    c.validate();
    return c;
}

inline nlohmann::json to_json(const ConvergenceReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json theo = nlohmann::json::array();
    for (const auto& col : report.columns) {
        theo.push_back({{"r", col.r},
                        {"level", to_string(col.level)},
                        {"order", col.theo.value},
                        {"log_factor", col.theo.log_factor}});
        for (const auto& row : col.rows) {
            nlohmann::json r = {{"r", col.r}, {"level", to_string(col.level)}, {"N", row.N}, {"error", row.error}};
            r["order"] = row.order ? nlohmann::json(*row.order) : nlohmann::json(nullptr);
            rows.push_back(std::move(r));
        }
    }
    return {{"config", to_json(report.config)}, {"rows", rows}, {"theo", theo}};
}

/// Printed values of one convergence table: three r columns, N = 64..512.
struct TablePreset {
    int which = 1;
    std::string title;
    SweepConfig config;
    ReportLevel level = ReportLevel::End;
    std::array<std::array<double, 4>, 3> errors{};
    std::array<std::array<double, 3>, 3> orders{};  ///< N = 128, 256, 512
    std::array<double, 3> theo{};
};

/// The four published tables. The printed numbers match alpha = 0.6,
/// beta = 0.3 (r* = 2); the PDE tables' third column is r = 2.5.
inline TablePreset table_preset(int which) {
    TablePreset t;
    t.which = which;
    t.config.alpha = 0.6;
    t.config.beta = 0.3;
    t.config.kappa = 1.0;
    t.config.n_list = {64, 128, 256, 512};
    switch (which) {
        case 1:
            t.title = "ODE, error at n = 1";
            t.config.problem = ProblemKind::Ode;
            t.config.r_list = {1.0, 2.0, 3.0};
            t.level = ReportLevel::Begin;
            t.errors = {{{1.335e-01, 1.056e-01, 8.429e-02, 6.771e-02},
                         {3.574e-02, 2.350e-02, 1.548e-02, 1.021e-02},
                         {1.021e-02, 5.467e-03, 2.929e-03, 1.570e-03}}};
            t.orders = {{{0.338, 0.325, 0.316}, {0.605, 0.602, 0.601}, {0.901, 0.900, 0.900}}};
            t.theo = {0.300, 0.600, 0.900};
            break;
        case 2:
            t.title = "ODE, error at n = N";
            t.config.problem = ProblemKind::Ode;
            t.config.r_list = {1.0, 2.0, 3.0};
            t.level = ReportLevel::End;
            t.errors = {{{1.653e-01, 1.039e-01, 6.484e-02, 4.027e-02},
                         {2.831e-02, 1.203e-02, 5.043e-03, 2.092e-03},
                         {1.546e-02, 5.882e-03, 2.233e-03, 8.466e-04}}};
            t.orders = {{{0.670, 0.680, 0.687}, {1.235, 1.254, 1.269}, {1.394, 1.398, 1.399}}};
            t.theo = {0.700, 1.400, 1.400};
            break;
        case 3:
            t.title = "PDE, error at n = 1";
            t.config.problem = ProblemKind::Pde;
            t.config.r_list = {1.0, 2.0, 2.5};
            t.level = ReportLevel::Begin;
            t.errors = {{{2.192e-01, 1.781e-01, 1.446e-01, 1.175e-01},
                         {6.296e-02, 4.154e-02, 2.740e-02, 1.808e-02},
                         {3.374e-02, 2.006e-02, 1.193e-02, 7.093e-03}}};
            t.orders = {{{0.300, 0.300, 0.300}, {0.600, 0.600, 0.600}, {0.750, 0.750, 0.750}}};
            t.theo = {0.300, 0.600, 0.750};
            break;
        case 4:
            t.title = "PDE, error at n = N";
            t.config.problem = ProblemKind::Pde;
            t.config.r_list = {1.0, 2.0, 2.5};
            t.level = ReportLevel::End;
            t.errors = {{{4.528e-02, 2.783e-02, 1.711e-02, 1.052e-02},
                         {8.350e-03, 3.480e-03, 1.433e-03, 5.816e-04},
                         {6.046e-03, 2.337e-03, 8.934e-04, 3.354e-04}}};
            t.orders = {{{0.702, 0.702, 0.701}, {1.263, 1.280, 1.301}, {1.371, 1.387, 1.413}}};
            t.theo = {0.700, 1.400, 1.400};
            break;
        default: throw DomainError("which", "table index must be 1, 2, 3 or 4");
    }
    t.config.report_levels = {t.level};
    return t;
}

struct TableComparison {
    double r = 1.0;
    double error = 0.0;          ///< computed, largest N
    double printed_error = 0.0;
    double error_rel_diff = 0.0;
    double order = 0.0;          ///< computed, largest N
    double printed_order = 0.0;
    double order_diff = 0.0;
    TheoreticalOrder theo;
};

/// Compares a sweep of table_preset(which).config against the printed values at the largest N.
inline std::vector<TableComparison> compare_table(const TablePreset& t, const ConvergenceReport& report) {
    std::vector<TableComparison> out;
    for (std::size_t c = 0; c < 3 && c < report.columns.size(); ++c) {
        const auto& col = report.columns[c];
        const auto& last = col.rows.back();
        TableComparison cmp;
        cmp.r = col.r;
        cmp.error = last.error;
        cmp.printed_error = t.errors[c][3];
        cmp.error_rel_diff = std::abs(cmp.error - cmp.printed_error) / cmp.printed_error;
        cmp.order = last.order.value_or(0.0);
        cmp.printed_order = t.orders[c][2];
        cmp.order_diff = std::abs(cmp.order - cmp.printed_order);
        cmp.theo = col.theo;
        out.push_back(cmp);
    }
    return out;
}

/// One row of the p / p-tilde comparison.
struct FigureRow {
    std::size_t k = 0;
    double p = 0.0;
    double p_tilde = 0.0;
    double q = 0.0;
};

inline std::vector<FigureRow> figure_data(const Mesh& mesh, double alpha, std::size_t n) {
    const auto rows = l1_rows(mesh, alpha, n);
    const auto dcc = dcc_row(mesh, rows, n);
    std::vector<FigureRow> out;
    out.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) out.push_back({k, dcc.p[k - 1], dcc.p_tilde[k - 1], dcc.q[k - 1]});
    return out;
}

inline void write_figure_csv(std::ostream& os, const std::vector<FigureRow>& rows) {
    os << "k,p,ptilde,q\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%zu,%.10e,%.10e,%.10e\n", r.k, r.p, r.p_tilde, r.q);
        os << buf;
    }
}

}  // namespace caputo
