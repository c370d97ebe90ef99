// Command-line front end: meshes, kernels, DCC audits, Gronwall profiles,
// solvers, DCS scans, quadratic forms and the convergence tables.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "caputo/caputo.hpp"

namespace {

using namespace caputo;

struct MeshFlags {
    std::string kind = "graded";
    double T = 1.0;
    std::size_t N = 64;
    double r = 1.0;
    std::string nodes_file;

    void add(CLI::App* app) {
        app->add_option("--kind", kind, "graded | uniform | sin | file")
            ->check(CLI::IsMember({"graded", "uniform", "sin", "file"}));
        app->add_option("--T", T, "horizon");
        app->add_option("--N", N, "number of steps");
        app->add_option("--r", r, "grading exponent");
        app->add_option("--nodes-file", nodes_file, "one node per line (kind=file)");
    }

    Mesh build() const {
        if (kind == "uniform") return uniform_mesh(T, N);
        if (kind == "sin") return sin_mesh(N);
        if (kind == "file") return custom_mesh(read_reals(nodes_file));
        return graded_mesh(T, N, r);
    }

    static std::vector<double> read_reals(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open '" + path + "'");
        std::vector<double> out;
        std::string line;
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                if (cell.find_first_not_of(" \t\r") == std::string::npos || cell[0] == '#') continue;
                out.push_back(std::stod(cell));
            }
        }
        return out;
    }
};

std::vector<double> parse_csv_reals(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Caputo L1 kernels, DCC kernels, Gronwall bounds and convergence tables"};
    app.require_subcommand(1);

    // mesh
    MeshFlags mesh_flags;
    auto* mesh_cmd = app.add_subcommand("mesh", "print mesh nodes and steps");
    mesh_flags.add(mesh_cmd);
    mesh_cmd->callback([&] {
        const auto m = mesh_flags.build();
        std::printf("k,t_k,tau_k\n");
        std::printf("0,%.17g,\n", m.t(0));
        for (std::size_t k = 1; k <= m.size(); ++k) std::printf("%zu,%.17g,%.17g\n", k, m.t(k), m.tau(k));
        const auto s = mesh_stats(m);
        std::printf("# rho=%.12g,tau_max=%.12g,tau_min=%.12g\n", s.rho, s.tau_max, s.tau_min);
    });

    // special eval
    std::string fn = "gamma";
    double x = 1.0;
    double s_alpha = 0.5;
    auto* special = app.add_subcommand("special", "special functions");
    auto* eval = special->add_subcommand("eval", "evaluate gamma, omega or ml");
    special->require_subcommand(1);
    eval->add_option("--fn", fn, "gamma | omega | ml")->check(CLI::IsMember({"gamma", "omega", "ml"}));
    eval->add_option("--x", x, "argument (s for omega, z for ml)");
    eval->add_option("--alpha", s_alpha, "order for omega and ml");
    eval->callback([&] {
        double v = 0.0;
        if (fn == "gamma") v = caputo::gamma(x);
        else if (fn == "omega") v = omega(s_alpha, x);
        else v = mittag_leffler(s_alpha, x);
        std::printf("%.17g\n", v);
    });

    // kernels
    MeshFlags kmesh;
    std::string scheme_name = "l1";
    double alpha = 0.5;
    double sigma = -1.0;
    std::size_t level = 1;
    auto* kernels_cmd = app.add_subcommand("kernels", "DC kernel row a_j, j = 0..n-1");
    kmesh.add(kernels_cmd);
    kernels_cmd->add_option("--scheme", scheme_name)->check(CLI::IsMember({"l1", "l21sigma"}));
    kernels_cmd->add_option("--alpha", alpha);
    kernels_cmd->add_option("--sigma", sigma, "L21-sigma offset (default alpha/2)");
    kernels_cmd->add_option("--n", level, "time level");
    kernels_cmd->callback([&] {
        const auto m = kmesh.build();
        const Scheme sch = scheme_name == "l1" ? Scheme::l1()
                           : sigma > 0.0       ? Scheme::l21sigma(sigma)
                                               : Scheme::l21sigma_default(alpha);
        const auto row = kernel_row(m, alpha, sch, level);
        std::printf("j,a_j\n");
        for (std::size_t j = 0; j < row.level(); ++j) std::printf("%zu,%.17g\n", j, row[j]);
        const auto mono = is_monotone(row);
        if (!mono.monotone) std::printf("# not monotone at j=%zu\n", *mono.first_violation);
    });

    // dcc
    MeshFlags dmesh;
    std::string emit = "all";
    auto* dcc_cmd = app.add_subcommand("dcc", "DCC kernels p, surrogate and ratio at level n");
    dmesh.add(dcc_cmd);
    dcc_cmd->add_option("--alpha", alpha);
    dcc_cmd->add_option("--n", level);
    dcc_cmd->add_option("--emit", emit)->check(CLI::IsMember({"all", "p", "ptilde", "q", "residual"}));
    dcc_cmd->callback([&] {
        const auto m = dmesh.build();
        const auto rows = l1_rows(m, alpha, level);
        if (emit == "residual") {
            std::printf("%.6e\n", verify_matrix_identity(rows, level));
            return;
        }
        const auto d = dcc_row(m, rows, level);
        if (emit == "all") std::printf("j,p_j,ptilde_j,q_j\n");
        else std::printf("j,%s\n", emit == "p" ? "p_j" : emit == "ptilde" ? "ptilde_j" : "q_j");
        for (std::size_t k = 1; k <= level; ++k) {
            if (emit == "all") std::printf("%zu,%.12e,%.12e,%.12e\n", k, d.p[k - 1], d.p_tilde[k - 1], d.q[k - 1]);
            else if (emit == "p") std::printf("%zu,%.12e\n", k, d.p[k - 1]);
            else if (emit == "ptilde") std::printf("%zu,%.12e\n", k, d.p_tilde[k - 1]);
            else std::printf("%zu,%.12e\n", k, d.q[k - 1]);
        }
        const auto chk = dcc_bound_check(d);
        std::printf("# bound_holds=%s,worst_margin=%.6e,worst_j=%zu,max_q=%.6f\n", chk.holds ? "true" : "false",
                    chk.worst_margin, chk.worst_k, chk.max_q);
    });

    // gronwall
    MeshFlags gmesh;
    double kappa = 1.0;
    double v0 = 1.0;
    std::string f_spec = "const:0";
    bool previous_node = false;
    auto* gr_cmd = app.add_subcommand("gronwall", "equality sequence against the fractional Gronwall bound");
    gmesh.add(gr_cmd);
    gr_cmd->add_option("--alpha", alpha);
    gr_cmd->add_option("--kappa", kappa);
    gr_cmd->add_option("--v0", v0);
    gr_cmd->add_option("--f", f_spec, "const:<v> | file:<path>");
    gr_cmd->add_flag("--previous-node", previous_node, "use t_{n-1} in the Mittag-Leffler factor");
    gr_cmd->callback([&] {
        GronwallInput in;
        in.mesh = gmesh.build();
        in.alpha = alpha;
        in.kappa = kappa;
        in.v0 = v0;
        in.node_choice = previous_node ? NodeChoice::Previous : NodeChoice::Current;
        if (f_spec.rfind("const:", 0) == 0) {
            in.f.assign(in.mesh.size(), std::stod(f_spec.substr(6)));
        } else if (f_spec.rfind("file:", 0) == 0) {
            in.f = MeshFlags::read_reals(f_spec.substr(5));
        } else {
            throw CLI::ValidationError("--f", "expected const:<v> or file:<path>");
        }
        std::printf("n,V_n,bound_n,slack_n\n");
        for (const auto& l : gronwall_profile(in)) std::printf("%zu,%.12e,%.12e,%.12e\n", l.n, l.value, l.bound, l.slack);
    });

    // solve-ode / solve-pde
    double beta = 0.3;
    double o_alpha = 0.6;
    double o_kappa = 1.0;
    double T = 1.0;
    std::size_t N = 64;
    double r = 1.0;
    std::size_t M = 1024;
    std::string s_emit = "errors";
    auto add_solve_flags = [&](CLI::App* c) {
        c->add_option("--alpha", o_alpha);
        c->add_option("--beta", beta);
        c->add_option("--kappa", o_kappa);
        c->add_option("--T", T);
        c->add_option("--N", N);
        c->add_option("--r", r);
        c->add_option("--emit", s_emit)->check(CLI::IsMember({"trajectory", "errors"}));
    };
    auto* ode_cmd = app.add_subcommand("solve-ode", "L1 scheme for D^alpha u = kappa u + f");
    add_solve_flags(ode_cmd);
    ode_cmd->callback([&] {
        const auto traj = solve_ode({o_alpha, beta, o_kappa, graded_mesh(T, N, r)});
        std::printf("n,t_n,U_or_E,error\n");
        for (std::size_t n = 0; n < traj.times.size(); ++n) {
            const double v = s_emit == "trajectory" ? traj.values[n][0] : traj.errors[n];
            std::printf("%zu,%.12e,%.12e,%.12e\n", n, traj.times[n], v, traj.errors[n]);
        }
    });
    auto* pde_cmd = app.add_subcommand("solve-pde", "L1 in time, centered differences in space");
    add_solve_flags(pde_cmd);
    pde_cmd->add_option("--M", M, "spatial intervals on [-pi, pi]");
    pde_cmd->callback([&] {
        const auto traj = solve_pde({o_alpha, beta, o_kappa, graded_mesh(T, N, r), M});
        std::printf("n,t_n,U_or_E,error\n");
        for (std::size_t n = 0; n < traj.times.size(); ++n) {
            if (s_emit == "trajectory") {
                // Midpoint value x = -pi/2 when M is divisible by 4, else the first interior node.
                const std::size_t i = M % 4 == 0 ? M / 4 - 1 : 0;
                std::printf("%zu,%.12e,%.12e,%.12e\n", n, traj.times[n], traj.values[n][i], traj.errors[n]);
            } else {
                std::printf("%zu,%.12e,%.12e,%.12e\n", n, traj.times[n], traj.errors[n], traj.errors[n]);
            }
        }
    });

    // dcs
    double dr = 0.3;
    double dp = -1.0;
    double dq = 2.0;
    std::size_t jmax = 16;
    auto* dcs_cmd = app.add_subcommand("dcs", "ratios S / bound at n = 2^j");
    dcs_cmd->add_option("--r", dr);
    dcs_cmd->add_option("--p", dp);
    dcs_cmd->add_option("--q", dq);
    dcs_cmd->add_option("--jmax", jmax);
    dcs_cmd->callback([&] {
        const auto scan = doubling_scan({dr, dp, dq, 2}, jmax);
        std::printf("j,n,S,bound,ratio\n");
        for (std::size_t j = 1; j <= scan.reports.size(); ++j) {
            const auto& rep = scan.reports[j - 1];
            std::printf("%zu,%zu,%.12e,%.12e,%.12e\n", j, std::size_t{1} << j, rep.value, rep.bound, rep.ratio);
        }
        std::printf("# regime=%s,unbounded=%s%s\n", to_string(scan.reports.front().regime).c_str(),
                    scan.unbounded ? "true" : "false",
                    scan.reports.front().near_boundary ? ",warning=near min=-1 boundary" : "");
    });

    // quadform
    std::string d_csv;
    bool from_kernels = false;
    MeshFlags qmesh;
    auto* qf_cmd = app.add_subcommand("quadform", "determinant identity and definiteness of M(d)");
    qf_cmd->add_option("--d", d_csv, "comma-separated positive sequence");
    qf_cmd->add_flag("--from-kernels", from_kernels, "use d_j = a^{(n)}_{n-j} of the L1 row");
    qmesh.add(qf_cmd);
    qf_cmd->add_option("--alpha", alpha);
    qf_cmd->add_option("--n", level);
    qf_cmd->callback([&] {
        std::vector<double> d;
        if (from_kernels) {
            const auto row = l1_row(qmesh.build(), alpha, level);
            for (std::size_t j = 1; j <= row.level(); ++j) d.push_back(row.at_k(j));
        } else {
            if (d_csv.empty()) throw CLI::ValidationError("--d", "give --d or --from-kernels");
            d = parse_csv_reals(d_csv);
        }
        const auto id = det_identity_check(d);
        const auto pm = positivity_iff_monotone(d);
        std::printf("det=%.12e\nproduct=%.12e\nresidual=%.3e\npositive_definite=%s\nstrictly_increasing=%s\n",
                    id.det, id.product, id.residual, pm.positive_definite ? "true" : "false",
                    pm.strictly_increasing ? "true" : "false");
    });

    // table
    int which = 2;
    double gate = 0.05;
    bool json_out = false;
    auto* table_cmd = app.add_subcommand("table", "reproduce one of the four convergence tables");
    table_cmd->add_option("--which", which)->check(CLI::Range(1, 4));
    table_cmd->add_option("--gate", gate, "allowed |order - printed order| at the largest N");
    table_cmd->add_flag("--json", json_out, "JSON report instead of CSV");
    int table_status = 0;
    table_cmd->callback([&] {
        const auto preset = table_preset(which);
        const auto report = run_sweep(preset.config);
        if (json_out) {
            std::cout << to_json(report).dump(2) << '\n';
        } else {
            std::cout << "# Table " << which << ": " << preset.title << ", alpha=" << preset.config.alpha
                      << ", beta=" << preset.config.beta << ", kappa=" << preset.config.kappa << '\n';
            write_csv(std::cout, report);
        }
        for (const auto& c : compare_table(preset, report)) {
            const bool ok = c.order_diff <= gate;
            std::fprintf(stderr, "r=%g order=%.3f printed=%.3f diff=%.3f error=%.3e printed=%.3e rel=%.2f%% %s\n", c.r,
                         c.order, c.printed_order, c.order_diff, c.error, c.printed_error, 100.0 * c.error_rel_diff,
                         ok ? "ok" : "OUTSIDE GATE");
            if (!ok) table_status = 1;
        }
    });

    // sweep
    std::string config_path;
    auto* sweep_cmd = app.add_subcommand("sweep", "N-doubling sweep from a JSON config");
    sweep_cmd->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
    sweep_cmd->add_flag("--json", json_out, "JSON report instead of CSV");
    sweep_cmd->callback([&] {
        std::ifstream in(config_path);
        const auto cfg = sweep_config_from_json(nlohmann::json::parse(in));
        const auto report = run_sweep(cfg);
        if (json_out) std::cout << to_json(report).dump(2) << '\n';
        else write_csv(std::cout, report);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return table_status;
}
