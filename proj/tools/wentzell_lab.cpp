// Command-line front end: configuration-driven assembly, eigenanalysis,
// oracle comparison, semigroup evolution, and the verification suite.
//
// Exit codes: 0 success, 1 hypothesis violation, 2 numerical/config failure,
// 3 acceptance failure. Failures print a JSON error body.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wentzell/acceptance.hpp"
#include "wentzell/config.hpp"
#include "wentzell/errors.hpp"
#include "wentzell/io.hpp"
#include "wentzell/semigroup.hpp"
#include "wentzell/svg.hpp"

using namespace wentzell;
using ordered_json = nlohmann::ordered_json;

namespace {

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::hypothesis_violation:
        case ErrorKind::not_elliptic:
            return 1;
        default:
            return 2;
    }
}

void print_error(const std::string& kind, const std::string& message) {
    ordered_json j;
    j["error"] = {{"kind", kind}, {"message", message}};
    std::cout << j.dump(2) << std::endl;
}

struct Cli {
    RunConfig config;
    std::filesystem::path out;
    bool quiet = false;

    void prepare_out() { std::filesystem::create_directories(out); }
    std::string path(const std::string& name) const { return (out / name).string(); }
};

Eigen::VectorXd eval_on_nodes(const Mesh& mesh, const std::string& expr_text) {
    Expression e = Expression::parse(expr_text);
    Eigen::VectorXd v(mesh.node_count());
    for (int i = 0; i < mesh.node_count(); ++i)
        v[i] = e.eval(mesh.nodes[i][0], mesh.nodes[i][1]);
    return v;
}

int cmd_validate(Cli& cli) {
    Mesh mesh = cli.config.build_mesh();
    ValidationReport rep = validate_coefficients(mesh, cli.config.coefficients);
    SymbolReport sym;
    bool sym_ok = true;
    std::string sym_json = "null";
    try {
        sym = check_principal_symbol(cli.config.coefficients, mesh, M_PI / 2, 16);
        sym_json = sym.to_json();
    } catch (const Error& e) {
        sym_ok = false;
        sym_json = std::string("{\"error\":\"") + e.what() + "\"}";
    }
    cli.prepare_out();
    std::string body = std::string("{\"hypotheses\":") + rep.to_json() +
                       ",\"principal_symbol\":" + sym_json + "}";
    write_text_file(cli.path("validate.json"), body);
    if (!cli.quiet) std::cout << body << std::endl;
    if (!rep.all_pass) {
        std::string names;
        for (const auto& c : rep.checks)
            if (!c.pass) names += (names.empty() ? "" : ", ") + c.name;
        if (cli.quiet) print_error("hypothesis-violation", "violated: " + names);
        return 1;
    }
    return sym_ok ? 0 : 1;
}

int cmd_assemble(Cli& cli) {
    Mesh mesh = cli.config.build_mesh();
    MassMode mode = cli.config.mass_mode(mesh);
    WentzellSystem sys =
        build_wentzell_system(mesh, cli.config.coefficients, mode, cli.config.order_power);
    cli.prepare_out();
    write_coordinate_csv(cli.path("mass.csv"), sys.op->M);
    write_coordinate_csv(cli.path("stiffness.csv"), sys.op->K);
    Eigen::MatrixXd mgd = sys.op->mgd.asDiagonal();
    write_coordinate_csv(cli.path("boundary_mass.csv"), mgd);
    write_coordinate_csv(cli.path("wentzell_form.csv"), sys.A);
    write_coordinate_csv(cli.path("product_mass.csv"), sys.M_H);
    write_text_file(cli.path("mesh.json"), mesh.to_json());

    ordered_json j;
    j["n_nodes"] = mesh.node_count();
    j["order_power"] = cli.config.order_power;
    j["mode"] = mode == MassMode::consistent ? "consistent" : "lumped";
    {
        ordered_json cj = ordered_json::parse(cli.config.to_json_text());
        j["coefficient_hash"] = fnv1a_hash(cj["coefficients"].dump());
    }
    j["asymmetry_K"] = (sys.op->K - sys.op->K.transpose()).cwiseAbs().maxCoeff();
    j["asymmetry_A"] = (sys.A - sys.A.transpose()).cwiseAbs().maxCoeff();
    j["stiffness_kernel_residual"] =
        (sys.op->K * Eigen::VectorXd::Ones(mesh.node_count())).cwiseAbs().maxCoeff();
    j["semibound"] = sys.op->semibound();
    write_text_file(cli.path("assemble.json"), j.dump(2));
    if (!cli.quiet) std::cout << j.dump(2) << std::endl;
    return 0;
}

int cmd_eigs(Cli& cli) {
    Mesh mesh = cli.config.build_mesh();
    WentzellSystem sys = build_wentzell_system(mesh, cli.config.coefficients,
                                               cli.config.mass_mode(mesh), cli.config.order_power);
    EigenDecomposition dec = eig_generalized(sys, cli.config.eigen_count);
    cli.prepare_out();
    write_eigen_csv(cli.path("eigenvalues.csv"), dec);
    write_eigenvector_csv(cli.path("eigenvectors.csv"), mesh, dec);
    if (!cli.quiet) {
        for (int k = 0; k < dec.count(); ++k)
            std::cout << "lambda_" << (k + 1) << " = " << format_double(dec.eigenvalues[k])
                      << "  (residual " << format_double(dec.residuals[k]) << ")\n";
    }
    return 0;
}

int cmd_oracle(Cli& cli) {
    const RunConfig& c = cli.config;
    if (c.domain_type != "interval")
        throw Error(ErrorKind::unsupported, "the oracle covers the interval domain only");
    const CoefficientSet& co = c.coefficients;
    if (!co.Q.is_isotropic() || !co.Q.isotropic().is_constant() || !co.alpha.is_constant() ||
        !co.beta.is_constant() || !co.gamma.is_constant() || !co.delta.is_constant())
        throw Error(ErrorKind::unsupported, "the oracle requires constant coefficients");

    int count = std::max(2, c.eigen_count);
    OracleResult orc = oracle_eigenvalues_interval(
        co.Q.isotropic().constant_value(), co.alpha.constant_value(), co.beta.constant_value(),
        co.gamma.constant_value(), co.delta.constant_value(), c.b - c.a, count);

    Mesh mesh = c.build_mesh();
    WentzellSystem sys = build_wentzell_system(mesh, co, c.mass_mode(mesh));
    EigenDecomposition dec = eig_generalized(sys, count);

    cli.prepare_out();
    std::ostringstream os;
    os << "k,lambda_oracle,lambda_discrete,rel_error\n";
    int m = static_cast<int>(orc.eigenvalues.size());
    for (int k = 0; k < m; ++k) {
        double lo = orc.eigenvalues[k], ld = dec.eigenvalues[k];
        double rel = std::abs(ld - lo) / std::max(std::abs(lo), 1e-300);
        os << (k + 1) << "," << format_double(lo) << "," << format_double(ld) << ","
           << format_double(rel) << "\n";
    }
    write_text_file(cli.path("oracle.csv"), os.str());
    if (!orc.complete && !cli.quiet)
        std::cout << "note: oracle found only " << m << " roots below the scan ceiling\n";
    if (!cli.quiet) std::cout << os.str();
    return 0;
}

int cmd_evolve(Cli& cli) {
    const RunConfig& c = cli.config;
    Mesh mesh = c.build_mesh();
    WentzellSystem sys =
        build_wentzell_system(mesh, c.coefficients, c.mass_mode(mesh), c.order_power);
    TraceMap trace = sys.trace();

    ProductState f0;
    f0.u1 = eval_on_nodes(mesh, c.initial_u1);
    if (c.initial_u2 == "trace") {
        f0.u2 = trace.restrict_to_boundary(f0.u1);
    } else {
        Expression e2 = Expression::parse(c.initial_u2);
        f0.u2.resize(trace.size());
        for (int j = 0; j < trace.size(); ++j) {
            int bn = trace.index[j];
            f0.u2[j] = e2.eval(mesh.nodes[bn][0], mesh.nodes[bn][1]);
        }
    }
    ProductState f = f0.is_coupled(trace) ? f0 : project_to_coupled(sys, f0);

    EigenDecomposition dec =
        eig_generalized(sys, std::min(std::max(c.eigen_count, 1), sys.size()));
    Trajectory traj;
    if (c.scheme == "spectral") {
        traj = evolve_spectral(sys, dec, f.u1, c.time_grid());
        if (traj.truncated && !cli.quiet)
            std::cout << "warning: truncated eigenbasis (" << dec.count() << " of " << sys.size()
                      << " modes), dropped mass bound " << format_double(traj.dropped_mass)
                      << "\n";
    } else {
        traj = step_theta(sys, f.u1, c.dt, c.theta, c.steps);
    }
    cli.prepare_out();
    write_trajectory_csv(cli.path("trajectory.csv"), mesh, traj);

    // diagnostics
    SteadyState ss = steady_state(sys, f);
    ordered_json diag;
    EigenDecomposition two = eig_generalized(sys, std::min(2, sys.size()));
    diag["lambda1"] = two.eigenvalues[0];
    diag["lambda2"] = two.count() > 1 ? two.eigenvalues[1] : 0.0;
    diag["conserved_pairing"] = conserved_pairing(sys, f);
    diag["steady_value"] = ss.value;
    diag["steady_decays_to_zero"] = ss.decays_to_zero;

    bool nonneg = (f0.u1.array() >= 0.0).all() && (f0.u2.array() >= 0.0).all() &&
                  f0.u1.cwiseAbs().maxCoeff() > 0.0;
    if (nonneg && c.scheme == "spectral") {
        PositivityReport rep = positivity_scan(sys, dec, f, traj.times);
        diag["epsilon"] = rep.epsilon;
        if (rep.t0_finite)
            diag["t0"] = rep.t0;
        else
            diag["t0"] = nullptr;
        diag["dip"] = {{"t", rep.dip_time}, {"node", rep.dip_node}, {"value", rep.dip_value}};
    } else {
        diag["t0"] = nullptr;
        diag["dip"] = nullptr;
    }
    // least-squares exponential rate of ||u(t) - steady|| over the grid
    {
        std::vector<double> ts, ys;
        for (size_t i = 0; i < traj.times.size(); ++i) {
            double d = sys.h_norm(traj.state(static_cast<int>(i)) - ss.state);
            if (d > 1e-300 && traj.times[i] > 0) {
                ts.push_back(traj.times[i]);
                ys.push_back(std::log(d));
            }
        }
        if (ts.size() >= 2) {
            double n = static_cast<double>(ts.size());
            double st = 0, sy = 0, stt = 0, sty = 0;
            for (size_t i = 0; i < ts.size(); ++i) {
                st += ts[i];
                sy += ys[i];
                stt += ts[i] * ts[i];
                sty += ts[i] * ys[i];
            }
            double slope = (n * sty - st * sy) / (n * stt - st * st);
            diag["decay_fit"] = -slope;
        } else {
            diag["decay_fit"] = nullptr;
        }
    }
    write_text_file(cli.path("diagnostics.json"), diag.dump(2));
    if (!cli.quiet) std::cout << diag.dump(2) << std::endl;

    if (c.plots && mesh.dimension == 1) {
        SvgPlot snap("interior snapshots", "x", "u1");
        std::vector<double> xs(mesh.node_count());
        for (int i = 0; i < mesh.node_count(); ++i) xs[i] = mesh.nodes[i][0];
        int nshow = std::min<int>(6, static_cast<int>(traj.times.size()));
        for (int sidx = 0; sidx < nshow; ++sidx) {
            int i = sidx * (static_cast<int>(traj.times.size()) - 1) / std::max(1, nshow - 1);
            std::vector<double> ys(mesh.node_count());
            for (int k = 0; k < mesh.node_count(); ++k) ys[k] = traj.states(k, i);
            snap.add_series(xs, ys, "t = " + format_double(traj.times[i]).substr(0, 8));
        }
        snap.write(cli.path("snapshots.svg"));

        SvgPlot minplot("minimum node value", "log10 t", "min u");
        std::vector<double> lt, mv;
        for (size_t i = 0; i < traj.times.size(); ++i) {
            if (traj.times[i] <= 0) continue;
            lt.push_back(std::log10(traj.times[i]));
            mv.push_back(traj.states.col(static_cast<int>(i)).minCoeff());
        }
        minplot.add_series(lt, mv, "min over nodes");
        minplot.write(cli.path("min_value.svg"));
    }
    return 0;
}

int cmd_verify(Cli& cli) {
    cli.prepare_out();
    std::ostringstream sink;
    std::ostream& log = cli.quiet ? static_cast<std::ostream&>(sink) : std::cout;
    AcceptanceResult res = run_acceptance(cli.config.seed, log);
    ordered_json j;
    j["all_pass"] = res.all_pass;
    j["criteria"] = ordered_json::array();
    for (const auto& c : res.criteria)
        j["criteria"].push_back({{"id", c.id},
                                 {"name", c.name},
                                 {"pass", c.pass},
                                 {"detail", c.detail},
                                 {"seconds", c.seconds}});
    write_text_file(cli.path("verify_report.json"), j.dump(2));
    if (!res.all_pass) {
        print_error("acceptance-failure", "one or more acceptance criteria failed");
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wentzell-lab: fourth-order Wentzell boundary-value laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    std::uint64_t seed_override = 0;
    bool seed_set = false, quiet = false;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_override, "output directory (overrides config)");
    app.add_option("--seed", seed_override, "seed for randomized checks (overrides config)")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_flag("--quiet", quiet, "suppress console output");

    for (const char* name : {"validate", "assemble", "eigs", "oracle", "evolve", "verify"})
        app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        Cli cli;
        if (!config_path.empty())
            cli.config = RunConfig::load(config_path);
        if (seed_set) cli.config.seed = seed_override;
        cli.out = out_override.empty() ? cli.config.output_dir : out_override;
        cli.quiet = quiet;

        std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "validate") return cmd_validate(cli);
        if (sub == "assemble") return cmd_assemble(cli);
        if (sub == "eigs") return cmd_eigs(cli);
        if (sub == "oracle") return cmd_oracle(cli);
        if (sub == "evolve") return cmd_evolve(cli);
        if (sub == "verify") return cmd_verify(cli);
        return 2;
    } catch (const Error& e) {
        print_error(e.kind_name(), e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 2;
    }
}
