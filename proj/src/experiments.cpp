#include "sgf/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace sgf {

using json = nlohmann::json;

ForceSpec make_force(const RunConfig& cfg, const Eigen::VectorXd& lambdas) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(lambdas.size());
    if (lambdas.size() > 0) a(0) = cfg.force_amp;
    if (cfg.force == "zero") return ForceSpec::zero();
    if (cfg.force == "constant") return ForceSpec::constant(a, lambdas);
    if (cfg.force == "linear") return ForceSpec::linear(cfg.force_gain);
    if (cfg.force == "saturating")
        return ForceSpec::saturating(a, cfg.force_gain, cfg.force_sat, lambdas);
    throw std::invalid_argument("unknown force kind '" + cfg.force + "'");
}

SolverConfig make_solver_config(const RunConfig& cfg) {
    SolverConfig sc;
    sc.nu = cfg.nu;
    sc.epsilon = cfg.epsilon;
    sc.dt = cfg.dt;
    sc.integrator = cfg.integrator == "heun" ? Integrator::heun : Integrator::rk4;
    return sc;
}

NoiseConfig make_noise_config(const RunConfig& cfg) {
    NoiseConfig nc;
    nc.epsilon = cfg.epsilon;
    nc.seed = cfg.seed;
    nc.t_min = cfg.t_min;
    nc.t_max = cfg.t_max;
    nc.dt = cfg.dt;
    return nc;
}

Eigen::VectorXd initial_datum(const RunConfig& cfg, int n) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    if (n > 0) f(0) = cfg.init_amp;
    return f;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Config echo as comment lines, prepended to every CSV artifact.
void write_echo(std::ofstream& out, const RunConfig& cfg) {
    std::istringstream in(cfg.serialize());
    std::string line;
    while (std::getline(in, line)) out << "# " << line << "\n";
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir + "/" + name, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + cfg.out_dir + "/" + name);
    return out;
}

void write_summary(const RunConfig& cfg, json& summary) {
    summary["config"] = cfg.serialize();
    summary["kind"] = to_string(cfg.kind);
    summary["deterministic"] = (cfg.epsilon == 0.0);
    std::ofstream out = open_out(cfg, "summary.json");
    out << summary.dump(2) << "\n";
}

// The absorbing-radius theory needs the force Lipschitz constant below
// nu / P^2; enforced before any long run so misconfigurations fail fast.
void check_force_bound(const RunConfig& cfg, const GalerkinModel& model, const ForceSpec& force) {
    double bound = cfg.nu / model.poincare.P2;
    if (force.C_F >= bound)
        throw std::invalid_argument(
            "force Lipschitz constant C_F = " + fmt(force.C_F) +
            " violates the dissipativity bound C_F < nu / P^2 = " + fmt(bound) +
            " required for absorbing-set experiments");
}

int run_simulate(const RunConfig& cfg, const GalerkinModel& model, const WienerPath& path,
                 const SolverConfig& sc, const ForceSpec& force, std::ostream& log) {
    Trajectory traj =
        integrate(model, initial_datum(cfg, model.n()), sc, path, force, 0.0, cfg.t_end);
    std::ofstream out = open_out(cfg, "trajectory.csv");
    write_echo(out, cfg);
    out << "t,Q,w_norm,v_norm";
    if (cfg.dump_coefficients)
        for (int k = 0; k < model.n(); ++k) out << ",c" << k;
    out << "\n";
    for (const auto& st : traj.states) {
        double Q = q_factor(path, cfg.epsilon, st.t);
        out << fmt(st.t) << "," << fmt(Q) << "," << fmt(st.c.norm()) << ","
            << fmt(model.v_norm(st.c));
        if (cfg.dump_coefficients)
            for (int k = 0; k < model.n(); ++k) out << "," << fmt(st.c(k));
        out << "\n";
    }
    json summary;
    summary["steps"] = traj.states.size() - 1;
    summary["final_w_norm"] = traj.states.back().c.norm();
    summary["final_v_norm"] = model.v_norm(traj.states.back().c);
    write_summary(cfg, summary);
    log << "simulate: " << traj.states.size() - 1 << " steps, final |v|_W = "
        << traj.states.back().c.norm() << "\n";
    return 0;
}

int run_verify(const RunConfig& cfg, const GalerkinModel& model, const WienerPath& path,
               const SolverConfig& sc, const ForceSpec& force, std::ostream& log) {
    json res;
    bool ok = true;
    auto record = [&](const std::string& name, double value, double tol) {
        res[name] = {{"value", value}, {"tol", tol}, {"pass", value <= tol}};
        if (value > tol) ok = false;
        log << "  " << name << " = " << value << (value <= tol ? "  ok" : "  FAIL") << "\n";
    };

    const int n = model.n();
    double max_t = 0.0, max_anti = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                max_t = std::max(max_t, std::abs(model.tensor(i, j, k)));
                max_anti =
                    std::max(max_anti, std::abs(model.tensor(i, j, k) + model.tensor(i, k, j)));
            }
    record("tensor_antisymmetry", max_anti / std::max(max_t, 1e-300), 1e-13);

    Eigen::MatrixXd WG = model.basis.psis.transpose() * model.forms.MW * model.basis.psis;
    record("w_gram_identity", (WG - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(),
           1e-10);
    Eigen::MatrixXd VG = model.basis.psis.transpose() * model.forms.MV * model.basis.psis;
    Eigen::MatrixXd D = model.lambdas().cwiseInverse().asDiagonal();
    record("v_gram_diagonal", (VG - D).cwiseAbs().maxCoeff(), 1e-10);

    double P2 = model.poincare.P2;
    record("resolvent_identity",
           std::abs(model.poincare.resolvent_norm - P2 / (P2 + model.grid.alpha)), 1e-10);

    Eigen::VectorXd f0 = initial_datum(cfg, n);
    record("cocycle", cocycle_check(model, f0, 0.5, 0.5, path, sc, force), 1e-6);
    record("conjugation", conjugation_check(model, f0, 0.5, 0.5, path, sc, force), 1e-6);

    Trajectory traj = integrate(model, f0, sc, path, force, 0.0, 1.0);
    EnergyReport er = energy_residual_v(traj, model, path, force);
    res["energy_max_rel_residual"] = er.max_rel_residual;
    log << "  energy_max_rel_residual = " << er.max_rel_residual << "  (reported)\n";

    json summary;
    summary["residuals"] = res;
    summary["pass"] = ok;
    write_summary(cfg, summary);
    return ok ? 0 : 1;
}

int run_linearize(const RunConfig& cfg, const GalerkinModel& model, const WienerPath& path,
                  const SolverConfig& sc, const ForceSpec& force, std::ostream& log) {
    Eigen::VectorXd f0 = initial_datum(cfg, model.n());
    Eigen::VectorXd g = Eigen::VectorXd::Zero(model.n());
    g(model.n() > 1 ? 1 : 0) = 1.0;
    std::vector<double> steps = {1e-2, 3e-3, 1e-3, 3e-4};
    FdCheckReport rep = fd_derivative_check(model, f0, g, steps, cfg.t_end, path, sc, force);

    std::ofstream out = open_out(cfg, "fd_check.csv");
    write_echo(out, cfg);
    out << "h,error\n";
    for (std::size_t i = 0; i < rep.steps.size(); ++i)
        out << fmt(rep.steps[i]) << "," << fmt(rep.errors[i]) << "\n";

    json summary;
    summary["fitted_order"] = rep.fitted_order;
    summary["tangent_norm"] = rep.tangent_norm;
    write_summary(cfg, summary);
    log << "linearize: fitted order " << rep.fitted_order << "\n";
    return 0;
}

int run_pullback(const RunConfig& cfg, const GalerkinModel& model, const WienerPath& path,
                 const SolverConfig& sc, const ForceSpec& force, std::ostream& log) {
    check_force_bound(cfg, model, force);
    std::vector<Eigen::VectorXd> cloud = probe_cloud(model, 5, 2.0 * cfg.init_amp);
    std::ofstream out = open_out(cfg, "pullback.csv");
    write_echo(out, cfg);
    out << "t,member,w_norm,v_norm\n";
    json norms = json::array();
    for (double t : cfg.pullback_times) {
        auto states = pullback_ensemble(model, cloud, t, path, sc, force);
        double max_w = 0.0;
        for (std::size_t m = 0; m < states.size(); ++m) {
            out << fmt(t) << "," << m << "," << fmt(states[m].c.norm()) << ","
                << fmt(model.v_norm(states[m].c)) << "\n";
            max_w = std::max(max_w, states[m].c.norm());
        }
        norms.push_back({{"t", t}, {"max_w_norm", max_w}});
        log << "pullback t = " << t << ": max |u|_W = " << max_w << "\n";
    }
    json summary;
    summary["ensemble_size"] = cloud.size();
    summary["max_w_norms"] = norms;
    write_summary(cfg, summary);
    return 0;
}

int run_attractor(const RunConfig& cfg, const GalerkinModel& model, const WienerPath& path,
                  const SolverConfig& sc, const ForceSpec& force, std::ostream& log) {
    check_force_bound(cfg, model, force);
    RadiusReport rad = radius(model, path, sc, force, cfg.tail_time);
    AttractorEstimate est =
        attractor_estimate(model, path, sc, force, cfg.pullback_times, cfg.tol);

    // inner approximation of the attractor: pullback images of a fixed probe
    // ensemble, labeled as such in the artifact name
    std::ofstream out = open_out(cfg, "attractor_cloud_inner.csv");
    write_echo(out, cfg);
    out << "member";
    for (int k = 0; k < model.n(); ++k) out << ",c" << k;
    out << "\n";
    for (std::size_t m = 0; m < est.points.size(); ++m) {
        out << m;
        for (int k = 0; k < model.n(); ++k) out << "," << fmt(est.points[m](k));
        out << "\n";
    }

    json summary;
    summary["lambda"] = rad.lambda;
    summary["gamma"] = rad.gamma;
    summary["kappa2"] = rad.kappa2;
    summary["rho_w"] = rad.rho_w;
    summary["c_chain"] = rad.c_chain;
    summary["integral"] = rad.integral;
    summary["remainder_bound"] = rad.remainder_bound;
    summary["r_certified"] = rad.r_certified;
    summary["r_empirical"] = rad.r_empirical;
    summary["cauchy_gaps"] = est.cauchy_gaps;
    summary["converged"] = est.converged;
    write_summary(cfg, summary);
    log << "attractor: r_certified = " << rad.r_certified << ", r_empirical = "
        << rad.r_empirical << ", final gap = "
        << (est.cauchy_gaps.empty() ? 0.0 : est.cauchy_gaps.back()) << "\n";
    if (!est.converged)
        log << "attractor: estimate did not reach tol within the window\n";
    return est.converged ? 0 : 1;
}

int run_sweep(const RunConfig& cfg, const GalerkinModel& model, const WienerPath& path,
              const SolverConfig& sc, const ForceSpec& force, std::ostream& log) {
    check_force_bound(cfg, model, force);
    SemiDistanceReport rep =
        epsilon_sweep(model, cfg.eps_list, path, force, sc, cfg.pullback_times, cfg.tol);
    json summary;
    summary["eps_values"] = rep.eps_values;
    summary["distances"] = rep.distances;
    write_summary(cfg, summary);
    for (std::size_t i = 0; i < rep.eps_values.size(); ++i)
        log << "sweep eps = " << rep.eps_values[i] << ": d = " << rep.distances[i] << "\n";
    return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    GalerkinModel model = GalerkinModel::build(cfg.N, cfg.alpha, cfg.n_modes);
    WienerPath path = sample_path(make_noise_config(cfg));
    SolverConfig sc = make_solver_config(cfg);
    ForceSpec force = make_force(cfg, model.lambdas());

    switch (cfg.kind) {
        case RunKind::simulate: return run_simulate(cfg, model, path, sc, force, log);
        case RunKind::verify: return run_verify(cfg, model, path, sc, force, log);
        case RunKind::linearize: return run_linearize(cfg, model, path, sc, force, log);
        case RunKind::pullback: return run_pullback(cfg, model, path, sc, force, log);
        case RunKind::attractor: return run_attractor(cfg, model, path, sc, force, log);
        case RunKind::sweep: return run_sweep(cfg, model, path, sc, force, log);
    }
    return 2;
}

}  // namespace sgf
