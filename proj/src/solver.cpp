#include "sgf/solver.hpp"

#include <cmath>

namespace sgf {

Eigen::VectorXd rhs(const GalerkinModel& model, const ForceSpec& force, const WienerPath& path,
                    const SolverConfig& config, double t, const Eigen::VectorXd& c) {
    double Q = q_factor(path, config.epsilon, t);
    Eigen::VectorXd out = -config.nu * (model.grad.G * c);
    if (!config.disable_advection) out -= Q * apply_B(model.tensor, c, c);
    if (force.kind != ForceKind::zero)
        out += force_coeffs(force, c, Q, model.basis, model.E0);
    return model.lambdas().asDiagonal() * out;
}

namespace {

void check_state(const Eigen::VectorXd& c, double t) {
    if (!c.allFinite() || c.lpNorm<Eigen::Infinity>() > 1e12) throw BlowUpError(t);
}

Eigen::VectorXd step_rk4(const GalerkinModel& model, const ForceSpec& force,
                         const WienerPath& path, const SolverConfig& config, double t,
                         const Eigen::VectorXd& c, double dt) {
    Eigen::VectorXd k1 = rhs(model, force, path, config, t, c);
    Eigen::VectorXd k2 = rhs(model, force, path, config, t + 0.5 * dt, c + 0.5 * dt * k1);
    Eigen::VectorXd k3 = rhs(model, force, path, config, t + 0.5 * dt, c + 0.5 * dt * k2);
    Eigen::VectorXd k4 = rhs(model, force, path, config, t + dt, c + dt * k3);
    return c + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::VectorXd step_heun(const GalerkinModel& model, const ForceSpec& force,
                          const WienerPath& path, const SolverConfig& config, double t,
                          const Eigen::VectorXd& c, double dt) {
    Eigen::VectorXd k1 = rhs(model, force, path, config, t, c);
    Eigen::VectorXd k2 = rhs(model, force, path, config, t + dt, c + dt * k1);
    return c + 0.5 * dt * (k1 + k2);
}

long step_count(double t_begin, double t_end, double dt) {
    double span = t_end - t_begin;
    long m = static_cast<long>(std::floor(span / dt + 0.5));
    if (m < 0 || std::abs(span - m * dt) > WienerPath::kNodeTol * dt)
        throw std::invalid_argument("solver: time span is not a multiple of dt");
    return m;
}

}  // namespace

Trajectory integrate(const GalerkinModel& model, const Eigen::VectorXd& f,
                     const SolverConfig& config, const WienerPath& path, const ForceSpec& force,
                     double t_begin, double t_end) {
    config.validate();
    if (!f.allFinite()) throw std::invalid_argument("integrate: non-finite initial data");
    if (!path.contains(t_begin) || !path.contains(t_end))
        throw std::out_of_range("integrate: time span outside path window");
    long m = step_count(t_begin, t_end, config.dt);

    Trajectory traj;
    traj.config = config;
    traj.states.reserve(static_cast<std::size_t>(m) + 1);
    Eigen::VectorXd c = f;
    traj.states.push_back({t_begin, c});
    for (long i = 0; i < m; ++i) {
        double t = t_begin + static_cast<double>(i) * config.dt;
        c = (config.integrator == Integrator::rk4)
                ? step_rk4(model, force, path, config, t, c, config.dt)
                : step_heun(model, force, path, config, t, c, config.dt);
        check_state(c, t + config.dt);
        traj.states.push_back({t_begin + static_cast<double>(i + 1) * config.dt, c});
    }
    return traj;
}

GalerkinState solve_shifted(const GalerkinModel& model, const Eigen::VectorXd& f, double s,
                            double t, const WienerPath& path, const SolverConfig& config,
                            const ForceSpec& force) {
    Trajectory traj = integrate(model, f, config, path, force, s, t);
    return traj.states.back();
}

Trajectory reconstruct_u(const Trajectory& traj, const WienerPath& path, double epsilon) {
    Trajectory u = traj;
    for (auto& st : u.states) st.c *= q_factor(path, epsilon, st.t);
    return u;
}

double cocycle_check(const GalerkinModel& model, const Eigen::VectorXd& f, double t, double s,
                     const WienerPath& path, const SolverConfig& config, const ForceSpec& force) {
    // direct: u(t+s, f, w)
    GalerkinState v_ts = solve_shifted(model, f, 0.0, t + s, path, config, force);
    Eigen::VectorXd u_direct = q_factor(path, config.epsilon, t + s) * v_ts.c;

    // composed: u(t, u(s, f, w), theta(s, w))
    GalerkinState v_s = solve_shifted(model, f, 0.0, s, path, config, force);
    Eigen::VectorXd u_s = q_factor(path, config.epsilon, s) * v_s.c;
    WienerPath shifted = shift(path, s);
    GalerkinState v2 = solve_shifted(model, u_s, 0.0, t, shifted, config, force);
    Eigen::VectorXd u_comp = q_factor(shifted, config.epsilon, t) * v2.c;

    double denom = std::max(model.v_norm(u_direct), 1e-300);
    return model.v_norm(u_direct - u_comp) / denom;
}

double conjugation_check(const GalerkinModel& model, const Eigen::VectorXd& f, double t, double s,
                         const WienerPath& path, const SolverConfig& config,
                         const ForceSpec& force) {
    double Qs = q_factor(path, config.epsilon, s);
    WienerPath shifted = shift(path, s);
    GalerkinState v_shift = solve_shifted(model, f, 0.0, t, shifted, config, force);
    Eigen::VectorXd lhs = v_shift.c / Qs;
    Eigen::VectorXd rhs_v = solve_shifted(model, f / Qs, s, t + s, path, config, force).c;
    double denom = std::max(model.v_norm(lhs), 1e-300);
    return model.v_norm(lhs - rhs_v) / denom;
}

GalerkinState pullback_value(const GalerkinModel& model, const Eigen::VectorXd& f, double t,
                             const WienerPath& path, const SolverConfig& config,
                             const ForceSpec& force) {
    if (t == 0.0) return {0.0, f};
    if (-t < path.t_min() - 0.5 * path.dt() * WienerPath::kNodeTol)
        throw std::out_of_range("pullback_value: pullback time exceeds stored window");
    double Qmt = q_factor(path, config.epsilon, -t);
    return solve_shifted(model, f / Qmt, -t, 0.0, path, config, force);
}

}  // namespace sgf
