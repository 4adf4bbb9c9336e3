#include "sgf/linearization.hpp"

#include <cmath>

namespace sgf {

Eigen::VectorXd tangent_rhs(const GalerkinModel& model, const ForceSpec& force,
                            const WienerPath& path, const SolverConfig& config, double t,
                            const Eigen::VectorXd& c, const Eigen::VectorXd& z) {
    double Q = q_factor(path, config.epsilon, t);
    Eigen::VectorXd out = -config.nu * (model.grad.G * z);
    if (!config.disable_advection)
        out -= Q * (apply_B(model.tensor, z, c) + apply_B(model.tensor, c, z));
    if (force.kind != ForceKind::zero)
        out += model.E0 * force.deriv(Q * c, z, model.lambdas());
    return model.lambdas().asDiagonal() * out;
}

namespace {

// One RK4 step of the coupled (base, tangent) pair.  The tangent stages are
// the exact directional derivatives of the base stages, so the pair is the
// derivative of the discrete step map, not just a consistent approximation.
void step_pair_rk4(const GalerkinModel& model, const ForceSpec& force, const WienerPath& path,
                   const SolverConfig& config, double t, double dt, Eigen::VectorXd& c,
                   Eigen::VectorXd& z) {
    Eigen::VectorXd k1 = rhs(model, force, path, config, t, c);
    Eigen::VectorXd l1 = tangent_rhs(model, force, path, config, t, c, z);

    Eigen::VectorXd c2 = c + 0.5 * dt * k1, z2 = z + 0.5 * dt * l1;
    Eigen::VectorXd k2 = rhs(model, force, path, config, t + 0.5 * dt, c2);
    Eigen::VectorXd l2 = tangent_rhs(model, force, path, config, t + 0.5 * dt, c2, z2);

    Eigen::VectorXd c3 = c + 0.5 * dt * k2, z3 = z + 0.5 * dt * l2;
    Eigen::VectorXd k3 = rhs(model, force, path, config, t + 0.5 * dt, c3);
    Eigen::VectorXd l3 = tangent_rhs(model, force, path, config, t + 0.5 * dt, c3, z3);

    Eigen::VectorXd c4 = c + dt * k3, z4 = z + dt * l3;
    Eigen::VectorXd k4 = rhs(model, force, path, config, t + dt, c4);
    Eigen::VectorXd l4 = tangent_rhs(model, force, path, config, t + dt, c4, z4);

    c += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    z += (dt / 6.0) * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
}

void step_pair_heun(const GalerkinModel& model, const ForceSpec& force, const WienerPath& path,
                    const SolverConfig& config, double t, double dt, Eigen::VectorXd& c,
                    Eigen::VectorXd& z) {
    Eigen::VectorXd k1 = rhs(model, force, path, config, t, c);
    Eigen::VectorXd l1 = tangent_rhs(model, force, path, config, t, c, z);
    Eigen::VectorXd c2 = c + dt * k1, z2 = z + dt * l1;
    Eigen::VectorXd k2 = rhs(model, force, path, config, t + dt, c2);
    Eigen::VectorXd l2 = tangent_rhs(model, force, path, config, t + dt, c2, z2);
    c += 0.5 * dt * (k1 + k2);
    z += 0.5 * dt * (l1 + l2);
}

}  // namespace

std::vector<TangentState> integrate_tangent(const GalerkinModel& model, const Eigen::VectorXd& f,
                                            const Eigen::VectorXd& g, const SolverConfig& config,
                                            const WienerPath& path, const ForceSpec& force,
                                            double t_begin, double t_end) {
    config.validate();
    if (!f.allFinite() || !g.allFinite())
        throw std::invalid_argument("integrate_tangent: non-finite input");
    if (!path.contains(t_begin) || !path.contains(t_end))
        throw std::out_of_range("integrate_tangent: time span outside path window");
    double span = t_end - t_begin;
    long m = static_cast<long>(std::floor(span / config.dt + 0.5));
    if (m < 0 || std::abs(span - static_cast<double>(m) * config.dt) >
                     WienerPath::kNodeTol * config.dt)
        throw std::invalid_argument("integrate_tangent: time span is not a multiple of dt");

    std::vector<TangentState> out;
    out.reserve(static_cast<std::size_t>(m) + 1);
    Eigen::VectorXd c = f, z = g;
    out.push_back({t_begin, c, z});
    for (long i = 0; i < m; ++i) {
        double t = t_begin + static_cast<double>(i) * config.dt;
        if (config.integrator == Integrator::rk4)
            step_pair_rk4(model, force, path, config, t, config.dt, c, z);
        else
            step_pair_heun(model, force, path, config, t, config.dt, c, z);
        if (!c.allFinite() || !z.allFinite() || c.lpNorm<Eigen::Infinity>() > 1e12)
            throw BlowUpError(t + config.dt);
        out.push_back({t_begin + static_cast<double>(i + 1) * config.dt, c, z});
    }
    return out;
}

FdCheckReport fd_derivative_check(const GalerkinModel& model, const Eigen::VectorXd& f,
                                  const Eigen::VectorXd& g, const std::vector<double>& steps,
                                  double t, const WienerPath& path, const SolverConfig& config,
                                  const ForceSpec& force) {
    if (steps.empty()) throw std::invalid_argument("fd_derivative_check: no steps");
    double floor = 1e-7 * std::max(f.norm(), 1e-30) / std::max(g.norm(), 1e-30);
    for (double h : steps)
        if (h < floor)
            throw std::invalid_argument(
                "fd_derivative_check: step below cancellation floor " + std::to_string(floor));

    std::vector<TangentState> tang =
        integrate_tangent(model, f, g, config, path, force, 0.0, t);
    const Eigen::VectorXd& z_end = tang.back().z;
    Eigen::VectorXd base = solve_shifted(model, f, 0.0, t, path, config, force).c;

    FdCheckReport rep;
    rep.steps = steps;
    rep.tangent_norm = z_end.norm();
    for (double h : steps) {
        Eigen::VectorXd pert =
            solve_shifted(model, f + h * g, 0.0, t, path, config, force).c;
        rep.errors.push_back(((pert - base) / h - z_end).norm());
    }

    // log-log least-squares slope of error against step
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = static_cast<int>(steps.size());
    for (int i = 0; i < m; ++i) {
        double x = std::log(steps[i]);
        double y = std::log(std::max(rep.errors[i], 1e-300));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double denom = m * sxx - sx * sx;
    rep.fitted_order = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
    return rep;
}

double tangent_linearity_defect(const GalerkinModel& model, const Eigen::VectorXd& f,
                                const Eigen::VectorXd& g1, const Eigen::VectorXd& g2, double t,
                                const WienerPath& path, const SolverConfig& config,
                                const ForceSpec& force) {
    auto end_z = [&](const Eigen::VectorXd& g) {
        return integrate_tangent(model, f, g, config, path, force, 0.0, t).back().z;
    };
    Eigen::VectorXd sum = end_z(g1 + g2);
    Eigen::VectorXd parts = end_z(g1) + end_z(g2);
    double scale = std::max({sum.norm(), parts.norm(), 1e-30});
    return (sum - parts).norm() / scale;
}

}  // namespace sgf
