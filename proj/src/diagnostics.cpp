#include "sgf/diagnostics.hpp"

namespace sgf {

namespace {

// h^2 psi^T L K psi pairing matrix on coefficients: K_prod(c_left, c_right) =
// h^2 (L Psi c_left) . (K Psi c_right), the curl-against-q grid quadrature.
Eigen::MatrixXd curl_q_pairing(const GalerkinModel& model) {
    const double h2 = model.grid.h * model.grid.h;
    return h2 * (model.forms.L * model.basis.psis).transpose() *
           (model.forms.K * model.basis.psis);
}

}  // namespace

EnergyReport energy_residual_v(const Trajectory& traj, const GalerkinModel& model,
                               const WienerPath& path, const ForceSpec& force) {
    if (traj.states.empty()) throw std::invalid_argument("energy_residual_v: empty trajectory");
    const double nu = traj.config.nu;
    const double alpha = model.grid.alpha;
    const double kappa = 2.0 * nu / alpha;
    const double dt = traj.config.dt;
    const Eigen::MatrixXd CQ = curl_q_pairing(model);

    EnergyReport rep;
    const std::size_t m = traj.states.size();
    rep.times.resize(m);
    rep.w_norm_sq.resize(m);
    rep.rhs_reconstruction.resize(m);
    rep.residual.resize(m);

    // both curl pairings evaluated by the assembly stencils: curl of the
    // production field against the potential vorticity of the state
    auto production = [&](const GalerkinState& st) {
        double Q = q_factor(path, traj.config.epsilon, st.t);
        Eigen::VectorXd fq = force.eval(Q * st.c, model.lambdas()) / Q;
        Eigen::VectorXd qc = CQ * st.c;
        return (nu / alpha) * st.c.dot(qc) + fq.dot(qc);
    };

    const double f_w2 = traj.states.front().c.squaredNorm();
    const double decay = std::exp(-kappa * dt);
    double integral = 0.0;  // int_0^{t_j} K e^{-kappa (t_j - s)} ds, trapezoid
    double k_prev = production(traj.states.front());
    for (std::size_t j = 0; j < m; ++j) {
        const GalerkinState& st = traj.states[j];
        double rel_t = st.t - traj.states.front().t;
        if (j > 0) {
            double k_cur = production(st);
            integral = decay * integral + 0.5 * dt * (k_cur + decay * k_prev);
            k_prev = k_cur;
        }
        rep.times[j] = st.t;
        rep.w_norm_sq[j] = st.c.squaredNorm();
        rep.rhs_reconstruction[j] = f_w2 * std::exp(-kappa * rel_t) + 2.0 * integral;
        rep.residual[j] = rep.w_norm_sq[j] - rep.rhs_reconstruction[j];
    }
    double scale = *std::max_element(rep.w_norm_sq.begin(), rep.w_norm_sq.end());
    if (scale <= 0.0) scale = 1.0;
    for (double r : rep.residual)
        rep.max_rel_residual = std::max(rep.max_rel_residual, std::abs(r) / scale);
    return rep;
}

EnergyReport energy_residual_u(const Trajectory& traj_v, const GalerkinModel& model,
                               const WienerPath& path, const ForceSpec& force) {
    if (traj_v.states.empty())
        throw std::invalid_argument("energy_residual_u: empty trajectory");
    const double eps = traj_v.config.epsilon;
    const double nu = traj_v.config.nu;
    const double alpha = model.grid.alpha;
    const double kappa = 2.0 * nu / alpha;
    const double dt = traj_v.config.dt;
    const Eigen::MatrixXd CQ = curl_q_pairing(model);

    // reconstructed u-side balance: the production is evaluated from the
    // cocycle states u = Q v through K-tilde(u, Q) = K(u / Q, Q)
    auto production = [&](const GalerkinState& st) {
        double Q = q_factor(path, eps, st.t);
        Eigen::VectorXd u_c = Q * st.c;
        Eigen::VectorXd vq = u_c / Q;
        Eigen::VectorXd fq = force.eval(Q * vq, model.lambdas()) / Q;
        Eigen::VectorXd qc = CQ * vq;
        return (nu / alpha) * vq.dot(qc) + fq.dot(qc);
    };

    EnergyReport rep;
    const std::size_t m = traj_v.states.size();
    rep.times.resize(m);
    rep.w_norm_sq.resize(m);
    rep.rhs_reconstruction.resize(m);
    rep.residual.resize(m);

    double Q0 = q_factor(path, eps, traj_v.states.front().t);
    Eigen::VectorXd u0 = Q0 * traj_v.states.front().c;
    const double f_w2 = (u0 / Q0).squaredNorm();
    const double decay = std::exp(-kappa * dt);
    double integral = 0.0;
    double k_prev = production(traj_v.states.front());
    for (std::size_t j = 0; j < m; ++j) {
        const GalerkinState& st = traj_v.states[j];
        double rel_t = st.t - traj_v.states.front().t;
        double Qt = q_factor(path, eps, st.t);
        if (j > 0) {
            double k_cur = production(st);
            integral = decay * integral + 0.5 * dt * (k_cur + decay * k_prev);
            k_prev = k_cur;
        }
        rep.times[j] = st.t;
        rep.w_norm_sq[j] = (Qt * st.c).squaredNorm();
        rep.rhs_reconstruction[j] =
            Qt * Qt * (f_w2 * std::exp(-kappa * rel_t) + 2.0 * integral);
        rep.residual[j] = rep.w_norm_sq[j] - rep.rhs_reconstruction[j];
    }
    double scale = *std::max_element(rep.w_norm_sq.begin(), rep.w_norm_sq.end());
    if (scale <= 0.0) scale = 1.0;
    for (double r : rep.residual)
        rep.max_rel_residual = std::max(rep.max_rel_residual, std::abs(r) / scale);
    return rep;
}

AprioriReport apriori_check(const Trajectory& traj, const GalerkinModel& model,
                            const WienerPath& path, const ForceSpec& force) {
    AprioriReport rep;
    for (const auto& st : traj.states)
        rep.sup_w_norm_sq = std::max(rep.sup_w_norm_sq, st.c.squaredNorm());
    double q_int = 0.0;
    const double dt = traj.config.dt;
    for (std::size_t j = 1; j < traj.states.size(); ++j) {
        double qa = q_factor(path, traj.config.epsilon, traj.states[j - 1].t);
        double qb = q_factor(path, traj.config.epsilon, traj.states[j].t);
        q_int += 0.5 * dt * (1.0 / (qa * qa) + 1.0 / (qb * qb));
    }
    rep.functional = traj.states.front().c.squaredNorm() +
                     force.F0_normV * force.F0_normV * q_int;
    rep.finite = std::isfinite(rep.sup_w_norm_sq) && std::isfinite(rep.functional);
    return rep;
}

std::vector<double> lipschitz_in_w_probe(const GalerkinModel& model, const Eigen::VectorXd& f,
                                         const Eigen::VectorXd& g,
                                         const std::vector<double>& t_grid,
                                         const WienerPath& path, const SolverConfig& config,
                                         const ForceSpec& force) {
    double d0 = (f - g).norm();
    if (d0 == 0.0) throw std::invalid_argument("lipschitz_in_w_probe: identical inputs");
    double t_end = *std::max_element(t_grid.begin(), t_grid.end());
    Trajectory tf = integrate(model, f, config, path, force, 0.0, t_end);
    Trajectory tg = integrate(model, g, config, path, force, 0.0, t_end);
    std::vector<double> ratios;
    ratios.reserve(t_grid.size());
    for (double t : t_grid) {
        auto at = [&](const Trajectory& tr) -> const Eigen::VectorXd& {
            std::size_t j = static_cast<std::size_t>(std::floor(t / config.dt + 0.5));
            return tr.states.at(j).c;
        };
        ratios.push_back((at(tf) - at(tg)).norm() / d0);
    }
    return ratios;
}

}  // namespace sgf
