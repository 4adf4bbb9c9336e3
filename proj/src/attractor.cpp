#include "sgf/attractor.hpp"

#include <cmath>

namespace sgf {

double hausdorff_semidistance(const std::vector<Eigen::VectorXd>& A,
                              const std::vector<Eigen::VectorXd>& B, const GalerkinModel& model,
                              SetNorm norm) {
    if (A.empty() || B.empty())
        throw std::invalid_argument("hausdorff_semidistance: empty point set");
    auto dist = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return norm == SetNorm::V ? model.v_norm(a - b) : (a - b).norm();
    };
    double d = 0.0;
    for (const auto& a : A) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& b : B) best = std::min(best, dist(a, b));
        d = std::max(d, best);
    }
    return d;
}

std::vector<Eigen::VectorXd> probe_cloud(const GalerkinModel& model, int count, double scale) {
    const int n = model.n();
    std::vector<Eigen::VectorXd> cloud;
    cloud.reserve(static_cast<std::size_t>(count));
    cloud.push_back(Eigen::VectorXd::Zero(n));
    for (int k = 1; k < count; ++k) {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
        double c = std::cos(static_cast<double>(k)), s = std::sin(static_cast<double>(k));
        p(k % n) += c;
        p((k + 1) % n) += s;
        double mag = scale * (0.5 + 0.5 * static_cast<double>(k) / std::max(count - 1, 1));
        cloud.push_back(mag / p.norm() * p);
    }
    return cloud;
}

std::vector<GalerkinState> pullback_ensemble(const GalerkinModel& model,
                                             const std::vector<Eigen::VectorXd>& f_set, double t,
                                             const WienerPath& path, const SolverConfig& config,
                                             const ForceSpec& force) {
    std::vector<GalerkinState> out;
    out.reserve(f_set.size());
    for (const auto& f : f_set)
        out.push_back(pullback_value(model, f, t, path, config, force));
    return out;
}

namespace {

// Largest generalized eigenvalue of the symmetric pencil (A, M), M > 0.
double max_gen_eig(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("max_gen_eig: eigensolver failed");
    return es.eigenvalues().maxCoeff();
}

}  // namespace

RadiusReport radius(const GalerkinModel& model, const WienerPath& path,
                    const SolverConfig& config, const ForceSpec& force, double T_tail) {
    RadiusReport rep;
    const double alpha = model.grid.alpha;
    const double P2 = model.poincare.P2;
    rep.lambda = (config.nu - P2 * force.C_F) / (P2 + alpha);
    rep.gamma = config.nu / alpha;
    rep.tail_time = T_tail;
    if (rep.lambda <= 0.0)
        throw std::invalid_argument(
            "radius: force Lipschitz constant too large, need C_F < nu / P^2");
    if (rep.gamma <= rep.lambda)
        throw std::invalid_argument("radius: decay-rate ordering gamma > lambda violated");
    if (T_tail <= 0.0 || -T_tail < path.t_min() - 0.5 * path.dt())
        throw std::out_of_range("radius: tail window insufficient");

    // measured operator norms on the discrete matrices
    const double h2 = model.grid.h * model.grid.h;
    Eigen::MatrixXd C = h2 * model.forms.L * model.forms.L;
    C = 0.5 * (C + C.transpose()).eval();
    rep.kappa2 = max_gen_eig(C, model.forms.MV);

    Eigen::MatrixXd R = model.lambdas().asDiagonal() * model.E0;
    Eigen::MatrixXd Vinv = model.lambdas().cwiseInverse().asDiagonal();
    rep.rho_w = std::sqrt(max_gen_eig(R.transpose() * R, Vinv));

    double C_A = 2.0 * rep.gamma * rep.kappa2 +
                 (4.0 / rep.gamma) * rep.rho_w * rep.rho_w * force.C_F * force.C_F;
    double C_B = (4.0 / rep.gamma) * rep.rho_w * rep.rho_w;
    rep.c_chain = C_A / (rep.lambda * (rep.gamma - rep.lambda)) + C_B;

    // trapezoid over [-T_tail, 0] on the path grid
    long m = static_cast<long>(std::floor(T_tail / path.dt() + 0.5));
    if (std::abs(T_tail - static_cast<double>(m) * path.dt()) > WienerPath::kNodeTol * path.dt())
        throw std::invalid_argument("radius: T_tail is not a multiple of the path step");
    auto integrand = [&](double s) {
        double Q = q_factor(path, config.epsilon, s);
        return std::exp(rep.lambda * s) / (Q * Q);
    };
    double acc = 0.5 * (integrand(-T_tail) + integrand(0.0));
    for (long i = 1; i < m; ++i) acc += integrand(-T_tail + static_cast<double>(i) * path.dt());
    rep.integral = acc * path.dt();

    double max_qinv2 = 0.0;
    for (double s = path.t_min(); s <= 0.0 + 0.5 * path.dt(); s += path.dt()) {
        double Q = q_factor(path, config.epsilon, s);
        max_qinv2 = std::max(max_qinv2, 1.0 / (Q * Q));
    }
    rep.remainder_bound = max_qinv2 * std::exp(-rep.lambda * T_tail) / rep.lambda;

    rep.r_certified = std::sqrt(1.0 + rep.c_chain * force.F0_normV * force.F0_normV *
                                          (rep.integral + rep.remainder_bound));

    // long-run pullback sup over a fixed probe cloud near the end of the window
    double t_emp = std::min(T_tail, -path.t_min());
    t_emp = std::floor(t_emp / path.dt() + 0.5) * path.dt();
    std::vector<Eigen::VectorXd> cloud = probe_cloud(model, 5, 2.0);
    double sup = 0.0;
    for (double t : {t_emp, t_emp - 1.0, t_emp - 2.0}) {
        if (t <= 0.0) continue;
        for (const auto& st : pullback_ensemble(model, cloud, t, path, config, force))
            sup = std::max(sup, st.c.norm());
    }
    rep.r_empirical = 1.05 * sup;
    return rep;
}

AttractorEstimate attractor_estimate(const GalerkinModel& model, const WienerPath& path,
                                     const SolverConfig& config, const ForceSpec& force,
                                     const std::vector<double>& t_list, double tol) {
    if (t_list.empty()) throw std::invalid_argument("attractor_estimate: empty time list");
    for (std::size_t i = 1; i < t_list.size(); ++i)
        if (t_list[i] <= t_list[i - 1])
            throw std::invalid_argument("attractor_estimate: times must increase");

    std::vector<Eigen::VectorXd> cloud = probe_cloud(model, 6, 1.0);
    AttractorEstimate est;
    std::vector<Eigen::VectorXd> prev;
    for (double t : t_list) {
        std::vector<Eigen::VectorXd> snap;
        snap.reserve(cloud.size());
        for (const auto& st : pullback_ensemble(model, cloud, t, path, config, force))
            snap.push_back(st.c);
        if (!prev.empty()) {
            double gap = std::max(hausdorff_semidistance(snap, prev, model, SetNorm::W),
                                  hausdorff_semidistance(prev, snap, model, SetNorm::W));
            est.cauchy_gaps.push_back(gap);
        }
        est.pullback_times.push_back(t);
        prev = std::move(snap);
    }
    est.points = std::move(prev);
    est.converged = !est.cauchy_gaps.empty() && est.cauchy_gaps.back() < tol;
    return est;
}

SemiDistanceReport epsilon_sweep(const GalerkinModel& model, const std::vector<double>& eps_list,
                                 const WienerPath& path, const ForceSpec& force,
                                 const SolverConfig& config, const std::vector<double>& t_list,
                                 double tol) {
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (std::abs(eps_list[i]) >= std::abs(eps_list[i - 1]))
            throw std::invalid_argument("epsilon_sweep: intensities must decrease toward 0");

    SolverConfig base = config;
    base.epsilon = 0.0;
    AttractorEstimate zero = attractor_estimate(model, path, base, force, t_list, tol);

    SemiDistanceReport rep;
    for (double eps : eps_list) {
        SolverConfig cfg = config;
        cfg.epsilon = eps;
        AttractorEstimate est = attractor_estimate(model, path, cfg, force, t_list, tol);
        rep.eps_values.push_back(eps);
        rep.distances.push_back(
            hausdorff_semidistance(est.points, zero.points, model, SetNorm::V));
    }
    return rep;
}

std::vector<double> uniform_absorbing_probe(const GalerkinModel& model,
                                            const std::vector<double>& eps_list,
                                            const std::vector<Eigen::VectorXd>& f_set, double t,
                                            const WienerPath& path, const SolverConfig& config,
                                            const ForceSpec& force) {
    std::vector<double> out;
    out.reserve(eps_list.size());
    for (double eps : eps_list) {
        if (std::abs(eps) >= 1.0)
            throw std::invalid_argument("uniform_absorbing_probe: |epsilon| must be < 1");
        SolverConfig cfg = config;
        cfg.epsilon = eps;
        double m = 0.0;
        for (const auto& st : pullback_ensemble(model, f_set, t, path, cfg, force))
            m = std::max(m, st.c.norm());
        out.push_back(m);
    }
    return out;
}

}  // namespace sgf
