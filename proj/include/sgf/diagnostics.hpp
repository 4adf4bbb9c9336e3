#pragma once

#include "sgf/solver.hpp"

namespace sgf {

/// Residual series of the W-energy equation along a trajectory.  The equation
/// is exact only in the continuum limit; the residual is a truncation
/// diagnostic that must shrink as the mode count grows.
struct EnergyReport {
    std::vector<double> times;
    std::vector<double> w_norm_sq;           ///< |v(t)|_W^2 from the coefficients
    std::vector<double> rhs_reconstruction;  ///< decay term + integral of the production K
    std::vector<double> residual;            ///< w_norm_sq - rhs_reconstruction
    double max_rel_residual = 0.0;           ///< max |residual| / max w_norm_sq
};

/// |v(t)|_W^2 against |f|_W^2 e^{-2 nu t/alpha} + 2 int_0^t K e^{-2 nu (t-s)/alpha} ds,
/// with K(v, Q) = ((nu/alpha) curl v + curl(Q^{-1} F(Q v)), curl(v - alpha Lap v))
/// evaluated by grid quadrature; time integral by the trapezoid rule.
EnergyReport energy_residual_v(const Trajectory& traj, const GalerkinModel& model,
                               const WienerPath& path, const ForceSpec& force);

/// Same balance for u = Q v; residual_u(t) = Q(t)^2 residual_v(t) identically.
EnergyReport energy_residual_u(const Trajectory& traj_v, const GalerkinModel& model,
                               const WienerPath& path, const ForceSpec& force);

struct AprioriReport {
    double sup_w_norm_sq = 0.0;  ///< sup over the trajectory of |v|_W^2
    double functional = 0.0;     ///< |f|_W^2 + |F(0)|_V^2 int_0^T Q^{-2}
    bool finite = false;
};

AprioriReport apriori_check(const Trajectory& traj, const GalerkinModel& model,
                            const WienerPath& path, const ForceSpec& force);

/// Series of |v(t,f) - v(t,g)|_W / |f - g|_W at the requested times; rejects
/// identical inputs.
std::vector<double> lipschitz_in_w_probe(const GalerkinModel& model, const Eigen::VectorXd& f,
                                         const Eigen::VectorXd& g,
                                         const std::vector<double>& t_grid,
                                         const WienerPath& path, const SolverConfig& config,
                                         const ForceSpec& force);

}  // namespace sgf
