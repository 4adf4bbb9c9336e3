#pragma once

#include "sgf/solver.hpp"

namespace sgf {

struct TangentState {
    double t = 0.0;
    Eigen::VectorXd c;  ///< base trajectory coefficients
    Eigen::VectorXd z;  ///< tangent coefficients
};

/// Derivative of the tangent coefficients along a base state:
/// dz_k/dt = lambda_k [ -nu (G z)_k - Q (B(z, c) + B(c, z))_k + DF-hat terms ].
Eigen::VectorXd tangent_rhs(const GalerkinModel& model, const ForceSpec& force,
                            const WienerPath& path, const SolverConfig& config, double t,
                            const Eigen::VectorXd& c, const Eigen::VectorXd& z);

/// Base and tangent advanced together by the same scheme and steps, so the
/// tangent is the exact derivative of the discrete flow map.
std::vector<TangentState> integrate_tangent(const GalerkinModel& model, const Eigen::VectorXd& f,
                                            const Eigen::VectorXd& g, const SolverConfig& config,
                                            const WienerPath& path, const ForceSpec& force,
                                            double t_begin, double t_end);

struct FdCheckReport {
    std::vector<double> steps;      ///< finite-difference step sizes h
    std::vector<double> errors;     ///< |(v(f + h g) - v(f))/h - z|_W at the end time
    double fitted_order = 0.0;      ///< log-log least-squares slope over the step list
    double tangent_norm = 0.0;      ///< |z(t)|_W for scale reference
};

/// Directional finite differences of the flow against the tangent solution at
/// time t.  Steps below the cancellation floor h < 1e-7 |f|_W / |g|_W are
/// rejected because round-off in the difference quotient would dominate.
FdCheckReport fd_derivative_check(const GalerkinModel& model, const Eigen::VectorXd& f,
                                  const Eigen::VectorXd& g, const std::vector<double>& steps,
                                  double t, const WienerPath& path, const SolverConfig& config,
                                  const ForceSpec& force);

/// Max over a probe set of |z(t, f, g1 + g2) - z(t, f, g1) - z(t, f, g2)|_W,
/// checking linearity of the tangent map in its direction argument.
double tangent_linearity_defect(const GalerkinModel& model, const Eigen::VectorXd& f,
                                const Eigen::VectorXd& g1, const Eigen::VectorXd& g2, double t,
                                const WienerPath& path, const SolverConfig& config,
                                const ForceSpec& force);

}  // namespace sgf
