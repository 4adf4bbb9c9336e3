#pragma once

#include "sgf/solver.hpp"

namespace sgf {

enum class SetNorm { V, W };

/// Absorbing-radius report.  r_certified comes from the analytic constant
/// chain with the operator norms measured on the discrete matrices;
/// r_empirical is the long-run pullback supremum of a probe ensemble.
struct RadiusReport {
    double lambda = 0.0;           ///< (nu - P^2 C_F) / (P^2 + alpha), must be > 0
    double gamma = 0.0;            ///< nu / alpha, must exceed lambda
    double kappa2 = 0.0;           ///< measured |curl|^2 as V -> L2 operator norm
    double rho_w = 0.0;            ///< measured resolvent norm V -> W
    double c_chain = 0.0;          ///< assembled constant multiplying |F(0)|_V^2
    double integral = 0.0;         ///< int_{-T_tail}^0 e^{lambda s} Q(s)^{-2} ds
    double tail_time = 0.0;
    double remainder_bound = 0.0;  ///< realized max of Q^{-2} times the tail mass
    double r_certified = 0.0;
    double r_empirical = 0.0;
};

struct AttractorEstimate {
    std::vector<Eigen::VectorXd> points;  ///< pullback images at time 0
    std::vector<double> pullback_times;
    std::vector<double> cauchy_gaps;      ///< W-Hausdorff gap between successive snapshots
    bool converged = false;               ///< final gap below the requested tolerance
};

struct SemiDistanceReport {
    std::vector<double> eps_values;
    std::vector<double> distances;  ///< d(A^eps, A^0) in the V norm
};

/// d(A, B) = sup over A of the distance to B in the chosen norm.
double hausdorff_semidistance(const std::vector<Eigen::VectorXd>& A,
                              const std::vector<Eigen::VectorXd>& B, const GalerkinModel& model,
                              SetNorm norm);

/// Deterministic probe cloud of `count` points with W-norms up to `scale`,
/// spread over the low basis directions.  Shared by the estimate routines so
/// runs are reproducible without extra configuration.
std::vector<Eigen::VectorXd> probe_cloud(const GalerkinModel& model, int count, double scale);

std::vector<GalerkinState> pullback_ensemble(const GalerkinModel& model,
                                             const std::vector<Eigen::VectorXd>& f_set, double t,
                                             const WienerPath& path, const SolverConfig& config,
                                             const ForceSpec& force);

RadiusReport radius(const GalerkinModel& model, const WienerPath& path,
                    const SolverConfig& config, const ForceSpec& force, double T_tail);

AttractorEstimate attractor_estimate(const GalerkinModel& model, const WienerPath& path,
                                     const SolverConfig& config, const ForceSpec& force,
                                     const std::vector<double>& t_list, double tol);

SemiDistanceReport epsilon_sweep(const GalerkinModel& model, const std::vector<double>& eps_list,
                                 const WienerPath& path, const ForceSpec& force,
                                 const SolverConfig& config, const std::vector<double>& t_list,
                                 double tol);

/// Max pullback W-norm of f_set at time t for each noise intensity; a common
/// bound across the list witnesses the uniform absorbing property.
std::vector<double> uniform_absorbing_probe(const GalerkinModel& model,
                                            const std::vector<double>& eps_list,
                                            const std::vector<Eigen::VectorXd>& f_set, double t,
                                            const WienerPath& path, const SolverConfig& config,
                                            const ForceSpec& force);

}  // namespace sgf
