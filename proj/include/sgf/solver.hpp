#pragma once

#include <stdexcept>
#include <vector>

#include "sgf/model.hpp"
#include "sgf/noise.hpp"

namespace sgf {

enum class Integrator { rk4, heun };

struct SolverConfig {
    double nu = 0.1;       ///< kinematic viscosity, > 0 (0 allowed for the inviscid energy check)
    double epsilon = 0.0;  ///< noise intensity
    double dt = 1e-3;
    Integrator integrator = Integrator::rk4;
    bool disable_advection = false;  ///< debug flag: drop the quadratic term (linear regime)

    void validate() const {
        if (nu < 0.0) throw std::invalid_argument("SolverConfig: nu must be >= 0");
        if (dt <= 0.0) throw std::invalid_argument("SolverConfig: dt must be > 0");
    }
};

struct GalerkinState {
    double t = 0.0;
    Eigen::VectorXd c;  ///< v = sum c_i e_i
};

struct Trajectory {
    std::vector<GalerkinState> states;  ///< uniform spacing dt
    SolverConfig config;
};

/// Integration aborted on non-finite or exploding coefficients; signals a
/// too-large dt, not model failure.
struct BlowUpError : std::runtime_error {
    double t;
    explicit BlowUpError(double time)
        : std::runtime_error("solver blow-up at t = " + std::to_string(time)), t(time) {}
};

/// Coefficient derivative of the conjugated Galerkin system:
/// dc_k/dt = lambda_k [ -nu (G c)_k - Q(t) B(c, c)_k + f_k(c, Q(t)) ].
Eigen::VectorXd rhs(const GalerkinModel& model, const ForceSpec& force, const WienerPath& path,
                    const SolverConfig& config, double t, const Eigen::VectorXd& c);

/// Fixed-step integration of the random-coefficient system over
/// [t_begin, t_end]; every step is stored.
Trajectory integrate(const GalerkinModel& model, const Eigen::VectorXd& f,
                     const SolverConfig& config, const WienerPath& path, const ForceSpec& force,
                     double t_begin, double t_end);

/// v(t, s, f): the system started at time s; solve_shifted(f, 0, t, ...) is
/// the endpoint of integrate over [0, t].
GalerkinState solve_shifted(const GalerkinModel& model, const Eigen::VectorXd& f, double s,
                            double t, const WienerPath& path, const SolverConfig& config,
                            const ForceSpec& force);

/// u(t) = Q(t) v(t), state-wise.
Trajectory reconstruct_u(const Trajectory& traj, const WienerPath& path, double epsilon);

/// Relative V-norm discrepancy of u(t+s, f, w) against
/// u(t, u(s, f, w), theta(s, w)).
double cocycle_check(const GalerkinModel& model, const Eigen::VectorXd& f, double t, double s,
                     const WienerPath& path, const SolverConfig& config, const ForceSpec& force);

/// Relative V-norm discrepancy of Q(s)^{-1} v(t, f, theta(s, w)) against
/// the shifted-start solution v(t+s, s, Q(s)^{-1} f, w).
double conjugation_check(const GalerkinModel& model, const Eigen::VectorXd& f, double t, double s,
                         const WienerPath& path, const SolverConfig& config,
                         const ForceSpec& force);

/// Pullback state u(t, f, theta(-t, w)) = v(0, -t, Q(-t, w)^{-1} f, w).
GalerkinState pullback_value(const GalerkinModel& model, const Eigen::VectorXd& f, double t,
                             const WienerPath& path, const SolverConfig& config,
                             const ForceSpec& force);

}  // namespace sgf
