#pragma once

#include <iosfwd>

#include "sgf/attractor.hpp"
#include "sgf/config.hpp"
#include "sgf/diagnostics.hpp"
#include "sgf/linearization.hpp"

namespace sgf {

ForceSpec make_force(const RunConfig& cfg, const Eigen::VectorXd& lambdas);
SolverConfig make_solver_config(const RunConfig& cfg);
NoiseConfig make_noise_config(const RunConfig& cfg);

/// Initial datum used by the experiments: init_amp on the first basis mode.
Eigen::VectorXd initial_datum(const RunConfig& cfg, int n);

/// Execute the configured experiment, writing all artifacts under
/// cfg.out_dir.  Every artifact embeds the config echo.  Returns a process
/// exit status; `verify` returns nonzero when any residual exceeds its
/// documented tolerance.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace sgf
