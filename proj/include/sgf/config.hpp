#pragma once

#include <string>
#include <vector>

namespace sgf {

enum class RunKind { simulate, verify, linearize, pullback, attractor, sweep };

std::string to_string(RunKind kind);
RunKind run_kind_from_string(const std::string& s);

/// Flat experiment configuration; one `key = value` per line, `#` comments.
/// Unknown keys are rejected so typos cannot silently fall back to defaults.
struct RunConfig {
    RunKind kind = RunKind::simulate;

    // discretization
    int N = 16;
    int n_modes = 8;
    double alpha = 0.1;

    // solver
    double nu = 0.1;
    double epsilon = 0.0;
    double dt = 1e-3;
    std::string integrator = "rk4";  // rk4 | heun

    // noise
    std::uint64_t seed = 1;
    double t_min = -25.0;
    double t_max = 5.0;

    // force: zero | constant | linear | saturating; amp is the coefficient of
    // the first basis mode of the constant part
    std::string force = "zero";
    double force_amp = 0.0;
    double force_gain = 0.0;
    double force_sat = 1.0;

    // experiment parameters
    double t_end = 1.0;                  // simulate / linearize horizon
    double init_amp = 1.0;               // first-mode amplitude of the initial datum
    std::vector<double> pullback_times = {2.0, 5.0, 10.0, 20.0};
    std::vector<double> eps_list = {0.5, 0.25, 0.1, 0.05};
    double tol = 1e-3;
    double tail_time = 20.0;

    std::string out_dir = "out";
    bool dump_coefficients = false;

    void validate() const;       // structural checks only, no model required
    std::string serialize() const;  // round-trips through parse_config
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& file);

}  // namespace sgf
