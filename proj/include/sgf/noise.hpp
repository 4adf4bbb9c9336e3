#pragma once

#include <string>
#include <vector>

namespace sgf {

/// Parameters for sampling a two-sided Brownian path on a uniform grid.
struct NoiseConfig {
    double epsilon = 0.0;  ///< noise intensity; 0 gives the deterministic limit
    std::uint64_t seed = 1;
    double t_min = -10.0;  ///< must be <= 0 and a multiple of dt
    double t_max = 10.0;   ///< must be >= 0 and a multiple of dt
    double dt = 1e-3;

    void validate() const;  // throws std::invalid_argument
};

/// A two-sided Brownian sample path on a uniform grid, with W(0) = 0 exactly.
/// Values between nodes are obtained by linear interpolation.  Immutable after
/// construction; safe for concurrent readers.
class WienerPath {
public:
    WienerPath(double t_min, double t_max, double dt, std::uint64_t seed,
               std::vector<double> values);

    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    double dt() const { return dt_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t node_count() const { return values_.size(); }

    /// W(t); linear interpolation between nodes.  Throws if t is outside
    /// [t_min, t_max].
    double value_at(double t) const;

    /// Nearest node index for a grid-aligned time; throws if t is not within
    /// rounding distance of a node or outside the window.
    std::size_t node_index(double t) const;

    bool contains(double t) const {
        return t >= t_min_ - 0.5 * dt_ * kNodeTol && t <= t_max_ + 0.5 * dt_ * kNodeTol;
    }

    static constexpr double kNodeTol = 1e-6;

private:
    double t_min_, t_max_, dt_;
    std::uint64_t seed_;
    std::vector<double> values_;
};

/// Sample a two-sided path: two independent one-sided increment streams glued
/// at 0.  Increments are N(0, dt), produced by mt19937_64 + Box-Muller so the
/// path is bit-reproducible from the seed across platforms.
WienerPath sample_path(const NoiseConfig& config);

/// Wiener shift: theta(s, w)(r) = w(s + r) - w(s).  s must be a grid node; the
/// returned window is [t_min - s, t_max - s].
WienerPath shift(const WienerPath& path, double s);

/// Conjugation factor Q(t, w) = exp(epsilon * W(t)).  Always > 0.
double q_factor(const WienerPath& path, double epsilon, double t);

/// Plain-text export: header `t_min t_max dt seed`, one node value per line.
void export_path(const WienerPath& path, const std::string& filename);
WienerPath import_path(const std::string& filename);

}  // namespace sgf
