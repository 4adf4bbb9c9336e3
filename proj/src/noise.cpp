#include "sgf/noise.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sgf {

namespace {

// Gaussian draws via Box-Muller on explicit mt19937_64 output, so results do
// not depend on the standard library's std::normal_distribution.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform_open();
        double u2 = uniform_open();
        double r = std::sqrt(-2.0 * std::log(u1));
        double phi = 2.0 * M_PI * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

private:
    double uniform_open() {
        // in (0, 1); never returns 0 so log is safe
        return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

long round_to_long(double x) { return static_cast<long>(std::floor(x + 0.5)); }

}  // namespace

void NoiseConfig::validate() const {
    if (dt <= 0.0) throw std::invalid_argument("NoiseConfig: dt must be > 0");
    if (t_min > 0.0 || t_max < 0.0)
        throw std::invalid_argument("NoiseConfig: window must contain 0 (t_min <= 0 <= t_max)");
    auto on_grid = [this](double t) {
        double k = t / dt;
        return std::abs(k - std::floor(k + 0.5)) < WienerPath::kNodeTol;
    };
    if (!on_grid(t_min) || !on_grid(t_max))
        throw std::invalid_argument("NoiseConfig: t_min and t_max must be multiples of dt");
}

WienerPath::WienerPath(double t_min, double t_max, double dt, std::uint64_t seed,
                       std::vector<double> values)
    : t_min_(t_min), t_max_(t_max), dt_(dt), seed_(seed), values_(std::move(values)) {
    std::size_t expected = static_cast<std::size_t>(round_to_long((t_max_ - t_min_) / dt_)) + 1;
    if (values_.size() != expected)
        throw std::invalid_argument("WienerPath: node count does not match window");
}

double WienerPath::value_at(double t) const {
    if (!contains(t)) {
        std::ostringstream os;
        os << "WienerPath: time " << t << " outside stored window [" << t_min_ << ", " << t_max_ << "]";
        throw std::out_of_range(os.str());
    }
    double x = (t - t_min_) / dt_;
    long i = static_cast<long>(std::floor(x));
    if (i < 0) i = 0;
    if (i >= static_cast<long>(values_.size()) - 1) i = static_cast<long>(values_.size()) - 2;
    double frac = x - static_cast<double>(i);
    if (frac < kNodeTol) return values_[static_cast<std::size_t>(i)];
    if (frac > 1.0 - kNodeTol) return values_[static_cast<std::size_t>(i) + 1];
    return (1.0 - frac) * values_[static_cast<std::size_t>(i)] +
           frac * values_[static_cast<std::size_t>(i) + 1];
}

std::size_t WienerPath::node_index(double t) const {
    double x = (t - t_min_) / dt_;
    long i = round_to_long(x);
    if (std::abs(x - static_cast<double>(i)) > kNodeTol)
        throw std::invalid_argument("WienerPath: time is not a grid node");
    if (i < 0 || i >= static_cast<long>(values_.size()))
        throw std::out_of_range("WienerPath: node outside stored window");
    return static_cast<std::size_t>(i);
}

WienerPath sample_path(const NoiseConfig& config) {
    config.validate();
    long n_neg = round_to_long(-config.t_min / config.dt);
    long n_pos = round_to_long(config.t_max / config.dt);
    double sqdt = std::sqrt(config.dt);

    std::vector<double> values(static_cast<std::size_t>(n_neg + n_pos) + 1, 0.0);
    std::size_t zero = static_cast<std::size_t>(n_neg);

    // Positive side first, then the independent negative side, from one
    // seeded stream in a fixed draw order.
    GaussianStream g(config.seed);
    double w = 0.0;
    for (long k = 1; k <= n_pos; ++k) {
        w += sqdt * g.next();
        values[zero + static_cast<std::size_t>(k)] = w;
    }
    w = 0.0;
    for (long k = 1; k <= n_neg; ++k) {
        w -= sqdt * g.next();
        values[zero - static_cast<std::size_t>(k)] = w;
    }
    return WienerPath(config.t_min, config.t_max, config.dt, config.seed, std::move(values));
}

WienerPath shift(const WienerPath& path, double s) {
    std::size_t k = path.node_index(s);  // throws if s is off-grid or outside window
    double ws = path.values()[k];
    std::vector<double> values(path.values().size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = path.values()[i] - ws;
    // node i now holds w(t_min + i dt) - w(s) = theta(s,w)(t_min - s + i dt)
    return WienerPath(path.t_min() - s, path.t_max() - s, path.dt(), path.seed(), std::move(values));
}

double q_factor(const WienerPath& path, double epsilon, double t) {
    if (epsilon == 0.0) {
        if (!path.contains(t)) throw std::out_of_range("q_factor: time outside path window");
        return 1.0;
    }
    return std::exp(epsilon * path.value_at(t));
}

void export_path(const WienerPath& path, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("export_path: cannot open " + filename);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %llu\n", path.t_min(), path.t_max(),
                  path.dt(), static_cast<unsigned long long>(path.seed()));
    out << buf;
    for (double v : path.values()) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
    }
}

WienerPath import_path(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::runtime_error("import_path: cannot open " + filename);
    double t_min, t_max, dt;
    unsigned long long seed;
    if (!(in >> t_min >> t_max >> dt >> seed))
        throw std::runtime_error("import_path: malformed header in " + filename);
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    return WienerPath(t_min, t_max, dt, seed, std::move(values));
}

}  // namespace sgf
