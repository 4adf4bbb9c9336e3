#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "sgf/noise.hpp"

using namespace sgf;

namespace {
NoiseConfig reference_config() {
    NoiseConfig nc;
    nc.epsilon = 0.5;
    nc.seed = 7;
    nc.t_min = -4.0;
    nc.t_max = 4.0;
    nc.dt = 1e-3;
    return nc;
}
}  // namespace

TEST_CASE("path pins the origin and the window") {
    WienerPath path = sample_path(reference_config());
    CHECK(path.value_at(0.0) == 0.0);
    CHECK(path.t_min() == -4.0);
    CHECK(path.t_max() == 4.0);
    CHECK(path.node_count() == 8001);
    CHECK_THROWS_AS(path.value_at(4.5), std::out_of_range);
    CHECK_THROWS_AS(path.value_at(-4.001), std::out_of_range);
}

TEST_CASE("increments have Brownian statistics") {
    NoiseConfig nc = reference_config();
    nc.t_min = -50.0;
    nc.t_max = 50.0;
    WienerPath path = sample_path(nc);
    const auto& v = path.values();
    double sum = 0.0, sum2 = 0.0;
    const std::size_t m = v.size() - 1;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        double inc = v[i + 1] - v[i];
        sum += inc;
        sum2 += inc * inc;
    }
    double mean = sum / static_cast<double>(m);
    double var = sum2 / static_cast<double>(m);
    // 100000 samples of N(0, 1e-3): mean std err ~ 1e-4, variance rel err ~ 0.45%
    CHECK(std::abs(mean) < 5e-4);
    CHECK(var == doctest::Approx(nc.dt).epsilon(0.03));
    // fourth-moment check rules out a uniform or clipped generator
    double sum4 = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        double inc = v[i + 1] - v[i];
        sum4 += inc * inc * inc * inc;
    }
    double kurt = (sum4 / static_cast<double>(m)) / (var * var);
    CHECK(kurt == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("sampling is deterministic in the seed") {
    WienerPath a = sample_path(reference_config());
    WienerPath b = sample_path(reference_config());
    CHECK(a.values() == b.values());
    NoiseConfig other = reference_config();
    other.seed = 8;
    WienerPath c = sample_path(other);
    CHECK(a.values() != c.values());
}

TEST_CASE("interpolation between nodes is linear") {
    WienerPath path = sample_path(reference_config());
    double t0 = 0.123, t1 = 0.124;
    double mid = path.value_at(0.5 * (t0 + t1));
    CHECK(mid == doctest::Approx(0.5 * (path.value_at(t0) + path.value_at(t1))).epsilon(1e-12));
}

TEST_CASE("wiener shift subtracts the anchor value") {
    WienerPath path = sample_path(reference_config());
    double s = 1.25;
    WienerPath shifted = shift(path, s);
    CHECK(shifted.t_min() == doctest::Approx(path.t_min() - s));
    CHECK(shifted.t_max() == doctest::Approx(path.t_max() - s));
    CHECK(shifted.value_at(0.0) == 0.0);
    for (double r : {-2.0, -0.5, 0.75, 2.5})
        CHECK(shifted.value_at(r) ==
              doctest::Approx(path.value_at(s + r) - path.value_at(s)).epsilon(1e-14));
    SUBCASE("composition of shifts matches a single shift") {
        WienerPath twice = shift(shifted, 0.5);
        WienerPath direct = shift(path, s + 0.5);
        for (double r : {-1.0, 0.25, 1.5})
            CHECK(twice.value_at(r) == doctest::Approx(direct.value_at(r)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(shift(path, 1.2504), std::invalid_argument);  // not a grid node
}

TEST_CASE("conjugation factor") {
    WienerPath path = sample_path(reference_config());
    CHECK(q_factor(path, 0.0, 1.0) == 1.0);
    double w = path.value_at(2.0);
    CHECK(q_factor(path, 0.5, 2.0) == doctest::Approx(std::exp(0.5 * w)).epsilon(1e-14));
    CHECK(q_factor(path, -0.5, 2.0) == doctest::Approx(std::exp(-0.5 * w)).epsilon(1e-14));
    CHECK(q_factor(path, 0.5, 2.0) > 0.0);
    CHECK_THROWS_AS(q_factor(path, 0.5, 100.0), std::out_of_range);
}

TEST_CASE("cocycle property of Q along the shift") {
    WienerPath path = sample_path(reference_config());
    double s = 0.5, t = 1.0, eps = 0.5;
    WienerPath shifted = shift(path, s);
    CHECK(q_factor(path, eps, t + s) ==
          doctest::Approx(q_factor(shifted, eps, t) * q_factor(path, eps, s)).epsilon(1e-13));
}

TEST_CASE("export and import round-trip") {
    WienerPath path = sample_path(reference_config());
    std::string file = (std::filesystem::temp_directory_path() / "sgf_path_test.txt").string();
    export_path(path, file);
    WienerPath back = import_path(file);
    CHECK(back.t_min() == path.t_min());
    CHECK(back.dt() == path.dt());
    CHECK(back.values() == path.values());
    std::remove(file.c_str());
}

TEST_CASE("config validation") {
    NoiseConfig nc = reference_config();
    nc.dt = 0.0;
    CHECK_THROWS_AS(nc.validate(), std::invalid_argument);
    nc = reference_config();
    nc.t_min = 1.0;
    CHECK_THROWS_AS(nc.validate(), std::invalid_argument);
    nc = reference_config();
    nc.t_max = -1.0;
    CHECK_THROWS_AS(nc.validate(), std::invalid_argument);
}
