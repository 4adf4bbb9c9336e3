#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "sgf/solver.hpp"

using namespace sgf;

namespace {

const GalerkinModel& model16() {
    static GalerkinModel model = GalerkinModel::build(16, 0.1, 8);
    return model;
}

WienerPath make_path(double eps_seed, double t_min = -4.0, double t_max = 4.0) {
    NoiseConfig nc;
    nc.seed = static_cast<std::uint64_t>(eps_seed);
    nc.t_min = t_min;
    nc.t_max = t_max;
    nc.dt = 1e-3;
    return sample_path(nc);
}

Eigen::VectorXd datum(const GalerkinModel& m) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(m.n());
    f(0) = 1.0;
    f(1) = 0.5;
    f(2) = 0.25;
    return f;
}

}  // namespace

TEST_CASE("trajectory bookkeeping") {
    const GalerkinModel& m = model16();
    WienerPath path = make_path(1);
    SolverConfig sc;
    Trajectory traj = integrate(m, datum(m), sc, path, ForceSpec::zero(), 0.0, 0.25);
    REQUIRE(traj.states.size() == 251);
    CHECK(traj.states.front().t == 0.0);
    CHECK(traj.states.back().t == doctest::Approx(0.25));
    CHECK(traj.states.front().c == datum(m));

    CHECK_THROWS_AS(integrate(m, datum(m), sc, path, ForceSpec::zero(), 0.0, 10.0),
                    std::out_of_range);
    CHECK_THROWS_AS(integrate(m, datum(m), sc, path, ForceSpec::zero(), 0.0, 0.10037),
                    std::invalid_argument);
    SolverConfig bad = sc;
    bad.dt = 0.0;
    CHECK_THROWS_AS(integrate(m, datum(m), bad, path, ForceSpec::zero(), 0.0, 0.25),
                    std::invalid_argument);
}

TEST_CASE("linear regime matches the matrix exponential") {
    const GalerkinModel& m = model16();
    WienerPath path = make_path(1);
    SolverConfig sc;
    sc.nu = 0.2;
    sc.disable_advection = true;
    Eigen::VectorXd f = datum(m);
    GalerkinState end = solve_shifted(m, f, 0.0, 0.5, path, sc, ForceSpec::zero());

    // independent oracle: c(t) = exp(-nu t Lambda G) f via a dense matrix
    // exponential, no time stepping involved
    Eigen::MatrixXd A = -sc.nu * (m.lambdas().asDiagonal() * m.grad.G);
    Eigen::VectorXd exact = (0.5 * A).exp() * f;
    CHECK((end.c - exact).norm() < 1e-9 * exact.norm());
}

TEST_CASE("integrator orders in the deterministic nonlinear regime") {
    const GalerkinModel& m = model16();
    WienerPath path = make_path(1);
    Eigen::VectorXd f = datum(m);
    ForceSpec force = ForceSpec::constant(
        (Eigen::VectorXd(m.n()) << 0.5, 0.25, 0, 0, 0, 0, 0, 0).finished(), m.lambdas());

    auto end_at = [&](Integrator kind, double dt) {
        SolverConfig sc;
        sc.dt = dt;
        sc.integrator = kind;
        return solve_shifted(m, f, 0.0, 0.5, path, sc, force).c;
    };
    Eigen::VectorXd ref = end_at(Integrator::rk4, 1.25e-4);

    double rk_a = (end_at(Integrator::rk4, 4e-3) - ref).norm();
    double rk_b = (end_at(Integrator::rk4, 2e-3) - ref).norm();
    CHECK(rk_a / rk_b > 12.0);  // order 4 halving ratio 16
    CHECK(rk_a / rk_b < 24.0);

    double he_a = (end_at(Integrator::heun, 4e-3) - ref).norm();
    double he_b = (end_at(Integrator::heun, 2e-3) - ref).norm();
    CHECK(he_a / he_b > 3.2);  // order 2 halving ratio 4
    CHECK(he_a / he_b < 5.0);

    // both schemes converge to the same flow
    CHECK((end_at(Integrator::heun, 5e-4) - ref).norm() < 1e-6);
}

TEST_CASE("cocycle and conjugation residuals at round-off") {
    const GalerkinModel& m = model16();
    WienerPath path = make_path(1);
    Eigen::VectorXd f = datum(m);
    ForceSpec force = ForceSpec::constant(
        (Eigen::VectorXd(m.n()) << 0.5, 0.25, 0, 0, 0, 0, 0, 0).finished(), m.lambdas());
    for (double eps : {0.0, 0.5}) {
        SolverConfig sc;
        sc.epsilon = eps;
        CHECK(cocycle_check(m, f, 0.5, 0.5, path, sc, force) < 1e-12);
        CHECK(conjugation_check(m, f, 0.5, 0.5, path, sc, force) < 1e-12);
    }
}

TEST_CASE("u reconstruction scales states by Q") {
    const GalerkinModel& m = model16();
    WienerPath path = make_path(1);
    SolverConfig sc;
    sc.epsilon = 0.5;
    Trajectory v = integrate(m, datum(m), sc, path, ForceSpec::zero(), 0.0, 0.1);
    Trajectory u = reconstruct_u(v, path, sc.epsilon);
    REQUIRE(u.states.size() == v.states.size());
    for (std::size_t j = 0; j < v.states.size(); ++j) {
        double Q = q_factor(path, sc.epsilon, v.states[j].t);
        CHECK((u.states[j].c - Q * v.states[j].c).lpNorm<Eigen::Infinity>() == 0.0);
    }
}

TEST_CASE("pullback value") {
    const GalerkinModel& m = model16();
    WienerPath path = make_path(1);
    SolverConfig sc;
    sc.epsilon = 0.5;
    Eigen::VectorXd f = datum(m);
    ForceSpec force = ForceSpec::zero();

    GalerkinState at0 = pullback_value(m, f, 0.0, path, sc, force);
    CHECK(at0.c == f);

    // agrees with a manual shifted-start solve
    double t = 1.5;
    double Q = q_factor(path, sc.epsilon, -t);
    GalerkinState manual = solve_shifted(m, f / Q, -t, 0.0, path, sc, force);
    GalerkinState pb = pullback_value(m, f, t, path, sc, force);
    CHECK((pb.c - manual.c).norm() == 0.0);

    CHECK_THROWS_AS(pullback_value(m, f, 100.0, path, sc, force), std::out_of_range);
}

TEST_CASE("blow-up raises instead of returning garbage") {
    const GalerkinModel& m = model16();
    WienerPath path = make_path(1);
    SolverConfig sc;
    sc.nu = 0.0;
    sc.dt = 5e-2;  // far beyond the stability limit for this amplitude
    Eigen::VectorXd f = 500.0 * datum(m);
    CHECK_THROWS_AS(integrate(m, f, sc, path, ForceSpec::zero(), 0.0, 2.0), BlowUpError);
}
