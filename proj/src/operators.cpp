#include "sgf/operators.hpp"

#include <random>
#include <stdexcept>

namespace sgf {

GradMatrix grad_matrix(const SpectralBasis& basis, const DiscreteForms& forms) {
    if (basis.psis.rows() != forms.Mg.rows())
        throw std::invalid_argument("grad_matrix: basis and forms dimensions differ");
    Eigen::MatrixXd G = basis.psis.transpose() * forms.Mg * basis.psis;
    G = 0.5 * (G + G.transpose()).eval();
    return GradMatrix{std::move(G)};
}

GalerkinTensor galerkin_tensor(const SpectralBasis& basis, const DomainGrid& grid) {
    const int n = basis.n;
    const int N = grid.N;
    const double h2 = grid.h * grid.h;
    GalerkinTensor T;
    T.n = n;
    T.data.assign(static_cast<std::size_t>(n) * n * n, 0.0);

    // q lives on the interior grid; velocities on the closed grid.  The cross
    // product is evaluated at interior nodes only.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double s = 0.0;
                for (int a = 1; a <= N; ++a) {
                    for (int b = 1; b <= N; ++b) {
                        double cross = basis.vel_x[j](a, b) * basis.vel_y[k](a, b) -
                                       basis.vel_y[j](a, b) * basis.vel_x[k](a, b);
                        s += basis.qs((a - 1) * N + (b - 1), i) * cross;
                    }
                }
                T.at(i, j, k) = h2 * s;
            }
        }
    }
    return T;
}

Eigen::VectorXd apply_B(const GalerkinTensor& T, const Eigen::VectorXd& cu,
                        const Eigen::VectorXd& cv) {
    const int n = T.n;
    if (cu.size() != n || cv.size() != n)
        throw std::invalid_argument("apply_B: dimension mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        if (cu(i) == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            double w = cu(i) * cv(j);
            if (w == 0.0) continue;
            const double* row = &T.data[(static_cast<std::size_t>(i) * n + j) * n];
            for (int k = 0; k < n; ++k) out(k) += w * row[k];
        }
    }
    return out;
}

namespace {
double v_norm2(const Eigen::VectorXd& c, const Eigen::VectorXd& lambdas) {
    return (c.array().square() / lambdas.array()).sum();
}
}

ForceSpec ForceSpec::zero() { return ForceSpec{}; }

ForceSpec ForceSpec::constant(const Eigen::VectorXd& a_coeffs, const Eigen::VectorXd& lambdas) {
    ForceSpec f;
    f.kind = ForceKind::constant;
    f.a = a_coeffs;
    f.C_F = 0.0;
    f.F0_normV = std::sqrt(v_norm2(a_coeffs, lambdas));
    return f;
}

ForceSpec ForceSpec::linear(double gain) {
    ForceSpec f;
    f.kind = ForceKind::linear;
    f.gain = gain;
    f.C_F = std::abs(gain);
    f.F0_normV = 0.0;
    return f;
}

ForceSpec ForceSpec::saturating(const Eigen::VectorXd& a_coeffs, double gain, double sat,
                                const Eigen::VectorXd& lambdas) {
    ForceSpec f;
    f.kind = ForceKind::saturating;
    f.a = a_coeffs;
    f.gain = gain;
    f.sat = sat;
    f.C_F = 1.125 * std::abs(gain);
    f.F0_normV = std::sqrt(v_norm2(a_coeffs, lambdas));
    return f;
}

Eigen::VectorXd ForceSpec::eval(const Eigen::VectorXd& u, const Eigen::VectorXd& lambdas) const {
    switch (kind) {
    case ForceKind::zero:
        return Eigen::VectorXd::Zero(u.size());
    case ForceKind::constant:
        return a;
    case ForceKind::linear:
        return gain * u;
    case ForceKind::saturating: {
        double denom = 1.0 + sat * v_norm2(u, lambdas);
        Eigen::VectorXd out = (gain / denom) * u;
        if (a.size() > 0) out += a;
        return out;
    }
    }
    throw std::logic_error("ForceSpec::eval: unknown kind");
}

Eigen::VectorXd ForceSpec::deriv(const Eigen::VectorXd& u, const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& lambdas) const {
    switch (kind) {
    case ForceKind::zero:
    case ForceKind::constant:
        return Eigen::VectorXd::Zero(z.size());
    case ForceKind::linear:
        return gain * z;
    case ForceKind::saturating: {
        double denom = 1.0 + sat * v_norm2(u, lambdas);
        double uz_V = (u.array() * z.array() / lambdas.array()).sum();
        return (gain / denom) * z - (2.0 * gain * sat * uz_V / (denom * denom)) * u;
    }
    }
    throw std::logic_error("ForceSpec::deriv: unknown kind");
}

Eigen::MatrixXd velocity_gram(const SpectralBasis& basis, const DiscreteForms& forms) {
    // (u_i, u_j)_{L2} = integral of grad psi_i . grad psi_j for perpendicular
    // gradients; realized as the Dirichlet form psi_i^T M0 psi_j so the same
    // h^2 grid rule underlies every pairing in the model.
    Eigen::MatrixXd E0 = basis.psis.transpose() * forms.M0 * basis.psis;
    return 0.5 * (E0 + E0.transpose()).eval();
}

Eigen::VectorXd force_coeffs(const ForceSpec& F, const Eigen::VectorXd& c, double Q,
                             const SpectralBasis& basis, const Eigen::MatrixXd& E0) {
    if (Q <= 0.0) throw std::invalid_argument("force_coeffs: Q must be > 0");
    if (F.kind == ForceKind::zero) return Eigen::VectorXd::Zero(c.size());
    Eigen::VectorXd fw = F.eval(Q * c, basis.lambdas);
    return (E0 * fw) / Q;
}

double lipschitz_probe(const ForceSpec& F, int trials, std::uint64_t seed,
                       const Eigen::VectorXd& lambdas) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    const int n = static_cast<int>(lambdas.size());
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd u1(n), u2(n);
        double scale = std::pow(10.0, 4.0 * unit() - 2.0);  // spread over magnitudes
        for (int i = 0; i < n; ++i) {
            u1(i) = scale * (2.0 * unit() - 1.0);
            u2(i) = u1(i) + scale * (2.0 * unit() - 1.0) * std::pow(10.0, -3.0 * unit());
        }
        double dd = v_norm2(u1 - u2, lambdas);
        if (dd == 0.0) continue;
        Eigen::VectorXd df = F.eval(u1, lambdas) - F.eval(u2, lambdas);
        double ratio = std::sqrt(v_norm2(df, lambdas) / dd);
        worst = std::max(worst, ratio);
    }
    return worst;
}

}  // namespace sgf
