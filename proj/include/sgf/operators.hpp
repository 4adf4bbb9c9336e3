#pragma once

#include <Eigen/Dense>

#include "sgf/discretization.hpp"

namespace sgf {

/// G[i][j] = ((e_i, e_j)), the gradient pairing of the basis; symmetric
/// positive definite on the span.
struct GradMatrix {
    Eigen::MatrixXd G;
};

/// T[i][j][k] = h^2 sum over nodes of q_i (e_j x e_k), with the scalar cross
/// a x b = a1 b2 - a2 b1.  Antisymmetric in the last two indices exactly,
/// because the integrand is pointwise antisymmetric.
struct GalerkinTensor {
    int n = 0;
    std::vector<double> data;  // data[(i*n + j)*n + k]

    double operator()(int i, int j, int k) const { return data[(static_cast<std::size_t>(i) * n + j) * n + k]; }
    double& at(int i, int j, int k) { return data[(static_cast<std::size_t>(i) * n + j) * n + k]; }
};

GradMatrix grad_matrix(const SpectralBasis& basis, const DiscreteForms& forms);

GalerkinTensor galerkin_tensor(const SpectralBasis& basis, const DomainGrid& grid);

/// out[k] = sum_{i,j} cu[i] cv[j] T[i][j][k]; the duality coefficients of the
/// advection operator applied to (cu, cv).
Eigen::VectorXd apply_B(const GalerkinTensor& T, const Eigen::VectorXd& cu,
                        const Eigen::VectorXd& cv);

enum class ForceKind { zero, constant, linear, saturating };

/// External force from the fixed catalogue, acting on the Galerkin span.
/// constant: F(u) = a;  linear: F(u) = gain * u;
/// saturating: F(u) = a + gain * u / (1 + sat * |u|_V^2).
/// All evaluations happen in span coefficients; `a` holds the coefficients of
/// the constant part in the basis.
struct ForceSpec {
    ForceKind kind = ForceKind::zero;
    Eigen::VectorXd a;  // empty means 0
    double gain = 0.0;
    double sat = 0.0;
    double C_F = 0.0;      ///< declared Lipschitz constant
    double F0_normV = 0.0; ///< |F(0)|_V of the span representation

    static ForceSpec zero();
    static ForceSpec constant(const Eigen::VectorXd& a_coeffs, const Eigen::VectorXd& lambdas);
    static ForceSpec linear(double gain);
    /// C_F for the saturating kind is the analytic bound 9/8 |gain| (the
    /// saturation factor's derivative peaks at sat |u|_V^2 = 1/3) plus the
    /// constant part, which does not contribute.
    static ForceSpec saturating(const Eigen::VectorXd& a_coeffs, double gain, double sat,
                                const Eigen::VectorXd& lambdas);

    /// span coefficients of F(u) for u given by span coefficients
    Eigen::VectorXd eval(const Eigen::VectorXd& u, const Eigen::VectorXd& lambdas) const;

    /// span coefficients of DF(u) z
    Eigen::VectorXd deriv(const Eigen::VectorXd& u, const Eigen::VectorXd& z,
                          const Eigen::VectorXd& lambdas) const;
};

/// L2 Gram of the basis velocities via the stream-function Dirichlet form,
/// E0[i][j] = psi_i^T M0 psi_j; turns span coefficients of a force into
/// duality coefficients with the same quadrature as the assembly.
Eigen::MatrixXd velocity_gram(const SpectralBasis& basis, const DiscreteForms& forms);

/// Duality coefficients of F_Q(u, Q) = F(Q u)/Q:
/// out[k] = Q^{-1} (F(Q u), e_k)_{L2}.
Eigen::VectorXd force_coeffs(const ForceSpec& F, const Eigen::VectorXd& c, double Q,
                             const SpectralBasis& basis, const Eigen::MatrixXd& E0);

/// Randomized estimate of the Lipschitz constant in the V norm over random
/// coefficient pairs; must not exceed the declared C_F.
double lipschitz_probe(const ForceSpec& F, int trials, std::uint64_t seed,
                       const Eigen::VectorXd& lambdas);

}  // namespace sgf
