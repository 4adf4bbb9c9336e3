#pragma once

#include <Eigen/Dense>

namespace sgf {

/// Interior finite-difference grid on the unit square.
struct DomainGrid {
    int N;         ///< interior points per axis, N >= 4
    double h;      ///< mesh width 1/(N+1)
    double alpha;  ///< material parameter, > 0

    DomainGrid(int N_, double alpha_);
    int dim() const { return N * N; }  ///< stream-function degrees of freedom
};

/// Assembled symmetric matrices defining the discrete model on stream
/// functions.  All identities in this code are checked against these matrices;
/// they ARE the model.
///
///   L   : 5-point discrete -Laplacian, Dirichlet
///   Bih : clamped discrete biharmonic (psi = 0, dpsi/dn = 0 via ghost
///         reflection); equals L*L plus a diagonal boundary correction
///   M0  : L2 velocity pairing  (u_psi, u_phi) = h^2 psi^T L phi
///   Mg  : gradient pairing    ((u_psi, u_phi)) = h^2 psi^T Bih phi
///   MV  : M0 + alpha * Mg
///   MW  : W pairing, h^2 K K with K = L + alpha * Bih
struct DiscreteForms {
    DomainGrid grid;
    Eigen::MatrixXd L, Bih, M0, Mg, MV, MW;
    Eigen::MatrixXd K;  ///< potential-vorticity operator L + alpha*Bih
};

/// Discrete eigenpairs of (u, e)_W = lambda (u, e)_V, W-orthonormalized and
/// sorted ascending.  Velocity grids live on the closed (N+2)^2 grid; stream
/// and potential-vorticity grids on the interior N^2 grid.
struct SpectralBasis {
    int n = 0;
    Eigen::VectorXd lambdas;                 ///< ascending, all > 0
    Eigen::MatrixXd psis;                    ///< N^2 x n, stream functions
    Eigen::MatrixXd qs;                      ///< N^2 x n, q_i = K psi_i
    std::vector<Eigen::MatrixXd> vel_x;      ///< n grids (N+2)x(N+2)
    std::vector<Eigen::MatrixXd> vel_y;      ///< n grids (N+2)x(N+2)
};

struct PoincareReport {
    double P2 = 0;              ///< square of the Poincare constant, sup |v|^2/||v||^2
    double resolvent_norm = 0;  ///< sup (v,v)/((v,v) + alpha ((v,v)))
    double identity_residual = 0;  ///< |resolvent_norm - P2/(P2+alpha)|
};

DiscreteForms assemble_forms(const DomainGrid& grid);

/// Generalized symmetric eigensolve MW x = lambda MV x; keeps the n smallest
/// eigenpairs, re-orthonormalized in the W form.
SpectralBasis solve_eigenbasis(const DiscreteForms& forms, int n);

PoincareReport poincare_constant(const DiscreteForms& forms);

/// u = perp-gradient of psi, centered differences with psi extended by zero;
/// discrete divergence vanishes identically.  Output grids are (N+2)x(N+2).
void velocity_from_stream(const Eigen::VectorXd& psi, const DomainGrid& grid,
                          Eigen::MatrixXd& ux, Eigen::MatrixXd& uy);

/// q = curl(u - alpha Laplacian u) = (L + alpha Bih) psi on the interior grid.
Eigen::VectorXd potential_vorticity(const Eigen::VectorXd& psi, const DiscreteForms& forms);

}  // namespace sgf
