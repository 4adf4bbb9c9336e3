#include "sgf/discretization.hpp"

#include <stdexcept>

namespace sgf {

DomainGrid::DomainGrid(int N_, double alpha_) : N(N_), h(1.0 / (N_ + 1)), alpha(alpha_) {
    if (N < 4) throw std::invalid_argument("DomainGrid: N must be >= 4");
    if (alpha <= 0.0) throw std::invalid_argument("DomainGrid: alpha must be > 0");
}

namespace {
inline int idx(int i, int j, int N) { return (i - 1) * N + (j - 1); }  // i, j in 1..N
}

DiscreteForms assemble_forms(const DomainGrid& grid) {
    const int N = grid.N;
    const double h = grid.h;
    const double ih2 = 1.0 / (h * h);

    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(grid.dim(), grid.dim());
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            int p = idx(i, j, N);
            L(p, p) = 4.0 * ih2;
            if (i > 1) L(p, idx(i - 1, j, N)) = -ih2;
            if (i < N) L(p, idx(i + 1, j, N)) = -ih2;
            if (j > 1) L(p, idx(i, j - 1, N)) = -ih2;
            if (j < N) L(p, idx(i, j + 1, N)) = -ih2;
        }
    }

    // Clamped biharmonic: composing the Laplacian with itself plus the
    // boundary rows produced by the ghost reflection psi(-1) = psi(1).  The
    // reflection turns the Laplacian at a boundary node into 2 psi_adj / h^2,
    // so each adjacent boundary edge adds 4/h^4 on the diagonal.
    Eigen::MatrixXd Bih = L * L;
    const double ih4 = ih2 * ih2;
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            int p = idx(i, j, N);
            int edges = (i == 1) + (i == N) + (j == 1) + (j == N);
            Bih(p, p) += 4.0 * ih4 * edges;
        }
    }

    DiscreteForms f{grid, {}, {}, {}, {}, {}, {}, {}};
    f.L = std::move(L);
    f.Bih = std::move(Bih);
    f.M0 = h * h * f.L;
    f.Mg = h * h * f.Bih;
    f.MV = f.M0 + grid.alpha * f.Mg;
    f.K = f.L + grid.alpha * f.Bih;
    f.MW = h * h * f.K * f.K;
    // enforce exact symmetry of the products
    f.Bih = 0.5 * (f.Bih + f.Bih.transpose()).eval();
    f.Mg = 0.5 * (f.Mg + f.Mg.transpose()).eval();
    f.MV = 0.5 * (f.MV + f.MV.transpose()).eval();
    f.MW = 0.5 * (f.MW + f.MW.transpose()).eval();
    f.K = 0.5 * (f.K + f.K.transpose()).eval();
    return f;
}

SpectralBasis solve_eigenbasis(const DiscreteForms& forms, int n) {
    const int dim = forms.grid.dim();
    if (n < 1 || n > dim)
        throw std::invalid_argument("solve_eigenbasis: mode count outside [1, N^2]");

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(forms.MW, forms.MV);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("solve_eigenbasis: generalized eigensolver failed");

    // eigenvalues ascending; eigenvectors MV-orthonormal, so x/sqrt(lambda)
    // is W-normalized
    Eigen::MatrixXd E(dim, n);
    for (int k = 0; k < n; ++k)
        E.col(k) = es.eigenvectors().col(k) / std::sqrt(es.eigenvalues()(k));

    // tighten W-orthonormality with a Cholesky correction of the W Gram
    Eigen::MatrixXd Gw = E.transpose() * forms.MW * E;
    Gw = 0.5 * (Gw + Gw.transpose()).eval();
    Eigen::LLT<Eigen::MatrixXd> llt(Gw);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("solve_eigenbasis: degenerate W Gram");
    E = llt.matrixU().solve<Eigen::OnTheRight>(E);

    SpectralBasis basis;
    basis.n = n;
    basis.psis = E;
    basis.lambdas.resize(n);
    for (int k = 0; k < n; ++k) {
        double v_norm2 = E.col(k).dot(forms.MV * E.col(k));
        basis.lambdas(k) = 1.0 / v_norm2;  // W-norm is 1 by construction
    }
    basis.qs = forms.K * E;
    basis.vel_x.resize(n);
    basis.vel_y.resize(n);
    for (int k = 0; k < n; ++k)
        velocity_from_stream(E.col(k), forms.grid, basis.vel_x[k], basis.vel_y[k]);
    return basis;
}

PoincareReport poincare_constant(const DiscreteForms& forms) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> p2(forms.M0, forms.Mg);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> res(forms.M0, forms.MV);
    if (p2.info() != Eigen::Success || res.info() != Eigen::Success)
        throw std::runtime_error("poincare_constant: eigensolver failed");
    PoincareReport r;
    r.P2 = p2.eigenvalues().maxCoeff();
    r.resolvent_norm = res.eigenvalues().maxCoeff();
    r.identity_residual = std::abs(r.resolvent_norm - r.P2 / (r.P2 + forms.grid.alpha));
    return r;
}

void velocity_from_stream(const Eigen::VectorXd& psi, const DomainGrid& grid,
                          Eigen::MatrixXd& ux, Eigen::MatrixXd& uy) {
    const int N = grid.N;
    const double inv2h = 1.0 / (2.0 * grid.h);
    auto p = [&](int i, int j) -> double {
        if (i < 1 || i > N || j < 1 || j > N) return 0.0;
        return psi(idx(i, j, N));
    };
    ux.setZero(N + 2, N + 2);
    uy.setZero(N + 2, N + 2);
    // u = (d psi / dy, -d psi / dx); curl u = -Laplacian psi
    for (int i = 0; i <= N + 1; ++i) {
        for (int j = 0; j <= N + 1; ++j) {
            ux(i, j) = (p(i, j + 1) - p(i, j - 1)) * inv2h;
            uy(i, j) = -(p(i + 1, j) - p(i - 1, j)) * inv2h;
        }
    }
}

Eigen::VectorXd potential_vorticity(const Eigen::VectorXd& psi, const DiscreteForms& forms) {
    return forms.K * psi;
}

}  // namespace sgf
