#pragma once

#include <memory>
#include <string>

#include "sgf/discretization.hpp"
#include "sgf/operators.hpp"

namespace sgf {

/// Everything derived from (N, alpha, n): forms, eigenbasis, gradient matrix,
/// advection tensor, velocity Gram.  Immutable after construction; shared
/// between concurrent trajectory integrations.
struct GalerkinModel {
    DomainGrid grid;
    DiscreteForms forms;
    SpectralBasis basis;
    GradMatrix grad;
    GalerkinTensor tensor;
    Eigen::MatrixXd E0;
    PoincareReport poincare;

    int n() const { return basis.n; }
    const Eigen::VectorXd& lambdas() const { return basis.lambdas; }

    double w_norm2(const Eigen::VectorXd& c) const { return c.squaredNorm(); }
    double v_norm2(const Eigen::VectorXd& c) const {
        return (c.array().square() / basis.lambdas.array()).sum();
    }
    double v_norm(const Eigen::VectorXd& c) const { return std::sqrt(v_norm2(c)); }
    double w_norm(const Eigen::VectorXd& c) const { return c.norm(); }

    static GalerkinModel build(int N, double alpha, int n);

    /// Build with a disk cache for the eigenbasis and tensor, keyed by
    /// (N, alpha, n) plus a content hash of the stored arrays.  Falls back to
    /// a fresh build on any mismatch.
    static GalerkinModel build_cached(int N, double alpha, int n, const std::string& cache_dir);
};

}  // namespace sgf
