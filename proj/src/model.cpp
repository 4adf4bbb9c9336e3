#include "sgf/model.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sgf {

GalerkinModel GalerkinModel::build(int N, double alpha, int n) {
    DomainGrid grid(N, alpha);
    DiscreteForms forms = assemble_forms(grid);
    SpectralBasis basis = solve_eigenbasis(forms, n);
    GradMatrix grad = grad_matrix(basis, forms);
    GalerkinTensor tensor = galerkin_tensor(basis, grid);
    Eigen::MatrixXd E0 = velocity_gram(basis, forms);
    PoincareReport poincare = poincare_constant(forms);
    return GalerkinModel{grid,      std::move(forms),  std::move(basis), std::move(grad),
                         std::move(tensor), std::move(E0), poincare};
}

namespace {

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 14695981039346656037ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

struct CacheHeader {
    int N, n;
    double alpha;
    std::uint64_t hash;
};

std::string cache_file(const std::string& dir, int N, double alpha, int n) {
    std::ostringstream os;
    os << dir << "/basis_N" << N << "_a" << alpha << "_n" << n << ".bin";
    return os.str();
}

std::uint64_t content_hash(const SpectralBasis& basis, const GalerkinTensor& tensor) {
    std::uint64_t h = fnv1a(basis.lambdas.data(), sizeof(double) * basis.lambdas.size());
    h = fnv1a(basis.psis.data(), sizeof(double) * basis.psis.size(), h);
    h = fnv1a(tensor.data.data(), sizeof(double) * tensor.data.size(), h);
    return h;
}

}  // namespace

GalerkinModel GalerkinModel::build_cached(int N, double alpha, int n, const std::string& cache_dir) {
    std::filesystem::create_directories(cache_dir);
    const std::string file = cache_file(cache_dir, N, alpha, n);

    DomainGrid grid(N, alpha);
    DiscreteForms forms = assemble_forms(grid);

    std::ifstream in(file, std::ios::binary);
    if (in) {
        CacheHeader hdr{};
        in.read(reinterpret_cast<char*>(&hdr), sizeof(hdr));
        if (in && hdr.N == N && hdr.n == n && hdr.alpha == alpha) {
            SpectralBasis basis;
            basis.n = n;
            basis.lambdas.resize(n);
            basis.psis.resize(grid.dim(), n);
            GalerkinTensor tensor;
            tensor.n = n;
            tensor.data.resize(static_cast<std::size_t>(n) * n * n);
            in.read(reinterpret_cast<char*>(basis.lambdas.data()), sizeof(double) * n);
            in.read(reinterpret_cast<char*>(basis.psis.data()),
                    sizeof(double) * basis.psis.size());
            in.read(reinterpret_cast<char*>(tensor.data.data()),
                    sizeof(double) * tensor.data.size());
            if (in && content_hash(basis, tensor) == hdr.hash) {
                basis.qs = forms.K * basis.psis;
                basis.vel_x.resize(n);
                basis.vel_y.resize(n);
                for (int k = 0; k < n; ++k)
                    velocity_from_stream(basis.psis.col(k), grid, basis.vel_x[k], basis.vel_y[k]);
                GradMatrix grad = grad_matrix(basis, forms);
                Eigen::MatrixXd E0 = velocity_gram(basis, forms);
                PoincareReport poincare = poincare_constant(forms);
                return GalerkinModel{grid,      std::move(forms),  std::move(basis),
                                     std::move(grad), std::move(tensor), std::move(E0), poincare};
            }
        }
    }

    GalerkinModel model = build(N, alpha, n);
    CacheHeader hdr{N, n, alpha, content_hash(model.basis, model.tensor)};
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (out) {
        out.write(reinterpret_cast<const char*>(&hdr), sizeof(hdr));
        out.write(reinterpret_cast<const char*>(model.basis.lambdas.data()), sizeof(double) * n);
        out.write(reinterpret_cast<const char*>(model.basis.psis.data()),
                  sizeof(double) * model.basis.psis.size());
        out.write(reinterpret_cast<const char*>(model.tensor.data.data()),
                  sizeof(double) * model.tensor.data.size());
    }
    return model;
}

}  // namespace sgf
