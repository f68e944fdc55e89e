#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "lattice_pdo/kernel_matrix.hpp"

namespace lpdo::test {

inline Eigen::MatrixXcd random_matrix(Eigen::Index n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = Complex(u(rng), u(rng));
    return m;
}

inline Eigen::MatrixXcd random_hermitian(Eigen::Index n, std::mt19937_64& rng)
{
    const Eigen::MatrixXcd m = random_matrix(n, rng);
    return (m + m.adjoint()) / 2.0;
}

inline KernelMatrix identity_kernel(const LatticeSpec& spec, const BoxTruncation& box)
{
    const auto n = static_cast<Eigen::Index>(box.size(spec.dim()));
    return KernelMatrix(spec, box, Eigen::MatrixXcd::Identity(n, n), "identity");
}

// Diagonal kernel with entries w(k) on the box.
template <class F>
KernelMatrix diagonal_kernel(const LatticeSpec& spec, const BoxTruncation& box, F w)
{
    const auto n = static_cast<Eigen::Index>(box.size(spec.dim()));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        m(i, i) = w(point_of(spec, box, static_cast<std::size_t>(i)));
    return KernelMatrix(spec, box, std::move(m), "diagonal");
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace lpdo::test
