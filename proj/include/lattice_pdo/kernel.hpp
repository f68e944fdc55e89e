#pragma once

#include <istream>
#include <ostream>

#include <Eigen/Dense>

#include "lattice_pdo/fourier.hpp"
#include "lattice_pdo/kernel_matrix.hpp"
#include "lattice_pdo/symbols.hpp"

namespace lpdo {

// A(k, m) = (F_𝕋ⁿ σ)(k, m − k) on the box. This orientation reproduces the
// column display (T e_i)(k) = 1 at k = i − ħ, −1 at k = i for σ = e^{2πiθ} − 1.
// Symbols without closed-form coefficients use quadrature with
// quadrature_points_for_radius(R) points per axis.
KernelMatrix assemble(const Symbol& sym, const LatticeSpec& spec, const BoxTruncation& box,
                      CoefficientMethod method = CoefficientMethod::automatic);

Eigen::VectorXcd apply(const KernelMatrix& kernel, const Eigen::VectorXcd& a);

struct DiagonalSplit {
    Eigen::VectorXcd diagonal;
    KernelMatrix residue;
};

DiagonalSplit split_diagonal(const KernelMatrix& kernel);

struct HermitianCheck {
    bool hermitian = false;
    double max_asymmetry = 0.0;
};

HermitianCheck hermitian_check(const KernelMatrix& kernel, double tol);
double max_asymmetry(const Eigen::MatrixXcd& m);

// (K + Kᴴ)/2.
KernelMatrix hermitian_part(const KernelMatrix& kernel);

// Non-zero entries as (row, col, re, im).
void write_kernel_csv(std::ostream& os, const KernelMatrix& kernel);

// Header: n (int64), ħ (double), R (int64); then row-major (re, im) doubles.
// Native byte order.
void write_kernel_binary(std::ostream& os, const KernelMatrix& kernel);
KernelMatrix read_kernel_binary(std::istream& is);

}  // namespace lpdo
