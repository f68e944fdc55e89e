#pragma once

// Straightforward serial implementations of the parallel kernels. They share
// no code with the optimized paths beyond symbol evaluation and lattice
// indexing, and exist as test oracles and benchmark baselines.

#include <vector>

#include <Eigen/Dense>

#include "lattice_pdo/fourier.hpp"
#include "lattice_pdo/kernel_matrix.hpp"
#include "lattice_pdo/schrodinger.hpp"
#include "lattice_pdo/symbols.hpp"

namespace lpdo::reference {

// Direct quadrature sum on an N^n grid, no twiddle tables.
Complex coefficient(const Symbol& sym, std::span<const double> k, std::span<const std::int64_t> freq, int points);

std::vector<CoefficientEntry> coefficient_table(const Symbol& sym, const LatticeSpec& spec, const BoxTruncation& k_box,
                                                std::int64_t freq_radius, CoefficientMethod method, int points);

KernelMatrix assemble(const Symbol& sym, const LatticeSpec& spec, const BoxTruncation& box, CoefficientMethod method);

Eigen::VectorXcd apply(const KernelMatrix& kernel, const Eigen::VectorXcd& a);

// Plain left-to-right sums.
double schur_l1_lp(const KernelMatrix& kernel, double p);
double sup_entry(const KernelMatrix& kernel);
double mixed_lp_sum(const KernelMatrix& kernel, double p);
double nuclear_sum(const KernelMatrix& kernel, double r, double p2);

KernelMatrix build_hamiltonian(const LatticeSpec& spec, const Potential& potential, const BoxTruncation& box,
                               double shift);

}  // namespace lpdo::reference
