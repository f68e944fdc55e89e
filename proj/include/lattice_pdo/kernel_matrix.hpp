#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "lattice_pdo/lattice.hpp"

namespace lpdo {

using Complex = std::complex<double>;

// Dense truncation of the infinite matrix A(k, m) of an operator on ħZⁿ.
// Row and column i correspond to point_of(spec, box, i).
class KernelMatrix {
public:
    KernelMatrix(LatticeSpec spec, BoxTruncation box, Eigen::MatrixXcd entries,
                 std::string provenance = {});

    const LatticeSpec& spec() const noexcept { return spec_; }
    const BoxTruncation& box() const noexcept { return box_; }
    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
    const std::string& provenance() const noexcept { return provenance_; }
    Eigen::Index size() const noexcept { return entries_.rows(); }

    Complex operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

private:
    LatticeSpec spec_;
    BoxTruncation box_;
    Eigen::MatrixXcd entries_;
    std::string provenance_;
};

}  // namespace lpdo
