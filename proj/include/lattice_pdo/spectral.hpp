#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lattice_pdo/kernel_matrix.hpp"
#include "lattice_pdo/symbols.hpp"

namespace lpdo {

inline constexpr double kHermitianTolerance = 1e-9;

struct SpectralResult {
    Eigen::VectorXd eigenvalues;                  // ascending
    std::optional<Eigen::MatrixXcd> eigenvectors;  // column j pairs with eigenvalue j
    std::int64_t radius = -1;                      // -1 for matrices without a box
    Eigen::Index dimension = 0;
    // max_j ‖K v_j − λ_j v_j‖∞; zero when eigenvectors were not requested.
    double residual_norm = 0.0;
};

// Full spectrum of a Hermitian matrix. Each eigenvector is normalised so its
// largest-magnitude component (first one on ties) is real and positive.
// Throws DomainError when the matrix is not Hermitian within
// kHermitianTolerance.
SpectralResult eigendecompose_hermitian(const Eigen::MatrixXcd& matrix, bool want_vectors);
SpectralResult eigendecompose_hermitian(const KernelMatrix& kernel, bool want_vectors);

// ‖R‖₂ of the off-diagonal part. Hermitian R: largest |eigenvalue|. Otherwise
// power iteration on RᴴR (relative tolerance 1e−10, at most 10000 steps).
double residue_norm(const Eigen::MatrixXcd& matrix);
double residue_norm(const KernelMatrix& kernel);
// Largest singular value of an arbitrary matrix by the same power iteration.
double largest_singular_value(const Eigen::MatrixXcd& matrix);

struct DiagApproxPoint {
    std::size_t index = 0;  // box index of k
    Coords k;
    double diagonal = 0.0;     // λ_k = ∫σ(k,θ)dθ
    double eigenvalue = 0.0;   // matched λ̃ (sorted order)
    double residual = 0.0;     // λ̃ − λ_k
    double overlap = 0.0;      // |⟨e_k, φ⟩|
    bool low_overlap = false;  // overlap < 1/2
};

struct DiagApproxReport {
    bool applicable = false;  // μ < −(n+2)δ
    std::vector<DiagApproxPoint> points;  // ascending in diagonal value
    // Slope of log|Δλ| against log(1+|k|) over R/4 < |k/ħ|∞ ≤ 3R/4.
    std::optional<double> fitted_exponent;
    std::size_t fitted_points = 0;
    // Same fit over the half of points with largest |k|; includes the
    // truncation boundary layer.
    std::optional<double> outer_half_exponent;
    double residue_norm = 0.0;
    double weyl_max_deviation = 0.0;  // max_j |λ_j(K) − λ_j(D)|
    std::size_t low_overlap_count = 0;
};

DiagApproxReport diagonal_approximation(const KernelMatrix& kernel, const SymbolOrder& order);

struct SandwichRecord {
    double lower = 0.0;        // min_k |λ̃ − D(k)|
    double middle = 0.0;       // ‖D φ − λ̃ φ‖₂
    double upper = 0.0;        // min(max_k |λ̃ − D(k)|, ‖R‖₂)
    double residue_image = 0.0;  // ‖R φ‖₂, equal to middle
    bool holds = false;
};

inline constexpr double kSandwichSlack = 1e-8;

// Needs `spectrum` computed with eigenvectors for this kernel.
std::vector<SandwichRecord> sandwich_check(const KernelMatrix& kernel, const SpectralResult& spectrum);

}  // namespace lpdo
