#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "lattice_pdo/kernel_matrix.hpp"
#include "lattice_pdo/spectral.hpp"
#include "lattice_pdo/symbols.hpp"

namespace lpdo {

// A potential V ≥ 0 of order μ > 0 with V(k) → ∞, as far as sampling can
// tell: non-negativity at integer points with |k|∞ ≤ 10 (fewer for n ≥ 4),
// and strict growth along every axis and diagonal direction at distances 10,
// 100, 1000.
class PotentialSpec {
public:
    static PotentialSpec make(Potential potential, int dim);

    const Potential& potential() const noexcept { return potential_; }
    int dim() const noexcept { return dim_; }
    double order() const noexcept { return potential_.order(); }
    double operator()(std::span<const double> k) const { return potential_(k); }

private:
    PotentialSpec(Potential potential, int dim) : potential_(std::move(potential)), dim_(dim) {}

    Potential potential_;
    int dim_;
};

// H = −ħ⁻²Δ + V + λ restricted to the box: diagonal 2nħ⁻² + V(k) + λ, −ħ⁻²
// between nearest neighbours that are both inside the box. Any potential is
// accepted here (V ≡ 0 gives the bare kinetic part); confinement only matters
// for the spectral tasks below.
KernelMatrix build_hamiltonian(const LatticeSpec& spec, const Potential& potential, const BoxTruncation& box,
                               double shift = 0.0);
KernelMatrix build_hamiltonian(const LatticeSpec& spec, const PotentialSpec& potential, const BoxTruncation& box,
                               double shift = 0.0);

// The j_max smallest diagonal values V(k) + 2nħ⁻² + λ over the box, ascending.
std::vector<double> weyl_oracle(const LatticeSpec& spec, const Potential& potential, const BoxTruncation& box,
                                std::size_t j_max, double shift = 0.0);
std::vector<double> weyl_oracle(const LatticeSpec& spec, const PotentialSpec& potential, const BoxTruncation& box,
                                std::size_t j_max, double shift = 0.0);

struct SpectrumOptions {
    std::size_t max_dimension = 1001;
    double shift = 0.0;
};

struct ConvergedSpectrum {
    std::vector<double> eigenvalues;  // λ_1 ≤ … from the largest box computed
    std::vector<bool> converged;      // per eigenvalue
    std::int64_t radius_used = 0;
    std::vector<std::int64_t> radii;  // every radius computed, in order
    bool all_converged = false;
};

// Box doubling from R₀ = ⌈25/ħ⌉ (shrunk for n > 1 to the same point budget,
// grown to hold j_max points) until the first j_max eigenvalues move by less
// than tol·(1+|λ_j|) between successive radii, or the box would exceed
// options.max_dimension.
ConvergedSpectrum spectrum_converged(const LatticeSpec& spec, const PotentialSpec& potential, std::size_t j_max,
                                     double tol, const SpectrumOptions& options = {});

struct GrowthFit {
    std::size_t j_first = 0;  // 1-based, inclusive
    std::size_t j_last = 0;
    double slope = 0.0;
    double intercept = 0.0;
    // Sampled admissible r ∈ (1/μ, 1]: does λ_j ≥ C_r j^{1/r} hold on the
    // window, with C_r = λ_{j_first} / j_first^{1/r}?
    std::map<double, bool> r_bound_satisfied;
    // Does the fitted slope exceed 1/r?
    std::map<double, bool> slope_exceeds_inverse_r;
};

// Candidate r values {1, (1+1/μ)/2, 1/μ+0.05} filtered to (1/μ, 1].
std::vector<double> sampled_r_values(double mu);

// eigenvalues[j-1] = λ_j. Throws DomainError for an invalid window or a
// non-positive eigenvalue inside it.
GrowthFit fit_growth_exponent(std::span<const double> eigenvalues, std::size_t j_first, std::size_t j_last,
                              double mu);
// Additionally requires every eigenvalue in the window to be converged.
GrowthFit fit_growth_exponent(const ConvergedSpectrum& spectrum, std::size_t j_first, std::size_t j_last,
                              double mu);

}  // namespace lpdo
