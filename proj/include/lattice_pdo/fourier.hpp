#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "lattice_pdo/lattice.hpp"
#include "lattice_pdo/symbols.hpp"

namespace lpdo {

inline constexpr int kDefaultQuadraturePoints = 64;

enum class CoefficientMethod {
    automatic,   // closed form when the symbol has one, quadrature otherwise
    quadrature,  // always tensor-grid quadrature
};

// Samples σ(k, ·) on the uniform N×…×N grid of 𝕋ⁿ once and returns any
// toroidal coefficient from them. Exact for trigonometric polynomials of
// per-axis degree d at frequencies |f| ≤ N − d − 1.
class TorusSampler {
public:
    TorusSampler(const Symbol& sym, std::span<const double> k, int points_per_axis);

    Complex coefficient(std::span<const std::int64_t> freq) const;

private:
    int dim_;
    int points_;
    std::vector<Complex> samples_;
    std::vector<Complex> twiddle_;
};

// Grid size that resolves every frequency of a box of radius R for symbols of
// bandwidth up to 2R (e.g. symbol_from_matrix).
int quadrature_points_for_radius(std::int64_t radius);

// (F_𝕋ⁿ σ)(k, m) = ∫ σ(k, θ) e^{−2πi m·θ/ħ} dθ. m must lie on the lattice.
Complex toroidal_coefficient(const Symbol& sym, const LatticeSpec& spec, std::span<const double> k,
                             std::span<const double> m,
                             CoefficientMethod method = CoefficientMethod::automatic,
                             int points_per_axis = kDefaultQuadraturePoints);

// Same, with the frequency given as the integer vector m/ħ.
Complex toroidal_coefficient_at(const Symbol& sym, std::span<const double> k,
                                std::span<const std::int64_t> freq,
                                CoefficientMethod method = CoefficientMethod::automatic,
                                int points_per_axis = kDefaultQuadraturePoints);

struct CoefficientEntry {
    Coords k;
    Coords m;
    Complex value;
};

// All (k, m) with k in the box and |m/ħ|∞ ≤ freq_radius; k-major, both in
// lexicographic box order.
std::vector<CoefficientEntry> coefficient_table(const Symbol& sym, const LatticeSpec& spec,
                                                const BoxTruncation& k_box, std::int64_t freq_radius,
                                                CoefficientMethod method = CoefficientMethod::automatic,
                                                int points_per_axis = kDefaultQuadraturePoints);

// Columns k_1..k_n, m_1..m_n, re, im.
void write_coefficients_csv(std::ostream& os, std::span<const CoefficientEntry> table, int dim);

// Sampled constant C_Q̃ in |(Fσ)(k,m)| ≤ C (1+|k|)^{μ+2Q̃δ} (1+|m|/ħ)^{−2Q̃}.
struct DecayReport {
    int q_tilde = 0;
    double constant = 0.0;
    std::int64_t k_radius = 0;
    std::int64_t m_radius = 0;
    double k_exponent = 0.0;  // μ + 2Q̃δ
    std::optional<std::int64_t> bandwidth;
};

DecayReport estimate_decay_constant(const Symbol& sym, const LatticeSpec& spec, int q_tilde,
                                    std::int64_t k_radius, std::int64_t m_radius);

}  // namespace lpdo
