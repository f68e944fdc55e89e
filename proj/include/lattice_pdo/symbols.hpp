#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lattice_pdo/kernel_matrix.hpp"
#include "lattice_pdo/lattice.hpp"

namespace lpdo {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;

// Order data (μ, ρ, δ) of a symbol class S^μ_{ρ,δ}. ρ is metadata only:
// no implemented criterion depends on k-differences.
struct SymbolOrder {
    double mu = 0.0;
    double rho = 1.0;
    double delta = 0.0;

    static SymbolOrder make(double mu, double rho, double delta);
};

// Derivative order reported by symbols with closed-form θ-derivatives.
inline constexpr int kAnalyticDerivativeOrder = 16;
// Derivative order reachable by the central finite-difference fallback.
inline constexpr int kFiniteDifferenceOrder = 2;
inline constexpr double kFiniteDifferenceStep = 1e-5;

// σ(k, θ) on ħZⁿ × 𝕋ⁿ with θ ∈ [0,1)ⁿ, plus whatever closed forms are known.
// Closed-form Fourier coefficients are indexed by the integer frequency
// z = m/ħ. Immutable once built.
class Symbol {
public:
    using EvalFn = std::function<Complex(std::span<const double> k, std::span<const double> theta)>;
    using CoefficientFn =
        std::function<Complex(std::span<const double> k, std::span<const std::int64_t> freq)>;
    using DerivativeFn = std::function<Complex(std::span<const double> k, std::span<const double> theta,
                                               std::span<const int> beta)>;

    struct Parts {
        std::string id;
        int dim = 1;
        SymbolOrder order;
        EvalFn eval;
        CoefficientFn coefficients;  // optional
        DerivativeFn derivative;     // optional
        // Largest |m/ħ|∞ with a possibly non-zero coefficient, when known.
        std::optional<std::int64_t> bandwidth;
    };

    explicit Symbol(Parts parts);

    const std::string& id() const noexcept { return parts_.id; }
    int dim() const noexcept { return parts_.dim; }
    const SymbolOrder& order() const noexcept { return parts_.order; }
    std::optional<std::int64_t> bandwidth() const noexcept { return parts_.bandwidth; }
    int deriv_order_available() const noexcept;

    Complex eval(std::span<const double> k, std::span<const double> theta) const;

    bool has_closed_form_coefficients() const noexcept { return static_cast<bool>(parts_.coefficients); }
    Complex closed_form_coefficient(std::span<const double> k, std::span<const std::int64_t> freq) const;

    bool has_analytic_derivative() const noexcept { return static_cast<bool>(parts_.derivative); }
    Complex analytic_derivative(std::span<const double> k, std::span<const double> theta,
                                std::span<const int> beta) const;

    Symbol with_order(SymbolOrder order) const;

private:
    Parts parts_;
};

// Non-negative polynomial potential V(k).
struct Monomial {
    double coefficient = 0.0;
    std::vector<int> exponents;  // one per coordinate
};

class Potential {
public:
    // c·|k|^{2l}, |k| Euclidean.
    static Potential anharmonic(double c, int l);
    // Σ c_i Π k_j^{e_ij}.
    static Potential polynomial(std::vector<Monomial> terms);

    double operator()(std::span<const double> k) const;
    // Leading total degree μ.
    double order() const noexcept;
    std::string description() const;

    bool is_anharmonic() const noexcept { return terms_.empty(); }
    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    double anharmonic_coefficient() const noexcept { return c_; }
    int anharmonic_power() const noexcept { return l_; }

private:
    Potential() = default;

    double c_ = 0.0;
    int l_ = 0;
    std::vector<Monomial> terms_;
};

Potential polynomial_potential(double c, int l);

Symbol difference_symbol();
Symbol multiplication_symbol(double epsilon, int dim = 1);
Symbol constant_symbol(Complex value, int dim = 1);
Symbol decaying_test_symbol(double s, double a, double b, int dim = 1);
// ħ⁻² Σ_j (2 − 2 cos 2πθ_j) + V(k) + λ, the symbol of −ħ⁻²Δ + V + λ.
Symbol schrodinger_symbol(const LatticeSpec& spec, const Potential& potential, double lambda);

// σ(k, θ) = Σ_m K(k, m) e^{2πi (m−k)·θ/ħ} on the box rows, 0 elsewhere.
Symbol symbol_from_matrix(const KernelMatrix& kernel);

Complex eval_symbol(const Symbol& sym, std::span<const double> k, std::span<const double> theta);

// D_θ^β σ(k, θ) with D_θ = ∂/∂θ. Analytic when available, otherwise central
// differences with step kFiniteDifferenceStep. Throws CapabilityError when
// |β| exceeds deriv_order_available().
Complex theta_derivative(const Symbol& sym, std::span<const double> k, std::span<const double> theta,
                         std::span<const int> beta);

// Largest |σ(k,θ) − σ(k,θ+e_j)| over random lattice points in [−10,10]ⁿ·ħ.
double periodicity_defect(const Symbol& sym, const LatticeSpec& spec, int samples, std::uint64_t seed);

}  // namespace lpdo
