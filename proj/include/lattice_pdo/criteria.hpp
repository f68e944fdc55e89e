#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "lattice_pdo/fourier.hpp"
#include "lattice_pdo/kernel_matrix.hpp"
#include "lattice_pdo/symbols.hpp"

namespace lpdo {

// Truncated Schur-type sums. All sums use per-row/column partials combined by
// pairwise_sum, so values do not depend on the worker count.

// max_m Σ_k |A(k,m)|^p   (ℓ¹ → ℓ^p)
double schur_l1_lp(const KernelMatrix& kernel, double p);
// max_{k,m} |A(k,m)|     (ℓ¹ → ℓ^∞)
double sup_entry(const KernelMatrix& kernel);
// Σ_k (Σ_m |A(k,m)|^q)^{p/q}, 1 < p < ∞
double mixed_lp_sum(const KernelMatrix& kernel, double p);
// Σ_k (Σ_m |K(k,m)|^{p2})^{r/p2}
double nuclear_sum(const KernelMatrix& kernel, double r, double p2);

struct CriterionQuery {
    double p = 2.0;
    double q = 2.0;  // conjugate of p
    double r = 1.0;
    double p1 = 2.0;
    double p2 = 2.0;
    int n = 1;

    // Validates ranges; q is derived from p, and checked against `q` when given.
    static CriterionQuery make(double p, double r, double p1, double p2, int n,
                               std::optional<double> q = std::nullopt);
};

enum class Verdict { holds, fails, not_applicable };

std::string to_string(Verdict v);

// One order condition "value relation threshold", e.g. μ < −n/p.
struct VerdictRecord {
    Verdict verdict = Verdict::not_applicable;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<" or "<="
    bool sharp = false;
    std::string note;
};

struct TruncationInfo {
    std::int64_t radius = 0;
    int n = 1;
    double hbar = 1.0;
};

struct CriterionReport {
    std::map<std::string, double> sums;
    std::map<std::string, VerdictRecord> verdicts;
    std::optional<double> decay_exponent_t;
    std::optional<TruncationInfo> truncation;
};

// Verdict keys: l1_to_lp_bounded, l1_to_linf_bounded, lp_bounded, compact,
// r_nuclear. t is set when r_nuclear holds and p1 = p2 = p.
CriterionReport order_conditions(const SymbolOrder& order, const CriterionQuery& query);

// Ratio between partial sums at R and 2R that counts as divergence.
inline constexpr double kDivergenceRatio = 1.5;

struct DoublingCheck {
    double at_radius = 0.0;
    double at_double = 0.0;
    double increment = 0.0;
    double ratio = 0.0;
    bool diverging = false;
    bool converged = false;
};

DoublingCheck doubling_check(double at_radius, double at_double, double increment_tol);

// Upper bound on Σ|A(k,m)| over entries outside the box of radius R, from
// |A(k,m)| ≤ C (1+|k|)^{μ+2Q̃δ} (1+|m−k|/ħ)^{−2Q̃} with C from `decay`.
// k_tail: rows outside the box. m_tail: rows inside, columns outside.
struct TailBound {
    bool k_tail_applicable = false;
    bool m_tail_applicable = false;
    double k_tail = 0.0;
    double m_tail = 0.0;
    std::string reason;

    bool applicable() const noexcept { return k_tail_applicable && m_tail_applicable; }
    double total() const noexcept { return k_tail + m_tail; }
};

TailBound truncation_tail_bound(const SymbolOrder& order, const DecayReport& decay, const LatticeSpec& spec,
                                std::int64_t radius, int q_tilde);

}  // namespace lpdo
