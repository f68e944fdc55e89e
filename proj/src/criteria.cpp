#include "lattice_pdo/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lattice_pdo/errors.hpp"
#include "lattice_pdo/reduce.hpp"

namespace lpdo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double abs_power(Complex z, double exponent)
{
    if (exponent == 2.0)
        return std::norm(z);
    if (exponent == 1.0)
        return std::abs(z);
    return std::pow(std::abs(z), exponent);
}

// Per-row (or per-column) Σ |A|^e, each reduced pairwise.
std::vector<double> power_sums(const Eigen::MatrixXcd& m, double exponent, bool by_column)
{
    const Eigen::Index lines = by_column ? m.cols() : m.rows();
    const Eigen::Index length = by_column ? m.rows() : m.cols();
    std::vector<double> sums(static_cast<std::size_t>(lines));
#pragma omp parallel
    {
        std::vector<double> terms(static_cast<std::size_t>(length));
#pragma omp for schedule(static)
        for (Eigen::Index line = 0; line < lines; ++line) {
            for (Eigen::Index i = 0; i < length; ++i)
                terms[static_cast<std::size_t>(i)] = abs_power(by_column ? m(i, line) : m(line, i), exponent);
            sums[static_cast<std::size_t>(line)] = pairwise_sum(terms);
        }
    }
    return sums;
}

VerdictRecord strict_less(double value, double threshold, bool sharp)
{
    return VerdictRecord{value < threshold ? Verdict::holds : Verdict::fails, value, threshold, "<", sharp, {}};
}

VerdictRecord less_equal(double value, double threshold, bool sharp)
{
    return VerdictRecord{value <= threshold ? Verdict::holds : Verdict::fails, value, threshold, "<=", sharp, {}};
}

// Exact number of z ∈ Zⁿ with |z|∞ = t.
double shell_count(std::int64_t t, int n)
{
    if (t == 0)
        return 1.0;
    const double outer = std::pow(2.0 * static_cast<double>(t) + 1.0, n);
    const double inner = std::pow(2.0 * static_cast<double>(t) - 1.0, n);
    return outer - inner;
}

constexpr std::int64_t kExplicitShells = 512;

// Σ_{t ≥ first} shell_count(t)·g(t) for g(t) = (1 + scale·t)^{exponent},
// exponent < −n, optionally cut at t ≤ last. Shells beyond the explicit range
// are bounded with shell_count(t) ≤ 2n(2+1/T)^{n−1} t^{n−1} and
// Σ_{t≥T} t^{−s} ≤ T^{−s} + T^{1−s}/(s−1).
double shell_series(std::int64_t first, std::optional<std::int64_t> last, int n, double scale, double exponent)
{
    double sum = 0.0;
    const std::int64_t stop = last ? *last : first + kExplicitShells - 1;
    for (std::int64_t t = first; t <= stop; ++t)
        sum += shell_count(t, n) * std::pow(1.0 + scale * static_cast<double>(t), exponent);
    if (last)
        return sum;

    const auto tail_start = static_cast<double>(stop + 1);
    const double s = 1.0 - n - exponent;
    const double shell_factor = 2.0 * n * std::pow(2.0 + 1.0 / tail_start, n - 1);
    const double power_tail = std::pow(tail_start, -s) + std::pow(tail_start, 1.0 - s) / (s - 1.0);
    return sum + shell_factor * std::pow(scale, exponent) * power_tail;
}

}  // namespace

double schur_l1_lp(const KernelMatrix& kernel, double p)
{
    if (!(p >= 1.0) || std::isinf(p))
        throw DomainError("schur_l1_lp requires 1 <= p < inf");
    const auto sums = power_sums(kernel.entries(), p, true);
    return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

double sup_entry(const KernelMatrix& kernel)
{
    const Eigen::MatrixXcd& m = kernel.entries();
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (Eigen::Index col = 0; col < m.cols(); ++col)
        for (Eigen::Index row = 0; row < m.rows(); ++row)
            worst = std::max(worst, std::abs(m(row, col)));
    return worst;
}

double mixed_lp_sum(const KernelMatrix& kernel, double p)
{
    if (!(p > 1.0) || std::isinf(p))
        throw DomainError("mixed_lp_sum requires 1 < p < inf");
    const double q = p / (p - 1.0);
    auto rows = power_sums(kernel.entries(), q, false);
    for (double& v : rows)
        v = std::pow(v, p / q);
    return pairwise_sum(rows);
}

double nuclear_sum(const KernelMatrix& kernel, double r, double p2)
{
    if (!(r > 0.0 && r <= 1.0))
        throw DomainError("nuclear_sum requires 0 < r <= 1");
    if (!(p2 >= 1.0) || std::isinf(p2))
        throw DomainError("nuclear_sum requires 1 <= p2 < inf");
    auto rows = power_sums(kernel.entries(), p2, false);
    for (double& v : rows)
        v = std::pow(v, r / p2);
    return pairwise_sum(rows);
}

CriterionQuery CriterionQuery::make(double p, double r, double p1, double p2, int n, std::optional<double> q)
{
    if (!(p >= 1.0))
        throw DomainError("p must be >= 1");
    if (!(r > 0.0 && r <= 1.0))
        throw DomainError("r must lie in (0, 1]");
    if (!(p1 >= 1.0) || !(p2 >= 1.0) || std::isinf(p1) || std::isinf(p2))
        throw DomainError("p1 and p2 must lie in [1, inf)");
    if (n < 1)
        throw DomainError("dimension n must be >= 1");
    const double conjugate = p == 1.0 ? kInf : (std::isinf(p) ? 1.0 : p / (p - 1.0));
    if (q) {
        const double lhs = 1.0 / p + 1.0 / *q;
        if (std::abs(lhs - 1.0) > 1e-12)
            throw DomainError("p and q are not conjugate");
    }
    CriterionQuery query;
    query.p = p;
    query.q = conjugate;
    query.r = r;
    query.p1 = p1;
    query.p2 = p2;
    query.n = n;
    return query;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::holds:
        return "holds";
    case Verdict::fails:
        return "fails";
    case Verdict::not_applicable:
        return "not-applicable";
    }
    return "not-applicable";
}

CriterionReport order_conditions(const SymbolOrder& order, const CriterionQuery& query)
{
    const double mu = order.mu;
    const double delta = order.delta;
    const double n = query.n;
    const bool delta_zero = delta == 0.0;

    CriterionReport report;

    if (std::isinf(query.p)) {
        VerdictRecord na;
        na.value = mu;
        na.relation = "<";
        na.note = "requires finite p";
        report.verdicts["l1_to_lp_bounded"] = na;
    } else {
        report.verdicts["l1_to_lp_bounded"] = strict_less(mu, -n / query.p, false);
    }

    report.verdicts["l1_to_linf_bounded"] = less_equal(mu, 0.0, true);

    auto lp = less_equal(mu, -(n + 2.0) * delta, delta_zero);
    if (!delta_zero && lp.verdict == Verdict::holds && mu == lp.threshold)
        lp.note = "boundary case with delta > 0: sufficient only";
    report.verdicts["lp_bounded"] = lp;

    report.verdicts["compact"] = strict_less(mu, -(n + 2.0) * delta, delta_zero);

    const auto nuclear = strict_less(mu, -n / query.r - (n / query.p2 + 2.0) * delta, false);
    report.verdicts["r_nuclear"] = nuclear;

    if (nuclear.verdict == Verdict::holds && query.p1 == query.p2 && query.p2 == query.p) {
        const double inv_t = 1.0 / query.r - std::abs(1.0 / query.p - 0.5);
        if (inv_t > 0.0)
            report.decay_exponent_t = 1.0 / inv_t;
    }
    return report;
}

DoublingCheck doubling_check(double at_radius, double at_double, double increment_tol)
{
    DoublingCheck c;
    c.at_radius = at_radius;
    c.at_double = at_double;
    c.increment = at_double - at_radius;
    c.ratio = at_radius > 0.0 ? at_double / at_radius : (at_double > 0.0 ? kInf : 1.0);
    c.diverging = c.ratio >= kDivergenceRatio;
    c.converged = std::abs(c.increment) < increment_tol;
    return c;
}

TailBound truncation_tail_bound(const SymbolOrder& order, const DecayReport& decay, const LatticeSpec& spec,
                                std::int64_t radius, int q_tilde)
{
    if (decay.q_tilde != q_tilde)
        throw DomainError("decay report was estimated for a different q_tilde");
    if (radius < 0)
        throw DomainError("radius must be non-negative");

    const int n = spec.dim();
    const double k_exponent = order.mu + 2.0 * q_tilde * order.delta;
    const double m_exponent = -2.0 * q_tilde;
    const double c = decay.constant;
    const std::optional<std::int64_t> band = decay.bandwidth;

    TailBound bound;
    const bool m_summable = band.has_value() || 2.0 * q_tilde > n;

    // Σ over columns at |m−k|/ħ∞ ≥ d of (1+|m−k|/ħ)^{−2Q̃}.
    auto column_series = [&](std::int64_t d) -> double {
        if (band) {
            if (d > *band)
                return 0.0;
            return shell_series(d, *band, n, 1.0, m_exponent);
        }
        return shell_series(d, std::nullopt, n, 1.0, m_exponent);
    };

    if (!m_summable) {
        bound.reason = "2*q_tilde <= n: column decay not summable";
    } else {
        bound.m_tail_applicable = true;
        const BoxTruncation box(radius);
        std::vector<double> by_distance(static_cast<std::size_t>(radius) + 2, -1.0);
        std::vector<double> terms(box.size(n));
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const IntCoords z = integer_point_of(n, box, i);
            const std::int64_t d = radius - max_norm(z) + 1;
            double& series = by_distance[static_cast<std::size_t>(d)];
            if (series < 0.0)
                series = column_series(d);
            const double k_norm = spec.hbar() * euclidean_norm(std::span<const std::int64_t>(z));
            terms[i] = series == 0.0 ? 0.0 : std::pow(1.0 + k_norm, k_exponent) * series;
        }
        bound.m_tail = c * pairwise_sum(terms);
    }

    if (!(k_exponent < -n)) {
        if (!bound.reason.empty())
            bound.reason += "; ";
        bound.reason += "mu + 2*q_tilde*delta >= -n: row decay not summable";
    } else if (m_summable) {
        bound.k_tail_applicable = true;
        // |k|₂ ≥ ħ|z|∞ and the exponent is negative.
        const double rows = shell_series(radius + 1, std::nullopt, n, spec.hbar(), k_exponent);
        bound.k_tail = c * rows * column_series(0);
    }
    return bound;
}

}  // namespace lpdo
