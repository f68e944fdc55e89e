#include "lattice_pdo/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lattice_pdo/errors.hpp"
#include "lattice_pdo/format.hpp"

namespace lpdo {

namespace {

std::int64_t positive_mod(std::int64_t a, std::int64_t n)
{
    const std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

TorusSampler::TorusSampler(const Symbol& sym, std::span<const double> k, int points_per_axis)
    : dim_(sym.dim()), points_(points_per_axis)
{
    if (points_per_axis < 1)
        throw DomainError("quadrature needs at least one point per axis");
    const auto n = static_cast<std::size_t>(points_);
    twiddle_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        twiddle_[j] = Complex(std::cos(angle), std::sin(angle));
    }

    std::size_t total = 1;
    for (int d = 0; d < dim_; ++d)
        total *= n;
    samples_.resize(total);
    Coords theta(static_cast<std::size_t>(dim_));
    for (std::size_t s = 0; s < total; ++s) {
        std::size_t rest = s;
        for (int d = dim_ - 1; d >= 0; --d) {
            theta[static_cast<std::size_t>(d)] = static_cast<double>(rest % n) / static_cast<double>(n);
            rest /= n;
        }
        samples_[s] = sym.eval(k, theta);
    }
}

Complex TorusSampler::coefficient(std::span<const std::int64_t> freq) const
{
    if (freq.size() != static_cast<std::size_t>(dim_))
        throw DomainError("frequency dimension does not match symbol dimension");
    const auto n = static_cast<std::int64_t>(points_);
    std::vector<std::int64_t> f(freq.size());
    for (std::size_t d = 0; d < f.size(); ++d)
        f[d] = positive_mod(freq[d], n);

    Complex sum = 0.0;
    for (std::size_t s = 0; s < samples_.size(); ++s) {
        std::size_t rest = s;
        std::int64_t phase = 0;
        for (int d = dim_ - 1; d >= 0; --d) {
            const auto sd = static_cast<std::int64_t>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
            phase += f[static_cast<std::size_t>(d)] * sd;
        }
        sum += samples_[s] * twiddle_[static_cast<std::size_t>(phase % n)];
    }
    return sum / static_cast<double>(samples_.size());
}

int quadrature_points_for_radius(std::int64_t radius)
{
    return static_cast<int>(std::max<std::int64_t>(kDefaultQuadraturePoints, 4 * radius + 2));
}

Complex toroidal_coefficient_at(const Symbol& sym, std::span<const double> k,
                                std::span<const std::int64_t> freq, CoefficientMethod method,
                                int points_per_axis)
{
    if (method == CoefficientMethod::automatic && sym.has_closed_form_coefficients())
        return sym.closed_form_coefficient(k, freq);
    return TorusSampler(sym, k, points_per_axis).coefficient(freq);
}

Complex toroidal_coefficient(const Symbol& sym, const LatticeSpec& spec, std::span<const double> k,
                             std::span<const double> m, CoefficientMethod method, int points_per_axis)
{
    const IntCoords freq = to_integer(spec, m);
    return toroidal_coefficient_at(sym, k, freq, method, points_per_axis);
}

std::vector<CoefficientEntry> coefficient_table(const Symbol& sym, const LatticeSpec& spec,
                                                const BoxTruncation& k_box, std::int64_t freq_radius,
                                                CoefficientMethod method, int points_per_axis)
{
    if (sym.dim() != spec.dim())
        throw DomainError("symbol and lattice dimensions differ");
    const BoxTruncation freq_box(freq_radius);
    const int n = spec.dim();
    const std::size_t rows = k_box.size(n);
    const std::size_t per_row = freq_box.size(n);

    std::vector<IntCoords> freqs;
    freqs.reserve(per_row);
    for (std::size_t j = 0; j < per_row; ++j)
        freqs.push_back(integer_point_of(n, freq_box, j));

    const bool closed = method == CoefficientMethod::automatic && sym.has_closed_form_coefficients();
    if (!closed && points_per_axis < 1)
        throw DomainError("quadrature needs at least one point per axis");
    std::vector<CoefficientEntry> table(rows * per_row);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ir = 0; ir < static_cast<std::ptrdiff_t>(rows); ++ir) {
        const auto i = static_cast<std::size_t>(ir);
        const Coords k = point_of(spec, k_box, i);
        std::optional<TorusSampler> sampler;
        if (!closed)
            sampler.emplace(sym, k, points_per_axis);
        for (std::size_t j = 0; j < per_row; ++j) {
            auto& e = table[i * per_row + j];
            e.k = k;
            e.m = to_point(spec, freqs[j]);
            e.value = closed ? sym.closed_form_coefficient(k, freqs[j]) : sampler->coefficient(freqs[j]);
        }
    }
    return table;
}

void write_coefficients_csv(std::ostream& os, std::span<const CoefficientEntry> table, int dim)
{
    for (int d = 1; d <= dim; ++d)
        os << "k_" << d << ',';
    for (int d = 1; d <= dim; ++d)
        os << "m_" << d << ',';
    os << "re,im\n";
    for (const auto& e : table) {
        for (double x : e.k)
            os << format_double(x) << ',';
        for (double x : e.m)
            os << format_double(x) << ',';
        os << format_double(e.value.real()) << ',' << format_double(e.value.imag()) << '\n';
    }
}

DecayReport estimate_decay_constant(const Symbol& sym, const LatticeSpec& spec, int q_tilde,
                                    std::int64_t k_radius, std::int64_t m_radius)
{
    if (q_tilde < 0)
        throw DomainError("q_tilde must be non-negative");
    if (q_tilde > sym.deriv_order_available())
        throw CapabilityError("q_tilde exceeds the symbol's available θ-derivative order");

    DecayReport report;
    report.q_tilde = q_tilde;
    report.k_radius = k_radius;
    report.m_radius = m_radius;
    report.k_exponent = sym.order().mu + 2.0 * q_tilde * sym.order().delta;
    report.bandwidth = sym.bandwidth();

    const auto table = coefficient_table(sym, spec, BoxTruncation(k_radius), m_radius);
    double constant = 0.0;
    for (const auto& e : table) {
        const double m_scale = 1.0 + euclidean_norm(std::span<const double>(e.m)) / spec.hbar();
        const double k_scale = 1.0 + euclidean_norm(std::span<const double>(e.k));
        const double ratio =
            std::abs(e.value) * std::pow(m_scale, 2.0 * q_tilde) * std::pow(k_scale, -report.k_exponent);
        constant = std::max(constant, ratio);
    }
    report.constant = constant;
    return report;
}

}  // namespace lpdo
