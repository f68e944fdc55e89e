#include "lattice_pdo/schrodinger.hpp"

#include <algorithm>
#include <cmath>

#include "lattice_pdo/errors.hpp"
#include "lattice_pdo/fit.hpp"

namespace lpdo {

namespace {

// Every non-zero vector in {−1, 0, 1}ⁿ.
std::vector<Coords> sample_directions(int dim)
{
    std::vector<Coords> dirs;
    const auto total = static_cast<std::size_t>(std::pow(3, dim));
    for (std::size_t code = 0; code < total; ++code) {
        Coords d(static_cast<std::size_t>(dim));
        std::size_t rest = code;
        bool nonzero = false;
        for (auto& c : d) {
            c = static_cast<double>(rest % 3) - 1.0;
            rest /= 3;
            nonzero = nonzero || c != 0.0;
        }
        if (nonzero)
            dirs.push_back(std::move(d));
    }
    return dirs;
}

}  // namespace

PotentialSpec PotentialSpec::make(Potential potential, int dim)
{
    if (dim < 1)
        throw DomainError("potential dimension must be >= 1");
    if (!potential.is_anharmonic() && potential.terms().front().exponents.size() != static_cast<std::size_t>(dim))
        throw DomainError("potential dimension does not match the lattice");
    if (!(potential.order() > 0.0))
        throw DomainError("potential order must be positive");

    // |z|∞ ≤ 10, shrunk in high dimension to at most ~10⁵ samples.
    std::int64_t sample_radius = 10;
    while (sample_radius > 1 && std::pow(2.0 * static_cast<double>(sample_radius) + 1.0, dim) > 1e5)
        --sample_radius;
    const BoxTruncation sample_box(sample_radius);
    for (std::size_t i = 0; i < sample_box.size(dim); ++i) {
        const IntCoords z = integer_point_of(dim, sample_box, i);
        Coords k(z.begin(), z.end());
        if (potential(k) < 0.0)
            throw DomainError("potential is negative at a sampled point");
    }
    for (const auto& dir : sample_directions(dim)) {
        double previous = -1.0;
        for (double distance : {10.0, 100.0, 1000.0}) {
            Coords k = dir;
            for (auto& c : k)
                c *= distance;
            const double v = potential(k);
            if (!(v > previous) || v < 0.0)
                throw DomainError("potential is not confining along a sampled direction");
            previous = v;
        }
    }
    return PotentialSpec(std::move(potential), dim);
}

KernelMatrix build_hamiltonian(const LatticeSpec& spec, const Potential& potential, const BoxTruncation& box,
                               double shift)
{
    if (!potential.is_anharmonic() && potential.terms().front().exponents.size() != static_cast<std::size_t>(spec.dim()))
        throw DomainError("potential and lattice dimensions differ");
    if (!std::isfinite(shift))
        throw DomainError("shift must be finite");
    const int n = spec.dim();
    const double inv_h2 = 1.0 / (spec.hbar() * spec.hbar());
    const auto size = static_cast<Eigen::Index>(box.size(n));

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
#pragma omp parallel for schedule(static)
    for (Eigen::Index row = 0; row < size; ++row) {
        IntCoords z = integer_point_of(n, box, static_cast<std::size_t>(row));
        const Coords k = to_point(spec, z);
        h(row, row) = 2.0 * n * inv_h2 + potential(k) + shift;
        for (std::size_t d = 0; d < z.size(); ++d) {
            for (std::int64_t step : {-1, 1}) {
                z[d] += step;
                if (in_box(box, z))
                    h(row, static_cast<Eigen::Index>(integer_index_of(box, z))) = -inv_h2;
                z[d] -= step;
            }
        }
    }
    return KernelMatrix(spec, box, std::move(h),
                        "hamiltonian(V=" + potential.description() + ")@R=" + std::to_string(box.radius()));
}

KernelMatrix build_hamiltonian(const LatticeSpec& spec, const PotentialSpec& potential, const BoxTruncation& box,
                               double shift)
{
    if (potential.dim() != spec.dim())
        throw DomainError("potential and lattice dimensions differ");
    return build_hamiltonian(spec, potential.potential(), box, shift);
}

std::vector<double> weyl_oracle(const LatticeSpec& spec, const Potential& potential, const BoxTruncation& box,
                                std::size_t j_max, double shift)
{
    const int n = spec.dim();
    const double inv_h2 = 1.0 / (spec.hbar() * spec.hbar());
    std::vector<double> values(box.size(n));
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = potential(point_of(spec, box, i)) + 2.0 * n * inv_h2 + shift;
    std::sort(values.begin(), values.end());
    values.resize(std::min(j_max, values.size()));
    return values;
}

std::vector<double> weyl_oracle(const LatticeSpec& spec, const PotentialSpec& potential, const BoxTruncation& box,
                                std::size_t j_max, double shift)
{
    return weyl_oracle(spec, potential.potential(), box, j_max, shift);
}

ConvergedSpectrum spectrum_converged(const LatticeSpec& spec, const PotentialSpec& potential, std::size_t j_max,
                                     double tol, const SpectrumOptions& options)
{
    if (j_max < 1)
        throw DomainError("j_max must be >= 1");
    if (!(tol > 0.0))
        throw DomainError("tol must be positive");
    const int n = spec.dim();

    auto box_points = [n](std::int64_t r) { return BoxTruncation(r).size(n); };

    std::int64_t r_max = 0;
    while (box_points(r_max + 1) <= options.max_dimension)
        ++r_max;

    const auto base_radius = static_cast<std::int64_t>(std::ceil(25.0 / spec.hbar()));
    const double base_points = 2.0 * static_cast<double>(base_radius) + 1.0;
    auto r0 = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::floor((std::pow(base_points, 1.0 / n) - 1.0) / 2.0 + 1e-12)));
    while (box_points(r0) < j_max)
        ++r0;

    std::vector<std::int64_t> schedule;
    if (r0 > r_max) {
        schedule.push_back(r_max);
    } else {
        for (std::int64_t r = r0; r <= r_max; r *= 2)
            schedule.push_back(r);
        if (schedule.back() < r_max)
            schedule.push_back(r_max);
    }

    ConvergedSpectrum result;
    Eigen::VectorXd previous;
    for (std::int64_t radius : schedule) {
        const BoxTruncation box(radius);
        const auto spectrum = eigendecompose_hermitian(build_hamiltonian(spec, potential, box, options.shift), false);
        const auto count = std::min<std::size_t>(j_max, static_cast<std::size_t>(spectrum.eigenvalues.size()));

        result.radii.push_back(radius);
        result.radius_used = radius;
        result.eigenvalues.assign(spectrum.eigenvalues.data(), spectrum.eigenvalues.data() + count);
        result.converged.assign(count, false);
        if (previous.size() > 0) {
            for (std::size_t j = 0; j < count && j < static_cast<std::size_t>(previous.size()); ++j) {
                const double now = result.eigenvalues[j];
                result.converged[j] = std::abs(now - previous(static_cast<Eigen::Index>(j))) < tol * (1.0 + std::abs(now));
            }
        }
        result.all_converged = count == j_max && std::all_of(result.converged.begin(), result.converged.end(),
                                                             [](bool c) { return c; });
        if (result.all_converged)
            break;
        previous = spectrum.eigenvalues;
    }
    return result;
}

std::vector<double> sampled_r_values(double mu)
{
    std::vector<double> out;
    if (!(mu > 0.0))
        return out;
    const double lower = 1.0 / mu;
    for (double r : {1.0, (1.0 + lower) / 2.0, lower + 0.05})
        if (r > lower && r <= 1.0 && std::find(out.begin(), out.end(), r) == out.end())
            out.push_back(r);
    return out;
}

GrowthFit fit_growth_exponent(std::span<const double> eigenvalues, std::size_t j_first, std::size_t j_last, double mu)
{
    if (j_first < 1 || j_last <= j_first || j_last > eigenvalues.size())
        throw DomainError("growth window must satisfy 1 <= j_first < j_last <= number of eigenvalues");
    std::vector<double> x, y;
    for (std::size_t j = j_first; j <= j_last; ++j) {
        const double lambda = eigenvalues[j - 1];
        if (!(lambda > 0.0))
            throw DomainError("non-positive eigenvalue at j = " + std::to_string(j));
        x.push_back(std::log(static_cast<double>(j)));
        y.push_back(std::log(lambda));
    }
    const auto fit = least_squares(x, y);
    GrowthFit g;
    g.j_first = j_first;
    g.j_last = j_last;
    g.slope = fit->slope;
    g.intercept = fit->intercept;

    const double anchor = eigenvalues[j_first - 1];
    for (double r : sampled_r_values(mu)) {
        const double c_r = anchor / std::pow(static_cast<double>(j_first), 1.0 / r);
        bool holds = true;
        for (std::size_t j = j_first; j <= j_last && holds; ++j)
            holds = eigenvalues[j - 1] >= c_r * std::pow(static_cast<double>(j), 1.0 / r);
        g.r_bound_satisfied[r] = holds;
        g.slope_exceeds_inverse_r[r] = g.slope > 1.0 / r;
    }
    return g;
}

GrowthFit fit_growth_exponent(const ConvergedSpectrum& spectrum, std::size_t j_first, std::size_t j_last, double mu)
{
    if (j_last > spectrum.converged.size())
        throw DomainError("growth window exceeds the computed spectrum");
    for (std::size_t j = j_first; j <= j_last; ++j)
        if (j >= 1 && !spectrum.converged[j - 1])
            throw DomainError("eigenvalue j = " + std::to_string(j) + " is not converged");
    return fit_growth_exponent(spectrum.eigenvalues, j_first, j_last, mu);
}

}  // namespace lpdo
