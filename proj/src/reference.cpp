#include "lattice_pdo/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lattice_pdo/errors.hpp"

namespace lpdo::reference {

namespace {

// Row-major (i_1, …, i_n) ↦ flat index over {0..N−1}ⁿ.
std::vector<int> grid_point(std::size_t flat, int dim, int points)
{
    std::vector<int> idx(static_cast<std::size_t>(dim));
    for (int d = dim - 1; d >= 0; --d) {
        idx[static_cast<std::size_t>(d)] = static_cast<int>(flat % static_cast<std::size_t>(points));
        flat /= static_cast<std::size_t>(points);
    }
    return idx;
}

}  // namespace

Complex coefficient(const Symbol& sym, std::span<const double> k, std::span<const std::int64_t> freq, int points)
{
    const int dim = sym.dim();
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d)
        total *= static_cast<std::size_t>(points);
    Complex sum = 0.0;
    std::vector<double> theta(static_cast<std::size_t>(dim));
    for (std::size_t flat = 0; flat < total; ++flat) {
        const auto idx = grid_point(flat, dim, points);
        double phase = 0.0;
        for (int d = 0; d < dim; ++d) {
            theta[static_cast<std::size_t>(d)] = static_cast<double>(idx[static_cast<std::size_t>(d)]) / points;
            phase += static_cast<double>(freq[static_cast<std::size_t>(d)]) * theta[static_cast<std::size_t>(d)];
        }
        sum += sym.eval(k, theta) * std::polar(1.0, -2.0 * std::numbers::pi * phase);
    }
    return sum / static_cast<double>(total);
}

std::vector<CoefficientEntry> coefficient_table(const Symbol& sym, const LatticeSpec& spec, const BoxTruncation& k_box,
                                                std::int64_t freq_radius, CoefficientMethod method, int points)
{
    const int n = spec.dim();
    const BoxTruncation f_box(freq_radius);
    std::vector<CoefficientEntry> out;
    for (std::size_t i = 0; i < k_box.size(n); ++i) {
        const Coords k = point_of(spec, k_box, i);
        for (std::size_t j = 0; j < f_box.size(n); ++j) {
            const IntCoords f = integer_point_of(n, f_box, j);
            const Complex value = method == CoefficientMethod::automatic && sym.has_closed_form_coefficients()
                                      ? sym.closed_form_coefficient(k, f)
                                      : coefficient(sym, k, f, points);
            out.push_back(CoefficientEntry{k, to_point(spec, f), value});
        }
    }
    return out;
}

KernelMatrix assemble(const Symbol& sym, const LatticeSpec& spec, const BoxTruncation& box, CoefficientMethod method)
{
    const int n = spec.dim();
    const auto size = static_cast<Eigen::Index>(box.size(n));
    const int points = quadrature_points_for_radius(box.radius());
    Eigen::MatrixXcd m(size, size);
    for (Eigen::Index row = 0; row < size; ++row) {
        const IntCoords zk = integer_point_of(n, box, static_cast<std::size_t>(row));
        const Coords k = to_point(spec, zk);
        for (Eigen::Index col = 0; col < size; ++col) {
            const IntCoords zm = integer_point_of(n, box, static_cast<std::size_t>(col));
            IntCoords f(zm.size());
            for (std::size_t d = 0; d < f.size(); ++d)
                f[d] = zm[d] - zk[d];
            m(row, col) = method == CoefficientMethod::automatic && sym.has_closed_form_coefficients()
                              ? sym.closed_form_coefficient(k, f)
                              : coefficient(sym, k, f, points);
        }
    }
    return KernelMatrix(spec, box, std::move(m), sym.id() + "@R=" + std::to_string(box.radius()));
}

Eigen::VectorXcd apply(const KernelMatrix& kernel, const Eigen::VectorXcd& a)
{
    if (a.size() != kernel.size())
        throw DomainError("vector length does not match the kernel");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < a.size(); ++j)
            out(i) += kernel(i, j) * a(j);
    return out;
}

double schur_l1_lp(const KernelMatrix& kernel, double p)
{
    double best = 0.0;
    for (Eigen::Index col = 0; col < kernel.size(); ++col) {
        double s = 0.0;
        for (Eigen::Index row = 0; row < kernel.size(); ++row)
            s += std::pow(std::abs(kernel(row, col)), p);
        best = std::max(best, s);
    }
    return best;
}

double sup_entry(const KernelMatrix& kernel)
{
    double best = 0.0;
    for (Eigen::Index row = 0; row < kernel.size(); ++row)
        for (Eigen::Index col = 0; col < kernel.size(); ++col)
            best = std::max(best, std::abs(kernel(row, col)));
    return best;
}

double mixed_lp_sum(const KernelMatrix& kernel, double p)
{
    const double q = p / (p - 1.0);
    double total = 0.0;
    for (Eigen::Index row = 0; row < kernel.size(); ++row) {
        double s = 0.0;
        for (Eigen::Index col = 0; col < kernel.size(); ++col)
            s += std::pow(std::abs(kernel(row, col)), q);
        total += std::pow(s, p / q);
    }
    return total;
}

double nuclear_sum(const KernelMatrix& kernel, double r, double p2)
{
    double total = 0.0;
    for (Eigen::Index row = 0; row < kernel.size(); ++row) {
        double s = 0.0;
        for (Eigen::Index col = 0; col < kernel.size(); ++col)
            s += std::pow(std::abs(kernel(row, col)), p2);
        total += std::pow(s, r / p2);
    }
    return total;
}

KernelMatrix build_hamiltonian(const LatticeSpec& spec, const Potential& potential, const BoxTruncation& box,
                               double shift)
{
    const int n = spec.dim();
    const double inv_h2 = 1.0 / (spec.hbar() * spec.hbar());
    const auto size = static_cast<Eigen::Index>(box.size(n));
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        const IntCoords zi = integer_point_of(n, box, static_cast<std::size_t>(i));
        for (Eigen::Index j = 0; j < size; ++j) {
            const IntCoords zj = integer_point_of(n, box, static_cast<std::size_t>(j));
            std::int64_t l1 = 0;
            for (std::size_t d = 0; d < zi.size(); ++d)
                l1 += std::abs(zi[d] - zj[d]);
            if (l1 == 0)
                h(i, j) = 2.0 * n * inv_h2 + potential(to_point(spec, zi)) + shift;
            else if (l1 == 1)
                h(i, j) = -inv_h2;
        }
    }
    return KernelMatrix(spec, box, std::move(h), "hamiltonian-reference");
}

}  // namespace lpdo::reference
