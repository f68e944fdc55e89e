#include "lattice_pdo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "lattice_pdo/errors.hpp"
#include "lattice_pdo/fit.hpp"
#include "lattice_pdo/kernel.hpp"

namespace lpdo {

namespace {

void fix_phases(Eigen::MatrixXcd& vectors)
{
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        Eigen::Index best = 0;
        double best_abs = -1.0;
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            const double a = std::abs(vectors(i, j));
            if (a > best_abs) {
                best_abs = a;
                best = i;
            }
        }
        if (best_abs > 0.0) {
            vectors.col(j) *= std::conj(vectors(best, j)) / best_abs;
            vectors(best, j) = Complex(std::abs(vectors(best, j)), 0.0);
        }
    }
}

double eigen_residual(const Eigen::MatrixXcd& m, const Eigen::VectorXd& values, const Eigen::MatrixXcd& vectors)
{
    const Eigen::MatrixXcd image = m * vectors - vectors * values.cast<Complex>().asDiagonal();
    return image.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd off_diagonal(const Eigen::MatrixXcd& m)
{
    Eigen::MatrixXcd r = m;
    r.diagonal().setZero();
    return r;
}

// Box-coordinate distance |k/ħ|∞ for each index.
std::int64_t box_max_norm(const KernelMatrix& kernel, std::size_t index)
{
    return max_norm(integer_point_of(kernel.spec().dim(), kernel.box(), index));
}

std::optional<double> fit_exponent(const std::vector<DiagApproxPoint>& points, const std::vector<std::size_t>& subset,
                                   std::size_t* used)
{
    std::vector<double> x, y;
    for (std::size_t i : subset) {
        const auto& p = points[i];
        if (p.residual == 0.0)
            continue;
        x.push_back(std::log1p(euclidean_norm(std::span<const double>(p.k))));
        y.push_back(std::log(std::abs(p.residual)));
    }
    if (used)
        *used = x.size();
    const auto fit = least_squares(x, y);
    if (!fit)
        return std::nullopt;
    return fit->slope;
}

}  // namespace

SpectralResult eigendecompose_hermitian(const Eigen::MatrixXcd& matrix, bool want_vectors)
{
    if (matrix.rows() != matrix.cols())
        throw DomainError("eigendecompose_hermitian needs a square matrix");
    const double asym = max_asymmetry(matrix);
    if (asym > kHermitianTolerance)
        throw DomainError("matrix is not Hermitian (max asymmetry " + std::to_string(asym) + ")");

    SpectralResult result;
    result.dimension = matrix.rows();
    if (matrix.rows() == 0) {
        result.eigenvalues.resize(0);
        if (want_vectors)
            result.eigenvectors = Eigen::MatrixXcd(0, 0);
        return result;
    }

    const int options = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    const bool real = matrix.imag().cwiseAbs().maxCoeff() == 0.0;
    if (real) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix.real(), options);
        if (solver.info() != Eigen::Success)
            throw DomainError("Hermitian eigensolver did not converge");
        result.eigenvalues = solver.eigenvalues();
        if (want_vectors)
            result.eigenvectors = solver.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, options);
        if (solver.info() != Eigen::Success)
            throw DomainError("Hermitian eigensolver did not converge");
        result.eigenvalues = solver.eigenvalues();
        if (want_vectors)
            result.eigenvectors = solver.eigenvectors();
    }
    if (result.eigenvectors) {
        fix_phases(*result.eigenvectors);
        result.residual_norm = eigen_residual(matrix, result.eigenvalues, *result.eigenvectors);
    }
    return result;
}

SpectralResult eigendecompose_hermitian(const KernelMatrix& kernel, bool want_vectors)
{
    auto result = eigendecompose_hermitian(kernel.entries(), want_vectors);
    result.radius = kernel.box().radius();
    return result;
}

double largest_singular_value(const Eigen::MatrixXcd& matrix)
{
    constexpr double kTol = 1e-10;
    constexpr int kMaxIterations = 10000;
    if (matrix.size() == 0)
        return 0.0;

    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd v(matrix.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = Complex(normal(rng), normal(rng));
    v.normalize();

    double rho = 0.0;
    for (int it = 0; it < kMaxIterations; ++it) {
        Eigen::VectorXcd w = matrix.adjoint() * (matrix * v);
        const double next = w.norm();
        if (next == 0.0)
            return 0.0;
        v = w / next;
        const bool done = std::abs(next - rho) <= kTol * next;
        rho = next;
        if (done)
            break;
    }
    return std::sqrt(rho);
}

double residue_norm(const Eigen::MatrixXcd& matrix)
{
    const Eigen::MatrixXcd r = off_diagonal(matrix);
    if (r.size() == 0 || r.cwiseAbs().maxCoeff() == 0.0)
        return 0.0;
    if (max_asymmetry(r) <= kHermitianTolerance) {
        const auto spectrum = eigendecompose_hermitian(r, false);
        return std::max(std::abs(spectrum.eigenvalues.minCoeff()), std::abs(spectrum.eigenvalues.maxCoeff()));
    }
    return largest_singular_value(r);
}

double residue_norm(const KernelMatrix& kernel) { return residue_norm(kernel.entries()); }

DiagApproxReport diagonal_approximation(const KernelMatrix& kernel, const SymbolOrder& order)
{
    const auto check = hermitian_check(kernel, kHermitianTolerance);
    if (!check.hermitian)
        throw DomainError("diagonal_approximation needs a Hermitian kernel");

    const int n = kernel.spec().dim();
    DiagApproxReport report;
    report.applicable = order.mu < -(n + 2.0) * order.delta;

    const auto spectrum = eigendecompose_hermitian(kernel, true);
    const Eigen::MatrixXcd& vectors = *spectrum.eigenvectors;
    const Eigen::VectorXd diag = kernel.entries().diagonal().real();
    const auto size = static_cast<std::size_t>(kernel.size());

    std::vector<std::size_t> by_value(size);
    std::iota(by_value.begin(), by_value.end(), 0);
    std::stable_sort(by_value.begin(), by_value.end(), [&](std::size_t a, std::size_t b) {
        return diag(static_cast<Eigen::Index>(a)) < diag(static_cast<Eigen::Index>(b));
    });

    report.points.resize(size);
    for (std::size_t j = 0; j < size; ++j) {
        const std::size_t i = by_value[j];
        auto& p = report.points[j];
        p.index = i;
        p.k = point_of(kernel.spec(), kernel.box(), i);
        p.diagonal = diag(static_cast<Eigen::Index>(i));
        p.eigenvalue = spectrum.eigenvalues(static_cast<Eigen::Index>(j));
        p.residual = p.eigenvalue - p.diagonal;
        p.overlap = std::abs(vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        p.low_overlap = p.overlap < 0.5;
        report.weyl_max_deviation = std::max(report.weyl_max_deviation, std::abs(p.residual));
        if (p.low_overlap)
            ++report.low_overlap_count;
    }
    report.residue_norm = residue_norm(kernel);

    const std::int64_t radius = kernel.box().radius();
    std::vector<std::size_t> annulus;
    for (std::size_t j = 0; j < size; ++j) {
        const std::int64_t d = box_max_norm(kernel, report.points[j].index);
        if (4 * d > radius && 4 * d <= 3 * radius)
            annulus.push_back(j);
    }
    report.fitted_exponent = fit_exponent(report.points, annulus, &report.fitted_points);

    std::vector<std::size_t> outer(size);
    std::iota(outer.begin(), outer.end(), 0);
    std::stable_sort(outer.begin(), outer.end(), [&](std::size_t a, std::size_t b) {
        return euclidean_norm(std::span<const double>(report.points[a].k)) >
               euclidean_norm(std::span<const double>(report.points[b].k));
    });
    outer.resize(size / 2);
    report.outer_half_exponent = fit_exponent(report.points, outer, nullptr);
    return report;
}

std::vector<SandwichRecord> sandwich_check(const KernelMatrix& kernel, const SpectralResult& spectrum)
{
    if (!spectrum.eigenvectors)
        throw DomainError("sandwich_check needs eigenvectors");
    if (spectrum.dimension != kernel.size())
        throw DomainError("spectrum does not belong to this kernel");

    const Eigen::VectorXd diag = kernel.entries().diagonal().real();
    const Eigen::MatrixXcd residue = off_diagonal(kernel.entries());
    const double r_norm = residue_norm(kernel);
    const Eigen::MatrixXcd& vectors = *spectrum.eigenvectors;

    std::vector<SandwichRecord> records(static_cast<std::size_t>(spectrum.eigenvalues.size()));
    for (Eigen::Index j = 0; j < spectrum.eigenvalues.size(); ++j) {
        const double lambda = spectrum.eigenvalues(j);
        const Eigen::VectorXcd phi = vectors.col(j);
        const Eigen::ArrayXd gaps = (diag.array() - lambda).abs();
        auto& rec = records[static_cast<std::size_t>(j)];
        rec.lower = gaps.minCoeff();
        rec.middle = ((diag.array() - lambda).cast<Complex>() * phi.array()).matrix().norm();
        rec.upper = std::min(gaps.maxCoeff(), r_norm);
        rec.residue_image = (residue * phi).norm();
        rec.holds = rec.lower <= rec.middle + kSandwichSlack && rec.middle <= rec.upper + kSandwichSlack;
    }
    return records;
}

}  // namespace lpdo
