#include "lattice_pdo/kernel.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "lattice_pdo/errors.hpp"
#include "lattice_pdo/format.hpp"

namespace lpdo {

KernelMatrix::KernelMatrix(LatticeSpec spec, BoxTruncation box, Eigen::MatrixXcd entries,
                           std::string provenance)
    : spec_(spec), box_(box), entries_(std::move(entries)), provenance_(std::move(provenance))
{
    const auto n = static_cast<Eigen::Index>(box_.size(spec_.dim()));
    if (entries_.rows() != n || entries_.cols() != n)
        throw DomainError("kernel matrix dimensions do not match the box");
    if (!entries_.allFinite())
        throw DomainError("kernel matrix has non-finite entries");
}

KernelMatrix assemble(const Symbol& sym, const LatticeSpec& spec, const BoxTruncation& box,
                      CoefficientMethod method)
{
    if (sym.dim() != spec.dim())
        throw DomainError("symbol and lattice dimensions differ");
    const int n = spec.dim();
    const auto size = static_cast<Eigen::Index>(box.size(n));
    const bool closed = method == CoefficientMethod::automatic && sym.has_closed_form_coefficients();
    const int points = quadrature_points_for_radius(box.radius());

    std::vector<IntCoords> z(static_cast<std::size_t>(size));
    for (Eigen::Index i = 0; i < size; ++i)
        z[static_cast<std::size_t>(i)] = integer_point_of(n, box, static_cast<std::size_t>(i));

    Eigen::MatrixXcd entries(size, size);
#pragma omp parallel for schedule(static)
    for (Eigen::Index row = 0; row < size; ++row) {
        const IntCoords& zk = z[static_cast<std::size_t>(row)];
        const Coords k = to_point(spec, zk);
        std::optional<TorusSampler> sampler;
        if (!closed)
            sampler.emplace(sym, k, points);
        IntCoords freq(zk.size());
        for (Eigen::Index col = 0; col < size; ++col) {
            const IntCoords& zm = z[static_cast<std::size_t>(col)];
            for (std::size_t d = 0; d < freq.size(); ++d)
                freq[d] = zm[d] - zk[d];
            entries(row, col) = closed ? sym.closed_form_coefficient(k, freq) : sampler->coefficient(freq);
        }
    }
    return KernelMatrix(spec, box, std::move(entries),
                        sym.id() + "@R=" + std::to_string(box.radius()));
}

Eigen::VectorXcd apply(const KernelMatrix& kernel, const Eigen::VectorXcd& a)
{
    const Eigen::Index n = kernel.size();
    if (a.size() != n)
        throw DomainError("sequence length " + std::to_string(a.size()) + " does not match box size " +
                          std::to_string(n));
    const Eigen::MatrixXcd& k = kernel.entries();
    Eigen::VectorXcd out(n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index row = 0; row < n; ++row) {
        Complex sum = 0.0;
        for (Eigen::Index col = 0; col < n; ++col)
            sum += k(row, col) * a(col);
        out(row) = sum;
    }
    return out;
}

DiagonalSplit split_diagonal(const KernelMatrix& kernel)
{
    Eigen::VectorXcd diagonal = kernel.entries().diagonal();
    Eigen::MatrixXcd residue = kernel.entries();
    residue.diagonal().setZero();
    return DiagonalSplit{std::move(diagonal),
                         KernelMatrix(kernel.spec(), kernel.box(), std::move(residue),
                                      kernel.provenance() + ":residue")};
}

double max_asymmetry(const Eigen::MatrixXcd& m)
{
    const Eigen::Index n = m.rows();
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (Eigen::Index col = 0; col < n; ++col)
        for (Eigen::Index row = 0; row <= col; ++row)
            worst = std::max(worst, std::abs(m(row, col) - std::conj(m(col, row))));
    return worst;
}

HermitianCheck hermitian_check(const KernelMatrix& kernel, double tol)
{
    const double asym = max_asymmetry(kernel.entries());
    return HermitianCheck{asym <= tol, asym};
}

KernelMatrix hermitian_part(const KernelMatrix& kernel)
{
    Eigen::MatrixXcd h = 0.5 * (kernel.entries() + kernel.entries().adjoint());
    return KernelMatrix(kernel.spec(), kernel.box(), std::move(h), kernel.provenance() + ":hermitian");
}

void write_kernel_csv(std::ostream& os, const KernelMatrix& kernel)
{
    os << "row,col,re,im\n";
    const Eigen::MatrixXcd& m = kernel.entries();
    for (Eigen::Index row = 0; row < m.rows(); ++row)
        for (Eigen::Index col = 0; col < m.cols(); ++col) {
            const Complex v = m(row, col);
            if (v == Complex(0.0))
                continue;
            os << row << ',' << col << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
        }
}

void write_kernel_binary(std::ostream& os, const KernelMatrix& kernel)
{
    const std::int64_t n = kernel.spec().dim();
    const double hbar = kernel.spec().hbar();
    const std::int64_t radius = kernel.box().radius();
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    os.write(reinterpret_cast<const char*>(&hbar), sizeof hbar);
    os.write(reinterpret_cast<const char*>(&radius), sizeof radius);
    const Eigen::MatrixXcd& m = kernel.entries();
    for (Eigen::Index row = 0; row < m.rows(); ++row)
        for (Eigen::Index col = 0; col < m.cols(); ++col) {
            const double parts[2] = {m(row, col).real(), m(row, col).imag()};
            os.write(reinterpret_cast<const char*>(parts), sizeof parts);
        }
}

KernelMatrix read_kernel_binary(std::istream& is)
{
    std::int64_t n = 0;
    double hbar = 0.0;
    std::int64_t radius = 0;
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    is.read(reinterpret_cast<char*>(&hbar), sizeof hbar);
    is.read(reinterpret_cast<char*>(&radius), sizeof radius);
    if (!is || n < 1 || n > 16 || radius < 0)
        throw DomainError("malformed kernel binary header");
    const LatticeSpec spec(hbar, static_cast<int>(n));
    const BoxTruncation box(radius);
    const double points = std::pow(2.0 * static_cast<double>(radius) + 1.0, static_cast<double>(n));
    if (points > 1e6)
        throw DomainError("kernel binary header describes an implausibly large box");
    const auto size = static_cast<Eigen::Index>(box.size(spec.dim()));

    // When the stream is seekable, reject a short payload before allocating.
    const auto here = is.tellg();
    if (here != std::istream::pos_type(-1)) {
        is.seekg(0, std::ios::end);
        const auto remaining = static_cast<double>(is.tellg() - here);
        is.seekg(here);
        if (remaining < points * points * 2.0 * sizeof(double))
            throw DomainError("truncated kernel binary payload");
    }
    Eigen::MatrixXcd m(size, size);
    for (Eigen::Index row = 0; row < size; ++row)
        for (Eigen::Index col = 0; col < size; ++col) {
            double parts[2];
            is.read(reinterpret_cast<char*>(parts), sizeof parts);
            m(row, col) = Complex(parts[0], parts[1]);
        }
    if (!is)
        throw DomainError("truncated kernel binary payload");
    return KernelMatrix(spec, box, std::move(m), "binary");
}

}  // namespace lpdo
