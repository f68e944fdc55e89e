#include "lattice_pdo/lattice.hpp"

#include <cmath>
#include <string>

#include "lattice_pdo/errors.hpp"

namespace lpdo {

LatticeSpec::LatticeSpec(double hbar, int dim) : hbar_(hbar), dim_(dim)
{
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw DomainError("lattice spacing hbar must be positive and finite");
    if (dim < 1)
        throw DomainError("lattice dimension must be >= 1");
}

BoxTruncation::BoxTruncation(std::int64_t radius) : radius_(radius)
{
    if (radius < 0)
        throw DomainError("box radius must be non-negative");
}

std::size_t BoxTruncation::size(int dim) const
{
    std::size_t n = 1;
    for (int d = 0; d < dim; ++d)
        n *= static_cast<std::size_t>(side());
    return n;
}

IntCoords integer_point_of(int dim, const BoxTruncation& box, std::size_t index)
{
    if (index >= box.size(dim))
        throw DomainError("index " + std::to_string(index) + " outside box");
    IntCoords z(static_cast<std::size_t>(dim));
    const auto side = static_cast<std::size_t>(box.side());
    for (int d = dim - 1; d >= 0; --d) {
        z[static_cast<std::size_t>(d)] =
            static_cast<std::int64_t>(index % side) - box.radius();
        index /= side;
    }
    return z;
}

bool in_box(const BoxTruncation& box, std::span<const std::int64_t> z) noexcept
{
    for (auto c : z)
        if (c < -box.radius() || c > box.radius())
            return false;
    return true;
}

std::size_t integer_index_of(const BoxTruncation& box, std::span<const std::int64_t> z)
{
    if (!in_box(box, z))
        throw DomainError("lattice point outside box");
    std::size_t index = 0;
    const auto side = static_cast<std::size_t>(box.side());
    for (auto c : z)
        index = index * side + static_cast<std::size_t>(c + box.radius());
    return index;
}

IntCoords to_integer(const LatticeSpec& spec, std::span<const double> point)
{
    if (point.size() != static_cast<std::size_t>(spec.dim()))
        throw DomainError("point dimension does not match lattice dimension");
    IntCoords z(point.size());
    for (std::size_t d = 0; d < point.size(); ++d) {
        const double scaled = point[d] / spec.hbar();
        const double nearest = std::round(scaled);
        if (!std::isfinite(scaled) || std::abs(scaled - nearest) > kLatticeTolerance)
            throw DomainError("point is not on the lattice");
        z[d] = static_cast<std::int64_t>(nearest);
    }
    return z;
}

Coords to_point(const LatticeSpec& spec, std::span<const std::int64_t> z)
{
    Coords k(z.size());
    for (std::size_t d = 0; d < z.size(); ++d)
        k[d] = spec.hbar() * static_cast<double>(z[d]);
    return k;
}

std::vector<Coords> enumerate_box(const LatticeSpec& spec, const BoxTruncation& box)
{
    const std::size_t n = box.size(spec.dim());
    std::vector<Coords> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        points.push_back(to_point(spec, integer_point_of(spec.dim(), box, i)));
    return points;
}

std::size_t index_of(const LatticeSpec& spec, const BoxTruncation& box,
                     std::span<const double> point)
{
    return integer_index_of(box, to_integer(spec, point));
}

Coords point_of(const LatticeSpec& spec, const BoxTruncation& box, std::size_t index)
{
    return to_point(spec, integer_point_of(spec.dim(), box, index));
}

double euclidean_norm(std::span<const double> v) noexcept
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

double euclidean_norm(std::span<const std::int64_t> v) noexcept
{
    double s = 0.0;
    for (auto x : v)
        s += static_cast<double>(x) * static_cast<double>(x);
    return std::sqrt(s);
}

std::int64_t max_norm(std::span<const std::int64_t> v) noexcept
{
    std::int64_t m = 0;
    for (auto x : v)
        m = std::max(m, x < 0 ? -x : x);
    return m;
}

}  // namespace lpdo
