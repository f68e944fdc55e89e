#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lpdo {

using Coords = std::vector<double>;
using IntCoords = std::vector<std::int64_t>;

// Membership tolerance on coordinate/ħ.
inline constexpr double kLatticeTolerance = 1e-9;

// The lattice ħZⁿ.
class LatticeSpec {
public:
    LatticeSpec(double hbar, int dim);

    double hbar() const noexcept { return hbar_; }
    int dim() const noexcept { return dim_; }

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

private:
    double hbar_;
    int dim_;
};

// The box {ħz : z ∈ [−R, R]ⁿ}, enumerated lexicographically in z
// (first coordinate slowest). The ordering is part of every output format.
class BoxTruncation {
public:
    explicit BoxTruncation(std::int64_t radius);

    std::int64_t radius() const noexcept { return radius_; }
    std::int64_t side() const noexcept { return 2 * radius_ + 1; }
    std::size_t size(int dim) const;

    friend bool operator==(const BoxTruncation&, const BoxTruncation&) = default;

private:
    std::int64_t radius_;
};

std::vector<Coords> enumerate_box(const LatticeSpec& spec, const BoxTruncation& box);

std::size_t index_of(const LatticeSpec& spec, const BoxTruncation& box,
                     std::span<const double> point);
Coords point_of(const LatticeSpec& spec, const BoxTruncation& box, std::size_t index);

// Integer-coordinate variants (z rather than ħz).
IntCoords integer_point_of(int dim, const BoxTruncation& box, std::size_t index);
std::size_t integer_index_of(const BoxTruncation& box, std::span<const std::int64_t> z);
bool in_box(const BoxTruncation& box, std::span<const std::int64_t> z) noexcept;

// z = point/ħ; throws DomainError if any coordinate is off the lattice.
IntCoords to_integer(const LatticeSpec& spec, std::span<const double> point);
Coords to_point(const LatticeSpec& spec, std::span<const std::int64_t> z);

double euclidean_norm(std::span<const double> v) noexcept;
double euclidean_norm(std::span<const std::int64_t> v) noexcept;
std::int64_t max_norm(std::span<const std::int64_t> v) noexcept;

}  // namespace lpdo
