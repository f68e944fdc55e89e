#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace lpdo {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares y ≈ slope·x + intercept. Empty when fewer than two
// points or all x coincide.
std::optional<LinearFit> least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace lpdo
