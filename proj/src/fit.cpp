#include "lattice_pdo/fit.hpp"

#include "lattice_pdo/errors.hpp"

namespace lpdo {

std::optional<LinearFit> least_squares(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw DomainError("least_squares: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2)
        return std::nullopt;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0)
        return std::nullopt;
    const double slope = sxy / sxx;
    return LinearFit{slope, my - slope * mx, n};
}

}  // namespace lpdo
