#pragma once

#include <span>

namespace lpdo {

// Tree summation with a fixed split, so the result depends only on the input
// order and never on how partial values were produced.
double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace lpdo
