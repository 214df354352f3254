#pragma once

#include <span>
#include <vector>

namespace sptk {

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation. Throws Error(LengthMismatch) for unequal or < 2
// lengths and Error(ConstantInput) when either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> values);

}  // namespace sptk
