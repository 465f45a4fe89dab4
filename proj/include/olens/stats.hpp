#pragma once

#include <span>
#include <vector>

namespace olens {

// Ranks with average-rank tie handling, 1-based.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman rank correlation with average ranks. Throws
// InsufficientDataError for fewer than 2 points.
double spearman(std::span<const double> a, std::span<const double> b);

// Pearson correlation.
double pearson(std::span<const double> a, std::span<const double> b);

// Median; even-sized input averages the two middle values. Input copied.
double median(std::vector<double> values);

}  // namespace olens
