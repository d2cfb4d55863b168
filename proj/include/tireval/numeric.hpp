#pragma once

#include <span>
#include <string>

namespace tireval {

// Compensated (Neumaier) summation.
double compensated_sum(std::span<const double> values);

// Arithmetic mean with compensated summation; throws std::invalid_argument
// on an empty span.
double mean(std::span<const double> values);

// Unbiased sample variance (n-1 denominator); requires n >= 2.
double sample_variance(std::span<const double> values);

// Shortest decimal representation that round-trips to the same binary64.
std::string shortest_double(double value);

// Fixed-point formatting with the given number of decimals.
std::string fixed_double(double value, int precision);

}  // namespace tireval
