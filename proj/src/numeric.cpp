#include "tireval/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tireval {

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

double mean(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("mean of an empty set");
  }
  return compensated_sum(values) / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) {
    throw std::invalid_argument("sample variance needs at least two values");
  }
  const double m = mean(values);
  double sum = 0.0;
  for (double v : values) {
    const double d = v - m;
    sum += d * d;
  }
  return sum / static_cast<double>(values.size() - 1);
}

std::string shortest_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string fixed_double(double value, int precision) {
  if (precision < 1) {
    throw std::invalid_argument("precision must be >= 1");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  std::string out = buf;
  // Tiny negatives round to "-0.000"; drop the sign so equal magnitudes
  // always render identically.
  if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') {
    out.erase(0, 1);
  }
  return out;
}

}  // namespace tireval
