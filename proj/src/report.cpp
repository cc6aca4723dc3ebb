#include "graded/report.hpp"

#include <algorithm>

namespace graded {

double VerificationReport::max_ratio() const {
  return ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
}

double VerificationReport::min_ratio() const {
  return ratios.empty() ? 0.0 : *std::min_element(ratios.begin(), ratios.end());
}

}  // namespace graded
