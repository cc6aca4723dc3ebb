#pragma once

#include <string>
#include <vector>

namespace graded {

// Outcome of one empirical check.
struct VerificationReport {
  std::string check_name;
  std::string family;               // family descriptor
  std::vector<std::string> labels;  // one per sample
  std::vector<double> ratios;       // LHS/RHS per sample
  double empirical_constant = 0;    // max ratio
  double stability = 1;             // max ratio at half resolution / max ratio
  bool pass = false;
  std::string criterion;            // declared pass rule
  std::string notes;

  void add(const std::string& label, double ratio) {
    labels.push_back(label);
    ratios.push_back(ratio);
  }
  double max_ratio() const;
  double min_ratio() const;
};

}  // namespace graded
