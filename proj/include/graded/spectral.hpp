#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "graded/field.hpp"

namespace graded {

// Zero-padded discrete Fourier representation of a field on R^n.  The padded
// box is periodic; multipliers act on |xi|^2.
class PaddedSpectrum {
 public:
  PaddedSpectrum(const SampledField& f, int pad_factor);
  ~PaddedSpectrum();
  PaddedSpectrum(const PaddedSpectrum&) = delete;
  PaddedSpectrum& operator=(const PaddedSpectrum&) = delete;

  // Applies m(|xi|^2) and returns the padded real-space array.
  const std::vector<double>& apply(const std::function<double(double)>& m);
  // Restricts a padded array to the original window.
  std::vector<double> window(const std::vector<double>& padded) const;
  // Padded grid (origin shared with the original grid).
  const Grid& padded_grid() const { return pgrid_; }
  const std::vector<double>& xi2() const { return xi2_; }
  std::size_t padded_size() const { return real_.size(); }

 private:
  Grid grid_, pgrid_;
  std::vector<std::size_t> dims_;
  std::vector<double> xi2_;
  std::vector<std::complex<double>> fhat_, work_;
  std::vector<double> real_;
  void* plan_c2r_ = nullptr;
};

// Plain linear convolution of two real arrays (full length na+nb-1).
std::vector<double> fft_convolve(const std::vector<double>& a, const std::vector<double>& b);
// Row-major n-d linear convolution; result extents are da[i]+db[i]-1.
std::vector<double> fft_convolve_nd(const std::vector<double>& a, const std::vector<std::size_t>& da,
                                    const std::vector<double>& b, const std::vector<std::size_t>& db);

}  // namespace graded
