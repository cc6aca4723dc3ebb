#include "graded/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace graded {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t good_size(std::size_t n) {
  std::size_t best = 1;
  while (best < n) best *= 2;
  for (std::size_t a = 1; a <= best; a *= 2)
    for (std::size_t b = a; b <= best; b *= 3)
      for (std::size_t c = b; c <= best; c *= 5)
        if (c >= n && c < best) best = c;
  return best;
}

// Real n-d transform helpers on row-major arrays.
void forward_nd(const std::vector<int>& dims, std::vector<double>& in,
                std::vector<std::complex<double>>& out) {
  fftw_plan p;
  {
    std::lock_guard<std::mutex> lk(planner_mutex());
    p = fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(), in.data(),
                          reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  fftw_execute(p);
  std::lock_guard<std::mutex> lk(planner_mutex());
  fftw_destroy_plan(p);
}

void backward_nd(const std::vector<int>& dims, std::vector<std::complex<double>>& in,
                 std::vector<double>& out) {
  fftw_plan p;
  {
    std::lock_guard<std::mutex> lk(planner_mutex());
    p = fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(),
                          reinterpret_cast<fftw_complex*>(in.data()), out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(p);
  std::lock_guard<std::mutex> lk(planner_mutex());
  fftw_destroy_plan(p);
}

std::size_t complex_len(const std::vector<int>& dims) {
  std::size_t m = 1;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) m *= static_cast<std::size_t>(dims[i]);
  return m * (static_cast<std::size_t>(dims.back()) / 2 + 1);
}

}  // namespace

PaddedSpectrum::PaddedSpectrum(const SampledField& f, int pad_factor) : grid_(f.grid) {
  if (!f.group || !f.group->abelian) throw DomainError("spectral route requires an abelian group");
  if (pad_factor < 1) throw DomainError("pad_factor must be >= 1");
  const std::size_t n = grid_.dim();
  pgrid_ = grid_;
  std::vector<int> idims(n);
  dims_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    dims_[a] = good_size(grid_.axes[a].count * static_cast<std::size_t>(pad_factor));
    pgrid_.axes[a].count = dims_[a];
    idims[a] = static_cast<int>(dims_[a]);
  }
  std::size_t total = pgrid_.size();
  real_.assign(total, 0.0);
  // scatter original values into the low corner of the padded box
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    auto mi = grid_.multi_index(i);
    std::size_t flat = 0;
    for (std::size_t a = 0; a < n; ++a) flat = flat * dims_[a] + mi[a];
    real_[flat] = f.values[i];
  }
  std::size_t clen = complex_len(idims);
  fhat_.assign(clen, {0, 0});
  forward_nd(idims, real_, fhat_);
  const double norm = 1.0 / static_cast<double>(total);
  for (auto& c : fhat_) c *= norm;
  xi2_.assign(clen, 0.0);
  for (std::size_t k = 0; k < clen; ++k) {
    std::size_t rem = k;
    double s = 0;
    for (std::size_t a = n; a-- > 0;) {
      std::size_t len = (a + 1 == n) ? dims_[a] / 2 + 1 : dims_[a];
      std::size_t q = rem % len;
      rem /= len;
      long long m = (a + 1 == n) ? static_cast<long long>(q)
                                 : (q <= dims_[a] / 2 ? static_cast<long long>(q)
                                                      : static_cast<long long>(q) - static_cast<long long>(dims_[a]));
      double L = grid_.axes[a].spacing * static_cast<double>(dims_[a]);
      double xi = 2 * std::numbers::pi * static_cast<double>(m) / L;
      s += xi * xi;
    }
    xi2_[k] = s;
  }
  work_.assign(clen, {0, 0});
  std::lock_guard<std::mutex> lk(planner_mutex());
  plan_c2r_ = fftw_plan_dft_c2r(static_cast<int>(n), idims.data(),
                                reinterpret_cast<fftw_complex*>(work_.data()), real_.data(), FFTW_ESTIMATE);
}

PaddedSpectrum::~PaddedSpectrum() {
  std::lock_guard<std::mutex> lk(planner_mutex());
  if (plan_c2r_) fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
}

const std::vector<double>& PaddedSpectrum::apply(const std::function<double(double)>& m) {
  for (std::size_t k = 0; k < fhat_.size(); ++k) work_[k] = fhat_[k] * m(xi2_[k]);
  fftw_execute(static_cast<fftw_plan>(plan_c2r_));
  return real_;
}

std::vector<double> PaddedSpectrum::window(const std::vector<double>& padded) const {
  std::vector<double> out(grid_.size());
  const std::size_t n = grid_.dim();
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto mi = grid_.multi_index(i);
    std::size_t flat = 0;
    for (std::size_t a = 0; a < n; ++a) flat = flat * dims_[a] + mi[a];
    out[i] = padded[flat];
  }
  return out;
}

std::vector<double> fft_convolve(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t N = good_size(full);
  std::vector<int> dims{static_cast<int>(N)};
  std::vector<double> pa(N, 0.0), pb(N, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  std::vector<std::complex<double>> fa(N / 2 + 1), fb(N / 2 + 1);
  forward_nd(dims, pa, fa);
  forward_nd(dims, pb, fb);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k] / static_cast<double>(N);
  backward_nd(dims, fa, pa);
  pa.resize(full);
  return pa;
}

// n-d linear convolution; result dims are da+db-1.
std::vector<double> fft_convolve_nd(const std::vector<double>& a, const std::vector<std::size_t>& da,
                                    const std::vector<double>& b, const std::vector<std::size_t>& db) {
  const std::size_t n = da.size();
  std::vector<std::size_t> full(n), pd(n);
  std::vector<int> idims(n);
  std::size_t total = 1, ftotal = 1;
  for (std::size_t i = 0; i < n; ++i) {
    full[i] = da[i] + db[i] - 1;
    pd[i] = good_size(full[i]);
    idims[i] = static_cast<int>(pd[i]);
    total *= pd[i];
    ftotal *= full[i];
  }
  auto scatter = [&](const std::vector<double>& src, const std::vector<std::size_t>& d) {
    std::vector<double> out(total, 0.0);
    for (std::size_t i = 0; i < src.size(); ++i) {
      std::size_t rem = i, flat = 0, mul = 1;
      for (std::size_t ax = n; ax-- > 0;) {
        std::size_t q = rem % d[ax];
        rem /= d[ax];
        flat += q * mul;
        mul *= pd[ax];
      }
      out[flat] = src[i];
    }
    return out;
  };
  std::vector<double> pa = scatter(a, da), pb = scatter(b, db);
  std::size_t clen = complex_len(idims);
  std::vector<std::complex<double>> fa(clen), fb(clen);
  forward_nd(idims, pa, fa);
  forward_nd(idims, pb, fb);
  for (std::size_t k = 0; k < clen; ++k) fa[k] *= fb[k] / static_cast<double>(total);
  backward_nd(idims, fa, pa);
  std::vector<double> out(ftotal);
  for (std::size_t i = 0; i < ftotal; ++i) {
    std::size_t rem = i, flat = 0, mul = 1;
    for (std::size_t ax = n; ax-- > 0;) {
      std::size_t q = rem % full[ax];
      rem /= full[ax];
      flat += q * mul;
      mul *= pd[ax];
    }
    out[i] = pa[flat];
  }
  return out;
}

}  // namespace graded
