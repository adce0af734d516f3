#include "stromcheck/hesolver.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <sstream>

#include "stromcheck/errors.hpp"

namespace stromcheck {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

using Spectrum = std::vector<std::complex<double>>;

Spectrum forward(const GridField& f) {
  const int n = f.n();
  std::vector<double> in = f.values();
  Spectrum out(static_cast<std::size_t>(n * (n / 2 + 1)));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_2d(n, n, in.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

GridField backward(int n, Spectrum spectrum) {
  std::vector<double> out(static_cast<std::size_t>(n * n));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_c2r_2d(n, n, reinterpret_cast<fftw_complex*>(spectrum.data()), out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (double& v : out) v *= scale;
  return GridField(n, std::move(out));
}

// Eigenvalue of Delta on the mode stored at (row j, column i) of the r2c layout.
double symbol(int n, int i, int j) {
  const int ky = j <= n / 2 ? j : j - n;
  const int kx = i;
  const double two_pi = 2.0 * std::numbers::pi;
  return two_pi * two_pi * static_cast<double>(kx * kx + ky * ky);
}

}  // namespace

GridField::GridField(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (n < 2) throw DimensionMismatch("grid resolution must be at least 2");
  if (values_.size() != static_cast<std::size_t>(n) * n) throw DimensionMismatch("grid field needs N * N samples");
  for (double v : values_)
    if (!std::isfinite(v)) throw InvariantViolation("finite samples", "grid field contains a non-finite value");
}

GridField GridField::zeros(int n) { return GridField(n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)); }

GridField GridField::sample(int n, const std::function<double(double, double)>& f) {
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(j * n + i)] = f(static_cast<double>(i) / n, static_cast<double>(j) / n);
  return GridField(n, std::move(v));
}

double GridField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridField GridField::operator-(const GridField& other) const {
  if (other.n_ != n_) throw DimensionMismatch("grid fields of different resolution");
  std::vector<double> v(values_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= other.values_[k];
  return GridField(n_, std::move(v));
}

GridField GridField::operator+(const GridField& other) const {
  if (other.n_ != n_) throw DimensionMismatch("grid fields of different resolution");
  std::vector<double> v(values_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += other.values_[k];
  return GridField(n_, std::move(v));
}

GridField GridField::operator*(double k) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= k;
  return GridField(n_, std::move(v));
}

GridField band_limited(int n, const std::vector<FourierMode>& modes, double constant) {
  for (const auto& m : modes)
    if (2 * std::abs(m.kx) >= n || 2 * std::abs(m.ky) >= n)
      throw DimensionMismatch("Fourier mode not resolved by the grid");
  return GridField::sample(n, [&](double x, double y) {
    double v = constant;
    for (const auto& m : modes) {
      const double phase = 2.0 * std::numbers::pi * (m.kx * x + m.ky * y);
      v += m.cos_amplitude * std::cos(phase) + m.sin_amplitude * std::sin(phase);
    }
    return v;
  });
}

double degree_check(const GridField& source) {
  // Compensated summation keeps the mean exact to rounding.
  double sum = 0.0;
  double carry = 0.0;
  for (double v : source.values()) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(source.values().size());
}

GridField laplacian(const GridField& f) {
  const int n = f.n();
  Spectrum s = forward(f);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= n / 2; ++i) s[static_cast<std::size_t>(j * (n / 2 + 1) + i)] *= symbol(n, i, j);
  return backward(n, std::move(s));
}

HeSolution solve_he(const GridField& source, double tol) {
  const double mean = degree_check(source);
  if (!(std::abs(mean) < tol)) {
    std::ostringstream msg;
    msg << "integral obstruction violated: the source must integrate to zero against the volume form "
           "(int (lambda - i Lambda F) omega^n / n! = 0), but its mean is "
        << mean;
    throw Obstruction(msg.str());
  }
  const int n = source.n();
  Spectrum s = forward(source);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= n / 2; ++i) {
      auto& c = s[static_cast<std::size_t>(j * (n / 2 + 1) + i)];
      const double lam = symbol(n, i, j);
      c = lam == 0.0 ? std::complex<double>{} : 2.0 * c / lam;
    }
  GridField f = backward(n, std::move(s));
  const double residual = (laplacian(f) - source * 2.0).sup_norm();
  return {std::move(f), residual};
}

}  // namespace stromcheck
