#pragma once

// Spectral solver on the flat unit 2-torus for the linear reduction of the
// line-bundle Hermite-Einstein equation, Delta f = 2 * source, with
// Delta = d*d = -(d_xx + d_yy). Solvable exactly when the source has zero
// mean; the solution is unique up to an additive constant.

#include <functional>
#include <vector>

namespace stromcheck {

class GridField {
 public:
  // N x N samples at (x, y) = (i / N, j / N); values[j * N + i].
  GridField(int n, std::vector<double> values);
  static GridField zeros(int n);
  static GridField sample(int n, const std::function<double(double, double)>& f);

  int n() const { return n_; }
  const std::vector<double>& values() const { return values_; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(j * n_ + i)]; }
  double sup_norm() const;

  GridField operator-(const GridField& other) const;
  GridField operator+(const GridField& other) const;
  GridField operator*(double k) const;

 private:
  int n_;
  std::vector<double> values_;
};

// A real Fourier mode a cos(2 pi (kx x + ky y)) + b sin(2 pi (kx x + ky y)).
struct FourierMode {
  int kx = 0;
  int ky = 0;
  double cos_amplitude = 0.0;
  double sin_amplitude = 0.0;
};
GridField band_limited(int n, const std::vector<FourierMode>& modes, double constant = 0.0);

struct HeSolution {
  GridField f;
  double residual;  // sup |Delta f - 2 source|
};

// Throws Obstruction when |mean(source)| >= tol.
HeSolution solve_he(const GridField& source, double tol = 1e-10);

// Exact mean of the samples.
double degree_check(const GridField& source);

// Spectral Delta = -(d_xx + d_yy).
GridField laplacian(const GridField& f);

}  // namespace stromcheck
