#include "stromcheck/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "stromcheck/errors.hpp"

namespace stromcheck {

namespace {

void require_same_dim(const Form& a, const Form& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(op) + ": forms of dimension " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()));
  }
}

std::uint32_t full_mask(int dim) { return dim >= 32 ? ~0U : ((1U << dim) - 1U); }

// det of the minor of m on rows `rows` and columns `cols` (same length).
double minor_det(const Eigen::MatrixXd& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = m(rows[r], cols[c]);
  return sub.determinant();
}

}  // namespace

Blade Blade::from_indices(std::span<const int> indices) {
  std::uint32_t mask = 0;
  for (int i : indices) {
    if (i < 0 || i >= kMaxDimension) throw DimensionMismatch("basis index out of range: " + std::to_string(i));
    if ((mask >> i) & 1U) throw DimensionMismatch("repeated basis index " + std::to_string(i + 1));
    mask |= 1U << i;
  }
  return Blade(mask);
}

int Blade::degree() const { return std::popcount(mask_); }

std::vector<int> Blade::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(degree()));
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

bool operator<(Blade a, Blade b) {
  std::uint32_t x = a.mask_;
  std::uint32_t y = b.mask_;
  while (x != 0 && y != 0) {
    const int i = std::countr_zero(x);
    const int j = std::countr_zero(y);
    if (i != j) return i < j;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

int merge_sign(std::uint32_t a, std::uint32_t b) {
  if ((a & b) != 0) return 0;
  int inversions = 0;
  for (std::uint32_t m = b; m != 0; m &= m - 1) {
    const int j = std::countr_zero(m);
    const std::uint32_t above = j >= 31 ? 0U : (a & ~((2U << j) - 1U));
    inversions += std::popcount(above);
  }
  return (inversions & 1) ? -1 : 1;
}

int permutation_sign(std::span<const int> sequence) {
  std::uint32_t seen = 0;
  int sign = 1;
  for (int i : sequence) {
    sign *= merge_sign(seen, 1U << i);
    if (sign == 0) return 0;
    seen |= 1U << i;
  }
  return sign;
}

Form::Form(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDimension) throw DimensionMismatch("unsupported dimension " + std::to_string(dim));
}

Form Form::scalar(int dim, Complex value) {
  Form f(dim);
  f.accumulate(Blade(0), value);
  f.prune();
  return f;
}

Form Form::basis(int dim, std::initializer_list<int> one_based) {
  std::vector<int> zero_based;
  for (int i : one_based) {
    if (i < 1 || i > dim) throw DimensionMismatch("basis index " + std::to_string(i) + " outside [1, dim]");
    zero_based.push_back(i - 1);
  }
  Form f(dim);
  const int sign = permutation_sign(zero_based);
  if (sign != 0) f.accumulate(Blade::from_indices(zero_based), static_cast<double>(sign));
  return f;
}

Form Form::one_form(int dim, std::span<const Complex> coefficients) {
  if (static_cast<int>(coefficients.size()) != dim) throw DimensionMismatch("one_form: coefficient count");
  Form f(dim);
  for (int i = 0; i < dim; ++i) f.accumulate(Blade(1U << i), coefficients[static_cast<std::size_t>(i)]);
  f.prune();
  return f;
}

Form Form::from_terms(int dim, std::span<const std::pair<Blade, Complex>> terms, double threshold) {
  Form f(dim);
  for (const auto& [b, c] : terms) {
    if ((b.mask() & ~full_mask(dim)) != 0) throw DimensionMismatch("blade outside basis");
    f.accumulate(b, c);
  }
  f.prune(threshold);
  return f;
}

Complex Form::coefficient(Blade b) const {
  const auto it = terms_.find(b);
  return it == terms_.end() ? Complex{} : it->second;
}

Complex Form::evaluate(std::span<const int> vectors) const {
  const int sign = permutation_sign(vectors);
  if (sign == 0) return {};
  return static_cast<double>(sign) * coefficient(Blade::from_indices(vectors));
}

Form Form::homogeneous(int k) const {
  Form out(dim_);
  for (const auto& [b, c] : terms_)
    if (b.degree() == k) out.terms_.emplace_hint(out.terms_.end(), b, c);
  return out;
}

std::optional<int> Form::degree() const {
  if (terms_.empty()) return std::nullopt;
  const int k = terms_.begin()->first.degree();
  for (const auto& [b, c] : terms_)
    if (b.degree() != k) return std::nullopt;
  return k;
}

double Form::sup_norm() const {
  double m = 0.0;
  for (const auto& [b, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool Form::is_real(double tol) const {
  return std::ranges::all_of(terms_, [tol](const auto& t) { return std::abs(t.second.imag()) <= tol; });
}

Form Form::conjugate() const {
  Form out(*this);
  for (auto& [b, c] : out.terms_) c = std::conj(c);
  return out;
}

Form Form::real_part() const {
  Form out(dim_);
  for (const auto& [b, c] : terms_) out.accumulate(b, c.real());
  out.prune();
  return out;
}

Form Form::pruned(double threshold) const {
  Form out(*this);
  out.prune(threshold);
  return out;
}

Form& Form::operator+=(const Form& other) {
  require_same_dim(*this, other, "add");
  for (const auto& [b, c] : other.terms_) accumulate(b, c);
  prune();
  return *this;
}

Form& Form::operator-=(const Form& other) {
  require_same_dim(*this, other, "subtract");
  for (const auto& [b, c] : other.terms_) accumulate(b, -c);
  prune();
  return *this;
}

Form& Form::operator*=(Complex s) {
  for (auto& [b, c] : terms_) c *= s;
  prune();
  return *this;
}

void Form::accumulate(Blade b, Complex value) { terms_[b] += value; }

void Form::prune(double threshold) {
  std::erase_if(terms_, [threshold](const auto& t) { return std::abs(t.second) < threshold; });
}

Form complex_coframe(int dim, int j, bool conjugate) {
  if (j < 0 || 2 * j + 1 >= dim) throw DimensionMismatch("complex coframe index out of range");
  Form f(dim);
  f.accumulate(Blade(1U << (2 * j)), 1.0);
  f.accumulate(Blade(1U << (2 * j + 1)), Complex{0.0, conjugate ? -1.0 : 1.0});
  return f;
}

Form wedge(const Form& a, const Form& b) {
  require_same_dim(a, b, "wedge");
  Form out(a.dim());
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      const int s = merge_sign(ba.mask(), bb.mask());
      if (s != 0) out.accumulate(Blade(ba.mask() | bb.mask()), static_cast<double>(s) * ca * cb);
    }
  }
  out.prune();
  return out;
}

Form wedge_power(const Form& a, int k) {
  Form out = Form::scalar(a.dim(), 1.0);
  for (int i = 0; i < k; ++i) out = wedge(out, a);
  return out;
}

Form interior_basis(int i, const Form& a) {
  Form out(a.dim());
  const std::uint32_t bit = 1U << i;
  for (const auto& [b, c] : a.terms()) {
    if (!(b.mask() & bit)) continue;
    const std::uint32_t rest = b.mask() & ~bit;
    out.accumulate(Blade(rest), static_cast<double>(merge_sign(bit, rest)) * c);
  }
  out.prune();
  return out;
}

Form interior(std::span<const Complex> v, const Form& a) {
  if (static_cast<int>(v.size()) != a.dim()) throw DimensionMismatch("interior: vector length");
  Form out(a.dim());
  for (const auto& [b, c] : a.terms()) {
    for (int i : b.indices()) {
      const Complex vi = v[static_cast<std::size_t>(i)];
      if (vi == Complex{}) continue;
      const std::uint32_t bit = 1U << i;
      const std::uint32_t rest = b.mask() & ~bit;
      out.accumulate(Blade(rest), static_cast<double>(merge_sign(bit, rest)) * vi * c);
    }
  }
  out.prune();
  return out;
}

Form pullback(const Eigen::MatrixXcd& m, const Form& a) {
  const int dim = a.dim();
  if (m.rows() != dim || m.cols() != dim) throw DimensionMismatch("pullback: matrix shape");
  std::vector<Form> images;
  images.reserve(static_cast<std::size_t>(dim));
  for (int r = 0; r < dim; ++r) {
    Form img(dim);
    for (int i = 0; i < dim; ++i) img.accumulate(Blade(1U << i), m(r, i));
    img.prune(0.0);
    images.push_back(std::move(img));
  }
  Form out(dim);
  for (const auto& [b, c] : a.terms()) {
    Form term = Form::scalar(dim, c);
    for (int i : b.indices()) term = wedge(term, images[static_cast<std::size_t>(i)]);
    for (const auto& [tb, tc] : term.terms()) out.accumulate(tb, tc);
  }
  out.prune();
  return out;
}

Eigen::MatrixXcd two_form_matrix(const Form& omega) {
  const int dim = omega.dim();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [b, c] : omega.terms()) {
    if (b.degree() != 2) continue;
    const auto idx = b.indices();
    w(idx[0], idx[1]) = c;
    w(idx[1], idx[0]) = -c;
  }
  return w;
}

Form two_form_from_matrix(const Eigen::MatrixXcd& w) {
  const int dim = static_cast<int>(w.rows());
  Form out(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) out.accumulate(Blade((1U << i) | (1U << j)), 0.5 * (w(i, j) - w(j, i)));
  out.prune();
  return out;
}

MetricTensor MetricTensor::from_matrix(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols() || g.rows() == 0 || g.rows() > kMaxDimension)
    throw DimensionMismatch("metric must be a square matrix of supported size");
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (asym > kExactnessTolerance * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw InvariantViolation("metric symmetry", "|g - g^T| = " + std::to_string(asym));
  Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const double lowest = eig.eigenvalues().minCoeff();
  if (!(lowest > 0.0)) throw InvariantViolation("metric positivity", "smallest eigenvalue " + std::to_string(lowest));
  Eigen::MatrixXd inv = sym.inverse();
  const double sqrt_det = std::sqrt(sym.determinant());
  return MetricTensor(std::move(sym), std::move(inv), sqrt_det);
}

MetricTensor MetricTensor::identity(int dim) { return from_matrix(Eigen::MatrixXd::Identity(dim, dim)); }

MetricTensor MetricTensor::scaled(double c) const { return from_matrix(c * g_); }

Complex metric_pairing(const MetricTensor& g, const Form& a, const Form& b) {
  if (g.dim() != a.dim()) throw DimensionMismatch("metric_pairing: metric dimension");
  require_same_dim(a, b, "metric_pairing");
  Complex total{};
  for (const auto& [ba, ca] : a.terms()) {
    const auto ia = ba.indices();
    for (const auto& [bb, cb] : b.terms()) {
      if (ba.degree() != bb.degree()) continue;
      total += ca * cb * minor_det(g.inverse(), ia, bb.indices());
    }
  }
  return total;
}

Complex hermitian_product(const MetricTensor& g, const Form& a, const Form& b) {
  return metric_pairing(g, a, b.conjugate());
}

Form volume_form(const MetricTensor& g) {
  Form vol(g.dim());
  vol.accumulate(Blade(full_mask(g.dim())), g.sqrt_det());
  return vol;
}

Form hodge_star(const MetricTensor& g, const Form& a) {
  const int dim = a.dim();
  if (g.dim() != dim) throw DimensionMismatch("hodge_star: metric dimension");
  const std::uint32_t all = full_mask(dim);
  Form out(dim);
  for (const auto& [bi, ci] : a.terms()) {
    const auto rows = bi.indices();
    const int k = bi.degree();
    // Iterate over all blades J of degree k.
    for (std::uint32_t j = 0; j <= all; ++j) {
      if (std::popcount(j) != k) continue;
      const Blade bj(j);
      const double minor = minor_det(g.inverse(), rows, bj.indices());
      if (minor == 0.0) continue;
      const std::uint32_t complement = all & ~j;
      out.accumulate(Blade(complement), static_cast<double>(merge_sign(j, complement)) * g.sqrt_det() * minor * ci);
    }
  }
  out.prune();
  return out;
}

Form lambda_contract(const Form& omega, const Form& a) {
  require_same_dim(omega, a, "lambda_contract");
  const int dim = a.dim();
  const Eigen::MatrixXcd w = two_form_matrix(omega);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(w);
  if (lu.rank() < dim) throw InvariantViolation("omega nondegeneracy", "contraction form is degenerate");
  const Eigen::MatrixXcd dual = -lu.inverse();
  Form out(dim);
  for (int i = 0; i < dim; ++i) {
    const Form inner = interior_basis(i, a);
    if (inner.is_zero()) continue;
    for (int j = i + 1; j < dim; ++j) {
      const Complex p = dual(i, j);
      if (std::abs(p) < kPruneThreshold) continue;
      const Form contracted = interior_basis(j, inner);
      for (const auto& [b, c] : contracted.terms()) out.accumulate(b, p * c);
    }
  }
  out.prune();
  return out;
}

}  // namespace stromcheck
