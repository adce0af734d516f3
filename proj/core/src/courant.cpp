#include "stromcheck/courant.hpp"

#include <algorithm>

#include "stromcheck/errors.hpp"

namespace stromcheck {

namespace {

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return a * b - b * a; }

Complex apply(const Form& xi, const Eigen::VectorXcd& x) {
  Complex out{};
  for (const auto& [b, c] : xi.terms()) out += c * x[b.indices()[0]];
  return out;
}

void check_shape(const CourantData& d, const CourantSection& e) {
  const int n = d.alg().dim();
  const int r = d.a().rank();
  if (e.x.size() != n || e.s.rows() != r || e.s.cols() != r || e.xi.dim() != n)
    throw DimensionMismatch("courant section shape does not match the algebroid");
  if (!e.xi.is_zero() && e.xi.degree() != 1) throw DimensionMismatch("courant section: xi must be a 1-form");
}

// Flattened coordinates: x (n), block entries of s, xi (n).
struct Layout {
  int n;
  std::vector<std::pair<int, int>> entries;
  int size() const { return 2 * n + static_cast<int>(entries.size()); }
};

Layout layout(const CourantData& d) {
  Layout l{d.alg().dim(), {}};
  for (const auto& [offset, size, weight] : d.c().blocks())
    for (int a = offset; a < offset + size; ++a)
      for (int b = offset; b < offset + size; ++b) l.entries.emplace_back(a, b);
  return l;
}

Eigen::VectorXcd flatten(const Layout& l, const CourantSection& e) {
  Eigen::VectorXcd v(l.size());
  v.head(l.n) = e.x;
  for (std::size_t k = 0; k < l.entries.size(); ++k) v[l.n + static_cast<int>(k)] = e.s(l.entries[k].first, l.entries[k].second);
  for (int i = 0; i < l.n; ++i) v[l.size() - l.n + i] = e.xi.coefficient(Blade(1U << i));
  return v;
}

}  // namespace

CourantData::CourantData(LieAlgebraModel alg, Form h, Connection a, Pairing c)
    : alg_(std::move(alg)), h_(std::move(h)), a_(std::move(a)), c_(std::move(c)), f_(alg_.dim(), a_.rank()) {
  const int n = alg_.dim();
  if (h_.dim() != n || a_.base_dim() != n) throw DimensionMismatch("courant data: dimensions differ");
  if (c_.rank() != a_.rank()) throw DimensionMismatch("courant data: pairing rank differs from connection rank");
  if (!h_.is_zero() && h_.degree() != 3) throw DimensionMismatch("courant data: H must be a 3-form");
  if (!h_.is_real()) throw InvariantViolation("H real", "the 3-form H must be real");
  for (const auto& m : a_.coefficients())
    if (c_.off_block(m) > kPruneThreshold)
      throw InvariantViolation("connection in k", "connection leaves the pairing's block subalgebra");
  f_ = stromcheck::curvature(alg_, a_);
  f_values_.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f_values_.push_back(f_.evaluate(i, j));
  bianchi_ = (ce_differential(alg_, h_) - c_square(c_, f_)).sup_norm();
}

CourantSection CourantData::zero_section() const {
  const int n = alg_.dim();
  const int r = a_.rank();
  return {Eigen::VectorXcd::Zero(n), Eigen::MatrixXcd::Zero(r, r), Form(n)};
}

Complex pairing(const CourantData& d, const CourantSection& e1, const CourantSection& e2) {
  check_shape(d, e1);
  check_shape(d, e2);
  return 0.5 * (apply(e2.xi, e1.x) + apply(e1.xi, e2.x)) + d.c()(e1.s, e2.s);
}

CourantSection dorfman(const CourantData& d, const CourantSection& e1, const CourantSection& e2) {
  check_shape(d, e1);
  check_shape(d, e2);
  const auto& alg = d.alg();
  const int n = alg.dim();
  const int r = d.a().rank();

  Eigen::MatrixXcd f12 = Eigen::MatrixXcd::Zero(r, r);
  for (int i = 0; i < n; ++i) {
    if (e1.x[i] == Complex{}) continue;
    for (int j = 0; j < n; ++j)
      if (e2.x[j] != Complex{}) f12 += e1.x[i] * e2.x[j] * d.f(i, j);
  }

  CourantSection out{alg.bracket(e1.x, e2.x), Eigen::MatrixXcd(), Form(n)};
  out.s = -commutator(e1.s, e2.s) + commutator(d.a().along(e1.x), e2.s) - commutator(d.a().along(e2.x), e1.s) - f12;

  out.xi += interior(std::span<const Complex>(e1.x.data(), n), ce_differential(alg, e2.xi));
  out.xi -= interior(std::span<const Complex>(e2.x.data(), n), ce_differential(alg, e1.xi));
  out.xi += interior(std::span<const Complex>(e2.x.data(), n),
                     interior(std::span<const Complex>(e1.x.data(), n), d.h()));
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXcd f1k = Eigen::MatrixXcd::Zero(r, r);
    Eigen::MatrixXcd f2k = Eigen::MatrixXcd::Zero(r, r);
    for (int i = 0; i < n; ++i) {
      if (e1.x[i] != Complex{}) f1k += e1.x[i] * d.f(i, k);
      if (e2.x[i] != Complex{}) f2k += e2.x[i] * d.f(i, k);
    }
    const Complex v = 2.0 * d.c()(commutator(d.a().along(k), e1.s), e2.s) + 2.0 * d.c()(f1k, e2.s) -
                      2.0 * d.c()(f2k, e1.s);
    if (std::abs(v) >= kPruneThreshold) out.xi.accumulate(Blade(1U << k), v);
  }
  out.xi.prune();
  return out;
}

double section_norm(const CourantSection& e) {
  double m = e.xi.sup_norm();
  if (e.x.size() > 0) m = std::max(m, e.x.cwiseAbs().maxCoeff());
  if (e.s.size() > 0) m = std::max(m, e.s.cwiseAbs().maxCoeff());
  return m;
}

CourantSection operator+(const CourantSection& a, const CourantSection& b) { return {a.x + b.x, a.s + b.s, a.xi + b.xi}; }
CourantSection operator-(const CourantSection& a, const CourantSection& b) { return {a.x - b.x, a.s - b.s, a.xi - b.xi}; }
CourantSection operator*(Complex k, const CourantSection& a) { return {k * a.x, k * a.s, k * a.xi}; }

double leibniz_residual(const CourantData& d, const CourantSection& e1, const CourantSection& e2,
                        const CourantSection& e3) {
  const CourantSection lhs = dorfman(d, e1, dorfman(d, e2, e3));
  const CourantSection rhs = dorfman(d, dorfman(d, e1, e2), e3) + dorfman(d, e2, dorfman(d, e1, e3));
  return section_norm(lhs - rhs);
}

double pairing_invariance_residual(const CourantData& d, const CourantSection& e1, const CourantSection& e2,
                                   const CourantSection& e3) {
  return std::abs(pairing(d, dorfman(d, e1, e2), e3) + pairing(d, e2, dorfman(d, e1, e3)));
}

std::vector<CourantSection> section_basis(const CourantData& d) {
  const int n = d.alg().dim();
  std::vector<CourantSection> basis;
  for (int i = 0; i < n; ++i) {
    CourantSection e = d.zero_section();
    e.x[i] = 1.0;
    basis.push_back(std::move(e));
  }
  for (const auto& [a, b] : layout(d).entries) {
    CourantSection e = d.zero_section();
    e.s(a, b) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int i = 0; i < n; ++i) {
    CourantSection e = d.zero_section();
    e.xi = Form::basis(n, {i + 1});
    basis.push_back(std::move(e));
  }
  return basis;
}

double leibniz_scan(const CourantData& d) {
  const Layout l = layout(d);
  const std::vector<CourantSection> basis = section_basis(d);
  const int size = l.size();
  // ad[a](:, b) = [basis_a, basis_b] in flattened coordinates.
  std::vector<Eigen::MatrixXcd> ad(static_cast<std::size_t>(size), Eigen::MatrixXcd(size, size));
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      ad[static_cast<std::size_t>(a)].col(b) = flatten(l, dorfman(d, basis[static_cast<std::size_t>(a)],
                                                                   basis[static_cast<std::size_t>(b)]));
  // Leibniz: ad_a ad_b - ad_b ad_a = ad_{[a, b]} on every basis vector. The
  // bracket is skew on invariant sections, so pairs a < b suffice.
  double worst = 0.0;
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b) {
      const auto& ada = ad[static_cast<std::size_t>(a)];
      const auto& adb = ad[static_cast<std::size_t>(b)];
      Eigen::MatrixXcd m = ada * adb - adb * ada;
      const Eigen::VectorXcd ab = ada.col(b);
      for (int k = 0; k < size; ++k)
        if (ab[k] != Complex{}) m -= ab[k] * ad[static_cast<std::size_t>(k)];
      worst = std::max(worst, m.cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace stromcheck
