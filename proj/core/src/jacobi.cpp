#include "qcf/jacobi.hpp"

#include "qcf/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>

namespace qcf {

const Rational& Coupling::tau() const {
  if (!tau_) fail(ErrorKind::InvalidInput, "the R^2 functional has no tau");
  return *tau_;
}

std::string Coupling::label() const { return tau_ ? "tau=" + qcf::to_string(*tau_) : "S"; }

std::string SpectralPolynomial::to_string() const {
  const char* x = kind == EigenKind::TensorTT ? "mu" : "lambda";
  return "(" + qcf::to_string(c2) + ")*" + x + "^2 + (" + qcf::to_string(c1) + ")*" + x + " + (" +
         qcf::to_string(c0) + ")";
}

namespace {

void check_spectral_dim(int n) { check_dim(n, 3); }

}  // namespace

SpectralPolynomial tt_polynomial(int n, const Rational& r, const Coupling& c) {
  check_spectral_dim(n);
  SpectralPolynomial p{EigenKind::TensorTT, n, r, 0, 0, 0};
  if (c.is_scalar_squared()) {
    // R (2R/n - mu)
    p.c1 = -r;
    p.c0 = Rational(2, n) * r * r;
    return p;
  }
  // (1/2)(2R/n - mu)((4/n + 2tau)R - mu)
  const Rational& tau = c.tau();
  p.c2 = Rational(1, 2);
  p.c1 = -(Rational(3, n) + tau) * r;
  p.c0 = (Rational(4, n * n) + 2 * tau / n) * r * r;
  return p;
}

SpectralPolynomial tt_polynomial_unnormalized(int n, const Rational& r, const Coupling& c) {
  check_spectral_dim(n);
  SpectralPolynomial p{EigenKind::TensorTT, n, r, 0, 0, 0};
  // S part: -R mu + R^2/2
  if (c.is_scalar_squared()) {
    p.c1 = -r;
    p.c0 = r * r / 2;
    return p;
  }
  const Rational& tau = c.tau();
  p.c2 = Rational(1, 2);
  p.c1 = -Rational(3, n) * r - tau * r;
  p.c0 = Rational(n + 4, 2 * n * n) * r * r + tau * r * r / 2;
  return p;
}

Rational tt_jacobi(int n, const Rational& r, const Coupling& c, const Rational& mu) { return tt_polynomial(n, r, c)(mu); }

SpectralPolynomial conformal_polynomial(int n, const Rational& r, const Coupling& c) {
  check_spectral_dim(n);
  SpectralPolynomial p{EigenKind::ConformalScalar, n, r, 0, 0, 0};
  if (c.is_scalar_squared()) {
    p.c2 = Rational(2 * (n - 1) * (n - 1));
    p.c1 = Rational((n - 6) * (n - 1)) * r;
    p.c0 = -Rational(n - 4) * r * r;
    return p;
  }
  // (1/2n)((n-1) lambda - R)(n(n - 4tau + 4n tau) lambda + 2(n-4)(1 + n tau) R)
  const Rational& tau = c.tau();
  const Rational a1 = n - 1;
  const Rational a0 = -r;
  const Rational b1 = Rational(n) * (n - 4 * tau + 4 * n * tau);
  const Rational b0 = Rational(2 * (n - 4)) * (1 + n * tau) * r;
  const Rational k = Rational(1, 2 * n);
  p.c2 = k * a1 * b1;
  p.c1 = k * (a1 * b0 + a0 * b1);
  p.c0 = k * a0 * b0;
  return p;
}

Rational conformal_jacobi(int n, const Rational& r, const Coupling& c, const Rational& lambda) {
  return conformal_polynomial(n, r, c)(lambda);
}

Rational degenerate_tau(int n) { return Rational(-n, 4 * (n - 1)); }

template <class T>
T SymbolOperator<T>::coeff_a(int n, const T& tau) {
  return T(2) * tau + T(n * n + 4 * n - 4) / T(2 * n * n);
}

template <class T>
T SymbolOperator<T>::coeff_b(int n, const T& tau) {
  return T(2) * (tau + T(n - 1) / T(n));
}

template <class T>
T SymbolOperator<T>::coeff_c(int n, const T& tau) {
  return T(2) * tau + T(n * n * n + 4 * n - 4) / T(2 * n * n * n);
}

template <class T>
SymbolOperator<T>::SymbolOperator(int n, T tau, std::vector<T> xi) : n_(n), tau_(std::move(tau)), xi_(std::move(xi)) {
  check_dim(n, 2);
  if (static_cast<int>(xi_.size()) != n) fail(ErrorKind::InvalidInput, "covector has the wrong length");
  xi2_ = T(0);
  for (const auto& x : xi_) xi2_ += x * x;
  if (xi2_ == 0) fail(ErrorKind::InvalidInput, "covector must be nonzero");
}

template <class T>
Sym2<T> SymbolOperator<T>::apply(const Sym2<T>& h) const {
  const int n = n_;
  if (h.dim() != n) fail(ErrorKind::InvalidInput, "dimension mismatch");
  const T a = coeff_a(n, tau_);
  const T b = coeff_b(n, tau_);
  const T c = coeff_c(n, tau_);
  T tr(0);
  T hxx(0);
  for (int i = 0; i < n; ++i) {
    tr += h(i, i);
    for (int j = 0; j < n; ++j) hxx += h(i, j) * xi_[i] * xi_[j];
  }
  const T xi4 = xi2_ * xi2_;
  const T k_xx = b * hxx - a * xi2_ * tr;    // multiplies xi_i xi_j
  const T k_g = c * xi4 * tr - a * xi2_ * hxx;  // multiplies delta_ij
  Sym2<T> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      T v = xi4 * h(i, j) / T(2) + k_xx * xi_[i] * xi_[j];
      if (i == j) v += k_g;
      out.set(i, j, v);
    }
  return out;
}

std::vector<std::pair<int, int>> sym2_basis(int n) {
  std::vector<std::pair<int, int>> b;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) b.emplace_back(i, j);
  return b;
}

template <class T>
std::vector<T> SymbolOperator<T>::matrix() const {
  const auto basis = sym2_basis(n_);
  const int d = static_cast<int>(basis.size());
  std::vector<T> m(static_cast<size_t>(d) * d, T(0));
  for (int col = 0; col < d; ++col) {
    Sym2<T> e(n_);
    e.set(basis[col].first, basis[col].second, T(1));
    Sym2<T> img = apply(e);
    for (int row = 0; row < d; ++row) m[row * d + col] = img(basis[row].first, basis[row].second);
  }
  return m;
}

template <class T>
SymbolOperator<T> gauged_symbol(int n, const T& tau, const std::vector<T>& xi) {
  return SymbolOperator<T>(n, tau, xi);
}

template class SymbolOperator<double>;
template class SymbolOperator<Rational>;
template SymbolOperator<double> gauged_symbol(int, const double&, const std::vector<double>&);
template SymbolOperator<Rational> gauged_symbol(int, const Rational&, const std::vector<Rational>&);

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(std::vector<Rational>& m, int rows, int cols) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (m[i * cols + c] != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) {
      for (int k = 0; k < cols; ++k) std::swap(m[p * cols + k], m[r * cols + k]);
    }
    const Rational piv = m[r * cols + c];
    for (int k = c; k < cols; ++k) m[r * cols + k] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i * cols + c] == 0) continue;
      const Rational f = m[i * cols + c];
      for (int k = c; k < cols; ++k) m[i * cols + k] -= f * m[r * cols + k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis of the domain in Sym2 coordinates (columns), for either all
// symmetric tensors or the trace-free ones.
std::vector<std::vector<Rational>> domain_basis(int n, bool trace_free) {
  const auto basis = sym2_basis(n);
  const int d = static_cast<int>(basis.size());
  std::vector<std::vector<Rational>> out;
  for (int b = 0; b < d; ++b) {
    auto [i, j] = basis[b];
    if (trace_free && i == j) continue;
    std::vector<Rational> v(d, Rational(0));
    v[b] = 1;
    out.push_back(std::move(v));
  }
  if (trace_free) {
    auto pos = [&](int i) {
      for (int b = 0; b < d; ++b) {
        if (basis[b] == std::make_pair(i, i)) return b;
      }
      return -1;
    };
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<Rational> v(d, Rational(0));
      v[pos(i)] = 1;
      v[pos(n - 1)] = -1;
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<Rational> coords_to_components(int n, const std::vector<Rational>& coords) {
  const auto basis = sym2_basis(n);
  std::vector<Rational> h(static_cast<size_t>(n) * n, Rational(0));
  for (size_t b = 0; b < basis.size(); ++b) {
    auto [i, j] = basis[b];
    h[i * n + j] = coords[b];
    h[j * n + i] = coords[b];
  }
  return h;
}

}  // namespace

int exact_rank(std::vector<Rational> m, int rows, int cols) { return static_cast<int>(rref(m, rows, cols).size()); }

std::vector<std::vector<Rational>> exact_kernel(std::vector<Rational> m, int rows, int cols) {
  auto piv = rref(m, rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r * cols + f];
    out.push_back(std::move(v));
  }
  return out;
}

SymbolProbe probe_symbol(int n, const Rational& tau, const std::vector<Rational>& xi, bool trace_free_domain) {
  const SymbolOperator<Rational> op(n, tau, xi);
  const int d = op.domain_dim();
  const auto m = op.matrix();
  const auto dom = domain_basis(n, trace_free_domain);
  const int k = static_cast<int>(dom.size());

  // restrict to the domain: columns M * v
  std::vector<Rational> mr(static_cast<size_t>(d) * k, Rational(0));
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < d; ++r) {
      Rational acc(0);
      for (int b = 0; b < d; ++b) {
        if (dom[c][b] != 0) acc += m[r * d + b] * dom[c][b];
      }
      mr[r * k + c] = acc;
    }

  SymbolProbe out;
  out.domain_dim = k;
  out.rank = exact_rank(mr, d, k);
  if (out.rank < k) {
    for (const auto& kv : exact_kernel(mr, d, k)) {
      std::vector<Rational> coords(d, Rational(0));
      for (int c = 0; c < k; ++c)
        for (int b = 0; b < d; ++b) coords[b] += kv[c] * dom[c][b];
      out.kernel.push_back(coords_to_components(n, coords));
    }
  }

  // singular values with unit xi in orthonormal coordinates
  double norm2 = 0;
  for (const auto& x : xi) norm2 += to_double(x) * to_double(x);
  std::vector<double> xu(n);
  for (int i = 0; i < n; ++i) xu[i] = to_double(xi[i]) / std::sqrt(norm2);
  const SymbolOperator<double> opd(n, to_double(tau), xu);
  const auto md = opd.matrix();
  const auto basis = sym2_basis(n);
  Eigen::MatrixXd on(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const double sr = basis[r].first == basis[r].second ? 1.0 : std::sqrt(2.0);
      const double sc = basis[c].first == basis[c].second ? 1.0 : std::sqrt(2.0);
      on(r, c) = sr * md[r * d + c] / sc;
    }
  Eigen::MatrixXd q(d, k);
  for (int c = 0; c < k; ++c)
    for (int b = 0; b < d; ++b) {
      const double sb = basis[b].first == basis[b].second ? 1.0 : std::sqrt(2.0);
      q(b, c) = to_double(dom[c][b]) * sb;
    }
  // orthonormal basis of the domain
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
  Eigen::MatrixXd qn = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(on * qn);
  out.min_singular_value = svd.singularValues().minCoeff();
  return out;
}

SymbolVerdict symbol_injectivity(int n, const Rational& tau, int trials, std::uint64_t seed, bool trace_free_domain) {
  check_dim(n, 3);
  if (trials < 1) fail(ErrorKind::InvalidInput, "need at least one trial");
  SymbolVerdict v;
  v.n = n;
  v.tau = tau;
  v.trace_free_domain = trace_free_domain;
  v.trials = trials;
  v.degenerate_tau = tau == degenerate_tau(n);
  v.min_singular_value = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-9, 9);
  bool first_rank = true;
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> xi(n);
    bool nonzero = false;
    while (!nonzero) {
      for (auto& x : xi) {
        x = coord(rng);
        nonzero = nonzero || x != 0;
      }
    }
    auto p = probe_symbol(n, tau, xi, trace_free_domain);
    v.domain_dim = p.domain_dim;
    v.min_singular_value = std::min(v.min_singular_value, p.min_singular_value);
    v.min_rank = first_rank ? p.rank : std::min(v.min_rank, p.rank);
    first_rank = false;
    if (p.rank < p.domain_dim) {
      v.injective = false;
      if (v.kernel_basis.empty()) v.kernel_basis = p.kernel;
    }
    if (!trace_free_domain) {
      SymbolOperator<Rational> op(n, tau, xi);
      Sym2<Rational> img = op.apply(Sym2<Rational>::from_metric(MetricFrame<Rational>::identity(n)));
      if (img == Sym2<Rational>(n)) v.metric_in_kernel = true;
    }
  }
  return v;
}

ConformalKillingVerdict conformal_killing_symbol(int n, const std::vector<Rational>& xi) {
  check_dim(n, 2);
  if (static_cast<int>(xi.size()) != n) fail(ErrorKind::InvalidInput, "covector has the wrong length");
  Rational xi2(0);
  for (const auto& x : xi) xi2 += x * x;
  if (xi2 == 0) fail(ErrorKind::InvalidInput, "covector must be nonzero");
  const Rational k = 1 - Rational(2, n);
  std::vector<Rational> m(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = (i == j ? xi2 : Rational(0)) + k * xi[i] * xi[j];

  ConformalKillingVerdict v;
  v.n = n;
  // determinant by elimination
  std::vector<Rational> a = m;
  Rational det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r) {
      if (a[r * n + c] != 0) {
        p = r;
        break;
      }
    }
    if (p < 0) {
      det = 0;
      break;
    }
    if (p != c) {
      for (int kk = 0; kk < n; ++kk) std::swap(a[p * n + kk], a[c * n + kk]);
      det = -det;
    }
    det *= a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const Rational f = a[r * n + c] / a[c * n + c];
      for (int kk = c; kk < n; ++kk) a[r * n + kk] -= f * a[c * n + kk];
    }
  }
  v.determinant = det;
  v.injective = det != 0;
  Eigen::MatrixXd md(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) md(i, j) = to_double(m[i * n + j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(md);
  for (int i = 0; i < n; ++i) v.eigenvalues.push_back(es.eigenvalues()(i));
  return v;
}

}  // namespace qcf
