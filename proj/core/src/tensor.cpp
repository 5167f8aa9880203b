#include "qcf/tensor.hpp"

#include "qcf/error.hpp"

#include <algorithm>

namespace qcf {

void check_dim(int n, int min_dim) {
  if (n < min_dim || n > kMaxDim) {
    fail(ErrorKind::UnsupportedDimension,
         "dimension " + std::to_string(n) + " outside supported range [" + std::to_string(min_dim) + ", " +
             std::to_string(kMaxDim) + "]");
  }
}

namespace {

template <class T>
T abs_of(const T& x) {
  return ScalarTraits<T>::abs(x);
}

// Raises every index of a 4-tensor, one slot at a time.
template <class T>
std::vector<T> raise_all(const Curv4<T>& t, const MetricFrame<T>& g) {
  const int n = t.dim();
  std::vector<T> cur = t.components();
  std::vector<T> next(cur.size());
  size_t stride[4] = {static_cast<size_t>(n) * n * n, static_cast<size_t>(n) * n, static_cast<size_t>(n), 1};
  for (int slot = 0; slot < 4; ++slot) {
    const size_t s = stride[slot];
    for (size_t idx = 0; idx < cur.size(); ++idx) {
      const int a = static_cast<int>((idx / s) % n);
      const size_t base = idx - a * s;
      T acc(0);
      for (int b = 0; b < n; ++b) {
        if (g.inv(a, b) != 0) acc += g.inv(a, b) * cur[base + b * s];
      }
      next[idx] = acc;
    }
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace

template <class T>
MetricFrame<T>::MetricFrame(int n, std::vector<T> components) : n_(n), g_(std::move(components)) {
  check_dim(n);
  if (g_.size() != static_cast<size_t>(n) * n) {
    fail(ErrorKind::InvalidInput, "metric needs n*n components");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g_[i * n + j] != g_[j * n + i]) fail(ErrorKind::InvalidInput, "metric is not symmetric");
    }
  }
  // LDL^T elimination without pivoting: every pivot positive iff all leading
  // principal minors are positive.
  std::vector<T> a = g_;
  std::vector<T> inv(static_cast<size_t>(n) * n, T(0));
  for (int i = 0; i < n; ++i) inv[i * n + i] = T(1);
  det_ = T(1);
  for (int c = 0; c < n; ++c) {
    const T p = a[c * n + c];
    if (!(p > 0)) fail(ErrorKind::InvalidInput, "metric is not positive definite");
    det_ *= p;
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const T f = a[r * n + c] / p;
      if (f == 0) continue;
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[c * n + k];
        inv[r * n + k] -= f * inv[c * n + k];
      }
    }
  }
  for (int r = 0; r < n; ++r) {
    const T p = a[r * n + r];
    for (int k = 0; k < n; ++k) inv[r * n + k] /= p;
  }
  // Symmetrize away rounding so that raised tensors stay symmetric.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      T m = (inv[i * n + j] + inv[j * n + i]) / 2;
      inv[i * n + j] = m;
      inv[j * n + i] = m;
    }
  }
  inv_ = std::move(inv);
  identity_ = true;
  for (int i = 0; i < n && identity_; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g_[i * n + j] != T(i == j ? 1 : 0)) {
        identity_ = false;
        break;
      }
    }
  }
}

template <class T>
MetricFrame<T> MetricFrame<T>::identity(int n) {
  check_dim(n);
  std::vector<T> c(static_cast<size_t>(n) * n, T(0));
  for (int i = 0; i < n; ++i) c[i * n + i] = T(1);
  return MetricFrame(n, std::move(c));
}

template <class T>
MetricFrame<T> MetricFrame<T>::diagonal(const std::vector<T>& d) {
  const int n = static_cast<int>(d.size());
  check_dim(n);
  std::vector<T> c(static_cast<size_t>(n) * n, T(0));
  for (int i = 0; i < n; ++i) c[i * n + i] = d[i];
  return MetricFrame(n, std::move(c));
}

template <class T>
Sym2<T>::Sym2(int n, std::vector<T> components) : n_(n), c_(std::move(components)) {
  check_dim(n);
  if (c_.size() != static_cast<size_t>(n) * n) fail(ErrorKind::InvalidInput, "symmetric 2-tensor needs n*n components");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (c_[i * n + j] != c_[j * n + i]) fail(ErrorKind::InvalidInput, "2-tensor components are not symmetric");
    }
  }
}

template <class T>
Sym2<T> Sym2<T>::from_metric(const MetricFrame<T>& g) {
  return Sym2(g.dim(), g.components());
}

template <class T>
void Sym2<T>::add(int i, int j, const T& v) {
  c_[i * n_ + j] += v;
  if (i != j) c_[j * n_ + i] += v;
}

template <class T>
Sym2<T>& Sym2<T>::operator+=(const Sym2& o) {
  if (o.n_ != n_) fail(ErrorKind::InvalidInput, "dimension mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

template <class T>
Sym2<T>& Sym2<T>::operator-=(const Sym2& o) {
  if (o.n_ != n_) fail(ErrorKind::InvalidInput, "dimension mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

template <class T>
Sym2<T>& Sym2<T>::operator*=(const T& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

template <class T>
Curv4<T>::Curv4(int n, std::vector<T> components) : n_(n), c_(std::move(components)) {
  check_dim(n);
  if (c_.size() != static_cast<size_t>(n) * n * n * n) fail(ErrorKind::InvalidInput, "4-tensor needs n^4 components");
}

template <class T>
Curv4<T>& Curv4<T>::operator+=(const Curv4& o) {
  if (o.n_ != n_) fail(ErrorKind::InvalidInput, "dimension mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

template <class T>
Curv4<T>& Curv4<T>::operator-=(const Curv4& o) {
  if (o.n_ != n_) fail(ErrorKind::InvalidInput, "dimension mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

template <class T>
Curv4<T>& Curv4<T>::operator*=(const T& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

template <class T>
T Curv4<T>::symmetry_defect() const {
  T worst(0);
  auto upd = [&](const T& v) {
    T a = abs_of(v);
    if (a > worst) worst = a;
  };
  const auto& r = *this;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          upd(r(i, j, k, l) + r(j, i, k, l));
          upd(r(i, j, k, l) + r(i, j, l, k));
          upd(r(i, j, k, l) - r(k, l, i, j));
          upd(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l));
        }
  return worst;
}

template <class T>
Sym2<T> contract_ricci(const Curv4<T>& rm, const MetricFrame<T>& g) {
  const int n = rm.dim();
  if (g.dim() != n) fail(ErrorKind::InvalidInput, "metric and curvature dimensions differ");
  Sym2<T> ric(n);
  for (int j = 0; j < n; ++j) {
    for (int l = j; l < n; ++l) {
      T acc(0);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          if (g.inv(i, k) != 0) acc += g.inv(i, k) * rm(i, j, k, l);
        }
      ric.set(j, l, acc);
    }
  }
  return ric;
}

template <class T>
T trace(const Sym2<T>& h, const MetricFrame<T>& g) {
  T acc(0);
  for (int i = 0; i < h.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j) acc += g.inv(i, j) * h(i, j);
  return acc;
}

template <class T>
T inner(const Sym2<T>& a, const Sym2<T>& b, const MetricFrame<T>& g) {
  const int n = a.dim();
  T acc(0);
  if (g.is_identity()) {
    for (size_t i = 0; i < a.components().size(); ++i) acc += a.components()[i] * b.components()[i];
    return acc;
  }
  // raise b
  std::vector<T> tmp(static_cast<size_t>(n) * n, T(0));
  for (int i = 0; i < n; ++i)
    for (int q = 0; q < n; ++q) {
      T s(0);
      for (int p = 0; p < n; ++p) s += g.inv(i, p) * b(p, q);
      tmp[i * n + q] = s;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T s(0);
      for (int q = 0; q < n; ++q) s += tmp[i * n + q] * g.inv(q, j);
      acc += a(i, j) * s;
    }
  return acc;
}

template <class T>
T inner(const Curv4<T>& a, const Curv4<T>& b, const MetricFrame<T>& g) {
  T acc(0);
  if (g.is_identity()) {
    for (size_t i = 0; i < a.components().size(); ++i) acc += a.components()[i] * b.components()[i];
    return acc;
  }
  const auto up = raise_all(b, g);
  for (size_t i = 0; i < up.size(); ++i) acc += a.components()[i] * up[i];
  return acc;
}

template <class T>
Curv4<T> kulkarni_nomizu(const Sym2<T>& a, const Sym2<T>& b) {
  const int n = a.dim();
  if (b.dim() != n) fail(ErrorKind::InvalidInput, "dimension mismatch");
  Curv4<T> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out.at(i, j, k, l) = a(i, k) * b(j, l) + a(j, l) * b(i, k) - a(i, l) * b(j, k) - a(j, k) * b(i, l);
  return out;
}

template <class T>
CurvatureData<T> decompose(Curv4<T> rm, MetricFrame<T> g) {
  const int n = rm.dim();
  check_dim(n, 3);
  Sym2<T> ric = contract_ricci(rm, g);
  T scal = trace(ric, g);
  Sym2<T> gs = Sym2<T>::from_metric(g);
  Curv4<T> weyl = rm;
  weyl -= (T(1) / T(n - 2)) * kulkarni_nomizu(ric, gs);
  weyl += (scal / T(2 * (n - 1) * (n - 2))) * kulkarni_nomizu(gs, gs);
  return CurvatureData<T>(std::move(g), std::move(rm), std::move(ric), std::move(scal), std::move(weyl));
}

template <class T>
QuadraticInvariants<T> quadratic_invariants(const CurvatureData<T>& cd) {
  QuadraticInvariants<T> q;
  q.rm2 = inner(cd.riemann(), cd.riemann(), cd.metric());
  q.ric2 = inner(cd.ricci(), cd.ricci(), cd.metric());
  q.scal2 = cd.scalar() * cd.scalar();
  q.weyl2 = inner(cd.weyl(), cd.weyl(), cd.metric());
  return q;
}

template <class T>
Curv4<T> constant_curvature(const MetricFrame<T>& g, const T& k) {
  Sym2<T> gs = Sym2<T>::from_metric(g);
  return (k / T(2)) * kulkarni_nomizu(gs, gs);
}

template <class T>
Curv4<T> product_constant_curvature(int m1, const T& k1, int m2, const T& k2) {
  if (m1 < 1 || m2 < 1) fail(ErrorKind::InvalidInput, "factor dimensions must be positive");
  const int n = m1 + m2;
  check_dim(n);
  Curv4<T> out(n);
  auto block = [&](int lo, int hi, const T& k) {
    for (int i = lo; i < hi; ++i)
      for (int j = lo; j < hi; ++j) {
        if (i == j) continue;
        out.at(i, j, i, j) = k;
        out.at(i, j, j, i) = -k;
      }
  };
  block(0, m1, k1);
  block(m1, n, k2);
  return out;
}

template <class T>
Curv4<T> complex_space_form(int m, const T& c) {
  const int n = 2 * m;
  if (m < 1) fail(ErrorKind::InvalidInput, "complex dimension must be positive");
  check_dim(n);
  std::vector<int> jm(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < m; ++a) {
    jm[(2 * a) * n + 2 * a + 1] = 1;
    jm[(2 * a + 1) * n + 2 * a] = -1;
  }
  auto J = [&](int i, int j) { return jm[i * n + j]; };
  auto d = [](int i, int j) { return i == j ? 1 : 0; };
  Curv4<T> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const int v = d(i, k) * d(j, l) - d(i, l) * d(j, k) + J(i, k) * J(j, l) - J(i, l) * J(j, k) +
                        2 * J(i, j) * J(k, l);
          if (v != 0) out.at(i, j, k, l) = c * T(v);
        }
  return out;
}

template <class T>
CurvatureData<double> to_double(const CurvatureData<T>& cd) {
  if constexpr (std::is_same_v<T, double>) {
    return cd;
  } else {
    auto conv = [](const std::vector<T>& v) {
      std::vector<double> out(v.size());
      std::transform(v.begin(), v.end(), out.begin(), [](const T& x) { return ScalarTraits<T>::to_double(x); });
      return out;
    };
    const int n = cd.dim();
    return CurvatureData<double>(MetricFrame<double>(n, conv(cd.metric().components())),
                                 Curv4<double>(n, conv(cd.riemann().components())),
                                 Sym2<double>(n, conv(cd.ricci().components())),
                                 ScalarTraits<T>::to_double(cd.scalar()),
                                 Curv4<double>(n, conv(cd.weyl().components())));
  }
}

#define QCF_INSTANTIATE(T)                                                             \
  template class MetricFrame<T>;                                                       \
  template class Sym2<T>;                                                              \
  template class Curv4<T>;                                                             \
  template Sym2<T> contract_ricci(const Curv4<T>&, const MetricFrame<T>&);             \
  template T trace(const Sym2<T>&, const MetricFrame<T>&);                             \
  template T inner(const Sym2<T>&, const Sym2<T>&, const MetricFrame<T>&);             \
  template T inner(const Curv4<T>&, const Curv4<T>&, const MetricFrame<T>&);           \
  template Curv4<T> kulkarni_nomizu(const Sym2<T>&, const Sym2<T>&);                   \
  template CurvatureData<T> decompose(Curv4<T>, MetricFrame<T>);                       \
  template QuadraticInvariants<T> quadratic_invariants(const CurvatureData<T>&);       \
  template Curv4<T> constant_curvature(const MetricFrame<T>&, const T&);               \
  template Curv4<T> product_constant_curvature(int, const T&, int, const T&);          \
  template Curv4<T> complex_space_form(int, const T&);                                 \
  template CurvatureData<double> to_double(const CurvatureData<T>&);

QCF_INSTANTIATE(double)
QCF_INSTANTIATE(Rational)

#undef QCF_INSTANTIATE

}  // namespace qcf
