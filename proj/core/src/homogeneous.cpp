#include "qcf/homogeneous.hpp"

#include "qcf/error.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace qcf {

namespace {

template <class T>
double magnitude(const T& x) {
  return std::fabs(ScalarTraits<T>::to_double(x));
}

size_t ipow(int n, int r) {
  size_t s = 1;
  for (int i = 0; i < r; ++i) s *= static_cast<size_t>(n);
  return s;
}

}  // namespace

template <class T>
StructureConstants<T>::StructureConstants(int n, std::vector<T> c) : n_(n), c_(std::move(c)) {
  check_dim(n);
  if (c_.size() != ipow(n, 3)) fail(ErrorKind::InvalidInput, "structure constants need n^3 components");
  double scale = 0;
  for (const auto& x : c_) scale = std::max(scale, magnitude(x));
  const double tol = 1e-12 * std::max(1.0, scale * scale);
  const auto& self = *this;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!is_zero<T>(self(k, i, j) + self(k, j, i), tol)) {
          fail(ErrorKind::InvalidInput, "structure constants are not antisymmetric");
        }
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int p = 0; p < n; ++p) {
          T acc(0);
          for (int m = 0; m < n; ++m) {
            acc += self(m, i, j) * self(p, m, k) + self(m, j, k) * self(p, m, i) + self(m, k, i) * self(p, m, j);
          }
          if (!is_zero<T>(acc, tol)) fail(ErrorKind::InvalidInput, "structure constants violate the Jacobi identity");
        }
}

template <class T>
StructureConstants<T> StructureConstants<T>::from_brackets(int n, const std::vector<Bracket>& brackets) {
  check_dim(n);
  std::vector<T> c(ipow(n, 3), T(0));
  for (const auto& b : brackets) {
    if (b.i < 0 || b.i >= n || b.j < 0 || b.j >= n || static_cast<int>(b.value.size()) != n) {
      fail(ErrorKind::InvalidInput, "bracket index out of range");
    }
    for (int k = 0; k < n; ++k) {
      c[(static_cast<size_t>(k) * n + b.i) * n + b.j] = b.value[k];
      c[(static_cast<size_t>(k) * n + b.j) * n + b.i] = -b.value[k];
    }
  }
  return StructureConstants(n, std::move(c));
}

template <class T>
StructureConstants<T> StructureConstants<T>::abelian(int n) {
  check_dim(n);
  return StructureConstants(n, std::vector<T>(ipow(n, 3), T(0)));
}

template <class T>
bool StructureConstants<T>::unimodular() const {
  for (int i = 0; i < n_; ++i) {
    T tr(0);
    for (int k = 0; k < n_; ++k) tr += (*this)(k, i, k);
    if (!is_zero<T>(tr, 1e-12)) return false;
  }
  return true;
}

namespace {

using Mat2 = std::array<std::complex<double>, 4>;

Mat2 commutator(const Mat2& a, const Mat2& b) {
  auto mul = [](const Mat2& x, const Mat2& y) {
    return Mat2{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                x[2] * y[1] + x[3] * y[3]};
  };
  Mat2 p = mul(a, b);
  Mat2 q = mul(b, a);
  return {p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3]};
}

// Coordinates of a traceless skew-hermitian 2x2 matrix in the basis
// diag(i,-i), [[0,i],[i,0]], [[0,-1],[1,0]].
std::array<double, 3> su2_coords(const Mat2& m) { return {m[0].imag(), m[2].imag(), m[2].real()}; }

template <class T>
StructureConstants<T> su2_algebra() {
  using C = std::complex<double>;
  const C I(0, 1);
  const std::array<Mat2, 3> e = {Mat2{I, 0, 0, -I}, Mat2{0, I, I, 0}, Mat2{0, -1, 1, 0}};
  std::vector<T> c(27, T(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto v = su2_coords(commutator(e[i], e[j]));
      for (int k = 0; k < 3; ++k) {
        // entries are small integers; round so the exact instantiation stays exact
        c[(k * 3 + i) * 3 + j] = T(static_cast<long>(std::lround(v[k])));
      }
    }
  return StructureConstants<T>(3, std::move(c));
}

template <class T>
StructureConstants<T> direct_sum_line(const StructureConstants<T>& a) {
  const int n = a.dim() + 1;
  std::vector<T> c(ipow(n, 3), T(0));
  for (int k = 0; k < a.dim(); ++k)
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) c[(static_cast<size_t>(k) * n + i) * n + j] = a(k, i, j);
  return StructureConstants<T>(n, std::move(c));
}

template <class T>
std::vector<T> unit(int n, int k, int sign = 1) {
  std::vector<T> v(n, T(0));
  v[k] = T(sign);
  return v;
}

}  // namespace

std::vector<std::string> named_algebras() {
  return {"su2", "heisenberg", "sol", "su2+R", "heisenberg+R", "sol+R", "abelian<n>", "hyperbolic<n>"};
}

template <class T>
StructureConstants<T> named_algebra(const std::string& name) {
  using SC = StructureConstants<T>;
  auto suffix_dim = [&](const std::string& prefix) {
    try {
      return std::stoi(name.substr(prefix.size()));
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidInput, "bad algebra name '" + name + "'");
    }
  };
  if (name == "su2") return su2_algebra<T>();
  if (name == "heisenberg") return SC::from_brackets(3, {{0, 1, unit<T>(3, 2)}});
  if (name == "sol") return SC::from_brackets(3, {{2, 0, unit<T>(3, 0)}, {2, 1, unit<T>(3, 1, -1)}});
  if (name == "su2+R") return direct_sum_line(su2_algebra<T>());
  if (name == "heisenberg+R") return direct_sum_line(named_algebra<T>("heisenberg"));
  if (name == "sol+R") return direct_sum_line(named_algebra<T>("sol"));
  if (name.rfind("abelian", 0) == 0) return SC::abelian(suffix_dim("abelian"));
  if (name.rfind("hyperbolic", 0) == 0) {
    const int n = suffix_dim("hyperbolic");
    check_dim(n, 2);
    std::vector<typename SC::Bracket> br;
    for (int i = 0; i + 1 < n; ++i) br.push_back({n - 1, i, unit<T>(n, i)});
    return SC::from_brackets(n, br);
  }
  fail(ErrorKind::InvalidInput, "unknown algebra '" + name + "'");
}

template <class T>
InvariantTensor<T>::InvariantTensor(int n, int rank) : n_(n), rank_(rank), data_(ipow(n, rank), T(0)) {
  check_dim(n);
}

template <class T>
InvariantTensor<T>::InvariantTensor(int n, int rank, std::vector<T> data) : n_(n), rank_(rank), data_(std::move(data)) {
  check_dim(n);
  if (data_.size() != ipow(n, rank)) fail(ErrorKind::InvalidInput, "tensor size does not match rank");
}

template <class T>
InvariantTensor<T> InvariantTensor<T>::scalar(int n, const T& value) {
  return InvariantTensor(n, 0, {value});
}

template <class T>
InvariantTensor<T> InvariantTensor<T>::from(const Sym2<T>& h) {
  return InvariantTensor(h.dim(), 2, h.components());
}

template <class T>
InvariantTensor<T> InvariantTensor<T>::from(const Curv4<T>& r) {
  return InvariantTensor(r.dim(), 4, r.components());
}

template <class T>
size_t InvariantTensor<T>::stride(int slot) const {
  return ipow(n_, rank_ - 1 - slot);
}

template <class T>
Sym2<T> InvariantTensor<T>::to_sym2() const {
  if (rank_ != 2) fail(ErrorKind::InvalidInput, "tensor is not rank 2");
  Sym2<T> out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      // symmetrize; exact tensors are already symmetric
      T v = (data_[i * n_ + j] + data_[j * n_ + i]) / 2;
      out.set(i, j, v);
    }
  return out;
}

template <class T>
T InvariantTensor<T>::max_abs() const {
  T m(0);
  for (const auto& x : data_) {
    T a = ScalarTraits<T>::abs(x);
    if (a > m) m = a;
  }
  return m;
}

template <class T>
ConnectionCoefficients<T> levi_civita(const StructureConstants<T>& c, const MetricFrame<T>& g) {
  const int n = c.dim();
  if (g.dim() != n) fail(ErrorKind::InvalidInput, "metric and algebra dimensions differ");
  // lowered: Gamma_ijk = g(nabla_i e_j, e_k)
  std::vector<T> low(ipow(n, 3), T(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        T acc(0);
        for (int l = 0; l < n; ++l) {
          acc += c(l, i, j) * g(l, k) - c(l, j, k) * g(l, i) + c(l, k, i) * g(l, j);
        }
        low[(static_cast<size_t>(i) * n + j) * n + k] = acc / 2;
      }
  std::vector<T> up(ipow(n, 3), T(0));
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        T acc(0);
        for (int k = 0; k < n; ++k) acc += g.inv(m, k) * low[(static_cast<size_t>(i) * n + j) * n + k];
        up[(static_cast<size_t>(m) * n + i) * n + j] = acc;
      }
  return ConnectionCoefficients<T>(n, std::move(up));
}

template <class T>
Curv4<T> riemann_tensor(const StructureConstants<T>& c, const ConnectionCoefficients<T>& gm, const MetricFrame<T>& g) {
  const int n = c.dim();
  Curv4<T> rm(n);
  std::vector<T> rq(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        // R(e_i, e_j) e_l = rq^q e_q
        for (int q = 0; q < n; ++q) {
          T acc(0);
          for (int m = 0; m < n; ++m) {
            acc += gm(m, j, l) * gm(q, i, m) - gm(m, i, l) * gm(q, j, m);
            acc -= c(m, i, j) * gm(q, m, l);
          }
          rq[q] = acc;
        }
        for (int k = 0; k < n; ++k) {
          T acc(0);
          for (int q = 0; q < n; ++q) acc += rq[q] * g(q, k);
          rm.at(i, j, k, l) = acc;
        }
      }
  return rm;
}

template <class T>
CurvatureData<T> curvature(const StructureConstants<T>& c, const MetricFrame<T>& g) {
  check_dim(c.dim(), 3);
  auto gm = levi_civita(c, g);
  return decompose(riemann_tensor(c, gm, g), g);
}

template <class T>
InvariantTensor<T> invariant_cov_deriv(const InvariantTensor<T>& t, int order, const ConnectionCoefficients<T>& gm) {
  if (order < 1 || order > 2) fail(ErrorKind::InvalidInput, "covariant derivative order must be 1 or 2");
  const int n = t.dim();
  if (gm.dim() != n) fail(ErrorKind::InvalidInput, "dimension mismatch");
  const int r = t.rank();
  InvariantTensor<T> out(n, r + 1);
  const size_t block = t.data().size();
  for (int a = 0; a < n; ++a) {
    for (size_t idx = 0; idx < block; ++idx) {
      T acc(0);
      for (int s = 0; s < r; ++s) {
        const size_t st = t.stride(s);
        const int is = static_cast<int>((idx / st) % n);
        const size_t base = idx - is * st;
        for (int d = 0; d < n; ++d) {
          const T& gam = gm(d, a, is);
          if (gam != 0) acc -= gam * t.data()[base + d * st];
        }
      }
      out.data()[a * block + idx] = acc;
    }
  }
  if (order == 2) return invariant_cov_deriv(out, 1, gm);
  return out;
}

namespace {

template <class T>
InvariantTensor<T> trace_first_two(const InvariantTensor<T>& d, const MetricFrame<T>& g) {
  const int n = d.dim();
  InvariantTensor<T> out(n, d.rank() - 2);
  const size_t block = out.data().size();
  for (size_t idx = 0; idx < block; ++idx) {
    T acc(0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (g.inv(a, b) != 0) acc += g.inv(a, b) * d.data()[(static_cast<size_t>(a) * n + b) * block + idx];
      }
    out.data()[idx] = acc;
  }
  return out;
}

}  // namespace

template <class T>
InvariantTensor<T> divergence(const InvariantTensor<T>& t, const ConnectionCoefficients<T>& gm, const MetricFrame<T>& g) {
  if (t.rank() < 1) fail(ErrorKind::InvalidInput, "divergence needs rank >= 1");
  return trace_first_two(invariant_cov_deriv(t, 1, gm), g);
}

template <class T>
std::vector<T> divergence(const Sym2<T>& h, const ConnectionCoefficients<T>& gm, const MetricFrame<T>& g) {
  return divergence(InvariantTensor<T>::from(h), gm, g).data();
}

template <class T>
InvariantTensor<T> laplacian(const InvariantTensor<T>& t, const ConnectionCoefficients<T>& gm, const MetricFrame<T>& g) {
  return trace_first_two(invariant_cov_deriv(t, 2, gm), g);
}

namespace {

template <class T>
Sym2<T> raise_both(const Sym2<T>& h, const MetricFrame<T>& g) {
  const int n = h.dim();
  Sym2<T> out(n);
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      T acc(0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) acc += g.inv(k, a) * g.inv(l, b) * h(a, b);
      out.set(k, l, acc);
    }
  return out;
}

// R_pkql R^kl
template <class T>
Sym2<T> curvature_on_ricci(const CurvatureData<T>& cd) {
  const int n = cd.dim();
  Sym2<T> ric_up = raise_both(cd.ricci(), cd.metric());
  Sym2<T> out(n);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      T acc(0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += cd.riemann()(p, k, q, l) * ric_up(k, l);
      out.set(p, q, acc);
    }
  return out;
}

template <class T>
struct DerivativeTerms {
  Sym2<T> lap_ric;
  Sym2<T> hess_scal;
  T lap_scal;
};

template <class T>
DerivativeTerms<T> derivative_terms(const CurvatureData<T>& cd, const ConnectionCoefficients<T>& gm) {
  const auto& g = cd.metric();
  DerivativeTerms<T> out{laplacian(InvariantTensor<T>::from(cd.ricci()), gm, g).to_sym2(),
                         invariant_cov_deriv(InvariantTensor<T>::scalar(cd.dim(), cd.scalar()), 2, gm).to_sym2(),
                         T(0)};
  out.lap_scal = laplacian(InvariantTensor<T>::scalar(cd.dim(), cd.scalar()), gm, g).data()[0];
  return out;
}

template <class T>
Sym2<T> grad_f0_from(const CurvatureData<T>& cd, const DerivativeTerms<T>& d) {
  const auto gs = Sym2<T>::from_metric(cd.metric());
  const T ric2 = inner(cd.ricci(), cd.ricci(), cd.metric());
  Sym2<T> out = T(-1) * d.lap_ric;
  out -= T(2) * curvature_on_ricci(cd);
  out += d.hess_scal;
  out += (ric2 / T(2) - d.lap_scal / T(2)) * gs;
  return out;
}

template <class T>
Sym2<T> grad_s_from(const CurvatureData<T>& cd, const DerivativeTerms<T>& d) {
  const auto gs = Sym2<T>::from_metric(cd.metric());
  const T& r = cd.scalar();
  Sym2<T> out = T(2) * d.hess_scal;
  out -= (T(2) * r) * cd.ricci();
  out += (r * r / T(2) - T(2) * d.lap_scal) * gs;
  return out;
}

}  // namespace

template <class T>
Sym2<T> gradient_F0(const StructureConstants<T>& c, const MetricFrame<T>& g) {
  check_dim(c.dim(), 3);
  auto gm = levi_civita(c, g);
  auto cd = decompose(riemann_tensor(c, gm, g), g);
  return grad_f0_from(cd, derivative_terms(cd, gm));
}

template <class T>
Sym2<T> gradient_S(const StructureConstants<T>& c, const MetricFrame<T>& g) {
  check_dim(c.dim(), 3);
  auto gm = levi_civita(c, g);
  auto cd = decompose(riemann_tensor(c, gm, g), g);
  return grad_s_from(cd, derivative_terms(cd, gm));
}

template <class T>
Sym2<T> gradient_F(const StructureConstants<T>& c, const MetricFrame<T>& g, const T& tau) {
  check_dim(c.dim(), 3);
  auto gm = levi_civita(c, g);
  auto cd = decompose(riemann_tensor(c, gm, g), g);
  auto d = derivative_terms(cd, gm);
  return grad_f0_from(cd, d) + tau * grad_s_from(cd, d);
}

template <class T>
Sym2<T> gradient_F_parallel(const CurvatureData<T>& cd, const T& tau) {
  const int n = cd.dim();
  DerivativeTerms<T> zero{Sym2<T>(n), Sym2<T>(n), T(0)};
  return grad_f0_from(cd, zero) + tau * grad_s_from(cd, zero);
}

template <class T>
Sym2<T> bach_tensor(const StructureConstants<T>& c, const MetricFrame<T>& g) {
  if (c.dim() != 4) fail(ErrorKind::UnsupportedDimension, "the Bach tensor is defined here for n = 4 only");
  return T(2) * gradient_F(c, g, T(-1) / T(3));
}

template <class T>
Sym2<T> bach_tensor(const CurvatureData<T>& cd) {
  if (cd.dim() != 4) fail(ErrorKind::UnsupportedDimension, "the Bach tensor is defined here for n = 4 only");
  return T(2) * gradient_F_parallel(cd, T(-1) / T(3));
}

template <class T>
Sym2<T> normalized_gradient(const StructureConstants<T>& c, const MetricFrame<T>& g, const T& tau) {
  const int n = c.dim();
  auto cd = curvature(c, g);
  const T ric2 = inner(cd.ricci(), cd.ricci(), cd.metric());
  const T p = T(4) / T(n) - T(1);
  return gradient_F(c, g, tau) + ((p / T(2)) * (ric2 + tau * cd.scalar() * cd.scalar())) * Sym2<T>::from_metric(g);
}

template <class T>
double relative_norm(const Sym2<T>& h, const MetricFrame<T>& g) {
  const double hh = ScalarTraits<T>::to_double(inner(h, h, g));
  return std::sqrt(std::max(0.0, hh) / g.dim());
}

template <class T>
MetricFrame<T> berger_metric(const T& s_squared) {
  if (!(s_squared > 0)) fail(ErrorKind::InvalidInput, "Berger parameter must be positive");
  return MetricFrame<T>::diagonal({T(1), T(1), s_squared});
}

double homogeneous_volume(const MetricFrame<double>& g, double vol_ref) { return vol_ref * std::sqrt(g.determinant()); }

double su2_reference_volume() { return 2.0 * std::numbers::pi * std::numbers::pi; }

#define QCF_INSTANTIATE(T)                                                                                     \
  template class StructureConstants<T>;                                                                        \
  template class InvariantTensor<T>;                                                                           \
  template StructureConstants<T> named_algebra<T>(const std::string&);                                         \
  template ConnectionCoefficients<T> levi_civita(const StructureConstants<T>&, const MetricFrame<T>&);          \
  template Curv4<T> riemann_tensor(const StructureConstants<T>&, const ConnectionCoefficients<T>&,             \
                                   const MetricFrame<T>&);                                                     \
  template CurvatureData<T> curvature(const StructureConstants<T>&, const MetricFrame<T>&);                    \
  template InvariantTensor<T> invariant_cov_deriv(const InvariantTensor<T>&, int, const ConnectionCoefficients<T>&); \
  template InvariantTensor<T> divergence(const InvariantTensor<T>&, const ConnectionCoefficients<T>&,          \
                                         const MetricFrame<T>&);                                               \
  template std::vector<T> divergence(const Sym2<T>&, const ConnectionCoefficients<T>&, const MetricFrame<T>&); \
  template InvariantTensor<T> laplacian(const InvariantTensor<T>&, const ConnectionCoefficients<T>&,           \
                                        const MetricFrame<T>&);                                                \
  template Sym2<T> gradient_F0(const StructureConstants<T>&, const MetricFrame<T>&);                           \
  template Sym2<T> gradient_S(const StructureConstants<T>&, const MetricFrame<T>&);                            \
  template Sym2<T> gradient_F(const StructureConstants<T>&, const MetricFrame<T>&, const T&);                  \
  template Sym2<T> gradient_F_parallel(const CurvatureData<T>&, const T&);                                     \
  template Sym2<T> bach_tensor(const StructureConstants<T>&, const MetricFrame<T>&);                           \
  template Sym2<T> bach_tensor(const CurvatureData<T>&);                                                       \
  template Sym2<T> normalized_gradient(const StructureConstants<T>&, const MetricFrame<T>&, const T&);         \
  template double relative_norm(const Sym2<T>&, const MetricFrame<T>&);                                        \
  template MetricFrame<T> berger_metric(const T&);

QCF_INSTANTIATE(double)
QCF_INSTANTIATE(Rational)

#undef QCF_INSTANTIATE

}  // namespace qcf
