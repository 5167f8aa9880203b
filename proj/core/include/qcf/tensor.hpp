#pragma once

// Dense curvature algebra in a fixed frame {e_1..e_n}.
//
// Conventions: R_ijkl = g(R(e_i,e_j)e_l, e_k), so the unit sphere has
// R_ijkl = g_ik g_jl - g_il g_jk and Ric_jl = g^ik R_ijkl. Squared norms are
// full contractions with no pair factors; |Rm|^2 = 2n(n-1) on the unit S^n.

#include "qcf/rational.hpp"

#include <vector>

namespace qcf {

inline constexpr int kMaxDim = 8;

void check_dim(int n, int min_dim = 1);

template <class T>
class MetricFrame {
 public:
  // Row-major n*n components. Throws InvalidInput unless symmetric and
  // positive definite.
  MetricFrame(int n, std::vector<T> components);

  static MetricFrame identity(int n);
  static MetricFrame diagonal(const std::vector<T>& d);

  int dim() const { return n_; }
  const T& operator()(int i, int j) const { return g_[i * n_ + j]; }
  const T& inv(int i, int j) const { return inv_[i * n_ + j]; }
  const T& determinant() const { return det_; }
  bool is_identity() const { return identity_; }
  const std::vector<T>& components() const { return g_; }

 private:
  int n_;
  std::vector<T> g_;
  std::vector<T> inv_;
  T det_;
  bool identity_ = false;
};

template <class T>
class Sym2 {
 public:
  explicit Sym2(int n = 0) : n_(n), c_(static_cast<size_t>(n) * n, T(0)) {}
  // Throws InvalidInput unless components are exactly symmetric.
  Sym2(int n, std::vector<T> components);
  static Sym2 from_metric(const MetricFrame<T>& g);

  int dim() const { return n_; }
  const T& operator()(int i, int j) const { return c_[i * n_ + j]; }
  void set(int i, int j, const T& v) {
    c_[i * n_ + j] = v;
    c_[j * n_ + i] = v;
  }
  void add(int i, int j, const T& v);
  const std::vector<T>& components() const { return c_; }

  Sym2& operator+=(const Sym2& o);
  Sym2& operator-=(const Sym2& o);
  Sym2& operator*=(const T& s);
  friend Sym2 operator+(Sym2 a, const Sym2& b) { return a += b; }
  friend Sym2 operator-(Sym2 a, const Sym2& b) { return a -= b; }
  friend Sym2 operator*(const T& s, Sym2 a) { return a *= s; }
  bool operator==(const Sym2& o) const { return n_ == o.n_ && c_ == o.c_; }

 private:
  int n_;
  std::vector<T> c_;
};

template <class T>
class Curv4 {
 public:
  explicit Curv4(int n = 0) : n_(n), c_(static_cast<size_t>(n) * n * n * n, T(0)) {}
  Curv4(int n, std::vector<T> components);

  int dim() const { return n_; }
  size_t index(int i, int j, int k, int l) const { return ((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l; }
  const T& operator()(int i, int j, int k, int l) const { return c_[index(i, j, k, l)]; }
  T& at(int i, int j, int k, int l) { return c_[index(i, j, k, l)]; }
  const std::vector<T>& components() const { return c_; }

  Curv4& operator+=(const Curv4& o);
  Curv4& operator-=(const Curv4& o);
  Curv4& operator*=(const T& s);
  friend Curv4 operator+(Curv4 a, const Curv4& b) { return a += b; }
  friend Curv4 operator-(Curv4 a, const Curv4& b) { return a -= b; }
  friend Curv4 operator*(const T& s, Curv4 a) { return a *= s; }
  bool operator==(const Curv4& o) const { return n_ == o.n_ && c_ == o.c_; }

  // Largest violation of the algebraic curvature symmetries (pair
  // antisymmetry, pair exchange, first Bianchi).
  T symmetry_defect() const;

 private:
  int n_;
  std::vector<T> c_;
};

template <class T>
struct QuadraticInvariants {
  T rm2;
  T ric2;
  T scal2;
  T weyl2;
};

template <class T>
class CurvatureData {
 public:
  CurvatureData(MetricFrame<T> g, Curv4<T> rm, Sym2<T> ric, T scal, Curv4<T> weyl)
      : g_(std::move(g)), rm_(std::move(rm)), ric_(std::move(ric)), scal_(std::move(scal)), weyl_(std::move(weyl)) {}

  int dim() const { return g_.dim(); }
  const MetricFrame<T>& metric() const { return g_; }
  const Curv4<T>& riemann() const { return rm_; }
  const Sym2<T>& ricci() const { return ric_; }
  const T& scalar() const { return scal_; }
  const Curv4<T>& weyl() const { return weyl_; }

 private:
  MetricFrame<T> g_;
  Curv4<T> rm_;
  Sym2<T> ric_;
  T scal_;
  Curv4<T> weyl_;
};

template <class T>
Sym2<T> contract_ricci(const Curv4<T>& rm, const MetricFrame<T>& g);

template <class T>
T trace(const Sym2<T>& h, const MetricFrame<T>& g);

// g^ip g^jq a_ij b_pq
template <class T>
T inner(const Sym2<T>& a, const Sym2<T>& b, const MetricFrame<T>& g);

template <class T>
T inner(const Curv4<T>& a, const Curv4<T>& b, const MetricFrame<T>& g);

// (A o B)_ijkl = A_ik B_jl + A_jl B_ik - A_il B_jk - A_jk B_il
template <class T>
Curv4<T> kulkarni_nomizu(const Sym2<T>& a, const Sym2<T>& b);

// Requires 3 <= n <= 8.
template <class T>
CurvatureData<T> decompose(Curv4<T> rm, MetricFrame<T> g);

template <class T>
QuadraticInvariants<T> quadratic_invariants(const CurvatureData<T>& cd);

// Constant sectional curvature k in the given frame.
template <class T>
Curv4<T> constant_curvature(const MetricFrame<T>& g, const T& k);

// Orthonormal frame of a Riemannian product of two constant-curvature
// factors of dimensions m1, m2.
template <class T>
Curv4<T> product_constant_curvature(int m1, const T& k1, int m2, const T& k2);

// Orthonormal frame of a complex space form of complex dimension m, with
// R = c[(g_ik g_jl - g_il g_jk) + (J_ik J_jl - J_il J_jk + 2 J_ij J_kl)].
// c = 1 is the Fubini-Study metric with holomorphic sectional curvature 4.
template <class T>
Curv4<T> complex_space_form(int m, const T& c);

template <class T>
CurvatureData<double> to_double(const CurvatureData<T>& cd);

}  // namespace qcf
