#pragma once

// Left-invariant geometry on a Lie group, computed from structure constants
// [e_i, e_j] = c^k_ij e_k and a constant metric matrix g_ij = g(e_i, e_j).
// Every invariant tensor has constant components, so covariant derivatives
// reduce to contractions with the connection coefficients.

#include "qcf/tensor.hpp"

#include <string>
#include <vector>

namespace qcf {

template <class T>
class StructureConstants {
 public:
  // Components c^k_ij stored at [(k*n + i)*n + j]. Throws InvalidInput when
  // antisymmetry or the Jacobi identity fails.
  StructureConstants(int n, std::vector<T> c);

  struct Bracket {
    int i;
    int j;
    std::vector<T> value;  // [e_i, e_j] in the basis
  };
  static StructureConstants from_brackets(int n, const std::vector<Bracket>& brackets);
  static StructureConstants abelian(int n);

  int dim() const { return n_; }
  const T& operator()(int k, int i, int j) const { return c_[(static_cast<size_t>(k) * n_ + i) * n_ + j]; }
  // tr ad_X = 0 for all X
  bool unimodular() const;

 private:
  int n_;
  std::vector<T> c_;
};

// Named algebras used by the tools and tests: "su2", "abelian<n>",
// "heisenberg", "sol", "hyperbolic<n>" (the solvable model of H^n),
// "su2+R", "heisenberg+R", "sol+R".
template <class T>
StructureConstants<T> named_algebra(const std::string& name);

std::vector<std::string> named_algebras();

// Gamma^k_ij with nabla_{e_i} e_j = Gamma^k_ij e_k.
template <class T>
class ConnectionCoefficients {
 public:
  ConnectionCoefficients(int n, std::vector<T> gamma) : n_(n), gamma_(std::move(gamma)) {}
  int dim() const { return n_; }
  const T& operator()(int k, int i, int j) const { return gamma_[(static_cast<size_t>(k) * n_ + i) * n_ + j]; }

 private:
  int n_;
  std::vector<T> gamma_;
};

// Dense left-invariant covariant tensor of arbitrary rank.
template <class T>
class InvariantTensor {
 public:
  InvariantTensor(int n, int rank);
  InvariantTensor(int n, int rank, std::vector<T> data);
  static InvariantTensor scalar(int n, const T& value);
  static InvariantTensor from(const Sym2<T>& h);
  static InvariantTensor from(const Curv4<T>& r);

  int dim() const { return n_; }
  int rank() const { return rank_; }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }
  size_t stride(int slot) const;

  Sym2<T> to_sym2() const;
  T max_abs() const;

 private:
  int n_;
  int rank_;
  std::vector<T> data_;
};

template <class T>
ConnectionCoefficients<T> levi_civita(const StructureConstants<T>& c, const MetricFrame<T>& g);

template <class T>
Curv4<T> riemann_tensor(const StructureConstants<T>& c, const ConnectionCoefficients<T>& gamma,
                        const MetricFrame<T>& g);

// Requires n >= 3.
template <class T>
CurvatureData<T> curvature(const StructureConstants<T>& c, const MetricFrame<T>& g);

// order 1: (nabla T)_{a i1..ik}; order 2: (nabla^2 T)_{a b i1..ik}, the
// outermost derivative index first.
template <class T>
InvariantTensor<T> invariant_cov_deriv(const InvariantTensor<T>& t, int order, const ConnectionCoefficients<T>& gamma);

// g^ab (nabla t)_{a b ...}: contracts a new derivative index with the first slot.
template <class T>
InvariantTensor<T> divergence(const InvariantTensor<T>& t, const ConnectionCoefficients<T>& gamma,
                              const MetricFrame<T>& g);

template <class T>
std::vector<T> divergence(const Sym2<T>& h, const ConnectionCoefficients<T>& gamma, const MetricFrame<T>& g);

// Rough Laplacian g^ab (nabla^2 t)_{ab ...}.
template <class T>
InvariantTensor<T> laplacian(const InvariantTensor<T>& t, const ConnectionCoefficients<T>& gamma,
                             const MetricFrame<T>& g);

// Gradients of the unnormalized functionals int |Ric|^2 and int R^2 and of
// their combination F_tau = F_0 + tau * S.
template <class T>
Sym2<T> gradient_F0(const StructureConstants<T>& c, const MetricFrame<T>& g);

template <class T>
Sym2<T> gradient_S(const StructureConstants<T>& c, const MetricFrame<T>& g);

template <class T>
Sym2<T> gradient_F(const StructureConstants<T>& c, const MetricFrame<T>& g, const T& tau);

// Same gradient for a metric with parallel curvature (all catalog models),
// where every derivative term drops out.
template <class T>
Sym2<T> gradient_F_parallel(const CurvatureData<T>& cd, const T& tau);

// Bach tensor normalized as twice the gradient of F_{-1/3}; n = 4 only.
template <class T>
Sym2<T> bach_tensor(const StructureConstants<T>& c, const MetricFrame<T>& g);

template <class T>
Sym2<T> bach_tensor(const CurvatureData<T>& cd);

// Gradient of the scale-normalized functional up to the positive factor
// Vol^{4/n - 1}: grad F_tau + (p/2) (|Ric|^2 + tau R^2) g with p = 4/n - 1.
template <class T>
Sym2<T> normalized_gradient(const StructureConstants<T>& c, const MetricFrame<T>& g, const T& tau);

// |h|_g / |g|_g
template <class T>
double relative_norm(const Sym2<T>& h, const MetricFrame<T>& g);

// Berger metric diag(1, 1, s^2) on the su(2) basis with [e1,e2] = 2e3 and
// cyclic. The unit round S^3 is s = 1.
template <class T>
MetricFrame<T> berger_metric(const T& s_squared);

// Volume of a compact quotient with reference volume vol_ref at the
// identity-matrix metric.
double homogeneous_volume(const MetricFrame<double>& g, double vol_ref);

// Volume of the round unit S^3 = SU(2) in the basis above.
double su2_reference_volume();

}  // namespace qcf
