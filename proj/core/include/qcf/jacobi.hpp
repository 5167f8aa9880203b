#pragma once

// Jacobi operators of the quadratic functionals at Einstein metrics, as
// exact polynomials in an eigenvalue, and the principal symbol of the
// gauged linearized gradient.

#include "qcf/tensor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcf {

// Either F_tau for a rational tau, or the pure int R^2 functional.
class Coupling {
 public:
  static Coupling tau(Rational t) { return Coupling(std::move(t)); }
  static Coupling scalar_squared() { return Coupling(); }

  bool is_scalar_squared() const { return !tau_.has_value(); }
  const Rational& tau() const;
  std::string label() const;

 private:
  Coupling() = default;
  explicit Coupling(Rational t) : tau_(std::move(t)) {}
  std::optional<Rational> tau_;
};

enum class EigenKind {
  TensorTT,         // Einstein operator on TT tensors
  ConformalScalar,  // Laplacian on functions, for conformal directions f g
};

// c2 x^2 + c1 x + c0 in the eigenvalue x.
struct SpectralPolynomial {
  EigenKind kind;
  int n;
  Rational scalar;
  Rational c0, c1, c2;

  Rational operator()(const Rational& x) const { return (c2 * x + c1) * x + c0; }
  std::string to_string() const;
};

// Jacobi operator of the volume-normalized functional on TT tensors.
SpectralPolynomial tt_polynomial(int n, const Rational& scalar, const Coupling& c);
// Same for the unnormalized functional; differs by the constant
// -(n-4)/(2n^2) R^2 (1 + n tau).
SpectralPolynomial tt_polynomial_unnormalized(int n, const Rational& scalar, const Coupling& c);
Rational tt_jacobi(int n, const Rational& scalar, const Coupling& c, const Rational& mu);

// Jacobi operator of the normalized functional in conformal directions.
SpectralPolynomial conformal_polynomial(int n, const Rational& scalar, const Coupling& c);
Rational conformal_jacobi(int n, const Rational& scalar, const Coupling& c, const Rational& lambda);

// tau = -n/(4(n-1)), where the conformal Jacobi operator loses its leading
// order and the gauged symbol degenerates.
Rational degenerate_tau(int n);

// Principal symbol of the linearized gradient plus the gauge term, acting
// on symmetric 2-tensors at a point with an orthonormal frame.
template <class T>
class SymbolOperator {
 public:
  SymbolOperator(int n, T tau, std::vector<T> xi);

  int dim() const { return n_; }
  // n(n+1)/2
  int domain_dim() const { return n_ * (n_ + 1) / 2; }
  Sym2<T> apply(const Sym2<T>& h) const;
  // Column b is the image of the basis element b: E_ii, or E_ij + E_ji for
  // i < j, in that coordinate system. Row-major.
  std::vector<T> matrix() const;

  // Coefficients of |xi|^2 xi xi tr h, xi xi h(xi,xi), |xi|^4 tr h g.
  static T coeff_a(int n, const T& tau);
  static T coeff_b(int n, const T& tau);
  static T coeff_c(int n, const T& tau);

 private:
  int n_;
  T tau_;
  std::vector<T> xi_;
  T xi2_;
};

template <class T>
SymbolOperator<T> gauged_symbol(int n, const T& tau, const std::vector<T>& xi);

// Basis of symmetric tensors matching SymbolOperator::matrix columns.
std::vector<std::pair<int, int>> sym2_basis(int n);

struct SymbolVerdict {
  int n = 0;
  Rational tau;
  bool trace_free_domain = false;
  int trials = 0;
  int domain_dim = 0;
  bool injective = true;            // exact rank is full in every trial
  int min_rank = 0;
  double min_singular_value = 0;    // over all trials, unit xi
  bool degenerate_tau = false;      // tau equals degenerate_tau(n)
  bool metric_in_kernel = false;    // sigma(g) = 0 exactly in some trial
  // Exact kernel of the first rank-deficient trial, as row-major n*n components.
  std::vector<std::vector<Rational>> kernel_basis;
};

// Draws `trials` random directions xi from the seed (integer vectors, so
// the rank test is exact) and checks injectivity of the symbol.
SymbolVerdict symbol_injectivity(int n, const Rational& tau, int trials, std::uint64_t seed,
                                 bool trace_free_domain = false);

// Exact rank and minimal singular value for one direction.
struct SymbolProbe {
  int rank = 0;
  int domain_dim = 0;
  double min_singular_value = 0;
  std::vector<std::vector<Rational>> kernel;
};
SymbolProbe probe_symbol(int n, const Rational& tau, const std::vector<Rational>& xi, bool trace_free_domain = false);

// Symbol of the conformal Killing operator on 1-forms,
// |xi|^2 w + (1 - 2/n) xi <xi, w>.
struct ConformalKillingVerdict {
  int n = 0;
  bool injective = true;
  Rational determinant;              // exact, for the given xi
  std::vector<double> eigenvalues;   // ascending, for the given xi
};
ConformalKillingVerdict conformal_killing_symbol(int n, const std::vector<Rational>& xi);

// Dense exact linear algebra used by the symbol checks.
int exact_rank(std::vector<Rational> m, int rows, int cols);
std::vector<std::vector<Rational>> exact_kernel(std::vector<Rational> m, int rows, int cols);

}  // namespace qcf
