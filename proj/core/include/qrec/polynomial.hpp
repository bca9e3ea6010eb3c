#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qrec/rational.hpp"

namespace qrec {

// Dense polynomial over Q, coefficients from the constant term upward.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial monomial(std::size_t degree, const Rational& coeff = 1);
  // x - root
  static Polynomial linear(const Rational& root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  Polynomial monic() const;
  Polynomial derivative() const;
  Rational evaluate(const Rational& x) const;
  std::complex<long double> evaluate(std::complex<long double> x) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
// Quotient and remainder of Euclidean division.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial gcd(Polynomial a, Polynomial b);
Polynomial lcm(const Polynomial& a, const Polynomial& b);

// Yun's algorithm: pairs (f_i, i) with p = lc * prod f_i^i, f_i squarefree, coprime.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);

// det(x I - m) via Faddeev-LeVerrier.
Polynomial characteristic_polynomial(const QMatrix& m);
// Monic polynomial of least degree annihilating m.
Polynomial minimal_polynomial(const QMatrix& m);

// Numeric roots of a squarefree polynomial: companion eigenvalues, Newton-polished.
std::vector<std::complex<long double>> polynomial_roots(const Polynomial& p);

}  // namespace qrec
