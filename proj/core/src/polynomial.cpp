#include "qrec/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include "qrec/error.hpp"

namespace qrec {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(std::size_t degree, const Rational& coeff) {
  std::vector<Rational> c(degree + 1);
  c[degree] = coeff;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::linear(const Rational& root) { return Polynomial({-root, Rational(1)}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> c = coeffs_;
  const Rational lead = c.back();
  for (auto& x : c) x /= lead;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> c(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(c));
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<long double> Polynomial::evaluate(std::complex<long double> x) const {
  std::complex<long double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + static_cast<long double>(it->get_d());
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs().size() + b.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::DimensionMismatch, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t i = quot.size(); i-- > 0;) {
    const Rational factor = rem[i + db] / b.leading();
    quot[i] = factor;
    if (factor == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[i + j] -= factor * b.coeffs()[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return divmod(a * b, gcd(a, b)).first.monic();
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() < 1) return out;
  const Polynomial f = p.monic();
  Polynomial a = gcd(f, f.derivative());
  Polynomial b = divmod(f, a).first;
  Polynomial c = divmod(f.derivative(), a).first;
  Polynomial d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    Polynomial g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
  }
  return out;
}

Polynomial characteristic_polynomial(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  QMatrix acc(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    acc = m * acc;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += c[n - k + 1];
    QMatrix prod = m * acc;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += prod(i, i);
    c[n - k] = -trace / static_cast<long>(k);
  }
  return Polynomial(std::move(c));
}

Polynomial minimal_polynomial(const QMatrix& m) {
  const std::size_t n = m.rows();
  Polynomial result({Rational(1)});
  for (std::size_t i = 0; i < n; ++i) {
    // Krylov sequence e_i, m e_i, ... until the first dependency.
    IncrementalBasis krylov(n);
    QVector v(n);
    v[i] = 1;
    while (krylov.insert(v)) v = m * v;
    const QVector coords = krylov.coordinates(v);
    std::vector<Rational> annihilator(coords.size() + 1);
    for (std::size_t j = 0; j < coords.size(); ++j) annihilator[j] = -coords[j];
    annihilator.back() = 1;
    result = lcm(result, Polynomial(std::move(annihilator)));
  }
  return result;
}

std::vector<std::complex<long double>> polynomial_roots(const Polynomial& p) {
  using cld = std::complex<long double>;
  std::vector<cld> roots;
  const int deg = p.degree();
  if (deg < 1) return roots;
  const Polynomial f = p.monic();
  if (deg == 1) {
    roots.emplace_back(static_cast<long double>(-f.coeff(0).get_d()), 0.0L);
    return roots;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -f.coeff(static_cast<std::size_t>(i)).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const Polynomial df = f.derivative();
  for (int i = 0; i < deg; ++i) {
    cld z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    for (int iter = 0; iter < 50; ++iter) {
      const cld fz = f.evaluate(z);
      const cld dz = df.evaluate(z);
      if (std::abs(dz) == 0.0L) break;
      const cld step = fz / dz;
      z -= step;
      if (std::abs(step) <= 1e-18L * std::max(1.0L, std::abs(z))) break;
    }
    roots.push_back(z);
  }
  return roots;
}

}  // namespace qrec
