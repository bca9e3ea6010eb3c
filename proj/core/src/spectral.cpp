#include "qrec/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qrec/error.hpp"

namespace qrec {

double SpectrumReport::spectral_radius() const {
  double rho = 0;
  for (const auto& e : eigenvalues) rho = std::max(rho, std::abs(e.value));
  return rho;
}

int SpectrumReport::max_jordan_on_circle(double modulus, double tol) const {
  int size = 0;
  for (const auto& e : eigenvalues)
    if (std::abs(std::abs(e.value) - modulus) <= tol * std::max(1.0, modulus)) size = std::max(size, e.jordan_size);
  return size;
}

namespace {

// Continued-fraction candidate p/q with q <= max_den.
std::optional<Rational> rational_candidate(long double x, long max_den) {
  long double rest = x;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  for (int iter = 0; iter < 40; ++iter) {
    const long double a_real = std::floor(rest);
    if (std::abs(a_real) > 1e15L) return std::nullopt;
    const mpz_class a(static_cast<double>(a_real));
    const mpz_class h2 = a * h0 + h1;
    const mpz_class k2 = a * k0 + k1;
    if (k2 > max_den) break;
    h1 = h0; h0 = h2; k1 = k0; k0 = k2;
    const long double frac = rest - a_real;
    if (frac < 1e-15L) break;
    rest = 1.0L / frac;
  }
  if (k0 == 0) return std::nullopt;
  Rational r(h0, k0);
  r.canonicalize();
  return r;
}

bool eigen_order(const Eigenvalue& a, const Eigenvalue& b) {
  const double ma = std::abs(a.value), mb = std::abs(b.value);
  if (std::abs(ma - mb) > 1e-12 * std::max(1.0, ma)) return ma < mb;
  return std::arg(a.value) < std::arg(b.value);
}

}  // namespace

SpectrumReport spectrum(const QMatrix& c, const SpectrumConfig& cfg) {
  SpectrumReport report;
  report.char_poly = characteristic_polynomial(c);
  const auto char_parts = squarefree_decomposition(report.char_poly);
  const auto min_parts = squarefree_decomposition(minimal_polynomial(c));
  for (const auto& [f, alg] : char_parts) {
    for (const auto& [g, jordan] : min_parts) {
      const Polynomial piece = gcd(f, g);
      if (piece.degree() < 1) continue;
      if (piece.degree() == 1) {
        const Rational root = -piece.monic().coeff(0);
        report.eigenvalues.push_back({{root.get_d(), 0.0}, alg, jordan, root, false});
        continue;
      }
      for (const auto& z : polynomial_roots(piece)) {
        Eigenvalue e{{static_cast<double>(z.real()), static_cast<double>(z.imag())}, alg, jordan, std::nullopt, false};
        if (std::abs(z.imag()) <= 1e-12L * std::max(1.0L, std::abs(z))) {
          e.value = {static_cast<double>(z.real()), 0.0};
          if (auto r = rational_candidate(z.real(), 1000000); r && piece.evaluate(*r) == 0) {
            e.exact = *r;
            e.value = {r->get_d(), 0.0};
          }
        }
        report.eigenvalues.push_back(e);
      }
    }
  }
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), eigen_order);
  const auto& ev = report.eigenvalues;
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      if (std::abs(ev[i].value - ev[j].value) < 10 * cfg.cluster_tolerance * std::max(1.0, std::abs(ev[i].value)))
        throw Error(ErrorCode::ClusteringAmbiguous, "distinct eigenvalues closer than the cluster tolerance");
  return report;
}

namespace {

SpectrumReport extend_spectrum(const SpectrumReport& inner, const Polynomial& factor,
                               const std::vector<std::pair<Rational, int>>& added) {
  SpectrumReport out = inner;
  out.char_poly = inner.char_poly * factor;
  for (const auto& [value, count] : added) {
    if (count == 0) continue;
    auto it = std::find_if(out.eigenvalues.begin(), out.eigenvalues.end(),
                           [&](const Eigenvalue& e) { return e.exact && *e.exact == value; });
    if (it != out.eigenvalues.end()) {
      it->algebraic_multiplicity += count;
      it->jordan_lower_bound = true;
    } else {
      out.eigenvalues.push_back({{value.get_d(), 0.0}, count, 1, value, true});
    }
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), eigen_order);
  return out;
}

}  // namespace

SpectrumReport spectrum_offset_shortcut(const SpectrumReport& inner, std::int64_t n0) {
  if (n0 <= 0) return inner;
  const auto zeros = static_cast<std::size_t>(n0 - 1);
  const Polynomial factor = Polynomial::linear(1) * Polynomial::monomial(zeros);
  return extend_spectrum(inner, factor, {{Rational(1), 1}, {Rational(0), static_cast<int>(zeros)}});
}

SpectrumReport spectrum_special_shortcut(const SpectrumReport& inner_b_sum, std::size_t zero_block_dim) {
  return extend_spectrum(inner_b_sum, Polynomial::monomial(zero_block_dim),
                         {{Rational(0), static_cast<int>(zero_block_dim)}});
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::RowSum: return "row-sum";
    case NormKind::ColumnSum: return "column-sum";
    case NormKind::Spectral: return "spectral";
  }
  return "?";
}

std::string to_string(GrowthStatus status) {
  switch (status) {
    case GrowthStatus::Holds: return "holds";
    case GrowthStatus::Violated: return "violated";
    case GrowthStatus::Unknown: return "unknown";
  }
  return "?";
}

namespace {

Eigen::MatrixXd to_eigen(const QMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).get_d();
  return out;
}

double norm_of(const Eigen::MatrixXd& m, NormKind kind) {
  switch (kind) {
    case NormKind::RowSum: return m.cwiseAbs().rowwise().sum().maxCoeff();
    case NormKind::ColumnSum: return m.cwiseAbs().colwise().sum().maxCoeff();
    case NormKind::Spectral: return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
  }
  return 0;
}

double radius_of(const Eigen::MatrixXd& m) {
  return Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

// ||A^k|| / rho^k for k = 2^j grows without bound when a Jordan block sits on
// the spectral circle.
bool powers_grow_polynomially(const Eigen::MatrixXd& a, double rho, NormKind kind) {
  if (rho < 1e-12) return false;
  Eigen::MatrixXd power = a / rho;
  double at_32 = 0;
  for (int j = 1; j <= 10; ++j) {
    power = power * power;
    if (j == 5) at_32 = norm_of(power, kind);
  }
  const double at_1024 = norm_of(power, kind);
  return at_1024 > 2.0 && at_1024 > 4.0 * at_32;
}

}  // namespace

JsrBounds jsr_bounds(const std::vector<QMatrix>& mats, const JsrOptions& options) {
  if (mats.empty()) throw Error(ErrorCode::DimensionMismatch, "empty matrix set");
  const auto dim = mats.front().rows();
  for (const auto& a : mats)
    if (a.rows() != dim || a.cols() != dim) throw Error(ErrorCode::DimensionMismatch, "matrices differ in shape");
  if (options.k_max < 1) throw Error(ErrorCode::DimensionMismatch, "k_max must be positive");

  std::vector<Eigen::MatrixXd> base;
  if (options.scaling) {
    if (options.scaling->rows() != dim || options.scaling->cols() != dim)
      throw Error(ErrorCode::DimensionMismatch, "scaling matrix shape");
    const QMatrix t_inv = inverse(*options.scaling);
    for (const auto& a : mats) base.push_back(to_eigen(t_inv * a * *options.scaling));
  } else {
    for (const auto& a : mats) base.push_back(to_eigen(a));
  }

  JsrBounds bounds;
  bounds.norm = options.norm;
  bounds.scaled = options.scaling.has_value();
  bounds.upper = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> level = {{{}, Eigen::MatrixXd::Identity(
                                                                              static_cast<Eigen::Index>(dim),
                                                                              static_cast<Eigen::Index>(dim))}};
  for (int k = 1; k <= options.k_max; ++k) {
    std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> next;
    next.reserve(level.size() * base.size());
    for (const auto& [word, product] : level)
      for (std::size_t r = 0; r < base.size(); ++r) {
        auto w = word;
        w.push_back(static_cast<int>(r));
        next.emplace_back(std::move(w), product * base[r]);
      }
    level = std::move(next);
    double worst = 0;
    for (const auto& [word, product] : level) {
      worst = std::max(worst, std::pow(norm_of(product, options.norm), 1.0 / k));
      const double rho = std::pow(radius_of(product), 1.0 / k);
      if (rho > bounds.lower) {
        bounds.lower = rho;
        bounds.lower_witness = word;
      }
    }
    if (worst < bounds.upper - options.tolerance * std::max(1.0, worst)) {
      bounds.upper = worst;
      bounds.depth = k;
    }
  }

  // A single matrix has JSR equal to its spectral radius.
  bool singleton = true;
  for (const auto& a : mats)
    if (!(a == mats.front())) singleton = false;
  if (singleton) bounds.upper = bounds.lower = radius_of(base.front());

  if (bounds.upper - bounds.lower <= options.tolerance * std::max(1.0, bounds.upper))
    bounds.finiteness_certificate = bounds.lower_witness.empty() ? std::vector<int>{0} : bounds.lower_witness;

  bool witness = false;
  for (const auto& a : base) {
    const double rho = radius_of(a);
    if (rho >= bounds.upper - options.tolerance * std::max(1.0, bounds.upper) && powers_grow_polynomially(a, rho, options.norm))
      witness = true;
  }
  if (witness)
    bounds.growth = GrowthStatus::Violated;
  else if (bounds.finiteness_certificate)
    bounds.growth = GrowthStatus::Holds;
  return bounds;
}

JsrBounds jsr_offset_shortcut(const JsrBounds& inner, double tolerance) {
  JsrBounds out = inner;
  out.lower = std::max(inner.lower, 1.0);
  out.upper = std::max(inner.upper, 1.0);
  const bool dominant = inner.lower > 1.0 + tolerance;
  out.growth = (inner.growth == GrowthStatus::Holds && dominant) ? GrowthStatus::Holds
               : inner.growth == GrowthStatus::Violated && dominant ? GrowthStatus::Violated
                                                                    : GrowthStatus::Unknown;
  if (!dominant) out.finiteness_certificate.reset();
  return out;
}

JsrBounds jsr_special_shortcut(const JsrBounds& b_set, double tolerance) {
  JsrBounds out = b_set;
  if (b_set.lower <= tolerance && out.growth == GrowthStatus::Holds) out.growth = GrowthStatus::Unknown;
  return out;
}

}  // namespace qrec
