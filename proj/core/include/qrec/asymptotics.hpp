#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "qrec/definition.hpp"
#include "qrec/oracle.hpp"
#include "qrec/representation.hpp"
#include "qrec/spectral.hpp"

namespace qrec {

struct DirichletConfig {
  // Largest number of indices summed directly in one window.
  std::int64_t direct_sum_cutoff = 100000;
  // Cap on the binomial series length.
  int series_truncation = 80;
  // Cap on the number of functional-equation steps before direct summation.
  int shift_depth = 400;
  // log_q R; NaN means derive it from a spectral-norm JSR bound.
  double growth_exponent = std::numeric_limits<double>::quiet_NaN();
  // Decimal digits: up to 15 runs in double, up to 18 in long double.
  int precision_digits = 15;
  double pole_condition_limit = 1e12;
  // Direct windows cover indices [n0, window_factor * n0).
  double window_factor = 4;

  double convergence_abscissa() const { return growth_exponent + 1; }
};

struct DirichletValue {
  std::vector<std::complex<double>> value;
  // Index where the scaled series starts (terms below it are summed exactly).
  std::int64_t series_start = 0;
  // Number of functional-equation steps taken before direct summation.
  int recursion_depth = 0;
  // Longest binomial series used.
  int series_terms = 0;
  // Relative size of the neglected tail of the direct windows.
  double tail_estimate = 0;
};

// V(s) = sum_{n >= 1} n^{-s} v(n) for a representation with offset 0.
DirichletValue dirichlet_eval(const LinearRepresentation& rep, std::complex<double> s,
                              const DirichletConfig& cfg = {});

// X_j(s) = sum_{n >= eta} x(q^m n + j) / (q^m n + j)^s, j < q^m, for a
// definition of the special shape; eta is raised when |s| demands it, with
// the extra terms added back exactly.
DirichletValue special_dirichlet_eval(const QRecursiveDefinition& def, std::complex<double> s, std::int64_t eta,
                                      const DirichletConfig& cfg = {});

struct FluctuationTable {
  std::complex<double> eigenvalue;
  std::complex<double> exponent;  // log_q(eigenvalue)
  int k = 0;
  int mu_min = 0;
  int mu_max = -1;
  std::vector<std::complex<double>> coefficients;  // index mu - mu_min

  bool has(int mu) const { return mu >= mu_min && mu <= mu_max; }
  std::complex<double> coefficient(int mu) const;
};

// phi_mu for mu in [mu_min, mu_max], from the residue of V at
// s_mu = log_q(lambda) + 2 pi i mu / log q.
FluctuationTable fourier_coefficients(const LinearRepresentation& rep, const Eigenvalue& lambda, int mu_min,
                                      int mu_max, const DirichletConfig& cfg = {});
// Same coefficient from the symmetric limit of (s - s_mu) V(s) at s_mu +- eps.
std::complex<double> fourier_limit_estimate(const LinearRepresentation& rep, const Eigenvalue& lambda, int mu,
                                            const DirichletConfig& cfg = {}, double eps = 1e-4);

// Fourier coefficients via the block functional equation of the special shape;
// lambda must be an eigenvalue of B_0 + ... + B_{q-1}.
FluctuationTable special_fourier_coefficients(const QRecursiveDefinition& def, const Eigenvalue& lambda,
                                              std::int64_t eta, int mu_min, int mu_max,
                                              const DirichletConfig& cfg = {});

// Throws NoSeparation when simple growth is not established and an
// eigenvalue modulus sits on the JSR bound.
double choose_R(const JsrBounds& jsr, const SpectrumReport& spec, double tolerance = 1e-9);

struct AsymptoticExpansion {
  int q = 2;
  std::vector<FluctuationTable> terms;
  double error_exponent = 0;
  int error_log_power = 0;
};

AsymptoticExpansion assemble_expansion(const LinearRepresentation& rep, double R, const SpectrumReport& spec,
                                       int mu_max, const DirichletConfig& cfg = {});
AsymptoticExpansion assemble_special_expansion(const QRecursiveDefinition& def, double R,
                                               const SpectrumReport& b_sum_spec, std::int64_t eta, int mu_max,
                                               const DirichletConfig& cfg = {});

// sum over terms of N^{log_q lambda} * (partial Fourier sum of the given degree)(frac(log_q N)).
double evaluate_expansion(const AsymptoticExpansion& exp, std::int64_t N, int fourier_degree);
// Partial Fourier sum of one fluctuation at u.
double fluctuation_value(const FluctuationTable& table, double u, int fourier_degree);

// (u, X(floor(q^u)) / q^{kappa u}) for each grid point.
std::vector<std::pair<double, double>> empirical_fluctuation(const SequenceOracle& oracle, double kappa,
                                                             const std::vector<double>& u_grid, int q = 2);

}  // namespace qrec
