#include "qrec/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <type_traits>

#include "qrec/builder.hpp"
#include "qrec/error.hpp"

namespace qrec {

namespace {

template <class Real>
Real to_real(const Rational& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return x.get_d();
  } else {
    mpf_class f(0, 192);
    f = x;
    const double hi = f.get_d();
    mpf_class rest(0, 192);
    rest = f - hi;
    return static_cast<Real>(hi) + static_cast<Real>(rest.get_d());
  }
}

template <class Real>
Real target_tolerance() {
  return std::is_same_v<Real, double> ? Real(1e-17) : Real(1e-20);
}

template <class Real>
using RMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using CMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using CVec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <class Real>
RMat<Real> to_eigen(const QMatrix& m) {
  RMat<Real> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_real<Real>(m(i, j));
  return out;
}

template <class Real>
struct Coupling {
  std::size_t row;
  std::size_t col;
  Real coeff;
  Real beta;
};

// A vector of Dirichlet series S_i(s) = sum_{n >= n0} p_i(n)^{-s} a_i(n)
// satisfying (I - q^{-s} C) S(s) = finite(s) + q^{-s} sum_{nu >= 1}
// binom(-s, nu) sum_t c_t beta_t^nu S_{col_t}(s + nu).
template <class Real>
struct Problem {
  int q = 2;
  std::size_t dim = 0;
  RMat<Real> c_sum;
  std::vector<Coupling<Real>> couplings;
  Real beta_max = 1;
  std::int64_t start_min = 1;
  Real position_per_index = 1;
  double growth_exponent = 0;
  // Positions and values of all components at index n.
  std::function<void(std::int64_t, std::vector<Real>&, std::vector<Real>&)> terms;
};

// Scaled series S~(s) = b^s S(s), b the position of the first index.
template <class Real>
struct Solved {
  std::int64_t start = 0;
  Real scale = 1;
  int j_min = 0;
  int j_direct = 0;
  int series_terms = 0;
  double tail = 0;
  std::vector<CVec<Real>> values;  // S~(s + j), j >= j_min
  std::vector<CVec<Real>> finite;  // finite part at s + j, j < j_direct
  const CVec<Real>& at(int j) const { return values[static_cast<std::size_t>(j - j_min)]; }
};

template <class Real>
class Engine {
 public:
  using C = std::complex<Real>;

  Engine(const Problem<Real>& problem, const DirichletConfig& cfg) : p_(problem), cfg_(cfg) {}

  Solved<Real> solve(C s, int j_min) const {
    const Real tol = target_tolerance<Real>();
    const Real factor = std::max<Real>(static_cast<Real>(cfg_.window_factor), static_cast<Real>(p_.q));
    const int K = cfg_.series_truncation;

    Solved<Real> out;
    out.j_min = j_min;
    const Real b_req = p_.beta_max * (std::abs(s) + 40) / Real(1.5);
    out.start = std::max<std::int64_t>(p_.start_min,
                                       static_cast<std::int64_t>(std::ceil(b_req / p_.position_per_index)));
    out.scale = p_.position_per_index * static_cast<Real>(out.start);
    const Real b = out.scale;

    const Real needed = (std::log(1 / tol) + std::log(b * factor) + 2) / std::log(factor);
    const Real a = static_cast<Real>(p_.growth_exponent);
    out.j_direct = std::max(j_min, static_cast<int>(std::ceil(needed + a + 1 - s.real())));
    if (out.j_direct - j_min > cfg_.shift_depth) {
      throw Error(ErrorCode::DepthExceeded, "functional-equation depth " + std::to_string(out.j_direct - j_min) +
                                                " exceeds " + std::to_string(cfg_.shift_depth));
    }
    const auto end = static_cast<std::int64_t>(std::ceil(factor * static_cast<Real>(out.start)));
    if (end - out.start > cfg_.direct_sum_cutoff) {
      throw Error(ErrorCode::DepthExceeded, "direct window of " + std::to_string(end - out.start) +
                                                " indices exceeds the cutoff");
    }
    out.tail = static_cast<double>(
        std::exp(-(s.real() + out.j_direct - a - 1) * std::log(factor)) * b);

    const int j_top = out.j_direct + K;
    const auto d = p_.dim;
    out.values.assign(static_cast<std::size_t>(j_top - j_min + 1), CVec<Real>::Zero(static_cast<Eigen::Index>(d)));
    out.finite.assign(static_cast<std::size_t>(out.j_direct), CVec<Real>::Zero(static_cast<Eigen::Index>(d)));

    const std::int64_t finite_end = p_.q * out.start;
    std::vector<Real> pos(d), val(d);
    for (std::int64_t n = out.start; n < end; ++n) {
      p_.terms(n, pos, val);
      const int j0 = n < finite_end ? 0 : out.j_direct;
      for (std::size_t i = 0; i < d; ++i) {
        if (val[i] == 0) continue;
        const Real ratio = pos[i] / b;
        const Real inv = 1 / ratio;
        C z = std::exp(-(s + static_cast<Real>(j0)) * std::log(ratio)) * val[i];
        const auto ii = static_cast<Eigen::Index>(i);
        for (int j = j0; j <= j_top; ++j) {
          if (j < out.j_direct) {
            out.finite[static_cast<std::size_t>(j)](ii) += z;
          } else {
            out.values[static_cast<std::size_t>(j - j_min)](ii) += z;
          }
          z *= inv;
        }
      }
    }

    const Real log_q = std::log(static_cast<Real>(p_.q));
    const CMat<Real> c_sum = p_.c_sum.template cast<C>();
    const CMat<Real> id = CMat<Real>::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (int j = out.j_direct - 1; j >= j_min; --j) {
      const C sj = s + static_cast<Real>(j);
      const C qs = std::exp(-sj * log_q);
      CVec<Real> rhs = out.finite[static_cast<std::size_t>(j)] + qs * series_part(out, s, j);
      Eigen::PartialPivLU<CMat<Real>> lu(id - qs * c_sum);
      const Real rc = lu.rcond();
      if (!(rc * static_cast<Real>(cfg_.pole_condition_limit) > 1)) {
        throw Error(ErrorCode::NearPole, "I - q^{-s} C is singular to working precision at shift " +
                                             std::to_string(j));
      }
      out.values[static_cast<std::size_t>(j - j_min)] = lu.solve(rhs);
    }
    out.series_terms = max_terms_;
    return out;
  }

  // sum_{nu >= 1} binom(-(s+j), nu) sum_t c_t (beta_t / b)^nu S~_col(s + j + nu).
  CVec<Real> series_part(const Solved<Real>& solved, C s, int j) const {
    const Real tol = target_tolerance<Real>();
    const auto d = static_cast<Eigen::Index>(p_.dim);
    const int j_top = solved.j_min + static_cast<int>(solved.values.size()) - 1;
    const C sj = s + static_cast<Real>(j);
    CVec<Real> acc = CVec<Real>::Zero(d);
    C binom = 1;
    std::vector<Real> beta_pow(p_.couplings.size(), 1);
    const Real ref_floor = j < static_cast<int>(solved.finite.size())
                               ? solved.finite[static_cast<std::size_t>(j)].norm()
                               : Real(0);
    int quiet = 0;
    for (int nu = 1;; ++nu) {
      if (j + nu > j_top) {
        throw Error(ErrorCode::DepthExceeded, "binomial series did not converge within " +
                                                  std::to_string(cfg_.series_truncation) + " terms");
      }
      binom *= (-sj - static_cast<Real>(nu - 1)) / static_cast<Real>(nu);
      const auto& next = solved.at(j + nu);
      CVec<Real> term = CVec<Real>::Zero(d);
      for (std::size_t t = 0; t < p_.couplings.size(); ++t) {
        const auto& cp = p_.couplings[t];
        beta_pow[t] *= cp.beta / solved.scale;
        term(static_cast<Eigen::Index>(cp.row)) += cp.coeff * beta_pow[t] * next(static_cast<Eigen::Index>(cp.col));
      }
      term *= binom;
      acc += term;
      const Real ref = std::max({acc.norm(), ref_floor, std::numeric_limits<Real>::min()});
      quiet = term.norm() <= tol * ref ? quiet + 1 : 0;
      if (quiet >= 2) {
        max_terms_ = std::max(max_terms_, nu);
        return acc;
      }
    }
  }

 private:
  const Problem<Real>& p_;
  const DirichletConfig& cfg_;
  mutable int max_terms_ = 0;
};

template <class Real>
class VectorTable {
 public:
  explicit VectorTable(const LinearRepresentation& rep) : q_(rep.q), dim_(rep.dim()) {
    for (const auto& a : rep.matrices) mats_.push_back(to_eigen<Real>(a));
    data_.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) data_[i] = to_real<Real>(rep.v0[i]);
  }

  const Real* at(std::int64_t n) {
    const auto need = static_cast<std::size_t>(n + 1) * dim_;
    while (data_.size() < need) {
      const auto k = static_cast<std::int64_t>(data_.size() / dim_);
      const auto& a = mats_[static_cast<std::size_t>(k % q_)];
      const std::size_t parent = static_cast<std::size_t>(k / q_) * dim_;
      for (std::size_t i = 0; i < dim_; ++i) {
        Real acc = 0;
        for (std::size_t j = 0; j < dim_; ++j) acc += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * data_[parent + j];
        data_.push_back(acc);
      }
    }
    return data_.data() + static_cast<std::size_t>(n) * dim_;
  }

 private:
  int q_;
  std::size_t dim_;
  std::vector<RMat<Real>> mats_;
  std::vector<Real> data_;
};

QMatrix summed(const std::vector<QMatrix>& mats) {
  QMatrix out = mats.front();
  for (std::size_t r = 1; r < mats.size(); ++r) out = out + mats[r];
  return out;
}

double default_growth(const std::vector<QMatrix>& mats, int q) {
  JsrOptions opt;
  opt.k_max = 3;
  const auto bounds = jsr_bounds(mats, opt);
  return std::log(std::max(1.0, bounds.upper)) / std::log(static_cast<double>(q)) + 0.25;
}

template <class Real>
Problem<Real> rep_problem(const LinearRepresentation& rep, VectorTable<Real>& table, double growth) {
  if (rep.validity_offset > 0) {
    throw Error(ErrorCode::RepresentationHasOffset, "Dirichlet series need a representation valid from n = 0");
  }
  rep.check_shape();
  Problem<Real> p;
  p.q = rep.q;
  p.dim = rep.dim();
  p.c_sum = to_eigen<Real>(summed(rep.matrices));
  for (int r = 1; r < rep.q; ++r) {
    const auto& a = rep.matrices[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (a(i, k) != 0)
          p.couplings.push_back({i, k, to_real<Real>(a(i, k)), static_cast<Real>(r) / static_cast<Real>(rep.q)});
  }
  p.beta_max = static_cast<Real>(rep.q - 1) / static_cast<Real>(rep.q);
  p.start_min = rep.q;
  p.position_per_index = 1;
  p.growth_exponent = growth;
  const auto dim = p.dim;
  p.terms = [&table, dim](std::int64_t n, std::vector<Real>& pos, std::vector<Real>& val) {
    const Real* v = table.at(n);
    for (std::size_t i = 0; i < dim; ++i) {
      pos[i] = static_cast<Real>(n);
      val[i] = v[i];
    }
  };
  return p;
}

template <class Real>
class SpecialValues {
 public:
  explicit SpecialValues(const SequenceOracle& oracle) : oracle_(oracle) {}
  Real at(std::int64_t n) {
    while (static_cast<std::int64_t>(data_.size()) <= n)
      data_.push_back(to_real<Real>(oracle_.eval(static_cast<std::int64_t>(data_.size()))));
    return data_[static_cast<std::size_t>(n)];
  }

 private:
  const SequenceOracle& oracle_;
  std::vector<Real> data_;
};

template <class Real>
Problem<Real> special_problem(const QRecursiveDefinition& def, SpecialValues<Real>& values, std::int64_t eta,
                              double growth) {
  const auto blocks = special_blocks(def);
  const auto qm = ipow(def.q, def.m);
  Problem<Real> p;
  p.q = def.q;
  p.dim = static_cast<std::size_t>(qm);
  p.c_sum = to_eigen<Real>(summed(blocks));
  p.beta_max = 0;
  for (std::int64_t j = 0; j < qm; ++j)
    for (std::int64_t k = 0; k < qm; ++k)
      for (int mu = 0; mu < def.q; ++mu) {
        const auto& coeff = def.coeff(mu * qm + j, k);
        const Real beta = static_cast<Real>(mu * qm + j) / static_cast<Real>(def.q) - static_cast<Real>(k);
        if (coeff == 0 || beta == 0) continue;
        p.couplings.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(k), to_real<Real>(coeff), beta});
        p.beta_max = std::max(p.beta_max, std::abs(beta));
      }
  p.beta_max = std::max<Real>(p.beta_max, 1);
  p.start_min = std::max<std::int64_t>({eta, def.offset, 1});
  p.position_per_index = static_cast<Real>(qm);
  p.growth_exponent = growth;
  p.terms = [&values, qm](std::int64_t n, std::vector<Real>& pos, std::vector<Real>& val) {
    for (std::int64_t j = 0; j < qm; ++j) {
      pos[static_cast<std::size_t>(j)] = static_cast<Real>(qm * n + j);
      val[static_cast<std::size_t>(j)] = values.at(qm * n + j);
    }
  };
  return p;
}

template <class Real>
std::vector<std::complex<double>> to_double(const CVec<Real>& v) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out[static_cast<std::size_t>(i)] = {static_cast<double>(v(i).real()), static_cast<double>(v(i).imag())};
  return out;
}

template <class Real>
std::complex<Real> polished_eigenvalue(const QMatrix& c, const Eigenvalue& lambda) {
  if (lambda.exact) return to_real<Real>(*lambda.exact);
  const auto poly = characteristic_polynomial(c);
  const auto deriv = poly.derivative();
  std::complex<long double> x(lambda.value.real(), lambda.value.imag());
  for (int it = 0; it < 8; ++it) {
    const auto dp = deriv.evaluate(x);
    if (std::abs(dp) == 0) break;
    x -= poly.evaluate(x) / dp;
  }
  return {static_cast<Real>(x.real()), static_cast<Real>(x.imag())};
}

// u w^T / (w^T u) with u, w right and left null vectors of C - lambda I.
template <class Real>
CMat<Real> spectral_projector(const QMatrix& c, const Eigenvalue& lambda) {
  using C = std::complex<Real>;
  if (lambda.algebraic_multiplicity != 1) {
    throw Error(ErrorCode::NotSimpleEigenvalue, "eigenvalue has algebraic multiplicity " +
                                                    std::to_string(lambda.algebraic_multiplicity));
  }
  const auto d = static_cast<Eigen::Index>(c.rows());
  if (lambda.exact) {
    const QMatrix shifted = c - *lambda.exact * QMatrix::identity(c.rows());
    const auto right = nullspace(shifted);
    const auto left = nullspace(shifted.transpose());
    if (right.size() != 1 || left.size() != 1) {
      throw Error(ErrorCode::NotSimpleEigenvalue, "eigenspace is not one-dimensional");
    }
    const Rational norm = dot(left[0], right[0]);
    CMat<Real> p(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        p(i, j) = to_real<Real>(right[0][static_cast<std::size_t>(i)] * left[0][static_cast<std::size_t>(j)] / norm);
    return p;
  }
  const C lam = polished_eigenvalue<Real>(c, lambda);
  const CMat<Real> shifted = to_eigen<Real>(c).template cast<C>() - lam * CMat<Real>::Identity(d, d);
  Eigen::JacobiSVD<CMat<Real>> right(shifted, Eigen::ComputeFullV);
  Eigen::JacobiSVD<CMat<Real>> left(shifted.transpose().eval(), Eigen::ComputeFullV);
  const auto& sv = right.singularValues();
  if (d > 1 && sv(d - 2) < Real(1e-6) * std::max<Real>(1, sv(0))) {
    throw Error(ErrorCode::NotSimpleEigenvalue, "eigenspace is not one-dimensional");
  }
  const CVec<Real> u = right.matrixV().col(d - 1);
  const CVec<Real> w = left.matrixV().col(d - 1);
  const C norm = (w.transpose() * u)(0);
  return u * w.transpose() / norm;
}

template <class Real>
std::complex<Real> s_mu(std::complex<Real> lambda, int q, int mu) {
  const Real log_q = std::log(static_cast<Real>(q));
  return std::log(lambda) / log_q + std::complex<Real>(0, 2 * std::numbers::pi_v<Real> * mu / log_q);
}

template <class Real>
DirichletValue rep_dirichlet(const LinearRepresentation& rep, std::complex<double> s_in, const DirichletConfig& cfg) {
  VectorTable<Real> table(rep);
  const auto problem = rep_problem<Real>(rep, table, cfg.growth_exponent);
  const Engine<Real> engine(problem, cfg);
  const std::complex<Real> s(s_in.real(), s_in.imag());
  const auto solved = engine.solve(s, 0);
  CVec<Real> v = std::exp(-s * std::log(solved.scale)) * solved.at(0);
  for (std::int64_t n = 1; n < solved.start; ++n) {
    const Real* x = table.at(n);
    const auto w = std::exp(-s * std::log(static_cast<Real>(n)));
    for (std::size_t i = 0; i < rep.dim(); ++i) v(static_cast<Eigen::Index>(i)) += w * x[i];
  }
  DirichletValue out;
  out.value = to_double<Real>(v);
  out.series_start = solved.start;
  out.recursion_depth = solved.j_direct;
  out.series_terms = solved.series_terms;
  out.tail_estimate = solved.tail;
  return out;
}

template <class Real>
DirichletValue special_dirichlet(const QRecursiveDefinition& def, std::complex<double> s_in, std::int64_t eta,
                                 const DirichletConfig& cfg) {
  const SequenceOracle oracle(def);
  SpecialValues<Real> values(oracle);
  const auto problem = special_problem<Real>(def, values, eta, cfg.growth_exponent);
  const Engine<Real> engine(problem, cfg);
  const std::complex<Real> s(s_in.real(), s_in.imag());
  const auto solved = engine.solve(s, 0);
  CVec<Real> v = std::exp(-s * std::log(solved.scale)) * solved.at(0);
  const auto qm = ipow(def.q, def.m);
  for (std::int64_t n = std::max<std::int64_t>(eta, 0); n < solved.start; ++n)
    for (std::int64_t j = 0; j < qm; ++j) {
      const auto pos = qm * n + j;
      if (pos == 0) continue;
      v(static_cast<Eigen::Index>(j)) += std::exp(-s * std::log(static_cast<Real>(pos))) * values.at(pos);
    }
  DirichletValue out;
  out.value = to_double<Real>(v);
  out.series_start = solved.start;
  out.recursion_depth = solved.j_direct;
  out.series_terms = solved.series_terms;
  out.tail_estimate = solved.tail;
  return out;
}

// Residue of the scaled problem at s_mu, projected: P Y(s_mu) / log q.
template <class Real>
CVec<Real> residue(const Engine<Real>& engine, const Problem<Real>& problem, const CMat<Real>& projector,
                   std::complex<Real> s) {
  const auto solved = engine.solve(s, 1);
  const Real log_q = std::log(static_cast<Real>(problem.q));
  const auto qs = std::exp(-s * log_q);
  const CVec<Real> y = std::exp(-s * std::log(solved.scale)) *
                       (solved.finite[0] + qs * engine.series_part(solved, s, 0));
  return projector * y / log_q;
}

template <class Real>
FluctuationTable make_table(const QMatrix& c, const Eigenvalue& lambda, int q, int mu_min, int mu_max) {
  FluctuationTable table;
  const auto lam = polished_eigenvalue<Real>(c, lambda);
  table.eigenvalue = {static_cast<double>(lam.real()), static_cast<double>(lam.imag())};
  const auto expo = std::log(lam) / std::log(static_cast<Real>(q));
  table.exponent = {static_cast<double>(expo.real()), static_cast<double>(expo.imag())};
  table.mu_min = mu_min;
  table.mu_max = mu_max;
  return table;
}

template <class Real>
FluctuationTable rep_fourier(const LinearRepresentation& rep, const Eigenvalue& lambda, int mu_min, int mu_max,
                             const DirichletConfig& cfg) {
  VectorTable<Real> vt(rep);
  const auto problem = rep_problem<Real>(rep, vt, cfg.growth_exponent);
  const Engine<Real> engine(problem, cfg);
  const auto c = rep.matrix_sum();
  const auto projector = spectral_projector<Real>(c, lambda);
  auto table = make_table<Real>(c, lambda, rep.q, mu_min, mu_max);
  const auto lam = polished_eigenvalue<Real>(c, lambda);
  CVec<Real> sel(static_cast<Eigen::Index>(rep.dim()));
  for (std::size_t i = 0; i < rep.dim(); ++i) sel(static_cast<Eigen::Index>(i)) = to_real<Real>(rep.selection[i]);
  for (int mu = mu_min; mu <= mu_max; ++mu) {
    const auto s = s_mu<Real>(lam, rep.q, mu);
    const auto res = residue<Real>(engine, problem, projector, s);
    const std::complex<Real> phi = (sel.transpose() * res)(0) / s;
    table.coefficients.emplace_back(static_cast<double>(phi.real()), static_cast<double>(phi.imag()));
  }
  return table;
}

template <class Real>
FluctuationTable special_fourier(const QRecursiveDefinition& def, const Eigenvalue& lambda, std::int64_t eta,
                                 int mu_min, int mu_max, const DirichletConfig& cfg) {
  const SequenceOracle oracle(def);
  SpecialValues<Real> values(oracle);
  const auto problem = special_problem<Real>(def, values, eta, cfg.growth_exponent);
  const Engine<Real> engine(problem, cfg);
  const QMatrix c = summed(special_blocks(def));
  const auto projector = spectral_projector<Real>(c, lambda);
  auto table = make_table<Real>(c, lambda, def.q, mu_min, mu_max);
  const auto lam = polished_eigenvalue<Real>(c, lambda);
  for (int mu = mu_min; mu <= mu_max; ++mu) {
    const auto s = s_mu<Real>(lam, def.q, mu);
    const auto res = residue<Real>(engine, problem, projector, s);
    const std::complex<Real> phi = res.sum() / s;
    table.coefficients.emplace_back(static_cast<double>(phi.real()), static_cast<double>(phi.imag()));
  }
  return table;
}

enum class Precision { Double, LongDouble };

Precision precision_of(const DirichletConfig& cfg) {
  if (cfg.precision_digits <= 15) return Precision::Double;
  if (cfg.precision_digits <= 18) return Precision::LongDouble;
  throw Error(ErrorCode::UnsupportedPrecision,
              std::to_string(cfg.precision_digits) + " digits requested; at most 18 are available");
}

DirichletConfig with_growth(DirichletConfig cfg, const std::vector<QMatrix>& mats, int q) {
  if (std::isnan(cfg.growth_exponent)) cfg.growth_exponent = default_growth(mats, q);
  return cfg;
}

void check_mu_range(int mu_min, int mu_max) {
  if (mu_min > mu_max) throw Error(ErrorCode::ParseError, "empty mu range");
}

}  // namespace

std::complex<double> FluctuationTable::coefficient(int mu) const {
  if (!has(mu)) throw Error(ErrorCode::IndexRangeViolation, "mu = " + std::to_string(mu) + " not tabulated");
  return coefficients[static_cast<std::size_t>(mu - mu_min)];
}

DirichletValue dirichlet_eval(const LinearRepresentation& rep, std::complex<double> s, const DirichletConfig& cfg) {
  const auto c = with_growth(cfg, rep.matrices, rep.q);
  return precision_of(c) == Precision::Double ? rep_dirichlet<double>(rep, s, c)
                                              : rep_dirichlet<long double>(rep, s, c);
}

DirichletValue special_dirichlet_eval(const QRecursiveDefinition& def, std::complex<double> s, std::int64_t eta,
                                      const DirichletConfig& cfg) {
  const auto c = with_growth(cfg, special_blocks(def), def.q);
  return precision_of(c) == Precision::Double ? special_dirichlet<double>(def, s, eta, c)
                                              : special_dirichlet<long double>(def, s, eta, c);
}

FluctuationTable fourier_coefficients(const LinearRepresentation& rep, const Eigenvalue& lambda, int mu_min,
                                      int mu_max, const DirichletConfig& cfg) {
  check_mu_range(mu_min, mu_max);
  const auto c = with_growth(cfg, rep.matrices, rep.q);
  return precision_of(c) == Precision::Double ? rep_fourier<double>(rep, lambda, mu_min, mu_max, c)
                                              : rep_fourier<long double>(rep, lambda, mu_min, mu_max, c);
}

std::complex<double> fourier_limit_estimate(const LinearRepresentation& rep, const Eigenvalue& lambda, int mu,
                                            const DirichletConfig& cfg, double eps) {
  const auto c = with_growth(cfg, rep.matrices, rep.q);
  const auto lam = polished_eigenvalue<long double>(rep.matrix_sum(), lambda);
  const auto s = s_mu<long double>(lam, rep.q, mu);
  const std::complex<double> sd(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  const auto above = dirichlet_eval(rep, sd + eps, c).value;
  const auto below = dirichlet_eval(rep, sd - eps, c).value;
  std::complex<double> res = 0;
  for (std::size_t i = 0; i < rep.dim(); ++i)
    res += rep.selection[i].get_d() * eps * (above[i] - below[i]) / 2.0;
  return res / sd;
}

FluctuationTable special_fourier_coefficients(const QRecursiveDefinition& def, const Eigenvalue& lambda,
                                              std::int64_t eta, int mu_min, int mu_max,
                                              const DirichletConfig& cfg) {
  check_mu_range(mu_min, mu_max);
  const auto c = with_growth(cfg, special_blocks(def), def.q);
  return precision_of(c) == Precision::Double
             ? special_fourier<double>(def, lambda, eta, mu_min, mu_max, c)
             : special_fourier<long double>(def, lambda, eta, mu_min, mu_max, c);
}

double choose_R(const JsrBounds& jsr, const SpectrumReport& spec, double tolerance) {
  if (jsr.growth == GrowthStatus::Holds) return jsr.upper;
  for (const auto& ev : spec.eigenvalues) {
    if (std::abs(std::abs(ev.value) - jsr.upper) <= tolerance * std::max(1.0, jsr.upper)) {
      throw Error(ErrorCode::NoSeparation, "eigenvalue of modulus " + std::to_string(std::abs(ev.value)) +
                                               " meets the JSR bound without a growth certificate");
    }
  }
  return jsr.upper + tolerance;
}

namespace {

template <class TableFn>
AsymptoticExpansion assemble(int q, double R, const SpectrumReport& spec, int mu_max, TableFn&& table_for) {
  AsymptoticExpansion exp;
  exp.q = q;
  exp.error_exponent = std::log(R) / std::log(static_cast<double>(q));
  exp.error_log_power = spec.max_jordan_on_circle(R);
  for (const auto& ev : spec.eigenvalues) {
    if (std::abs(ev.value) <= R * (1 + 1e-9)) continue;
    const bool real_positive = ev.exact ? *ev.exact > 0 : (ev.value.imag() == 0 && ev.value.real() > 0);
    if (real_positive) {
      auto table = table_for(ev, 0, mu_max);
      std::vector<std::complex<double>> full;
      for (int mu = -mu_max; mu <= mu_max; ++mu)
        full.push_back(mu < 0 ? std::conj(table.coefficient(-mu)) : table.coefficient(mu));
      table.mu_min = -mu_max;
      table.coefficients = std::move(full);
      exp.terms.push_back(std::move(table));
    } else {
      exp.terms.push_back(table_for(ev, -mu_max, mu_max));
    }
  }
  return exp;
}

}  // namespace

AsymptoticExpansion assemble_expansion(const LinearRepresentation& rep, double R, const SpectrumReport& spec,
                                       int mu_max, const DirichletConfig& cfg) {
  const auto c = with_growth(cfg, rep.matrices, rep.q);
  return assemble(rep.q, R, spec, mu_max, [&](const Eigenvalue& ev, int lo, int hi) {
    return fourier_coefficients(rep, ev, lo, hi, c);
  });
}

AsymptoticExpansion assemble_special_expansion(const QRecursiveDefinition& def, double R,
                                               const SpectrumReport& b_sum_spec, std::int64_t eta, int mu_max,
                                               const DirichletConfig& cfg) {
  const auto c = with_growth(cfg, special_blocks(def), def.q);
  return assemble(def.q, R, b_sum_spec, mu_max, [&](const Eigenvalue& ev, int lo, int hi) {
    return special_fourier_coefficients(def, ev, eta, lo, hi, c);
  });
}

double fluctuation_value(const FluctuationTable& table, double u, int fourier_degree) {
  std::complex<double> acc = 0;
  const double two_pi = 2 * std::numbers::pi;
  for (int mu = -fourier_degree; mu <= fourier_degree; ++mu) {
    if (!table.has(mu)) continue;
    acc += table.coefficient(mu) * std::exp(std::complex<double>(0, two_pi * mu * u));
  }
  return acc.real();
}

double evaluate_expansion(const AsymptoticExpansion& exp, std::int64_t N, int fourier_degree) {
  const double log_n = std::log(static_cast<double>(N)) / std::log(static_cast<double>(exp.q));
  const double u = log_n - std::floor(log_n);
  std::complex<double> total = 0;
  const double two_pi = 2 * std::numbers::pi;
  for (const auto& term : exp.terms) {
    std::complex<double> fluct = 0;
    for (int mu = -fourier_degree; mu <= fourier_degree; ++mu) {
      if (!term.has(mu)) continue;
      fluct += term.coefficient(mu) * std::exp(std::complex<double>(0, two_pi * mu * u));
    }
    total += std::exp(term.exponent * std::log(static_cast<double>(N))) * fluct;
  }
  return total.real();
}

std::vector<std::pair<double, double>> empirical_fluctuation(const SequenceOracle& oracle, double kappa,
                                                             const std::vector<double>& u_grid, int q) {
  std::vector<std::pair<double, double>> out;
  if (u_grid.empty()) return out;
  const double u_max = *std::max_element(u_grid.begin(), u_grid.end());
  const auto n_max = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(q), u_max))) + 1;
  const auto sums = oracle.prefix_sums(n_max);
  for (const double u : u_grid) {
    const auto n = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(q), u)));
    out.emplace_back(u, sums[static_cast<std::size_t>(n)].get_d() / std::pow(static_cast<double>(q), kappa * u));
  }
  return out;
}

}  // namespace qrec
