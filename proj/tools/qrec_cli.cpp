#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qrec/qrec.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qrec;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

double rounded(double x) { return std::stod(fmt(x)); }

std::string fmt(std::complex<double> z) {
  if (z.imag() == 0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

// A catalog entry, a definition file or a representation JSON file.
struct Input {
  std::string name;
  std::optional<CatalogEntry> entry;
  std::optional<QRecursiveDefinition> definition;
  std::optional<LinearRepresentation> representation;
};

bool is_special_shape(const QRecursiveDefinition& def) {
  return def.M == def.m + 1 && def.ell == 0 && def.u == ipow(def.q, def.m) - 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("input", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Input load_input(const std::string& arg) {
  Input in;
  in.name = arg;
  if (!std::filesystem::exists(arg)) {
    in.entry = catalog_entry(arg);
    in.definition = in.entry->definition;
    return in;
  }
  const auto text = read_file(arg);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    in.representation = representation_from_json(text);
  else
    in.definition = validate_definition(parse_definition(text));
  return in;
}

const QRecursiveDefinition& need_definition(const Input& in) {
  if (!in.definition) throw Error(ErrorCode::ParseError, in.name + " is a representation, a definition is needed");
  return *in.definition;
}

bool use_special(const Input& in, bool flag) {
  if (in.entry && !flag) return in.entry->special;
  return flag;
}

LinearRepresentation raw_rep(const Input& in, bool special) {
  if (in.representation) return *in.representation;
  const auto& def = need_definition(in);
  return use_special(in, special) ? build_special(def) : build_general(def);
}

LinearRepresentation corrected_rep(const Input& in, bool special) {
  if (in.representation) {
    if (in.representation->validity_offset > 0)
      throw Error(ErrorCode::RepresentationHasOffset, "offset correction needs the defining sequence");
    return *in.representation;
  }
  const SequenceOracle oracle(need_definition(in));
  return correct_offset(raw_rep(in, special), oracle);
}

void print_rep(const LinearRepresentation& rep, bool matrices, std::ostream& out) {
  out << "dimension " << rep.dim() << "\n";
  out << "offset " << rep.validity_offset << "\n";
  if (!rep.labels.empty()) {
    out << "labels";
    for (const auto& l : rep.labels) out << " " << to_string(l);
    out << "\n";
  }
  if (!matrices) return;
  for (std::size_t r = 0; r < rep.matrices.size(); ++r) out << "A" << r << " =\n" << to_string(rep.matrices[r]) << "\n";
  out << "v(0) = " << to_string(rep.v0) << "\n";
  out << "selection = " << to_string(rep.selection) << "\n";
}

std::pair<int, int> parse_mu(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--mu", "expected A..B, got " + text);
  }
}

QMatrix parse_matrix(const std::string& text) {
  // Rows separated by ';', entries by ','.
  std::vector<std::vector<Rational>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    rows.emplace_back();
    std::stringstream es(row);
    std::string entry;
    while (std::getline(es, entry, ',')) rows.back().push_back(parse_rational(entry));
  }
  return QMatrix::from_rows(rows);
}

QMatrix block_sum(const QRecursiveDefinition& def) {
  const auto blocks = special_blocks(def);
  QMatrix sum = blocks[0];
  for (std::size_t r = 1; r < blocks.size(); ++r) sum = sum + blocks[r];
  return sum;
}

struct Analysis {
  LinearRepresentation rep;
  SpectrumReport spec;
  JsrBounds jsr;
  double R = 0;
  bool special = false;
};

std::vector<QMatrix> jsr_matrices(const Input& in, const LinearRepresentation& rep, bool special) {
  if (in.entry) return catalog_jsr_matrices(*in.entry);
  if (in.definition && special) return special_blocks(*in.definition);
  return rep.matrices;
}

JsrOptions jsr_options(const Input& in) { return in.entry ? in.entry->jsr_hint : JsrOptions{}; }

Analysis analyse(const Input& in, bool special_flag, bool via_special) {
  Analysis a;
  a.special = via_special;
  const bool special = use_special(in, special_flag);
  a.rep = corrected_rep(in, special);
  a.jsr = jsr_bounds(jsr_matrices(in, a.rep, special), jsr_options(in));
  a.spec = spectrum(via_special ? block_sum(need_definition(in)) : a.rep.matrix_sum());
  a.R = choose_R(a.jsr, a.spec);
  return a;
}

json table_json(const FluctuationTable& t) {
  json out;
  out["eigenvalue"] = {{"real", rounded(t.eigenvalue.real())}, {"imag", rounded(t.eigenvalue.imag())}};
  out["exponent"] = {{"real", rounded(t.exponent.real())}, {"imag", rounded(t.exponent.imag())}};
  out["coefficients"] = json::array();
  for (int mu = t.mu_min; mu <= t.mu_max; ++mu) {
    const auto c = t.coefficient(mu);
    out["coefficients"].push_back({{"mu", mu}, {"real", rounded(c.real())}, {"imag", rounded(c.imag())}});
  }
  return out;
}

struct Options {
  std::string input;
  std::string second;
  std::int64_t index = 0;
  bool json_out = false;
  std::string csv;
  std::string mu = "0..10";
  int degree = 50;
  std::int64_t nmax = 1000;
  int precision = 15;
  bool offset_correct = false;
  bool minimize_rep = false;
  bool special = false;
  bool print_matrices = false;
  std::string norm;
  int k_max = 0;
  std::string scaling;
  double u_min = 0, u_max = 0, u_step = 0.01;
  std::int64_t eta = 0;
  bool export_def = false;
};

DirichletConfig dirichlet_config(const Options& o) {
  DirichletConfig cfg;
  cfg.precision_digits = o.precision;
  return cfg;
}

std::ostream* csv_stream(const Options& o, std::ofstream& file) {
  if (o.csv == "-") return &std::cout;
  file.open(o.csv);
  if (!file) throw CLI::ValidationError("--csv", "cannot write " + o.csv);
  return &file;
}

std::vector<FluctuationTable> fourier_tables(const Input& in, const Options& o, int lo, int hi) {
  const bool via_special = o.special;
  const auto a = analyse(in, o.special, via_special);
  const auto cfg = dirichlet_config(o);
  std::vector<FluctuationTable> tables;
  for (const auto& ev : a.spec.eigenvalues) {
    if (std::abs(ev.value) <= a.R * (1 + 1e-9)) continue;
    if (via_special) {
      const auto eta = o.eta > 0 ? o.eta : (in.entry ? in.entry->eta : std::max<std::int64_t>(1, in.definition->offset));
      tables.push_back(special_fourier_coefficients(*in.definition, ev, eta, lo, hi, cfg));
    } else {
      tables.push_back(fourier_coefficients(a.rep, ev, lo, hi, cfg));
    }
  }
  return tables;
}

int run(const std::string& verb, const Options& o) {
  std::ostream& out = std::cout;
  if (verb == "catalog") {
    if (o.input.empty()) {
      json list = json::array();
      for (const auto& e : catalog()) {
        if (o.json_out) {
          json c = json::object();
          for (const auto& [k, v] : e.constants) c[k] = rounded(v);
          list.push_back({{"name", e.name}, {"description", e.description}, {"constants", c}});
        } else {
          out << e.name << "  " << e.description << "\n";
        }
      }
      if (o.json_out) out << list.dump(2) << "\n";
      return 0;
    }
    const auto& e = catalog_entry(o.input);
    if (o.export_def) {
      out << format_definition(e.definition);
      return 0;
    }
    out << e.name << ": " << e.description << "\n";
    out << "construction " << (e.special ? "special" : "general") << "\n";
    for (const auto& [k, v] : e.constants) out << k << " " << fmt(v) << "\n";
    return 0;
  }
  if (verb == "validate") {
    const auto in = load_input(o.input);
    if (in.representation) {
      in.representation->check_shape();
      out << "valid representation of dimension " << in.representation->dim() << "\n";
    } else {
      out << "valid definition\n";
    }
    return 0;
  }
  if (verb == "disentangle") {
    out << format_definition(disentangle(load_identities(o.input)));
    return 0;
  }

  const auto in = load_input(o.input);
  if (verb == "eval" || verb == "sum") {
    if (o.index < 0) throw Error(ErrorCode::IndexRangeViolation, "index must be non-negative");
    Rational value;
    if (in.definition) {
      const SequenceOracle oracle(*in.definition);
      value = verb == "eval" ? oracle.eval(o.index) : oracle.summatory(o.index);
    } else {
      value = 0;
      if (verb == "eval") {
        value = rep_eval(*in.representation, o.index);
      } else {
        for (std::int64_t n = 0; n < o.index; ++n) value += rep_eval(*in.representation, n);
      }
    }
    out << to_string(value) << "\n";
    return 0;
  }
  if (verb == "build-rep" || verb == "offset-correct" || verb == "minimize") {
    const bool special = use_special(in, o.special);
    LinearRepresentation rep = raw_rep(in, o.special);
    std::optional<MinimizationReport> report;
    if (verb == "offset-correct" || o.offset_correct || verb == "minimize" || o.minimize_rep)
      rep = corrected_rep(in, special);
    if (verb == "minimize" || o.minimize_rep) {
      auto [small, r] = minimize(rep);
      rep = std::move(small);
      report = r;
    }
    if (o.json_out) {
      out << representation_to_json(rep) << "\n";
      return 0;
    }
    if (report) out << "minimized " << report->input_dim << " -> " << report->output_dim << "\n";
    if (special && in.definition && o.print_matrices) {
      const auto blocks = special_blocks(*in.definition);
      for (std::size_t r = 0; r < blocks.size(); ++r) out << "B" << r << " =\n" << to_string(blocks[r]) << "\n";
    }
    print_rep(rep, o.print_matrices, out);
    return 0;
  }
  if (verb == "spectrum") {
    SpectrumReport spec;
    if (o.special) {
      spec = spectrum(block_sum(need_definition(in)));
    } else {
      spec = spectrum(corrected_rep(in, false).matrix_sum());
    }
    if (o.json_out) {
      json list = json::array();
      for (const auto& ev : spec.eigenvalues) {
        json e = {{"real", rounded(ev.value.real())},
                  {"imag", rounded(ev.value.imag())},
                  {"algebraic_multiplicity", ev.algebraic_multiplicity},
                  {"jordan_size", ev.jordan_size}};
        if (ev.exact) e["exact"] = to_string(*ev.exact);
        list.push_back(e);
      }
      out << json{{"characteristic_polynomial_degree", spec.char_poly.degree()}, {"eigenvalues", list}}.dump(2) << "\n";
      return 0;
    }
    for (const auto& ev : spec.eigenvalues)
      out << fmt(ev.value) << "  multiplicity " << ev.algebraic_multiplicity << "  jordan " << ev.jordan_size << "\n";
    return 0;
  }
  if (verb == "jsr") {
    const bool special = use_special(in, o.special);
    const auto rep = corrected_rep(in, special);
    auto opts = jsr_options(in);
    if (!o.norm.empty()) {
      if (o.norm == "row") opts.norm = NormKind::RowSum;
      else if (o.norm == "column") opts.norm = NormKind::ColumnSum;
      else if (o.norm == "spectral") opts.norm = NormKind::Spectral;
      else throw CLI::ValidationError("--norm", "row, column or spectral");
    }
    if (o.k_max > 0) opts.k_max = o.k_max;
    if (!o.scaling.empty()) opts.scaling = parse_matrix(o.scaling);
    const auto b = jsr_bounds(jsr_matrices(in, rep, special), opts);
    if (o.json_out) {
      json j = {{"lower", rounded(b.lower)}, {"upper", rounded(b.upper)}, {"depth", b.depth},
                {"norm", to_string(b.norm)}, {"scaled", b.scaled}, {"growth", to_string(b.growth)}};
      j["certificate"] = b.finiteness_certificate ? json(*b.finiteness_certificate) : json(nullptr);
      out << j.dump(2) << "\n";
      return 0;
    }
    out << "lower " << fmt(b.lower) << "\nupper " << fmt(b.upper) << "\ndepth " << b.depth << "\nnorm "
        << to_string(b.norm) << (b.scaled ? " (scaled)" : "") << "\ngrowth " << to_string(b.growth) << "\n";
    if (b.finiteness_certificate) {
      out << "certificate";
      for (const int d : *b.finiteness_certificate) out << " " << d;
      out << "\n";
    }
    return 0;
  }
  if (verb == "fourier") {
    const auto [lo, hi] = parse_mu(o.mu);
    const auto tables = fourier_tables(in, o, lo, hi);
    if (!o.csv.empty()) {
      std::ofstream file;
      auto* csv = csv_stream(o, file);
      *csv << "eigenvalue,mu,real,imag\n";
      for (const auto& t : tables)
        for (int mu = t.mu_min; mu <= t.mu_max; ++mu)
          *csv << fmt(t.eigenvalue.real()) << "," << mu << "," << fmt(t.coefficient(mu).real()) << ","
               << fmt(t.coefficient(mu).imag()) << "\n";
      if (o.csv == "-") return 0;
    }
    if (o.json_out) {
      json list = json::array();
      for (const auto& t : tables) list.push_back(table_json(t));
      out << json{{"terms", list}}.dump(2) << "\n";
      return 0;
    }
    for (const auto& t : tables) {
      out << "eigenvalue " << fmt(t.eigenvalue) << "  exponent " << fmt(t.exponent) << "\n";
      for (int mu = t.mu_min; mu <= t.mu_max; ++mu) out << mu << "  " << fmt(t.coefficient(mu)) << "\n";
    }
    return 0;
  }
  if (verb == "asymptotics" || verb == "fluctuation") {
    const auto a = analyse(in, o.special, o.special);
    const auto cfg = dirichlet_config(o);
    AsymptoticExpansion exp;
    if (o.special) {
      const auto eta = o.eta > 0 ? o.eta : (in.entry ? in.entry->eta : std::max<std::int64_t>(1, in.definition->offset));
      exp = assemble_special_expansion(*in.definition, a.R, a.spec, eta, o.degree, cfg);
      exp.error_log_power = a.spec.max_jordan_on_circle(a.R);
    } else {
      exp = assemble_expansion(a.rep, a.R, a.spec, o.degree, cfg);
    }
    if (verb == "asymptotics") {
      if (o.json_out) {
        json terms = json::array();
        for (const auto& t : exp.terms) terms.push_back(table_json(t));
        out << json{{"R", rounded(a.R)},
                    {"jsr_growth", to_string(a.jsr.growth)},
                    {"error_exponent", rounded(exp.error_exponent)},
                    {"error_log_power", exp.error_log_power},
                    {"terms", terms}}
                   .dump(2)
            << "\n";
        return 0;
      }
      out << "R " << fmt(a.R) << " (growth " << to_string(a.jsr.growth) << ")\n";
      for (const auto& t : exp.terms)
        out << "N^" << fmt(t.exponent) << " * Phi(frac(log_" << exp.q << " N)), eigenvalue " << fmt(t.eigenvalue)
            << ", phi_0 = " << fmt(t.coefficient(0)) << "\n";
      out << "error O(N^" << fmt(exp.error_exponent);
      if (exp.error_log_power > 0) out << " (log N)^" << exp.error_log_power;
      out << ")\n";
      return 0;
    }
    if (exp.terms.empty()) throw Error(ErrorCode::NoSeparation, "no eigenvalue above R, nothing fluctuates");
    const double kappa = exp.terms.front().exponent.real();
    const double u_min = o.u_max > o.u_min ? o.u_min : 0;
    const double u_max = o.u_max > o.u_min ? o.u_max : std::log(static_cast<double>(o.nmax)) / std::log(static_cast<double>(exp.q));
    std::vector<double> grid;
    for (int i = 0;; ++i) {
      const double u = u_min + i * o.u_step;
      if (u > u_max + 1e-12) break;
      grid.push_back(u);
    }
    const SequenceOracle oracle(need_definition(in));
    const auto points = empirical_fluctuation(oracle, kappa, grid, exp.q);
    std::ofstream file;
    auto* csv = o.csv.empty() ? &out : csv_stream(o, file);
    *csv << "u,empirical,fourier_partial_sum\n";
    for (const auto& [u, value] : points)
      *csv << fmt(u) << "," << fmt(value) << "," << fmt(fluctuation_value(exp.terms.front(), u - std::floor(u), o.degree))
           << "\n";
    return 0;
  }
  throw CLI::ValidationError("verb", "unknown verb " + verb);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-recursive and q-regular sequences: representations, spectra and asymptotics", "qrec"};
  app.require_subcommand(1);
  Options o;
  std::string verb;

  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&verb, name] { verb = name; });
    return sub;
  };
  auto input = [&](CLI::App* sub, bool required = true) {
    sub->add_option("input", o.input, "catalog name or file")->required(required);
  };
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.json_out, "JSON output"); };
  auto special_flag = [&](CLI::App* sub) {
    sub->add_flag("--special", o.special, "use the special construction (M = m + 1, l = 0, u = q^m - 1)");
  };

  auto* cat = add("catalog", "list catalog entries or describe one");
  input(cat, false);
  json_flag(cat);
  cat->add_flag("--export", o.export_def, "print the entry's definition file");

  for (const auto& [name, help] : {std::pair{"eval", "x(n)"}, std::pair{"sum", "X(N) = sum of x(n) for n < N"}}) {
    auto* sub = add(name, help);
    input(sub);
    sub->add_option("n", o.index, "index")->required();
  }

  for (const auto& [name, help] :
       {std::pair{"build-rep", "linear representation from a definition"},
        std::pair{"offset-correct", "representation valid from n = 0"},
        std::pair{"minimize", "minimal representation"}}) {
    auto* sub = add(name, help);
    input(sub);
    json_flag(sub);
    special_flag(sub);
    sub->add_flag("--print-matrices", o.print_matrices, "print matrices and vectors");
    sub->add_flag("--offset-correct", o.offset_correct, "append delta components so the result holds from 0");
    sub->add_flag("--minimize", o.minimize_rep, "minimize after building");
  }

  auto* spec = add("spectrum", "eigenvalues of A_0 + ... + A_{q-1}");
  input(spec);
  json_flag(spec);
  special_flag(spec);

  auto* jsr = add("jsr", "joint spectral radius bounds");
  input(jsr);
  json_flag(jsr);
  special_flag(jsr);
  jsr->add_option("--norm", o.norm, "row, column or spectral");
  jsr->add_option("--k", o.k_max, "longest product length");
  jsr->add_option("--scaling", o.scaling, "similarity T as rows 'a,b;c,d'");

  auto dirichlet_opts = [&](CLI::App* sub) {
    special_flag(sub);
    sub->add_option("--precision", o.precision, "working precision in decimal digits");
    sub->add_option("--eta", o.eta, "first block index of the special Dirichlet series");
  };
  auto* four = add("fourier", "Fourier coefficients of the fluctuations");
  input(four);
  json_flag(four);
  dirichlet_opts(four);
  four->add_option("--mu", o.mu, "range A..B");
  four->add_option("--csv", o.csv, "write CSV to PATH ('-' for stdout)");

  auto* asym = add("asymptotics", "asymptotic expansion of the summatory function");
  input(asym);
  json_flag(asym);
  dirichlet_opts(asym);
  asym->add_option("--degree", o.degree, "Fourier degree");

  auto* fl = add("fluctuation", "empirical fluctuation against the Fourier partial sum (CSV)");
  input(fl);
  dirichlet_opts(fl);
  fl->add_option("--degree", o.degree, "Fourier degree");
  fl->add_option("--nmax", o.nmax, "largest N when no u range is given");
  fl->add_option("--umin", o.u_min, "grid start");
  fl->add_option("--umax", o.u_max, "grid end");
  fl->add_option("--step", o.u_step, "grid step")->check(CLI::PositiveNumber);
  fl->add_option("--csv", o.csv, "write CSV to PATH ('-' for stdout)");

  auto* val = add("validate", "check a definition or representation file");
  input(val);
  auto* dis = add("disentangle", "solve recurrence identities into a definition");
  input(dis);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run(verb, o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}
