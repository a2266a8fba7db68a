// qht — experiment runner.
//
//   qht <experiment> [--config file] [--set key=value ...] --out data.csv
//
// Writes data.csv, data.csv.schema.json and data.csv.manifest.json.  The CSV body is a
// pure function of the resolved configuration; the timestamp lives in the manifest only.

#include "qht/cft.hpp"
#include "qht/divergences.hpp"
#include "qht/fermion.hpp"
#include "qht/multicopy.hpp"
#include "qht/oneshot.hpp"
#include "qht/parallel.hpp"
#include "qht/perturbative.hpp"
#include "qht/qubit_lab.hpp"
#include "qht/random.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/version.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef QHT_VERSION
#define QHT_VERSION "0.0.0"
#endif

using nlohmann::json;
using namespace qht;

namespace {

enum class Kind { Real, Integer, Text };

struct Field {
  std::string name;
  Kind kind;
  std::string fallback;  // empty: required
  std::string doc;
  std::optional<double> lo, hi;  // inclusive bounds for numbers
};

struct Column {
  std::string name;
  Kind kind;
  std::string doc;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
};

class Params {
 public:
  std::map<std::string, std::string> raw;
  double real(const std::string& k) const { return std::stod(raw.at(k)); }
  long long integer(const std::string& k) const { return std::stoll(raw.at(k)); }
  const std::string& text(const std::string& k) const { return raw.at(k); }
};

struct Experiment {
  std::string name;
  std::string doc;
  std::vector<Field> fields;
  Table (*run)(const Params&);
};

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Real: return "real";
    case Kind::Integer: return "integer";
    default: return "text";
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& s, Kind kind, double& out) {
  try {
    std::size_t used = 0;
    if (kind == Kind::Integer) {
      out = static_cast<double>(std::stoll(s, &used));
    } else {
      out = std::stod(s, &used);
      if (!std::isfinite(out)) return false;
    }
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// experiments

Table run_qubit_compare(const Params& p) {
  const auto rows = comparison_experiment(p.real("theta"), p.real("p"), p.real("epsilon"),
                                          static_cast<int>(p.integer("n_max")));
  Table t;
  t.columns = {{"n", Kind::Integer, "number of copies"},
               {"beta_optimal", Kind::Real, "type II error of the optimal projector"},
               {"beta_classical", Kind::Real, "type II error of the likelihood-ratio projector"},
               {"alpha_optimal", Kind::Real, "type I error of the optimal projector"},
               {"alpha_classical", Kind::Real, "type I error of the likelihood-ratio projector"},
               {"dim_optimal", Kind::Real, "minimum acceptance dimension, optimal"},
               {"dim_classical", Kind::Real, "minimum acceptance dimension, likelihood ratio"},
               {"beta_ratio", Kind::Real, "beta_optimal / beta_classical"}};
  for (const auto& r : rows)
    t.rows.push_back({double(r.n), r.beta_opt, r.beta_lrt, r.alpha_opt, r.alpha_lrt, r.dim_opt,
                      r.dim_lrt, r.beta_lrt > 0 ? r.beta_opt / r.beta_lrt : NAN});
  return t;
}

Table run_perturbative_sweep(const Params& p) {
  const int samples = static_cast<int>(p.integer("samples"));
  const int lo = static_cast<int>(p.integer("dim_min")), hi = static_cast<int>(p.integer("dim_max"));
  Rng rng(static_cast<std::uint64_t>(p.integer("seed")));
  std::uniform_int_distribution<int> pick(lo, hi);
  std::vector<int> dims(samples);
  for (auto& d : dims) d = pick(rng);
  const auto reports = perturbative_ensemble(dims, rng(), p.integer("commuting") != 0,
                                             par::Exec::Parallel);
  Table t;
  t.columns = {{"index", Kind::Integer, "sample index"},
               {"dim", Kind::Integer, "Hilbert space dimension"},
               {"s2", Kind::Real, "second-order relative entropy coefficient"},
               {"v2", Kind::Real, "second-order variance coefficient"},
               {"fisher", Kind::Real, "SLD Fisher information"},
               {"ratio", Kind::Real, "v2 / s2"},
               {"min_ratio", Kind::Real, "running minimum of ratio"},
               {"commutator_norm", Kind::Real, "Frobenius norm of [sigma, rho1]"}};
  double running = INFINITY;
  for (int i = 0; i < samples; ++i) {
    const auto& r = reports[i];
    running = std::min(running, r.ratio);
    t.rows.push_back({double(i), double(dims[i]), r.s2, r.v2, r.fisher, r.ratio, running,
                      r.commutator_norm});
  }
  return t;
}

Table run_oneshot_qubit(const Params& p) {
  const BlochFourVector a{p.real("a_x"), p.real("a_y"), p.real("a_z"), 1.0};
  const BlochFourVector b{p.real("b_x"), p.real("b_y"), p.real("b_z"), 1.0};
  const DensityMatrix rho = state_of(a), sigma = state_of(b);
  const auto sym = symmetric_oneshot_qubit(rho, sigma);
  const int steps = static_cast<int>(p.integer("steps"));
  const double e0 = p.real("epsilon_min"), e1 = p.real("epsilon_max");
  Table t;
  t.columns = {{"epsilon", Kind::Real, "type I error budget"},
               {"beta_star", Kind::Real, "optimal type II error at that budget"},
               {"alpha", Kind::Real, "type I error attained by the Neyman-Pearson test"},
               {"t", Kind::Real, "multiplier of sigma in rho - t sigma"},
               {"gamma", Kind::Real, "weight on the kernel of rho - t sigma"},
               {"D_H", Kind::Real, "hypothesis-testing relative entropy, -log beta_star"},
               {"symmetric_error", Kind::Real, "(alpha + beta)/2 of the symmetric optimal test"},
               {"trace_distance", Kind::Real, "trace distance of the two states"}};
  const double td = trace_distance(rho, sigma);
  for (int k = 0; k < steps; ++k) {
    const double eps = steps == 1 ? e0 : e0 + (e1 - e0) * k / (steps - 1);
    const auto np = neyman_pearson(rho, sigma, eps);
    t.rows.push_back({eps, np.beta_star, np.alpha, np.t, np.gamma,
                      hypothesis_testing_relent(rho, sigma, eps), sym.combined_error, td});
  }
  return t;
}

Table run_fermion_xy(const Params& p) {
  const double b1 = p.real("beta1");
  const double b2_lo = p.real("beta2_min"), b2_hi = p.real("beta2_max");
  const int steps = static_cast<int>(p.integer("steps"));
  const int r = static_cast<int>(p.integer("r"));
  const int n = static_cast<int>(p.integer("n"));
  const double eps = p.real("epsilon");
  const std::vector<int> sites{0, r};
  const RMat c = xy_correlation(b1, sites);
  Table t;
  t.columns = {{"beta1", Kind::Real, "inverse temperature of sigma"},
               {"beta2", Kind::Real, "inverse temperature of rho"},
               {"r", Kind::Integer, "separation of the two sites"},
               {"S", Kind::Real, "relative entropy S(rho||sigma)"},
               {"V", Kind::Real, "relative entropy variance V(rho||sigma)"},
               {"angle", Kind::Real, "relative rotation angle of the two mode bases"},
               {"commuting", Kind::Integer, "1 when the modular Hamiltonians commute"},
               {"threshold", Kind::Real, "S + sqrt(V/n) * Phi^-1(epsilon)"}};
  for (int k = 0; k < steps; ++k) {
    const double b2 = steps == 1 ? b2_lo : b2_lo + (b2_hi - b2_lo) * k / (steps - 1);
    const RMat ct = xy_correlation(b2, sites);
    const double s = fermion_relative_entropy(c, ct);
    const double v = fermion_variance(c, ct);
    const auto setup = two_fermion_optimal_setup(c, ct);
    t.rows.push_back({b1, b2, double(r), s, v, setup.angle, setup.commuting ? 1.0 : 0.0,
                      s + std::sqrt(std::max(v, 0.0) / n) * normal_quantile(eps)});
  }
  return t;
}

Table run_cft_thermal(const Params& p) {
  const double c = p.real("c"), b1 = p.real("beta1"), b2 = p.real("beta2");
  const double x0 = p.real("x_min"), x1 = p.real("x_max");
  const int steps = static_cast<int>(p.integer("steps"));
  Table t;
  t.columns = {{"ell_over_beta1", Kind::Real, "interval length in units of beta1"},
               {"S_exact", Kind::Real, "exact relative entropy"},
               {"S_leading", Kind::Real, "small-interval leading term of S"},
               {"V_leading", Kind::Real, "small-interval leading term of V"},
               {"ratio", Kind::Real, "V_leading / S_leading"}};
  for (int k = 0; k < steps; ++k) {
    // log-spaced
    const double x = steps == 1 ? x0 : x0 * std::pow(x1 / x0, double(k) / (steps - 1));
    const CftThermalPair pair{c, x * b1, b1, b2};
    const auto lead = cft_small_interval(pair);
    t.rows.push_back({x, cft_relative_entropy(pair), lead.S_leading, lead.V_leading, lead.ratio});
  }
  return t;
}

Table run_circuit_verify(const Params& p) {
  const int n_max = static_cast<int>(p.integer("n_max"));
  const int trials = static_cast<int>(p.integer("trials"));
  Rng rng(static_cast<std::uint64_t>(p.integer("seed")));
  Table t;
  t.columns = {{"n", Kind::Integer, "number of pairs"},
               {"trial", Kind::Integer, "random unitary index"},
               {"nstar", Kind::Integer, "acceptance threshold on the register"},
               {"simulated", Kind::Real, "statevector acceptance probability"},
               {"reference", Kind::Real, "direct trace Tr rho_V^n P"},
               {"residual", Kind::Real, "|simulated - reference|"}};
  for (int n = 1; n <= n_max; ++n)
    for (int tr = 0; tr < trials; ++tr) {
      const Mat v = random_unitary(4, rng);
      for (int ns = 0; ns <= n + 1; ++ns) {
        const double a = simulate_lrt_circuit(v, n, ns), b = lrt_circuit_reference(v, n, ns);
        t.rows.push_back({double(n), double(tr), double(ns), a, b, std::abs(a - b)});
      }
    }
  return t;
}

Table run_stein_table(const Params& p) {
  std::optional<DensityMatrix> rho, sigma;
  if (!p.text("rho").empty()) rho = load_density_matrix(p.text("rho"));
  if (!p.text("sigma").empty()) sigma = load_density_matrix(p.text("sigma"));
  Rng rng(static_cast<std::uint64_t>(p.integer("seed")));
  const int dim = static_cast<int>(p.integer("dim"));
  if (!rho) rho = random_density(sigma ? sigma->dim() : dim, rng);
  if (!sigma) sigma = random_density(rho->dim(), rng);
  std::vector<int> ns;
  for (int n = 1; n <= p.integer("n_max"); ++n) ns.push_back(n);
  const auto mode = threshold_mode_from_string(p.text("mode"));
  const auto rows = stein_exponent_table(*rho, *sigma, p.real("epsilon"), ns, mode);
  const double s = relative_entropy(*rho, *sigma);
  Table t;
  t.columns = {{"n", Kind::Integer, "number of copies"},
               {"threshold", Kind::Real, "per-copy acceptance threshold"},
               {"alpha", Kind::Real, "type I error"},
               {"beta", Kind::Real, "type II error"},
               {"exponent", Kind::Real, "-(1/n) log beta"},
               {"min_acceptance_dimension", Kind::Real, "rank of the acceptance projector"},
               {"S", Kind::Real, "relative entropy S(rho||sigma)"}};
  for (const auto& r : rows)
    t.rows.push_back({double(r.n), r.threshold, r.alpha, r.beta, r.neg_log_beta_over_n,
                      r.min_acc_dim, s});
  return t;
}

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> list = {
      {"qubit-compare", "optimal vs likelihood-ratio projectors on a rotated qubit pair",
       {{"theta", Kind::Real, "1.0471975511965976", "rotation angle (rad)", {}, {}},
        {"p", Kind::Real, "0.015", "excited weight of sigma", 0.0, 1.0},
        {"epsilon", Kind::Real, "0.2", "type I error budget", 0.0, 1.0},
        {"n_max", Kind::Integer, "14", "largest number of copies", 1.0, 14.0}},
       run_qubit_compare},
      {"perturbative-sweep", "ratio v2/s2 over random perturbative families",
       {{"samples", Kind::Integer, "1000", "number of families", 1.0, 1e7},
        {"dim_min", Kind::Integer, "2", "smallest dimension", 2.0, 64.0},
        {"dim_max", Kind::Integer, "6", "largest dimension", 2.0, 64.0},
        {"commuting", Kind::Integer, "0", "1: perturbation commutes with sigma", 0.0, 1.0},
        {"seed", Kind::Integer, "1", "random seed", 0.0, {}}},
       run_perturbative_sweep},
      {"oneshot-qubit", "Neyman-Pearson and symmetric one-shot tests for two qubit states",
       {{"a_x", Kind::Real, "-0.3", "Bloch x of rho", -1.0, 1.0},
        {"a_y", Kind::Real, "0.3", "Bloch y of rho", -1.0, 1.0},
        {"a_z", Kind::Real, "0", "Bloch z of rho", -1.0, 1.0},
        {"b_x", Kind::Real, "0.5", "Bloch x of sigma", -1.0, 1.0},
        {"b_y", Kind::Real, "0", "Bloch y of sigma", -1.0, 1.0},
        {"b_z", Kind::Real, "0", "Bloch z of sigma", -1.0, 1.0},
        {"epsilon_min", Kind::Real, "0.01", "first epsilon", 0.0, 1.0},
        {"epsilon_max", Kind::Real, "0.5", "last epsilon", 0.0, 1.0},
        {"steps", Kind::Integer, "50", "number of epsilon values", 1.0, 1e6}},
       run_oneshot_qubit},
      {"fermion-xy", "two-site thermal XY chain: divergences versus beta2",
       {{"beta1", Kind::Real, "1", "inverse temperature of sigma", 0.0, {}},
        {"beta2_min", Kind::Real, "0.5", "first beta2", 0.0, {}},
        {"beta2_max", Kind::Real, "2", "last beta2", 0.0, {}},
        {"steps", Kind::Integer, "16", "number of beta2 values", 1.0, 1e5},
        {"r", Kind::Integer, "1", "site separation", 1.0, 1e4},
        {"n", Kind::Integer, "10", "copies used for the threshold column", 1.0, {}},
        {"epsilon", Kind::Real, "0.2", "type I error budget", 0.0, 1.0}},
       run_fermion_xy},
      {"cft-thermal", "thermal CFT interval: exact S and small-interval terms",
       {{"c", Kind::Real, "1", "central charge", 0.0, {}},
        {"beta1", Kind::Real, "1", "inverse temperature of sigma", 0.0, {}},
        {"beta2", Kind::Real, "2", "inverse temperature of rho", 0.0, {}},
        {"x_min", Kind::Real, "0.01", "smallest ell/beta1", 0.0, {}},
        {"x_max", Kind::Real, "1", "largest ell/beta1", 0.0, {}},
        {"steps", Kind::Integer, "25", "number of points (log-spaced)", 1.0, 1e6}},
       run_cft_thermal},
      {"circuit-verify", "statevector circuit vs direct trace",
       {{"n_max", Kind::Integer, "4", "largest number of pairs", 1.0, 7.0},
        {"trials", Kind::Integer, "20", "random unitaries per n", 1.0, 1e5},
        {"seed", Kind::Integer, "1", "random seed", 0.0, {}}},
       run_circuit_verify},
      {"stein-table", "per-n Stein exponents of the n-copy projector",
       {{"rho", Kind::Text, "", "JSON density matrix file (optional; random if empty)", {}, {}},
        {"sigma", Kind::Text, "", "JSON density matrix file (optional; random if empty)", {}, {}},
        {"dim", Kind::Integer, "2", "dimension of random states", 2.0, 16.0},
        {"epsilon", Kind::Real, "0.2", "type I error budget", 0.0, 1.0},
        {"n_max", Kind::Integer, "8", "largest number of copies", 1.0, 24.0},
        {"mode", Kind::Text, "optimal", "optimal | classical", {}, {}},
        {"seed", Kind::Integer, "1", "random seed", 0.0, {}}},
       run_stein_table},
  };
  return list;
}

// ---------------------------------------------------------------------------
// config

void read_config(const std::string& path, std::map<std::string, std::string>& kv,
                 std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back("config: cannot open '" + path + "'");
    return;
  }
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back(path + ":" + std::to_string(no) + ": expected key = value");
      continue;
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
}

std::vector<std::string> resolve(const Experiment& ex, std::map<std::string, std::string> kv,
                                 Params& out) {
  std::vector<std::string> errors;
  for (const auto& [k, v] : kv) {
    bool known = false;
    for (const auto& f : ex.fields) known = known || f.name == k;
    if (!known) errors.push_back("field '" + k + "': unknown for experiment " + ex.name);
  }
  for (const auto& f : ex.fields) {
    auto it = kv.find(f.name);
    std::string v = it != kv.end() ? it->second : f.fallback;
    if (f.kind != Kind::Text) {
      if (v.empty()) {
        errors.push_back("field '" + f.name + "': required");
        continue;
      }
      double x;
      if (!parse_number(v, f.kind, x)) {
        errors.push_back("field '" + f.name + "': expected " + kind_name(f.kind) + ", got '" + v + "'");
        continue;
      }
      if ((f.lo && x < *f.lo) || (f.hi && x > *f.hi)) {
        std::ostringstream os;
        os << "field '" << f.name << "': " << v << " outside [" << (f.lo ? std::to_string(*f.lo) : "-inf")
           << ", " << (f.hi ? std::to_string(*f.hi) : "inf") << "]";
        errors.push_back(os.str());
        continue;
      }
    }
    out.raw[f.name] = v;
  }
  return errors;
}

std::string format_cell(double x, Kind k) {
  char buf[64];
  if (k == Kind::Integer && std::isfinite(x))
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(x));
  else
    std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum hypothesis testing experiments"};
  std::vector<std::string> names;
  for (const auto& e : experiments()) names.push_back(e.name);

  std::string experiment, config, out;
  std::vector<std::string> sets;
  bool describe = false;
  app.add_option("experiment", experiment, "experiment to run")->required()->check(CLI::IsMember(names));
  app.add_option("--config", config, "flat key = value file");
  app.add_option("--set", sets, "key=value override (repeatable; wins over --config)");
  app.add_option("--out", out, "output CSV path");
  app.add_flag("--describe", describe, "print the experiment's fields and exit");
  CLI11_PARSE(app, argc, argv);

  const Experiment* ex = nullptr;
  for (const auto& e : experiments())
    if (e.name == experiment) ex = &e;

  if (describe) {
    std::cout << ex->name << ": " << ex->doc << "\n";
    for (const auto& f : ex->fields)
      std::cout << "  " << f.name << " (" << kind_name(f.kind) << ", default '" << f.fallback
                << "'): " << f.doc << "\n";
    return 0;
  }

  std::vector<std::string> errors;
  if (out.empty()) errors.push_back("--out: required");
  std::map<std::string, std::string> kv;
  if (!config.empty()) read_config(config, kv, errors);
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      errors.push_back("--set '" + s + "': expected key=value");
      continue;
    }
    kv[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
  }
  Params params;
  for (auto& e : resolve(*ex, kv, params)) errors.push_back(std::move(e));
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << "qht: " << e << "\n";
    return 2;
  }

  Table table;
  try {
    table = ex->run(params);
  } catch (const BudgetExceeded& e) {
    std::cerr << "qht: budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "qht: " << e.what() << "\n";
    return 1;
  }

  std::ofstream csv(out);
  if (!csv) {
    std::cerr << "qht: cannot write '" << out << "'\n";
    return 1;
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    csv << (i ? "," : "") << table.columns[i].name;
  csv << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      csv << (i ? "," : "") << format_cell(row[i], table.columns[i].kind);
    csv << "\n";
  }

  json schema;
  schema["experiment"] = ex->name;
  schema["columns"] = json::array();
  for (const auto& c : table.columns)
    schema["columns"].push_back({{"name", c.name}, {"type", kind_name(c.kind)}, {"description", c.doc}});
  std::ofstream(out + ".schema.json") << schema.dump(2) << "\n";

  json manifest;
  manifest["experiment"] = ex->name;
  manifest["config"] = params.raw;
  if (params.raw.count("seed")) manifest["seed"] = std::stoll(params.raw.at("seed"));
  manifest["rows"] = table.rows.size();
  manifest["versions"] = {{"qht", QHT_VERSION},
                          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                        std::to_string(EIGEN_MINOR_VERSION)},
                          {"boost", BOOST_LIB_VERSION}};
  manifest["threads"] = par::max_threads();
  manifest["timestamp"] = utc_now();
  std::ofstream(out + ".manifest.json") << manifest.dump(2) << "\n";
  return 0;
}
