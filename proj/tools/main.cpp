// betadim: frequency-set dimensions, word counts, and measure entropy for
// binary beta-shifts, with reproducible text/CSV/JSON output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "betadim/dimension.hpp"
#include "betadim/expansion.hpp"
#include "betadim/follower_graph.hpp"
#include "betadim/markov.hpp"
#include "betadim/verify.hpp"

namespace {

using namespace betadim;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

struct GlobalOpts {
  std::string format = "text";
  double tol = 1e-12;
  std::uint64_t seed = 20260819;
  int n_max = 5000;
};

// one beta spec per invocation: --pseudo-golden M | --golden | --beta V |
// --integer B
struct BetaFlags {
  int pseudo_golden = 0;
  bool golden = false;
  double beta_value = 0.0;
  int integer_base = 0;

  void attach(CLI::App* sub) {
    sub->add_option("--pseudo-golden", pseudo_golden,
                    "order m of the root of x^m = x^{m-1} + ... + 1")
        ->check(CLI::Range(2, 64));
    sub->add_flag("--golden", golden, "golden ratio (order-2 root)");
    sub->add_option("--beta", beta_value, "explicit base in (1,2]");
    sub->add_option("--integer", integer_base, "integer base (2 supported)");
  }

  BetaSystem resolve() const {
    int n = (pseudo_golden != 0) + (golden ? 1 : 0) + (beta_value != 0.0) +
            (integer_base != 0);
    if (n != 1)
      throw std::invalid_argument(
          "specify exactly one of --pseudo-golden, --golden, --beta, --integer");
    if (pseudo_golden != 0) return BetaSystem::pseudo_golden(pseudo_golden);
    if (golden) return BetaSystem::golden();
    if (integer_base != 0) return BetaSystem::integer(integer_base);
    return BetaSystem::from_beta(beta_value);
  }
};

bool certified(const BetaSystem& sys) {
  return sys.is_pseudo_golden() || (sys.is_integer && sys.alphabet_max == 1);
}

int run_expand(const GlobalOpts& g, const BetaSystem& sys, double x, int digits) {
  DigitWord w = greedy_expand(x, sys, digits);
  double residual = std::fabs(project(w, sys) - x);
  if (g.format == "json") {
    nlohmann::json j;
    j["digits"] = w.str();
    j["residual"] = residual;
    std::cout << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    std::cout << "digits,residual\n" << w.str() << ',' << fmt12(residual) << '\n';
  } else {
    std::cout << w.str() << '\n';
    std::cout << "residual = " << fmt12(residual) << '\n';
  }
  return 0;
}

int run_beta(const GlobalOpts& g, const BetaSystem& sys) {
  std::string kind = sys.is_integer ? "integer"
                     : sys.is_pseudo_golden()
                         ? (*sys.pseudo_golden_order == 2 ? "golden" : "pseudo-golden")
                         : "generic";
  std::string eps = expand_one(sys, 32).digits.str();
  std::string qg = quasi_greedy_one(sys, 32).str();
  if (g.format == "json") {
    nlohmann::json j;
    j["beta"] = sys.beta;
    j["kind"] = kind;
    if (sys.is_pseudo_golden()) j["order"] = *sys.pseudo_golden_order;
    if (sys.finite_length) j["expansion_length"] = *sys.finite_length;
    j["expansion_of_one"] = eps;
    j["quasi_greedy"] = qg;
    std::cout << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    std::cout << "field,value\n";
    std::cout << "beta," << fmt15(sys.beta) << '\n';
    std::cout << "kind," << kind << '\n';
    if (sys.finite_length)
      std::cout << "expansion_length," << *sys.finite_length << '\n';
    std::cout << "expansion_of_one," << eps << '\n';
    std::cout << "quasi_greedy," << qg << '\n';
  } else {
    std::cout << "beta = " << fmt15(sys.beta) << '\n';
    std::cout << "kind = " << kind << '\n';
    if (sys.finite_length)
      std::cout << "expansion of 1 terminates after " << *sys.finite_length
                << " digits\n";
    std::cout << "expansion of 1 = " << eps << "...\n";
    std::cout << "quasi-greedy   = " << qg << "...\n";
  }
  return 0;
}

int run_dim(const GlobalOpts& g, const BetaSystem& sys,
            const std::vector<double>& a_values) {
  for (double a : a_values)
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument("dim: a must lie in [0,1]");

  Spectrum sp;
  sp.sys = sys;
  if (certified(sys)) {
    sp = spectrum(sys, a_values,
                  a_values.size() > 8 ? ExecPolicy::parallel : ExecPolicy::serial);
  } else {
    // no closed form for this base: thermodynamic oracle, flagged as such
    std::cerr << "warning: base " << fmt15(sys.beta)
              << " has no certified formula; using the pressure method\n";
    FollowerGraph graph = build_follower_graph(sys);
    for (double a : a_values) {
      SpectrumRow row;
      row.a = a;
      PressureResult pr = dim_via_pressure(graph, a);
      row.result.dim = pr.dim;
      row.result.method = DimResult::Method::pressure;
      row.result.empty_set = false;
      if (pr.boundary) row.result.kkt_residual = std::nan("");
      sp.rows.push_back(row);
    }
  }

  if (g.format == "json") {
    std::cout << spectrum_to_json(sp) << '\n';
  } else if (g.format == "csv") {
    spectrum_to_csv(sp, std::cout);
  } else {
    for (const auto& row : sp.rows) {
      std::cout << "a=" << fmt12(row.a) << "  dim=" << fmt12(row.result.dim)
                << "  method=" << method_name(row.result.method);
      if (row.result.empty_set) std::cout << "  empty_set";
      if (!row.result.argmax.empty()) {
        std::cout << "  argmax=";
        for (std::size_t k = 0; k < row.result.argmax.size(); ++k) {
          if (k) std::cout << ',';
          std::cout << fmt12(row.result.argmax[k]);
        }
      }
      if (row.result.cross_check_delta >= 0.0)
        std::cout << "  cross_check_delta=" << fmt12(row.result.cross_check_delta);
      std::cout << '\n';
    }
    if (sp.rows.size() > 1)
      std::cout << "max |d dim / d a| on grid = " << fmt12(sp.max_slope) << '\n';
  }
  return 0;
}

int run_count(const GlobalOpts& g, const BetaSystem& sys, int n, int zeros,
              bool zeros_given) {
  if (n < 1 || n > g.n_max)
    throw std::invalid_argument("count: n outside [1, n_max]");
  FollowerGraph graph = build_follower_graph(sys);
  if (g.format == "csv") {
    CountTable t = count_words_by_zeros(graph, n);
    t.to_csv(std::cout);
    return 0;
  }
  if (zeros_given) {
    if (zeros < 0 || zeros > n)
      throw std::invalid_argument("count: zeros outside [0, n]");
    CountTable t = count_words_by_zeros(graph, n);
    const mpz_class& c = t.counts[static_cast<std::size_t>(zeros)];
    if (g.format == "json") {
      nlohmann::json j;
      j["n"] = n;
      j["zeros"] = zeros;
      j["count"] = c.get_str();
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << c.get_str() << '\n';
    }
    return 0;
  }
  mpz_class total = count_words(graph, n);
  if (g.format == "json") {
    nlohmann::json j;
    j["n"] = n;
    j["count"] = total.get_str();
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << total.get_str() << '\n';
  }
  return 0;
}

int run_entropy(const GlobalOpts& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("entropy: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  MarkovMeasure mu = markov_from_json(ss.str());
  double h = markov_entropy(mu);
  double res = stationarity_residual(mu);
  if (g.format == "json") {
    nlohmann::json j;
    j["entropy"] = h;
    j["stationarity_residual"] = res;
    j["order"] = mu.order;
    std::cout << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    std::cout << "entropy,stationarity_residual\n"
              << fmt12(h) << ',' << fmt12(res) << '\n';
  } else {
    std::cout << "entropy = " << fmt12(h) << '\n';
    std::cout << "stationarity residual = " << fmt12(res) << '\n';
  }
  return 0;
}

int run_verify(const GlobalOpts& g, const std::string& suite, int samples) {
  VerifyConfig cfg;
  cfg.seed = g.seed;
  cfg.samples = samples;
  VerifyReport rep;
  if (suite == "all")
    rep = verify_all(cfg);
  else if (suite == "expansion")
    rep = verify_expansion(cfg);
  else if (suite == "covering")
    rep = verify_covering(cfg);
  else if (suite == "markov")
    rep = verify_markov(cfg);
  else if (suite == "dimension")
    rep = verify_dimension(cfg);
  else
    throw std::invalid_argument("verify: unknown suite " + suite);

  if (g.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : rep.checks) {
      nlohmann::json r;
      r["name"] = c.name;
      r["passed"] = c.passed;
      r["residual"] = c.residual;
      r["threshold"] = c.threshold;
      if (!c.detail.empty()) r["detail"] = c.detail;
      rows.push_back(std::move(r));
    }
    nlohmann::json j;
    j["checks"] = std::move(rows);
    j["all_passed"] = rep.all_passed();
    std::cout << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    std::cout << "name,passed,residual,threshold\n";
    for (const auto& c : rep.checks)
      std::cout << c.name << ',' << (c.passed ? 1 : 0) << ','
                << fmt12(c.residual) << ',' << fmt12(c.threshold) << '\n';
  } else {
    print_report(rep, std::cout);
  }
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dimension of digit-frequency sets in beta-expansions"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--tol", g.tol, "optimizer tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized verification");
  app.add_option("--n-max", g.n_max, "cap for counting lengths");

  auto* c_expand = app.add_subcommand("expand", "greedy digits of x");
  BetaFlags b_expand;
  b_expand.attach(c_expand);
  double x_value = 0.0;
  int digits = 32;
  c_expand->add_option("--x", x_value, "point in [0,1)")->required();
  c_expand->add_option("--digits", digits, "number of digits")
      ->check(CLI::Range(1, 10000));
  c_expand->fallthrough();

  auto* c_beta = app.add_subcommand("beta", "describe a base");
  BetaFlags b_beta;
  b_beta.attach(c_beta);
  c_beta->fallthrough();

  auto* c_dim = app.add_subcommand("dim", "dimension of the frequency set");
  BetaFlags b_dim;
  b_dim.attach(c_dim);
  std::vector<double> a_values;
  std::string grid_spec;
  c_dim->add_option("--a", a_values, "zero frequency (repeatable)");
  c_dim->add_option("--grid", grid_spec, "a sweep LO:HI:STEP");
  c_dim->fallthrough();

  auto* c_count = app.add_subcommand("count", "exact number of legal words");
  BetaFlags b_count;
  b_count.attach(c_count);
  int n_words = 0, zeros = -1;
  c_count->add_option("--n", n_words, "word length")->required();
  auto* zeros_opt = c_count->add_option("--zeros", zeros, "restrict to words with this many zeros");
  c_count->fallthrough();

  auto* c_entropy = app.add_subcommand("entropy", "entropy of a stored Markov measure");
  std::string measure_path;
  c_entropy->add_option("--measure", measure_path, "measure JSON file")->required();
  c_entropy->fallthrough();

  auto* c_verify = app.add_subcommand("verify", "run invariant suites");
  std::string suite = "all";
  int samples = 1000;
  c_verify->add_option("--suite", suite, "all|expansion|covering|markov|dimension");
  c_verify->add_option("--samples", samples, "sample count for randomized checks")
      ->check(CLI::Range(10, 1000000));
  c_verify->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // uniform bad-arguments code
  }

  try {
    if (c_expand->parsed())
      return run_expand(g, b_expand.resolve(), x_value, digits);
    if (c_beta->parsed()) return run_beta(g, b_beta.resolve());
    if (c_dim->parsed()) {
      if (!grid_spec.empty()) {
        double lo = 0.0, hi = 0.0, step = 0.0;
        if (std::sscanf(grid_spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
            step <= 0.0 || hi < lo)
          throw std::invalid_argument("dim: --grid expects LO:HI:STEP");
        for (double a = lo; a <= hi + step * 0.5; a += step)
          a_values.push_back(std::min(a, hi));
      }
      if (a_values.empty())
        throw std::invalid_argument("dim: provide --a or --grid");
      return run_dim(g, b_dim.resolve(), a_values);
    }
    if (c_count->parsed())
      return run_count(g, b_count.resolve(), n_words, zeros, !zeros_opt->empty());
    if (c_entropy->parsed()) return run_entropy(g, measure_path);
    if (c_verify->parsed()) return run_verify(g, suite, samples);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
