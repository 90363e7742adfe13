// Command-line front end for the sqpack library.
//
// Exit codes: 0 success / valid, 1 invalid input, 2 verification failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqpack/bounds.hpp"
#include "sqpack/constructions.hpp"
#include "sqpack/geometry.hpp"
#include "sqpack/io.hpp"
#include "sqpack/optimizer.hpp"
#include "sqpack/theorems.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitVerificationFailure = 2;

using namespace sqpack;

PropagationParams params_with_witnesses(std::int64_t b_cap, std::int64_t window,
                                        const std::vector<std::string>& files) {
  PropagationParams params;
  params.b_cap = b_cap;
  params.combine_window = window;
  for (const auto& file : files) params.witnesses.push_back(Witness::from_packing(read_certificate(file)));
  return params;
}

int run_verify(const std::string& file) {
  const Packing p = read_certificate_unverified(file);
  const auto report = verify(p);
  std::cout << file << ": n = " << p.size() << ", " << report.describe() << "\n";
  return report.valid() ? kExitOk : kExitVerificationFailure;
}

int run_grid(std::int64_t b, const std::string& out) {
  const Packing p = grid(b);
  write_certificate(p, out);
  std::cout << "grid(" << b << "): n = " << p.size() << ", total = " << p.total() << " -> " << out
            << "\n";
  return kExitOk;
}

int run_combine(const std::string& first, const std::string& second, std::int64_t a1,
                std::int64_t a2, std::int64_t b, const std::string& out) {
  const Packing p1 = read_certificate(first);
  const Packing p2 = read_certificate(second);
  const Packing p = combine(p1, p2, a1, a2, b);
  const LemmaImage expected =
      lemma_rhs(static_cast<std::int64_t>(p1.size()), p1.total(),
                static_cast<std::int64_t>(p2.size()), p2.total(), a1, a2, b);
  write_certificate(p, out);
  std::cout << "combine: n = " << p.size() << ", total = " << p.total()
            << " (lemma: n = " << expected.count << ", total = " << expected.total << ") -> "
            << out << "\n";
  return kExitOk;
}

int run_ledger(std::int64_t max_n, std::int64_t b_cap, std::int64_t window,
               const std::vector<std::string>& witnesses, const std::string& format) {
  const Ledger ledger = propagate(max_n, RuleSet{}, params_with_witnesses(b_cap, window, witnesses));
  std::cout << ledger_table(ledger, format == "csv" ? TableFormat::kCsv : TableFormat::kTable);
  return kExitOk;
}

int run_epsilon(std::int64_t k, const std::vector<std::string>& witnesses) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const Ledger ledger = propagate(k * k + 1, RuleSet{}, params_with_witnesses(32, 2, witnesses));
  const EpsilonInterval e = epsilon_interval(ledger, k);
  std::cout << "epsilon(" << k << ") in " << e.str() << "  ~ [" << e.lb.decimal(6) << ", "
            << e.ub.approx() << "]\n"
            << "lb <= ub: " << (e.lb_within_ub() ? "yes" : "no")
            << "; ub < 1/(2k): " << (e.ub_below_half_reciprocal() ? "yes" : "no") << "\n";
  return kExitOk;
}

int run_optimize(const SearchConfig& config, const std::string& out) {
  const SearchResult result = search(config);
  Packing p = rationalize(result.best, config.denom_bound);
  p = p.with_provenance({"search",
                         {{"n", std::to_string(config.n)},
                          {"seed", std::to_string(config.seed)},
                          {"restarts", std::to_string(config.restarts)},
                          {"best_restart", std::to_string(result.best_restart)}}});
  write_certificate(p, out);
  std::cout << "search: objective " << result.best.objective << " after "
            << result.restarts_run << " restarts (" << result.lp_solves << " LPs)\n"
            << "certificate: n = " << p.size() << ", total = " << p.total() << " ("
            << p.total().decimal(9) << ") -> " << out << "\n";
  return kExitOk;
}

int run_theorem1(std::int64_t k, std::int64_t n) {
  const Theorem1Instance t = theorem1_implication(k, n);
  std::cout << t.statement() << "\n";
  return kExitOk;
}

int run_theorem2(std::int64_t big_n, const std::string& alpha_text, std::int64_t a,
                 std::int64_t k) {
  const Theorem2Chain t = theorem2_chain(big_n, Rational::parse(alpha_text), a, k);
  std::cout << t.statement() << "\n"
            << "epsilon(" << k << ") >= " << t.epsilon_lower_bound << " ("
            << t.epsilon_lower_bound.decimal(9) << ")\n";
  return kExitOk;
}

int run_render(const std::string& file, const std::string& out) {
  write_svg(read_certificate(file), out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact workbench for packing squares into the unit square"};
  app.require_subcommand(1);

  std::string file, out, first, second, format = "table", alpha = "1/10";
  std::int64_t b = 1, a1 = 1, a2 = 1, max_n = 100, b_cap = 32, window = 2, k = 1, n = 1,
               big_n = 1, a = 1;
  std::vector<std::string> witnesses;
  SearchConfig config;

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate file");
  verify_cmd->add_option("file", file, "Certificate")->required();

  auto* grid_cmd = app.add_subcommand("grid", "Write the b x b grid packing");
  grid_cmd->add_option("b", b, "Grid size")->required();
  grid_cmd->add_option("-o,--output", out, "Certificate to write")->required();

  auto* combine_cmd = app.add_subcommand("combine", "Substitute two packings into a grid");
  combine_cmd->add_option("p1", first, "Top-left packing")->required();
  combine_cmd->add_option("p2", second, "Bottom-right packing")->required();
  combine_cmd->add_option("--a1", a1, "Top-left block size")->required();
  combine_cmd->add_option("--a2", a2, "Bottom-right block size")->required();
  combine_cmd->add_option("--b", b, "Grid size")->required();
  combine_cmd->add_option("-o,--output", out, "Certificate to write")->required();

  auto* ledger_cmd = app.add_subcommand("ledger", "Propagate lower/upper bounds on f(n)");
  ledger_cmd->add_option("--max-n", max_n, "Largest n")->required();
  ledger_cmd->add_option("--b-cap", b_cap, "Largest grid used by the combine rule");
  ledger_cmd->add_option("--window", window, "Combine input window (0 = unlimited)");
  ledger_cmd->add_option("--witness", witnesses, "Certificates to import");
  ledger_cmd->add_option("--format", format, "table or csv")->check(CLI::IsMember({"table", "csv"}));

  auto* epsilon_cmd = app.add_subcommand("epsilon", "Bounds on f(k^2+1) - k");
  epsilon_cmd->add_option("--k", k, "k")->required();
  epsilon_cmd->add_option("--witness", witnesses, "Certificates to import");

  auto* optimize_cmd = app.add_subcommand("optimize", "Search for an n-square packing");
  optimize_cmd->add_option("--n", config.n, "Number of squares")->required();
  optimize_cmd->add_option("--restarts", config.restarts, "Restarts");
  optimize_cmd->add_option("--seed", config.seed, "Seed");
  optimize_cmd->add_option("--denom-bound", config.denom_bound, "Rationalization denominator cap");
  optimize_cmd->add_option("--time-budget", config.time_budget_seconds, "Seconds");
  optimize_cmd->add_option("-o,--output", out, "Certificate to write")->required();

  auto* theorem1_cmd = app.add_subcommand("theorem1", "Conditional bound on f(k^2+1)");
  theorem1_cmd->add_option("--k", k, "k")->required();
  theorem1_cmd->add_option("--n", n, "n with epsilon(n) = 0 assumed")->required();

  auto* theorem2_cmd = app.add_subcommand("theorem2", "Conditional lower bound on epsilon(k)");
  theorem2_cmd->add_option("--N", big_n, "N with f(N^2+1) = N + alpha assumed")->required();
  theorem2_cmd->add_option("--alpha", alpha, "alpha as p/q")->required();
  theorem2_cmd->add_option("--a", a, "a")->required();
  theorem2_cmd->add_option("--k", k, "k")->required();

  auto* render_cmd = app.add_subcommand("render", "Render a certificate as SVG");
  render_cmd->add_option("file", file, "Certificate")->required();
  render_cmd->add_option("-o,--output", out, "SVG to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (*verify_cmd) return run_verify(file);
    if (*grid_cmd) return run_grid(b, out);
    if (*combine_cmd) return run_combine(first, second, a1, a2, b, out);
    if (*ledger_cmd) return run_ledger(max_n, b_cap, window, witnesses, format);
    if (*epsilon_cmd) return run_epsilon(k, witnesses);
    if (*optimize_cmd) return run_optimize(config, out);
    if (*theorem1_cmd) return run_theorem1(k, n);
    if (*theorem2_cmd) return run_theorem2(big_n, alpha, a, k);
    if (*render_cmd) return run_render(file, out);
  } catch (const CertificateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == CertificateError::Kind::kMalformed ? kExitInvalidInput
                                                          : kExitVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
