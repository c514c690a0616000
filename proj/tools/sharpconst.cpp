// Command line front end: mrs, solve, sweep, verify, diag-coeff.
#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>

#include "sharp/io.hpp"
#include "sharp/lab.hpp"
#include "sharp/mrs.hpp"
#include "sharp/solvers.hpp"
#include "sharp/weights.hpp"

namespace {

// Writes to the named file, or stdout for "" or "-".
template <class F>
void with_output(const std::string& path, F&& emit) {
  if (path.empty() || path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  emit(out);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp constants in weighted Markov-Bernstein-Nikolskii inequalities"};
  app.require_subcommand(1);

  std::string weight, n_text, p_text = "2", out_path, in_path;
  int N = 0, n = 1, threads = 1, kmax = 0;
  double eps = 0.1;
  bool restricted = false, json = false, window_check = false;

  auto* mrs = app.add_subcommand("mrs", "Mhaskar-Rakhmanov-Saff numbers a_n, b_n");
  mrs->add_option("--weight", weight, "freud:<alpha> | erdos:<alpha>:<ell> | bounded:<c> | unweighted")
      ->required();
  mrs->add_option("--n", n_text, "list a,b,c or range a:b[:step]")->required();
  mrs->add_option("--out", out_path, "CSV path (stdout if omitted)");

  auto* solve = app.add_subcommand("solve", "Sharp constant for one (p, N, n)");
  solve->add_option("--weight", weight)->required();
  solve->add_option("--p", p_text, "real > 0 or inf")->required();
  solve->add_option("--N", N)->required()->check(CLI::NonNegativeNumber);
  solve->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  solve->add_flag("--restricted", restricted, "norm over [-a_n, a_n]");
  solve->add_flag("--json", json, "JSON output");
  solve->add_flag("--window-check", window_check, "re-solve on an enlarged window");

  auto* sweep = app.add_subcommand("sweep", "M and M* over a list of n");
  sweep->add_option("--weight", weight)->required();
  sweep->add_option("--p", p_text)->required();
  sweep->add_option("--N", N)->required()->check(CLI::NonNegativeNumber);
  sweep->add_option("--n", n_text)->required();
  sweep->add_option("--out", out_path, "CSV path (stdout if omitted)");
  sweep->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_flag("--window-check", window_check);

  auto* verify = app.add_subcommand("verify", "Invariant checks on a sweep CSV");
  verify->add_option("--in", in_path)->required()->check(CLI::ExistingFile);

  auto* diag = app.add_subcommand("diag-coeff", "Growth of (1-eps)^k M*_{p,k,n}");
  diag->add_option("--weight", weight)->required();
  diag->add_option("--p", p_text)->required();
  diag->add_option("--kmax", kmax)->required()->check(CLI::NonNegativeNumber);
  diag->add_option("--eps", eps)->required();
  diag->add_option("--n", n_text)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    sharp::SolveOptions opt;
    opt.window_check = window_check;

    if (*mrs) {
      const auto w = sharp::WeightSpec::parse(weight);
      const auto rows = sharp::mrs_table(w, sharp::parse_n_list(n_text));
      with_output(out_path, [&](std::ostream& os) { sharp::write_mrs_csv(os, rows); });
      return 0;
    }

    if (*solve) {
      sharp::SharpConstantQuery q;
      q.w = sharp::WeightSpec::parse(weight);
      q.p = sharp::parse_p(p_text);
      q.N = N;
      q.n = n;
      q.variant = restricted ? sharp::Variant::Restricted : sharp::Variant::FullInterval;
      const auto r = sharp::solve(q, opt);
      if (json) {
        std::cout << sharp::solve_json(r) << '\n';
      } else {
        fmt::print("{:.17g}\n", r.value);
        if (!r.certified) fmt::print(stderr, "warning: result not certified ({})\n", r.certificate.method);
      }
      return 0;
    }

    if (*sweep) {
      const auto w = sharp::WeightSpec::parse(weight);
      const auto rows = sharp::sweep(w, sharp::parse_p(p_text), N, sharp::parse_n_list(n_text), opt, threads);
      with_output(out_path, [&](std::ostream& os) { sharp::write_sweep_csv(os, rows); });
      for (const auto& r : rows) {
        if (!r.ok()) fmt::print(stderr, "n={}: {}\n", r.n, r.status);
      }
      return 0;
    }

    if (*verify) {
      std::ifstream in(in_path, std::ios::binary);
      const auto rows = sharp::parse_sweep_csv(in);
      const auto report = sharp::verify_invariants(rows);
      for (const auto& c : report.checks) {
        fmt::print("{} {}{}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail.empty() ? "" : " (" + c.detail + ")");
      }
      return report.passed ? 0 : 1;
    }

    if (*diag) {
      const auto w = sharp::WeightSpec::parse(weight);
      const auto n_list = sharp::parse_n_list(n_text);
      const auto d = sharp::coefficient_growth_diagnostic(w, sharp::parse_p(p_text), n_list, kmax, eps, opt);
      fmt::print("k");
      for (int m : n_list) fmt::print(",n={}", m);
      fmt::print(",sup,stable\n");
      for (std::size_t k = 0; k < d.values.size(); ++k) {
        fmt::print("{}", k);
        for (double v : d.values[k]) fmt::print(",{:.17g}", v);
        fmt::print(",{:.17g},{}\n", d.sup_per_k[k], d.stable_per_k[k] ? "true" : "false");
      }
      return d.passed ? 0 : 1;
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
