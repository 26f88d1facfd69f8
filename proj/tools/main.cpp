#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "run.hpp"

using nfriesz::cli::Command;
using nfriesz::cli::Format;
using nfriesz::cli::RunConfig;

namespace {

struct RawOptions {
  std::string alpha, grid, format = "json";
  double k = 0, nu = 0, x = 0, tol = 0, T = 0;
  long long nTerms = 0, N = 0;
  std::string route;
};

void add_common(CLI::App* sub, RunConfig& cfg, RawOptions& raw) {
  sub->add_option("--field", cfg.fieldFile, "field descriptor file");
  sub->add_option("--alpha", raw.alpha, "alpha as re[,im]");
  sub->add_option("--out", cfg.outputPath, "output path (default: stdout)");
  sub->add_option("--format", raw.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riesz-mean Voronoi identities over number fields"};
  app.require_subcommand(1);
  RunConfig cfg;
  RawOptions raw;

  auto* coeffs = app.add_subcommand("coeffs", "ideal counts a(n) and sigma_alpha(n)");
  add_common(coeffs, cfg, raw);
  coeffs->add_option("--N", raw.N, "table length");

  auto* kernel = app.add_subcommand("kernel", "evaluate the Mellin-Barnes kernel");
  add_common(kernel, cfg, raw);
  kernel->add_option("--k", raw.k, "Riesz order (nu = 1 + k)");
  kernel->add_option("--nu", raw.nu, "kernel order, overrides --k");
  kernel->add_option("--x", raw.x, "argument");
  kernel->add_option("--grid", raw.grid, "lo:hi:points, log-spaced");
  kernel->add_option("--tol", raw.tol, "absolute tolerance");
  kernel->add_option("--T", raw.T, "height where the contour starts to bend");
  kernel->add_option("--route", raw.route, "auto, direct, decomposed, closed or main");

  auto* verify = app.add_subcommand("verify", "check the summation identity at one x");
  add_common(verify, cfg, raw);
  verify->add_option("--k", raw.k, "Riesz order");
  verify->add_option("--x", raw.x, "summation bound");
  verify->add_option("--n-terms", raw.nTerms, "kernel series length");

  auto* scan = app.add_subcommand("scan", "error term over a grid and its fitted exponent");
  add_common(scan, cfg, raw);
  scan->add_option("--k", raw.k, "Riesz order");
  scan->add_option("--grid", raw.grid, "lo:hi:points, log-spaced");

  auto* self = app.add_subcommand("selfcheck", "run the invariant suite");
  self->add_option("--out", cfg.outputPath, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    cfg.command = name == "coeffs"   ? Command::coeffs
                  : name == "kernel" ? Command::kernel
                  : name == "verify" ? Command::verify
                  : name == "scan"   ? Command::scan
                                     : Command::selfcheck;
    cfg.format = raw.format == "csv" ? Format::csv : Format::jsonLines;
    auto given = [&](const char* opt) {
      try {
        return sub->count(opt) > 0;
      } catch (const CLI::OptionNotFound&) {
        return false;
      }
    };
    auto& p = cfg.parameters;
    if (given("--alpha")) p.alpha = nfriesz::cli::parse_alpha(raw.alpha);
    if (given("--grid")) p.grid = nfriesz::cli::parse_grid(raw.grid);
    if (given("--k")) p.k = raw.k;
    if (given("--nu")) p.nu = raw.nu;
    if (given("--x")) p.x = raw.x;
    if (given("--tol")) p.tol = raw.tol;
    if (given("--T")) p.T = raw.T;
    if (given("--n-terms")) p.nTerms = raw.nTerms;
    if (given("--N")) p.N = raw.N;
    if (given("--route")) p.route = raw.route;
  } catch (const std::exception& e) {
    std::cerr << "error: precondition violated: " << e.what() << '\n';
    return 2;
  }
  return nfriesz::cli::run(cfg, std::cerr);
}
