#include "run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "nfriesz/errors.hpp"
#include "nfriesz/fields.hpp"
#include "nfriesz/kernel.hpp"
#include "nfriesz/riesz.hpp"

namespace nfriesz::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

std::string command_name(Command c) {
  switch (c) {
    case Command::coeffs:
      return "coeffs";
    case Command::kernel:
      return "kernel";
    case Command::verify:
      return "verify";
    case Command::scan:
      return "scan";
    case Command::selfcheck:
      return "selfcheck";
  }
  return "?";
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json field_json(const FieldDescriptor& f) {
  return Json{{"label", f.label},    {"r1", f.r1},         {"r2", f.r2},
              {"disc", f.disc},      {"h", f.classNumber}, {"regulator", f.regulator},
              {"omega", f.rootsOfUnity}};
}

Json params_json(const RunConfig& cfg) {
  const Parameters& p = cfg.parameters;
  Json j = Json::object();
  j["command"] = command_name(cfg.command);
  if (!cfg.fieldFile.empty()) j["fieldFile"] = cfg.fieldFile;
  if (p.alpha) j["alpha"] = to_json(*p.alpha);
  if (p.k) j["k"] = *p.k;
  if (p.nu) j["nu"] = *p.nu;
  if (p.x) j["x"] = *p.x;
  if (p.nTerms) j["nTerms"] = *p.nTerms;
  if (p.N) j["N"] = *p.N;
  if (p.tol) j["tol"] = *p.tol;
  if (p.T) j["T"] = *p.T;
  if (p.grid) j["grid"] = Json{{"lo", p.grid->lo}, {"hi", p.grid->hi}, {"points", p.grid->points}};
  if (p.route) j["route"] = *p.route;
  return j;
}

Json meta_json() { return Json{{"tool", "nfriesz"}, {"version", kToolVersion}}; }

template <class T>
T require(const std::optional<T>& v, const char* flag) {
  if (!v) throw PreconditionError(std::string("missing required option ") + flag);
  return *v;
}

void check_finite(double v, const char* flag) {
  if (!std::isfinite(v)) throw PreconditionError(std::string(flag) + " must be finite");
}

FieldDescriptor load_field(const RunConfig& cfg) {
  if (cfg.fieldFile.empty()) throw PreconditionError("missing required option --field");
  FieldDescriptor f = load_field_descriptor(cfg.fieldFile);
  validate(f);
  return f;
}

/// Single writer: opened once, after validation and before any computation.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw PreconditionError("cannot open output path for writing: " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish() {
    out().flush();
    if (!out()) throw std::runtime_error("write to output failed");
  }

 private:
  std::ofstream file_;
};

void write_header(std::ostream& os, const RunConfig& cfg, const Json& extra) {
  if (cfg.format == Format::jsonLines) {
    Json h{{"type", "header"}, {"params", params_json(cfg)}};
    for (auto it = extra.begin(); it != extra.end(); ++it) h[it.key()] = it.value();
    h["meta"] = meta_json();
    os << h.dump() << '\n';
  } else {
    os << "# " << params_json(cfg).dump() << '\n';
    for (auto it = extra.begin(); it != extra.end(); ++it) os << "# " << it.key() << " = " << it.value().dump() << '\n';
  }
}

int run_coeffs(const RunConfig& cfg) {
  const FieldDescriptor f = load_field(cfg);
  const std::int64_t N = cfg.parameters.N.value_or(100);
  const Complex alpha = cfg.parameters.alpha.value_or(0.0);
  if (N < 1 || N > 100000000) throw PreconditionError("--N must be in [1, 1e8]");
  Sink sink(cfg.outputPath);
  const CoefficientSeries a = ideal_count_series(f, N);
  const SigmaSeries s = divisor_sigma(a, alpha, N);
  std::ostream& os = sink.out();
  write_header(os, cfg, Json{{"field", field_json(f)}});
  if (cfg.format == Format::csv) os << "n,a,sigma_re,sigma_im\n";
  for (std::int64_t n = 1; n <= N; ++n) {
    if (cfg.format == Format::jsonLines) {
      os << Json{{"n", n}, {"a", a.at(n)}, {"sigma", to_json(s.at(n))}}.dump() << '\n';
    } else {
      os << n << ',' << a.at(n) << ',' << num(s.at(n).real()) << ',' << num(s.at(n).imag()) << '\n';
    }
  }
  sink.finish();
  return 0;
}

int run_kernel(const RunConfig& cfg) {
  const Parameters& p = cfg.parameters;
  const FieldDescriptor f = cfg.fieldFile.empty() ? FieldDescriptor::rational() : load_field(cfg);
  if (!p.nu && !p.k) throw PreconditionError("kernel needs --nu or --k (nu = 1 + k)");
  const double nu = p.nu ? *p.nu : 1.0 + *p.k;
  check_finite(nu, "--nu");
  const Complex alpha = p.alpha.value_or(0.0);
  const double tol = p.tol.value_or(1e-10);
  if (!(tol > 0.0)) throw PreconditionError("--tol must be positive");
  std::vector<double> xs;
  if (p.grid) {
    xs = log_grid(p.grid->lo, p.grid->hi, p.grid->points);
  } else {
    const double x = require(p.x, "--x or --grid");
    if (!(x > 0.0)) throw PreconditionError("--x must be positive");
    xs.push_back(x);
  }
  const std::string route = p.route.value_or("auto");
  std::function<KernelValue(const KernelQuery&)> eval;
  if (route == "auto") {
    eval = kernel_auto;
  } else if (route == "direct") {
    eval = kernel_direct;
  } else if (route == "decomposed") {
    eval = kernel_decomposed;
  } else if (route == "main") {
    eval = kernel_main_term;
  } else if (route == "closed") {
    if (f.rho() != 1) throw PreconditionError("--route closed needs the rational field");
    eval = [](const KernelQuery& q) {
      KernelValue v;
      v.value = kernel_rational_closed_form(q.nu, q.alpha, 2.0 * q.x);
      v.route = KernelRoute::closedFormQ;
      v.errBound = 1e-13 * (1.0 + std::abs(v.value));
      return v;
    };
  } else {
    throw PreconditionError("--route must be one of auto, direct, decomposed, closed, main");
  }
  const ContourWindow w = contour_window(f.r1, f.r2, nu - 1.0, alpha);
  Sink sink(cfg.outputPath);
  std::vector<KernelValue> vals(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    KernelQuery q;
    q.nu = nu;
    q.alpha = alpha;
    q.x = xs[i];
    q.shape = f;
    q.tol = tol;
    if (p.T) q.truncationT = *p.T;
    vals[i] = eval(q);
  });
  std::ostream& os = sink.out();
  write_header(os, cfg,
               Json{{"field", field_json(f)},
                    {"window", Json{{"lower", w.lower}, {"upper", w.upper}, {"defaultC", w.defaultC}}}});
  if (cfg.format == Format::csv) os << "x,route,value_re,value_im,errBound,evaluations\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const KernelValue& v = vals[i];
    if (cfg.format == Format::jsonLines) {
      os << Json{{"x", xs[i]},
                 {"route", to_string(v.route)},
                 {"value", to_json(v.value)},
                 {"errBound", v.errBound},
                 {"contourC", v.contourC},
                 {"evaluations", v.evaluations}}
                .dump()
         << '\n';
    } else {
      os << num(xs[i]) << ',' << to_string(v.route) << ',' << num(v.value.real()) << ',' << num(v.value.imag()) << ','
         << num(v.errBound) << ',' << v.evaluations << '\n';
    }
  }
  sink.finish();
  return 0;
}

Json report_json(const RunConfig& cfg, const RieszReport& r) {
  return Json{{"type", "report"},
              {"params", params_json(cfg)},
              {"field", field_json(r.field)},
              {"alpha", to_json(r.alpha)},
              {"k", r.k},
              {"x", r.x},
              {"regime", to_string(r.regime)},
              {"summation", to_string(r.summation)},
              {"nTerms", r.nTerms},
              {"termsUsed", r.termsUsed},
              {"lhs", to_json(r.lhs)},
              {"residues",
               Json{{"R0", to_json(r.residues.R0)},
                    {"R1", to_json(r.residues.R1)},
                    {"R1MinusAlpha", to_json(r.residues.R1MinusAlpha)},
                    {"mergedPole", r.residues.mergedPole}}},
              {"rhsPartial", to_json(r.rhsPartial)},
              {"rhsTailBound", r.rhsTailBound},
              {"tailCertified", r.tailCertified},
              {"kernelErrBound", r.kernelErrBound},
              {"discrepancy", r.discrepancy},
              {"relativeDiscrepancy", r.relativeDiscrepancy},
              {"pass", r.pass},
              {"meta", meta_json()}};
}

int run_verify(const RunConfig& cfg) {
  const Parameters& p = cfg.parameters;
  const FieldDescriptor f = load_field(cfg);
  const Complex alpha = p.alpha.value_or(0.0);
  const double k = require(p.k, "--k");
  const double x = require(p.x, "--x");
  const std::int64_t n = p.nTerms.value_or(2000);
  check_finite(k, "--k");
  if (!(k >= 0.0)) throw PreconditionError("--k must be nonnegative");
  if (!(x > 0.0) || !std::isfinite(x)) throw PreconditionError("--x must be positive");
  if (n < 1 || n > 10000000) throw PreconditionError("--n-terms must be in [1, 1e7]");
  if (classify_regime(f, alpha, k) == Regime::outOfRange) {
    throw PreconditionError("k is below rho(1 + |Re alpha|) - 3/2; the series is not known to converge");
  }
  Sink sink(cfg.outputPath);
  const RieszReport r = verify_identity(f, alpha, k, x, n);
  const Json j = report_json(cfg, r);
  std::ostream& os = sink.out();
  if (cfg.format == Format::jsonLines) {
    os << j.dump() << '\n';
  } else {
    os << "field,alpha_re,alpha_im,k,x,regime,summation,nTerms,termsUsed,lhs_re,lhs_im,residues_re,residues_im,"
          "rhs_re,rhs_im,tail,tailCertified,kernelErr,discrepancy,relative,pass\n";
    const Complex res = r.residues.total();
    os << r.field.label << ',' << num(alpha.real()) << ',' << num(alpha.imag()) << ',' << num(k) << ',' << num(x)
       << ',' << to_string(r.regime) << ',' << to_string(r.summation) << ',' << r.nTerms << ',' << r.termsUsed << ','
       << num(r.lhs.real()) << ',' << num(r.lhs.imag()) << ',' << num(res.real()) << ',' << num(res.imag()) << ','
       << num(r.rhsPartial.real()) << ',' << num(r.rhsPartial.imag()) << ',' << num(r.rhsTailBound) << ','
       << r.tailCertified << ',' << num(r.kernelErrBound) << ',' << num(r.discrepancy) << ','
       << num(r.relativeDiscrepancy) << ',' << r.pass << '\n';
  }
  sink.finish();
  return 0;
}

int run_scan(const RunConfig& cfg) {
  const Parameters& p = cfg.parameters;
  const FieldDescriptor f = load_field(cfg);
  const Complex alpha = p.alpha.value_or(0.0);
  const double k = require(p.k, "--k");
  check_finite(k, "--k");
  if (!(k >= 0.0)) throw PreconditionError("--k must be nonnegative");
  const Grid g = p.grid.value_or(Grid{100.0, 10000.0, 2000});
  if (!(g.lo >= 1.0) || !(g.hi > g.lo) || g.points < 8) {
    throw PreconditionError("--grid needs 1 <= lo < hi and at least 8 points");
  }
  if (g.hi > 1e8) throw PreconditionError("--grid upper end must not exceed 1e8");
  Sink sink(cfg.outputPath);
  const ScanResult s = error_scan(f, alpha, k, log_grid(g.lo, g.hi, g.points));
  std::ostream& os = sink.out();
  write_header(os, cfg,
               Json{{"field", field_json(f)},
                    {"regime", to_string(classify_regime(f, alpha, k))},
                    {"slope", s.slope},
                    {"predicted", s.predicted}});
  std::vector<char> inEnvelope(s.points.size(), 0);
  for (const ScanPoint& e : s.envelope) {
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (s.points[i].x == e.x) inEnvelope[i] = 1;
    }
  }
  if (cfg.format == Format::csv) os << "x,error,envelope,slope\n";
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (cfg.format == Format::jsonLines) {
      os << Json{{"x", s.points[i].x}, {"error", s.points[i].error}, {"envelope", inEnvelope[i] != 0}}.dump() << '\n';
    } else {
      os << num(s.points[i].x) << ',' << num(s.points[i].error) << ',' << int(inEnvelope[i]) << ',' << num(s.slope)
         << '\n';
    }
  }
  sink.finish();
  return 0;
}

}  // namespace

Complex parse_alpha(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw PreconditionError("--alpha: expected re[,im], got '" + text + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw PreconditionError("--alpha: expected re[,im], got '" + text + "'");
  }
  std::string rest;
  if (in >> rest) throw PreconditionError("--alpha: trailing input in '" + text + "'");
  if (!std::isfinite(re) || !std::isfinite(im)) throw PreconditionError("--alpha must be finite");
  return {re, im};
}

Grid parse_grid(const std::string& text) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.points) || c1 != ':' || c2 != ':') {
    throw PreconditionError("--grid: expected lo:hi:points, got '" + text + "'");
  }
  std::string rest;
  if (in >> rest) throw PreconditionError("--grid: trailing input in '" + text + "'");
  if (!(g.lo > 0.0) || !(g.hi > g.lo) || g.points < 2) {
    throw PreconditionError("--grid needs 0 < lo < hi and at least 2 points");
  }
  return g;
}

int run(const RunConfig& config, std::ostream& diag) {
  try {
    if (config.parameters.tol && !(*config.parameters.tol > 0.0)) throw PreconditionError("--tol must be positive");
    if (config.parameters.T && !(*config.parameters.T > 1.0)) throw PreconditionError("--T must exceed 1");
    switch (config.command) {
      case Command::coeffs:
        return run_coeffs(config);
      case Command::kernel:
        return run_kernel(config);
      case Command::verify:
        return run_verify(config);
      case Command::scan:
        return run_scan(config);
      case Command::selfcheck: {
        Sink sink(config.outputPath);
        const bool ok = selfcheck(sink.out());
        sink.finish();
        return ok ? 0 : 1;
      }
    }
  } catch (const PreconditionError& e) {
    diag << "error: precondition violated: " << e.what() << '\n';
    return 2;
  } catch (const NonconvergenceError& e) {
    diag << "error: no convergence: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace nfriesz::cli
