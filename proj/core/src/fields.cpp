#include "nfriesz/fields.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "nfriesz/errors.hpp"

namespace nfriesz {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Jacobi symbol (a/n), n odd positive.
int jacobi(std::int64_t a, std::int64_t n) {
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_squarefree(std::int64_t d) {
  d = std::abs(d);
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw PreconditionError("field file: key '" + key + "' expects an integer");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw PreconditionError("field file: key '" + key + "' expects a number");
  return out;
}

// Number of ideals of norm p^e given the residue degrees of primes above p:
// coefficient of t^e in prod_i 1/(1 - t^{f_i}).
std::vector<std::int64_t> prime_power_counts(const std::vector<int>& degrees, int maxExp) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(maxExp) + 1, 0);
  c[0] = 1;
  for (int f : degrees) {
    for (int e = f; e <= maxExp; ++e) c[static_cast<std::size_t>(e)] += c[static_cast<std::size_t>(e - f)];
  }
  return c;
}

std::vector<std::int64_t> primes_up_to(std::int64_t N) {
  std::vector<bool> composite(static_cast<std::size_t>(N) + 1, false);
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p <= N; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    primes.push_back(p);
    for (std::int64_t m = p * p; m <= N; m += p) composite[static_cast<std::size_t>(m)] = true;
  }
  return primes;
}

}  // namespace

double FieldDescriptor::aConst() const {
  return std::sqrt(std::abs(static_cast<double>(disc))) / (std::pow(2.0, r2) * std::pow(kPi, rho() / 2.0));
}

FieldDescriptor FieldDescriptor::rational() {
  FieldDescriptor f;
  f.label = "Q";
  return f;
}

FieldDescriptor FieldDescriptor::quadratic(std::int64_t d, int classNumber, double regulator, int rootsOfUnity,
                                           std::string label) {
  if (d == 0 || d == 1 || !is_squarefree(d)) {
    throw PreconditionError("quadratic field: d must be squarefree and not 0 or 1");
  }
  FieldDescriptor f;
  f.kind = Kind::quadratic;
  f.r1 = d > 0 ? 2 : 0;
  f.r2 = d > 0 ? 0 : 1;
  f.disc = fundamental_discriminant(d);
  f.classNumber = classNumber;
  f.regulator = regulator;
  f.rootsOfUnity = rootsOfUnity;
  f.label = label.empty() ? "Q(sqrt(" + std::to_string(d) + "))" : std::move(label);
  validate(f);
  return f;
}

FieldDescriptor FieldDescriptor::gaussian() { return quadratic(-1, 1, 1.0, 4, "Q(i)"); }
FieldDescriptor FieldDescriptor::eisenstein() { return quadratic(-3, 1, 1.0, 6, "Q(sqrt(-3))"); }
FieldDescriptor FieldDescriptor::golden() {
  return quadratic(5, 1, std::log((1.0 + std::sqrt(5.0)) / 2.0), 2, "Q(sqrt(5))");
}

std::int64_t fundamental_discriminant(std::int64_t d) { return mod(d, 4) == 1 ? d : 4 * d; }

void validate(const FieldDescriptor& f) {
  auto fail = [&](const std::string& why) { throw PreconditionError("field '" + f.label + "': " + why); };
  if (f.r1 < 0 || f.r2 < 0 || f.rho() < 1) fail("need r1, r2 >= 0 and degree >= 1");
  if (f.disc == 0) fail("discriminant must be nonzero");
  if (f.classNumber < 1) fail("class number must be positive");
  if (!(f.regulator > 0.0) || !std::isfinite(f.regulator)) fail("regulator must be positive");
  if (f.rootsOfUnity < 2 || f.rootsOfUnity % 2 != 0) fail("number of roots of unity must be even and >= 2");
  // sign of the discriminant is (-1)^{r2}
  if ((f.disc < 0) != (f.r2 % 2 == 1)) fail("sign of disc must be (-1)^r2");
  switch (f.kind) {
    case FieldDescriptor::Kind::rational:
      if (f.r1 != 1 || f.r2 != 0 || f.disc != 1 || f.classNumber != 1 || f.regulator != 1.0 ||
          f.rootsOfUnity != 2) {
        fail("rational field must have r1=1, r2=0, disc=1, h=1, R=1, omega=2");
      }
      break;
    case FieldDescriptor::Kind::quadratic: {
      if (f.rho() != 2) fail("quadratic field must have degree 2");
      const std::int64_t m = mod(f.disc, 4);
      if (m != 0 && m != 1) fail("discriminant must be 0 or 1 mod 4");
      const std::int64_t core = (m == 1) ? f.disc : f.disc / 4;
      if (m == 0 && mod(core, 4) == 1) fail("discriminant is not fundamental");
      if (!is_squarefree(core) || core == 1) fail("discriminant is not fundamental");
      if (f.r2 == 1) {
        if (f.rootsOfUnity != 2 && f.rootsOfUnity != 4 && f.rootsOfUnity != 6) fail("omega must be 2, 4 or 6");
        if (f.regulator != 1.0) fail("imaginary quadratic fields have R = 1");
        const int expected = f.disc == -4 ? 4 : (f.disc == -3 ? 6 : 2);
        if (f.rootsOfUnity != expected) fail("omega does not match the discriminant");
      } else if (f.rootsOfUnity != 2) {
        fail("real quadratic fields have omega = 2");
      }
      break;
    }
    case FieldDescriptor::Kind::table:
      for (const auto& [p, degrees] : f.splitting) {
        int total = 0;
        for (int deg : degrees) {
          if (deg < 1) fail("residue degrees must be positive");
          total += deg;
        }
        if (p < 2 || total > f.rho()) fail("bad splitting entry for p = " + std::to_string(p));
      }
      break;
  }
}

FieldDescriptor parse_field_descriptor(std::istream& in) {
  FieldDescriptor f;
  f.label.clear();
  bool have_r1 = false, have_r2 = false, have_disc = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find_first_of("=:");
    if (eq == std::string::npos) {
      throw PreconditionError("field file line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "label") {
      f.label = value;
    } else if (key == "r1") {
      f.r1 = static_cast<int>(parse_int(key, value));
      have_r1 = true;
    } else if (key == "r2") {
      f.r2 = static_cast<int>(parse_int(key, value));
      have_r2 = true;
    } else if (key == "disc") {
      f.disc = parse_int(key, value);
      have_disc = true;
    } else if (key == "h") {
      f.classNumber = static_cast<int>(parse_int(key, value));
    } else if (key == "regulator") {
      f.regulator = parse_real(key, value);
    } else if (key == "omega") {
      f.rootsOfUnity = static_cast<int>(parse_int(key, value));
    } else if (key.rfind("split.", 0) == 0 || std::all_of(key.begin(), key.end(), ::isdigit)) {
      const std::int64_t p = parse_int(key, key[0] == 's' ? key.substr(6) : key);
      std::vector<int> degrees;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) degrees.push_back(static_cast<int>(parse_int(key, trim(item))));
      f.splitting[p] = std::move(degrees);
    } else {
      throw PreconditionError("field file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_r1 || !have_r2 || !have_disc) throw PreconditionError("field file: r1, r2 and disc are required");
  if (f.label.empty()) f.label = "K(disc=" + std::to_string(f.disc) + ")";
  if (f.r1 == 1 && f.r2 == 0 && f.disc == 1 && f.splitting.empty()) {
    f.kind = FieldDescriptor::Kind::rational;
  } else if (f.rho() == 2 && f.splitting.empty()) {
    f.kind = FieldDescriptor::Kind::quadratic;
  } else {
    f.kind = FieldDescriptor::Kind::table;
  }
  validate(f);
  return f;
}

FieldDescriptor load_field_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read field file '" + path + "'");
  return parse_field_descriptor(in);
}

int kronecker_symbol(std::int64_t D, std::int64_t n) {
  const std::int64_t m = mod(D, 4);
  if (m != 0 && m != 1) throw PreconditionError("kronecker_symbol: D must be 0 or 1 mod 4");
  if (n < 1) throw PreconditionError("kronecker_symbol: n must be positive");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    const std::int64_t r = mod(D, 8);
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(D, n);
}

CoefficientSeries ideal_count_series(const FieldDescriptor& field, std::int64_t N) {
  if (N < 1) throw PreconditionError("ideal_count_series: N must be positive");
  CoefficientSeries out;
  out.bound = N;
  out.a.assign(static_cast<std::size_t>(N) + 1, 0);
  switch (field.kind) {
    case FieldDescriptor::Kind::rational:
      std::fill(out.a.begin() + 1, out.a.end(), 1);
      break;
    case FieldDescriptor::Kind::quadratic:
      for (std::int64_t d = 1; d <= N; ++d) {
        const int chi = kronecker_symbol(field.disc, d);
        if (chi == 0) continue;
        for (std::int64_t m = d; m <= N; m += d) out.a[static_cast<std::size_t>(m)] += chi;
      }
      break;
    case FieldDescriptor::Kind::table: {
      std::fill(out.a.begin() + 1, out.a.end(), 1);
      for (std::int64_t p : primes_up_to(N)) {
        const auto it = field.splitting.find(p);
        if (it == field.splitting.end()) {
          throw PreconditionError("ideal_count_series: no splitting data for p = " + std::to_string(p));
        }
        int maxExp = 0;
        for (std::int64_t q = p; q <= N / p; q *= p) ++maxExp;
        ++maxExp;
        const auto counts = prime_power_counts(it->second, maxExp);
        // multiply in the p-part of every n
        for (std::int64_t m = p; m <= N; m += p) {
          std::int64_t r = m;
          int e = 0;
          while (r % p == 0) {
            r /= p;
            ++e;
          }
          out.a[static_cast<std::size_t>(m)] *= counts[static_cast<std::size_t>(e)];
        }
      }
      break;
    }
  }
  return out;
}

std::int64_t gaussian_norm_count_oracle(std::int64_t n) {
  if (n < 1) throw PreconditionError("gaussian_norm_count_oracle: n must be positive");
  std::int64_t count = 0;
  for (std::int64_t u = -n; u <= n; ++u) {
    const std::int64_t rest = n - u * u;
    if (rest < 0) continue;
    auto v = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    while (v * v > rest) --v;
    while ((v + 1) * (v + 1) <= rest) ++v;
    if (v * v == rest) count += (v == 0) ? 1 : 2;
  }
  return count / 4;
}

SigmaSeries divisor_sigma(const CoefficientSeries& series, Complex alpha, std::int64_t N) {
  if (N < 1 || N > series.bound) throw PreconditionError("divisor_sigma: N must be in [1, series.bound]");
  SigmaSeries out;
  out.bound = N;
  out.alpha = alpha;
  out.values.assign(static_cast<std::size_t>(N) + 1, Complex(0.0, 0.0));
  const bool zero = alpha == Complex(0.0, 0.0);
  for (std::int64_t d = 1; d <= N; ++d) {
    const std::int64_t ad = series.a[static_cast<std::size_t>(d)];
    if (ad == 0) continue;
    const Complex dpow = zero ? Complex(1.0, 0.0) : std::exp(alpha * std::log(static_cast<double>(d)));
    for (std::int64_t m = d, q = 1; m <= N; m += d, ++q) {
      const std::int64_t aq = series.a[static_cast<std::size_t>(q)];
      if (aq != 0) out.values[static_cast<std::size_t>(m)] += static_cast<double>(ad * aq) * dpow;
    }
  }
  return out;
}

double sigma_symmetry_residual(const CoefficientSeries& series, Complex alpha, std::int64_t N) {
  const SigmaSeries plus = divisor_sigma(series, alpha, N);
  const SigmaSeries minus = divisor_sigma(series, -alpha, N);
  double worst = 0.0;
  for (std::int64_t n = 1; n <= N; ++n) {
    const Complex h = std::exp(0.5 * alpha * std::log(static_cast<double>(n)));
    const Complex lhs = plus.at(n) / h;
    const Complex rhs = minus.at(n) * h;
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return worst;
}

}  // namespace nfriesz
