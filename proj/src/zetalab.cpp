#include "orbitlab/zetalab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "orbitlab/errors.hpp"
#include "orbitlab/ffield.hpp"

namespace orbitlab::zetalab {

namespace {

/// (p, k) with q = p^k, or (0, 0) when q is not a prime power.
std::pair<std::uint64_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  std::uint32_t k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  return q == 1 ? std::make_pair(p, k) : std::make_pair(std::uint64_t(0), 0u);
}

mpz_class mpz_pow(std::uint64_t base, std::uint64_t k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, k);
  return r;
}

double log_mpz(const mpz_class& x) {
  long ex = 0;
  const double m = mpz_get_d_2exp(&ex, x.get_mpz_t());
  return std::log(m) + static_cast<double>(ex) * std::log(2.0);
}

bool is_sl2_type(const LieType& t) { return t.rank == 1 && t.pos_roots == 1 && t.coxeter == 2; }

}  // namespace

DegreeMultiset sl2_degrees(std::uint64_t q) {
  const auto [p, k] = prime_power(q);
  if (p == 0 || p == 2 || q < 5)
    throw DomainError("SL_2 degrees need an odd prime power q >= 5, got " + std::to_string(q));
  std::map<std::uint64_t, std::uint64_t> m;
  m[1] += 1;
  m[q] += 1;
  m[q + 1] += (q - 3) / 2;
  m[(q + 1) / 2] += 2;
  m[q - 1] += (q - 1) / 2;
  m[(q - 1) / 2] += 2;
  DegreeMultiset out(m.begin(), m.end());
  mpz_class count = 0, squares = 0;
  for (const auto& [d, mult] : out) {
    count += static_cast<unsigned long>(mult);
    squares += mpz_class(static_cast<unsigned long>(mult)) * static_cast<unsigned long>(d) * static_cast<unsigned long>(d);
  }
  const mpz_class order = mpz_class(static_cast<unsigned long>(q)) * (mpz_class(static_cast<unsigned long>(q)) * q - 1);
  check_internal(count == static_cast<unsigned long>(q + 4), "SL_2 class count identity fails for q = " + std::to_string(q));
  check_internal(squares == order, "SL_2 degree-square identity fails for q = " + std::to_string(q));
  return out;
}

void validate(const LieType& t) {
  if (t.rank == 0) throw ValidationError("Lie type rank must be positive");
  if (std::uint64_t(t.coxeter) * t.rank != 2ull * t.pos_roots)
    throw ValidationError("inconsistent Lie type: h * rank = " + std::to_string(t.coxeter * t.rank) +
                          " but 2|Phi+| = " + std::to_string(2 * t.pos_roots));
}

LieType type_a(std::uint32_t n) {
  if (n == 0) throw DomainError("type A_n needs n >= 1");
  return {"A" + std::to_string(n), n, n * (n + 1) / 2, n + 1};
}

FactorSpec sl2_tower(std::uint32_t p, std::uint64_t n_max) {
  FactorSpec out;
  std::uint64_t q = p;
  for (std::uint32_t i = 1; (q - 1) / 2 <= n_max; ++i, q *= p) out.push_back({type_a(1), p, i, 1});
  return out;
}

const char* mode_name(SeriesMode m) { return m == SeriesMode::kExactSl2 ? "exact" : "akov"; }

TruncatedDirichlet TruncatedDirichlet::trivial(std::uint64_t n) {
  TruncatedDirichlet t;
  t.cutoff = n;
  t.r.assign(n + 1, 0);
  if (n >= 1) t.r[1] = 1;
  return t;
}

std::vector<mpz_class> TruncatedDirichlet::cumulative() const {
  std::vector<mpz_class> out(r.size());
  for (std::size_t n = 1; n < r.size(); ++n) out[n] = out[n - 1] + r[n];
  return out;
}

TruncatedDirichlet from_degrees(const DegreeMultiset& d, std::uint64_t n) {
  TruncatedDirichlet t = TruncatedDirichlet::trivial(n);
  t.r[1] = 0;
  for (const auto& [deg, mult] : d)
    if (deg <= n) t.r[deg] += static_cast<unsigned long>(mult);
  return t;
}

TruncatedDirichlet akov_term(const LieType& t, std::uint32_t p, std::uint32_t power, std::uint64_t n) {
  validate(t);
  TruncatedDirichlet out = TruncatedDirichlet::trivial(n);
  out.provenance = "akov-approx";
  const mpz_class q = mpz_pow(p, power);
  const mpz_class deg = mpz_pow(p, std::uint64_t(power) * t.pos_roots);
  if (deg <= static_cast<unsigned long>(n)) {
    mpz_class coef;
    mpz_pow_ui(coef.get_mpz_t(), q.get_mpz_t(), t.rank);
    out.r[deg.get_ui()] += coef;
  }
  return out;
}

namespace {

std::vector<std::uint64_t> support(const TruncatedDirichlet& f, std::uint64_t n) {
  std::vector<std::uint64_t> s;
  for (std::uint64_t i = 1; i <= n && i < f.r.size(); ++i)
    if (f.r[i] != 0) s.push_back(i);
  return s;
}

std::string merge_provenance(const TruncatedDirichlet& f, const TruncatedDirichlet& g) {
  return f.provenance == "exact" ? g.provenance : f.provenance;
}

}  // namespace

TruncatedDirichlet dirichlet_product(const TruncatedDirichlet& f, const TruncatedDirichlet& g, std::uint64_t n) {
  n = std::min({n, f.cutoff, g.cutoff});
  TruncatedDirichlet out = TruncatedDirichlet::trivial(n);
  out.r[1] = 0;
  out.provenance = merge_provenance(f, g);
  const auto sf = support(f, n), sg = support(g, n);
  for (auto a : sf)
    for (auto b : sg) {
      if (a * b > n) break;
      mpz_addmul(out.r[a * b].get_mpz_t(), f.r[a].get_mpz_t(), g.r[b].get_mpz_t());
    }
  return out;
}

TruncatedDirichlet dirichlet_power(const TruncatedDirichlet& f, const mpz_class& m, std::uint64_t n) {
  n = std::min(n, f.cutoff);
  if (f.r.size() < 2 || f.r[1] != 1) throw DomainError("dirichlet_power needs r_1 = 1");
  TruncatedDirichlet nontrivial = f;
  nontrivial.r.resize(n + 1);
  nontrivial.cutoff = n;
  nontrivial.r[1] = 0;
  TruncatedDirichlet out = TruncatedDirichlet::trivial(n);
  out.provenance = f.provenance;
  TruncatedDirichlet fj = TruncatedDirichlet::trivial(n);
  mpz_class binom = 1;
  for (unsigned long j = 1; m >= j; ++j) {
    fj = dirichlet_product(fj, nontrivial, n);
    if (support(fj, n).empty()) break;
    binom = binom * (m - (j - 1)) / j;
    for (std::uint64_t i = 1; i <= n; ++i)
      if (fj.r[i] != 0) mpz_addmul(out.r[i].get_mpz_t(), binom.get_mpz_t(), fj.r[i].get_mpz_t());
  }
  return out;
}

mpz_class min_degree(const Factor& f, SeriesMode mode) {
  validate(f.type);
  if (mode == SeriesMode::kAkovApprox) return mpz_pow(f.p, std::uint64_t(f.power) * f.type.pos_roots);
  if (!is_sl2_type(f.type) || f.p == 2)
    throw DomainError("exact mode supports only SL_2(q) factors (type A1, odd q); got " + f.type.name +
                      " over p = " + std::to_string(f.p));
  return (mpz_pow(f.p, f.power) - 1) / 2;
}

TruncatedDirichlet product_series(const FactorSpec& spec, std::uint64_t n, SeriesMode mode, const Budgets& budgets) {
  require_budget("series_cutoff", n, budgets.series_cutoff);
  TruncatedDirichlet out = TruncatedDirichlet::trivial(n);
  if (mode == SeriesMode::kAkovApprox) out.provenance = "akov-approx";
  for (const auto& f : spec) {
    if (!ffield::is_prime(f.p)) throw ValidationError("factor characteristic " + std::to_string(f.p) + " is not prime");
    if (f.mult == 0 || min_degree(f, mode) > static_cast<unsigned long>(n)) continue;
    TruncatedDirichlet term = mode == SeriesMode::kExactSl2
                                  ? from_degrees(sl2_degrees(mpz_pow(f.p, f.power).get_ui()), n)
                                  : akov_term(f.type, f.p, f.power, n);
    if (f.mult != 1) term = dirichlet_power(term, f.mult, n);
    out = dirichlet_product(out, term, n);
  }
  return out;
}

mpz_class l_of_n(const FactorSpec& spec, std::uint64_t n, SeriesMode mode) {
  mpz_class l = 0;
  for (const auto& f : spec)
    if (min_degree(f, mode) <= static_cast<unsigned long>(n)) l += f.mult;
  return l;
}

mpz_class l_upper_bound(const FactorSpec& spec, std::uint64_t n, const MinDegreeBound& b) {
  mpz_class l = 0;
  for (const auto& f : spec) {
    const double log_bound = std::log(b.d) + b.e * f.type.rank * f.power * std::log(double(f.p));
    if (log_bound <= std::log(double(n))) l += f.mult;
  }
  return l;
}

bool prg_witness(const TruncatedDirichlet& series, const FactorSpec& spec, std::uint64_t n, SeriesMode mode) {
  if (n * n > series.cutoff)
    throw DomainError("prg_witness needs n^2 <= cutoff (" + std::to_string(series.cutoff) + ")");
  mpz_class r = 0;
  for (std::uint64_t m = 1; m <= n * n; ++m) r += series.r[m];
  const mpz_class l = l_of_n(spec, n, mode);
  return 2 * r >= l * (l - 1);
}

AbscissaEstimate abscissa_estimate(const TruncatedDirichlet& series) {
  AbscissaEstimate est;
  const auto cum = series.cumulative();
  const std::uint64_t n_max = series.cutoff;
  std::uint64_t last = 0;
  for (int k = 4;; ++k) {
    const auto n = static_cast<std::uint64_t>(std::ceil(std::pow(2.0, k / 4.0) - 1e-9));
    if (n > n_max) break;
    if (n == last) continue;
    last = n;
    const double ratio = cum[n] > 0 ? log_mpz(cum[n]) / std::log(double(n)) : 0.0;
    est.path.push_back({n, ratio});
  }
  if (est.path.empty() || est.path.back().n != n_max) {
    if (n_max >= 2)
      est.path.push_back({n_max, cum[n_max] > 0 ? log_mpz(cum[n_max]) / std::log(double(n_max)) : 0.0});
  }
  const double tail_start = std::sqrt(double(n_max));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  est.estimate = 0;
  bool any = false;
  for (const auto& s : est.path) {
    if (double(s.n) < tail_start) continue;
    const double x = std::log(double(s.n)), y = s.ratio * x;
    est.estimate = any ? std::max(est.estimate, s.ratio) : s.ratio;
    any = true;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  est.slope = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : est.estimate;
  return est;
}

TruncatedDirichlet synthetic_power_series(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  if (b == 0) throw DomainError("synthetic series needs a positive denominator");
  TruncatedDirichlet t = TruncatedDirichlet::trivial(n);
  t.provenance = "synthetic";
  mpz_class prev = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    mpz_class x = mpz_pow(i, a), root;
    mpz_root(root.get_mpz_t(), x.get_mpz_t(), b);
    t.r[i] = root - prev;
    prev = root;
  }
  return t;
}

long double partial_sum(const TruncatedDirichlet& series, long double s) {
  long double total = 0;
  for (std::uint64_t n = 1; n < series.r.size(); ++n)
    if (series.r[n] != 0) total += static_cast<long double>(series.r[n].get_d()) * std::pow((long double)n, -s);
  return total;
}

TargetSpec target_abscissa_spec(std::uint64_t c_num, std::uint64_t c_den, const LieType& t, std::uint32_t p,
                                std::uint64_t i_max) {
  validate(t);
  if (c_num == 0 || c_den == 0) throw DomainError("target abscissa must be a positive rational");
  if (!ffield::is_prime(p)) throw DomainError("target construction needs a prime p");
  if (t.coxeter % 2 != 0) throw DomainError("target construction needs an even Coxeter number");
  const std::uint64_t k = t.rank, h = t.coxeter;
  if (k * h * c_num <= 2 * c_den) throw DomainError("target construction needs k h c > 2");
  if (h * c_num <= 2 * c_den)
    throw DomainError("target construction needs h c > 2 so that f(i) = p^{k(h a_i - 2i)/2} is eventually integral");
  TargetSpec out;
  out.c_num = c_num;
  out.c_den = c_den;
  out.type = t;
  out.p = p;
  // h floor(ic) < 2i forces i < h / (hc - 2), so scanning to that bound finds the last violation.
  const std::uint64_t bound = h * c_den / (h * c_num - 2 * c_den) + 1;
  const std::uint64_t scan = std::max(i_max, bound);
  for (std::uint64_t i = 1; i <= scan; ++i) {
    const std::uint64_t a = i * c_num / c_den;
    if (i <= i_max) out.a.push_back(a);
    if (h * a < 2 * i) out.n0 = i;
  }
  for (std::uint64_t i = out.n0 + 1; i <= i_max; ++i) {
    const std::uint64_t a = out.a[i - 1];
    const std::uint64_t ex = k * (h * a - 2 * i) / 2;
    out.factors.push_back({t, p, static_cast<std::uint32_t>(i), mpz_pow(p, ex)});
  }
  return out;
}

std::vector<double> target_log10_partial_sums(const TargetSpec& spec, double s) {
  std::vector<double> out;
  const double lp = std::log10(double(spec.p));
  const double k = spec.type.rank, h = spec.type.coxeter;
  double acc = -INFINITY;
  for (const auto& f : spec.factors) {
    const double term = log_mpz(f.mult) / std::log(10.0) + f.power * k * (1.0 - h * s / 2.0) * lp;
    const double hi = std::max(acc, term), lo = std::min(acc, term);
    acc = std::isinf(lo) ? hi : hi + std::log10(1.0 + std::pow(10.0, lo - hi));
    out.push_back(acc);
  }
  return out;
}

std::uint64_t divisor_tuple_count(std::uint64_t n) {
  if (n == 0) throw DomainError("divisor_tuple_count needs n >= 1");
  thread_local std::map<std::uint64_t, std::uint64_t> memo;
  if (n == 1) return 1;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    if (d >= 2) total += divisor_tuple_count(n / d);
    if (d * d != n) total += divisor_tuple_count(d);  // part n/d >= 2, remainder d
  }
  memo[n] = total;
  return total;
}

double divisor_tuple_exponent(std::uint64_t n_max) {
  std::vector<std::uint64_t> f(n_max + 1, 0);
  f[1] = 1;
  for (std::uint64_t m = 1; m <= n_max; ++m)
    for (std::uint64_t d = 2; m * d <= n_max; ++d) f[m * d] += f[m];
  double best = 0;
  for (std::uint64_t n = 2; n <= n_max; ++n) best = std::max(best, std::log(double(f[n])) / std::log(double(n)));
  return best;
}

FactorSpec parse_spec_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("spec.json: ") + e.what());
  }
  if (!j.is_array()) throw ValidationError("spec.json must be a list of factors");
  FactorSpec out;
  try {
    for (const auto& item : j) {
      Factor f;
      const auto& t = item.at("type");
      f.type.rank = t.at("rank").get<std::uint32_t>();
      f.type.pos_roots = t.at("pos_roots").get<std::uint32_t>();
      f.type.coxeter = t.at("coxeter").get<std::uint32_t>();
      f.type.name = t.value("name", "rank" + std::to_string(f.type.rank));
      validate(f.type);
      const auto q = item.at("q").get<std::uint64_t>();
      const auto [p, k] = prime_power(q);
      if (p == 0) throw ValidationError("spec.json: q = " + std::to_string(q) + " is not a prime power");
      f.p = static_cast<std::uint32_t>(p);
      f.power = k;
      const auto& m = item.contains("mult") ? item.at("mult") : nlohmann::json(1);
      if (m.is_string()) {
        if (f.mult.set_str(m.get<std::string>(), 10) != 0 || f.mult < 0)
          throw ValidationError("spec.json: bad multiplicity " + m.get<std::string>());
      } else {
        f.mult = static_cast<unsigned long>(m.get<std::uint64_t>());
      }
      out.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("spec.json: ") + e.what());
  }
  return out;
}

FactorSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_json(ss.str());
}

std::pair<std::uint64_t, std::uint64_t> parse_rational(const std::string& s) {
  mpq_class q;
  const auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      const std::string frac = s.substr(dot + 1);
      q = mpq_class(mpz_class(s.substr(0, dot) + frac), mpz_pow(10, frac.size()));
    } else {
      q = mpq_class(s);
    }
  } catch (const std::invalid_argument&) {
    throw ValidationError("not a rational number: '" + s + "'");
  }
  q.canonicalize();
  if (q <= 0) throw ValidationError("expected a positive rational, got '" + s + "'");
  return {q.get_num().get_ui(), q.get_den().get_ui()};
}

}  // namespace orbitlab::zetalab
