#pragma once

// Representation zeta data for cartesian products of finite groups of Lie type:
// SL_2(F_q) degree multisets, truncated Dirichlet series with exact big-integer
// coefficients, l_H(n), abscissa estimates and the target-abscissa construction.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "orbitlab/budget.hpp"

namespace orbitlab::zetalab {

/// (degree, multiplicity), ascending by degree.
using DegreeMultiset = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

/// Irreducible degrees of SL_2(F_q), q an odd prime power >= 5. The identities
/// sum m = q + 4 and sum m d^2 = q (q^2 - 1) are checked on every call.
DegreeMultiset sl2_degrees(std::uint64_t q);

struct LieType {
  std::string name;  // e.g. "A1"; informational
  std::uint32_t rank = 1;
  std::uint32_t pos_roots = 1;
  std::uint32_t coxeter = 2;
};
/// Checks h * rank = 2 |Phi^+|; ValidationError otherwise.
void validate(const LieType& t);
/// A_n: rank n, n(n+1)/2 positive roots, Coxeter number n + 1.
LieType type_a(std::uint32_t n);

struct Factor {
  LieType type;
  std::uint32_t p = 5;
  std::uint32_t power = 1;  // q = p^power
  mpz_class mult = 1;
};
using FactorSpec = std::vector<Factor>;

/// SL_2(F_{p^i}) once each, for every i whose minimal degree (q-1)/2 is <= n_max.
FactorSpec sl2_tower(std::uint32_t p, std::uint64_t n_max);

enum class SeriesMode { kExactSl2, kAkovApprox };
const char* mode_name(SeriesMode m);

/// r_1..r_N, exact below the cutoff. r[0] is unused.
struct TruncatedDirichlet {
  std::uint64_t cutoff = 1;
  std::vector<mpz_class> r;
  std::string provenance = "exact";

  static TruncatedDirichlet trivial(std::uint64_t n);
  const mpz_class& at(std::uint64_t n) const { return r.at(n); }
  /// R_n = sum_{m <= n} r_m
  std::vector<mpz_class> cumulative() const;
};

TruncatedDirichlet from_degrees(const DegreeMultiset& d, std::uint64_t n);
/// 1 + q^rank m^{-s} with m = q^{|Phi^+|}, the two-term approximant.
TruncatedDirichlet akov_term(const LieType& t, std::uint32_t p, std::uint32_t power, std::uint64_t n);
/// (f g)_n = sum_{ab = n} f_a g_b for n <= N.
TruncatedDirichlet dirichlet_product(const TruncatedDirichlet& f, const TruncatedDirichlet& g, std::uint64_t n);
/// f^m = sum_j C(m, j) (f - 1)^j, truncated.
TruncatedDirichlet dirichlet_power(const TruncatedDirichlet& f, const mpz_class& m, std::uint64_t n);

/// Least nontrivial degree of a factor in the given mode (q^{|Phi^+|} in the
/// approximant), as a big integer since q may be huge.
mpz_class min_degree(const Factor& f, SeriesMode mode);

TruncatedDirichlet product_series(const FactorSpec& spec, std::uint64_t n, SeriesMode mode,
                                  const Budgets& budgets = {});

/// Number of factors, with multiplicity, having a nontrivial degree <= n.
mpz_class l_of_n(const FactorSpec& spec, std::uint64_t n, SeriesMode mode);

/// chi(1) > d q^{e r} for every nontrivial chi; the defaults hold for SL_2(q), q >= 5.
struct MinDegreeBound {
  double d = 1.0 / 3.0;
  double e = 1.0;
};
/// Upper bound for l(n): factors with d q^{e rank} <= n.
mpz_class l_upper_bound(const FactorSpec& spec, std::uint64_t n, const MinDegreeBound& b = {});

/// R_{n^2} >= l(n)(l(n) - 1)/2; needs n^2 <= cutoff.
bool prg_witness(const TruncatedDirichlet& series, const FactorSpec& spec, std::uint64_t n, SeriesMode mode);

struct AbscissaSample {
  std::uint64_t n;
  double ratio;  // log R_n / log n
};
struct AbscissaEstimate {
  double estimate = 0;  // max of log R_n / log n over the tail sqrt(N) <= n <= N
  double slope = 0;     // least-squares slope of log R_n against log n on the tail
  std::vector<AbscissaSample> path;
};
/// Grid n = ceil(2^{k/4}) for n >= 2 up to the cutoff.
AbscissaEstimate abscissa_estimate(const TruncatedDirichlet& series);

/// r_n = floor(n^{a/b}) - floor((n-1)^{a/b}), so that R_n = floor(n^{a/b}) exactly.
TruncatedDirichlet synthetic_power_series(std::uint64_t a, std::uint64_t b, std::uint64_t n);

/// sum_n r_n n^{-s} over the truncation.
long double partial_sum(const TruncatedDirichlet& series, long double s);

struct TargetSpec {
  std::uint64_t c_num = 1, c_den = 1;
  LieType type;
  std::uint32_t p = 2;
  std::uint64_t n0 = 0;           // f(i) = 0 for i <= n0
  std::vector<std::uint64_t> a;   // a[i-1] = floor(i c)
  FactorSpec factors;             // L(p^i)^{f(i)} for n0 < i <= i_max
};
/// f(i) = p^{k (h a_i - 2i)/2} with a_i = floor(i c). Requires h even, k h c > 2
/// and h c > 2 (so that the exponent is a nonnegative integer from some point on).
TargetSpec target_abscissa_spec(std::uint64_t c_num, std::uint64_t c_den, const LieType& t, std::uint32_t p,
                                std::uint64_t i_max = 400);

/// log10 of the partial sums S_m = sum_{i <= m} f(i) p^{i k (1 - h s/2)} for each factor m.
std::vector<double> target_log10_partial_sums(const TargetSpec& spec, double s);

/// Ordered factorizations of n into parts >= 2 (1 for n = 1).
std::uint64_t divisor_tuple_count(std::uint64_t n);
/// max over 2 <= n <= n_max of log f(n) / log n.
double divisor_tuple_exponent(std::uint64_t n_max);

/// spec.json: [{"type": {"rank", "pos_roots", "coxeter"}, "q", "mult"}, ...]
FactorSpec parse_spec_json(const std::string& text);
FactorSpec load_spec_file(const std::string& path);

/// Parses "2", "0.5" or "3/2" into a reduced fraction.
std::pair<std::uint64_t, std::uint64_t> parse_rational(const std::string& s);

}  // namespace orbitlab::zetalab
