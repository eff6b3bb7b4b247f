#include <doctest.h>

#include <random>

#include "orbitlab/errors.hpp"
#include "orbitlab/zetalab.hpp"

using namespace orbitlab;
using namespace orbitlab::zetalab;

namespace {

mpz_class sum_r(const TruncatedDirichlet& f) {
  mpz_class s = 0;
  for (std::size_t n = 1; n < f.r.size(); ++n) s += f.r[n];
  return s;
}

TruncatedDirichlet random_series(std::mt19937_64& rng, std::uint64_t n) {
  TruncatedDirichlet t = TruncatedDirichlet::trivial(n);
  for (std::uint64_t i = 2; i <= n; ++i) t.r[i] = static_cast<unsigned long>(rng() % 4 == 0 ? rng() % 5 : 0);
  return t;
}

// Brute-force ordered factorizations into parts >= 2.
std::uint64_t tuples(std::uint64_t n) {
  if (n == 1) return 1;
  std::uint64_t c = 0;
  for (std::uint64_t d = 2; d <= n; ++d)
    if (n % d == 0) c += tuples(n / d);
  return c;
}

}  // namespace

TEST_CASE("SL2 degrees") {
  auto d5 = sl2_degrees(5);
  CHECK(d5 == DegreeMultiset{{1, 1}, {2, 2}, {3, 2}, {4, 2}, {5, 1}, {6, 1}});
  for (std::uint64_t q : {7, 9, 25, 27, 121}) {
    std::uint64_t cnt = 0, sq = 0;
    for (auto [d, m] : sl2_degrees(q)) {
      cnt += m;
      sq += m * d * d;
    }
    CHECK(cnt == q + 4);
    CHECK(sq == q * (q * q - 1));
  }
  CHECK_THROWS_AS(sl2_degrees(8), DomainError);
  CHECK_THROWS_AS(sl2_degrees(3), DomainError);
  CHECK_THROWS_AS(sl2_degrees(15), DomainError);
}

TEST_CASE("Lie types and the two-term approximant") {
  auto a1 = akov_term(type_a(1), 7, 1, 100);
  CHECK(a1.r[1] == 1);
  CHECK(a1.r[7] == 7);
  CHECK(sum_r(a1) == 8);
  auto a2 = akov_term(type_a(2), 2, 1, 100);
  CHECK(a2.r[8] == 4);
  CHECK(type_a(3).coxeter == 4);
  CHECK_THROWS_AS(validate(LieType{"bad", 2, 3, 4}), ValidationError);
}

TEST_CASE("Dirichlet products") {
  auto f = from_degrees(sl2_degrees(5), 36);
  auto one = TruncatedDirichlet::trivial(36);
  CHECK(dirichlet_product(f, one, 36).r == f.r);
  auto ff = dirichlet_product(f, f, 36);
  CHECK(sum_r(ff) == 81);
  // (1 + 2 * 2^-s ...)^2 has r_4 = (#deg 2)^2 + 2 #deg 4
  CHECK(ff.r[4] == 4 + 2 * 2);
  CHECK(dirichlet_power(f, 2, 36).r == ff.r);

  std::mt19937_64 rng(3);
  for (int it = 0; it < 10; ++it) {
    auto a = random_series(rng, 120), b = random_series(rng, 120), c = random_series(rng, 120);
    CHECK(dirichlet_product(a, b, 120).r == dirichlet_product(b, a, 120).r);
    CHECK(dirichlet_product(dirichlet_product(a, b, 120), c, 120).r ==
          dirichlet_product(a, dirichlet_product(b, c, 120), 120).r);
    CHECK(sum_r(dirichlet_product(a, b, 120)) <= sum_r(a) * sum_r(b));
    CHECK(dirichlet_power(a, 3, 120).r == dirichlet_product(a, dirichlet_product(a, a, 120), 120).r);
  }
}

TEST_CASE("product series truncation") {
  auto tower = sl2_tower(5, 100);
  CHECK(tower.size() == 3);
  CHECK(product_series({}, 50, SeriesMode::kExactSl2).r == TruncatedDirichlet::trivial(50).r);
  auto full = product_series(tower, 100, SeriesMode::kExactSl2);
  auto direct = from_degrees(sl2_degrees(5), 100);
  direct = dirichlet_product(direct, from_degrees(sl2_degrees(25), 100), 100);
  direct = dirichlet_product(direct, from_degrees(sl2_degrees(125), 100), 100);
  CHECK(full.r == direct.r);
  FactorSpec zero_mult{{type_a(1), 5, 1, 0}};
  CHECK(product_series(zero_mult, 30, SeriesMode::kExactSl2).r == TruncatedDirichlet::trivial(30).r);
  FactorSpec bad{{type_a(2), 5, 1, 1}};
  CHECK_THROWS_AS(product_series(bad, 30, SeriesMode::kExactSl2), DomainError);
}

TEST_CASE("l(n)") {
  auto tower = sl2_tower(5, 1000);
  CHECK(l_of_n(tower, 2, SeriesMode::kExactSl2) == 1);
  CHECK(l_of_n(tower, 1, SeriesMode::kExactSl2) == 0);
  FactorSpec cube{{type_a(1), 5, 1, 3}};
  CHECK(l_of_n(cube, 2, SeriesMode::kExactSl2) == 3);
  mpz_class prev = 0;
  for (std::uint64_t n = 1; n <= 1000; n += 7) {
    auto l = l_of_n(tower, n, SeriesMode::kExactSl2);
    CHECK(l >= prev);
    CHECK(l <= l_upper_bound(tower, n));
    prev = l;
  }
}

TEST_CASE("PRG witness") {
  auto tower = sl2_tower(5, 256);
  auto s = product_series(tower, 256, SeriesMode::kExactSl2);
  for (std::uint64_t n : {2, 4, 8, 16}) CHECK(prg_witness(s, tower, n, SeriesMode::kExactSl2));
  CHECK_THROWS_AS(prg_witness(s, tower, 17, SeriesMode::kExactSl2), DomainError);
}

TEST_CASE("abscissa estimator") {
  for (auto [a, b] : {std::pair{1u, 2u}, {1u, 1u}, {2u, 1u}}) {
    auto s = synthetic_power_series(a, b, 100000);
    double c = double(a) / b;
    CHECK(std::abs(abscissa_estimate(s).estimate - c) < 0.05);
  }
  // a single finite group: R_n is bounded, so the estimate drops with N
  double prev = 10;
  for (std::uint64_t n : {100, 10000, 1000000}) {
    double e = abscissa_estimate(from_degrees(sl2_degrees(5), n)).estimate;
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev < 0.33);
}

TEST_CASE("target construction") {
  auto t = target_abscissa_spec(2, 1, type_a(1), 5, 20);
  REQUIRE(t.factors.size() == 20 - t.n0);
  CHECK(t.n0 == 0);
  for (const auto& f : t.factors) CHECK(f.mult == [&] {
    mpz_class x;
    mpz_ui_pow_ui(x.get_mpz_t(), 5, f.power);  // a_i - i = i
    return x;
  }());
  auto half = target_abscissa_spec(1, 2, type_a(5), 2, 400);
  CHECK(half.a[0] == 0);
  CHECK(half.a[3] == 2);
  for (std::size_t i = 0; i < half.a.size(); ++i) {
    double ci = (i + 1) * 0.5;
    CHECK(half.a[i] <= ci);
    CHECK(ci - half.a[i] < 1.0);
  }
  auto conv = target_log10_partial_sums(half, 0.6);
  auto div = target_log10_partial_sums(half, 0.4);
  CHECK(conv.back() < 3);
  CHECK(div.back() > 6);
  CHECK_THROWS_AS(target_abscissa_spec(1, 1, type_a(1), 5), DomainError);
  CHECK_THROWS_AS(target_abscissa_spec(1, 1, type_a(2), 5), DomainError);
}

TEST_CASE("divisor tuples") {
  CHECK(divisor_tuple_count(1) == 1);
  CHECK(divisor_tuple_count(13) == 1);
  CHECK(divisor_tuple_count(8) == 4);
  CHECK(divisor_tuple_count(12) == 8);
  for (std::uint64_t n = 1; n <= 300; ++n) CHECK(divisor_tuple_count(n) == tuples(n));
  double d = divisor_tuple_exponent(5000);
  for (std::uint64_t n = 2; n <= 5000; ++n) CHECK(double(divisor_tuple_count(n)) <= std::pow(double(n), d) + 1e-6);
}

TEST_CASE("parsing") {
  CHECK(parse_rational("0.5") == std::pair<std::uint64_t, std::uint64_t>{1, 2});
  CHECK(parse_rational("6/4") == std::pair<std::uint64_t, std::uint64_t>{3, 2});
  CHECK(parse_rational("2") == std::pair<std::uint64_t, std::uint64_t>{2, 1});
  CHECK_THROWS_AS(parse_rational("x"), ValidationError);
  auto spec = parse_spec_json(R"([{"type": {"rank": 1, "pos_roots": 1, "coxeter": 2}, "q": 25, "mult": 3}])");
  REQUIRE(spec.size() == 1);
  CHECK(spec[0].p == 5);
  CHECK(spec[0].power == 2);
  CHECK(spec[0].mult == 3);
  CHECK_THROWS_AS(parse_spec_json("[{\"q\": 6}]"), ValidationError);
}
