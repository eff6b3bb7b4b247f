#include <doctest.h>

#include "orbitlab/bogomod.hpp"
#include "orbitlab/corpus.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/grouptab.hpp"

using namespace orbitlab;
using namespace orbitlab::bogomod;

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b, std::int64_t m) {
  std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] = mod(c[i][j] + a[i][k] * b[k][j], m);
  return c;
}

}  // namespace

TEST_CASE("Frobenius matrices") {
  CHECK(frobenius_matrix(3, 1, 4).m == IntMatrix{{1}});
  auto f = frobenius_matrix(2, 2, 2);
  CHECK(mod(f.m[0][0], 2) == 1);
  CHECK(mod(f.m[1][0], 2) == 0);
  CHECK(mod(f.m[0][1], 2) == 1);
  CHECK(mod(f.m[1][1], 2) == 1);
  for (auto [p, e, v] : {std::tuple{2u, 2u, 3u}, {2u, 3u, 4u}, {3u, 2u, 3u}, {5u, 2u, 2u}, {3u, 3u, 2u}}) {
    for (auto basis : {LiftBasis::kTeichmuller, LiftBasis::kPowersOfT}) {
      auto fm = frobenius_matrix(p, e, v, basis);
      auto res = residue_frobenius(p, e);
      for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < e; ++j) CHECK(mod(fm.m[i][j], p) == mod(res[i][j], p));
      // phi^e = 1 at working precision
      IntMatrix pw = fm.m;
      for (std::uint32_t k = 1; k < e; ++k) pw = mat_mul(pw, fm.m, fm.modulus);
      for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < e; ++j) CHECK(pw[i][j] == (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("hand-computed M_q") {
  auto c2 = grouptab::cyclic(2);
  auto m = compute_mq(c2, 2, 1);
  CHECK(m.factors == std::vector<std::uint64_t>{2});
  CHECK(compute_mq(c2, 2, 2).order == 4);

  auto c4 = grouptab::cyclic(4);
  auto r = compute_mq(c4, 2, 1);
  CHECK(r.factors == std::vector<std::uint64_t>{2, 4});
  CHECK(structure_string(r.factors) == "C2 x C4");
  REQUIRE(r.layers.size() == 2);
  CHECK(r.layers[0].classes == 2);
  CHECK(r.layers[1].classes == 1);
  CHECK(r.filtration_ok);

  CHECK(compute_mq(grouptab::cyclic(1), 2, 1).order == 1);
  CHECK(structure_string({}) == "1");
}

TEST_CASE("size law on small groups") {
  for (const char* name : {"D8", "Q8", "C2xC2", "C2^3", "C3xC3", "Heis27"}) {
    CAPTURE(name);
    auto g = corpus::make_group(name);
    auto k = grouptab::conjugacy_classes(g).count();
    for (std::uint32_t e : {1u, 2u}) {
      auto r = compute_mq(g, g.prime(), e);
      CHECK(r.order == predicted_ab_order(k, g.prime(), e, 1));
      CHECK(r.order_equals_q_pow_km1);
      CHECK(r.filtration_ok);
    }
  }
  auto d8 = compute_mq(corpus::make_group("D8"), 2, 1);
  std::size_t total = 0;
  for (const auto& l : d8.layers) total += l.classes;
  CHECK(total == 4);
  CHECK(d8.order == 16);
  auto v = compute_mq(corpus::make_group("C2^3"), 2, 1);
  CHECK(v.layers.size() == 1);
  CHECK(v.factors == std::vector<std::uint64_t>(7, 2));
}

TEST_CASE("basis choice does not change the invariants") {
  for (const char* name : {"C4", "D8", "M16", "C9"}) {
    CAPTURE(name);
    auto g = corpus::make_group(name);
    auto a = invariant_factors(build_mq(g, g.prime(), 2, 0, LiftBasis::kTeichmuller));
    auto b = invariant_factors(build_mq(g, g.prime(), 2, 0, LiftBasis::kPowersOfT));
    CHECK(a == b);
  }
}

TEST_CASE("precision does not matter above p exp(pi)") {
  auto g = corpus::make_group("C8");
  auto a = invariant_factors(build_mq(g, 2, 1));
  auto b = invariant_factors(build_mq(g, 2, 1, 7));
  CHECK(a == b);
  CHECK_THROWS_AS(build_mq(g, 2, 1, 2), DomainError);
}

TEST_CASE("characteristic mismatch") {
  CHECK_THROWS_AS(compute_mq(corpus::make_group("C2xC2"), 3, 1), DomainError);
  CHECK_THROWS_AS(compute_mq(grouptab::cyclic(6), 2, 1), DomainError);
}
