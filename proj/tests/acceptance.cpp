// Acceptance run: one PASS/FAIL line per criterion. `acceptance --only N` runs one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbitlab/algroup.hpp"
#include "orbitlab/bogomod.hpp"
#include "orbitlab/coadjoint.hpp"
#include "orbitlab/corpus.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/grouptab.hpp"
#include "orbitlab/nilalg.hpp"
#include "orbitlab/zetalab.hpp"

using namespace orbitlab;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream note;
  std::string first_failure;
  void fail(const std::string& what) {
    if (pass) first_failure = what;
    pass = false;
  }
};

double log_q_power(std::uint64_t x, std::uint64_t q) {
  double r = std::log(double(x)) / std::log(double(q));
  return std::abs(r - std::round(r)) < 1e-9 ? std::round(r) : -1;
}

std::uint64_t group_size(const nilalg::NilAlgebra& j) {
  return static_cast<std::uint64_t>(std::llround(std::pow(double(j.field()->q()), double(j.dim()))));
}

// q^d <= limit, without overflow
bool small(const nilalg::NilAlgebra& j, std::uint64_t limit) {
  return j.dim() * std::log2(double(j.field()->q())) <= std::log2(double(limit)) + 1e-9;
}

std::vector<nilalg::NilAlgebra> algebras_up_to(std::uint64_t limit, bool p_nilpotent) {
  std::vector<nilalg::NilAlgebra> out;
  for (const auto& name : corpus::algebra_names()) {
    auto j = corpus::make_algebra(name);
    if (!small(j, limit)) continue;
    if (p_nilpotent && !j.is_p_nilpotent()) continue;
    out.push_back(std::move(j));
  }
  return out;
}

void orbit_class_duality(Verdict& v) {
  std::size_t n = 0;
  for (const auto& j : algebras_up_to(1u << 16, false)) {
    coadjoint::DualSpace ds(j);
    auto census = coadjoint::orbit_census(ds);
    auto k = algroup::k_of_group(j);
    if (census.count() != k)
      v.fail(j.name() + ": " + std::to_string(census.count()) + " orbits, k = " + std::to_string(k));
    ++n;
  }
  v.note << n << " algebras";
}

void fake_degrees(Verdict& v) {
  std::size_t n = 0, orbits = 0;
  for (const auto& j : algebras_up_to(1u << 16, false)) {
    coadjoint::DualSpace ds(j);
    auto census = coadjoint::orbit_census(ds);
    std::uint64_t q = j.field()->q(), total = 0, size_j = group_size(j);
    for (const auto& o : census.orbits) {
      total += o.fake_degree * o.fake_degree;
      if (o.fake_degree * o.fake_degree != o.size || log_q_power(o.fake_degree, q) < 0)
        v.fail(j.name() + ": fake degree " + std::to_string(o.fake_degree) + " is not a q-power");
      auto rad = coadjoint::radical(ds, o.functional);
      std::uint64_t rad_size = std::llround(std::pow(double(ds.p()), double(rad.dim())));
      if (o.size * rad_size != size_j) v.fail(j.name() + ": orbit size differs from |J/Rad|");
      if (census.members(census.orbit_of[o.rep]).size() != o.size) v.fail(j.name() + ": orbit member count");
    }
    if (total != size_j) v.fail(j.name() + ": sum of fake degree squares " + std::to_string(total));
    ++n;
    orbits += census.count();
  }
  v.note << n << " algebras, " << orbits << " orbits";
}

void orbit_method(Verdict& v) {
  std::size_t n = 0, chars = 0;
  for (const auto& j : algebras_up_to(1u << 12, true)) {
    coadjoint::DualSpace ds(j);
    auto census = coadjoint::orbit_census(ds);
    auto classes = coadjoint::group_classes_with_logs(ds);
    auto table = coadjoint::orbit_method_characters(ds, census, classes);
    if (census.count() != algroup::k_of_group(j)) v.fail(j.name() + ": character count");
    if (!coadjoint::orthonormality_check(table, census, classes)) v.fail(j.name() + ": orthonormality");
    for (std::size_t o = 0; o < census.count(); ++o) {
      if (table.degrees[o] * table.degrees[o] != census.orbits[o].size) v.fail(j.name() + ": chi(1)^2 != |Omega|");
      if (!table.values[o][classes.data.class_of[0]].is_integer(table.degrees[o]))
        v.fail(j.name() + ": chi(1) value");
      if (!coadjoint::verify_induced(ds, census, o, classes, table.values[o]))
        v.fail(j.name() + ": induced character differs for orbit " + std::to_string(o));
    }
    ++n;
    chars += census.count();
  }
  v.note << n << " algebras, " << chars << " characters";
}

void abelianization(Verdict& v) {
  std::size_t dims = 0, groups = 0;
  for (const auto& e : corpus::group_catalog()) {
    if (e.order > 32) continue;
    auto g = corpus::make_group(e.name);
    auto k = grouptab::conjugacy_classes(g).count();
    auto j = nilalg::make_augmentation_ideal(g, ffield::make_field(e.p, 1));
    if (j.dim() - j.derived_lie_subspace().dim() != k - 1) v.fail("I_F" + std::to_string(e.p) + "[" + e.name + "]");
    ++dims;
    if (e.order > 16) continue;
    auto ab = algroup::group_abelianization_order(j);
    if (bogomod::predicted_ab_order(k, e.p, 1, 1) != ab)
      v.fail("|(1+I)_ab| for " + e.name + " = " + std::to_string(ab));
    ++groups;
  }
  v.note << dims << " dimension checks, " << groups << " closure checks";
}

void disproof_ingredient(Verdict& v) {
  auto g = grouptab::FiniteGroup::from_power_commutator(corpus::free_class2_exponent_p(2));
  auto quo = grouptab::central_quotient(g, corpus::free_class2_central_element(g));
  auto k = grouptab::conjugacy_classes(g).count(), kq = grouptab::conjugacy_classes(quo).count();
  v.note << "|pi| = " << g.order() << ", k = " << k << "; |pi~| = " << quo.order() << ", k = " << kq;
  if (g.order() != 1024 || quo.order() != 512 || k != 2 * kq) v.fail("k(pi) != 2 k(pi~)");
}

void mq_size_law(Verdict& v) {
  std::size_t runs = 0;
  for (const auto& e : corpus::group_catalog()) {
    auto g = corpus::make_group(e.name);
    for (std::uint32_t ex : {1u, 2u}) {
      auto r = bogomod::compute_mq(g, e.p, ex);
      if (!r.order_equals_q_pow_km1) v.fail(e.name + " e = " + std::to_string(ex) + ": |M_q| != q^(k-1)");
      if (!r.filtration_ok) v.fail(e.name + " e = " + std::to_string(ex) + ": layer sizes");
      ++runs;
    }
  }
  auto c2 = bogomod::compute_mq(grouptab::cyclic(2), 2, 1).factors;
  auto c4 = bogomod::compute_mq(grouptab::cyclic(4), 2, 1).factors;
  if (c2 != std::vector<std::uint64_t>{2}) v.fail("M_2(C2)");
  if (c4 != std::vector<std::uint64_t>{2, 4}) v.fail("M_2(C4)");
  v.note << runs << " groups x fields; M_2(C4) = " << bogomod::structure_string(c4);
}

void sl2_data(Verdict& v) {
  std::size_t n = 0;
  for (std::uint64_t q = 5; q <= 1000; q += 2) {
    std::uint64_t p = 0;
    for (std::uint64_t d = 3; d <= q; d += 2)
      if (q % d == 0) {
        p = d;
        break;
      }
    std::uint64_t r = q;
    while (r % p == 0) r /= p;
    if (r != 1) continue;
    mpz_class cnt = 0, sq = 0;
    for (auto [d, m] : zetalab::sl2_degrees(q)) {
      cnt += m;
      sq += mpz_class(m) * d * d;
    }
    if (cnt != q + 4 || sq != mpz_class(q) * (q * q - 1)) v.fail("q = " + std::to_string(q));
    ++n;
  }
  v.note << n << " odd prime powers";
}

void abscissa(Verdict& v) {
  const std::uint64_t n = 1'000'000;
  auto tower = zetalab::sl2_tower(5, n);
  auto s = zetalab::product_series(tower, n, zetalab::SeriesMode::kExactSl2);
  auto est = zetalab::abscissa_estimate(s);
  char buf[160];
  std::snprintf(buf, sizeof buf, "tower estimate %.3f (tail slope %.3f, window [0.85, 1.15])", est.estimate, est.slope);
  v.note << buf;
  if (est.estimate < 0.85 || est.estimate > 1.15) v.fail("tower estimate outside the window");
  for (auto [a, b] : {std::pair{1u, 2u}, {1u, 1u}, {2u, 1u}}) {
    auto e = zetalab::abscissa_estimate(zetalab::synthetic_power_series(a, b, n)).estimate;
    std::snprintf(buf, sizeof buf, "; c = %g -> %.4f", double(a) / b, e);
    v.note << buf;
    if (std::abs(e - double(a) / b) > 0.05) v.fail("synthetic c = " + std::to_string(double(a) / b));
  }
}

void target(Verdict& v) {
  struct Case {
    std::uint64_t num, den;
    zetalab::LieType type;
    std::uint32_t p;
  };
  for (const auto& c : {Case{1, 2, zetalab::type_a(5), 2}, Case{1, 1, zetalab::type_a(3), 2},
                        Case{2, 1, zetalab::type_a(1), 5}}) {
    auto spec = zetalab::target_abscissa_spec(c.num, c.den, c.type, c.p, 400);
    double cv = double(c.num) / c.den;
    auto above = zetalab::target_log10_partial_sums(spec, cv + 0.1);
    auto below = zetalab::target_log10_partial_sums(spec, cv - 0.1);
    double hi = -1e300;
    for (double x : above) hi = std::max(hi, x);
    char buf[160];
    std::snprintf(buf, sizeof buf, "[c = %g (%s, p = %u): max log10 S = %.2f above, %.1f below] ", cv,
                  c.type.name.c_str(), c.p, hi, below.back());
    v.note << buf;
    if (!(hi < 3)) v.fail("partial sums unbounded above c");
    if (!(below.back() > 6)) v.fail("partial sums stay small below c");
  }
}

void prg(Verdict& v) {
  std::size_t n = 0;
  for (const auto& z : corpus::zeta_specs()) {
    auto s = zetalab::product_series(z.spec, 256, z.mode);
    for (std::uint64_t m : {2, 4, 8, 16}) {
      if (!zetalab::prg_witness(s, z.spec, m, z.mode)) v.fail(z.name + " at n = " + std::to_string(m));
      ++n;
    }
  }
  v.note << n << " checks over " << corpus::zeta_specs().size() << " products";
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<void(Verdict&)> body;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "criterion numbers");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, "orbit count equals class count", 60, orbit_class_duality},
      {2, "fake degree identities", 60, fake_degrees},
      {3, "orbit-method characters", 300, orbit_method},
      {4, "abelianization law", 600, abelianization},
      {5, "k(pi) = 2 k(pi~) for the class-2 group", 300, disproof_ingredient},
      {6, "M_q size law", 120, mq_size_law},
      {7, "SL2 degree identities", 10, sl2_data},
      {8, "abscissa estimates", 300, abscissa},
      {9, "target-abscissa partial sums", 60, target},
      {10, "PRG witness", 60, prg},
  };
  bool ok = true;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) v.fail("over the time limit");
    char head[160];
    std::snprintf(head, sizeof head, "criterion %d: %s  %s (%.1fs of %.0fs)  ", c.id, v.pass ? "PASS" : "FAIL", c.title,
                  secs, c.limit_seconds);
    std::cout << head << v.note.str();
    if (!v.pass) std::cout << " | first failure: " << v.first_failure;
    std::cout << std::endl;
    ok = ok && v.pass;
  }
  return ok ? 0 : 1;
}
