#include "orbitlab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "orbitlab/algroup.hpp"
#include "orbitlab/bogomod.hpp"
#include "orbitlab/coadjoint.hpp"
#include "orbitlab/corpus.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/ffield.hpp"
#include "orbitlab/grouptab.hpp"
#include "orbitlab/nilalg.hpp"
#include "orbitlab/zetalab.hpp"

namespace orbitlab::verify {

namespace {

using Outcome = std::pair<bool, std::string>;

class Runner {
 public:
  explicit Runner(Report& r) : report_(r) {}

  void check(const std::string& suite, const std::string& subject, const std::string& property,
             const std::function<Outcome()>& fn) {
    Check c{suite, subject, property, false, ""};
    try {
      std::tie(c.pass, c.detail) = fn();
    } catch (const Error& e) {
      c.detail = std::string(e.kind()) + ": " + e.what();
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    report_.checks.push_back(std::move(c));
  }

 private:
  Report& report_;
};

std::uint64_t ipow(std::uint64_t b, std::uint64_t n) {
  std::uint64_t r = 1;
  while (n--) r *= b;
  return r;
}

std::string eq_detail(std::uint64_t a, std::uint64_t b) { return std::to_string(a) + " vs " + std::to_string(b); }

// q^d when it fits, else 0.
std::uint64_t group_size(const nilalg::NilAlgebra& j) {
  const double lg = j.dim() * std::log2(double(j.field()->q()));
  return lg > 40 ? 0 : ipow(j.field()->q(), j.dim());
}

// k(G) = #{(a, b) : ab = ba} / |G|.
std::uint64_t commuting_pair_k(const grouptab::FiniteGroup& g) {
  std::uint64_t pairs = 0;
  for (grouptab::Index a = 0; a < g.order(); ++a)
    for (grouptab::Index b = 0; b < g.order(); ++b) pairs += g.mul(a, b) == g.mul(b, a);
  return pairs / g.order();
}

void suite_ffield(Runner& run) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u, 81u, 121u, 125u}) {
    std::uint32_t p = 2;
    while (q % p) ++p;
    std::uint32_t e = 0;
    for (std::uint32_t r = q; r > 1; r /= p) ++e;
    const auto f = ffield::make_field(p, e);
    run.check("ffield", f->name(), "field axioms and Frobenius", [&]() -> Outcome {
      for (ffield::Elt a = 0; a < q; ++a) {
        if (a && f->mul(a, f->inv(a)) != 1) return {false, "a * a^-1 != 1 at a = " + std::to_string(a)};
        if (f->trace(a) >= p) return {false, "trace outside F_p"};
        for (ffield::Elt b = 0; b < q; ++b) {
          if (f->frobenius(f->add(a, b)) != f->add(f->frobenius(a), f->frobenius(b)))
            return {false, "(a+b)^p != a^p + b^p at " + std::to_string(a) + ", " + std::to_string(b)};
          if (f->trace(f->add(a, b)) != (f->trace(a) + f->trace(b)) % p) return {false, "trace not additive"};
          const ffield::Elt c = (a * 7 + b * 3 + 1) % q;
          if (f->mul(a, f->add(b, c)) != f->add(f->mul(a, b), f->mul(a, c))) return {false, "distributivity"};
        }
      }
      if (f->multiplicative_order(f->primitive()) != q - 1) return {false, "primitive element has wrong order"};
      return {true, ""};
    });
  }
}

void suite_grouptab(Runner& run, const Budgets& budgets) {
  for (const auto& e : corpus::group_catalog()) {
    run.check("grouptab", e.name, "k(G) = commuting pairs / |G|, class equation", [&]() -> Outcome {
      const auto g = corpus::make_group(e.name, budgets);
      if (g.order() != e.order) return {false, "order " + eq_detail(g.order(), e.order)};
      const auto cl = grouptab::conjugacy_classes(g, budgets);
      std::uint64_t total = 0;
      for (auto s : cl.sizes) total += s;
      if (total != g.order()) return {false, "class sizes sum to " + std::to_string(total)};
      const auto oracle = commuting_pair_k(g);
      return {cl.count() == oracle, "k = " + eq_detail(cl.count(), oracle)};
    });
  }
  run.check("grouptab", "free class-2 exponent-2 on 4 generators", "k(pi) = 2 k(pi / <z>)", [&]() -> Outcome {
    const auto g = grouptab::FiniteGroup::from_power_commutator(corpus::free_class2_exponent_p(2), budgets);
    const auto z = corpus::free_class2_central_element(g);
    const auto qg = grouptab::central_quotient(g, z, budgets);
    const auto k = grouptab::conjugacy_classes(g, budgets).count();
    const auto kq = grouptab::conjugacy_classes(qg, budgets).count();
    return {g.order() == 1024 && qg.order() == 512 && k == 2 * kq,
            "|pi| = " + std::to_string(g.order()) + ", k = " + std::to_string(k) + ", k~ = " + std::to_string(kq)};
  });
}

void suite_nilalg(Runner& run, const Options& opts, const Budgets& budgets) {
  for (const auto& name : corpus::algebra_names()) {
    run.check("nilalg", name, "structure constants valid, nilpotent", [&]() -> Outcome {
      const auto j = corpus::make_algebra(name, budgets);
      return {j.power_ideal_chain().size() == j.nilpotency_class(),
              "d = " + std::to_string(j.dim()) + ", class " + std::to_string(j.nilpotency_class())};
    });
  }
  if (opts.inject_fault) {
    run.check("nilalg", "u4_F2 (corrupted)", "structure constants valid, nilpotent", [&]() -> Outcome {
      const auto good = corpus::make_algebra("u4_F2", budgets);
      auto terms = good.terms();
      // e_12 e_23 = e_13 becomes e_12 e_23 = e_14.
      const auto i12 = nilalg::unitriangular_index(4, 1, 2), i23 = nilalg::unitriangular_index(4, 2, 3);
      for (auto& t : terms)
        if (t.i == i12 && t.j == i23) t.k = static_cast<std::uint32_t>(nilalg::unitriangular_index(4, 1, 4));
      nilalg::NilAlgebra::from_structure_constants(good.field(), good.dim(), terms, budgets);
      return {true, ""};
    });
  }
  // dim I/[I,I]_L = k(pi) - 1.
  for (const auto& e : corpus::group_catalog()) {
    if (e.order > 32) continue;
    const auto fields = e.p == 2 ? std::vector<std::uint32_t>{2} : std::vector<std::uint32_t>{3};
    for (auto q : fields) {
      run.check("nilalg", "I_F" + std::to_string(q) + "[" + e.name + "]", "dim I/[I,I]_L = k(pi) - 1",
                [&]() -> Outcome {
                  const auto g = corpus::make_group(e.name, budgets);
                  const auto j = nilalg::make_augmentation_ideal(g, ffield::make_field(q, 1, budgets), budgets);
                  const std::uint64_t lhs = j.dim() - j.derived_lie_subspace().dim();
                  const std::uint64_t k = grouptab::conjugacy_classes(g, budgets).count();
                  return {lhs == k - 1, eq_detail(lhs, k - 1)};
                });
    }
  }
}

void suite_algroup(Runner& run, const Budgets& budgets) {
  for (const auto& e : corpus::group_catalog()) {
    if (e.order > 16) continue;
    run.check("algroup", "1+I_F" + std::to_string(e.p) + "[" + e.name + "]", "|(1+I)_ab| = p^(k-1) |B_0|",
              [&]() -> Outcome {
                const auto g = corpus::make_group(e.name, budgets);
                const auto j = nilalg::make_augmentation_ideal(g, ffield::make_field(e.p, 1, budgets), budgets);
                const auto ab = algroup::group_abelianization_order(j, budgets);
                const auto k = grouptab::conjugacy_classes(g, budgets).count();
                const auto predicted = bogomod::predicted_ab_order(k, e.p, 1, e.b0);
                return {predicted == ab, std::to_string(ab) + " vs " + predicted.get_str()};
              });
  }
}

void suite_orbits(Runner& run, const Budgets& budgets) {
  for (const auto& name : corpus::algebra_names()) {
    const auto j = corpus::make_algebra(name, budgets);
    const auto n = group_size(j);
    if (n == 0 || n > (1u << 16)) continue;
    run.check("orbits", name, "orbit count = k(1+J), sum fake^2 = |J|, fixed points", [&]() -> Outcome {
      coadjoint::DualSpace ds(j);
      const auto census = coadjoint::orbit_census(ds, budgets);
      const auto k = algroup::k_of_group(j, budgets);
      std::uint64_t squares = 0;
      for (const auto& [deg, mult] : coadjoint::fake_degree_multiset(census)) squares += deg * deg * mult;
      coadjoint::fixed_point_count(ds, census);
      return {census.count() == k && squares == n,
              "orbits " + eq_detail(census.count(), k) + ", sum fake^2 " + eq_detail(squares, n)};
    });
  }
}

void suite_characters(Runner& run, const Budgets& budgets) {
  for (const auto& name : corpus::algebra_names()) {
    const auto j = corpus::make_algebra(name, budgets);
    const auto n = group_size(j);
    if (n == 0 || n > (1u << 12) || !j.is_p_nilpotent()) continue;
    run.check("characters", name, "orthonormal, induced from H_lambda, transitive", [&]() -> Outcome {
      coadjoint::DualSpace ds(j);
      const auto census = coadjoint::orbit_census(ds, budgets);
      const auto classes = coadjoint::group_classes_with_logs(ds, budgets);
      const auto table = coadjoint::orbit_method_characters(ds, census, classes);
      if (!coadjoint::orthonormality_check(table, census, classes)) return {false, "orthonormality"};
      for (std::size_t o = 0; o < census.count(); ++o) {
        if (!coadjoint::verify_induced(ds, census, o, classes, table.values[o]))
          return {false, "induced character differs on orbit " + std::to_string(o)};
        if (!coadjoint::transitivity_check(ds, census.orbits[o].functional, budgets))
          return {false, "transitivity fails on orbit " + std::to_string(o)};
      }
      return {true, std::to_string(census.count()) + " characters"};
    });
  }
}

void suite_mq(Runner& run, const Budgets& budgets) {
  run.check("mq", "C2", "M_2 = C2", [&]() -> Outcome {
    const auto r = bogomod::compute_mq(corpus::make_group("C2", budgets), 2, 1, budgets);
    return {r.factors == std::vector<std::uint64_t>{2}, bogomod::structure_string(r.factors)};
  });
  run.check("mq", "C4", "M_2 = C2 x C4", [&]() -> Outcome {
    const auto r = bogomod::compute_mq(corpus::make_group("C4", budgets), 2, 1, budgets);
    return {r.factors == std::vector<std::uint64_t>{2, 4}, bogomod::structure_string(r.factors)};
  });
  for (const auto& e : corpus::group_catalog())
    for (std::uint32_t ex : {1u, 2u}) {
      run.check("mq", e.name + " q=" + std::to_string(ipow(e.p, ex)), "|M_q| = q^(k-1), layers", [&]() -> Outcome {
        const auto g = corpus::make_group(e.name, budgets);
        const auto r = bogomod::compute_mq(g, e.p, ex, budgets);
        bool ok = r.order_equals_q_pow_km1 && r.filtration_ok;
        if (e.order <= 32) {
          const auto alt = bogomod::build_mq(g, e.p, ex, 0, bogomod::LiftBasis::kPowersOfT, budgets);
          ok = ok && bogomod::invariant_factors(alt) == r.factors;
        }
        return {ok, bogomod::structure_string(r.factors)};
      });
    }
}

void suite_zeta(Runner& run, const Budgets& budgets) {
  run.check("zeta", "SL_2(q), odd 5 <= q <= 1000", "q + 4 degrees, sum deg^2 = q(q^2 - 1)", []() -> Outcome {
    std::size_t n = 0;
    for (std::uint64_t q = 5; q <= 1000; q += 2) {
      std::uint64_t r = q, p = 3;
      while (r % p) ++p;
      while (r % p == 0) r /= p;
      if (r != 1) continue;
      zetalab::sl2_degrees(q);  // throws on a failed identity
      ++n;
    }
    return {true, std::to_string(n) + " prime powers"};
  });
  run.check("zeta", "random series", "Dirichlet product matches the naive sum", []() -> Outcome {
    std::mt19937_64 rng(7);
    const std::uint64_t n = 300;
    auto make = [&] {
      auto t = zetalab::TruncatedDirichlet::trivial(n);
      for (std::uint64_t i = 2; i <= n; ++i) t.r[i] = static_cast<unsigned long>(rng() % 3 == 0 ? rng() % 5 : 0);
      return t;
    };
    const auto f = make(), g = make();
    const auto h = zetalab::dirichlet_product(f, g, n);
    for (std::uint64_t m = 1; m <= n; ++m) {
      mpz_class s = 0;
      for (std::uint64_t a = 1; a <= m; ++a)
        if (m % a == 0) s += f.r[a] * g.r[m / a];
      if (s != h.r[m]) return {false, "coefficient " + std::to_string(m)};
    }
    return {true, ""};
  });
  for (const auto& z : corpus::zeta_specs()) {
    run.check("zeta", z.name, "R_{n^2} >= l(n)(l(n)-1)/2 for n = 2, 4, 8, 16", [&]() -> Outcome {
      const auto s = zetalab::product_series(z.spec, 256, z.mode, budgets);
      for (std::uint64_t n : {2, 4, 8, 16})
        if (!zetalab::prg_witness(s, z.spec, n, z.mode)) return {false, "fails at n = " + std::to_string(n)};
      return {true, zetalab::mode_name(z.mode)};
    });
  }
  struct Target {
    std::uint64_t num, den;
    zetalab::LieType type;
    std::uint32_t p;
  };
  for (const auto& t : {Target{1, 2, zetalab::type_a(5), 2}, Target{1, 1, zetalab::type_a(3), 2},
                        Target{2, 1, zetalab::type_a(1), 5}}) {
    const std::string c = std::to_string(t.num) + "/" + std::to_string(t.den);
    run.check("zeta", "target c = " + c + " (" + t.type.name + ")", "partial sums bounded above c, diverge below",
              [&]() -> Outcome {
                const auto spec = zetalab::target_abscissa_spec(t.num, t.den, t.type, t.p);
                const double cv = double(t.num) / double(t.den);
                const auto above = zetalab::target_log10_partial_sums(spec, cv + 0.1);
                const auto below = zetalab::target_log10_partial_sums(spec, cv - 0.1);
                const double hi = *std::max_element(above.begin(), above.end());
                std::ostringstream d;
                d << std::setprecision(4) << "log10 max above " << hi << ", final below " << below.back();
                return {hi < 3.0 && below.back() > 6.0, d.str()};
              });
  }
  run.check("zeta", "ordered factorizations", "f(8) = 4, f(12) = 8, f(p) = 1", []() -> Outcome {
    const bool ok = zetalab::divisor_tuple_count(8) == 4 && zetalab::divisor_tuple_count(12) == 8 &&
                    zetalab::divisor_tuple_count(97) == 1;
    return {ok, ""};
  });
}

}  // namespace

bool Report::ok() const { return failures() == 0; }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back(
        {{"suite", c.suite}, {"subject", c.subject}, {"property", c.property}, {"pass", c.pass}, {"detail", c.detail}});
  j["passed"] = checks.size() - failures();
  j["failed"] = failures();
  return j.dump(2);
}

std::string Report::table() const {
  std::size_t w = 8;
  for (const auto& c : checks) w = std::max(w, c.subject.size());
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(11) << c.suite << std::setw(int(w) + 2) << c.subject
        << c.property;
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << '\n';
  }
  out << checks.size() - failures() << " passed, " << failures() << " failed\n";
  return out.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ffield", "grouptab", "nilalg",     "algroup",
                                                 "orbits", "characters", "mq", "zeta"};
  return names;
}

Report run(const Options& opts, const Budgets& budgets) {
  for (const auto& s : opts.only)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ValidationError("unknown suite '" + s + "'");
  auto wanted = [&](const std::string& s) {
    return opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), s) != opts.only.end();
  };
  // Suites are independent; they run on up to `threads` workers and are merged
  // in suite order, so the report does not depend on the thread count.
  using SuiteFn = std::function<void(Runner&)>;
  const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"ffield", [&](Runner& r) { suite_ffield(r); }},
      {"grouptab", [&](Runner& r) { suite_grouptab(r, budgets); }},
      {"nilalg", [&](Runner& r) { suite_nilalg(r, opts, budgets); }},
      {"algroup", [&](Runner& r) { suite_algroup(r, budgets); }},
      {"orbits", [&](Runner& r) { suite_orbits(r, budgets); }},
      {"characters", [&](Runner& r) { suite_characters(r, budgets); }},
      {"mq", [&](Runner& r) { suite_mq(r, budgets); }},
      {"zeta", [&](Runner& r) { suite_zeta(r, budgets); }},
  };
  std::vector<const SuiteFn*> todo;
  for (const auto& [name, fn] : suites)
    if (wanted(name)) todo.push_back(&fn);
  std::vector<Report> parts(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < todo.size();) {
      Runner r(parts[i]);
      (*todo[i])(r);
    }
  };
  const std::size_t n = std::min<std::size_t>(budgets.effective_threads(), std::max<std::size_t>(todo.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  Report report;
  for (auto& part : parts)
    for (auto& c : part.checks) report.checks.push_back(std::move(c));
  return report;
}

}  // namespace orbitlab::verify
