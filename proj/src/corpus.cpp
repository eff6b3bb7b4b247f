#include "orbitlab/corpus.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "orbitlab/errors.hpp"
#include "orbitlab/ffield.hpp"

namespace orbitlab::corpus {

using grouptab::PcPresentation;

namespace {

struct PcDef {
  std::uint32_t p, n;
  // "i^=w" sets g_i^p = w, "[j,i]=w" sets [g_j, g_i] = w. A word lists
  // generator numbers, one per unit exponent ("3 4" = g_3 g_4, "3 3" = g_3^2).
  std::vector<std::string> rels;
  std::uint64_t b0 = 1;
};

std::vector<std::pair<std::uint32_t, std::uint32_t>> parse_word(const std::string& w) {
  std::map<std::uint32_t, std::uint32_t> ex;
  std::istringstream in(w);
  std::uint32_t g;
  while (in >> g) ++ex[g];
  return {ex.begin(), ex.end()};
}

PcPresentation build(const PcDef& d) {
  PcPresentation pres(d.p, d.n);
  for (const auto& r : d.rels) {
    const auto eq = r.find('=');
    const std::string lhs = r.substr(0, eq), rhs = r.substr(eq + 1);
    if (lhs.front() == '[') {
      const auto comma = lhs.find(',');
      const auto j = static_cast<std::uint32_t>(std::stoul(lhs.substr(1, comma - 1)));
      const auto i = static_cast<std::uint32_t>(std::stoul(lhs.substr(comma + 1)));
      pres.set_comm(j, i, parse_word(rhs));
    } else {
      pres.set_power(static_cast<std::uint32_t>(std::stoul(lhs)), parse_word(rhs));
    }
  }
  return pres;
}

const std::map<std::string, PcDef>& definitions() {
  static const std::map<std::string, PcDef> defs = {
      {"C2", {2, 1, {}}},
      {"C4", {2, 2, {"1^=2"}}},
      {"C2xC2", {2, 2, {}}},
      {"C8", {2, 3, {"1^=2", "2^=3"}}},
      {"C4xC2", {2, 3, {"1^=3"}}},
      {"C2^3", {2, 3, {}}},
      {"D8", {2, 3, {"2^=3", "[2,1]=3"}}},
      {"Q8", {2, 3, {"1^=3", "2^=3", "[2,1]=3"}}},
      {"C16", {2, 4, {"1^=2", "2^=3", "3^=4"}}},
      {"C4xC4", {2, 4, {"1^=3", "2^=4"}}},
      {"SG16_3", {2, 4, {"2^=4", "[2,1]=3"}}},
      {"C4:C4", {2, 4, {"1^=3", "2^=4", "[2,1]=4"}}},
      {"C8xC2", {2, 4, {"1^=3", "3^=4"}}},
      {"M16", {2, 4, {"1^=3", "3^=4", "[2,1]=4"}}},
      {"D16", {2, 4, {"2^=3", "3^=4", "[2,1]=3 4", "[3,1]=4"}}},
      {"SD16", {2, 4, {"2^=3", "3^=4", "[2,1]=3", "[3,1]=4"}}},
      {"Q16", {2, 4, {"1^=4", "2^=3", "3^=4", "[2,1]=3 4", "[3,1]=4"}}},
      {"C4xC2^2", {2, 4, {"1^=4"}}},
      {"D8xC2", {2, 4, {"2^=3", "[2,1]=3"}}},
      {"Q8xC2", {2, 4, {"1^=3", "2^=3", "[2,1]=3"}}},
      {"C4oD8", {2, 4, {"2^=4", "3^=4", "[2,1]=4"}}},
      {"C2^4", {2, 4, {}}},
      {"C32", {2, 5, {"1^=2", "2^=3", "3^=4", "4^=5"}}},
      {"C2^5", {2, 5, {}}},
      {"D32", {2, 5, {"2^=3", "3^=4", "4^=5", "[2,1]=3 4 5", "[3,1]=4 5", "[4,1]=5"}}},
      {"SD32", {2, 5, {"2^=3", "3^=4", "4^=5", "[2,1]=3 4", "[3,1]=4 5", "[4,1]=5"}}},
      {"Q32", {2, 5, {"1^=5", "2^=3", "3^=4", "4^=5", "[2,1]=3 4 5", "[3,1]=4 5", "[4,1]=5"}}},
      {"D8xC4", {2, 5, {"2^=3", "[2,1]=3", "4^=5"}}},
      {"Q8xC4", {2, 5, {"1^=3", "2^=3", "[2,1]=3", "4^=5"}}},
      {"2+^(1+4)", {2, 5, {"[2,1]=5", "[4,3]=5"}}},
      {"2-^(1+4)", {2, 5, {"[2,1]=5", "3^=5", "4^=5", "[4,3]=5"}}},
      // Order 128, class 3, with |B_0| = 2.
      {"P128",
       {2, 7, {"1^=4", "2^=5", "[2,1]=3", "[3,1]=6", "[3,2]=7", "[4,2]=6", "[5,1]=7"}, 2}},
      {"C3", {3, 1, {}}},
      {"C9", {3, 2, {"1^=2"}}},
      {"C3xC3", {3, 2, {}}},
      {"C27", {3, 3, {"1^=2", "2^=3"}}},
      {"C9xC3", {3, 3, {"1^=3"}}},
      {"C3^3", {3, 3, {}}},
      {"Heis27", {3, 3, {"[2,1]=3"}}},
      {"3-^(1+2)", {3, 3, {"2^=3", "[2,1]=3"}}},
  };
  return defs;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t n) {
  std::uint64_t r = 1;
  while (n--) r *= b;
  return r;
}

ffield::FieldHandle field_of_order(std::uint64_t q, const Budgets& budgets) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (!ffield::is_prime(p) || q % p) continue;
    std::uint32_t e = 0;
    std::uint64_t r = q;
    while (r % p == 0) r /= p, ++e;
    if (r != 1) break;
    return ffield::make_field(p, e, budgets);
  }
  throw ValidationError("F" + std::to_string(q) + ": field order must be a prime power");
}

std::uint64_t parse_count(const std::string& s, const std::string& name) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ValidationError("bad algebra name '" + name + "'");
  return std::stoull(s);
}

}  // namespace

const std::vector<GroupEntry>& group_catalog() {
  static const std::vector<GroupEntry> cat = [] {
    std::vector<GroupEntry> out;
    for (const auto& [name, d] : definitions()) out.push_back({name, d.p, ipow(d.p, d.n), d.b0});
    std::sort(out.begin(), out.end(), [](const GroupEntry& a, const GroupEntry& b) {
      return std::tie(a.p, a.order, a.name) < std::tie(b.p, b.order, b.name);
    });
    return out;
  }();
  return cat;
}

const GroupEntry& group_entry(const std::string& name) {
  for (const auto& e : group_catalog())
    if (e.name == name) return e;
  throw ValidationError("unknown corpus group '" + name + "'");
}

std::vector<std::string> group_names(std::uint64_t max_order, std::uint32_t p) {
  std::vector<std::string> out;
  for (const auto& e : group_catalog())
    if (e.order <= max_order && (p == 0 || e.p == p)) out.push_back(e.name);
  return out;
}

PcPresentation group_presentation(const std::string& name) {
  auto it = definitions().find(name);
  if (it == definitions().end()) throw ValidationError("unknown corpus group '" + name + "'");
  return build(it->second);
}

grouptab::FiniteGroup make_group(const std::string& name, const Budgets& budgets) {
  auto g = grouptab::FiniteGroup::from_power_commutator(group_presentation(name), budgets);
  g.set_name(name);
  return g;
}

PcPresentation free_class2_exponent_p(std::uint32_t p) {
  if (!ffield::is_prime(p)) throw DomainError("free_class2_exponent_p needs a prime");
  PcPresentation pres(p, 10);
  std::uint32_t c = 5;
  for (std::uint32_t i = 1; i <= 4; ++i)
    for (std::uint32_t j = i + 1; j <= 4; ++j) pres.set_comm(j, i, {{c++, 1}});
  return pres;
}

grouptab::Index free_class2_central_element(const grouptab::FiniteGroup& g) {
  const auto* pres = g.presentation();
  if (!pres || pres->n != 10) throw DomainError("expected the 10-generator class-2 group");
  // [x_1, x_2] = [x_2, x_1]^{-1} = g_5^{-1}; [x_3, x_4] = g_10^{-1}.
  std::vector<std::uint32_t> ex(10, 0);
  ex[4] = pres->p - 1;
  ex[9] = pres->p - 1;
  const auto z = grouptab::element_from_exponents(g, ex);
  const auto x = [&](std::uint32_t i) {
    std::vector<std::uint32_t> v(10, 0);
    v[i] = 1;
    return grouptab::element_from_exponents(g, v);
  };
  const auto direct = g.mul(g.commutator(x(0), x(1)), g.commutator(x(2), x(3)));
  check_internal(direct == z, "[x1,x2][x3,x4] does not match its collected form");
  return z;
}

nilalg::NilAlgebra make_algebra(const std::string& name, const Budgets& budgets) {
  nilalg::NilAlgebra out = [&] {
    if (name.rfind("I_F", 0) == 0) {
      const auto lb = name.find('['), rb = name.rfind(']');
      if (lb == std::string::npos || rb != name.size() - 1) throw ValidationError("bad algebra name '" + name + "'");
      auto f = field_of_order(parse_count(name.substr(3, lb - 3), name), budgets);
      return nilalg::make_augmentation_ideal(make_group(name.substr(lb + 1, rb - lb - 1), budgets), f, budgets);
    }
    const auto us = name.find("_F");
    if (us == std::string::npos) throw ValidationError("bad algebra name '" + name + "'");
    auto f = field_of_order(parse_count(name.substr(us + 2), name), budgets);
    if (name[0] == 'u')
      return nilalg::make_unitriangular(static_cast<unsigned>(parse_count(name.substr(1, us - 1), name)), f, budgets);
    if (name.rfind("zero", 0) == 0)
      return nilalg::make_zero_product(f, parse_count(name.substr(4, us - 4), name), budgets);
    throw ValidationError("bad algebra name '" + name + "'");
  }();
  out.set_name(name);
  return out;
}

const std::vector<std::string>& algebra_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (unsigned n = 2; n <= 4; ++n)
      for (unsigned q : {2, 3, 4, 5}) out.push_back("u" + std::to_string(n) + "_F" + std::to_string(q));
    out.push_back("u3_F9");
    for (const char* z : {"zero3_F2", "zero4_F2", "zero2_F3", "zero2_F4", "zero2_F5", "zero1_F9"}) out.push_back(z);
    for (const auto& g : group_names(16, 2)) out.push_back("I_F2[" + g + "]");
    for (const char* g : {"D32", "Q32", "2+^(1+4)"}) out.push_back(std::string("I_F2[") + g + "]");
    out.push_back("I_F4[C2]");
    out.push_back("I_F4[C4]");
    for (const auto& g : group_names(9, 3)) out.push_back("I_F3[" + g + "]");
    return out;
  }();
  return names;
}

const std::vector<ZetaEntry>& zeta_specs() {
  static const std::vector<ZetaEntry> specs = [] {
    std::vector<ZetaEntry> out;
    out.push_back({"sl2_tower_p5", zetalab::sl2_tower(5, 1'000'000), zetalab::SeriesMode::kExactSl2});
    out.push_back({"sl2_tower_p3", [] {
                     auto s = zetalab::sl2_tower(3, 1'000'000);
                     s.erase(s.begin());  // SL_2(3) is not of the covered shape
                     return s;
                   }(),
                   zetalab::SeriesMode::kExactSl2});
    zetalab::FactorSpec mixed;
    for (std::uint32_t p : {5, 7, 11, 13}) mixed.push_back({zetalab::type_a(1), p, 1, 3});
    out.push_back({"sl2_primes_x3", mixed, zetalab::SeriesMode::kExactSl2});
    zetalab::FactorSpec a2;
    for (std::uint32_t i = 1; i <= 4; ++i) a2.push_back({zetalab::type_a(2), 2, i, 2});
    out.push_back({"a2_p2_x2", a2, zetalab::SeriesMode::kAkovApprox});
    return out;
  }();
  return specs;
}

}  // namespace orbitlab::corpus
