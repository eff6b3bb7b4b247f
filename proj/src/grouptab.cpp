#include "orbitlab/grouptab.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <sstream>

#include "orbitlab/closure.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/ffield.hpp"

namespace orbitlab::grouptab {

namespace {

std::uint32_t prime_of_order(std::uint64_t m) {
  if (m < 2) return 0;
  std::uint32_t p = 2;
  while (m % p) ++p;
  while (m % p == 0) m /= p;
  return m == 1 ? p : 0;
}

class TableOracle final : public MulOracle {
 public:
  explicit TableOracle(std::vector<Index> t, Index m) : table_(std::move(t)), m_(m) {}
  Index mul(Index a, Index b) const override { return table_[std::size_t(a) * m_ + b]; }

 private:
  std::vector<Index> table_;
  Index m_;
};

class ProductOracle final : public MulOracle {
 public:
  ProductOracle(FiniteGroup a, FiniteGroup b) : a_(std::move(a)), b_(std::move(b)) {}
  Index mul(Index x, Index y) const override {
    const Index nb = b_.order();
    return a_.mul(x / nb, y / nb) * nb + b_.mul(x % nb, y % nb);
  }

 private:
  FiniteGroup a_, b_;
};

class PermOracle final : public MulOracle {
 public:
  PermOracle(std::vector<std::vector<std::uint32_t>> perms,
             std::map<std::vector<std::uint32_t>, Index> index)
      : perms_(std::move(perms)), index_(std::move(index)) {}
  Index mul(Index a, Index b) const override {
    const auto& x = perms_[a];
    const auto& y = perms_[b];
    std::vector<std::uint32_t> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = y[x[i]];
    return index_.at(z);
  }

 private:
  std::vector<std::vector<std::uint32_t>> perms_;
  std::map<std::vector<std::uint32_t>, Index> index_;
};

}  // namespace

// Defined in pcgroup.cpp.
std::shared_ptr<const MulOracle> make_pc_oracle(const PcPresentation& pres, const Budgets& budgets);
void validate_pc_presentation(const PcPresentation& pres, const Budgets& budgets);

PcPresentation::PcPresentation(std::uint32_t p_, std::uint32_t n_)
    : p(p_), n(n_), power(n_, std::vector<std::uint32_t>(n_, 0)) {}

namespace {
std::vector<std::uint32_t> word_from_pairs(std::uint32_t p, std::uint32_t n,
                                           const std::vector<std::pair<std::uint32_t, std::uint32_t>>& w) {
  std::vector<std::uint32_t> out(n, 0);
  for (auto [g, e] : w) {
    if (g < 1 || g > n) throw PresentationError("generator index out of range in pc word");
    out[g - 1] = (out[g - 1] + e) % p;
  }
  return out;
}
}  // namespace

PcPresentation& PcPresentation::set_power(std::uint32_t i,
                                          std::vector<std::pair<std::uint32_t, std::uint32_t>> word) {
  if (i < 1 || i > n) throw PresentationError("power relation index out of range");
  power[i - 1] = word_from_pairs(p, n, word);
  return *this;
}

PcPresentation& PcPresentation::set_comm(std::uint32_t j, std::uint32_t i,
                                         std::vector<std::pair<std::uint32_t, std::uint32_t>> word) {
  if (!(j > i && i >= 1 && j <= n)) throw PresentationError("commutator relation needs n >= j > i >= 1");
  comm[{j - 1, i - 1}] = word_from_pairs(p, n, word);
  return *this;
}

std::string PcPresentation::to_text() const {
  std::ostringstream out;
  out << "pc " << p << ' ' << n << '\n';
  auto word = [&](const std::vector<std::uint32_t>& w) {
    for (auto e : w) out << ' ' << e;
    out << '\n';
  };
  for (std::uint32_t i = 0; i < n; ++i) {
    if (std::all_of(power[i].begin(), power[i].end(), [](auto e) { return e == 0; })) continue;
    out << "pow " << i + 1 << ':';
    word(power[i]);
  }
  for (const auto& [key, w] : comm) {
    if (std::all_of(w.begin(), w.end(), [](auto e) { return e == 0; })) continue;
    out << "comm " << key.first + 1 << ' ' << key.second + 1 << ':';
    word(w);
  }
  return out.str();
}

Index FiniteGroup::pow(Index a, std::uint64_t n) const {
  Index r = identity_, base = a;
  while (n) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

std::uint64_t FiniteGroup::element_order(Index a) const {
  std::uint64_t k = 1;
  Index x = a;
  while (x != identity_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::uint64_t FiniteGroup::exponent() const {
  std::uint64_t e = 1;
  for (Index a = 0; a < order_; ++a) e = std::lcm(e, element_order(a));
  return e;
}

void FiniteGroup::verify_axioms() const {
  auto triple_fail = [&](Index a, Index b, Index c) {
    std::ostringstream msg;
    msg << "associativity fails for triple (" << a << ", " << b << ", " << c << ")";
    return msg.str();
  };
  auto check = [&](Index a, Index b, Index c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw ValidationError(triple_fail(a, b, c));
  };
  if (order_ <= 256) {
    for (Index a = 0; a < order_; ++a)
      for (Index b = 0; b < order_; ++b)
        for (Index c = 0; c < order_; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eedULL + order_);
    std::uniform_int_distribution<Index> pick(0, order_ - 1);
    for (std::uint64_t k = 0; k < 10ULL * order_; ++k) check(pick(rng), pick(rng), pick(rng));
  }
}

void FiniteGroup::finish(const Budgets& budgets, bool verify) {
  (void)budgets;
  if (verify) verify_axioms();
  // Inverses.
  inverse_.assign(order_, order_);
  for (Index a = 0; a < order_; ++a) {
    if (inverse_[a] != order_) continue;
    // a^{-1} = a^{ord-1}; fills the whole cyclic subgroup cheaply enough.
    std::uint64_t k = element_order(a);
    Index x = pow(a, k - 1);
    inverse_[a] = x;
    inverse_[x] = a;
  }
  prime_ = prime_of_order(order_);
  // Greedy generating set in index order, unless the constructor already set one.
  if (generators_.empty()) {
    std::vector<bool> in(order_, false);
    std::vector<Index> elems{identity_};
    in[identity_] = true;
    for (Index a = 0; a < order_ && elems.size() < order_; ++a) {
      if (in[a]) continue;
      generators_.push_back(a);
      // Re-close the subgroup from scratch with the enlarged generating set.
      for (std::size_t i = 0; i < elems.size(); ++i)
        for (auto g : generators_) {
          Index y = mul(elems[i], g);
          if (!in[y]) {
            in[y] = true;
            elems.push_back(y);
          }
        }
    }
  }
}

FiniteGroup FiniteGroup::from_cayley_table(const std::vector<std::vector<Index>>& table,
                                           const Budgets& budgets) {
  const std::size_t m = table.size();
  if (m == 0) throw ValidationError("empty Cayley table");
  require_budget("group", m, budgets.group);
  require_budget("table", m, budgets.table);
  FiniteGroup g;
  g.order_ = static_cast<Index>(m);
  g.table_.resize(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    if (table[a].size() != m) throw ValidationError("Cayley table row " + std::to_string(a) + " has wrong length");
    std::vector<bool> seen(m, false);
    for (std::size_t b = 0; b < m; ++b) {
      Index v = table[a][b];
      if (v >= m) throw ValidationError("Cayley table entry out of range in row " + std::to_string(a));
      if (seen[v]) throw ValidationError("Cayley table row " + std::to_string(a) + " is not a permutation");
      seen[v] = true;
      g.table_[a * m + b] = v;
    }
  }
  for (std::size_t b = 0; b < m; ++b) {
    std::vector<bool> seen(m, false);
    for (std::size_t a = 0; a < m; ++a) {
      if (seen[table[a][b]]) throw ValidationError("Cayley table column " + std::to_string(b) + " is not a permutation");
      seen[table[a][b]] = true;
    }
  }
  // Identity: the row that is the identity permutation.
  bool found = false;
  for (std::size_t e = 0; e < m && !found; ++e) {
    bool ok = true;
    for (std::size_t b = 0; b < m && ok; ++b) ok = table[e][b] == b && table[b][e] == b;
    if (ok) {
      g.identity_ = static_cast<Index>(e);
      found = true;
    }
  }
  if (!found) throw ValidationError("Cayley table has no two-sided identity");
  g.finish(budgets, true);
  return g;
}

FiniteGroup FiniteGroup::from_oracle(Index order, Index identity, std::shared_ptr<const MulOracle> oracle,
                                     const Budgets& budgets) {
  require_budget("group", order, budgets.group);
  FiniteGroup g;
  g.order_ = order;
  g.identity_ = identity;
  g.oracle_ = std::move(oracle);
  if (order <= budgets.table) {
    g.table_.resize(std::size_t(order) * order);
    for (Index a = 0; a < order; ++a)
      for (Index b = 0; b < order; ++b) g.table_[std::size_t(a) * order + b] = g.oracle_->mul(a, b);
  }
  g.finish(budgets, true);
  return g;
}

FiniteGroup FiniteGroup::from_permutation_generators(const std::vector<std::vector<std::uint32_t>>& gens,
                                                     const Budgets& budgets) {
  if (gens.empty()) throw ValidationError("no permutation generators");
  const std::size_t n = gens[0].size();
  for (const auto& g : gens) {
    if (g.size() != n) throw ValidationError("permutation generators act on sets of different sizes");
    std::vector<bool> seen(n, false);
    for (auto x : g) {
      if (x >= n || seen[x]) throw ValidationError("generator is not a permutation");
      seen[x] = true;
    }
  }
  using Perm = std::vector<std::uint32_t>;
  auto compose = [&](const Perm& x, const Perm& y) {
    Perm z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = y[x[i]];
    return z;
  };
  Perm id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::map<Perm, Index> index{{id, 0}};
  std::vector<Perm> elems{id};
  std::vector<Perm> layer{id};
  while (!layer.empty()) {
    std::vector<Perm> next;
    std::map<Perm, bool> fresh;
    for (const auto& x : layer)
      for (const auto& g : gens) {
        Perm y = compose(x, g);
        if (!index.count(y) && !fresh.count(y)) fresh.emplace(std::move(y), true);
      }
    for (auto& [perm, _] : fresh) next.push_back(perm);  // std::map keeps lexicographic order
    for (auto& y : next) {
      if (elems.size() >= budgets.group)
        throw BudgetError("group", "permutation closure reached " + std::to_string(elems.size()) +
                                       " elements and is still growing");
      index.emplace(y, static_cast<Index>(elems.size()));
      elems.push_back(y);
    }
    layer = std::move(next);
  }
  auto oracle = std::make_shared<PermOracle>(elems, index);
  FiniteGroup g = from_oracle(static_cast<Index>(elems.size()), 0, oracle, budgets);
  g.generators_.clear();
  std::vector<Index> gi;
  for (const auto& p : gens) {
    Index k = index.at(p);
    if (k != 0 && std::find(gi.begin(), gi.end(), k) == gi.end()) gi.push_back(k);
  }
  g.generators_ = gi.empty() ? std::vector<Index>{} : gi;
  return g;
}

FiniteGroup FiniteGroup::from_power_commutator(const PcPresentation& pres, const Budgets& budgets) {
  validate_pc_presentation(pres, budgets);
  std::uint64_t m = 1;
  for (std::uint32_t i = 0; i < pres.n; ++i) {
    m *= pres.p;
    require_budget("group", m, budgets.group);
  }
  FiniteGroup g;
  g.order_ = static_cast<Index>(m);
  g.identity_ = 0;
  g.oracle_ = make_pc_oracle(pres, budgets);
  g.pc_ = std::make_shared<const PcPresentation>(pres);
  if (m <= budgets.table) {
    g.table_.resize(m * m);
    // Right multiplication by each generator, then products by walking the
    // normal form of the right factor.
    std::vector<std::vector<Index>> by_gen(pres.n, std::vector<Index>(m));
    std::vector<Index> gen_index(pres.n);
    for (std::uint32_t i = 0; i < pres.n; ++i) {
      std::uint64_t idx = 1;
      for (std::uint32_t k = i + 1; k < pres.n; ++k) idx *= pres.p;
      gen_index[i] = static_cast<Index>(idx);
    }
    for (std::uint32_t i = 0; i < pres.n; ++i)
      for (Index a = 0; a < m; ++a) by_gen[i][a] = g.oracle_->mul(a, gen_index[i]);
    for (Index b = 0; b < m; ++b) {
      std::vector<std::uint32_t> exps(pres.n);
      Index x = b;
      for (std::uint32_t i = pres.n; i-- > 0;) {
        exps[i] = x % pres.p;
        x /= pres.p;
      }
      for (Index a = 0; a < m; ++a) {
        Index r = a;
        for (std::uint32_t i = 0; i < pres.n; ++i)
          for (std::uint32_t k = 0; k < exps[i]; ++k) r = by_gen[i][r];
        g.table_[std::size_t(a) * m + b] = r;
      }
    }
  }
  try {
    g.verify_axioms();
  } catch (const ValidationError& e) {
    throw PresentationError(std::string("inconsistent pc presentation: ") + e.what());
  }
  for (std::uint32_t i = 0; i < pres.n; ++i) {
    std::uint64_t idx = 1;
    for (std::uint32_t k = i + 1; k < pres.n; ++k) idx *= pres.p;
    g.generators_.push_back(static_cast<Index>(idx));
  }
  g.finish(budgets, false);
  return g;
}

ClassData conjugacy_classes(const FiniteGroup& g, const Budgets& budgets) {
  require_budget("group", g.order(), budgets.group);
  ClassData cd;
  const Index m = g.order();
  constexpr std::uint32_t kUnset = UINT32_MAX;
  cd.class_of.assign(m, kUnset);
  std::vector<Index> gen_inv;
  for (auto s : g.generators()) gen_inv.push_back(g.inv(s));
  for (Index x = 0; x < m; ++x) {
    if (cd.class_of[x] != kUnset) continue;
    auto id = static_cast<std::uint32_t>(cd.representatives.size());
    cd.representatives.push_back(x);
    std::vector<Index> orbit{x};
    cd.class_of[x] = id;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (std::size_t i = 0; i < g.generators().size(); ++i) {
        Index y = g.mul(g.mul(gen_inv[i], orbit[k]), g.generators()[i]);
        if (cd.class_of[y] == kUnset) {
          cd.class_of[y] = id;
          orbit.push_back(y);
        }
      }
    cd.sizes.push_back(orbit.size());
  }
  std::uint64_t total = 0;
  for (auto s : cd.sizes) {
    total += s;
    check_internal(m % s == 0, "class size does not divide the group order");
  }
  check_internal(total == m, "class sizes do not sum to the group order");
  return cd;
}

std::vector<std::uint32_t> class_power_map(const FiniteGroup& g, const ClassData& classes,
                                           std::uint32_t p) {
  std::vector<std::uint32_t> out(classes.count());
  for (std::size_t c = 0; c < classes.count(); ++c)
    out[c] = classes.class_of[g.pow(classes.representatives[c], p)];
  if (g.order() <= (1u << 12)) {
    for (Index x = 0; x < g.order(); ++x)
      check_internal(classes.class_of[g.pow(x, p)] == out[classes.class_of[x]],
                     "class power map depends on the representative");
  }
  return out;
}

std::vector<Index> commutator_subgroup(const FiniteGroup& g, const Budgets& budgets) {
  const auto& gens = g.generators();
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) seeds.push_back(g.commutator(gens[i], gens[j]));
  std::vector<Index> gen_inv;
  for (auto s : gens) gen_inv.push_back(g.inv(s));
  auto elems = normal_closure(
      g.order(), g.identity(), seeds, gens.size(),
      [&](std::uint64_t a, std::uint64_t b) { return std::uint64_t(g.mul(Index(a), Index(b))); },
      [&](std::uint64_t x, std::size_t i) {
        return std::uint64_t(g.mul(g.mul(gen_inv[i], Index(x)), gens[i]));
      },
      "group", budgets.group);
  std::vector<Index> out(elems.begin(), elems.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t abelianization_order(const FiniteGroup& g, const Budgets& budgets) {
  return g.order() / commutator_subgroup(g, budgets).size();
}

std::vector<Index> center(const FiniteGroup& g) {
  std::vector<Index> out;
  for (Index x = 0; x < g.order(); ++x) {
    bool central = true;
    for (auto s : g.generators())
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    if (central) out.push_back(x);
  }
  return out;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, const Budgets& budgets) {
  std::uint64_t m = std::uint64_t(a.order()) * b.order();
  require_budget("group", m, budgets.group);
  auto oracle = std::make_shared<ProductOracle>(a, b);
  // Identity (ea, eb) -> ea * |B| + eb.
  Index id = a.identity() * b.order() + b.identity();
  FiniteGroup g = FiniteGroup::from_oracle(static_cast<Index>(m), id, oracle, budgets);
  g.set_name(a.name().empty() || b.name().empty() ? "" : a.name() + "x" + b.name());
  return g;
}

FiniteGroup central_quotient(const FiniteGroup& g, Index z, const Budgets& budgets) {
  if (z >= g.order()) throw ValidationError("central element index out of range");
  for (Index x = 0; x < g.order(); ++x)
    if (g.mul(x, z) != g.mul(z, x)) throw DomainError("element " + std::to_string(z) + " is not central");
  std::vector<Index> sub{g.identity()};
  for (Index y = z; y != g.identity(); y = g.mul(y, z)) sub.push_back(y);
  constexpr Index kUnset = UINT32_MAX;
  std::vector<Index> coset(g.order(), kUnset);
  std::vector<Index> reps;
  for (Index x = 0; x < g.order(); ++x) {
    if (coset[x] != kUnset) continue;
    auto id = static_cast<Index>(reps.size());
    reps.push_back(x);
    for (auto s : sub) coset[g.mul(x, s)] = id;
  }
  const auto m = static_cast<Index>(reps.size());
  std::vector<std::vector<Index>> table(m, std::vector<Index>(m));
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) table[a][b] = coset[g.mul(reps[a], reps[b])];
  FiniteGroup q = FiniteGroup::from_cayley_table(table, budgets);
  q.set_name(g.name().empty() ? "" : g.name() + "/<z>");
  return q;
}

FiniteGroup cyclic(Index n, const Budgets& budgets) {
  if (n == 0) throw ValidationError("cyclic group of order 0");
  std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  FiniteGroup g = FiniteGroup::from_cayley_table(t, budgets);
  g.set_name("C" + std::to_string(n));
  return g;
}

std::vector<std::uint32_t> exponent_vector(const FiniteGroup& g, Index a) {
  const auto* pc = g.presentation();
  if (!pc) throw DomainError("exponent vectors exist only for pc groups");
  std::vector<std::uint32_t> out(pc->n);
  for (std::uint32_t i = pc->n; i-- > 0;) {
    out[i] = a % pc->p;
    a /= pc->p;
  }
  return out;
}

Index element_from_exponents(const FiniteGroup& g, const std::vector<std::uint32_t>& exps) {
  const auto* pc = g.presentation();
  if (!pc) throw DomainError("exponent vectors exist only for pc groups");
  if (exps.size() != pc->n) throw ValidationError("exponent vector has wrong length");
  Index out = 0;
  for (auto e : exps) {
    if (e >= pc->p) throw ValidationError("exponent out of range");
    out = out * pc->p + e;
  }
  return out;
}

}  // namespace orbitlab::grouptab
