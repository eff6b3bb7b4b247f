#include "orbitlab/nilalg.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "orbitlab/errors.hpp"

namespace orbitlab::nilalg {

NilAlgebra NilAlgebra::from_structure_constants(FieldHandle field, std::size_t dim,
                                                const std::vector<StructureTerm>& terms,
                                                const Budgets& budgets) {
  require_budget("algebra_dim", dim, budgets.algebra_dim);
  const ffield::Field& f = *field;
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, Elt> acc;
  for (const auto& t : terms) {
    if (t.i >= dim || t.j >= dim || t.k >= dim)
      throw ValidationError("structure constant index out of range: (" + std::to_string(t.i) + ", " +
                            std::to_string(t.j) + ", " + std::to_string(t.k) + ")");
    if (!f.contains(t.c)) throw ValidationError("structure constant outside " + f.name());
    auto& slot = acc[{t.i, t.j, t.k}];
    slot = f.add(slot, t.c);
  }
  NilAlgebra a;
  a.field_ = std::move(field);
  a.dim_ = dim;
  a.offsets_.assign(dim * dim + 1, 0);
  for (const auto& [key, c] : acc)
    if (c) ++a.offsets_[std::get<0>(key) * dim + std::get<1>(key) + 1];
  for (std::size_t s = 0; s < dim * dim; ++s) a.offsets_[s + 1] += a.offsets_[s];
  a.entries_.resize(a.offsets_.back());
  {
    std::vector<std::uint32_t> fill(a.offsets_.begin(), a.offsets_.end() - 1);
    for (const auto& [key, c] : acc) {
      if (!c) continue;
      auto [i, j, k] = key;
      a.entries_[fill[i * dim + j]++] = {k, c};
    }
  }

  // Associativity on basis triples.
  auto check_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    AlgVector left(dim, 0), right(dim, 0);
    for (const auto& [m, c] : a.product(i, j))
      for (const auto& [r, c2] : a.product(m, k)) left[r] = f.add(left[r], f.mul(c, c2));
    for (const auto& [m, c] : a.product(j, k))
      for (const auto& [r, c2] : a.product(i, m)) right[r] = f.add(right[r], f.mul(c, c2));
    if (left != right)
      throw ValidationError("associativity fails for basis triple (" + std::to_string(i) + ", " +
                            std::to_string(j) + ", " + std::to_string(k) + ")");
  };
  if (dim <= 64) {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) check_triple(i, j, k);
  } else {
    std::mt19937_64 rng(0xa550c ^ dim);
    std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
    for (int s = 0; s < 20000; ++s) check_triple(pick(rng), pick(rng), pick(rng));
  }

  a.chain_ = a.power_chain(a.full());
  return a;
}

void NilAlgebra::check_dim(const AlgVector& v) const {
  if (v.size() != dim_)
    throw DomainError("algebra vector has length " + std::to_string(v.size()) + ", expected " +
                      std::to_string(dim_));
}

AlgVector NilAlgebra::basis_vector(std::size_t i) const {
  if (i >= dim_) throw DomainError("basis index out of range");
  AlgVector v(dim_, 0);
  v[i] = 1;
  return v;
}

AlgVector NilAlgebra::add(const AlgVector& a, const AlgVector& b) const {
  check_dim(a);
  check_dim(b);
  AlgVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = field_->add(a[i], b[i]);
  return out;
}

AlgVector NilAlgebra::sub(const AlgVector& a, const AlgVector& b) const {
  check_dim(a);
  check_dim(b);
  AlgVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = field_->sub(a[i], b[i]);
  return out;
}

AlgVector NilAlgebra::scale(Elt c, const AlgVector& a) const {
  check_dim(a);
  AlgVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = field_->mul(c, a[i]);
  return out;
}

AlgVector NilAlgebra::multiply(const AlgVector& a, const AlgVector& b) const {
  check_dim(a);
  check_dim(b);
  const ffield::Field& f = *field_;
  AlgVector out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!b[j]) continue;
      const Elt ab = f.mul(a[i], b[j]);
      for (const auto& [k, c] : product(i, j)) out[k] = f.add(out[k], f.mul(ab, c));
    }
  }
  return out;
}

AlgVector NilAlgebra::lie_bracket(const AlgVector& a, const AlgVector& b) const {
  return sub(multiply(a, b), multiply(b, a));
}

Subspace NilAlgebra::product_span(const Subspace& a, const Subspace& b) const {
  Subspace out(field_, dim_);
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) {
      out.insert(multiply(x, y));
      out.insert(multiply(y, x));
    }
  return out;
}

std::vector<Subspace> NilAlgebra::power_chain(const Subspace& sub) const {
  std::vector<Subspace> chain{sub};
  while (chain.back().dim() > 0) {
    Subspace next = product_span(chain.back(), sub);
    if (next.dim() >= chain.back().dim() || chain.size() > dim_ + 1)
      throw ValidationError("algebra is not nilpotent: power chain stalls at dimension " +
                            std::to_string(next.dim()));
    chain.push_back(std::move(next));
  }
  return chain;
}

std::vector<Subspace> NilAlgebra::flag(const Subspace& sub) const {
  const auto chain = power_chain(sub);
  Subspace v = chain.back();
  std::vector<Subspace> rev{v};
  for (std::size_t m = chain.size() - 1; m-- > 0;) {
    for (const auto& w : chain[m].basis())
      if (v.insert(w)) rev.push_back(v);
    check_internal(v == chain[m], "flag refinement did not reach the next power");
  }
  return {rev.rbegin(), rev.rend()};
}

Subspace NilAlgebra::derived_lie_subspace() const {
  Subspace out(field_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) out.insert(lie_bracket(basis_vector(i), basis_vector(j)));
  return out;
}

bool NilAlgebra::is_subalgebra(const Subspace& s) const {
  for (const auto& x : s.basis())
    for (const auto& y : s.basis())
      if (!s.contains(multiply(x, y))) return false;
  return true;
}

std::vector<StructureTerm> NilAlgebra::terms() const {
  std::vector<StructureTerm> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : product(i, j))
        out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), k, c});
  return out;
}

std::size_t unitriangular_index(unsigned n, unsigned i, unsigned j) {
  if (!(1 <= i && i < j && j <= n)) throw DomainError("unitriangular index needs 1 <= i < j <= n");
  std::size_t idx = 0;
  for (unsigned diff = 1; diff < j - i; ++diff) idx += n - diff;
  return idx + (i - 1);
}

NilAlgebra make_unitriangular(unsigned n, FieldHandle field, const Budgets& budgets) {
  if (n < 2) throw DomainError("u_n needs n >= 2");
  require_budget("algebra_dim", std::size_t(n) * (n - 1) / 2, budgets.algebra_dim);
  std::vector<StructureTerm> terms;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j)
      for (unsigned l = j + 1; l <= n; ++l)
        terms.push_back({static_cast<std::uint32_t>(unitriangular_index(n, i, j)),
                         static_cast<std::uint32_t>(unitriangular_index(n, j, l)),
                         static_cast<std::uint32_t>(unitriangular_index(n, i, l)), 1});
  const std::string fname = field->name();
  auto a = NilAlgebra::from_structure_constants(std::move(field), std::size_t(n) * (n - 1) / 2, terms, budgets);
  a.set_name("u_" + std::to_string(n) + "(" + fname + ")");
  return a;
}

NilAlgebra make_augmentation_ideal(const grouptab::FiniteGroup& group, FieldHandle field,
                                   const Budgets& budgets) {
  const auto m = group.order();
  if (m > 1 && group.prime() != field->p())
    throw DomainError("augmentation ideal needs |pi| = " + std::to_string(m) + " to be a power of char " +
                      std::to_string(field->p()));
  require_budget("algebra_dim", m - 1, budgets.algebra_dim);
  const ffield::Field& f = *field;
  const Elt minus_one = f.neg(1);
  auto idx = [&](grouptab::Index g) {
    return static_cast<std::uint32_t>(g < group.identity() ? g : g - 1);
  };
  std::vector<StructureTerm> terms;
  terms.reserve(std::size_t(3) * (m - 1) * (m - 1));
  for (grouptab::Index g = 0; g < m; ++g) {
    if (g == group.identity()) continue;
    for (grouptab::Index h = 0; h < m; ++h) {
      if (h == group.identity()) continue;
      // (g-1)(h-1) = (gh-1) - (g-1) - (h-1)
      const auto gh = group.mul(g, h);
      if (gh != group.identity()) terms.push_back({idx(g), idx(h), idx(gh), 1});
      terms.push_back({idx(g), idx(h), idx(g), minus_one});
      terms.push_back({idx(g), idx(h), idx(h), minus_one});
    }
  }
  const std::string fname = field->name();
  auto a = NilAlgebra::from_structure_constants(std::move(field), m - 1, terms, budgets);
  a.set_name("I_" + fname + "[" + (group.name().empty() ? "pi" : group.name()) + "]");
  return a;
}

NilAlgebra make_zero_product(FieldHandle field, std::size_t dim, const Budgets& budgets) {
  const std::string fname = field->name();
  auto a = NilAlgebra::from_structure_constants(std::move(field), dim, {}, budgets);
  a.set_name("zero(" + fname + "^" + std::to_string(dim) + ")");
  return a;
}

std::string to_text(const NilAlgebra& alg) {
  std::ostringstream out;
  out << "alg " << alg.field()->p() << ' ' << alg.field()->e() << ' ' << alg.dim() << '\n';
  for (const auto& t : alg.terms()) out << t.i << ' ' << t.j << ' ' << t.k << ' ' << t.c << '\n';
  return out.str();
}

NilAlgebra parse_algebra(const std::string& text, const Budgets& budgets) {
  std::istringstream in(text);
  std::string line, tag;
  std::uint32_t p = 0, e = 0;
  std::size_t d = 0;
  bool header = false;
  std::vector<StructureTerm> terms;
  int lineno = 0;
  FieldHandle field;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (!header) {
      if (!(ls >> tag >> p >> e >> d) || tag != "alg")
        throw ValidationError("algebra header must be 'alg p e d'");
      field = ffield::make_field(p, e, budgets);
      header = true;
      continue;
    }
    long long i, j, k, c;
    if (!(ls >> i >> j >> k >> c) || i < 0 || j < 0 || k < 0 || c < 0)
      throw ValidationError("algebra line " + std::to_string(lineno) + ": expected 'i j k coeff'");
    terms.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                     static_cast<std::uint32_t>(k), static_cast<Elt>(c)});
  }
  if (!header) throw ValidationError("empty algebra file");
  return NilAlgebra::from_structure_constants(field, d, terms, budgets);
}

NilAlgebra load_algebra_file(const std::string& path, const Budgets& budgets) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open algebra file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  auto a = parse_algebra(ss.str(), budgets);
  a.set_name(path);
  return a;
}

}  // namespace orbitlab::nilalg
