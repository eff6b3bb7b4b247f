#include "orbitlab/coadjoint.hpp"

#include <algorithm>
#include <string>

#include "orbitlab/errors.hpp"

namespace orbitlab::coadjoint {

namespace {

constexpr std::uint32_t kUnset = UINT32_MAX;
constexpr std::size_t kBracketCacheDim = 128;

std::uint64_t ipow(std::uint64_t b, std::uint64_t n) {
  std::uint64_t r = 1;
  while (n--) r *= b;
  return r;
}

}  // namespace

DualSpace::DualSpace(const NilAlgebra& j)
    : j_(&j),
      fp_(ffield::make_field(j.field()->p(), 1)),
      p_(j.field()->p()),
      e_(j.field()->e()),
      dim_(j.dim() * j.field()->e()),
      size_(1) {
  for (std::size_t k = 0; k < dim_; ++k) {
    if (size_ > UINT64_MAX / p_) {
      size_ = UINT64_MAX;
      break;
    }
    size_ *= p_;
  }
  if (dim_ <= kBracketCacheDim) {
    brackets_.reserve(dim_ * dim_);
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b < dim_; ++b) {
        Vec ua(dim_, 0), ub(dim_, 0);
        ua[a] = 1;
        ub[b] = 1;
        brackets_.push_back(to_prime(j.lie_bracket(from_prime(ua), from_prime(ub))));
      }
  }
}

Vec DualSpace::to_prime(const AlgVector& x) const {
  const auto& f = *j_->field();
  Vec out(dim_);
  for (std::size_t i = 0; i < j_->dim(); ++i)
    for (std::uint32_t c = 0; c < e_; ++c) out[i * e_ + c] = f.coeff(x[i], c);
  return out;
}

AlgVector DualSpace::from_prime(const Vec& v) const {
  const auto& f = *j_->field();
  AlgVector x(j_->dim());
  for (std::size_t i = 0; i < j_->dim(); ++i) x[i] = f.from_coeffs({v.data() + i * e_, e_});
  return x;
}

Subspace DualSpace::prime_span(const Subspace& s) const {
  const auto& f = *j_->field();
  std::vector<Vec> gens;
  for (const auto& row : s.basis())
    for (std::uint32_t c = 0; c < e_; ++c) {
      AlgVector x(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) x[i] = f.mul(f.basis(c), row[i]);
      gens.push_back(to_prime(x));
    }
  return Subspace::span(fp_, dim_, gens);
}

Subspace DualSpace::fq_span(const std::vector<Vec>& prime_vectors) const {
  std::vector<AlgVector> gens;
  for (const auto& v : prime_vectors) gens.push_back(from_prime(v));
  return Subspace::span(j_->field(), j_->dim(), gens);
}

DualFunctional DualSpace::coordinate_functional(std::size_t k) const {
  DualFunctional l = zero_functional();
  l.coeffs.at(k) = 1;
  return l;
}

std::uint32_t DualSpace::eval(const DualFunctional& l, const Vec& x) const {
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < dim_; ++k) s += std::uint64_t(l.coeffs[k]) * x[k];
  return static_cast<std::uint32_t>(s % p_);
}

Vec DualSpace::bracket(std::size_t a, std::size_t b) const {
  if (!brackets_.empty()) return brackets_[a * dim_ + b];
  Vec ua(dim_, 0), ub(dim_, 0);
  ua[a] = 1;
  ub[b] = 1;
  return to_prime(j_->lie_bracket(from_prime(ua), from_prime(ub)));
}

std::uint32_t DualSpace::form(const DualFunctional& l, const Vec& a, const Vec& b) const {
  return eval(l, to_prime(j_->lie_bracket(from_prime(a), from_prime(b))));
}

std::uint64_t DualSpace::pack(const DualFunctional& l) const {
  std::uint64_t out = 0;
  for (std::size_t k = dim_; k-- > 0;) out = out * p_ + l.coeffs[k];
  return out;
}

DualFunctional DualSpace::unpack(std::uint64_t idx) const {
  DualFunctional l = zero_functional();
  for (std::size_t k = 0; k < dim_; ++k) {
    l.coeffs[k] = static_cast<std::uint32_t>(idx % p_);
    idx /= p_;
  }
  return l;
}

std::vector<Vec> DualSpace::action_columns(const GroupElementVec& g) const {
  const auto gi = algroup::ginv(*j_, g);
  std::vector<Vec> cols;
  cols.reserve(dim_);
  for (std::size_t l = 0; l < dim_; ++l) {
    Vec ul(dim_, 0);
    ul[l] = 1;
    const AlgVector u = from_prime(ul);
    // (1+x) u (1+y) = w + w y with w = u + x u
    const AlgVector w = j_->add(u, j_->multiply(g.x, u));
    cols.push_back(to_prime(j_->add(w, j_->multiply(w, gi.x))));
  }
  return cols;
}

DualFunctional DualSpace::apply(const std::vector<Vec>& columns, const DualFunctional& l) const {
  DualFunctional out = zero_functional();
  for (std::size_t c = 0; c < dim_; ++c) out.coeffs[c] = eval(l, columns[c]);
  return out;
}

DualFunctional coadjoint_act(const DualSpace& ds, const DualFunctional& l, const GroupElementVec& g) {
  return ds.apply(ds.action_columns(g), l);
}

Subspace radical(const DualSpace& ds, const DualFunctional& l) {
  const std::size_t n = ds.prime_dim();
  std::vector<Vec> m(n, Vec(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m[a][b] = ds.form_basis(l, a, b);
  // B_lambda is alternating, so the left and right kernels agree.
  Subspace rad = Subspace::span(ds.prime_field(), n, linalg::nullspace(*ds.prime_field(), m, n));
  const auto& f = *ds.algebra().field();
  if (f.e() > 1) {
    for (const auto& v : rad.basis()) {
      const auto tv = ds.algebra().scale(f.t(), ds.from_prime(v));
      check_internal(rad.contains(ds.to_prime(tv)), "radical of B_lambda is not closed under F_q scaling");
    }
  }
  return rad;
}

namespace {

/// D - dim_p Rad, checked to be a multiple of 2e.
std::size_t orbit_exponent(const DualSpace& ds, std::size_t rad_dim) {
  const std::size_t ex = ds.prime_dim() - rad_dim;
  check_internal(ex % (2 * ds.e()) == 0,
                 "orbit size p^" + std::to_string(ex) + " is not an even power of q");
  return ex;
}

}  // namespace

std::uint64_t orbit_size(const DualSpace& ds, const DualFunctional& l) {
  return ipow(ds.p(), ds.prime_dim() - radical(ds, l).dim());
}

std::uint64_t fake_degree(const DualSpace& ds, const DualFunctional& l) {
  return ipow(ds.p(), orbit_exponent(ds, radical(ds, l).dim()) / 2);
}

std::vector<std::uint64_t> Census::members(std::size_t orbit) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < orbit_of.size(); ++i)
    if (orbit_of[i] == orbit) out.push_back(i);
  return out;
}

Census orbit_census(const DualSpace& ds, const Budgets& budgets) {
  require_budget("dual", ds.dual_size(), budgets.dual);
  const std::uint64_t n = ds.dual_size();
  std::vector<linalg::PackedLinearMap> gens;
  for (const auto& g : algroup::prime_generators(ds.algebra())) {
    const auto cols = ds.action_columns(g);
    std::vector<Vec> images(ds.prime_dim(), Vec(ds.prime_dim()));
    for (std::size_t k = 0; k < ds.prime_dim(); ++k)
      for (std::size_t c = 0; c < ds.prime_dim(); ++c) images[k][c] = cols[c][k];
    gens.emplace_back(ds.p(), ds.prime_dim(), images);
  }

  Census c;
  c.orbit_of.assign(n, kUnset);
  std::vector<std::uint64_t> queue;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    if (c.orbit_of[idx] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(c.orbits.size());
    queue.assign(1, idx);
    c.orbit_of[idx] = id;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (const auto& map : gens) {
        const std::uint64_t m = map.apply(queue[k]);
        if (c.orbit_of[m] == kUnset) {
          c.orbit_of[m] = id;
          queue.push_back(m);
        }
      }
    }
    OrbitRecord rec;
    rec.rep = idx;
    rec.functional = ds.unpack(idx);
    rec.size = queue.size();
    rec.radical_prime_dim = radical(ds, rec.functional).dim();
    const std::size_t ex = orbit_exponent(ds, rec.radical_prime_dim);
    check_internal(rec.size == ipow(ds.p(), ex), "orbit of functional " + std::to_string(idx) + " has " +
                                                     std::to_string(rec.size) + " elements but |J/Rad| = " +
                                                     std::to_string(ds.p()) + "^" + std::to_string(ex));
    rec.fake_degree = ipow(ds.p(), ex / 2);
    c.orbits.push_back(std::move(rec));
  }
  return c;
}

std::map<std::uint64_t, std::uint64_t> fake_degree_multiset(const Census& c) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& o : c.orbits) ++out[o.fake_degree];
  return out;
}

std::uint64_t fixed_point_count(const DualSpace& ds, const Census& c) {
  std::uint64_t fixed = 0;
  for (const auto& o : c.orbits) fixed += o.size == 1;
  const auto& j = ds.algebra();
  const std::uint64_t lie = ipow(j.field()->q(), j.dim() - j.derived_lie_subspace().dim());
  check_internal(fixed == lie, "fixed functionals " + std::to_string(fixed) + " differ from |J/[J,J]_L| = " +
                                   std::to_string(lie));
  return fixed;
}

ProbeReport conjecture_probe(const NilAlgebra& j, const Budgets& budgets) {
  ProbeReport r;
  r.lie_index = ipow(j.field()->q(), j.dim() - j.derived_lie_subspace().dim());
  r.group_abelianization = algroup::group_abelianization_order(j, budgets);
  return r;
}

namespace {

bool isotropic(const DualSpace& ds, const DualFunctional& l, const Subspace& prime_sub) {
  const auto& b = prime_sub.basis();
  for (std::size_t x = 0; x < b.size(); ++x)
    for (std::size_t y = x + 1; y < b.size(); ++y)
      if (ds.form(l, b[x], b[y]) != 0) return false;
  return true;
}

/// {a in K : lambda([a, b]) = 0 for all b in A}, for F_p subspaces K and A.
std::vector<Vec> orthogonal_in(const DualSpace& ds, const DualFunctional& l, const Subspace& k, const Subspace& a) {
  const auto& kb = k.basis();
  std::vector<Vec> m;
  for (const auto& b : a.basis()) {
    Vec row(kb.size());
    for (std::size_t r = 0; r < kb.size(); ++r) row[r] = ds.form(l, kb[r], b);
    m.push_back(std::move(row));
  }
  const auto& fp = *ds.prime_field();
  std::vector<Vec> out;
  for (const auto& alpha : linalg::nullspace(fp, m, kb.size())) {
    Vec v(ds.prime_dim(), 0);
    for (std::size_t r = 0; r < kb.size(); ++r)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = fp.add(v[i], fp.mul(alpha[r], kb[r][i]));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Subspace max_isotropic_subalgebra(const DualSpace& ds, const DualFunctional& l) {
  const auto& j = ds.algebra();
  Subspace k = j.full();
  while (!isotropic(ds, l, ds.prime_span(k))) {
    const auto flag = j.flag(k);
    std::size_t i = 0;
    while (!isotropic(ds, l, ds.prime_span(flag[i]))) ++i;
    const Subspace kp = ds.prime_span(k);
    const auto perp = orthogonal_in(ds, l, kp, ds.prime_span(flag[i]));
    Subspace next = ds.fq_span(perp);
    check_internal(next.dim() * ds.e() == perp.size(), "orthogonal complement is not F_q-linear");
    check_internal(next.dim() < k.dim(), "isotropic descent did not shrink the subalgebra");
    check_internal(j.is_subalgebra(next), "orthogonal of a flag ideal is not a subalgebra");
    k = std::move(next);
  }
  const std::size_t rad = radical(ds, l).dim();
  check_internal(j.is_subalgebra(k), "isotropic result is not a subalgebra");
  check_internal(2 * k.dim() * ds.e() == ds.prime_dim() + rad,
                 "isotropic subalgebra of F_q-dimension " + std::to_string(k.dim()) + " is not maximal");
  return k;
}

GroupClasses group_classes_with_logs(const DualSpace& ds, const Budgets& budgets) {
  const auto& j = ds.algebra();
  GroupClasses out;
  out.data = algroup::group_conjugacy_classes(j, budgets);
  algroup::ElementCodec codec(j);
  out.order = codec.size();
  out.member_logs.resize(out.data.count());
  for (std::uint64_t idx = 0; idx < out.order; ++idx)
    out.member_logs[out.data.class_of[idx]].push_back(ds.to_prime(algroup::glog(j, {codec.unpack(idx)})));
  return out;
}

namespace {

std::vector<mpz_class> root_counts(const DualSpace& ds, const std::vector<DualFunctional>& orbit, const Vec& x) {
  std::vector<mpz_class> counts(ds.p());
  for (const auto& mu : orbit) ++counts[ds.eval(mu, x)];
  return counts;
}

}  // namespace

std::vector<CyclotomicValue> orbit_method_character(const DualSpace& ds, const Census& c, std::size_t orbit,
                                                    const GroupClasses& classes) {
  if (!ds.algebra().is_p_nilpotent())
    throw DomainError("orbit-method characters need J^p = 0");
  std::vector<DualFunctional> members;
  for (auto idx : c.members(orbit)) members.push_back(ds.unpack(idx));
  const mpz_class f = static_cast<unsigned long>(c.orbits.at(orbit).fake_degree);
  std::vector<CyclotomicValue> chi;
  for (std::size_t cls = 0; cls < classes.member_logs.size(); ++cls) {
    const auto& logs = classes.member_logs[cls];
    const auto counts = root_counts(ds, members, logs[0]);
    for (std::size_t m = 1; m < std::min<std::size_t>(logs.size(), 8); ++m)
      check_internal(root_counts(ds, members, logs[m]) == counts,
                     "orbit sum is not constant on class " + std::to_string(cls));
    chi.push_back(CyclotomicValue::from_counts(ds.p(), counts, f));
  }
  return chi;
}

CyclotomicValue inner_product(const GroupClasses& classes, const std::vector<CyclotomicValue>& chi1,
                              const std::vector<CyclotomicValue>& chi2) {
  CyclotomicValue sum(chi1.at(0).p());
  for (std::size_t cls = 0; cls < chi1.size(); ++cls) {
    const auto w = CyclotomicValue::integer(sum.p(), static_cast<unsigned long>(classes.data.sizes[cls]));
    sum = sum + w * chi1[cls] * chi2[cls].conj();
  }
  return sum.divided_by(static_cast<unsigned long>(classes.order));
}

CharacterTable orbit_method_characters(const DualSpace& ds, const Census& c, const GroupClasses& classes) {
  CharacterTable t;
  for (std::size_t o = 0; o < c.count(); ++o) {
    t.values.push_back(orbit_method_character(ds, c, o, classes));
    t.degrees.push_back(c.orbits[o].fake_degree);
  }
  return t;
}

bool orthonormality_check(const CharacterTable& table, const Census& c, const GroupClasses& classes) {
  if (table.values.size() != classes.data.count() || c.count() != classes.data.count()) return false;
  // Class 0 is the identity: packed index 0 is the least element.
  for (std::size_t o = 0; o < table.values.size(); ++o)
    if (!table.values[o][0].is_integer(static_cast<unsigned long>(table.degrees[o]))) return false;
  for (std::size_t a = 0; a < table.values.size(); ++a)
    for (std::size_t b = a; b < table.values.size(); ++b)
      if (!inner_product(classes, table.values[a], table.values[b]).is_integer(a == b ? 1 : 0)) return false;
  return true;
}

bool verify_induced(const DualSpace& ds, const Census& c, std::size_t orbit, const GroupClasses& classes,
                    const std::vector<CyclotomicValue>& chi) {
  const DualFunctional& l = c.orbits.at(orbit).functional;
  const Subspace h = max_isotropic_subalgebra(ds, l);
  const Subspace hp = ds.prime_span(h);
  const mpz_class h_order = static_cast<unsigned long>(ipow(ds.p(), hp.dim()));
  // psi^G(g) = (1/|H|) sum_{x in G} psi'(x g x^{-1}); as x runs over G the
  // conjugate runs over the class of g, each member |G|/|class| times.
  for (std::size_t cls = 0; cls < classes.member_logs.size(); ++cls) {
    std::vector<mpz_class> counts(ds.p());
    for (const auto& y : classes.member_logs[cls])
      if (hp.contains(y)) ++counts[ds.eval(l, y)];
    const mpz_class mult = static_cast<unsigned long>(classes.order / classes.data.sizes[cls]);
    for (auto& x : counts) x *= mult;
    if (!(CyclotomicValue::from_counts(ds.p(), counts, h_order) == chi.at(cls))) return false;
  }
  return true;
}

bool transitivity_check(const DualSpace& ds, const DualFunctional& l, const Budgets& budgets) {
  require_budget("dual", ds.dual_size(), budgets.dual);
  const Subspace h = max_isotropic_subalgebra(ds, l);
  const Subspace hp = ds.prime_span(h);
  const std::uint64_t n = ds.dual_size();

  std::vector<std::uint32_t> target;
  for (const auto& v : hp.basis()) target.push_back(ds.eval(l, v));
  std::vector<bool> in_sigma(n, false);
  std::uint64_t sigma = 0;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    const DualFunctional phi = ds.unpack(idx);
    bool agree = true;
    for (std::size_t r = 0; r < hp.dim() && agree; ++r) agree = ds.eval(phi, hp.basis()[r]) == target[r];
    if (agree) {
      in_sigma[idx] = true;
      ++sigma;
    }
  }

  std::vector<std::vector<Vec>> gens;
  for (const auto& g : algroup::subgroup_generators(ds.algebra(), h)) gens.push_back(ds.action_columns(g));
  std::vector<bool> seen(n, false);
  std::vector<std::uint64_t> orbit{ds.pack(l)};
  seen[orbit[0]] = true;
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    const DualFunctional phi = ds.unpack(orbit[k]);
    for (const auto& cols : gens) {
      const auto m = ds.pack(ds.apply(cols, phi));
      if (!seen[m]) {
        seen[m] = true;
        orbit.push_back(m);
      }
    }
  }
  if (orbit.size() != sigma) return false;
  for (auto m : orbit)
    if (!in_sigma[m]) return false;
  return sigma == ipow(ds.p(), ds.prime_dim() - hp.dim());
}

}  // namespace orbitlab::coadjoint
