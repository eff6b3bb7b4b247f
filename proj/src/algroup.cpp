#include "orbitlab/algroup.hpp"

#include <algorithm>

#include "orbitlab/closure.hpp"
#include "orbitlab/errors.hpp"

namespace orbitlab::algroup {

GroupElementVec identity(const NilAlgebra& j) { return {j.zero()}; }

GroupElementVec gmul(const NilAlgebra& j, const GroupElementVec& g, const GroupElementVec& h) {
  return {j.add(j.add(g.x, h.x), j.multiply(g.x, h.x))};
}

GroupElementVec ginv(const NilAlgebra& j, const GroupElementVec& g) {
  // Coordinates of sum_{k>=1} (-x)^k; (-x)^k = 0 once k reaches the class.
  const auto& f = *j.field();
  AlgVector minus_x = j.scale(f.neg(1), g.x);
  AlgVector term = minus_x, sum = minus_x;
  for (unsigned k = 2; k < j.nilpotency_class(); ++k) {
    term = j.multiply(term, minus_x);
    sum = j.add(sum, term);
  }
  return {sum};
}

GroupElementVec gconj(const NilAlgebra& j, const GroupElementVec& x, const GroupElementVec& g) {
  return gmul(j, gmul(j, ginv(j, g), x), g);
}

GroupElementVec gcomm(const NilAlgebra& j, const GroupElementVec& a, const GroupElementVec& b) {
  return gmul(j, gmul(j, ginv(j, a), ginv(j, b)), gmul(j, a, b));
}

namespace {

void require_p_nilpotent(const NilAlgebra& j, const char* what) {
  if (!j.is_p_nilpotent())
    throw DomainError(std::string(what) + " needs J^p = 0, but the nilpotency class " +
                      std::to_string(j.nilpotency_class()) + " exceeds p = " + std::to_string(j.field()->p()));
}

}  // namespace

GroupElementVec gexp(const NilAlgebra& j, const AlgVector& x) {
  require_p_nilpotent(j, "exp");
  const auto& f = *j.field();
  AlgVector term = x, sum = x;
  std::int64_t fact = 1;
  for (unsigned k = 2; k < j.nilpotency_class(); ++k) {
    term = j.multiply(term, x);
    fact *= k;
    sum = j.add(sum, j.scale(f.inv(f.from_int(fact)), term));
  }
  return {sum};
}

AlgVector glog(const NilAlgebra& j, const GroupElementVec& g) {
  require_p_nilpotent(j, "log");
  const auto& f = *j.field();
  AlgVector term = g.x, sum = g.x;
  for (unsigned k = 2; k < j.nilpotency_class(); ++k) {
    term = j.multiply(term, g.x);
    Elt coef = f.inv(f.from_int(k));
    if (k % 2 == 0) coef = f.neg(coef);
    sum = j.add(sum, j.scale(coef, term));
  }
  return sum;
}

std::vector<GroupElementVec> prime_generators(const NilAlgebra& j) { return subgroup_generators(j, j.full()); }

std::vector<GroupElementVec> subgroup_generators(const NilAlgebra& j, const linalg::Subspace& sub) {
  const auto& f = *j.field();
  if (!j.is_subalgebra(sub)) throw DomainError("subgroup_generators needs a subalgebra");
  const auto chain = j.power_chain(sub);
  // A basis adapted to J > J^2 > ...: walk the powers from the bottom and keep
  // the vectors that enlarge the span.
  linalg::Subspace seen = chain.back();
  std::vector<AlgVector> adapted;
  for (std::size_t m = chain.size() - 1; m-- > 0;)
    for (const auto& w : chain[m].basis())
      if (seen.insert(w)) adapted.push_back(w);
  check_internal(adapted.size() == sub.dim(), "adapted basis has the wrong size");
  std::vector<GroupElementVec> out;
  for (const auto& v : adapted)
    for (std::uint32_t c = 0; c < f.e(); ++c) out.push_back({j.scale(f.basis(c), v)});
  return out;
}

ElementCodec::ElementCodec(const NilAlgebra& j) : dim_(j.dim()), q_(j.field()->q()), size_(1) {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (size_ > (UINT64_MAX >> 1) / q_) {
      size_ = UINT64_MAX;
      return;
    }
    size_ *= q_;
  }
}

std::uint64_t ElementCodec::pack(const AlgVector& x) const {
  std::uint64_t out = 0;
  for (std::size_t i = dim_; i-- > 0;) out = out * q_ + x[i];
  return out;
}

AlgVector ElementCodec::unpack(std::uint64_t idx) const {
  AlgVector x(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    x[i] = static_cast<Elt>(idx % q_);
    idx /= q_;
  }
  return x;
}

std::uint64_t group_order_within(const NilAlgebra& j, const char* name, std::uint64_t limit) {
  ElementCodec codec(j);
  require_budget(name, codec.size(), limit);
  return codec.size();
}

void enumerate_elements(const NilAlgebra& j,
                        const std::function<void(std::uint64_t, const GroupElementVec&)>& f,
                        const Budgets& budgets) {
  const std::uint64_t n = group_order_within(j, "enumeration", budgets.enumeration);
  const Elt q = j.field()->q();
  GroupElementVec g = identity(j);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    f(idx, g);
    for (std::size_t i = 0; i < j.dim(); ++i) {
      if (++g.x[i] < q) break;
      g.x[i] = 0;
    }
  }
}

namespace {

// x -> g^{-1} x g is F_q-linear on J, so on packed indices it is a fixed F_p-linear map.
std::vector<linalg::PackedLinearMap> conjugation_maps(const NilAlgebra& j) {
  const auto& f = *j.field();
  const std::size_t d = j.dim(), e = f.e();
  std::vector<linalg::PackedLinearMap> maps;
  for (const auto& g : prime_generators(j)) {
    const auto gi = ginv(j, g);
    std::vector<linalg::Vec> images;
    for (std::size_t i = 0; i < d; ++i)
      for (std::uint32_t c = 0; c < e; ++c) {
        auto x = j.zero();
        x[i] = f.basis(c);
        const auto y = gmul(j, gmul(j, gi, {x}), g).x;
        linalg::Vec v(d * e);
        for (std::size_t r = 0; r < d; ++r)
          for (std::uint32_t s = 0; s < e; ++s) v[r * e + s] = f.coeff(y[r], s);
        images.push_back(std::move(v));
      }
    maps.emplace_back(f.p(), d * e, images);
  }
  return maps;
}

}  // namespace

grouptab::ClassData group_conjugacy_classes(const NilAlgebra& j, const Budgets& budgets) {
  const std::uint64_t n = group_order_within(j, "enumeration", budgets.enumeration);
  const auto maps = conjugation_maps(j);

  grouptab::ClassData cd;
  constexpr std::uint32_t kUnset = UINT32_MAX;
  cd.class_of.assign(n, kUnset);
  std::vector<std::uint64_t> orbit;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    if (cd.class_of[idx] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(cd.representatives.size());
    cd.representatives.push_back(static_cast<grouptab::Index>(idx));
    orbit.assign(1, idx);
    cd.class_of[idx] = id;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const auto& m : maps) {
        const auto y = m.apply(orbit[k]);
        if (cd.class_of[y] == kUnset) {
          cd.class_of[y] = id;
          orbit.push_back(y);
        }
      }
    cd.sizes.push_back(orbit.size());
  }
  return cd;
}

std::uint64_t k_of_group(const NilAlgebra& j, const Budgets& budgets) {
  return group_conjugacy_classes(j, budgets).count();
}

std::vector<std::uint64_t> group_commutator_subgroup(const NilAlgebra& j, const Budgets& budgets) {
  const std::uint64_t n = group_order_within(j, "closure", budgets.closure);
  ElementCodec codec(j);
  const auto gens = prime_generators(j);
  std::vector<GroupElementVec> gen_inv;
  for (const auto& g : gens) gen_inv.push_back(ginv(j, g));
  std::vector<std::uint64_t> seeds;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b) seeds.push_back(codec.pack(gcomm(j, gens[a], gens[b]).x));
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  auto elems = normal_closure(
      n, 0, seeds, gens.size(),
      [&](std::uint64_t a, std::uint64_t b) {
        return codec.pack(gmul(j, {codec.unpack(a)}, {codec.unpack(b)}).x);
      },
      [&](std::uint64_t x, std::size_t s) {
        return codec.pack(gmul(j, gmul(j, gen_inv[s], {codec.unpack(x)}), gens[s]).x);
      },
      "closure", budgets.closure);
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::uint64_t group_abelianization_order(const NilAlgebra& j, const Budgets& budgets) {
  const std::uint64_t n = group_order_within(j, "closure", budgets.closure);
  return n / group_commutator_subgroup(j, budgets).size();
}

}  // namespace orbitlab::algroup
