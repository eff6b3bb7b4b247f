#include "orbitlab/bogomod.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "orbitlab/errors.hpp"
#include "orbitlab/ffield.hpp"

namespace orbitlab::bogomod {

namespace {

using Poly = std::vector<std::int64_t>;

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % n);
}

std::int64_t norm(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

std::int64_t inv_unit(std::int64_t a, std::int64_t n) {
  std::int64_t g = a, x = 1, g1 = n, x1 = 0;
  while (g1 != 0) {
    std::int64_t t = g / g1;
    std::tie(g, g1) = std::make_pair(g1, g - t * g1);
    std::tie(x, x1) = std::make_pair(x1, x - t * x1);
  }
  check_internal(g == 1, "element is not a unit modulo p^v");
  return norm(x, n);
}

/// Solves A x = b modulo n = p^v for A invertible mod p.
std::vector<std::int64_t> solve_unit(IntMatrix a, std::vector<std::int64_t> b, std::int64_t n, std::uint32_t p) {
  const std::size_t m = a.size();
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t sel = c;
    while (sel < m && a[sel][c] % p == 0) ++sel;
    check_internal(sel < m, "matrix is singular modulo p");
    std::swap(a[c], a[sel]);
    std::swap(b[c], b[sel]);
    const std::int64_t u = inv_unit(a[c][c], n);
    for (auto& x : a[c]) x = mulmod(x, u, n);
    b[c] = mulmod(b[c], u, n);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const std::int64_t f = a[r][c];
      for (std::size_t k = 0; k < m; ++k) a[r][k] = norm(a[r][k] - mulmod(f, a[c][k], n), n);
      b[r] = norm(b[r] - mulmod(f, b[c], n), n);
    }
  }
  return b;
}

/// The Galois ring (Z/n)[t]/(f) for monic f of degree e.
class GaloisRing {
 public:
  GaloisRing(std::int64_t n, std::uint32_t p, Poly f) : n_(n), p_(p), e_(f.size() - 1), f_(std::move(f)) {}

  std::size_t e() const { return e_; }
  Poly one() const { return unit(0); }
  Poly unit(std::size_t i) const {
    Poly x(e_, 0);
    x[i] = 1;
    return x;
  }
  Poly add(const Poly& a, const Poly& b) const {
    Poly r(e_);
    for (std::size_t i = 0; i < e_; ++i) r[i] = norm(a[i] + b[i], n_);
    return r;
  }
  Poly sub(const Poly& a, const Poly& b) const {
    Poly r(e_);
    for (std::size_t i = 0; i < e_; ++i) r[i] = norm(a[i] - b[i], n_);
    return r;
  }
  Poly scale(std::int64_t c, const Poly& a) const {
    Poly r(e_);
    for (std::size_t i = 0; i < e_; ++i) r[i] = mulmod(norm(c, n_), a[i], n_);
    return r;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    Poly r(2 * e_, 0);
    for (std::size_t i = 0; i < e_; ++i)
      for (std::size_t j = 0; j < e_; ++j) r[i + j] = norm(r[i + j] + mulmod(a[i], b[j], n_), n_);
    for (std::size_t d = 2 * e_ - 1; d >= e_; --d) {
      const std::int64_t c = r[d];
      if (c == 0) continue;
      r[d] = 0;
      for (std::size_t k = 0; k < e_; ++k) r[d - e_ + k] = norm(r[d - e_ + k] - mulmod(c, f_[k], n_), n_);
    }
    r.resize(e_);
    return r;
  }
  Poly pow(Poly a, std::uint64_t k) const {
    Poly r = one();
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  /// f evaluated at x, and its derivative.
  Poly eval_f(const Poly& x, bool derivative) const {
    Poly r(e_, 0), xp = one();
    for (std::size_t k = 0; k <= e_; ++k) {
      const std::int64_t c = derivative ? (k + 1 <= e_ ? mulmod(f_[k + 1], k + 1, n_) : 0) : f_[k];
      r = add(r, scale(c, xp));
      xp = mul(xp, x);
    }
    return r;
  }
  Poly inverse(const Poly& a) const {
    // Columns of the multiplication-by-a matrix are a * t^j.
    IntMatrix m(e_, std::vector<std::int64_t>(e_));
    for (std::size_t j = 0; j < e_; ++j) {
      const Poly col = mul(a, unit(j));
      for (std::size_t i = 0; i < e_; ++i) m[i][j] = col[i];
    }
    return solve_unit(m, one(), n_, p_);
  }

 private:
  std::int64_t n_;
  std::uint32_t p_;
  std::size_t e_;
  Poly f_;
};

std::int64_t ipow64(std::int64_t b, std::uint32_t k) {
  std::int64_t r = 1;
  while (k--) r *= b;
  return r;
}

}  // namespace

IntMatrix residue_frobenius(std::uint32_t p, std::uint32_t e) {
  const auto f = ffield::make_field(p, e);
  IntMatrix m(e, std::vector<std::int64_t>(e));
  for (std::uint32_t j = 0; j < e; ++j) {
    const auto c = f->coeffs(f->frobenius(f->basis(j)));
    for (std::uint32_t i = 0; i < e; ++i) m[i][j] = c[i];
  }
  return m;
}

FrobeniusMatrix frobenius_matrix(std::uint32_t p, std::uint32_t e, std::uint32_t v, LiftBasis basis) {
  if (e < 1 || v < 1) throw DomainError("frobenius_matrix needs e >= 1 and v >= 1");
  if (!ffield::is_prime(p)) throw DomainError("frobenius_matrix needs a prime p, got " + std::to_string(p));
  FrobeniusMatrix out;
  out.p = p;
  out.e = e;
  out.v = v;
  out.modulus = ipow64(p, v);
  const std::int64_t n = out.modulus;
  if (e == 1) {
    out.m = {{1}};
    return out;
  }
  const auto field = ffield::make_field(p, e);
  const GaloisRing ring(n, p, Poly(field->modulus().begin(), field->modulus().end()));
  const std::uint64_t q = field->q();

  IntMatrix m(e, std::vector<std::int64_t>(e));
  if (basis == LiftBasis::kTeichmuller) {
    // w = lim t^{q^k}; v + 1 iterations are exact modulo p^v.
    Poly w = ring.unit(1);
    for (std::uint32_t k = 0; k <= v; ++k) w = ring.pow(w, q);
    check_internal(ring.pow(w, q - 1) == ring.one(), "Teichmuller lift is not a (q-1)-th root of unity");
    IntMatrix wmat(e, std::vector<std::int64_t>(e));
    std::vector<Poly> wpow{ring.one()};
    for (std::uint32_t i = 1; i < e; ++i) wpow.push_back(ring.mul(wpow.back(), w));
    for (std::uint32_t j = 0; j < e; ++j)
      for (std::uint32_t i = 0; i < e; ++i) wmat[i][j] = wpow[j][i];
    for (std::uint32_t j = 0; j < e; ++j) {
      const auto coords = solve_unit(wmat, ring.pow(w, std::uint64_t(j) * p), n, p);
      for (std::uint32_t i = 0; i < e; ++i) m[i][j] = coords[i];
    }
  } else {
    // phi(t) is the root of the lifted modulus congruent to t^p; Newton from t^p.
    Poly x = ring.pow(ring.unit(1), p);
    for (std::uint32_t k = 0; k <= v; ++k)
      x = ring.sub(x, ring.mul(ring.eval_f(x, false), ring.inverse(ring.eval_f(x, true))));
    check_internal(ring.eval_f(x, false) == Poly(e, 0), "Newton iteration did not reach a root of the modulus");
    Poly xj = ring.one();
    for (std::uint32_t j = 0; j < e; ++j) {
      for (std::uint32_t i = 0; i < e; ++i) m[i][j] = xj[i];
      xj = ring.mul(xj, x);
    }
  }
  out.m = std::move(m);
  return out;
}

MqPresentation build_mq(const grouptab::FiniteGroup& pi, std::uint32_t p, std::uint32_t e, std::uint32_t v,
                        LiftBasis basis, const Budgets& budgets) {
  if (!ffield::is_prime(p)) throw DomainError("M_q needs a prime p, got " + std::to_string(p));
  if (pi.order() > 1 && pi.prime() != p)
    throw DomainError("M_q needs a p-group for p = " + std::to_string(p) + ", but |pi| = " +
                      std::to_string(pi.order()));
  MqPresentation m;
  m.p = p;
  m.e = e;
  const std::uint64_t ex = pi.exponent();
  std::uint32_t default_v = 1;
  for (std::uint64_t t = ex; t > 1; t /= p) ++default_v;
  m.v = v == 0 ? default_v : v;
  if (m.v < default_v)
    throw DomainError("precision p^" + std::to_string(m.v) + " is below p * exp(pi)");
  const auto frob = frobenius_matrix(p, e, m.v, basis);
  m.modulus = frob.modulus;

  const auto classes = grouptab::conjugacy_classes(pi, budgets);
  const auto power = grouptab::class_power_map(pi, classes, p);
  m.k = classes.count();
  const std::uint32_t id_class = classes.class_of[pi.identity()];
  std::vector<std::int32_t> position(classes.count(), -1);
  for (std::uint32_t c = 0; c < classes.count(); ++c) {
    if (c == id_class) continue;
    position[c] = static_cast<std::int32_t>(m.class_reps.size());
    m.class_reps.push_back(classes.representatives[c]);
  }
  for (std::uint32_t c = 0; c < classes.count(); ++c)
    if (c != id_class) m.power_class.push_back(position[power[c]]);

  const std::size_t n = m.class_reps.size() * e;
  m.relations.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t c = 0; c < m.class_reps.size(); ++c)
    for (std::uint32_t j = 0; j < e; ++j) {
      auto& row = m.relations[c * e + j];
      row[c * e + j] = norm(row[c * e + j] + p, m.modulus);
      const std::int32_t pc = m.power_class[c];
      if (pc < 0) continue;
      for (std::uint32_t i = 0; i < e; ++i)
        row[pc * e + i] = norm(row[pc * e + i] - frob.m[i][j], m.modulus);
    }
  return m;
}

std::vector<std::uint64_t> invariant_factors(const MqPresentation& mq) {
  IntMatrix a = mq.relations;
  const std::size_t n = a.size();
  const std::int64_t mod = mq.modulus;
  auto val = [&](std::int64_t x) {
    if (x == 0) return mq.v;
    std::uint32_t k = 0;
    while (x % mq.p == 0) {
      x /= mq.p;
      ++k;
    }
    return k;
  };
  std::vector<std::uint64_t> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint32_t best = mq.v;
    std::size_t br = k, bc = k;
    for (std::size_t r = k; r < n && best > 0; ++r)
      for (std::size_t c = k; c < n; ++c) {
        const auto vv = val(a[r][c]);
        if (vv < best) {
          best = vv;
          br = r;
          bc = c;
          if (best == 0) break;
        }
      }
    check_internal(best < mq.v, "relation matrix is degenerate modulo p^" + std::to_string(mq.v) +
                                    "; the precision does not cover the module");
    std::swap(a[k], a[br]);
    for (auto& row : a) std::swap(row[k], row[bc]);
    const std::int64_t pa = ipow64(mq.p, best);
    const std::int64_t u = inv_unit(a[k][k] / pa, mod);
    for (auto& x : a[k]) x = mulmod(x, u, mod);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a[r][k] == 0) continue;
      const std::int64_t f = a[r][k] / pa;
      for (std::size_t c = k; c < n; ++c) a[r][c] = norm(a[r][c] - mulmod(f, a[k][c], mod), mod);
    }
    // Column operations only touch row k once column k is cleared.
    for (std::size_t c = k + 1; c < n; ++c) a[k][c] = 0;
    if (best > 0) out.push_back(static_cast<std::uint64_t>(pa));
  }
  std::sort(out.begin(), out.end());
  return out;
}

mpz_class order(const std::vector<std::uint64_t>& factors) {
  mpz_class r = 1;
  for (auto f : factors) r *= static_cast<unsigned long>(f);
  return r;
}

std::vector<Layer> filtration_layers(const grouptab::FiniteGroup& pi, const MqPresentation& m,
                                     const std::vector<std::uint64_t>& factors) {
  // depth[x] = largest i with x in pi_i.
  std::vector<unsigned> depth(pi.order(), 0);
  std::uint64_t pk = m.p;
  for (unsigned i = 1;; ++i, pk *= m.p) {
    std::vector<bool> in(pi.order(), false);
    bool nontrivial = false;
    for (grouptab::Index x = 0; x < pi.order(); ++x) {
      const auto y = pi.pow(x, pk);
      in[y] = true;
      nontrivial = nontrivial || y != pi.identity();
    }
    for (grouptab::Index x = 0; x < pi.order(); ++x)
      if (in[x]) depth[x] = i;
    if (!nontrivial) break;
  }
  std::map<unsigned, std::size_t> per_layer;
  for (auto r : m.class_reps) ++per_layer[depth[r]];
  unsigned top = per_layer.empty() ? 0 : per_layer.rbegin()->first;
  for (auto f : factors) {
    unsigned a = 0;
    for (auto t = f; t > 1; t /= m.p) ++a;
    top = std::max(top, a - 1);
  }
  std::vector<Layer> out;
  for (unsigned i = 0; i <= top; ++i) {
    Layer l;
    l.i = i;
    l.classes = per_layer.count(i) ? per_layer[i] : 0;
    l.expected_log_p = std::uint64_t(m.e) * l.classes;
    for (auto f : factors) l.observed_log_p += f > static_cast<std::uint64_t>(ipow64(m.p, i));
    out.push_back(l);
  }
  return out;
}

bool verify_filtration(const std::vector<Layer>& layers) {
  return std::all_of(layers.begin(), layers.end(),
                     [](const Layer& l) { return l.expected_log_p == l.observed_log_p; });
}

mpz_class predicted_ab_order(std::uint64_t k, std::uint32_t p, std::uint32_t e, std::uint64_t b0_order) {
  mpz_class q = 1;
  mpz_ui_pow_ui(q.get_mpz_t(), p, e);
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), k - 1);
  return r * static_cast<unsigned long>(b0_order);
}

MqResult compute_mq(const grouptab::FiniteGroup& pi, std::uint32_t p, std::uint32_t e, const Budgets& budgets) {
  MqResult r;
  r.presentation = build_mq(pi, p, e, 0, LiftBasis::kTeichmuller, budgets);
  r.factors = invariant_factors(r.presentation);
  r.order = order(r.factors);
  r.layers = filtration_layers(pi, r.presentation, r.factors);
  r.order_equals_q_pow_km1 = r.order == predicted_ab_order(r.presentation.k, p, e, 1);
  r.filtration_ok = verify_filtration(r.layers);
  return r;
}

std::string structure_string(const std::vector<std::uint64_t>& factors) {
  if (factors.empty()) return "1";
  std::map<std::uint64_t, std::size_t> count;
  for (auto f : factors) ++count[f];
  std::string s;
  for (const auto& [f, c] : count) {
    if (!s.empty()) s += " x ";
    s += "C" + std::to_string(f);
    if (c > 1) s += "^" + std::to_string(c);
  }
  return s;
}

}  // namespace orbitlab::bogomod
