#include "orbitlab/linalg.hpp"

#include <algorithm>

#include "orbitlab/errors.hpp"

namespace orbitlab::linalg {

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elt x) { return x == 0; });
}

namespace {

// v -= c * row
void axpy(const Field& f, Vec& v, Elt c, const Vec& row) {
  if (c == 0) return;
  Elt nc = f.neg(c);
  for (std::size_t j = 0; j < v.size(); ++j)
    if (row[j]) v[j] = f.add(v[j], f.mul(nc, row[j]));
}

}  // namespace

Subspace::Subspace(FieldHandle field, std::size_t ambient)
    : field_(std::move(field)), ambient_(ambient) {}

Subspace Subspace::span(FieldHandle field, std::size_t ambient, const std::vector<Vec>& gens) {
  Subspace s(std::move(field), ambient);
  for (const auto& g : gens) s.insert(g);
  return s;
}

Subspace Subspace::full(FieldHandle field, std::size_t ambient) {
  Subspace s(std::move(field), ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    Vec v(ambient, 0);
    v[i] = 1;
    s.rows_.push_back(std::move(v));
    s.pivots_.push_back(i);
  }
  return s;
}

Vec Subspace::reduce(Vec v) const {
  if (v.size() != ambient_) throw DomainError("vector length differs from subspace ambient dimension");
  const Field& f = *field_;
  for (std::size_t r = 0; r < rows_.size(); ++r) axpy(f, v, v[pivots_[r]], rows_[r]);
  return v;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [&](const Vec& v) { return contains(v); });
}

bool Subspace::insert(const Vec& v) {
  Vec r = reduce(v);
  auto it = std::find_if(r.begin(), r.end(), [](Elt x) { return x != 0; });
  if (it == r.end()) return false;
  const Field& f = *field_;
  const std::size_t piv = static_cast<std::size_t>(it - r.begin());
  Elt inv = f.inv(r[piv]);
  for (auto& x : r) x = f.mul(x, inv);
  for (auto& row : rows_) axpy(f, row, row[piv], r);
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, piv);
  rows_.insert(rows_.begin() + pos, std::move(r));
  return true;
}

std::vector<Vec> nullspace(const Field& field, const std::vector<Vec>& m, std::size_t cols) {
  std::vector<Vec> a = m;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t sel = rank;
    while (sel < a.size() && a[sel][c] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[rank], a[sel]);
    Elt inv = field.inv(a[rank][c]);
    for (auto& x : a[rank]) x = field.mul(x, inv);
    for (std::size_t r = 0; r < a.size(); ++r)
      if (r != rank) axpy(field, a[r], a[r][c], a[rank]);
    pivot_cols.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec x(cols, 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) x[pivot_cols[r]] = field.neg(a[r][free]);
    out.push_back(std::move(x));
  }
  return out;
}

PackedLinearMap::PackedLinearMap(std::uint32_t p, std::size_t n, const std::vector<Vec>& images)
    : p_(p), n_(n) {
  if (images.size() != n) throw InternalError("PackedLinearMap needs one image per coordinate");
  std::uint64_t pw = 1;
  for (std::size_t k = 0; k < n; ++k) {
    pow_.push_back(pw);
    if (k + 1 < n && pw > UINT64_MAX / p) throw InternalError("PackedLinearMap: p^n overflows");
    pw *= p;
  }
  if (p == 2) {
    if (n > 64) throw InternalError("PackedLinearMap: more than 64 bits");
    for (const auto& v : images) {
      std::uint64_t m = 0;
      for (std::size_t l = 0; l < n; ++l)
        if (v[l]) m |= std::uint64_t(1) << l;
      masks_.push_back(m);
    }
  } else {
    for (const auto& v : images) images_.insert(images_.end(), v.begin(), v.end());
  }
}

std::uint64_t PackedLinearMap::apply(std::uint64_t idx) const {
  if (p_ == 2) {
    std::uint64_t out = 0;
    while (idx) {
      out ^= masks_[static_cast<std::size_t>(__builtin_ctzll(idx))];
      idx &= idx - 1;
    }
    return out;
  }
  std::uint32_t acc[64] = {};
  std::vector<std::uint32_t> big;
  std::uint32_t* a = acc;
  if (n_ > 64) {
    big.assign(n_, 0);
    a = big.data();
  }
  for (std::size_t k = 0; k < n_ && idx; ++k) {
    const auto d = static_cast<std::uint32_t>(idx % p_);
    idx /= p_;
    if (!d) continue;
    const std::uint32_t* row = images_.data() + k * n_;
    for (std::size_t l = 0; l < n_; ++l) a[l] = (a[l] + d * row[l]) % p_;
  }
  std::uint64_t out = 0;
  for (std::size_t l = 0; l < n_; ++l) out += a[l] * pow_[l];
  return out;
}

}  // namespace orbitlab::linalg
