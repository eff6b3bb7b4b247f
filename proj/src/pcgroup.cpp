// Collection from the left for power-commutator presentations of p-groups.
//
// For a collected word x = g_1^{x_1} ... g_n^{x_n}, right multiplication by g_i
// only has to move g_i past the tail T = g_{i+1}^{x_{i+1}} ... g_n^{x_n}:
//     T g_i = g_i T^{g_i},   T^{g_i} = prod_{j>i} (g_j [g_j, g_i])^{x_j},
// and every factor of T^{g_i} lives in <g_{i+1}, ..., g_n>, so the recursion
// only ever descends to later generators. An exponent reaching p is replaced
// by the power relation g_i^p, again a word in later generators.

#include <algorithm>

#include "orbitlab/errors.hpp"
#include "orbitlab/ffield.hpp"
#include "orbitlab/grouptab.hpp"

namespace orbitlab::grouptab {

namespace {

using Word = std::vector<std::uint32_t>;

class PcCollector final : public MulOracle {
 public:
  PcCollector(const PcPresentation& pres, std::uint64_t step_limit)
      : p_(pres.p), n_(pres.n), step_limit_(step_limit), power_(pres.power) {
    conj_.assign(n_, std::vector<Word>(n_));
    for (std::uint32_t j = 0; j < n_; ++j)
      for (std::uint32_t i = 0; i < j; ++i) {
        Word w(n_, 0);
        if (auto it = pres.comm.find({j, i}); it != pres.comm.end()) w = it->second;
        w[j] = 1;  // g_j [g_j, g_i]; the commutator only involves generators after j
        conj_[j][i] = std::move(w);
      }
  }

  Index mul(Index a, Index b) const override {
    steps_ = 0;
    return encode(mul_words(decode(a), decode(b)));
  }

 private:
  Word decode(Index a) const {
    Word w(n_);
    for (std::uint32_t i = n_; i-- > 0;) {
      w[i] = a % p_;
      a /= p_;
    }
    return w;
  }
  Index encode(const Word& w) const {
    Index out = 0;
    for (auto e : w) out = out * p_ + e;
    return out;
  }

  void tick() const {
    if (++steps_ > step_limit_)
      throw PresentationError("collection did not terminate within " + std::to_string(step_limit_) +
                              " rewrite steps");
  }

  Word mul_words(Word a, const Word& b) const {
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t k = 0; k < b[i]; ++k) a = mul_gen(std::move(a), i);
    return a;
  }

  Word mul_gen(Word x, std::uint32_t i) const {
    tick();
    Word tail(n_, 0);
    bool trivial_tail = true;
    for (std::uint32_t j = i + 1; j < n_; ++j)
      if (x[j]) trivial_tail = false;
    if (!trivial_tail) {
      for (std::uint32_t j = i + 1; j < n_; ++j)
        for (std::uint32_t k = 0; k < x[j]; ++k) tail = mul_words(std::move(tail), conj_[j][i]);
    }
    const std::uint32_t e = x[i] + 1;
    if (e < p_) {
      x[i] = e;
      std::copy(tail.begin() + i + 1, tail.end(), x.begin() + i + 1);
      return x;
    }
    Word w = mul_words(power_[i], tail);
    x[i] = 0;
    std::copy(w.begin() + i + 1, w.end(), x.begin() + i + 1);
    return x;
  }

  std::uint32_t p_, n_;
  std::uint64_t step_limit_;
  std::vector<Word> power_;
  std::vector<std::vector<Word>> conj_;
  // Per-product step counter; the oracle is used from one thread at a time.
  mutable std::uint64_t steps_ = 0;
};

}  // namespace

void validate_pc_presentation(const PcPresentation& pres, const Budgets& budgets) {
  if (!ffield::is_prime(pres.p)) throw PresentationError("pc presentation prime " + std::to_string(pres.p) + " is not prime");
  require_budget("pc_length", pres.n, budgets.pc_length);
  if (pres.power.size() != pres.n) throw PresentationError("pc presentation needs one power relation per generator");
  auto check_word = [&](const Word& w, std::uint32_t after, const std::string& what) {
    if (w.size() != pres.n) throw PresentationError(what + ": word has length " + std::to_string(w.size()));
    for (std::uint32_t k = 0; k < pres.n; ++k) {
      if (w[k] >= pres.p) throw PresentationError(what + ": exponent out of range");
      if (w[k] && k <= after)
        throw PresentationError(what + ": word involves g_" + std::to_string(k + 1) +
                                ", relations may only involve later generators");
    }
  };
  for (std::uint32_t i = 0; i < pres.n; ++i) check_word(pres.power[i], i, "pow " + std::to_string(i + 1));
  for (const auto& [key, w] : pres.comm) {
    auto [j, i] = key;
    if (!(j > i && j < pres.n))
      throw PresentationError("comm relation indices must satisfy n >= j > i >= 1");
    check_word(w, j, "comm " + std::to_string(j + 1) + " " + std::to_string(i + 1));
  }
}

std::shared_ptr<const MulOracle> make_pc_oracle(const PcPresentation& pres, const Budgets& budgets) {
  return std::make_shared<PcCollector>(pres, budgets.pc_steps);
}

}  // namespace orbitlab::grouptab
