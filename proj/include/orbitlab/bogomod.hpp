#pragma once

// The finite abelian p-group M_q attached to a p-group pi and q = p^e:
// generators lambda_j (1 - r) for a Z_p-basis {lambda_j} of the unramified ring
// R_q and nontrivial class representatives r, subject to
//   p lambda (1 - r) = phi(lambda) (1 - r^p),
// where (1 - r^p) is read in the class of r^p and is zero when r^p = 1.
// Everything is computed modulo p^v with p^v = p * exp(pi).

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "orbitlab/budget.hpp"
#include "orbitlab/grouptab.hpp"

namespace orbitlab::bogomod {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

enum class LiftBasis {
  kTeichmuller,  // {1, w, ..., w^{e-1}} for the Teichmuller lift w of t
  kPowersOfT,    // {1, t, ..., t^{e-1}} in (Z/p^v)[t]/(naive lift of the modulus)
};

struct FrobeniusMatrix {
  std::uint32_t p = 2, e = 1, v = 1;
  std::int64_t modulus = 2;  // p^v
  IntMatrix m;               // column j = coordinates of phi(lambda_j)
};

FrobeniusMatrix frobenius_matrix(std::uint32_t p, std::uint32_t e, std::uint32_t v,
                                 LiftBasis basis = LiftBasis::kTeichmuller);

/// Matrix of x -> x^p on F_q in the basis {1, t, ..., t^{e-1}}.
IntMatrix residue_frobenius(std::uint32_t p, std::uint32_t e);

struct MqPresentation {
  std::uint32_t p = 2, e = 1, v = 1;
  std::int64_t modulus = 2;
  std::uint64_t k = 1;                           // k(pi)
  std::vector<grouptab::Index> class_reps;       // nontrivial classes, in class order
  std::vector<std::int32_t> power_class;         // class position of r^p, -1 when r^p = 1
  IntMatrix relations;                           // rows over Z/p^v, generator (j, c) at column c*e + j
};

/// v = 0 picks the default precision p^v = p * exp(pi).
MqPresentation build_mq(const grouptab::FiniteGroup& pi, std::uint32_t p, std::uint32_t e, std::uint32_t v = 0,
                        LiftBasis basis = LiftBasis::kTeichmuller, const Budgets& budgets = {});

/// Nontrivial invariant factors, ascending (each a power of p).
std::vector<std::uint64_t> invariant_factors(const MqPresentation& m);
mpz_class order(const std::vector<std::uint64_t>& factors);

struct Layer {
  unsigned i = 0;
  std::size_t classes = 0;           // |C_i|
  std::uint64_t expected_log_p = 0;  // e |C_i|
  std::uint64_t observed_log_p = 0;  // log_p |p^i M / p^{i+1} M|
};

/// Layer sizes from the invariant factors against q^{|C_i|}, C_i the class
/// representatives lying in pi_i minus pi_{i+1} (pi_i the p^i-th powers).
std::vector<Layer> filtration_layers(const grouptab::FiniteGroup& pi, const MqPresentation& m,
                                     const std::vector<std::uint64_t>& factors);
bool verify_filtration(const std::vector<Layer>& layers);

/// q^{k(pi) - 1} |B_0(pi)| with |B_0| supplied by the caller.
mpz_class predicted_ab_order(std::uint64_t k, std::uint32_t p, std::uint32_t e, std::uint64_t b0_order);

struct MqResult {
  MqPresentation presentation;
  std::vector<std::uint64_t> factors;
  mpz_class order;
  std::vector<Layer> layers;
  bool order_equals_q_pow_km1 = false;
  bool filtration_ok = false;
};
MqResult compute_mq(const grouptab::FiniteGroup& pi, std::uint32_t p, std::uint32_t e, const Budgets& budgets = {});

/// e.g. "C2^13 x C4^6"; "1" for the trivial group.
std::string structure_string(const std::vector<std::uint64_t>& factors);

}  // namespace orbitlab::bogomod
