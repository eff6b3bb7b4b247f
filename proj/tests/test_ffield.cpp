#include <doctest.h>

#include <set>

#include "orbitlab/errors.hpp"
#include "orbitlab/ffield.hpp"

using namespace orbitlab;
using namespace orbitlab::ffield;

TEST_CASE("moduli are the least irreducibles") {
  CHECK(make_field(2, 1)->modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(make_field(2, 2)->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(make_field(5, 1)->q() == 5);
  for (auto [p, e] : {std::pair{2u, 3u}, {3u, 2u}, {2u, 4u}, {5u, 2u}, {3u, 3u}}) {
    auto f = make_field(p, e);
    CHECK(poly::is_irreducible(f->modulus(), p));
  }
}

TEST_CASE("fields are interned") {
  CHECK(make_field(3, 2) == make_field(3, 2));
  CHECK(parse_field(make_field(2, 3)->serialize()) == make_field(2, 3));
}

TEST_CASE("small field identities") {
  auto f4 = make_field(2, 2);
  Elt t = f4->t();
  CHECK(f4->mul(t, t) == f4->add(t, f4->one()));
  CHECK(f4->frobenius(t) == f4->add(t, 1));
  CHECK(f4->trace(t) == 1);
  auto f5 = make_field(5, 1);
  CHECK(f5->inv(2) == 3);
  CHECK_THROWS_AS(f5->inv(0), DomainError);
  CHECK(f5->frobenius(3) == 3);
  CHECK(f5->trace(4) == 4);
}

TEST_CASE("field axioms exhaustively for small q") {
  for (auto [p, e] : {std::pair{2u, 1u}, {2u, 2u}, {3u, 2u}, {2u, 3u}, {5u, 1u}, {7u, 1u}, {2u, 4u}, {3u, 3u}}) {
    auto f = make_field(p, e);
    std::uint32_t q = f->q();
    CAPTURE(q);
    CHECK(f->multiplicative_order(f->primitive()) == q - 1);
    std::set<std::uint32_t> traces;
    for (Elt x = 0; x < q; ++x) {
      CHECK(f->add(x, f->neg(x)) == 0);
      CHECK(f->pow(x, q) == x);
      if (x) CHECK(f->mul(x, f->inv(x)) == 1);
      traces.insert(f->trace(x));
      for (Elt y = 0; y < q; ++y) {
        CHECK(f->frobenius(f->mul(x, y)) == f->mul(f->frobenius(x), f->frobenius(y)));
        CHECK(f->trace(f->add(x, y)) == (f->trace(x) + f->trace(y)) % p);
        CHECK(f->mul(x, y) == f->mul(y, x));
      }
    }
    CHECK(traces.size() == p);
  }
}

TEST_CASE("distributivity on F_9 and F_16") {
  for (auto [p, e] : {std::pair{3u, 2u}, {2u, 4u}}) {
    auto f = make_field(p, e);
    for (Elt a = 0; a < f->q(); ++a)
      for (Elt b = 0; b < f->q(); ++b)
        for (Elt c = 0; c < f->q(); c += 3) CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
  }
}

TEST_CASE("element wrapper") {
  auto f = make_field(3, 2);
  FieldElement a(f, 4), b(f, 7);
  CHECK((a * b) / b == a);
  CHECK(a - a == FieldElement::zero(f));
  CHECK(a.pow(9) == a);
  CHECK_THROWS(FieldElement(make_field(2, 2), 1) + a);
}

TEST_CASE("budget and bad parameters") {
  Budgets b;
  b.field_order = 64;
  CHECK_THROWS_AS(make_field(2, 7, b), BudgetError);
  CHECK_THROWS_AS(make_field(4, 1), ValidationError);
  CHECK_THROWS(parse_field("2 2 1 0 1"));
}
