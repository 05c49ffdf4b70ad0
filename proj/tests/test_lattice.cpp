#include <set>
#include <sstream>

#include "doctest.h"
#include "klat/lattice.hpp"

using namespace klat;

namespace {

IntMat gram_a(int n) {
  IntMat g(n, n);
  for (int i = 0; i < n; ++i) {
    g.at(i, i) = -2;
    if (i + 1 < n) g.at(i, i + 1) = g.at(i + 1, i) = 1;
  }
  return g;
}

Rat rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("make_lattice validation") {
  CHECK_NOTHROW(make_lattice("A2", gram_a(2)));

  IntMat odd(1, 1);
  odd.at(0, 0) = -1;
  CHECK_THROWS_AS(make_lattice("bad", odd), std::invalid_argument);

  IntMat pos(1, 1);
  pos.at(0, 0) = 2;
  CHECK_THROWS_AS(make_lattice("bad", pos), std::invalid_argument);

  IntMat asym(2, 2);
  asym.at(0, 0) = asym.at(1, 1) = -2;
  asym.at(0, 1) = 1;
  CHECK_THROWS_AS(make_lattice("bad", asym), std::invalid_argument);
}

TEST_CASE("direct sum: gram blocks and determinant multiplicativity") {
  Lattice a1 = make_lattice("A1", gram_a(1));
  Lattice a2 = make_lattice("A2", gram_a(2));
  Lattice s = direct_sum(a1, a2);
  REQUIRE(s.rank() == 3);
  CHECK(s.gram.at(0, 0) == -2);
  CHECK(s.gram.at(0, 1) == 0);
  CHECK(s.gram.at(1, 2) == 1);
  CHECK(lattice_det(s) == lattice_det(a1) * lattice_det(a2));
}

TEST_CASE("disc group of A1: Z/2 with q = 3/2 on the generator") {
  // Oracle by hand: A1 dual is generated by e/2, q(e/2) = -1/2 = 3/2 mod 2Z.
  Lattice a1 = make_lattice("A1", gram_a(1));
  DiscGroup d(a1);
  REQUIRE(d.length() == 1);
  REQUIRE(d.invariant_factors()[0] == 2);
  const RatVec& g = d.generators()[0];
  REQUIRE(g.size() == 1);
  CHECK(g[0] == rat(1, 2));
  CHECK(d.q_value(g) == rat(3, 2));
  CHECK(d.order() == 2);
}

TEST_CASE("disc group of A2: Z/3 with q = 4/3, b(g,g) = 1/3") {
  // Oracle by hand: generator (1/3)(e1 + 2 e2) up to sign, norm -2/3,
  // so q = -2/3 = 4/3 mod 2Z and b = -2/3 = 1/3 mod Z.
  Lattice a2 = make_lattice("A2", gram_a(2));
  DiscGroup d(a2);
  REQUIRE(d.length() == 1);
  REQUIRE(d.invariant_factors()[0] == 3);
  const RatVec& g = d.generators()[0];
  CHECK(d.element_order(g) == 3);
  CHECK(d.q_value(g) == rat(4, 3));
  CHECK(d.b_value(g, g) == rat(1, 3));
  // both nonzero classes have the same q (they are +-g)
  RatVec g2 = d.element({Int(2)});
  CHECK(d.q_value(g2) == rat(4, 3));
}

TEST_CASE("disc group elements: enumeration and duality membership") {
  Lattice a3 = make_lattice("A3", gram_a(3));
  DiscGroup d(a3);
  REQUIRE(d.length() == 1);
  REQUIRE(d.invariant_factors()[0] == 4);
  auto all = d.all_elements();
  REQUIRE(all.size() == 4);
  std::set<std::string> seen;
  for (const auto& x : all) {
    CHECK(d.in_dual(x));
    std::ostringstream key;
    for (const auto& c : x) key << c << ",";
    seen.insert(key.str());
  }
  CHECK(seen.size() == 4);  // distinct classes

  // q on the order-4 generator of disc(A3) is -3/4 = 5/4 mod 2Z.
  for (const auto& x : all)
    if (d.element_order(x) == 4) CHECK(d.q_value(x) == rat(5, 4));

  RatVec not_dual{rat(1, 5), rat(0, 1), rat(0, 1)};
  CHECK_FALSE(d.in_dual(not_dual));
  CHECK_THROWS_AS(d.q_value(not_dual), std::invalid_argument);
}

TEST_CASE("disc group: bilinear form is symmetric and linear in practice") {
  Lattice l = direct_sum(make_lattice("A2", gram_a(2)),
                         make_lattice("A3", gram_a(3)));
  DiscGroup d(l);
  CHECK(d.order() == 12);
  auto all = d.all_elements();
  for (const auto& x : all)
    for (const auto& y : all) {
      CHECK(d.b_value(x, y) == d.b_value(y, x));
    }
  // q(x+y) - q(x) - q(y) = 2 b(x,y) mod 2Z
  for (const auto& x : all)
    for (const auto& y : all) {
      RatVec sum(l.rank());
      for (int i = 0; i < l.rank(); ++i) sum[i] = x[i] + y[i];
      sum = d.reduce(sum);
      Rat lhs = d.q_value(sum) - d.q_value(x) - d.q_value(y);
      Rat rhs = d.b_value(x, y) * 2;
      Rat diff = lhs - rhs;
      // compare mod 2Z
      Int num = diff.get_num(), den = diff.get_den();
      CHECK(den == 1);
      CHECK(num % 2 == 0);
    }
}

TEST_CASE("exponent coordinates invert element construction") {
  Lattice l = direct_sum(make_lattice("A3", gram_a(3)),
                         direct_sum(make_lattice("A1", gram_a(1)),
                                    make_lattice("A2", gram_a(2))));
  DiscGroup d(l);
  CHECK(d.order() == 24);
  auto all = d.all_elements();
  REQUIRE(all.size() == 24);
  for (const auto& x : all) {
    auto exps = d.exponents_of(x);
    CHECK(d.element(exps) == x);
  }
  // generators map to unit exponent tuples
  for (size_t g = 0; g < d.generators().size(); ++g) {
    auto exps = d.exponents_of(d.generators()[g]);
    for (size_t i = 0; i < exps.size(); ++i)
      CHECK(exps[i] == (i == g ? 1 : 0));
  }
}

TEST_CASE("dual basis matrix inverts the gram pairing") {
  Lattice a3 = make_lattice("A3", gram_a(3));
  RatMat dual = dual_basis_matrix(a3);
  // row i of dual pairs to delta_ij against basis vector j
  for (int i = 0; i < 3; ++i) {
    RatVec row(3);
    for (int j = 0; j < 3; ++j) row[j] = dual.at(i, j);
    for (int j = 0; j < 3; ++j) {
      RatVec ej(3, Rat(0));
      ej[j] = 1;
      CHECK(inner_product(a3.gram, row, ej) == (i == j ? Rat(1) : Rat(0)));
    }
  }
}

TEST_CASE("json round trip is canonical") {
  Lattice a1 = make_lattice("A1", gram_a(1), {"K_1"});
  std::string s1 = lattice_to_json(a1);
  Lattice back = lattice_from_json(s1);
  CHECK(back.name == a1.name);
  CHECK(back.gram == a1.gram);
  CHECK(back.labels == a1.labels);
  CHECK(lattice_to_json(back) == s1);
}

TEST_CASE("json schema violations are diagnosed") {
  CHECK_THROWS_AS(lattice_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(lattice_from_json(R"({"name":"x","rank":2,"gram":[[-2]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      lattice_from_json(R"({"name":"x","rank":1,"gram":[[-2,1]]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(lattice_from_json(R"({"rank":1,"gram":[[-2]]})"),
                  std::invalid_argument);
}

TEST_CASE("rational vector json round trip") {
  RatVec v{rat(1, 2), rat(-3, 4), rat(0, 1)};
  std::string s = rat_vec_to_json(v);
  RatVec back = rat_vec_from_json_text(s);
  REQUIRE(back.size() == 3);
  CHECK(back[0] == v[0]);
  CHECK(back[1] == v[1]);
  CHECK(back[2] == v[2]);
  CHECK_THROWS_AS(rat_vec_from_json_text(R"({"num":[1],"den":0})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(rat_vec_from_json_text(R"({"num":[1]})"),
                  std::invalid_argument);
}
