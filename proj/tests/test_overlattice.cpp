#include "doctest.h"
#include "klat/overlattice.hpp"
#include "klat/roots.hpp"

using namespace klat;

namespace {

Rat rat(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// half-sum supported on the given coordinates
RatVec half_word(int n, std::initializer_list<int> support) {
  RatVec v(n, Rat(0));
  for (int i : support) v[i] = rat(1, 2);
  return v;
}

// the five generators of the weight-{8,16} code of length 16: four
// hyperplane words (bit a set) plus the all-ones word, each divided by 2
std::vector<RatVec> kummer_glue() {
  std::vector<RatVec> out;
  for (int bit = 0; bit < 4; ++bit) {
    RatVec v(16, Rat(0));
    for (int i = 0; i < 16; ++i)
      if (i & (1 << bit)) v[i] = rat(1, 2);
    out.push_back(v);
  }
  out.push_back(RatVec(16, rat(1, 2)));
  return out;
}

}  // namespace

TEST_CASE("validate_glue: single quarter class of A3 is not isotropic") {
  Lattice a3 = ade_gram({AdeFamily::A, 3});
  DiscGroup d(a3);
  RatVec gen = d.generators()[0];  // order 4, q = 5/4 not even
  auto check = validate_glue(a3, {gen});
  CHECK_FALSE(check.ok);
  CHECK(check.diagnostic.find("q = ") != std::string::npos);

  CHECK(validate_glue(a3, {}).ok);

  RatVec not_dual(3, rat(1, 5));
  CHECK_THROWS_AS(validate_glue(a3, {not_dual}), std::invalid_argument);
}

TEST_CASE("glue subgroup closure") {
  Lattice l = shape_lattice(parse_shape("A1^4"));
  auto sub = glue_subgroup(l, {half_word(4, {0, 1, 2, 3})});
  CHECK(sub.size() == 2);
  auto sub2 = glue_subgroup(l, {half_word(4, {0, 1}), half_word(4, {2, 3})});
  CHECK(sub2.size() == 4);
}

TEST_CASE("overlattice of A1^4 by the half-sum is D4") {
  Lattice f = shape_lattice(parse_shape("A1^4"));
  RatVec w = half_word(4, {0, 1, 2, 3});  // q = -2 = 0 mod 2Z
  REQUIRE(validate_glue(f, {w}).ok);
  Overlattice o = build_overlattice(f, {w});
  CHECK(o.index == 2);
  CHECK(lattice_det(f) == o.index * o.index * lattice_det(o.result));
  CHECK(root_decomposition(o.result) == parse_shape("D4"));
  CHECK(is_isometric(o.result, ade_gram({AdeFamily::D, 4})));
  // roots grew from 8 to 24: coincidence must fail
  CHECK_FALSE(roots_coincide_with_base(o));
}

TEST_CASE("overlattice of A1^8 by a weight-8 word preserves roots") {
  Lattice f = shape_lattice(parse_shape("A1^8"));
  RatVec w = half_word(8, {0, 1, 2, 3, 4, 5, 6, 7});
  Overlattice o = build_overlattice(f, {w});
  CHECK(o.index == 2);
  CHECK(enumerate_roots(o.result).count() == 16);
  CHECK(roots_coincide_with_base(o));
  CHECK(complement_quotient_factors(f, {w}) ==
        DiscGroup(o.result).invariant_factors());
}

TEST_CASE("weight-16 code glue on A1^16: index 32, disc (Z/2)^6") {
  Lattice f = shape_lattice(parse_shape("A1^16"));
  auto glue = kummer_glue();
  REQUIRE(validate_glue(f, glue).ok);
  Overlattice o = build_overlattice(f, glue);
  CHECK(o.index == 32);
  std::vector<Int> six_twos(6, Int(2));
  CHECK(DiscGroup(o.result).invariant_factors() == six_twos);
  CHECK(lattice_det(o.result) == 64);
  CHECK(roots_coincide_with_base(o));
  CHECK(complement_quotient_factors(f, glue) == six_twos);
}

TEST_CASE("coordinate transport round trips") {
  Lattice f = shape_lattice(parse_shape("A1^8"));
  RatVec w = half_word(8, {0, 1, 2, 3, 4, 5, 6, 7});
  Overlattice o = build_overlattice(f, {w});
  RatVec probe(8);
  for (int i = 0; i < 8; ++i) probe[i] = rat(i - 3, 2);
  RatVec up = to_overlattice_coords(o, probe);
  RatVec back = to_base_coords(o, up);
  CHECK(back == probe);
}

TEST_CASE("primitivity via inclusion Smith form") {
  Lattice a3 = ade_gram({AdeFamily::A, 3});
  CHECK(is_primitive_sublattice(a3, a3, IntMat::identity(3)));

  // 2L in L: scale gram by 4 on the sub side
  IntMat scaled(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) scaled.at(i, j) = 4 * a3.gram.at(i, j);
  Lattice twice = make_lattice("2A3", std::move(scaled));
  IntMat incl(3, 3);
  for (int i = 0; i < 3; ++i) incl.at(i, i) = 2;
  CHECK_FALSE(is_primitive_sublattice(twice, a3, incl));

  // gram-incompatible inclusion throws
  CHECK_THROWS_AS(is_primitive_sublattice(a3, a3, incl),
                  std::invalid_argument);
}

TEST_CASE("base is non-primitive in a proper overlattice") {
  Lattice f = shape_lattice(parse_shape("A1^8"));
  RatVec w = half_word(8, {0, 1, 2, 3, 4, 5, 6, 7});
  Overlattice o = build_overlattice(f, {w});
  // base basis vectors in overlattice coordinates form the inclusion
  IntMat incl(8, 8);
  for (int i = 0; i < 8; ++i) {
    RatVec e(8, Rat(0));
    e[i] = 1;
    RatVec up = to_overlattice_coords(o, e);
    for (int j = 0; j < 8; ++j) {
      REQUIRE(up[j].get_den() == 1);
      incl.at(i, j) = up[j].get_num();
    }
  }
  CHECK_FALSE(is_primitive_sublattice(f, o.result, incl));
}

TEST_CASE("length obstruction for embeddings into rank 22") {
  CHECK(embeddability_length_check(ade_gram({AdeFamily::E, 8})));
  // A1^16 has length 16 > 22 - 16 = 6
  CHECK_FALSE(embeddability_length_check(shape_lattice(parse_shape("A1^16"))));
  CHECK_THROWS_AS(
      embeddability_length_check(ade_gram({AdeFamily::A, 3}), 2),
      std::invalid_argument);
}

TEST_CASE("non-isotropic glue cannot be built") {
  Lattice a3 = ade_gram({AdeFamily::A, 3});
  DiscGroup d(a3);
  CHECK_THROWS_AS(build_overlattice(a3, {d.generators()[0]}),
                  std::invalid_argument);
}
