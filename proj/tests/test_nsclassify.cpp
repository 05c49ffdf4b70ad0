#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "klat/catalog.hpp"
#include "klat/nsclassify.hpp"

using namespace klat;

namespace {

Rat rat(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

const Overlattice& m_z3() {
  static Overlattice o = build_M("Z3");
  return o;
}

const Overlattice& k_z2() {
  static Overlattice o = build_K("Z2");
  return o;
}

// Dual class with the given word over the six A2 blocks, as a reduced
// element of disc(M_Z3).
RatVec a2_word_class(const std::vector<long>& w) {
  const Overlattice& o = m_z3();
  RatVec base(o.base.rank(), Rat(0));
  for (int b = 0; b < 6; ++b)
    for (int j = 0; j < 2; ++j) base[2 * b + j] = rat(w[b] * (j + 1) % 3, 3);
  return DiscGroup(o.result).reduce(to_overlattice_coords(o, base));
}

}  // namespace

TEST_CASE("polarized extension problems validate index and degree") {
  CHECK_THROWS_AS(classify_extensions({m_z3(), Int(18), 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify_extensions({m_z3(), Int(18), 6}),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify_extensions({m_z3(), Int(18), 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify_extensions({m_z3(), Int(0), 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify_extensions({m_z3(), Int(-4), 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify_extensions({m_z3(), Int(9), 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evenness_congruence({m_z3(), Int(18), 2}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(polarization_feasibility(m_z3(), Int(7)),
                  std::invalid_argument);
}

TEST_CASE("index 3 classification over the A2^6 overlattice by residue") {
  for (long d = 1; d <= 45; ++d) {
    ExtensionClassification cl = classify_extensions({m_z3(), Int(2 * d), 3});
    CAPTURE(d);
    CHECK(cl.divides == (d % 3 == 0));
    if (d % 3 != 0) {
      CHECK(cl.classes.empty());
      CHECK(cl.admissible == 0);
      CHECK(cl.note == "index does not divide H^2: only the trivial extension");
      continue;
    }
    CHECK(cl.normalized);
    REQUIRE(cl.classes.size() == 1);
    const ExtensionClass& c = cl.classes[0];
    switch (d % 9) {
      case 0:
        CHECK(cl.admissible == 20);
        CHECK(c.word == std::vector<long>{1, 1, 1, 0, 0, 0});
        CHECK(c.support == 3);
        CHECK(c.orbit == 20);
        CHECK(c.q == 0);
        CHECK(c.name == "H/3 + d1 + d2 + d3");
        break;
      case 3:
        CHECK(cl.admissible == 30);
        CHECK(c.word == std::vector<long>{1, 1, 2, 2, 0, 0});
        CHECK(c.support == 4);
        CHECK(c.orbit == 30);
        CHECK(c.q == rat(4, 3));
        CHECK(c.name == "H/3 + d1 + d2 + 2 d3 + 2 d4");
        break;
      case 6:
        CHECK(cl.admissible == 30);
        CHECK(c.word == std::vector<long>{1, 2, 0, 0, 0, 0});
        CHECK(c.support == 2);
        CHECK(c.orbit == 30);
        CHECK(c.q == rat(2, 3));
        CHECK(c.name == "H/3 + d1 + 2 d2");
        break;
    }
    CHECK(evenness_congruence({m_z3(), Int(2 * d), 3}, c.support));
  }
}

TEST_CASE("glue shifts identify the long words with the short ones") {
  // Adding the glue word (1,...,1) turns the support-3 class into the
  // support-6 one and the support-2 class into the support-5 one.
  CHECK(a2_word_class({2, 2, 2, 1, 1, 1}) == a2_word_class({1, 1, 1, 0, 0, 0}));
  CHECK(a2_word_class({2, 0, 1, 1, 1, 1}) == a2_word_class({1, 2, 0, 0, 0, 0}));
  CHECK(a2_word_class({1, 1, 1, 0, 0, 0}) !=
        a2_word_class({1, 2, 0, 0, 0, 0}));
  ExtensionClassification cl = classify_extensions({m_z3(), Int(18), 3});
  REQUIRE(cl.classes.size() == 1);
  CHECK(cl.classes[0].mu == a2_word_class({1, 1, 1, 0, 0, 0}));
  CHECK(cl.classes[0].mu == a2_word_class({2, 2, 2, 1, 1, 1}));
}

TEST_CASE("A2 evenness congruence d - 3k = 0 mod 9") {
  CHECK(evenness_congruence({m_z3(), Int(18), 3}, 3));
  CHECK(evenness_congruence({m_z3(), Int(12), 3}, 2));
  CHECK_FALSE(evenness_congruence({m_z3(), Int(2), 3}, 0));
  CHECK_FALSE(evenness_congruence({m_z3(), Int(18), 3}, 4));
  CHECK(evenness_congruence({m_z3(), Int(6), 3}, 4));
  CHECK(evenness_congruence({m_z3(), Int(12), 3}, 5));
  CHECK(evenness_congruence({m_z3(), Int(18), 3}, 6));
}

TEST_CASE("extension lattice for the index 3 class of degree 18") {
  PolarizedExtensionProblem pr{m_z3(), Int(18), 3};
  ExtensionClassification cl = classify_extensions(pr);
  REQUIRE(cl.classes.size() == 1);
  ExtensionLattice ext = build_polarized_extension(pr, cl.classes[0].mu);
  CHECK(ext.even);
  CHECK(ext.gram.rows() == 13);
  CHECK(ext.gram.is_symmetric());
  // det relation: 9 * det = 2d * det(N) = 18 * 81.
  CHECK(ext.det == 162);
  CHECK(ext.disc == std::vector<Int>{3, 3, 18});
  CHECK(ext.n_primitive);
  CHECK(ext.h_primitive);
  // v = (H + d1 + d2 + d3)/3 is isotropic at this degree: v^2 = (18 - 18)/9.
  CHECK(ext.gram.at(0, 0) == 0);
  CHECK(ext.n_inclusion.rows() == 12);
  CHECK(ext.n_inclusion.cols() == 13);

  // mu = 0 builds Z(H/3) (+) N: integral and even here, but H drops
  // primitivity, which is why order exactly p is required of the classes.
  ExtensionLattice hp = build_polarized_extension(pr, RatVec(12, Rat(0)));
  CHECK(hp.even);
  CHECK_FALSE(hp.h_primitive);
  CHECK(hp.n_primitive);
  CHECK(hp.disc == std::vector<Int>{3, 3, 3, 6});
}

TEST_CASE("extension construction rejects bad glue classes") {
  PolarizedExtensionProblem pr{m_z3(), Int(18), 3};
  // Word with digit sum not divisible by 3 is not in the dual of N.
  RatVec bad(12, Rat(0));
  bad[0] = rat(1, 3);
  bad[1] = rat(2, 3);
  RatVec over = to_overlattice_coords(m_z3(), bad);
  CHECK_THROWS_WITH_AS(build_polarized_extension(pr, over),
                       doctest::Contains("integral"), std::invalid_argument);
  CHECK_THROWS_AS(build_polarized_extension(pr, RatVec(5, Rat(0))),
                  std::invalid_argument);
  // Order-2 classes do not divide an index-3 extension.
  DiscGroup dk(k_z2().result);
  CHECK_THROWS_WITH_AS(
      build_polarized_extension({k_z2(), Int(18), 3}, dk.generators()[0]),
      doctest::Contains("order"), std::invalid_argument);
  // A q = 0 class at degree 4 gives v^2 = 1 + 0, integral but odd.
  bool tried = false;
  for (const RatVec& x : dk.all_elements()) {
    if (dk.element_order(x) != 2 || dk.q_value(x) != 0) continue;
    CHECK_THROWS_WITH_AS(build_polarized_extension({k_z2(), Int(4), 2}, x),
                         doctest::Contains("odd"), std::invalid_argument);
    tried = true;
    break;
  }
  CHECK(tried);
}

TEST_CASE("feasibility of the A2^6 overlattice") {
  FeasibilityReport small = polarization_feasibility(m_z3(), Int(2));
  CHECK(small.rank == 13);
  REQUIRE(small.rows.size() == 1);  // no admissible extension of degree 2
  CHECK(small.rows[0].prime == 1);
  CHECK(small.rows[0].cls.name == "H");
  CHECK(small.rows[0].disc == std::vector<Int>{3, 3, 3, 6});
  CHECK(small.rows[0].length == 4);
  CHECK(small.rows[0].det == 162);
  CHECK(small.rows[0].even);
  CHECK(small.rows[0].embeddable);

  FeasibilityReport big = polarization_feasibility(m_z3(), Int(18));
  REQUIRE(big.rows.size() == 2);  // the trivial row and one index-3 class
  CHECK(big.rows[0].prime == 1);
  CHECK(big.rows[0].disc == std::vector<Int>{3, 3, 3, 3, 18});
  CHECK(big.rows[0].length == 5);
  CHECK(big.rows[0].det == 1458);
  CHECK(big.rows[0].embeddable);
  CHECK(big.rows[1].prime == 3);
  CHECK(big.rows[1].cls.name == "H/3 + d1 + d2 + d3");
  CHECK(big.rows[1].disc == std::vector<Int>{3, 3, 18});
  CHECK(big.rows[1].length == 3);
  CHECK(big.rows[1].det == 162);
  CHECK(big.rows[1].even);
  CHECK(big.rows[1].n_primitive);
  CHECK(big.rows[1].embeddable);

  // Degree 50 admits index 2 and 5 arithmetically, but disc(N) = (Z/3)^4
  // has no classes of either order.
  FeasibilityReport none = polarization_feasibility(m_z3(), Int(50));
  REQUIRE(none.rows.size() == 1);
  CHECK(none.rows[0].disc == std::vector<Int>{3, 3, 3, 150});
  ExtensionClassification cl = classify_extensions({m_z3(), Int(50), 5});
  CHECK(cl.divides);
  CHECK(cl.admissible == 0);
  CHECK(cl.note == "no admissible glue class");
}

TEST_CASE("feasibility of the Kummer overlattice at degree four") {
  FeasibilityReport rep = polarization_feasibility(k_z2(), Int(4));
  CHECK(rep.rank == 17);
  REQUIRE(rep.rows.size() == 29);
  // The unextended row has length 7 > 22 - 17: it cannot be the full
  // rank-17 piece of an even unimodular rank-22 lattice.
  CHECK(rep.rows[0].prime == 1);
  CHECK(rep.rows[0].disc ==
        std::vector<Int>{2, 2, 2, 2, 2, 2, 4});
  CHECK(rep.rows[0].length == 7);
  CHECK(rep.rows[0].det == 256);
  CHECK_FALSE(rep.rows[0].embeddable);
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    const FeasibilityRow& row = rep.rows[i];
    CAPTURE(i);
    CHECK(row.prime == 2);
    CHECK(row.cls.q == 1);
    // q = -k/2 mod 2Z over A1 halves, so q = 1 forces support k = 2 mod 4.
    CHECK(row.cls.support % 4 == 2);
    CHECK(row.disc == std::vector<Int>{2, 2, 2, 2, 4});
    CHECK(row.length == 5);
    CHECK(row.det == 64);
    CHECK(row.even);
    CHECK(row.n_primitive);
    CHECK(row.embeddable);
  }
}

TEST_CASE("the Kummer glue code blocks word normalization") {
  // The glue code of the A1^16 base is not invariant under coordinate
  // transpositions, so the classes stay unmerged.
  ExtensionClassification cl = classify_extensions({k_z2(), Int(4), 2});
  CHECK_FALSE(cl.normalized);
  CHECK(cl.admissible == 28);
  CHECK(cl.classes.size() == 28);
  CHECK(cl.note ==
        "glue code symmetries not established: one row per admissible class");
  for (const ExtensionClass& c : cl.classes) {
    CHECK(c.orbit == 1);
    CHECK(c.word.size() == 16);
  }
  CHECK(cl.classes[0].word == std::vector<long>{0, 0, 0, 1, 0, 1, 0, 0, 0, 1,
                                                1, 1, 0, 0, 1, 0});
  CHECK(cl.classes[0].name == "H/2 + d4 + d6 + d10 + d11 + d12 + d15");
}
