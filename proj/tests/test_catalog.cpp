#include <map>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "klat/catalog.hpp"
#include "klat/overlattice.hpp"
#include "klat/roots.hpp"

using namespace klat;

namespace {

std::vector<Int> factors(std::initializer_list<int> f) {
  std::vector<Int> out;
  for (int x : f) out.emplace_back(x);
  return out;
}

const std::vector<std::string> kummer_rows = {
    "K_Z2", "K_Z3", "K_Z4", "K_Z6", "K_D8", "K_D8p", "K_D12", "K_T"};

const std::vector<std::string> nikulin_rows = {
    "M_Z2",     "M_Z3",       "M_Z4",   "M_Z5",    "M_Z6",
    "M_Z7",     "M_Z8",       "M_Z2xZ2", "M_Z2xZ2xZ2", "M_Z2^4",
    "M_Z2xZ4",  "M_Z2xZ6",    "M_Z3xZ3", "M_Z4xZ4"};

// frozen total root numbers of the 22 root lattices
const std::map<std::string, long> root_counts = {
    {"K_Z2", 32},      {"K_Z3", 54},       {"K_Z4", 60},    {"K_Z6", 64},
    {"K_D8", 88},      {"K_D8p", 102},     {"K_D12", 90},   {"K_T", 122},
    {"M_Z2", 16},      {"M_Z3", 36},       {"M_Z4", 52},    {"M_Z5", 80},
    {"M_Z6", 76},      {"M_Z7", 126},      {"M_Z8", 126},   {"M_Z2xZ2", 24},
    {"M_Z2xZ2xZ2", 28}, {"M_Z2^4", 30},    {"M_Z2xZ4", 56}, {"M_Z2xZ6", 96},
    {"M_Z3xZ3", 48},   {"M_Z4xZ4", 72}};

}  // namespace

TEST_CASE("catalog lists the 22 rows in family order") {
  const auto& rows = catalog();
  REQUIRE(rows.size() == 22);
  for (size_t i = 0; i < kummer_rows.size(); ++i) {
    CHECK(rows[i].row == kummer_rows[i]);
    CHECK(rows[i].tag.kind == GroupKind::action_on_abelian_surface);
  }
  for (size_t i = 0; i < nikulin_rows.size(); ++i) {
    CHECK(rows[8 + i].row == nikulin_rows[i]);
    CHECK(rows[8 + i].tag.kind == GroupKind::abelian_on_k3);
  }
  for (const auto& e : rows) {
    CHECK(e.labels.size() == static_cast<size_t>(e.expected.rank));
    CHECK(!e.glue.empty());
    CHECK(find_catalog_entry(e.row) == &e);
  }
  CHECK(find_catalog_entry("K_Z5") == nullptr);
  CHECK_THROWS_AS((void)catalog_entry("K_Z5"), std::out_of_range);
}

TEST_CASE("glue data is reduced, dual and in canonical block order") {
  for (const auto& e : catalog()) {
    Lattice f = build_root_lattice(e);
    CHECK(f.gram == shape_lattice(e.shape).gram);
    DiscGroup d(f);
    for (const auto& g : e.glue) {
      CHECK(d.in_dual(g));
      CHECK(d.reduce(g) == g);
    }
    GlueCheck gc = validate_glue(f, e.glue);
    CHECK_MESSAGE(gc.ok, e.row, ": ", gc.diagnostic);
  }
}

TEST_CASE("curve labels follow the fixed-point figures") {
  const auto& z3 = catalog_entry("K_Z3");
  CHECK(z3.labels[0] == "a_1^(1)");
  CHECK(z3.labels[17] == "a_2^(9)");
  const auto& z4 = catalog_entry("K_Z4");
  CHECK(z4.labels[11] == "a_3^(4)");
  CHECK(z4.labels[12] == "a^(5)");
  const auto& d8 = catalog_entry("K_D8");
  CHECK(d8.labels[0] == "K^(1)_(0,0)");
  CHECK(d8.labels[1] == "K^(0)_(0,0)");
  CHECK(d8.labels[4] == "K^(1)_((1+i)/2,(1+i)/2)");
  CHECK(d8.labels[18] == "K_((1+i)/2,1/2)");
  const auto& t = catalog_entry("K_T");
  CHECK(t.labels[2] == "e_0");
  CHECK(t.labels[6] == "f_1");
  CHECK(t.labels[18] == "a^(1)");
  const auto& m2 = catalog_entry("M_Z2");
  CHECK(m2.labels.front() == "M_1");
  CHECK(m2.labels.back() == "M_8");
  const auto& m3 = catalog_entry("M_Z3");
  CHECK(m3.labels[1] == "M_2^(1)");
  const auto& m8 = catalog_entry("M_Z8");
  CHECK(m8.labels[14] == "M_1^(3)");
  CHECK(m8.labels[17] == "M^(4)");
}

TEST_CASE("every row rebuilds its table invariants exactly") {
  for (const auto& e : catalog()) {
    RowReport rep = verify_catalog_row(e);
    for (const auto& c : rep.checks)
      CHECK_MESSAGE(c.ok, e.row, " ", c.claim, ": want ", c.expected, " got ",
                    c.computed);
    CHECK(rep.ok);
    CHECK(rep.root_count == root_counts.at(e.row));
  }
}

TEST_CASE("the glue search recovers each row as the unique matching class") {
  std::map<std::string, int> extra_classes = {
      {"K_Z4", 1}, {"M_Z4", 1}, {"M_Z2xZ4", 1}};
  for (const auto& e : catalog()) {
    SearchCheck sc = search_check_row(e);
    CHECK_MESSAGE(sc.ok, e.row, " matching=", sc.classes_matching);
    int extra = extra_classes.count(e.row) ? extra_classes[e.row] : 0;
    CHECK(sc.classes_found == 1 + extra);
    CHECK(sc.classes_matching == 1);
  }
  // the companion classes have genuinely different invariants
  SearchCheck z4 = search_check_row(catalog_entry("K_Z4"));
  REQUIRE(z4.other_classes.size() == 1);
  CHECK(z4.other_classes[0] == "index 8, disc (4,4,4,4)");
  SearchCheck m4 = search_check_row(catalog_entry("M_Z4"));
  REQUIRE(m4.other_classes.size() == 1);
  CHECK(m4.other_classes[0] == "index 2, disc (4,4,4,4)");
}

TEST_CASE("family accessors reject tags from the other quotient family") {
  CHECK(build_K("Z4").index == 16);
  CHECK(build_M("Z4").index == 4);
  CHECK(build_F("D8p").rank() == 19);
  CHECK(build_E("Z7").rank() == 18);
  CHECK_THROWS_AS((void)build_K("Z5"), std::invalid_argument);
  CHECK_THROWS_AS((void)build_F("Z3xZ3"), std::invalid_argument);
  CHECK_THROWS_AS((void)build_M("D8"), std::invalid_argument);
  CHECK_THROWS_AS((void)build_E("T"), std::invalid_argument);
  CHECK_THROWS_AS((void)build_K("Z9"), std::invalid_argument);
  CHECK_THROWS_WITH((void)build_M("D12"),
                    doctest::Contains("use build_F or build_K"));
  CHECK_THROWS_WITH((void)build_K("Z8"),
                    doctest::Contains("use build_E or build_M"));
  CHECK_THROWS_WITH((void)build_K("Z9"), doctest::Contains("unknown"));
}

TEST_CASE("determinants scale by the squared index on every glue subgroup") {
  for (const auto& e : catalog()) {
    Lattice f = build_root_lattice(e);
    Int base_det = lattice_det(f);
    // every single-generator subgroup is again admissible glue
    for (const auto& g : e.glue) {
      Overlattice o = build_overlattice(f, {g});
      CHECK(base_det == o.index * o.index * lattice_det(o.result));
    }
  }
}

TEST_CASE("six disjoint curves halve in the uncorrected quaternion lattice") {
  CorrectionD8p c = wendland_correction_D8p();
  CHECK(c.ok);
  CHECK(c.offending.element == "d'_2+d'_3+d'_4+d'_5");
  CHECK(c.offending.support == 6);
  CHECK(c.offending.q == 1);
  CHECK_FALSE(c.offending.admissible);
  CHECK(c.corrected_glue_passes);
  CHECK_FALSE(c.published_code_passes);
  CHECK_FALSE(c.extension_exists);
  REQUIRE(c.disc_classes.size() == 7);
  std::multiset<int> supports;
  for (const auto& w : c.disc_classes) {
    supports.insert(w.support);
    CHECK_FALSE(w.admissible);
    CHECK(w.q != 0);
  }
  CHECK(supports == std::multiset<int>({5, 5, 6, 6, 6, 7, 9}));
}

TEST_CASE("the two-divisible dicyclic glue alone exceeds the length bound") {
  CorrectionD12 c = wendland_correction_D12();
  CHECK(c.ok);
  CHECK(c.published_disc == factors({2, 2, 2, 12, 12}));
  CHECK(c.published_length == 5);
  CHECK(c.corrected_length == 3);
  CHECK(c.length_bound == 3);
  CHECK_FALSE(c.published_embeddable);
  CHECK(c.corrected_embeddable);
  CHECK(c.e8_embeddable);
}

TEST_CASE("index eight glue on the Z4 shape fails the length bound") {
  const auto& e = catalog_entry("K_Z4");
  Lattice f = build_root_lattice(e);
  // doubling the order-4 generator keeps v2, v3 but halves the glue group
  RatVec r1 = e.glue[0];
  for (Rat& c : r1) c *= 2;
  DiscGroup d(f);
  Overlattice rejected =
      build_overlattice(f, {d.reduce(r1), e.glue[1], e.glue[2]});
  CHECK(rejected.index == 8);
  DiscGroup dr(rejected.result);
  CHECK(dr.invariant_factors() == factors({2, 2, 2, 2, 4, 4}));
  CHECK(dr.length() == 6);
  CHECK_FALSE(embeddability_length_check(rejected.result));
  CHECK(embeddability_length_check(build_entry(e).result));
}

TEST_CASE("the short-sum Z4 glue variant is the standard one after a flip") {
  const auto& e = catalog_entry("K_Z4");
  Overlattice k = build_entry(e);
  // alternative generator d1+...+d6 over the four A3 generators and the
  // first two halves, with the first and third A3 blocks reversed
  auto word = [&](std::initializer_list<long> cs) {
    std::vector<long> w(cs);
    RatVec v(18, Rat(0));
    DiscGroup d(k.base);
    auto off = std::vector<int>{0, 3, 6, 9, 12, 13, 14, 15, 16, 17};
    for (int b = 0; b < 10; ++b) {
      if (!w[b]) continue;
      int n = b < 4 ? 3 : 1;
      for (int i = 1; i <= n; ++i) {
        Int num = Int(w[b]) * i;
        Rat t(num, Int(n + 1));
        t.canonicalize();
        v[off[b] + i - 1] += t;
      }
    }
    return d.reduce(v);
  };
  RatVec plain = word({1, 1, 1, 1, 1, 1, 0, 0, 0, 0});
  RatVec flipped = word({3, 1, 3, 1, 1, 1, 0, 0, 0, 0});
  auto in_overlattice = [&](const RatVec& v) {
    for (const Rat& c : to_overlattice_coords(k, v))
      if (c.get_den() != 1) return false;
    return true;
  };
  CHECK(in_overlattice(flipped));
  CHECK_FALSE(in_overlattice(plain));
}

TEST_CASE("the half block sums build an even overlattice with extra roots") {
  KummerCounterexample h = build_counterexample_H_Z2();
  CHECK(h.ok);
  CHECK(h.h.index == 64);
  CHECK(h.witness_norm == -2);
  CHECK(h.roots_base == 32);
  CHECK(h.roots_h == 96);
  CHECK(h.det_h == 16);
  CHECK(h.det_kummer == 64);
  CHECK(lattice_det(h.h.base) == h.det_h * 4096);
  CHECK_FALSE(roots_coincide_with_base(h.h));
  CHECK_FALSE(is_isometric(h.h.result, build_K("Z2").result));
}

TEST_CASE("the distinguished sublattice embeddings are primitive") {
  EmbeddingCheck a = embedding_M_Z3xZ3_in_K_Z3();
  CHECK(a.ok);
  CHECK(a.integral);
  CHECK(a.isometric);
  CHECK(a.primitive);
  EmbeddingCheck b = embedding_M_Z4_in_K_Z4();
  CHECK(b.ok);
  CHECK(b.integral);
  CHECK(b.isometric);
  CHECK(b.primitive);
}
