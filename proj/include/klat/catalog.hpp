// Catalog of the Kummer-type lattices K_G (minimal resolutions of Abelian
// surface quotients A/G) and the Nikulin lattices M_G (K3 quotients Y/G):
// root lattices with curve labels, frozen glue vectors, expected invariants,
// and row-by-row verification.
#pragma once

#include <string>
#include <vector>

#include "klat/lattice.hpp"
#include "klat/overlattice.hpp"
#include "klat/roots.hpp"

namespace klat {

// The two quotient families. The order-8 quaternion group acts on Abelian
// surfaces in two inequivalent ways with different fixed-point data, tagged
// D8 and D8p.
enum class GroupKind { abelian_on_k3, action_on_abelian_surface };

struct GroupTag {
  std::string name;    // Z2..Z8, Z2xZ2, Z2xZ2xZ2, Z2^4, Z2xZ4, Z2xZ6,
                       // Z3xZ3, Z4xZ4, D8, D8p, D12, T
  GroupKind kind = GroupKind::abelian_on_k3;
  std::string gap_id;  // small-group library id, metadata only
};

struct ExpectedInvariants {
  int rank = 0;
  Int index;              // r_G, the index of the overlattice in its root lattice
  std::vector<Int> disc;  // invariant factors of the discriminant group
};

struct CatalogEntry {
  std::string row;  // "K_Z4", "M_Z3xZ3", ...
  GroupTag tag;
  AdeShape shape;
  std::vector<std::string> labels;  // curve names, one per basis vector
  std::vector<RatVec> glue;         // frozen glue generators in root coordinates
  ExpectedInvariants expected;
  bool searched_glue = false;  // frozen from an exhaustive search, not a closed formula
};

// All 22 rows: the 8 Kummer-type rows, then the 14 Nikulin rows.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_catalog_entry(const std::string& row);  // nullptr if unknown
const CatalogEntry& catalog_entry(const std::string& row);       // throws std::out_of_range

// Labeled root lattice F_G resp. E_G of one row.
Lattice build_root_lattice(const CatalogEntry& e);
// The glued overlattice K_G resp. M_G of one row.
Overlattice build_entry(const CatalogEntry& e);

// Lookup by group name within one family; std::invalid_argument names the
// expected family when the tag belongs to the other one.
Lattice build_F(const std::string& group);
Lattice build_E(const std::string& group);
Overlattice build_K(const std::string& group);
Overlattice build_M(const std::string& group);

struct RowCheck {
  std::string claim;
  std::string expected;
  std::string computed;
  bool ok = false;
};

struct RowReport {
  std::string row;
  bool ok = false;
  long root_count = 0;  // common root count of base and overlattice when equal
  std::vector<RowCheck> checks;
};

// Checks rank, index, discriminant invariant factors, the determinant
// relation d(F) = r^2 d(K), root-set coincidence, and the length bound
// length <= 22 - rank against the expected data.
RowReport verify_catalog_row(const CatalogEntry& e);

// Re-runs the exhaustive glue search over the row's root lattice and checks
// that exactly one maximal admissible class has the expected invariants and
// that the frozen glue has the same (maximal) order, which pins the row up
// to isometry. Shapes with further maximal classes of different invariants
// list them under other_classes.
struct SearchCheck {
  std::string row;
  bool ok = false;
  int classes_found = 0;
  int classes_matching = 0;
  std::vector<std::string> other_classes;  // "index r, disc a,b,..." summaries
};
SearchCheck search_check_row(const CatalogEntry& e);

// One discriminant class with its support data: how many pairwise disjoint
// curves carry it, its discriminant form value, and whether gluing it is
// admissible (isotropic with support 8 or 16).
struct SupportWitness {
  std::string element;  // d-word naming the class
  int support = 0;
  Rat q;  // value of the discriminant form in [0, 2)
  bool admissible = false;
};

// Correction of the published description of K_D8p: the glue claimed there
// contains a 2-divisible class supported on six disjoint curves, which the
// divisibility constraint excludes. Also shows no even isotropic extension
// of the corrected K_D8p exists at all.
struct CorrectionD8p {
  bool ok = false;
  SupportWitness offending;                  // the published weight-6 class
  std::vector<SupportWitness> disc_classes;  // all 7 nonzero classes of disc(K_D8p)
  bool corrected_glue_passes = false;        // frozen glue words all weigh 8 or 16
  bool published_code_passes = false;        // corrected words plus the offending class
  bool extension_exists = false;             // some class extends K_D8p evenly
};
CorrectionD8p wendland_correction_D8p();

// Correction of the published description of K_D12: gluing only the
// 2-divisible class 2v yields discriminant length 5, too long for a
// primitive embedding at rank 19; the corrected K_D12 glues the order-4
// class v and has length 3.
struct CorrectionD12 {
  bool ok = false;
  std::vector<Int> published_disc;  // invariant factors of the rejected lattice
  int published_length = 0;
  int corrected_length = 0;
  int length_bound = 0;  // 22 - 19
  bool published_embeddable = false;
  bool corrected_embeddable = false;
  bool e8_embeddable = false;  // unimodular sanity case
};
CorrectionD12 wendland_correction_D12();

// The distinguished primitive embeddings M_{Z3xZ3} -> K_Z3 (identity on the
// first eight A2 blocks) and M_Z4 -> K_Z4 (first two A3 blocks reversed,
// A1 halves onto the last two A1 blocks).
struct EmbeddingCheck {
  std::string sub;
  std::string ambient;
  bool integral = false;   // image lies in the ambient overlattice
  bool isometric = false;  // inclusion pulls the gram back exactly
  bool primitive = false;
  bool ok = false;
};
EmbeddingCheck embedding_M_Z3xZ3_in_K_Z3();
EmbeddingCheck embedding_M_Z4_in_K_Z4();

// The even index-2^6 overlattice H of A1^16 whose glue subgroup contains
// classes of square -2: an even overlattice of the Kummer root lattice that
// exceeds the Kummer glue yet fails root coincidence, hence bounds how far
// the overlattice characterization can be pushed.
struct KummerCounterexample {
  Overlattice h;
  RatVec witness;    // (K_1+K_2+K_3+K_4)/2
  Rat witness_norm;  // -2
  long roots_h = 0;
  long roots_base = 0;
  Int det_h;       // 2^16 / (2^6)^2 = 16
  Int det_kummer;  // 64, so H is not isometric to the Kummer lattice
  bool ok = false;
};
KummerCounterexample build_counterexample_H_Z2();

}  // namespace klat
