// Divisibility codes: the combinatorial constraints on 2- and 3-divisible
// configurations of disjoint curves, with exhaustive classification searches.
#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "klat/lattice.hpp"

namespace klat {

// Linear code over F_2 or F_3 whose nonzero words must all have support
// size in allowed_weights. For field 3 the coordinates index A2
// configurations, so a weight counts configurations, not curves.
struct DivisibilityCode {
  int field_order = 2;  // 2 or 3
  int length = 0;
  std::vector<std::vector<int>> generators;  // entries reduced mod field
  std::set<int> allowed_weights;
};

std::set<int> default_weights(int field_order);  // 2 -> {8,16}, 3 -> {6,9}

// All nonzero codewords of the span, entries in [0, field).
std::vector<std::vector<int>> code_words(const DivisibilityCode& c);

// True iff every nonzero codeword has support size in allowed_weights.
bool check_code(const DivisibilityCode& c);

// Monomial equivalence: coordinate permutation, plus per-coordinate sign
// flips when field_order is 3.
bool codes_equivalent(const DivisibilityCode& a, const DivisibilityCode& b);

struct CodeClassification {
  int max_dimension = 0;
  // one representative per equivalence class at max_dimension
  std::vector<DivisibilityCode> representatives;
  long long classes_examined = 0;  // symmetry-reduced count over all levels
};

// Exhaustive classification of codes with all weights in allowed_weights,
// deduplicated under monomial equivalence level by level.
CodeClassification classify_divisibility_codes(int field_order, int length,
                                               const std::set<int>& weights);

// Maximum dimension with one representative; default weights for the field.
std::pair<int, DivisibilityCode> max_divisibility_dimension(int field_order,
                                                            int length);

// Field 2: every pair of distinct weight-8 words must meet in exactly 4
// coordinates, or 0 when complementary halves exist (length 16 only).
bool pairwise_intersection_check(const DivisibilityCode& c);

// Replay of the explicit chain of 2-divisible 8-sets: base_sets is the
// maximal prefix of the fixed sets S1..S4 that fits inside the length;
// extensions lists every 8-subset whose addition keeps all weights in
// {8,16}. At length 15 the certificate is empty (no fifth set).
struct SetExtensionCertificate {
  int length = 0;
  std::vector<std::vector<int>> base_sets;   // 0-based coordinate sets
  long long words_examined = 0;
  std::vector<std::vector<int>> extensions;  // admissible new 8-sets
};

SetExtensionCertificate divisible_set_extension_certificate(int length);

// Support of a glue class of prime order p in an ADE sum. For p = 2 the
// support is the list of curves with coordinate 1/2; clean means they are
// pairwise non-adjacent. For p = 3 the coordinates with denominator 3 are
// grouped into adjacency clusters; clean means every cluster is a single
// adjacent pair (an A2 configuration), listed in pairs.
struct GlueSupport {
  std::vector<int> curves;                 // p = 2
  std::vector<std::pair<int, int>> pairs;  // p = 3
  bool clean = true;
};

GlueSupport support_of_glue(const Lattice& f, const RatVec& v, int prime);

}  // namespace klat
