#pragma once

// Aggregated verification reports: every claim the library checks, rendered
// as one record with a stable identifier, the expected value, the computed
// value, and a verdict. Reports serialize to a markdown table or to
// canonical JSON; the JSON is byte-stable across runs (alphabetical keys,
// timing excluded).

#include <string>
#include <vector>

namespace klat {

struct ClaimRecord {
  std::string id;  // "K_Z4/rank", "K_D12 correction/...", ...
  std::string expected;
  std::string computed;
  bool ok = false;
};

struct VerificationReport {
  std::vector<ClaimRecord> claims;
  double elapsed_seconds = 0.0;  // display only, never serialized
  int total() const { return static_cast<int>(claims.size()); }
  int failed() const;
  bool ok() const { return failed() == 0; }
};

// Claims for the catalog rows: all rows when row is empty, otherwise the
// named one (std::out_of_range if unknown). with_search appends the
// exhaustive enumeration cross-check for rows whose glue was frozen from a
// search rather than a closed formula. threads > 1 verifies rows in
// parallel; claims are merged in catalog order, so the report is identical
// for every thread count.
VerificationReport catalog_report(const std::string& row = "",
                                  bool with_search = false, int threads = 1);

// The full battery: all catalog rows with search cross-checks, the two
// corrections of the published tables, the distinguished primitive
// embeddings, the counterexample overlattice H, the divisibility code
// dimension bounds, and the index 3 polarization residue classes.
VerificationReport verify_all_report(int threads = 1);

std::string report_markdown(const VerificationReport& rep);
std::string report_json(const VerificationReport& rep);

}  // namespace klat
