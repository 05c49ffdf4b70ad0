#include "klat/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "klat/catalog.hpp"
#include "klat/divisibility.hpp"
#include "klat/nsclassify.hpp"

namespace klat {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void add_claim(VerificationReport& rep, const std::string& id,
               const std::string& expected, const std::string& computed,
               bool ok) {
  rep.claims.push_back({id, expected, computed, ok});
}

void append_row_claims(VerificationReport& rep, const CatalogEntry& e,
                       bool with_search) {
  RowReport rr = verify_catalog_row(e);
  for (const auto& c : rr.checks)
    add_claim(rep, e.row + "/" + c.claim, c.expected, c.computed, c.ok);
  if (with_search && e.searched_glue) {
    SearchCheck sc = search_check_row(e);
    add_claim(rep, e.row + "/glue search",
              "one maximal class with the expected invariants",
              std::to_string(sc.classes_matching) + " of " +
                  std::to_string(sc.classes_found) + " classes match",
              sc.ok);
  }
}

void append_correction_claims(VerificationReport& rep) {
  CorrectionD8p c8 = wendland_correction_D8p();
  add_claim(rep, "K_D8p correction/offending class excluded",
            "support 6, q = 1, not admissible",
            "support " + std::to_string(c8.offending.support) + ", q = " +
                c8.offending.q.get_str() + ", " +
                (c8.offending.admissible ? "admissible" : "not admissible"),
            c8.offending.support == 6 && c8.offending.q == 1 &&
                !c8.offending.admissible);
  add_claim(rep, "K_D8p correction/corrected glue divisible",
            "all words weigh 8 or 16", yes_no(c8.corrected_glue_passes),
            c8.corrected_glue_passes);
  add_claim(rep, "K_D8p correction/published glue rejected", "no",
            yes_no(c8.published_code_passes), !c8.published_code_passes);
  add_claim(rep, "K_D8p correction/no even extension", "none",
            c8.extension_exists ? "one exists" : "none", !c8.extension_exists);

  CorrectionD12 c12 = wendland_correction_D12();
  add_claim(rep, "K_D12 correction/published glue too long",
            "length 5 > bound 3, not embeddable",
            "length " + std::to_string(c12.published_length) + " vs bound " +
                std::to_string(c12.length_bound) + ", " +
                (c12.published_embeddable ? "embeddable" : "not embeddable"),
            c12.published_length == 5 && c12.length_bound == 3 &&
                !c12.published_embeddable);
  add_claim(rep, "K_D12 correction/corrected glue embeddable",
            "length 3, embeddable",
            "length " + std::to_string(c12.corrected_length) + ", " +
                (c12.corrected_embeddable ? "embeddable" : "not embeddable"),
            c12.corrected_length == 3 && c12.corrected_embeddable);
  add_claim(rep, "K_D12 correction/unimodular sanity case", "E8 embeddable",
            c12.e8_embeddable ? "E8 embeddable" : "E8 rejected",
            c12.e8_embeddable);
}

void append_embedding_claim(VerificationReport& rep, const EmbeddingCheck& e) {
  add_claim(rep, e.sub + " in " + e.ambient + "/primitive embedding",
            "integral, isometric, primitive",
            std::string(e.integral ? "integral" : "not integral") + ", " +
                (e.isometric ? "isometric" : "not isometric") + ", " +
                (e.primitive ? "primitive" : "not primitive"),
            e.ok);
}

void append_counterexample_claims(VerificationReport& rep) {
  KummerCounterexample h = build_counterexample_H_Z2();
  add_claim(rep, "H_Z2/glue index", "64", h.h.index.get_str(),
            h.h.index == 64);
  add_claim(rep, "H_Z2/short glue witness", "norm -2",
            "norm " + h.witness_norm.get_str(), h.witness_norm == -2);
  add_claim(rep, "H_Z2/root excess over the base", "96 vs 32",
            std::to_string(h.roots_h) + " vs " + std::to_string(h.roots_base),
            h.roots_h == 96 && h.roots_base == 32);
  add_claim(rep, "H_Z2/determinant differs from the Kummer lattice",
            "16 vs 64", h.det_h.get_str() + " vs " + h.det_kummer.get_str(),
            h.det_h == 16 && h.det_kummer == 64 && h.ok);
}

void append_code_dimension_claims(VerificationReport& rep) {
  struct DimCase {
    int field;
    int length;
    int dim;
  };
  const std::vector<DimCase> cases = {{2, 16, 5}, {2, 15, 4}, {2, 14, 3},
                                      {2, 7, 0},  {3, 9, 3},  {3, 5, 0}};
  for (const auto& c : cases) {
    int got = max_divisibility_dimension(c.field, c.length).first;
    add_claim(rep,
              "divisibility codes/F" + std::to_string(c.field) + " length " +
                  std::to_string(c.length) + " max dimension",
              std::to_string(c.dim), std::to_string(got), got == c.dim);
  }
}

void append_polarization_claims(VerificationReport& rep) {
  Overlattice m = build_M("Z3");
  struct ResidueCase {
    int residue;
    std::string name;
    long orbit;
  };
  const std::vector<ResidueCase> cases = {
      {0, "H/3 + d1 + d2 + d3", 20},
      {3, "H/3 + d1 + d2 + 2 d3 + 2 d4", 30},
      {6, "H/3 + d1 + 2 d2", 30},
  };
  for (const auto& rc : cases) {
    int degrees = 0;
    int matching = 0;
    for (int d = rc.residue == 0 ? 9 : rc.residue; d <= 45; d += 9) {
      ++degrees;
      ExtensionClassification cl = classify_extensions({m, Int(2 * d), 3});
      if (cl.divides && cl.normalized && cl.classes.size() == 1 &&
          cl.classes[0].name == rc.name && cl.classes[0].orbit == rc.orbit)
        ++matching;
    }
    add_claim(rep,
              "M_Z3 polarization/degree " + std::to_string(rc.residue) +
                  " mod 9",
              "one class " + rc.name + ", orbit " + std::to_string(rc.orbit),
              std::to_string(matching) + " of " + std::to_string(degrees) +
                  " degrees up to 45 agree",
              matching == degrees);
  }
  int nondiv = 0;
  int trivial_only = 0;
  for (int d = 1; d <= 45; ++d) {
    if (d % 3 == 0) continue;
    ++nondiv;
    ExtensionClassification cl = classify_extensions({m, Int(2 * d), 3});
    if (!cl.divides && cl.classes.empty()) ++trivial_only;
  }
  add_claim(rep, "M_Z3 polarization/degree prime to 3",
            "no nontrivial extension",
            std::to_string(trivial_only) + " of " + std::to_string(nondiv) +
                " degrees up to 45 have none",
            trivial_only == nondiv);
}

}  // namespace

int VerificationReport::failed() const {
  int n = 0;
  for (const auto& c : claims)
    if (!c.ok) ++n;
  return n;
}

VerificationReport catalog_report(const std::string& row, bool with_search,
                                  int threads) {
  auto start = clock_type::now();
  VerificationReport rep;
  std::vector<const CatalogEntry*> entries;
  if (row.empty()) {
    for (const auto& e : catalog()) entries.push_back(&e);
  } else {
    entries.push_back(&catalog_entry(row));
  }
  int n = static_cast<int>(entries.size());
  int workers = std::min(threads, n);
  if (workers <= 1) {
    for (const CatalogEntry* e : entries) append_row_claims(rep, *e, with_search);
  } else {
    std::vector<VerificationReport> parts(n);
    std::atomic<int> next{0};
    auto run = [&] {
      for (int i = next++; i < n; i = next++)
        append_row_claims(parts[i], *entries[i], with_search);
    };
    std::vector<std::future<void>> pool;
    for (int w = 0; w < workers; ++w)
      pool.push_back(std::async(std::launch::async, run));
    for (auto& f : pool) f.get();
    for (const auto& p : parts)
      rep.claims.insert(rep.claims.end(), p.claims.begin(), p.claims.end());
  }
  rep.elapsed_seconds = seconds_since(start);
  return rep;
}

VerificationReport verify_all_report(int threads) {
  auto start = clock_type::now();
  VerificationReport rep = catalog_report("", true, threads);
  append_correction_claims(rep);
  append_embedding_claim(rep, embedding_M_Z3xZ3_in_K_Z3());
  append_embedding_claim(rep, embedding_M_Z4_in_K_Z4());
  append_counterexample_claims(rep);
  append_code_dimension_claims(rep);
  append_polarization_claims(rep);
  rep.elapsed_seconds = seconds_since(start);
  return rep;
}

std::string report_markdown(const VerificationReport& rep) {
  std::string out = "| claim | expected | computed | verdict |\n";
  out += "| --- | --- | --- | --- |\n";
  for (const auto& c : rep.claims)
    out += "| " + c.id + " | " + c.expected + " | " + c.computed + " | " +
           (c.ok ? "pass" : "FAIL") + " |\n";
  out += "\n" + std::to_string(rep.total() - rep.failed()) + "/" +
         std::to_string(rep.total()) + " claims verified";
  if (rep.failed() > 0)
    out += ", " + std::to_string(rep.failed()) + " failed";
  out += ".\n";
  return out;
}

std::string report_json(const VerificationReport& rep) {
  nlohmann::json claims = nlohmann::json::array();
  for (const auto& c : rep.claims)
    claims.push_back({{"computed", c.computed},
                      {"expected", c.expected},
                      {"id", c.id},
                      {"ok", c.ok}});
  nlohmann::json j{{"claims", claims},
                   {"summary",
                    {{"failed", rep.failed()},
                     {"ok", rep.ok()},
                     {"passed", rep.total() - rep.failed()},
                     {"total", rep.total()}}}};
  return j.dump(2) + "\n";
}

}  // namespace klat
