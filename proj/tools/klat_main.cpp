// Batch front-end: catalog verification, lattice inspection over the JSON
// interchange format, glue validation and search, divisibility code search,
// polarized extension classification, and the full verification battery.
// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or I/O.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "klat/catalog.hpp"
#include "klat/divisibility.hpp"
#include "klat/gluesearch.hpp"
#include "klat/lattice.hpp"
#include "klat/nsclassify.hpp"
#include "klat/overlattice.hpp"
#include "klat/report.hpp"
#include "klat/roots.hpp"

namespace {

using json = nlohmann::json;
using namespace klat;

struct GlobalOpts {
  bool json_out = false;
  std::string out_file;
  int threads = 1;
};

int emit(const GlobalOpts& g, const std::string& text) {
  if (g.out_file.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(g.out_file);
  if (!out) {
    std::cerr << "cannot open output file: " << g.out_file << "\n";
    return 2;
  }
  out << text;
  return 0;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json int_or_string(const Int& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

json factors_json(const std::vector<Int>& f) {
  json a = json::array();
  for (const auto& v : f) a.push_back(int_or_string(v));
  return a;
}

std::string factors_text(const std::vector<Int>& f) {
  std::string s;
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += f[i].get_str();
  }
  return s;
}

json rat_vec_json(const RatVec& v) { return json::parse(rat_vec_to_json(v)); }

std::vector<RatVec> glue_from_json_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("glue json: parse error: ") +
                                e.what());
  }
  if (!j.is_array())
    throw std::invalid_argument("glue json: expected an array of {num, den}");
  std::vector<RatVec> glue;
  for (const auto& e : j) glue.push_back(rat_vec_from_json_text(e.dump()));
  return glue;
}

// Rows matching a tag: the full row name or the bare group name, which may
// hit both families (Z4 -> K_Z4 and M_Z4).
std::vector<const CatalogEntry*> rows_for_tag(const std::string& tag) {
  std::vector<const CatalogEntry*> rows;
  for (const auto& e : catalog())
    if (e.row == tag || e.row.substr(e.row.find('_') + 1) == tag)
      rows.push_back(&e);
  if (rows.empty()) throw std::invalid_argument("unknown group tag: " + tag);
  return rows;
}

int finish_report(const GlobalOpts& g, const VerificationReport& rep) {
  std::fprintf(stderr, "elapsed: %.2f s\n", rep.elapsed_seconds);
  int rc = emit(g, g.json_out ? report_json(rep) : report_markdown(rep));
  if (rc != 0) return rc;
  return rep.ok() ? 0 : 1;
}

int cmd_catalog_list(const GlobalOpts& g) {
  if (g.json_out) {
    json rows = json::array();
    for (const auto& e : catalog())
      rows.push_back({{"disc", factors_json(e.expected.disc)},
                      {"group", e.tag.name},
                      {"index", int_or_string(e.expected.index)},
                      {"rank", e.expected.rank},
                      {"row", e.row},
                      {"shape", shape_to_string(e.shape)}});
    return emit(g, json{{"rows", rows}}.dump(2) + "\n");
  }
  std::string out = "| row | shape | rank | index | disc |\n";
  out += "| --- | --- | --- | --- | --- |\n";
  for (const auto& e : catalog())
    out += "| " + e.row + " | " + shape_to_string(e.shape) + " | " +
           std::to_string(e.expected.rank) + " | " +
           e.expected.index.get_str() + " | " + factors_text(e.expected.disc) +
           " |\n";
  return emit(g, out);
}

int cmd_catalog_build(const GlobalOpts& g, const std::string& group,
                      const std::string& which) {
  Lattice l = [&] {
    if (which == "F") return build_F(group);
    if (which == "E") return build_E(group);
    if (which == "K") return build_K(group).result;
    return build_M(group).result;
  }();
  return emit(g, lattice_to_json(l));
}

int cmd_catalog_verify(const GlobalOpts& g, const std::string& tag,
                       bool with_search) {
  VerificationReport rep;
  if (tag.empty()) {
    rep = catalog_report("", with_search, g.threads);
  } else {
    for (const CatalogEntry* e : rows_for_tag(tag)) {
      VerificationReport part = catalog_report(e->row, with_search);
      rep.claims.insert(rep.claims.end(), part.claims.begin(),
                        part.claims.end());
      rep.elapsed_seconds += part.elapsed_seconds;
    }
  }
  return finish_report(g, rep);
}

int cmd_verify_all(const GlobalOpts& g, const std::string& tag) {
  if (!tag.empty()) return cmd_catalog_verify(g, tag, true);
  return finish_report(g, verify_all_report(g.threads));
}

int cmd_lattice_show(const GlobalOpts& g, const std::string& file) {
  return emit(g, lattice_to_json(lattice_from_json_file(file)));
}

int cmd_lattice_disc(const GlobalOpts& g, const std::string& file) {
  Lattice l = lattice_from_json_file(file);
  DiscGroup d(l);
  std::vector<std::string> q;
  for (const auto& gen : d.generators()) q.push_back(d.q_value(gen).get_str());
  if (g.json_out) {
    json out{{"invariant_factors", factors_json(d.invariant_factors())},
             {"length", d.length()},
             {"order", int_or_string(d.order())},
             {"q_on_generators", q}};
    return emit(g, out.dump(2) + "\n");
  }
  std::string text = "disc(" + l.name + ")";
  if (d.length() == 0) {
    text += " trivial\n";
    return emit(g, text);
  }
  text += " =";
  for (const auto& f : d.invariant_factors()) text += " Z/" + f.get_str();
  text += ", order " + d.order().get_str() + "\nq on generators:";
  for (const auto& s : q) text += " " + s;
  return emit(g, text + "\n");
}

int cmd_lattice_roots(const GlobalOpts& g, const std::string& file) {
  Lattice l = lattice_from_json_file(file);
  RootSet r = enumerate_roots(l);
  if (g.json_out) {
    json out{{"count", r.count()},
             {"positive", static_cast<int>(r.positive().size())}};
    return emit(g, out.dump(2) + "\n");
  }
  return emit(g, l.name + ": " + std::to_string(r.count()) + " roots, " +
                     std::to_string(r.positive().size()) +
                     " up to sign\n");
}

int cmd_lattice_decompose(const GlobalOpts& g, const std::string& file) {
  Lattice l = lattice_from_json_file(file);
  AdeShape shape = root_decomposition(l);
  if (g.json_out) {
    json comps = json::array();
    for (const auto& t : shape) comps.push_back(ade_name(t));
    json out{{"components", comps},
             {"root_count", int_or_string(shape_root_count(shape))},
             {"shape", shape_to_string(shape)}};
    return emit(g, out.dump(2) + "\n");
  }
  return emit(g, l.name + ": " + shape_to_string(shape) + "\n");
}

int cmd_lattice_isometric(const GlobalOpts& g, const std::string& file_a,
                          const std::string& file_b) {
  Lattice a = lattice_from_json_file(file_a);
  Lattice b = lattice_from_json_file(file_b);
  bool iso = is_isometric(a, b);
  int rc = g.json_out
               ? emit(g, json{{"isometric", iso}}.dump(2) + "\n")
               : emit(g, std::string(iso ? "isometric" : "not isometric") +
                             "\n");
  if (rc != 0) return rc;
  return iso ? 0 : 1;
}

int cmd_glue_validate(const GlobalOpts& g, const std::string& lattice_file,
                      const std::string& glue_file) {
  Lattice l = lattice_from_json_file(lattice_file);
  std::vector<RatVec> glue = glue_from_json_file(glue_file);
  GlueCheck c = validate_glue(l, glue);
  int rc = g.json_out
               ? emit(g, json{{"diagnostic", c.diagnostic}, {"ok", c.ok}}
                                 .dump(2) +
                             "\n")
               : emit(g, c.ok ? "isotropic\n"
                              : "not isotropic: " + c.diagnostic + "\n");
  if (rc != 0) return rc;
  return c.ok ? 0 : 1;
}

int cmd_glue_build(const GlobalOpts& g, const std::string& lattice_file,
                   const std::string& glue_file, const std::string& name) {
  Lattice l = lattice_from_json_file(lattice_file);
  std::vector<RatVec> glue = glue_from_json_file(glue_file);
  Overlattice o = build_overlattice(l, glue, name);
  DiscGroup d(o.result);
  json out{{"disc", factors_json(d.invariant_factors())},
           {"index", int_or_string(o.index)},
           {"result", json::parse(lattice_to_json(o.result))},
           {"root_coincidence", roots_coincide_with_base(o)}};
  return emit(g, out.dump(2) + "\n");
}

int cmd_glue_search(const GlobalOpts& g, const std::string& lattice_file,
                    int max_length) {
  Lattice l = lattice_from_json_file(lattice_file);
  if (max_length < 0) max_length = std::max(0, 22 - l.rank());
  auto classes = minimal_root_preserving_overlattices(l, max_length);
  json rows = json::array();
  for (const auto& o : classes) {
    DiscGroup d(o.result);
    json gens = json::array();
    for (const auto& v : o.glue) gens.push_back(rat_vec_json(v));
    rows.push_back({{"disc", factors_json(d.invariant_factors())},
                    {"glue", gens},
                    {"index", int_or_string(o.index)}});
  }
  json out{{"classes", rows},
           {"count", static_cast<int>(classes.size())},
           {"max_length", max_length}};
  return emit(g, out.dump(2) + "\n");
}

int cmd_codes_search(const GlobalOpts& g, int field, int length,
                     std::vector<int> weights, bool with_certificate) {
  std::set<int> wset(weights.begin(), weights.end());
  if (wset.empty()) wset = default_weights(field);
  CodeClassification c = classify_divisibility_codes(field, length, wset);
  json gens = json::array();
  if (!c.representatives.empty())
    for (const auto& w : c.representatives.front().generators)
      gens.push_back(w);
  json out{{"classes_examined", c.classes_examined},
           {"dimension", c.max_dimension},
           {"generators", gens},
           {"representatives", static_cast<int>(c.representatives.size())}};
  if (with_certificate) {
    SetExtensionCertificate cert = divisible_set_extension_certificate(length);
    out["certificate"] = {{"base_sets", cert.base_sets},
                          {"extensions", cert.extensions},
                          {"words_examined", cert.words_examined}};
  }
  return emit(g, out.dump(2) + "\n");
}

int cmd_ns_classify(const GlobalOpts& g, const std::string& row, long dsq,
                    int prime) {
  const CatalogEntry& e = catalog_entry(row);
  Overlattice n = build_entry(e);
  if (dsq <= 0 || dsq % 2 != 0)
    throw std::invalid_argument(
        "polarization degree H^2 must be positive and even");
  if (prime == 0) {
    // smallest prime factor of H^2 whose index can glue into disc(N)
    Int order = DiscGroup(n.result).order();
    Int rem(dsq);
    for (Int f(2); f * f <= rem && prime == 0; f += (f == 2 ? 1 : 2)) {
      if (rem % f != 0) continue;
      while (rem % f == 0) rem /= f;
      if (order % f == 0) prime = static_cast<int>(f.get_si());
    }
    if (prime == 0 && rem > 1 && order % rem == 0 && rem.fits_sint_p())
      prime = static_cast<int>(rem.get_si());
  }
  json out{{"catalog", row}, {"degree", dsq / 2}, {"dsq", dsq}};
  if (prime == 3) out["degree_mod_9"] = (dsq / 2) % 9;
  if (prime == 0) {
    out["classes"] = json::array();
    out["divides"] = false;
    out["note"] = "no prime divides both H^2 and the discriminant order";
    return emit(g, out.dump(2) + "\n");
  }
  ExtensionClassification cl = classify_extensions({n, Int(dsq), prime});
  json classes = json::array();
  for (const auto& c : cl.classes) {
    json jc{{"name", c.name},
            {"orbit", c.orbit},
            {"q", c.q.get_str()},
            {"support", c.support}};
    if (!c.word.empty()) jc["word"] = c.word;
    json ex = json::array();
    for (const auto& v : c.exponents) ex.push_back(int_or_string(v));
    jc["exponents"] = ex;
    classes.push_back(jc);
  }
  out["admissible"] = cl.admissible;
  out["classes"] = classes;
  out["divides"] = cl.divides;
  out["normalized"] = cl.normalized;
  out["prime"] = cl.prime;
  if (!cl.note.empty()) out["note"] = cl.note;
  return emit(g, out.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact lattice constructions and verification"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_flag("--json", g.json_out, "machine-readable JSON output");
  app.add_option("--out", g.out_file, "write the primary output to a file");
  app.add_option("--threads", g.threads,
                 "worker threads for verification, affects speed only")
      ->check(CLI::PositiveNumber);

  int rc = 0;

  auto* cat = app.add_subcommand("catalog", "the built-in lattice rows");
  cat->require_subcommand(1);
  cat->add_subcommand("list", "list all rows with their invariants")
      ->callback([&] { rc = cmd_catalog_list(g); });

  std::string build_group, build_which;
  auto* cat_build =
      cat->add_subcommand("build", "emit one lattice of a row as JSON");
  cat_build->add_option("--group", build_group, "group tag, e.g. Z4 or D8p")
      ->required();
  cat_build
      ->add_option("--which", build_which,
                   "F/K root lattice or overlattice on K3 quotients, E/M on "
                   "Abelian quotients")
      ->required()
      ->check(CLI::IsMember({"F", "K", "E", "M"}));
  cat_build->callback([&] { rc = cmd_catalog_build(g, build_group, build_which); });

  std::string verify_group;
  bool verify_search = false;
  auto* cat_verify =
      cat->add_subcommand("verify", "check every row claim, exit 1 on mismatch");
  cat_verify->add_option("--group", verify_group,
                         "restrict to one group tag or row name");
  cat_verify->add_flag("--search", verify_search,
                       "include the exhaustive glue search cross-checks");
  cat_verify->callback(
      [&] { rc = cmd_catalog_verify(g, verify_group, verify_search); });

  auto* lat = app.add_subcommand("lattice", "inspect JSON lattice files");
  lat->require_subcommand(1);
  std::string lat_file, lat_file_b;
  auto* lat_show = lat->add_subcommand("show", "reprint in canonical form");
  lat_show->add_option("file", lat_file)->required();
  lat_show->callback([&] { rc = cmd_lattice_show(g, lat_file); });
  auto* lat_disc = lat->add_subcommand("disc", "discriminant group and form");
  lat_disc->add_option("file", lat_file)->required();
  lat_disc->callback([&] { rc = cmd_lattice_disc(g, lat_file); });
  auto* lat_roots = lat->add_subcommand("roots", "count the norm -2 vectors");
  lat_roots->add_option("file", lat_file)->required();
  lat_roots->callback([&] { rc = cmd_lattice_roots(g, lat_file); });
  auto* lat_dec =
      lat->add_subcommand("decompose", "ADE decomposition of the root system");
  lat_dec->add_option("file", lat_file)->required();
  lat_dec->callback([&] { rc = cmd_lattice_decompose(g, lat_file); });
  auto* lat_iso =
      lat->add_subcommand("isometric", "decide integral isometry, exit 1 if not");
  lat_iso->add_option("file_a", lat_file)->required();
  lat_iso->add_option("file_b", lat_file_b)->required();
  lat_iso->callback([&] { rc = cmd_lattice_isometric(g, lat_file, lat_file_b); });

  auto* glue = app.add_subcommand("glue", "overlattices from glue vectors");
  glue->require_subcommand(1);
  std::string glue_lattice, glue_file, glue_name;
  auto* glue_val =
      glue->add_subcommand("validate", "isotropy of the glue subgroup");
  glue_val->add_option("lattice", glue_lattice, "JSON lattice file")->required();
  glue_val->add_option("glue", glue_file, "JSON array of {num, den} vectors")
      ->required();
  glue_val->callback([&] { rc = cmd_glue_validate(g, glue_lattice, glue_file); });
  auto* glue_build = glue->add_subcommand("build", "build the overlattice");
  glue_build->add_option("lattice", glue_lattice, "JSON lattice file")
      ->required();
  glue_build->add_option("glue", glue_file, "JSON array of {num, den} vectors")
      ->required();
  glue_build->add_option("--name", glue_name, "name for the result");
  glue_build->callback(
      [&] { rc = cmd_glue_build(g, glue_lattice, glue_file, glue_name); });
  int search_max_length = -1;
  auto* glue_srch = glue->add_subcommand(
      "search", "enumerate maximal root-preserving overlattices");
  glue_srch->add_option("lattice", glue_lattice, "JSON lattice file")
      ->required();
  glue_srch->add_option("--max-length", search_max_length,
                        "discriminant length cap, default 22 - rank");
  glue_srch->callback([&] { rc = cmd_glue_search(g, glue_lattice, search_max_length); });

  int codes_field = 2, codes_length = 0;
  std::vector<int> codes_weights;
  bool codes_cert = false;
  auto* codes = app.add_subcommand("codes", "divisibility code search");
  codes->require_subcommand(1);
  auto* codes_srch = codes->add_subcommand(
      "search", "maximal code dimension under the weight constraints");
  codes_srch->add_option("--field", codes_field, "field order")
      ->check(CLI::IsMember({2, 3}));
  codes_srch->add_option("--length", codes_length, "code length")
      ->required()
      ->check(CLI::PositiveNumber);
  codes_srch
      ->add_option("--weights", codes_weights,
                   "allowed weights, default 8,16 over F2 and 6,9 over F3")
      ->delimiter(',');
  codes_srch->add_flag("--certificate", codes_cert,
                       "include the 8-set extension certificate");
  codes_srch->callback([&] {
    rc = cmd_codes_search(g, codes_field, codes_length, codes_weights,
                          codes_cert);
  });

  std::string ns_row = "M_Z3";
  long ns_dsq = 0;
  int ns_prime = 0;
  auto* ns = app.add_subcommand("ns", "polarized extension classification");
  ns->require_subcommand(1);
  auto* ns_cls = ns->add_subcommand(
      "classify", "index p extensions of Zh + N for h^2 = dsq");
  ns_cls->add_option("--catalog", ns_row, "catalog row giving N, default M_Z3");
  ns_cls->add_option("--dsq", ns_dsq, "H^2 = 2d, positive and even")
      ->required();
  ns_cls->add_option("--prime", ns_prime,
                     "extension index, default: smallest usable prime");
  ns_cls->callback([&] { rc = cmd_ns_classify(g, ns_row, ns_dsq, ns_prime); });

  std::string all_group;
  auto* all = app.add_subcommand(
      "verify-all", "every claim: rows, searches, corrections, embeddings, "
                    "counterexample, codes, polarizations");
  all->add_option("--group", all_group, "restrict to one group tag or row name");
  all->callback([&] { rc = cmd_verify_all(g, all_group); });

  // let the global flags appear after a subcommand name as well
  auto enable_fallthrough = [](CLI::App* a, auto&& self) -> void {
    for (CLI::App* s : a->get_subcommands(nullptr)) {
      s->fallthrough();
      self(s, self);
    }
  };
  enable_fallthrough(&app, enable_fallthrough);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
