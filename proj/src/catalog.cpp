// Row data and verification for the Kummer-type and Nikulin overlattice
// catalog. Glue vectors live in root coordinates, reduced into [0,1)^rank.
#include "klat/catalog.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "klat/divisibility.hpp"
#include "klat/gluesearch.hpp"

namespace klat {
namespace {

Rat frac1(const Rat& x) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_num().get_mpz_t(),
              x.get_den().get_mpz_t());
  Rat out(r, x.get_den());
  out.canonicalize();
  return out;
}

RatVec reduced(RatVec v) {
  for (auto& c : v) c = frac1(c);
  return v;
}

int shape_rank(const AdeShape& s) {
  int r = 0;
  for (const auto& t : s) r += t.n;
  return r;
}

std::vector<int> block_offsets(const AdeShape& s) {
  std::vector<int> off;
  int at = 0;
  for (const auto& t : s) {
    off.push_back(at);
    at += t.n;
  }
  return off;
}

// Adds c times the A_n dual generator (1, 2, ..., n)/(n+1) at offset off.
void add_a_gen(RatVec& v, int off, int n, long c) {
  for (int i = 1; i <= n; ++i) {
    Int num = Int(c) * i;
    Rat t(num, Int(n + 1));
    t.canonicalize();
    v[off + i - 1] += t;
  }
}

// Adds c/2 at each listed coordinate (A1 halves and D4 leaf pairs).
void add_halves(RatVec& v, const std::vector<int>& positions, long c = 1) {
  Rat t(Int(c), Int(2));
  t.canonicalize();
  for (int p : positions) v[p] += t;
}

// Adds c times the D5 order-4 generator (2, 0, 2, 1, 3)/4 at offset off.
void add_d5_gen(RatVec& v, int off, long c) {
  static const int num[5] = {2, 0, 2, 1, 3};
  for (int i = 0; i < 5; ++i) {
    Int n2 = Int(c) * num[i];
    Rat t(n2, Int(4));
    t.canonicalize();
    v[off + i] += t;
  }
}

// Adds c times the E6 order-3 generator (2, 1, 0, 2, 1, 0)/3 at offset off.
void add_e6_gen(RatVec& v, int off, long c) {
  static const int num[6] = {2, 1, 0, 2, 1, 0};
  for (int i = 0; i < 6; ++i) {
    Int n2 = Int(c) * num[i];
    Rat t(n2, Int(3));
    t.canonicalize();
    v[off + i] += t;
  }
}

// Glue vector from a coefficient word over the block dual generators of an
// all-A shape (an A1 generator is the half curve).
RatVec word_vector(const AdeShape& s, const std::vector<long>& word) {
  auto off = block_offsets(s);
  RatVec v(shape_rank(s), Rat(0));
  for (size_t b = 0; b < word.size(); ++b)
    if (word[b]) add_a_gen(v, off[b], s[b].n, word[b]);
  return reduced(v);
}

RatVec support_half_word(int rank, const std::vector<int>& support) {
  RatVec v(rank, Rat(0));
  add_halves(v, support);
  return v;
}

std::vector<std::string> numbered(const std::string& stem, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(stem + "_" + std::to_string(i));
  return out;
}

// "M_1^(j)", ..., "M_k^(j)" for a k-curve block.
void push_block_labels(std::vector<std::string>& out, const std::string& stem,
                       int k, int j) {
  for (int i = 1; i <= k; ++i)
    out.push_back(stem + "_" + std::to_string(i) + "^(" + std::to_string(j) +
                  ")");
}

void push_single_label(std::vector<std::string>& out, const std::string& stem,
                       int j) {
  out.push_back(stem + "^(" + std::to_string(j) + ")");
}

// Labels "K^(s)_p" for the curves of one resolved fixed point p.
void push_point_labels(std::vector<std::string>& out,
                       const std::vector<std::string>& sups,
                       const std::string& point) {
  for (const auto& s : sups) out.push_back("K^(" + s + ")_" + point);
}

std::vector<Int> factor_list(const std::vector<int>& f) {
  std::vector<Int> out;
  for (int x : f) out.emplace_back(x);
  return out;
}

// The index sets whose half sums generate the (Z/2)^k glue of the
// product-group rows: S_k collects the curves i (0-based) whose bit 4-k
// vanishes, so S_1 = {1..8}, S_2 = {1..4, 9..12}, S_3 = {1,2,5,6,...},
// S_4 = the odd positions, in 1-based curve numbering.
std::vector<int> product_set(int k, int length) {
  std::vector<int> s;
  for (int i = 0; i < length; ++i)
    if (!(i & (1 << (4 - k)))) s.push_back(i);
  return s;
}

CatalogEntry k_z2() {
  CatalogEntry e;
  e.row = "K_Z2";
  e.tag = {"Z2", GroupKind::action_on_abelian_surface, "[2,1]"};
  e.shape = parse_shape("A1^16");
  e.labels = numbered("K", 16);
  for (int bit = 1; bit <= 4; ++bit)
    e.glue.push_back(support_half_word(16, product_set(bit, 16)));
  std::vector<int> all(16);
  for (int i = 0; i < 16; ++i) all[i] = i;
  e.glue.push_back(support_half_word(16, all));
  e.expected = {16, Int(32), factor_list({2, 2, 2, 2, 2, 2})};
  return e;
}

CatalogEntry k_z3() {
  CatalogEntry e;
  e.row = "K_Z3";
  e.tag = {"Z3", GroupKind::action_on_abelian_surface, "[3,1]"};
  e.shape = parse_shape("A2^9");
  for (int j = 1; j <= 9; ++j) push_block_labels(e.labels, "a", 2, j);
  e.glue.push_back(word_vector(e.shape, {1, 1, 1, 1, 1, 1, 0, 0, 0}));
  e.glue.push_back(word_vector(e.shape, {1, 1, 2, 2, 0, 0, 1, 1, 0}));
  e.glue.push_back(word_vector(e.shape, {0, 1, 0, 1, 0, 1, 1, 2, 1}));
  e.expected = {18, Int(27), factor_list({3, 3, 3})};
  e.searched_glue = true;  // third generator fixed by exhaustive completion
  return e;
}

CatalogEntry k_z4() {
  CatalogEntry e;
  e.row = "K_Z4";
  e.tag = {"Z4", GroupKind::action_on_abelian_surface, "[4,1]"};
  e.shape = parse_shape("A3^4+A1^6");
  for (int j = 1; j <= 4; ++j) push_block_labels(e.labels, "a", 3, j);
  for (int j = 5; j <= 10; ++j) push_single_label(e.labels, "a", j);
  e.glue.push_back(word_vector(e.shape, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
  e.glue.push_back(word_vector(e.shape, {2, 2, 0, 0, 1, 1, 1, 1, 0, 0}));
  e.glue.push_back(word_vector(e.shape, {2, 0, 2, 0, 0, 0, 1, 1, 1, 1}));
  e.expected = {18, Int(16), factor_list({2, 2, 4, 4})};
  return e;
}

CatalogEntry k_z6() {
  CatalogEntry e;
  e.row = "K_Z6";
  e.tag = {"Z6", GroupKind::action_on_abelian_surface, "[6,2]"};
  e.shape = parse_shape("A5+A2^4+A1^5");
  for (int i = 1; i <= 5; ++i)
    e.labels.push_back("K_1^(" + std::to_string(i) + ")");
  for (int i = 2; i <= 5; ++i) {
    e.labels.push_back("K_" + std::to_string(i) + "^(1)");
    e.labels.push_back("K_" + std::to_string(i) + "^(2)");
  }
  for (int i = 6; i <= 10; ++i)
    e.labels.push_back("K_" + std::to_string(i) + "^(1)");
  e.glue.push_back(word_vector(e.shape, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
  e.expected = {18, Int(6), factor_list({2, 6, 6, 6})};
  return e;
}

CatalogEntry k_d8() {
  CatalogEntry e;
  e.row = "K_D8";
  e.tag = {"D8", GroupKind::action_on_abelian_surface, "[8,4]"};
  e.shape = parse_shape("D4^2+A3^3+A1^2");
  push_point_labels(e.labels, {"1", "0", "2", "3"}, "(0,0)");
  push_point_labels(e.labels, {"1", "0", "2", "3"}, "((1+i)/2,(1+i)/2)");
  push_point_labels(e.labels, {"1", "0", "2"}, "(1/2,1/2)");
  push_point_labels(e.labels, {"1", "0", "2"}, "(0,(1+i)/2)");
  push_point_labels(e.labels, {"1", "0", "2"}, "(1/2,i/2)");
  e.labels.push_back("K_(1/2,0)");
  e.labels.push_back("K_((1+i)/2,1/2)");
  // blocks: D4 at 0 and 4, A3 at 8, 11, 14, A1 at 17 and 18
  RatVec v1(19, Rat(0)), v2(19, Rat(0)), v3(19, Rat(0));
  add_halves(v1, {0, 2, 4, 6});
  add_a_gen(v1, 8, 3, 2);
  add_a_gen(v1, 11, 3, 2);
  add_halves(v2, {0, 3, 4, 7});
  add_a_gen(v2, 11, 3, 2);
  add_a_gen(v2, 14, 3, 2);
  add_halves(v3, {0, 2, 4, 6, 17, 18});
  add_a_gen(v3, 14, 3, 2);
  e.glue = {reduced(v1), reduced(v2), reduced(v3)};
  e.expected = {19, Int(8), factor_list({4, 4, 4})};
  return e;
}

CatalogEntry k_d8p() {
  CatalogEntry e;
  e.row = "K_D8p";
  e.tag = {"D8p", GroupKind::action_on_abelian_surface, "[8,4]"};
  e.shape = parse_shape("D4^4+A1^3");
  push_point_labels(e.labels, {"1", "0", "2", "3"}, "(0,0)");
  push_point_labels(e.labels, {"1", "0", "2", "3"}, "((1+i)/2,0)");
  push_point_labels(e.labels, {"1", "0", "2", "3"}, "(i/2,i/2)");
  push_point_labels(e.labels, {"1", "0", "2", "3"}, "(1/2,i/2)");
  e.labels.push_back("K_(1/2,0)");
  e.labels.push_back("K_((1+i)/4,(1+i)/4)");
  e.labels.push_back("K_((1+i)/4,(i-1)/4)");
  // d'_{2b-1} = (x1+x3)/2 and d'_{2b} = (x1+x4)/2 of D4 block b; halves last
  e.glue.push_back(support_half_word(19, {0, 2, 4, 6, 8, 10, 12, 14}));
  e.glue.push_back(support_half_word(19, {0, 3, 4, 7, 8, 11, 12, 15}));
  e.glue.push_back(support_half_word(19, {0, 2, 6, 7, 8, 11, 16, 17}));
  e.glue.push_back(support_half_word(19, {0, 2, 4, 7, 14, 15, 16, 18}));
  e.expected = {19, Int(16), factor_list({2, 2, 2})};
  return e;
}

CatalogEntry k_d12() {
  CatalogEntry e;
  e.row = "K_D12";
  e.tag = {"D12", GroupKind::action_on_abelian_surface, "[12,1]"};
  e.shape = parse_shape("D5+A3^3+A2^2+A1");
  push_point_labels(e.labels, {"4", "0", "2", "1", "3"}, "(0,0)");
  push_point_labels(e.labels, {"1", "2", "3"}, "(1/2,1/2)");
  push_point_labels(e.labels, {"1", "2", "3"}, "(w/2,w/2)");
  push_point_labels(e.labels, {"1", "2", "3"}, "((1+w)/2,(1+w)/2)");
  push_point_labels(e.labels, {"1", "2"}, "(0,(1-w)/3)");
  push_point_labels(e.labels, {"1", "2"}, "((1-w)/3,(1-w)/3)");
  e.labels.push_back("K_(0,1/2)");
  // v = d1 + 9 d2 + 9 d3 + d4 + d5; the ninefold A2 parts fall back into
  // the root lattice and the A3 generators survive once each
  RatVec v(19, Rat(0));
  add_d5_gen(v, 0, 1);
  add_a_gen(v, 5, 3, 9);
  add_a_gen(v, 14, 2, 9);
  add_a_gen(v, 8, 3, 9);
  add_a_gen(v, 16, 2, 9);
  add_a_gen(v, 11, 3, 1);
  add_halves(v, {18});
  e.glue = {reduced(v)};
  e.expected = {19, Int(4), factor_list({2, 12, 12})};
  return e;
}

CatalogEntry k_t() {
  CatalogEntry e;
  e.row = "K_T";
  e.tag = {"T", GroupKind::action_on_abelian_surface, "[24,3]"};
  e.shape = parse_shape("E6+D4+A2^4+A1");
  e.labels = {"e_3", "e_2", "e_0", "e_4", "e_5", "e_1",
              "f_1", "f_0", "f_2", "f_3"};
  for (int h = 2; h <= 5; ++h) push_block_labels(e.labels, "a", 2, h);
  push_single_label(e.labels, "a", 1);
  // v = 4 d1 + 4 d2 + 4 d3 + d4 + d5 with the D4 and A1 halves doubling away
  RatVec v(19, Rat(0));
  add_e6_gen(v, 0, 4);
  add_halves(v, {6, 8}, 4);
  add_a_gen(v, 10, 2, 4);
  add_halves(v, {6, 9}, 4);
  add_a_gen(v, 12, 2, 4);
  add_halves(v, {18}, 4);
  add_a_gen(v, 14, 2, 1);
  add_a_gen(v, 16, 2, 1);
  e.glue = {reduced(v)};
  e.expected = {19, Int(3), factor_list({6, 6, 6})};
  return e;
}

CatalogEntry m_row(const std::string& group, const std::string& gap,
                   const std::string& shape,
                   const std::vector<std::vector<long>>& words, int index,
                   const std::vector<int>& disc) {
  CatalogEntry e;
  e.row = "M_" + group;
  e.tag = {group, GroupKind::abelian_on_k3, gap};
  e.shape = parse_shape(shape);
  bool pure_a1 = true;
  for (const auto& t : e.shape) pure_a1 = pure_a1 && t.n == 1;
  int j = 0;
  for (const auto& t : e.shape) {
    ++j;
    if (pure_a1)
      e.labels.push_back("M_" + std::to_string(j));
    else if (t.n == 1)
      push_single_label(e.labels, "M", j);
    else
      push_block_labels(e.labels, "M", t.n, j);
  }
  for (const auto& w : words) e.glue.push_back(word_vector(e.shape, w));
  e.expected = {shape_rank(e.shape), Int(index), factor_list(disc)};
  return e;
}

std::vector<long> product_word(int k, int length) {
  std::vector<long> w(length, 0);
  for (int i : product_set(k, length)) w[i] = 1;
  return w;
}

std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> out;
  out.push_back(k_z2());
  out.push_back(k_z3());
  out.push_back(k_z4());
  out.push_back(k_z6());
  out.push_back(k_d8());
  out.push_back(k_d8p());
  out.push_back(k_d12());
  out.push_back(k_t());

  out.push_back(m_row("Z2", "[2,1]", "A1^8", {{1, 1, 1, 1, 1, 1, 1, 1}}, 2,
                      {2, 2, 2, 2, 2, 2}));
  out.push_back(
      m_row("Z3", "[3,1]", "A2^6", {{1, 1, 1, 1, 1, 1}}, 3, {3, 3, 3, 3}));
  out.push_back(
      m_row("Z4", "[4,1]", "A3^4+A1^2", {{1, 1, 1, 1, 1, 1}}, 4, {2, 2, 4, 4}));
  out.push_back(m_row("Z5", "[5,1]", "A4^4", {{1, 2, 3, 4}}, 5, {5, 5}));
  out.push_back(
      m_row("Z6", "[6,2]", "A5^2+A2^2+A1^2", {{1, 1, 1, 1, 1, 1}}, 6, {6, 6}));
  out.push_back(m_row("Z7", "[7,1]", "A6^3", {{1, 2, 3}}, 7, {7}));
  out.push_back(m_row("Z8", "[8,1]", "A7^2+A3+A1", {{1, 3, 1, 1}}, 8, {2, 4}));
  out.push_back(m_row("Z2xZ2", "[4,2]", "A1^12",
                      {product_word(1, 12), product_word(2, 12)}, 4,
                      {2, 2, 2, 2, 2, 2, 2, 2}));
  out.push_back(m_row(
      "Z2xZ2xZ2", "[8,5]", "A1^14",
      {product_word(1, 14), product_word(2, 14), product_word(3, 14)}, 8,
      {2, 2, 2, 2, 2, 2, 2, 2}));
  out.push_back(m_row("Z2^4", "[16,14]", "A1^15",
                      {product_word(1, 15), product_word(2, 15),
                       product_word(3, 15), product_word(4, 15)},
                      16, {2, 2, 2, 2, 2, 2, 2}));
  out.push_back(m_row("Z2xZ4", "[8,2]", "A3^4+A1^4",
                      {{1, 1, 1, 1, 1, 1, 0, 0}, {2, 2, 0, 0, 1, 1, 1, 1}}, 8,
                      {2, 2, 4, 4}));
  out.push_back(m_row("Z2xZ6", "[12,5]", "A5^3+A1^3",
                      {{1, 1, 4, 1, 1, 0}, {0, 3, 3, 0, 1, 1}}, 12, {2, 6}));
  out.push_back(m_row("Z3xZ3", "[9,2]", "A2^8",
                      {{1, 1, 1, 1, 1, 1, 0, 0}, {1, 1, 2, 2, 0, 0, 1, 1}}, 9,
                      {3, 3, 3, 3}));
  out.push_back(m_row("Z4xZ4", "[16,2]", "A3^6",
                      {{1, 1, 1, 1, 2, 0}, {2, 0, 1, 3, 1, 1}}, 16, {4, 4}));
  for (auto& e : out)
    if (e.row == "M_Z2xZ4" || e.row == "M_Z2xZ6" || e.row == "M_Z3xZ3" ||
        e.row == "M_Z4xZ4")
      e.searched_glue = true;
  return out;
}

const CatalogEntry& family_entry(const std::string& group, GroupKind kind) {
  std::string prefix =
      kind == GroupKind::action_on_abelian_surface ? "K_" : "M_";
  const CatalogEntry* e = find_catalog_entry(prefix + group);
  if (e) return *e;
  std::string other = (prefix == "K_" ? "M_" : "K_") + group;
  if (find_catalog_entry(other)) {
    if (prefix == "K_")
      throw std::invalid_argument(
          "group " + group +
          " only acts in the K3 quotient family; use build_E or build_M");
    throw std::invalid_argument(
        "group " + group +
        " only acts in the Abelian surface family; use build_F or build_K");
  }
  throw std::invalid_argument("unknown group tag " + group);
}

std::string factor_string(const std::vector<Int>& f) {
  std::string out;
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) out += ",";
    out += f[i].get_str();
  }
  return out.empty() ? "1" : out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> rows = make_catalog();
  return rows;
}

const CatalogEntry* find_catalog_entry(const std::string& row) {
  for (const auto& e : catalog())
    if (e.row == row) return &e;
  return nullptr;
}

const CatalogEntry& catalog_entry(const std::string& row) {
  const CatalogEntry* e = find_catalog_entry(row);
  if (!e) throw std::out_of_range("no catalog row named " + row);
  return *e;
}

Lattice build_root_lattice(const CatalogEntry& e) {
  std::string prefix =
      e.tag.kind == GroupKind::action_on_abelian_surface ? "F_" : "E_";
  Lattice f = shape_lattice(e.shape, prefix + e.tag.name);
  return make_lattice(f.name, f.gram, e.labels);
}

Overlattice build_entry(const CatalogEntry& e) {
  return build_overlattice(build_root_lattice(e), e.glue, e.row);
}

Lattice build_F(const std::string& group) {
  return build_root_lattice(
      family_entry(group, GroupKind::action_on_abelian_surface));
}

Lattice build_E(const std::string& group) {
  return build_root_lattice(family_entry(group, GroupKind::abelian_on_k3));
}

Overlattice build_K(const std::string& group) {
  return build_entry(family_entry(group, GroupKind::action_on_abelian_surface));
}

Overlattice build_M(const std::string& group) {
  return build_entry(family_entry(group, GroupKind::abelian_on_k3));
}

RowReport verify_catalog_row(const CatalogEntry& e) {
  RowReport rep;
  rep.row = e.row;
  Lattice f = build_root_lattice(e);
  Overlattice o = build_entry(e);
  auto add_eq = [&rep](const std::string& claim, const std::string& want,
                       const std::string& got) {
    rep.checks.push_back({claim, want, got, want == got});
  };

  add_eq("rank", std::to_string(e.expected.rank),
         std::to_string(o.result.rank()));
  add_eq("glue index", e.expected.index.get_str(), o.index.get_str());
  DiscGroup disc(o.result);
  add_eq("disc invariant factors", factor_string(e.expected.disc),
         factor_string(disc.invariant_factors()));
  Int lhs = lattice_det(f);
  Int rhs = o.index * o.index * lattice_det(o.result);
  add_eq("det(base) = index^2 det(result)", lhs.get_str(), rhs.get_str());

  RootSet base_roots = enumerate_roots(f);
  RootSet over_roots = enumerate_roots(o.result);
  rep.root_count = base_roots.count();
  add_eq("base root count", shape_root_count(e.shape).get_str(),
         std::to_string(base_roots.count()));
  add_eq("overlattice root count", std::to_string(base_roots.count()),
         std::to_string(over_roots.count()));
  add_eq("root sets coincide", "yes",
         roots_coincide_with_base(o) ? "yes" : "no");

  int bound = 22 - e.expected.rank;
  rep.checks.push_back({"disc length within rank 22 embedding bound",
                        "<= " + std::to_string(bound),
                        std::to_string(disc.length()),
                        disc.length() <= bound});

  rep.ok = true;
  for (const auto& c : rep.checks) rep.ok = rep.ok && c.ok;
  return rep;
}

SearchCheck search_check_row(const CatalogEntry& e) {
  SearchCheck sc;
  sc.row = e.row;
  Lattice f = shape_lattice(e.shape);
  auto classes =
      minimal_root_preserving_overlattices(f, 22 - e.expected.rank);
  sc.classes_found = static_cast<int>(classes.size());
  Int max_index = 1;
  for (const auto& c : classes)
    if (c.index > max_index) max_index = c.index;
  for (const auto& c : classes) {
    DiscGroup d(c.result);
    if (c.index == e.expected.index &&
        d.invariant_factors() == e.expected.disc) {
      ++sc.classes_matching;
    } else {
      sc.other_classes.push_back("index " + c.index.get_str() + ", disc (" +
                                 factor_string(d.invariant_factors()) + ")");
    }
  }
  // The frozen glue subgroup is admissible and has the classes' maximal
  // order, so it is itself maximal and must coincide with the one matching
  // class up to isometry.
  sc.ok = sc.classes_matching == 1 && max_index == e.expected.index;
  return sc;
}

CorrectionD8p wendland_correction_D8p() {
  CorrectionD8p out;
  const CatalogEntry& e = catalog_entry("K_D8p");
  Lattice f = build_root_lattice(e);
  Overlattice k = build_entry(e);
  DiscGroup df(f);

  // d'_{2b-1} = (x1+x3)/2, d'_{2b} = (x1+x4)/2 on D4 block b; d'_9..d'_11
  // are the A1 halves
  auto dprime = [](int i) {
    RatVec v(19, Rat(0));
    if (i <= 8) {
      int off = 4 * ((i - 1) / 2);
      add_halves(v, {off, off + (i % 2 == 1 ? 2 : 3)});
    } else {
      add_halves(v, {16 + (i - 9)});
    }
    return v;
  };
  auto dsum = [&](const std::vector<int>& idx) {
    RatVec v(19, Rat(0));
    for (int i : idx) {
      RatVec w = dprime(i);
      for (int j = 0; j < 19; ++j) v[j] += w[j];
    }
    return reduced(v);
  };

  auto witness = [&](const std::string& name, const RatVec& v) {
    SupportWitness w;
    w.element = name;
    GlueSupport s = support_of_glue(f, v, 2);
    w.support = static_cast<int>(s.curves.size());
    w.q = df.q_value(v);
    w.admissible = w.q == 0 && (w.support == 8 || w.support == 16);
    return w;
  };

  const std::array<RatVec, 3> delta = {dsum({2, 3, 4, 5}), dsum({3, 4, 6, 7}),
                                       dsum({4, 5, 6, 7, 11})};
  out.offending = witness("d'_2+d'_3+d'_4+d'_5", delta[0]);

  // the deltas generate disc(K_D8p): every nonzero combination pairs
  // integrally with K but stays outside it, and none is isotropic
  bool generate = true;
  for (int mask = 1; mask < 8; ++mask) {
    RatVec v(19, Rat(0));
    std::string name;
    for (int b = 0; b < 3; ++b) {
      if (!(mask >> b & 1)) continue;
      if (!name.empty()) name += "+";
      name += "delta_" + std::to_string(b + 1);
      for (int j = 0; j < 19; ++j) v[j] += delta[b][j];
    }
    v = reduced(v);
    for (int i = 0; i < k.basis.rows(); ++i) {
      RatVec row(19);
      for (int j = 0; j < 19; ++j) row[j] = k.basis.at(i, j);
      if (inner_product(f.gram, v, row).get_den() != 1) generate = false;
    }
    bool inside = true;
    for (const Rat& c : to_overlattice_coords(k, v))
      if (c.get_den() != 1) inside = false;
    if (inside) generate = false;
    SupportWitness w = witness(name, v);
    if (w.q == 0) out.extension_exists = true;
    out.disc_classes.push_back(w);
  }

  auto word_of = [](const RatVec& v) {
    std::vector<int> w(19, 0);
    for (int i = 0; i < 19; ++i)
      if (v[i] != 0) w[i] = 1;
    return w;
  };
  DivisibilityCode corrected{2, 19, {}, default_weights(2)};
  for (const auto& g : e.glue) corrected.generators.push_back(word_of(g));
  out.corrected_glue_passes = check_code(corrected);
  DivisibilityCode published = corrected;
  published.generators.push_back(word_of(delta[0]));
  out.published_code_passes = check_code(published);

  out.ok = out.offending.support == 6 && !out.offending.admissible &&
           out.corrected_glue_passes && !out.published_code_passes &&
           !out.extension_exists && generate &&
           DiscGroup(k.result).order() == 8;
  return out;
}

CorrectionD12 wendland_correction_D12() {
  CorrectionD12 out;
  const CatalogEntry& e = catalog_entry("K_D12");
  Lattice f = build_root_lattice(e);
  Overlattice corrected = build_entry(e);
  RatVec two_v = e.glue[0];
  for (Rat& c : two_v) c *= 2;
  Overlattice published = build_overlattice(f, {reduced(two_v)}, "Pi_D12");

  DiscGroup dp(published.result), dc(corrected.result);
  out.published_disc = dp.invariant_factors();
  out.published_length = dp.length();
  out.corrected_length = dc.length();
  out.length_bound = 22 - f.rank();
  out.published_embeddable = embeddability_length_check(published.result);
  out.corrected_embeddable = embeddability_length_check(corrected.result);
  out.e8_embeddable = embeddability_length_check(shape_lattice(parse_shape("E8"), "E8"));
  out.ok = !out.published_embeddable && out.corrected_embeddable &&
           out.e8_embeddable && out.published_length > out.length_bound &&
           out.corrected_length <= out.length_bound;
  return out;
}

namespace {

EmbeddingCheck curve_embedding_check(const CatalogEntry& se,
                                     const CatalogEntry& ae,
                                     const std::vector<int>& image) {
  EmbeddingCheck ec;
  ec.sub = se.row;
  ec.ambient = ae.row;
  Overlattice sub = build_entry(se), amb = build_entry(ae);
  int rs = sub.result.rank(), ra = amb.result.rank();
  IntMat inc(rs, ra);
  ec.integral = true;
  for (int i = 0; i < rs; ++i) {
    RatVec in_f(ra, Rat(0));
    for (int j = 0; j < sub.base.rank(); ++j)
      in_f[image[j]] += sub.basis.at(i, j);
    RatVec in_amb = to_overlattice_coords(amb, in_f);
    for (int j = 0; j < ra; ++j) {
      if (in_amb[j].get_den() != 1) ec.integral = false;
      inc.at(i, j) = in_amb[j].get_num();
    }
  }
  if (ec.integral) {
    ec.isometric =
        inc * amb.result.gram * inc.transposed() == sub.result.gram;
    ec.primitive = is_primitive_sublattice(sub.result, amb.result, inc);
  }
  ec.ok = ec.integral && ec.isometric && ec.primitive;
  return ec;
}

}  // namespace

EmbeddingCheck embedding_M_Z3xZ3_in_K_Z3() {
  std::vector<int> image(16);
  for (int i = 0; i < 16; ++i) image[i] = i;
  return curve_embedding_check(catalog_entry("M_Z3xZ3"), catalog_entry("K_Z3"),
                               image);
}

EmbeddingCheck embedding_M_Z4_in_K_Z4() {
  // first two A3 blocks reversed, halves onto the fifth and sixth A1 curves
  std::vector<int> image = {2, 1, 0, 5, 4, 3, 6, 7, 8, 9, 10, 11, 16, 17};
  return curve_embedding_check(catalog_entry("M_Z4"), catalog_entry("K_Z4"),
                               image);
}

KummerCounterexample build_counterexample_H_Z2() {
  KummerCounterexample out;
  const CatalogEntry& e = catalog_entry("K_Z2");
  Lattice f = build_root_lattice(e);
  std::vector<RatVec> glue;
  for (int j = 0; j < 4; ++j)
    glue.push_back(support_half_word(16, {4 * j, 4 * j + 1, 4 * j + 2, 4 * j + 3}));
  glue.push_back(support_half_word(16, {0, 1, 4, 5, 8, 9, 12, 13}));
  glue.push_back(support_half_word(16, {0, 2, 4, 6, 8, 10, 12, 14}));
  out.h = build_overlattice(f, glue, "H");
  out.witness = glue[0];
  out.witness_norm = norm_of(f.gram, out.witness);
  out.roots_h = enumerate_roots(out.h.result).count();
  out.roots_base = enumerate_roots(f).count();
  out.det_h = lattice_det(out.h.result);
  out.det_kummer = lattice_det(build_entry(e).result);
  out.ok = out.h.index == 64 && out.witness_norm == -2 &&
           out.roots_h > out.roots_base && !roots_coincide_with_base(out.h) &&
           out.det_h == 16 && out.det_kummer == 64;
  return out;
}

}  // namespace klat
