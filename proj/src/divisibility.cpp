#include "klat/divisibility.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace klat {

namespace {

int word_weight(const std::vector<int>& w) {
  int c = 0;
  for (int x : w)
    if (x != 0) ++c;
  return c;
}

std::vector<int> word_add(const std::vector<int>& a, const std::vector<int>& b,
                          int p) {
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

std::vector<int> word_scale(const std::vector<int>& a, int c, int p) {
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] * c) % p;
  return r;
}

bool is_zero_word(const std::vector<int>& a) {
  for (int x : a)
    if (x != 0) return false;
  return true;
}

void validate_code(const DivisibilityCode& c) {
  if (c.field_order != 2 && c.field_order != 3)
    throw std::invalid_argument("divisibility code: field order must be 2 or 3");
  if (c.length <= 0)
    throw std::invalid_argument("divisibility code: length must be positive");
  for (const auto& g : c.generators) {
    if (static_cast<int>(g.size()) != c.length)
      throw std::invalid_argument("divisibility code: generator length mismatch");
    for (int x : g)
      if (x < 0 || x >= c.field_order)
        throw std::invalid_argument("divisibility code: entry out of field range");
  }
}

// All admissible single words: support size in weights, entries nonzero on
// the support. Lexicographic order.
std::vector<std::vector<int>> admissible_words(int p, int n,
                                               const std::set<int>& weights) {
  std::vector<std::vector<int>> out;
  std::vector<int> supp;
  std::function<void(int)> fill_signs;  // assigns nonzero values on supp
  std::vector<int> word(n, 0);
  fill_signs = [&](int k) {
    if (k == static_cast<int>(supp.size())) {
      out.push_back(word);
      return;
    }
    for (int v = 1; v < p; ++v) {
      word[supp[k]] = v;
      fill_signs(k + 1);
      word[supp[k]] = 0;
    }
  };
  std::function<void(int, int)> choose = [&](int start, int need) {
    if (need == 0) {
      fill_signs(0);
      return;
    }
    for (int i = start; i + need <= n; ++i) {
      supp.push_back(i);
      choose(i + 1, need - 1);
      supp.pop_back();
    }
  };
  for (int w : weights)
    if (w <= n) choose(0, w);
  std::sort(out.begin(), out.end());
  return out;
}

// Invariant of a word set under monomial equivalence: sorted weight list
// plus, per coordinate, the sorted weights of words supported there.
std::string code_invariant(const std::vector<std::vector<int>>& words, int n) {
  std::vector<int> wts;
  for (const auto& w : words) wts.push_back(word_weight(w));
  std::sort(wts.begin(), wts.end());
  std::vector<std::string> cols;
  for (int j = 0; j < n; ++j) {
    std::vector<int> sig;
    for (const auto& w : words)
      if (w[j] != 0) sig.push_back(word_weight(w));
    std::sort(sig.begin(), sig.end());
    std::ostringstream s;
    for (int x : sig) s << x << ',';
    cols.push_back(s.str());
  }
  std::sort(cols.begin(), cols.end());
  std::ostringstream key;
  for (int x : wts) key << x << ',';
  key << '|';
  for (const auto& c : cols) key << c << ';';
  return key.str();
}

// Basis of the span of a nonzero word list, by Gaussian elimination.
std::vector<std::vector<int>> span_basis(std::vector<std::vector<int>> words,
                                         int p, int n) {
  std::vector<std::vector<int>> basis;
  int col = 0;
  size_t row = 0;
  while (col < n && row < words.size()) {
    size_t piv = row;
    while (piv < words.size() && words[piv][col] == 0) ++piv;
    if (piv == words.size()) {
      ++col;
      continue;
    }
    std::swap(words[row], words[piv]);
    // scale pivot to 1
    int inv = (words[row][col] == 1) ? 1 : (p == 3 ? 2 : 1);
    words[row] = word_scale(words[row], inv, p);
    for (size_t i = 0; i < words.size(); ++i) {
      if (i == row || words[i][col] == 0) continue;
      int c = p - words[i][col];
      words[i] = word_add(words[i], word_scale(words[row], c, p), p);
    }
    basis.push_back(words[row]);
    ++row;
    ++col;
  }
  return basis;
}

struct EquivSearch {
  int p = 2;
  int n = 0;
  std::vector<std::vector<int>> wa, wb;  // sorted nonzero word lists
  std::set<std::vector<int>> wb_set;
  std::vector<std::vector<int>> basis;  // of span(wa)
  std::vector<std::vector<int>> span_a, span_b;
  std::set<std::vector<int>> span_b_set;

  bool columns_match() const {
    std::vector<std::vector<int>> ca, cb;
    for (int j = 0; j < n; ++j) {
      std::vector<int> a, b;
      for (const auto& w : span_a) a.push_back(w[j]);
      for (const auto& w : span_b) b.push_back(w[j]);
      if (p == 3) {
        // sign normalization: a column and its negation are interchangeable
        std::vector<int> a2 = a, b2 = b;
        for (int& x : a2) x = (2 * x) % 3;
        for (int& x : b2) x = (2 * x) % 3;
        if (a2 < a) a = a2;
        if (b2 < b) b = b2;
      }
      ca.push_back(a);
      cb.push_back(b);
    }
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
  }

  bool assign(size_t i) {
    if (i == basis.size()) return columns_match();
    const auto& g = basis[i];
    int gw = word_weight(g);
    for (const auto& h : wb) {
      if (word_weight(h) != gw) continue;
      if (span_b_set.count(h)) continue;
      bool ok = true;
      size_t old = span_a.size();
      for (size_t k = 0; k < old && ok; ++k) {
        for (int c = 1; c < p && ok; ++c) {
          auto u = word_add(span_a[k], word_scale(g, c, p), p);
          auto v = word_add(span_b[k], word_scale(h, c, p), p);
          if (word_weight(u) != word_weight(v)) ok = false;
        }
      }
      if (!ok) continue;
      // extend the parallel spans
      for (int c = 1; c < p; ++c) {
        span_a.push_back(word_scale(g, c, p));
        span_b.push_back(word_scale(h, c, p));
        span_b_set.insert(span_b.back());
        for (size_t k = 0; k < old; ++k) {
          span_a.push_back(word_add(span_a[k], word_scale(g, c, p), p));
          span_b.push_back(word_add(span_b[k], word_scale(h, c, p), p));
          span_b_set.insert(span_b.back());
        }
      }
      if (assign(i + 1)) return true;
      while (span_a.size() > old) {
        span_b_set.erase(span_b.back());
        span_a.pop_back();
        span_b.pop_back();
      }
    }
    return false;
  }
};

// Internal class record during classification.
struct CodeClass {
  std::vector<std::vector<int>> gens;
  std::vector<std::vector<int>> words;  // nonzero span, sorted
};

std::vector<std::vector<int>> close_span(
    const std::vector<std::vector<int>>& gens, int p, int n) {
  std::set<std::vector<int>> seen;
  seen.insert(std::vector<int>(n, 0));
  for (const auto& g : gens) {
    auto snapshot = seen;
    for (int c = 1; c < p; ++c) {
      auto cg = word_scale(g, c, p);
      for (const auto& u : snapshot) seen.insert(word_add(u, cg, p));
    }
  }
  std::vector<std::vector<int>> out;
  for (const auto& w : seen)
    if (!is_zero_word(w)) out.push_back(w);
  return out;
}

bool equivalent_words(const std::vector<std::vector<int>>& a,
                      const std::vector<std::vector<int>>& b, int p, int n) {
  if (a.size() != b.size()) return false;
  std::vector<int> wa, wb;
  for (const auto& w : a) wa.push_back(word_weight(w));
  for (const auto& w : b) wb.push_back(word_weight(w));
  std::sort(wa.begin(), wa.end());
  std::sort(wb.begin(), wb.end());
  if (wa != wb) return false;
  EquivSearch s;
  s.p = p;
  s.n = n;
  s.wa = a;
  s.wb = b;
  s.wb_set.insert(b.begin(), b.end());
  s.basis = span_basis(a, p, n);
  return s.assign(0);
}

}  // namespace

std::set<int> default_weights(int field_order) {
  if (field_order == 2) return {8, 16};
  if (field_order == 3) return {6, 9};
  throw std::invalid_argument("default_weights: field order must be 2 or 3");
}

std::vector<std::vector<int>> code_words(const DivisibilityCode& c) {
  validate_code(c);
  return close_span(c.generators, c.field_order, c.length);
}

bool check_code(const DivisibilityCode& c) {
  for (const auto& w : code_words(c))
    if (!c.allowed_weights.count(word_weight(w))) return false;
  return true;
}

bool codes_equivalent(const DivisibilityCode& a, const DivisibilityCode& b) {
  validate_code(a);
  validate_code(b);
  if (a.field_order != b.field_order || a.length != b.length) return false;
  return equivalent_words(code_words(a), code_words(b), a.field_order,
                          a.length);
}

CodeClassification classify_divisibility_codes(int field_order, int length,
                                               const std::set<int>& weights) {
  if (field_order != 2 && field_order != 3)
    throw std::invalid_argument("classify: field order must be 2 or 3");
  if (length <= 0 || length > 24)
    throw std::invalid_argument("classify: length out of supported range");
  const int p = field_order;
  const auto cand = admissible_words(p, length, weights);

  CodeClassification res;
  std::vector<CodeClass> current;  // classes at the current dimension
  {
    // dimension 1, deduplicated
    std::map<std::string, std::vector<size_t>> buckets;
    std::vector<CodeClass> kept;
    for (const auto& w : cand) {
      // one representative per scalar line
      if (p == 3 && word_scale(w, 2, p) < w) continue;
      CodeClass c;
      c.gens = {w};
      c.words = close_span(c.gens, p, length);
      auto key = code_invariant(c.words, length);
      bool dup = false;
      for (size_t idx : buckets[key])
        if (equivalent_words(kept[idx].words, c.words, p, length)) {
          dup = true;
          break;
        }
      if (!dup) {
        buckets[key].push_back(kept.size());
        kept.push_back(std::move(c));
      }
    }
    current = std::move(kept);
  }

  int dim = current.empty() ? 0 : 1;
  res.classes_examined += static_cast<long long>(current.size());
  std::vector<CodeClass> best = current;

  while (!current.empty()) {
    std::map<std::string, std::vector<size_t>> buckets;
    std::vector<CodeClass> next;
    for (const auto& cls : current) {
      std::set<std::vector<int>> in_code(cls.words.begin(), cls.words.end());
      for (const auto& w : cand) {
        if (in_code.count(w)) continue;
        // single pass: weight-closure of the new coset classes, and
        // lexicographic minimality of w among them (one rep per subgroup)
        bool ok = true, minimal = true;
        for (int c = 1; c < p && ok; ++c) {
          auto cw = word_scale(w, c, p);
          if (cw < w) minimal = false;
          if (!weights.count(word_weight(cw))) ok = false;
          for (const auto& u : cls.words) {
            auto s = word_add(cw, u, p);
            if (s < w) minimal = false;
            if (!weights.count(word_weight(s))) {
              ok = false;
              break;
            }
          }
        }
        if (!ok || !minimal) continue;
        CodeClass c2;
        c2.gens = cls.gens;
        c2.gens.push_back(w);
        c2.words = close_span(c2.gens, p, length);
        auto key = code_invariant(c2.words, length);
        bool dup = false;
        for (size_t idx : buckets[key])
          if (equivalent_words(next[idx].words, c2.words, p, length)) {
            dup = true;
            break;
          }
        if (!dup) {
          buckets[key].push_back(next.size());
          next.push_back(std::move(c2));
        }
      }
    }
    if (next.empty()) break;
    ++dim;
    res.classes_examined += static_cast<long long>(next.size());
    best = next;
    current = std::move(next);
  }

  res.max_dimension = dim;
  for (const auto& cls : best) {
    DivisibilityCode c;
    c.field_order = p;
    c.length = length;
    c.generators = cls.gens;
    c.allowed_weights = weights;
    res.representatives.push_back(std::move(c));
  }
  if (dim == 0) {
    DivisibilityCode c;
    c.field_order = p;
    c.length = length;
    c.allowed_weights = weights;
    res.representatives = {c};
  }
  return res;
}

std::pair<int, DivisibilityCode> max_divisibility_dimension(int field_order,
                                                            int length) {
  auto cls = classify_divisibility_codes(field_order, length,
                                         default_weights(field_order));
  return {cls.max_dimension, cls.representatives.front()};
}

bool pairwise_intersection_check(const DivisibilityCode& c) {
  validate_code(c);
  if (c.field_order != 2)
    throw std::invalid_argument("pairwise intersection check: field 2 only");
  auto words = code_words(c);
  for (size_t i = 0; i < words.size(); ++i) {
    if (word_weight(words[i]) != 8) continue;
    for (size_t j = i + 1; j < words.size(); ++j) {
      if (word_weight(words[j]) != 8) continue;
      int inter = 0;
      for (int k = 0; k < c.length; ++k)
        if (words[i][k] != 0 && words[j][k] != 0) ++inter;
      if (inter != 4 && !(inter == 0 && c.length >= 16)) return false;
    }
  }
  return true;
}

SetExtensionCertificate divisible_set_extension_certificate(int length) {
  if (length < 8 || length > 31)
    throw std::invalid_argument("set extension certificate: length out of range");
  const std::vector<std::vector<int>> fixed = {
      {0, 1, 2, 3, 4, 5, 6, 7},
      {0, 1, 2, 3, 8, 9, 10, 11},
      {0, 1, 4, 5, 8, 9, 12, 13},
      {0, 2, 4, 6, 8, 10, 12, 14},
  };
  SetExtensionCertificate cert;
  cert.length = length;
  std::vector<uint32_t> base_masks;
  for (const auto& s : fixed) {
    if (s.back() >= length) break;
    cert.base_sets.push_back(s);
    uint32_t m = 0;
    for (int i : s) m |= (1u << i);
    base_masks.push_back(m);
  }
  // span of the base sets
  std::set<uint32_t> span = {0u};
  for (uint32_t m : base_masks) {
    auto snap = span;
    for (uint32_t u : snap) span.insert(u ^ m);
  }
  for (uint32_t u : span) {
    int w = __builtin_popcount(u);
    if (u != 0 && w != 8 && w != 16)
      throw std::logic_error("set extension certificate: base sets invalid");
  }
  // enumerate all 8-subsets of the coordinates
  std::vector<int> idx;
  std::function<void(int, int, uint32_t)> choose = [&](int start, int need,
                                                       uint32_t mask) {
    if (need == 0) {
      ++cert.words_examined;
      if (span.count(mask)) return;  // not a new set
      for (uint32_t u : span) {
        int w = __builtin_popcount(u ^ mask);
        if (w != 8 && w != 16) return;
      }
      std::vector<int> s;
      for (int i = 0; i < length; ++i)
        if (mask & (1u << i)) s.push_back(i);
      cert.extensions.push_back(std::move(s));
      return;
    }
    for (int i = start; i + need <= length; ++i)
      choose(i + 1, need - 1, mask | (1u << i));
  };
  choose(0, 8, 0);
  return cert;
}

GlueSupport support_of_glue(const Lattice& f, const RatVec& v, int prime) {
  if (prime != 2 && prime != 3)
    throw std::invalid_argument("support_of_glue: prime must be 2 or 3");
  const int n = f.rank();
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("support_of_glue: vector size mismatch");
  // dual membership: Gram * v must be integral
  for (int i = 0; i < n; ++i) {
    Rat s(0);
    for (int j = 0; j < n; ++j) s += Rat(f.gram.at(i, j)) * v[j];
    if (s.get_den() != 1)
      throw std::invalid_argument("support_of_glue: vector not in the dual");
  }
  // reduce coordinates to [0,1) and check the order divides the prime
  std::vector<int> numer(n, 0);  // coordinate as numer/prime
  for (int i = 0; i < n; ++i) {
    Rat x = v[i];
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    x -= Rat(q);
    // x in [0,1); must be k/prime
    Rat scaled = x * prime;
    if (scaled.get_den() != 1)
      throw std::invalid_argument(
          "support_of_glue: class order does not divide the prime");
    numer[i] = static_cast<int>(scaled.get_num().get_si());
  }
  GlueSupport out;
  std::vector<int> supp;
  for (int i = 0; i < n; ++i)
    if (numer[i] != 0) supp.push_back(i);
  if (prime == 2) {
    out.curves = supp;
    for (size_t a = 0; a < supp.size(); ++a)
      for (size_t b = a + 1; b < supp.size(); ++b)
        if (f.gram.at(supp[a], supp[b]) != 0) out.clean = false;
    return out;
  }
  // prime 3: cluster the support under Gram adjacency
  std::vector<int> comp(supp.size());
  for (size_t i = 0; i < supp.size(); ++i) comp[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (size_t a = 0; a < supp.size(); ++a)
    for (size_t b = a + 1; b < supp.size(); ++b)
      if (f.gram.at(supp[a], supp[b]) != 0)
        comp[find(static_cast<int>(a))] = find(static_cast<int>(b));
  std::map<int, std::vector<int>> clusters;
  for (size_t i = 0; i < supp.size(); ++i)
    clusters[find(static_cast<int>(i))].push_back(supp[i]);
  for (const auto& [root, members] : clusters) {
    (void)root;
    if (members.size() == 2)
      out.pairs.emplace_back(members[0], members[1]);
    else
      out.clean = false;
  }
  return out;
}

}  // namespace klat
