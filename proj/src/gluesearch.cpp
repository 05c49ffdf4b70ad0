#include "klat/gluesearch.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "klat/divisibility.hpp"
#include "klat/roots.hpp"

namespace klat {

namespace {

bool small_prime(int m) {
  return m == 2 || m == 3 || m == 5 || m == 7 || m == 11 || m == 13 ||
         m == 17 || m == 19 || m == 23;
}

// Local index permutations generating the diagram automorphisms.
std::vector<std::vector<int>> diagram_auto_gens(const AdeType& t) {
  const int r = t.n;
  std::vector<std::vector<int>> out;
  auto identity = [r] {
    std::vector<int> p(r);
    for (int i = 0; i < r; ++i) p[i] = i;
    return p;
  };
  if (t.family == AdeFamily::A && r >= 2) {
    auto p = identity();
    std::reverse(p.begin(), p.end());
    out.push_back(p);
  } else if (t.family == AdeFamily::D && r == 4) {
    // the three outer curves x1, x3, x4 are interchangeable
    auto p = identity();
    std::swap(p[0], p[2]);
    out.push_back(p);
    p = identity();
    std::swap(p[0], p[3]);
    out.push_back(p);
  } else if (t.family == AdeFamily::D && r >= 5) {
    auto p = identity();
    std::swap(p[r - 2], p[r - 1]);
    out.push_back(p);
  } else if (t.family == AdeFamily::E && r == 6) {
    out.push_back({4, 3, 2, 1, 0, 5});
  }
  return out;
}

// One ADE component of the shape, with its discriminant tabulated on the
// encoded values 0 .. order-1 (mixed radix over the invariant factors).
struct Summand {
  AdeType type;
  int type_id = 0;          // index into the distinct-type list
  std::vector<int> curves;  // global basis indices
  int order = 1;
  std::vector<RatVec> rep;              // local dual coordinates in [0,1)
  std::vector<Rat> q;                   // q mod 2Z
  std::vector<int> ord;                 // element order
  std::vector<int> add;                 // order x order addition table
  std::vector<std::vector<int>> sym;    // diagram-automorphism value maps
  std::vector<int> orbit;               // min over sym
  std::vector<std::vector<Rat>> norms;  // coset Q-norms in (0,2], {0,2} at 0
  std::vector<int> sup2;                // curve support, order | 2 values
  std::vector<char> clean2;
  std::vector<int> sup3;                // A2-pair support, order | 3 values
  std::vector<char> clean3;
};

Summand build_summand(const AdeType& type, std::vector<int> curves) {
  Summand s;
  s.type = type;
  s.curves = std::move(curves);
  Lattice local = ade_gram(type);
  DiscGroup disc(local);
  const auto& factors = disc.invariant_factors();
  const int m = static_cast<int>(factors.size());
  std::vector<long> f(m);
  s.order = 1;
  for (int i = 0; i < m; ++i) {
    f[i] = factors[i].get_si();
    s.order *= static_cast<int>(f[i]);
  }
  std::vector<long> stride(m, 1);
  for (int i = m - 2; i >= 0; --i) stride[i] = stride[i + 1] * f[i + 1];
  auto exps = [&](int v) {
    std::vector<Int> e(m);
    for (int i = 0; i < m; ++i) e[i] = Int((v / stride[i]) % f[i]);
    return e;
  };
  auto value_of = [&](const std::vector<Int>& e) {
    long v = 0;
    for (int i = 0; i < m; ++i) v += e[i].get_si() * stride[i];
    return static_cast<int>(v);
  };

  for (int v = 0; v < s.order; ++v) {
    auto e = exps(v);
    RatVec x = disc.element(e);
    s.rep.push_back(x);
    s.q.push_back(disc.q_value(x));
    long o = 1;
    for (int i = 0; i < m; ++i)
      o = std::lcm(o, f[i] / std::gcd(f[i], e[i].get_si()));
    s.ord.push_back(static_cast<int>(o));
    if (v == 0)
      s.norms.push_back({Rat(0), Rat(2)});
    else {
      std::set<Rat> vals;
      for (const auto& [vec, norm] : enumerate_quadratic(local.gram, x, Rat(2)))
        vals.insert(norm);
      s.norms.emplace_back(vals.begin(), vals.end());
    }
    if (2 % s.ord.back() == 0) {
      auto sup = support_of_glue(local, x, 2);
      s.sup2.push_back(static_cast<int>(sup.curves.size()));
      s.clean2.push_back(sup.clean ? 1 : 0);
    } else {
      s.sup2.push_back(-1);
      s.clean2.push_back(0);
    }
    if (3 % s.ord.back() == 0) {
      auto sup = support_of_glue(local, x, 3);
      s.sup3.push_back(static_cast<int>(sup.pairs.size()));
      s.clean3.push_back(sup.clean ? 1 : 0);
    } else {
      s.sup3.push_back(-1);
      s.clean3.push_back(0);
    }
  }

  s.add.assign(static_cast<size_t>(s.order) * s.order, 0);
  for (int u = 0; u < s.order; ++u)
    for (int v = 0; v < s.order; ++v) {
      auto eu = exps(u), ev = exps(v);
      std::vector<Int> e(m);
      for (int i = 0; i < m; ++i) e[i] = (eu[i] + ev[i]) % Int(f[i]);
      s.add[static_cast<size_t>(u) * s.order + v] = value_of(e);
    }

  // value maps induced by the diagram automorphisms, closed under composition
  std::set<std::vector<int>> group;
  {
    std::vector<int> id(s.order);
    for (int v = 0; v < s.order; ++v) id[v] = v;
    group.insert(id);
  }
  const int r = type.n;
  for (const auto& p : diagram_auto_gens(type)) {
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        if (local.gram.at(p[a], p[b]) != local.gram.at(a, b))
          throw std::logic_error("diagram automorphism does not fix the gram");
    std::vector<int> vm(s.order);
    for (int v = 0; v < s.order; ++v) {
      RatVec w(r, Rat(0));
      for (int i = 0; i < r; ++i) w[p[i]] = s.rep[v][i];
      vm[v] = value_of(disc.exponents_of(w));
    }
    group.insert(vm);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> cur(group.begin(), group.end());
    for (const auto& a : cur)
      for (const auto& b : cur) {
        std::vector<int> c(s.order);
        for (int v = 0; v < s.order; ++v) c[v] = a[b[v]];
        if (group.insert(c).second) grew = true;
      }
  }
  s.sym.assign(group.begin(), group.end());
  s.orbit.resize(s.order);
  for (int v = 0; v < s.order; ++v) {
    int best = v;
    for (const auto& g : s.sym) best = std::min(best, g[v]);
    s.orbit[v] = best;
  }
  return s;
}

struct Ctx {
  const Lattice* f = nullptr;
  std::vector<Summand> sum;
  std::vector<AdeType> types;  // distinct types, canonical order
  long long universe = 1;
  std::vector<long long> stride;
  std::vector<std::vector<int>> tup;  // decoded tuples per universe index
  int scale = 1;
  std::vector<std::vector<std::vector<int>>> norm_tab;  // scaled Q-norms
  std::vector<uint8_t> adm;
  std::vector<int> inv;   // interned per-element invariant id
  std::vector<int> ordu;  // element order

  long long encode(const std::vector<int>& t) const {
    long long u = 0;
    for (size_t i = 0; i < t.size(); ++i) u += t[i] * stride[i];
    return u;
  }
  std::vector<int> addt(const std::vector<int>& a,
                        const std::vector<int>& b) const {
    std::vector<int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
      r[i] = sum[i].add[static_cast<size_t>(a[i]) * sum[i].order + b[i]];
    return r;
  }
  long long add_idx(long long a, long long b) const {
    const auto& ta = tup[a];
    const auto& tb = tup[b];
    long long u = 0;
    for (size_t i = 0; i < ta.size(); ++i)
      u += sum[i].add[static_cast<size_t>(ta[i]) * sum[i].order + tb[i]] *
           stride[i];
    return u;
  }
};

std::vector<Summand> decompose_shape(const Lattice& f) {
  const int n = f.rank();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (f.gram.at(i, j) != 0) parent[find(i)] = find(j);
  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);

  std::vector<std::vector<int>> ordered;
  for (auto& [root, idx] : comps) {
    (void)root;
    std::sort(idx.begin(), idx.end());
    ordered.push_back(idx);
  }
  std::sort(ordered.begin(), ordered.end());

  std::vector<Summand> out;
  for (const auto& idx : ordered) {
    const int r = static_cast<int>(idx.size());
    std::vector<AdeType> cands = {{AdeFamily::A, r}};
    if (r >= 4) cands.push_back({AdeFamily::D, r});
    if (r >= 6 && r <= 8) cands.push_back({AdeFamily::E, r});
    bool matched = false;
    for (const auto& t : cands) {
      Lattice g = ade_gram(t);
      bool same = true;
      for (int a = 0; a < r && same; ++a)
        for (int b = 0; b < r && same; ++b)
          if (g.gram.at(a, b) != f.gram.at(idx[a], idx[b])) same = false;
      if (same) {
        out.push_back(build_summand(t, idx));
        matched = true;
        break;
      }
    }
    if (!matched)
      throw std::invalid_argument(
          "glue search: lattice is not an ADE sum in standard basis");
  }
  return out;
}

Ctx build_ctx(const Lattice& f, const DivisibilityConstraints& cons) {
  Ctx ctx;
  ctx.f = &f;
  ctx.sum = decompose_shape(f);
  const int ns = static_cast<int>(ctx.sum.size());

  for (const auto& s : ctx.sum)
    if (std::find(ctx.types.begin(), ctx.types.end(), s.type) ==
        ctx.types.end())
      ctx.types.push_back(s.type);
  std::sort(ctx.types.begin(), ctx.types.end());
  for (auto& s : ctx.sum)
    s.type_id = static_cast<int>(
        std::find(ctx.types.begin(), ctx.types.end(), s.type) -
        ctx.types.begin());

  ctx.universe = 1;
  for (const auto& s : ctx.sum) {
    ctx.universe *= s.order;
    if (ctx.universe > (1LL << 17))
      throw std::invalid_argument(
          "glue search: discriminant group too large to enumerate");
  }
  ctx.stride.assign(ns, 1);
  for (int i = ns - 2; i >= 0; --i)
    ctx.stride[i] = ctx.stride[i + 1] * ctx.sum[i + 1].order;

  ctx.tup.resize(ctx.universe);
  for (long long u = 0; u < ctx.universe; ++u) {
    std::vector<int> t(ns);
    for (int i = 0; i < ns; ++i)
      t[i] = static_cast<int>((u / ctx.stride[i]) % ctx.sum[i].order);
    ctx.tup[u] = std::move(t);
  }

  // common denominator for the coset norm tables
  long sc = 1;
  for (const auto& s : ctx.sum)
    for (const auto& ns_ : s.norms)
      for (const auto& v : ns_) sc = std::lcm(sc, v.get_den().get_si());
  ctx.scale = static_cast<int>(sc);
  ctx.norm_tab.resize(ns);
  for (int i = 0; i < ns; ++i) {
    ctx.norm_tab[i].resize(ctx.sum[i].order);
    for (int v = 0; v < ctx.sum[i].order; ++v)
      for (const auto& x : ctx.sum[i].norms[v]) {
        Rat scaled = x * ctx.scale;
        ctx.norm_tab[i][v].push_back(
            static_cast<int>(scaled.get_num().get_si()));
      }
  }

  // per-element admissibility and invariant
  const int target = 2 * ctx.scale;
  ctx.adm.assign(ctx.universe, 0);
  ctx.inv.assign(ctx.universe, 0);
  ctx.ordu.assign(ctx.universe, 1);
  std::map<std::string, int> intern;
  std::vector<char> dp(target + 1), dp2(target + 1);
  for (long long u = 0; u < ctx.universe; ++u) {
    const auto& t = ctx.tup[u];
    Rat qs(0);
    long o = 1;
    for (int i = 0; i < ns; ++i) {
      qs += ctx.sum[i].q[t[i]];
      o = std::lcm(o, static_cast<long>(ctx.sum[i].ord[t[i]]));
    }
    // reduce q into [0,2)
    mpz_class fl;
    Rat half = qs / 2;
    mpz_fdiv_q(fl.get_mpz_t(), half.get_num().get_mpz_t(),
               half.get_den().get_mpz_t());
    qs -= Rat(fl) * 2;
    ctx.ordu[u] = static_cast<int>(o);

    std::ostringstream key;
    key << o << '|' << qs.get_num() << '/' << qs.get_den() << '|';
    std::vector<std::pair<int, int>> prof;
    for (int i = 0; i < ns; ++i)
      prof.emplace_back(ctx.sum[i].type_id, ctx.sum[i].orbit[t[i]]);
    std::sort(prof.begin(), prof.end());
    for (const auto& [a, b] : prof) key << a << ':' << b << ',';
    auto it = intern.try_emplace(key.str(), static_cast<int>(intern.size()));
    ctx.inv[u] = it.first->second;

    if (u == 0) {
      ctx.adm[0] = 1;
      continue;
    }
    if (qs != 0) continue;
    if (o == 2) {
      int total = 0;
      bool clean = true;
      for (int i = 0; i < ns; ++i) {
        total += ctx.sum[i].sup2[t[i]];
        clean = clean && ctx.sum[i].clean2[t[i]];
      }
      if (clean && !cons.order2_supports.count(total)) continue;
    }
    if (o == 3) {
      int total = 0;
      bool clean = true;
      for (int i = 0; i < ns; ++i) {
        total += ctx.sum[i].sup3[t[i]];
        clean = clean && ctx.sum[i].clean3[t[i]];
      }
      if (clean && !cons.order3_supports.count(total)) continue;
    }
    // no new roots: no combination of per-summand coset norms sums to 2
    std::fill(dp.begin(), dp.end(), 0);
    dp[0] = 1;
    for (int i = 0; i < ns; ++i) {
      std::fill(dp2.begin(), dp2.end(), 0);
      for (int v = 0; v <= target; ++v)
        if (dp[v])
          for (int x : ctx.norm_tab[i][t[i]])
            if (v + x <= target) dp2[v + x] = 1;
      dp.swap(dp2);
    }
    if (dp[target]) continue;
    ctx.adm[u] = 1;
  }
  return ctx;
}

struct Cls {
  std::vector<long long> gens;
  std::vector<long long> elems;  // sorted, includes 0
  bool ext = false;
};

std::string class_key(const Ctx& ctx, const std::vector<long long>& elems) {
  std::vector<int> invs;
  for (long long e : elems) invs.push_back(ctx.inv[e]);
  std::sort(invs.begin(), invs.end());
  std::ostringstream key;
  for (int i : invs) key << i << ',';
  key << '|';
  std::vector<std::pair<int, std::string>> cols;
  for (size_t j = 0; j < ctx.sum.size(); ++j) {
    std::vector<std::pair<int, int>> sig;
    for (long long e : elems)
      sig.emplace_back(ctx.inv[e], ctx.sum[j].orbit[ctx.tup[e][j]]);
    std::sort(sig.begin(), sig.end());
    std::ostringstream cs;
    for (const auto& [a, b] : sig) cs << a << ':' << b << ',';
    cols.emplace_back(ctx.sum[j].type_id, cs.str());
  }
  std::sort(cols.begin(), cols.end());
  for (const auto& [t, c] : cols) key << t << '(' << c << ')';
  return key.str();
}

struct GlueEquiv {
  const Ctx* ctx = nullptr;
  const Cls* a = nullptr;
  const Cls* b = nullptr;
  std::vector<long long> span_a, span_b;  // parallel, start {0}
  std::set<long long> set_a, set_b;

  int min_multiple(long long g, const std::set<long long>& span) const {
    long long cur = g;
    int m = 1;
    while (!span.count(cur)) {
      cur = ctx->add_idx(cur, g);
      ++m;
      if (m > 64) throw std::logic_error("glue element order out of range");
    }
    return m;
  }

  bool columns_match() const {
    std::vector<std::pair<int, std::vector<int>>> ca, cb;
    for (size_t j = 0; j < ctx->sum.size(); ++j) {
      std::vector<int> col_a, col_b;
      for (long long e : span_a) col_a.push_back(ctx->tup[e][j]);
      for (long long e : span_b) col_b.push_back(ctx->tup[e][j]);
      auto normalize = [&](std::vector<int> col) {
        std::vector<int> best = col;
        for (const auto& g : ctx->sum[j].sym) {
          std::vector<int> c(col.size());
          for (size_t i = 0; i < col.size(); ++i) c[i] = g[col[i]];
          best = std::min(best, c);
        }
        return best;
      };
      ca.emplace_back(ctx->sum[j].type_id, normalize(col_a));
      cb.emplace_back(ctx->sum[j].type_id, normalize(col_b));
    }
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
  }

  bool assign(size_t gi) {
    if (gi == a->gens.size())
      return span_a.size() == a->elems.size() && columns_match();
    const long long g = a->gens[gi];
    if (set_a.count(g)) return assign(gi + 1);  // redundant generator
    const int m = min_multiple(g, set_a);
    // position of m*g in span_a
    long long mg = g;
    for (int k = 1; k < m; ++k) mg = ctx->add_idx(mg, g);
    const size_t pa = static_cast<size_t>(
        std::find(span_a.begin(), span_a.end(), mg) - span_a.begin());

    for (long long h : b->elems) {
      if (ctx->inv[h] != ctx->inv[g] || set_b.count(h)) continue;
      if (min_multiple(h, set_b) != m) continue;
      long long mh = h;
      for (int k = 1; k < m; ++k) mh = ctx->add_idx(mh, h);
      if (span_b[pa] != mh) continue;
      // invariant compatibility of every new pair
      const size_t old = span_a.size();
      bool ok = true;
      long long kg = g, kh = h;
      for (int k = 1; k < m && ok; ++k) {
        for (size_t i = 0; i < old && ok; ++i) {
          long long na = ctx->add_idx(kg, span_a[i]);
          long long nb = ctx->add_idx(kh, span_b[i]);
          if (ctx->inv[na] != ctx->inv[nb]) ok = false;
        }
        if (k + 1 < m) {
          kg = ctx->add_idx(kg, g);
          kh = ctx->add_idx(kh, h);
        }
      }
      if (!ok) continue;
      kg = g;
      kh = h;
      for (int k = 1; k < m; ++k) {
        for (size_t i = 0; i < old; ++i) {
          long long na = ctx->add_idx(kg, span_a[i]);
          long long nb = ctx->add_idx(kh, span_b[i]);
          span_a.push_back(na);
          span_b.push_back(nb);
          set_a.insert(na);
          set_b.insert(nb);
        }
        if (k + 1 < m) {
          kg = ctx->add_idx(kg, g);
          kh = ctx->add_idx(kh, h);
        }
      }
      if (assign(gi + 1)) return true;
      while (span_a.size() > old) {
        set_a.erase(span_a.back());
        set_b.erase(span_b.back());
        span_a.pop_back();
        span_b.pop_back();
      }
    }
    return false;
  }
};

bool classes_equivalent(const Ctx& ctx, const Cls& a, const Cls& b) {
  if (a.elems.size() != b.elems.size()) return false;
  GlueEquiv eq;
  eq.ctx = &ctx;
  eq.a = &a;
  eq.b = &b;
  eq.span_a = {0};
  eq.span_b = {0};
  eq.set_a = {0};
  eq.set_b = {0};
  return eq.assign(0);
}

}  // namespace

std::vector<Overlattice> minimal_root_preserving_overlattices(
    const Lattice& f, int max_length, const DivisibilityConstraints& cons) {
  Ctx ctx = build_ctx(f, cons);
  const int ns = static_cast<int>(ctx.sum.size());

  std::vector<Cls> frontier;
  {
    Cls trivial;
    trivial.elems = {0};
    frontier.push_back(trivial);
  }
  std::vector<Cls> maximal;

  while (!frontier.empty()) {
    std::map<std::string, std::vector<size_t>> buckets;
    std::vector<Cls> next;
    for (auto& cls : frontier) {
      for (long long w = 1; w < ctx.universe; ++w) {
        if (!ctx.adm[w]) continue;
        if (std::binary_search(cls.elems.begin(), cls.elems.end(), w))
          continue;
        // minimal multiple of w landing in the subgroup
        long long cur = w;
        int m = 1;
        while (!std::binary_search(cls.elems.begin(), cls.elems.end(), cur)) {
          cur = ctx.add_idx(cur, w);
          ++m;
          if (m > 64) throw std::logic_error("glue element order out of range");
        }
        if (!small_prime(m)) continue;  // reachable through an intermediate
        bool ok = true;
        long long mn = w;
        std::vector<long long> fresh;
        long long kw = w;
        for (int k = 1; k < m && ok; ++k) {
          for (long long h : cls.elems) {
            long long e = ctx.add_idx(kw, h);
            if (!ctx.adm[e]) {
              ok = false;
              break;
            }
            fresh.push_back(e);
            mn = std::min(mn, e);
          }
          if (k + 1 < m) kw = ctx.add_idx(kw, w);
        }
        if (!ok) continue;
        cls.ext = true;  // an admissible extension exists
        if (mn != w) continue;  // canonical generator only
        Cls nc;
        nc.gens = cls.gens;
        nc.gens.push_back(w);
        nc.elems = cls.elems;
        nc.elems.insert(nc.elems.end(), fresh.begin(), fresh.end());
        std::sort(nc.elems.begin(), nc.elems.end());
        auto key = class_key(ctx, nc.elems);
        bool dup = false;
        for (size_t idx : buckets[key])
          if (classes_equivalent(ctx, next[idx], nc)) {
            dup = true;
            break;
          }
        if (!dup) {
          buckets[key].push_back(next.size());
          next.push_back(std::move(nc));
        }
      }
      if (!cls.ext) maximal.push_back(cls);
    }
    frontier = std::move(next);
  }

  // assemble, verify, and filter the maximal classes
  std::vector<std::pair<std::vector<long long>, Overlattice>> kept;
  for (const auto& cls : maximal) {
    std::vector<RatVec> glue;
    for (long long g : cls.gens) {
      RatVec v(f.rank(), Rat(0));
      for (int i = 0; i < ns; ++i) {
        const auto& local = ctx.sum[i].rep[ctx.tup[g][i]];
        for (size_t k = 0; k < local.size(); ++k)
          v[ctx.sum[i].curves[k]] = local[k];
      }
      glue.push_back(std::move(v));
    }
    Overlattice ol = build_overlattice(f, glue);
    if (Int(static_cast<long>(cls.elems.size())) != ol.index)
      throw std::logic_error("glue search: subgroup order mismatch");
    if (!roots_coincide_with_base(ol))
      throw std::logic_error("glue search: new roots slipped through");
    if (DiscGroup(ol.result).length() > max_length) continue;
    kept.emplace_back(cls.elems, std::move(ol));
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& x, const auto& y) {
              if (x.second.index != y.second.index)
                return x.second.index < y.second.index;
              return x.first < y.first;
            });
  std::vector<Overlattice> out;
  for (auto& [k, ol] : kept) {
    (void)k;
    out.push_back(std::move(ol));
  }
  return out;
}

}  // namespace klat
