#pragma once

// Weights producing mixing, and hypercyclic non-mixing, backward shifts on a
// leafless tree, with a transcript that verify_transcript re-checks.
//
// The non-mixing weights are explicit on a small core around the anchor.
// Past the core a vertex is described by (generation, on a lineage, stage
// from which it is covered), which is all its weight depends on, so sums over
// deep generations run as a recursion over those types.

#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dynamics.hpp"

namespace tsl {

// Two-branch family: weight 2 on child #0 from generation 1 on, siblings
// share a unit budget, and the left side a budget of 1/2.
template <class T>
WeightFamily<T> mixing_weights(const Tree& t, const SpaceSpec<T>& s)
{
  auto rep = classify(t);
  if (!rep.leafless) throw Error(ErrorCode::HasLeaf, "mixing weights need a leafless tree");
  return WeightFamily<T>::two_branch(s.is_l1() ? Exponent::infinity() : s.dual());
}

struct StageRecord {
  int k = 0;
  int m = 0, n = 0, r = 0, s = 0;
  double damping = 1;
  // v0-diagnostic at generation r_{k-1} before damping, and at m_k after.
  double v0_before = 1, v0_at_m = 0;
  std::vector<double> alpha;
  // Generation-m_k vertices that start a lineage of 2's.
  std::uint64_t lineage_roots = 0;
  double max_budget = 0;
  bool budget_ok = true;
};

struct ConstructionTranscript {
  Vertex anchor = 0;
  bool rooted = true;
  std::string space;
  int stages = 0;
  int horizon = 0;
  int left_depth = 0;
  // Depth of the explicit core.
  int depth_right = 0;
  // v_1..v_K and their generations; N_0 = 0 for the anchor is implicit.
  std::vector<Vertex> enumeration;
  std::vector<int> N;
  std::vector<StageRecord> stage;

  int N_at(int j) const { return j == 0 ? 0 : N[static_cast<std::size_t>(j - 1)]; }
  Vertex v_at(int j) const { return j == 0 ? anchor : enumeration[static_cast<std::size_t>(j - 1)]; }
  int m_at(int k) const { return k == 0 ? 0 : stage[static_cast<std::size_t>(k - 1)].m; }
  int n_at(int k) const { return k == 0 ? 0 : stage[static_cast<std::size_t>(k - 1)].n; }
  int r_at(int k) const { return k == 0 ? 0 : stage[static_cast<std::size_t>(k - 1)].r; }
};

namespace detail {

// Aggregation of branch weights matched to the space: sum |x|^{p*} (l^p),
// sum |x| (c0), max |x| (l1).
struct Budget {
  bool l1 = false;
  double e = 2;  // p*, or 1 for c0; unused for l1

  double pow(double x) const { return l1 ? std::abs(x) : std::pow(std::abs(x), e); }
  double combine(double acc, double x) const { return l1 ? std::max(acc, x) : acc + x; }
  double combine_n(double acc, double x, long count) const
  {
    if (count <= 0) return acc;
    return l1 ? std::max(acc, x) : acc + static_cast<double>(count) * x;
  }
  // Weight of each of d children sharing a per-vertex budget `c`.
  double share(double c, long d) const { return l1 ? c : std::pow(c / static_cast<double>(d), 1.0 / e); }
  double cap3() const { return l1 ? 3.0 : std::pow(3.0, e); }
  // 2^{steps * e}.
  double two_pow(double steps) const { return std::pow(2.0, steps * (l1 ? 1.0 : e)); }
};

inline Budget budget_for(const SpaceSpec<double>& s)
{
  Budget b;
  b.l1 = s.is_l1();
  b.e = s.is_sup() ? 1.0 : (b.l1 ? 1.0 : s.dual().value());
  return b;
}

}  // namespace detail

// Outdegree of every vertex of generation >= `from`, when the rule fixes it
// by generation alone. Empty for procedural rules and rule-less trees.
inline std::function<long(int)> generation_degree(const Tree& t, int& from)
{
  from = 0;
  if (!t.has_rule()) return {};
  for (auto& e : t.spec().edges) from = std::max(from, t.generation(e.second) + 1);
  const ExtensionRule& r = *t.rule();
  switch (r.kind) {
    case ExtensionRule::Kind::Constant: return [n = r.constant](int) { return n; };
    case ExtensionRule::Kind::Symmetric: return [g = r.gamma](int x) { return g.at(x); };
    case ExtensionRule::Kind::Table:
      if (!r.rows.empty()) from = std::max(from, r.rows.rbegin()->first + 1);
      return [f = r.fallback](int) { return f; };
    case ExtensionRule::Kind::Procedural: return {};
  }
  return {};
}

// Stage k damps generations [lo, m) by c per generation and lays lineages of
// 2's on [m, r).
struct StageWindow {
  int lo = 0, m = 0, r = 0;
  double c = 1;
};

struct ConstructedWeights {
  std::string space;
  detail::Budget b;
  bool rooted = true;
  int left_depth = 0;
  Vertex anchor = 0;
  std::vector<Vertex> enumeration;
  std::vector<StageWindow> windows;

  struct Child {
    double w;
    long count;
    bool lineage;
  };

  // 1-based stage whose window holds generation g, or 0.
  int window_of(int g, bool& lineage) const
  {
    for (std::size_t k = 0; k < windows.size(); ++k)
      if (g >= windows[k].lo && g < windows[k].r) {
        lineage = g >= windows[k].m;
        return static_cast<int>(k + 1);
      }
    lineage = false;
    return 0;
  }
  int horizon() const { return windows.empty() ? 0 : windows.back().r; }

  void check_tree(const Tree& t) const
  {
    if (t.rooted() != rooted) throw Error(ErrorCode::InvalidSpec, "constructed weights belong to a different tree");
    if (!rooted && t.depth_left() != left_depth)
      throw Error(ErrorCode::InvalidSpec,
                  "constructed weights need the tree materialized with depth_left = " + std::to_string(left_depth));
  }

  // min of max(j, 1) over the v_j at or above x: from that stage on,
  // generation-m descendants of x start lineages.
  int cover_stage(const Tree& t, Vertex x) const
  {
    int best = INT_MAX;
    for (Vertex y = x; y != kNoVertex; y = t.parent(y)) {
      if (y == anchor) best = std::min(best, 1);
      for (std::size_t i = 0; i < enumeration.size(); ++i)
        if (enumeration[i] == y) best = std::min(best, static_cast<int>(i + 1));
    }
    return best;
  }

  bool has_lineage_child(const Tree& t, Vertex x) const
  {
    int g = t.generation(x);
    bool lin;
    int k = window_of(g, lin);
    if (!k || !lin) return false;
    if (g == windows[static_cast<std::size_t>(k - 1)].m) return cover_stage(t, x) <= k;
    Vertex p = t.parent(x);
    return p != kNoVertex && t.child_index(x) == 0 && has_lineage_child(t, p);
  }
  bool on_lineage(const Tree& t, Vertex x) const
  {
    Vertex p = t.parent(x);
    return p != kNoVertex && t.child_index(x) == 0 && has_lineage_child(t, p);
  }

  // Children of a vertex of generation g and outdegree d, grouped by type.
  std::vector<Child> children_of(int g, bool lineage, int cover, long d) const
  {
    if (g < 0) return {{b.share(0.5, d), d, false}};
    bool in_lin;
    int k = window_of(g, in_lin);
    if (!k) throw Error(ErrorCode::HorizonExhausted, "weights are undefined below generation " + std::to_string(g));
    const StageWindow& w = windows[static_cast<std::size_t>(k - 1)];
    if (!in_lin) return {{b.share(w.c, d), d, false}};
    bool L = g == w.m ? cover <= k : lineage;
    if (!L) return {{b.share(1.0, d), d, false}};
    std::vector<Child> out{{2.0, 1, true}};
    if (d > 1) out.push_back({b.share(1.0, d - 1), d - 1, false});
    return out;
  }

  std::optional<double> weight(const Tree& t, Vertex u) const
  {
    Vertex p = t.parent(u);
    if (p == kNoVertex) {
      if (rooted) return 1.0;
      return std::nullopt;
    }
    int g = t.generation(p);
    long d = static_cast<long>(t.outdegree(p));
    if (g < 0) return b.share(0.5, d);
    bool lin;
    int k = window_of(g, lin);
    if (!k) return std::nullopt;
    if (!lin) return b.share(windows[static_cast<std::size_t>(k - 1)].c, d);
    if (has_lineage_child(t, p)) return t.child_index(u) == 0 ? 2.0 : b.share(1.0, d - 1);
    return b.share(1.0, d);
  }

  WeightFamily<double> family() const
  {
    auto self = std::make_shared<const ConstructedWeights>(*this);
    return WeightFamily<double>::procedural([self](const Tree& t, Vertex u) {
      self->check_tree(t);
      auto w = self->weight(t, u);
      if (!w) throw Error(ErrorCode::WeightUndefined, "no constructed weight for vertex " + std::to_string(u));
      return *w;
    });
  }
};

struct ScanResult {
  double max_budget = 0;
  std::string budget_at;
  long max_twos = 0;
  std::string twos_at;
};

// Sums for constructed weights: the core is walked explicitly, everything
// below its frontier by type.
class TypedEvaluator {
 public:
  TypedEvaluator(const Tree& core, const ConstructedWeights& w, std::function<long(int)> deg, detail::Budget b)
      : core_(core), w_(w), deg_(std::move(deg)), b_(b)
  {
    cover_.resize(core.size());
    for (Vertex v = 0; v < static_cast<Vertex>(core.size()); ++v)
      cover_[static_cast<std::size_t>(v)] = w.cover_stage(core, v);
  }

  void reset() { memo_.clear(); }

  // agg over u in Chi^n(v) of |lambda(v->u)|^e.
  double agg(Vertex v, int n) { return core_agg(v, n); }

  // Per-vertex budgets and weight-2 child counts over generations [lo, hi).
  ScanResult scan(int lo, int hi)
  {
    ScanResult res;
    for (Vertex v = 0; v < static_cast<Vertex>(core_.size()); ++v) {
      int g = core_.generation(v);
      if (g < lo || g >= hi || core_.is_frontier(v)) continue;
      double acc = 0;
      long twos = 0;
      for (Vertex u : core_.children(v)) {
        double x = weight(u);
        acc = b_.combine(acc, b_.pow(x));
        twos += x == 2.0;
      }
      note(res, acc, twos, "vertex " + std::to_string(v));
    }
    std::set<std::tuple<bool, int>> states;
    int Dc = -1;
    for (Vertex v = 0; v < static_cast<Vertex>(core_.size()); ++v)
      if (core_.is_frontier(v)) {
        Dc = core_.generation(v);
        states.insert({w_.on_lineage(core_, v), cover_[static_cast<std::size_t>(v)]});
      }
    if (Dc < 0) return res;
    for (int g = Dc; g < hi; ++g) {
      std::set<std::tuple<bool, int>> next;
      long d = degree(g);
      for (auto [lin, cov] : states) {
        auto ch = w_.children_of(g, lin, cov, d);
        if (g >= lo) {
          double acc = 0;
          long twos = 0;
          for (auto& c : ch) {
            acc = b_.combine_n(acc, b_.pow(c.w), c.count);
            if (c.w == 2.0) twos += c.count;
          }
          note(res, acc, twos, "generation " + std::to_string(g) + (lin ? " (lineage)" : ""));
        }
        for (auto& c : ch) next.insert({c.lineage, cov});
      }
      states.swap(next);
    }
    return res;
  }

  // Generation-m_k vertices covered at stage k.
  std::uint64_t count_roots(int k)
  {
    int m = w_.windows[static_cast<std::size_t>(k - 1)].m;
    std::uint64_t total = 0;
    for (Vertex v = 0; v < static_cast<Vertex>(core_.size()); ++v) {
      if (cover_[static_cast<std::size_t>(v)] > k) continue;
      int g = core_.generation(v);
      if (g == m) {
        ++total;
      } else if (core_.is_frontier(v) && g < m) {
        std::uint64_t c = 1;
        for (int h = g; h < m; ++h)
          c = c > (UINT64_MAX >> 8) ? UINT64_MAX : c * static_cast<std::uint64_t>(degree(h));
        total = total > UINT64_MAX - c ? UINT64_MAX : total + c;
      }
    }
    return total;
  }

 private:
  long degree(int g) const
  {
    if (!deg_) throw Error(ErrorCode::HorizonExhausted, "tree is not materialized below generation " + std::to_string(g));
    return deg_(g);
  }
  double weight(Vertex u) const
  {
    auto x = w_.weight(core_, u);
    if (!x) throw Error(ErrorCode::HorizonExhausted, "weight undefined at vertex " + std::to_string(u));
    return *x;
  }
  static void note(ScanResult& r, double acc, long twos, const std::string& where)
  {
    if (acc > r.max_budget) {
      r.max_budget = acc;
      r.budget_at = where;
    }
    if (twos > r.max_twos) {
      r.max_twos = twos;
      r.twos_at = where;
    }
  }
  double core_agg(Vertex x, int n)
  {
    if (n == 0) return 1.0;
    if (core_.is_frontier(x))
      return tail(core_.generation(x), w_.on_lineage(core_, x), cover_[static_cast<std::size_t>(x)], n);
    double acc = 0;
    for (Vertex u : core_.children(x)) acc = b_.combine(acc, b_.pow(weight(u)) * core_agg(u, n - 1));
    return acc;
  }
  double tail(int g, bool lin, int cov, int n)
  {
    if (n == 0) return 1.0;
    auto key = std::make_tuple(g, lin, cov, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    double acc = 0;
    for (auto& c : w_.children_of(g, lin, cov, degree(g)))
      acc = b_.combine_n(acc, b_.pow(c.w) * tail(g + 1, c.lineage, cov, n - 1), c.count);
    memo_[key] = acc;
    return acc;
  }

  const Tree& core_;
  const ConstructedWeights& w_;
  std::function<long(int)> deg_;
  detail::Budget b_;
  std::vector<int> cover_;
  std::map<std::tuple<int, bool, int, int>, double> memo_;
};

struct ConstructionResult {
  // The explicit core; its ids agree with any materialization of the same
  // spec at left depth `transcript.left_depth`.
  Tree tree;
  WeightFamily<double> weights;
  ConstructedWeights model;
  ConstructionTranscript transcript;
};

// The first K vertices of V \ {v0} by (undirected distance, id), together
// with the left depth at which all of them and their ties are materialized.
inline Tree enumeration_tree(const Tree& t0, int K, int depth_right, std::vector<Vertex>& enumeration,
                             int& left_depth)
{
  int Ld = t0.rooted() ? 0 : 1;
  while (true) {
    Tree t = t0;
    if (t0.has_rule()) {
      TreeSpec sp = t0.spec();
      sp.depth_right = depth_right;
      sp.depth_left = t0.rooted() ? 0 : Ld;
      t = materialize(sp);
    }
    auto en = enumeration_by_distance(t);
    if (static_cast<int>(en.size()) < K) {
      if (!t0.has_rule()) throw Error(ErrorCode::HorizonExhausted, "tree has fewer vertices than stages");
      ++Ld;
      continue;
    }
    auto d = distance_from_anchor(t);
    int dk = d[static_cast<std::size_t>(en[static_cast<std::size_t>(K - 1)])];
    if (t0.rooted() || !t0.has_rule() || dk <= t.depth_left()) {
      enumeration.assign(en.begin(), en.begin() + K);
      left_depth = t.depth_left();
      return t;
    }
    ++Ld;
  }
}

inline ConstructionResult nonmixing_weights(const Tree& t0, const SpaceSpec<double>& s, int K, int G)
{
  if (K < 1) throw Error(ErrorCode::InvalidSpec, "need at least one stage");
  if (s.kind == SpaceKind::Linf) throw Error(ErrorCode::InvalidSpec, "construction targets l^p or c0");
  if (!s.mu.is_constant() || std::abs(s.mu.value) != 1.0)
    throw Error(ErrorCode::InvalidSpec, "construction runs on the unweighted space");
  if (!classify(t0).leafless) throw Error(ErrorCode::HasLeaf, "construction needs a leafless tree");
  int from = 0;
  auto deg = generation_degree(t0, from);
  if (!deg) {
    if (!t0.has_rule()) throw Error(ErrorCode::HorizonExhausted, "a finite tree cannot carry the stages");
    throw Error(ErrorCode::InvalidSpec, "construction needs a rule whose outdegree is fixed by generation");
  }
  detail::Budget b = detail::budget_for(s);

  ConstructionTranscript tr;
  tr.rooted = t0.rooted();
  tr.space = s.name();
  tr.stages = K;
  tr.horizon = G;
  int Dc = std::max(K, from);
  Tree t = enumeration_tree(t0, K, Dc, tr.enumeration, tr.left_depth);
  tr.depth_right = Dc;
  for (Vertex v : tr.enumeration) tr.N.push_back(t.generation(v));
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
    if (!t.is_frontier(v) && t.outdegree(v) == 0)
      throw Error(ErrorCode::HasLeaf, "vertex " + std::to_string(v) + " is a leaf");

  ConstructedWeights cw;
  cw.space = s.name();
  cw.b = b;
  cw.rooted = t.rooted();
  cw.left_depth = tr.left_depth;
  cw.anchor = 0;
  cw.enumeration = tr.enumeration;
  TypedEvaluator ev(t, cw, deg, b);

  int n_prev = 0, r_prev = 0, maxN = 0;
  for (int k = 1; k <= K; ++k) {
    StageRecord st;
    st.k = k;
    maxN = std::max(maxN, tr.N_at(k));
    int m = n_prev + maxN + 1;
    if (m > G)
      throw Error(ErrorCode::HorizonExhausted,
                  "stage " + std::to_string(k) + " needs depth " + std::to_string(m) + " > " + std::to_string(G));

    // Damping on generations [r_{k-1}, m_k) so the v0-diagnostic ends at 3/4.
    double D = r_prev == 0 ? 1.0 : ev.agg(0, r_prev);
    int L = m - r_prev;
    double c = std::min(1.0, std::pow(0.75 / D, 1.0 / L));
    cw.windows.push_back({r_prev, m, m, c});
    ev.reset();
    st.v0_before = D;
    st.damping = c;
    st.v0_at_m = ev.agg(0, m);

    // alpha_j and the smallest admissible n_k.
    double target = std::pow(2.0, k) * (1 + 1e-9);
    for (int j = 0; j <= k; ++j) st.alpha.push_back(ev.agg(tr.v_at(j), m - tr.N_at(j)));
    int n = m + 1;
    while (true) {
      bool ok = true;
      for (int j = 0; j <= k && ok; ++j)
        ok = b.two_pow(n - m + tr.N_at(j)) * st.alpha[static_cast<std::size_t>(j)] > target;
      if (ok) break;
      ++n;
      if (n + maxN > G) throw Error(ErrorCode::HorizonExhausted, "no admissible n within the horizon");
    }
    int sk = n - m + maxN;
    int r = m + sk;
    cw.windows.back().r = r;
    ev.reset();
    st.lineage_roots = ev.count_roots(k);

    auto sc = ev.scan(r_prev, r);
    st.max_budget = sc.max_budget;
    st.budget_ok = sc.max_budget <= b.cap3() * (1 + 1e-12);
    st.m = m;
    st.n = n;
    st.r = r;
    st.s = sk;
    tr.stage.push_back(st);
    n_prev = n;
    r_prev = r;
  }
  ConstructionResult res;
  res.weights = cw.family();
  res.model = std::move(cw);
  res.tree = std::move(t);
  res.transcript = std::move(tr);
  return res;
}

// Rebuilds the weight model from a transcript.
inline ConstructedWeights model_from_transcript(const ConstructionTranscript& tr, const SpaceSpec<double>& s)
{
  ConstructedWeights cw;
  cw.space = s.name();
  cw.b = detail::budget_for(s);
  cw.rooted = tr.rooted;
  cw.left_depth = tr.left_depth;
  cw.anchor = tr.anchor;
  cw.enumeration = tr.enumeration;
  int lo = 0;
  for (auto& st : tr.stage) {
    cw.windows.push_back({lo, st.m, st.r, st.damping});
    lo = st.r;
  }
  return cw;
}

struct ClauseResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<ClauseResult> clauses;
  // "explicit" (materialized tree) or "typed" (core plus types).
  std::string method;
  bool all_pass() const
  {
    for (auto& c : clauses)
      if (!c.pass) return false;
    return true;
  }
  const ClauseResult* find(const std::string& n) const
  {
    for (auto& c : clauses)
      if (c.name == n) return &c;
    return nullptr;
  }
};

// Tree materialized as the transcript describes, to at least `depth`.
inline Tree transcript_tree(const Tree& t, const ConstructionTranscript& tr, int depth)
{
  if (!t.has_rule()) return t;
  TreeSpec sp = t.spec();
  sp.depth_right = std::max(depth, tr.depth_right);
  sp.depth_left = tr.rooted ? 0 : tr.left_depth;
  return materialize(sp);
}

namespace detail {

// Clauses shared by both verification routes; `S` supplies agg(v, n) and
// scan(lo, hi).
template <class S>
void verify_clauses(S& src, const Tree& et, const ConstructionTranscript& tr, const Budget& b, VerifyReport& rep)
{
  const double tol = 1e-12;
  auto add = [&](const std::string& name, bool pass, const std::string& d) { rep.clauses.push_back({name, pass, d}); };
  auto fmt = [](double x) { return to_string(x); };
  int K = static_cast<int>(tr.stage.size());

  {
    auto en = enumeration_by_distance(et);
    bool ok = en.size() >= tr.enumeration.size() && tr.N.size() == tr.enumeration.size() &&
              std::equal(tr.enumeration.begin(), tr.enumeration.end(), en.begin());
    for (std::size_t i = 0; ok && i < tr.enumeration.size(); ++i) ok = et.generation(tr.enumeration[i]) == tr.N[i];
    add("enumeration", ok, ok ? "matches distance order" : "differs from distance order");
  }
  {
    auto sc = src.scan(INT_MIN / 2, 0);
    bool ok = sc.max_budget <= 0.5 * (1 + tol);
    add("eq-neg", ok, ok ? "all generations < 0 within 1/2" : sc.budget_at + " has budget " + fmt(sc.max_budget));
  }
  {
    bool ok = true;
    std::string d = "ok";
    int maxN = 0;
    for (int k = 1; k <= K && ok; ++k) {
      maxN = std::max(maxN, tr.N_at(k));
      if (!(tr.m_at(k) > tr.n_at(k - 1) + maxN)) {
        ok = false;
        d = "stage " + std::to_string(k);
      }
    }
    add("eq-mj", ok, d);
  }
  {
    bool ok = true;
    std::string d = "ok";
    for (int k = 1; k <= K && ok; ++k)
      if (!(tr.n_at(k) > tr.m_at(k))) {
        ok = false;
        d = "stage " + std::to_string(k);
      }
    add("eq-nj", ok, d);
  }
  {
    bool ok = true;
    std::string d;
    for (int k = 1; k <= K; ++k) {
      double x = src.agg(tr.anchor, tr.m_at(k));
      d += (d.empty() ? "" : ", ") + std::string("m_") + std::to_string(k) + ": " + fmt(x);
      ok = ok && x <= 1.0 * (1 + tol);
    }
    add("eq-nmix", ok, d);
  }
  {
    bool ok = true;
    std::string d = "ok";
    for (int k = 1; k <= K && ok; ++k)
      for (int j = 0; j <= k && ok; ++j) {
        double x = src.agg(tr.v_at(j), tr.n_at(k));
        if (!(x > std::pow(2.0, k) * (1 + tol))) {
          ok = false;
          d = "stage " + std::to_string(k) + ", v_" + std::to_string(j) + ": " + fmt(x);
        }
      }
    add("eq-hyp", ok, d);
  }
  {
    auto sc = src.scan(0, tr.r_at(K));
    bool ok = sc.max_budget <= b.cap3() * (1 + tol);
    add("eq-bdd", ok, (ok ? "max budget " : sc.budget_at + " has budget ") + fmt(sc.max_budget));
  }
  {
    bool ok = true;
    std::string d = "ok";
    for (int k = 1; k <= K && ok; ++k) {
      int m = tr.m_at(k), n = tr.n_at(k);
      for (int j = 0; j <= k && ok; ++j) {
        double alpha = src.agg(tr.v_at(j), m - tr.N_at(j));
        double lhs = b.two_pow(n - m + tr.N_at(j)) * alpha;
        if (!(lhs > std::pow(2.0, k) * (1 + tol))) {
          ok = false;
          d = "stage " + std::to_string(k) + ", j=" + std::to_string(j) + ": " + fmt(lhs);
        }
      }
    }
    add("eq-alphabis", ok, d);
  }
  {
    bool ok = true;
    std::string d = "at most one weight-2 child in every lineage window";
    for (int k = 1; k <= K && ok; ++k) {
      auto sc = src.scan(tr.m_at(k), tr.r_at(k));
      if (sc.max_twos > 1) {
        ok = false;
        d = sc.twos_at + " has " + std::to_string(sc.max_twos) + " weight-2 children";
      }
    }
    add("lineage", ok, d);
  }
}

// Brute force on a materialized tree with arbitrary weights.
struct ExplicitSource {
  const Tree& t;
  const WeightFamily<double>& lambda;
  Budget b;

  double lam(Vertex u) const { return std::abs(weight_at(lambda, t, u)); }
  double agg(Vertex v, int n) const
  {
    double acc = 0;
    for (Vertex u : descendants(t, v, n)) acc = b.combine(acc, b.pow(path_product(lambda, t, v, u)));
    return acc;
  }
  ScanResult scan(int lo, int hi) const
  {
    ScanResult res;
    for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
      int g = t.generation(v);
      if (g < lo || g >= hi || t.is_frontier(v)) continue;
      double acc = 0;
      long twos = 0;
      for (Vertex u : t.children(v)) {
        double x = lam(u);
        acc = b.combine(acc, b.pow(x));
        twos += x == 2.0;
      }
      if (acc > res.max_budget) {
        res.max_budget = acc;
        res.budget_at = "vertex " + std::to_string(v);
      }
      if (twos > res.max_twos) {
        res.max_twos = twos;
        res.twos_at = "vertex " + std::to_string(v);
      }
    }
    return res;
  }
};

}  // namespace detail

// Re-derives every inequality of the ledger by path products on the tree
// materialized to r_K. Works for any weights; limited by materialization size.
inline VerifyReport verify_transcript(const Tree& t0, const WeightFamily<double>& lambda,
                                      const ConstructionTranscript& tr, const SpaceSpec<double>& s)
{
  VerifyReport rep;
  rep.method = "explicit";
  if (tr.stage.empty()) throw Error(ErrorCode::InvalidSpec, "transcript has no stages");
  Tree t = transcript_tree(t0, tr, tr.r_at(static_cast<int>(tr.stage.size())));
  detail::ExplicitSource src{t, lambda, detail::budget_for(s)};
  detail::verify_clauses(src, t, tr, src.b, rep);
  return rep;
}

namespace detail {

inline Tree typed_core(const Tree& t0, const ConstructedWeights& cw, const ConstructionTranscript& tr,
                       std::function<long(int)>& deg)
{
  if (tr.stage.empty()) throw Error(ErrorCode::InvalidSpec, "transcript has no stages");
  int from = 0;
  deg = generation_degree(t0, from);
  if (!deg) throw Error(ErrorCode::InvalidSpec, "typed verification needs a rule fixed by generation");
  if (tr.depth_right < from)
    throw Error(ErrorCode::InvalidSpec, "transcript core is shallower than the explicit part of the rule");
  TreeSpec sp = t0.spec();
  sp.depth_right = tr.depth_right;
  sp.depth_left = tr.rooted ? 0 : tr.left_depth;
  Tree core = materialize(sp);
  cw.check_tree(core);
  return core;
}

}  // namespace detail

// Same clauses for constructed weights, on the core and by type below it, so
// deep horizons need no materialization.
inline VerifyReport verify_transcript(const Tree& t0, const ConstructedWeights& cw, const ConstructionTranscript& tr,
                                      const SpaceSpec<double>& s)
{
  VerifyReport rep;
  rep.method = "typed";
  std::function<long(int)> deg;
  Tree core = detail::typed_core(t0, cw, tr, deg);
  TypedEvaluator ev(core, cw, deg, detail::budget_for(s));
  detail::verify_clauses(ev, core, tr, detail::budget_for(s), rep);
  return rep;
}

// Dynamics on constructed weights, read at the stage times since the weights
// stop at r_K. hc is Supported when agg(v_j, n_k) > 2^k for j <= k; mixing
// stays Undetermined, with agg(v_0, m_k) <= 1 kept as the non-mixing witness.
inline Certification certify_constructed(const Tree& t0, const ConstructedWeights& cw, const ConstructionTranscript& tr,
                                         const SpaceSpec<double>& s)
{
  std::function<long(int)> deg;
  Tree core = detail::typed_core(t0, cw, tr, deg);
  TypedEvaluator ev(core, cw, deg, detail::budget_for(s));
  int K = static_cast<int>(tr.stage.size());
  Certification c = detail::both(Status::Undetermined, Status::Undetermined, "constructed-stages");
  c.hc.horizon = c.mixing.horizon = tr.r_at(K);
  bool hyp = true, low = true;
  for (int k = 1; k <= K; ++k) {
    for (int j = 0; j <= k; ++j) {
      double x = ev.agg(tr.v_at(j), tr.n_at(k));
      hyp = hyp && x > std::pow(2.0, k) * (1 + 1e-12);
      c.hc.witness.diagnostics.push_back({tr.v_at(j), tr.n_at(k), "main", x});
    }
    double y = ev.agg(tr.anchor, tr.m_at(k));
    low = low && y <= 1 + 1e-12;
    c.mixing.witness.diagnostics.push_back({tr.anchor, tr.m_at(k), "main", y});
  }
  if (hyp) c.hc.status = Status::Supported;
  c.hc.witness.params["stages"] = std::to_string(K);
  c.hc.witness.params["above_2^k_at_n_k"] = hyp ? "yes" : "no";
  c.mixing.witness.params["stages"] = std::to_string(K);
  c.mixing.witness.params["at_most_1_at_m_k"] = low ? "yes" : "no";
  c.hc.witness.vertices.push_back(tr.anchor);
  c.mixing.witness.vertices.push_back(tr.anchor);
  return c;
}

}  // namespace tsl
