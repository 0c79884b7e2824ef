#pragma once

// Directed trees: finite truncations of (possibly infinite) leafless trees,
// materialized from an explicit seed and an optional extension rule.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace tsl {

using Vertex = std::int64_t;
inline constexpr Vertex kNoVertex = -1;

// values[0], values[1], ... with the last `period` entries repeating forever.
template <class T>
struct EventuallyPeriodic {
  std::vector<T> values;
  std::size_t period = 1;

  bool empty() const { return values.empty(); }
  std::size_t prefix() const { return values.size() - period; }
  const T& at(std::size_t i) const
  {
    if (values.empty()) throw Error(ErrorCode::InvalidSpec, "empty periodic sequence");
    if (i < values.size()) return values[i];
    std::size_t start = values.size() - period;
    return values[start + (i - start) % period];
  }
  void validate(const char* what) const
  {
    if (values.empty()) throw Error(ErrorCode::InvalidSpec, std::string(what) + ": empty table");
    if (period == 0 || period > values.size())
      throw Error(ErrorCode::InvalidSpec, std::string(what) + ": period must be in [1, table length]");
  }
};

// Outdegree by generation n in Z. Right side n >= 0, left side n = -1, -2, ...
// An empty left side repeats the value at generation 0.
struct DegreeProfile {
  enum class Kind { Periodic, Alternating, Geometric };
  Kind kind = Kind::Periodic;
  EventuallyPeriodic<long> right;
  EventuallyPeriodic<long> left;
  // Alternating: stretch k of `low` has length a*r^k, then a stretch of `high`
  // of length b*r^k, starting at generation 0.
  long low = 1, high = 2, a = 1, b = 1, r = 2;
  // Geometric: base * ratio^n on the right.
  long base = 1, ratio = 2;

  long at(long n) const
  {
    if (n < 0) {
      if (!left.empty()) return left.at(static_cast<std::size_t>(-n - 1));
      return at(0);
    }
    if (kind == Kind::Periodic) return right.at(static_cast<std::size_t>(n));
    if (kind == Kind::Geometric) {
      long v = base;
      for (long i = 0; i < n; ++i) {
        if (v > (1L << 40) / std::max(ratio, 1L)) throw Error(ErrorCode::SizeLimit, "geometric outdegree overflows");
        v *= ratio;
      }
      return v;
    }
    long pos = n, scale = 1;
    while (true) {
      long la = a * scale, lb = b * scale;
      if (pos < la) return low;
      pos -= la;
      if (pos < lb) return high;
      pos -= lb;
      scale *= r;
    }
  }
  bool unbounded() const { return kind == Kind::Geometric && ratio > 1; }
  long max_value() const
  {
    long m = 0;
    if (kind == Kind::Periodic)
      for (long x : right.values) m = std::max(m, x);
    else if (kind == Kind::Geometric)
      m = unbounded() ? std::numeric_limits<long>::max() : base;
    else
      m = std::max(low, high);
    if (left.empty()) m = std::max(m, at(0));
    for (long x : left.values) m = std::max(m, x);
    return m;
  }
  // Outdegree in the far left tail, when the left side is eventually constant.
  std::optional<long> left_tail_constant() const
  {
    if (left.empty()) return at(0);
    long first = left.values[left.prefix()];
    for (std::size_t i = left.prefix(); i < left.values.size(); ++i)
      if (left.values[i] != first) return std::nullopt;
    return first;
  }
  void validate() const
  {
    if (kind == Kind::Periodic) {
      right.validate("degree profile");
      for (long x : right.values)
        if (x < 1) throw Error(ErrorCode::ZeroOutdegreeRule, "degree profile has an entry < 1");
    } else if (kind == Kind::Geometric) {
      if (base < 1 || ratio < 1) throw Error(ErrorCode::ZeroOutdegreeRule, "geometric profile needs base, ratio >= 1");
    } else {
      if (low < 1 || high < 1) throw Error(ErrorCode::ZeroOutdegreeRule, "alternating profile entry < 1");
      if (a < 1 || b < 1 || r < 1) throw Error(ErrorCode::InvalidSpec, "alternating stretch lengths must be >= 1");
    }
    if (!left.empty()) {
      left.validate("left degree profile");
      for (long x : left.values)
        if (x < 1) throw Error(ErrorCode::ZeroOutdegreeRule, "left degree profile has an entry < 1");
    }
  }
};

struct RuleContext {
  int generation = 0;
  // Position of the vertex within its generation among descendants of the
  // anchor (breadth-first), or -1 outside the anchor's subtree.
  std::int64_t ordinal = -1;
  // True when the vertex is a new ancestor being created on the left.
  bool ancestor = false;
};

struct ExtensionRule {
  enum class Kind { Constant, Symmetric, Table, Procedural };
  Kind kind = Kind::Constant;
  long constant = 2;
  DegreeProfile gamma;
  // Table: rows[g][ordinal] for vertices of the anchor's subtree, `fallback`
  // elsewhere; `left` gives ancestor outdegrees for generations -1, -2, ...
  std::map<int, std::vector<long>> rows;
  long fallback = 1;
  EventuallyPeriodic<long> left;
  std::function<long(const RuleContext&)> procedural;

  static ExtensionRule make_constant(long n)
  {
    ExtensionRule r;
    r.kind = Kind::Constant;
    r.constant = n;
    return r;
  }
  static ExtensionRule make_symmetric(DegreeProfile g)
  {
    ExtensionRule r;
    r.kind = Kind::Symmetric;
    r.gamma = std::move(g);
    return r;
  }

  long degree(const RuleContext& c) const
  {
    long d = 0;
    switch (kind) {
      case Kind::Constant: d = constant; break;
      case Kind::Symmetric: d = gamma.at(c.generation); break;
      case Kind::Table:
        if (c.ancestor || c.generation < 0) {
          if (c.ancestor && !left.empty())
            d = left.at(static_cast<std::size_t>(-c.generation - 1));
          else
            d = fallback;
        } else {
          auto it = rows.find(c.generation);
          if (c.ordinal >= 0 && it != rows.end() && c.ordinal < static_cast<std::int64_t>(it->second.size()))
            d = it->second[static_cast<std::size_t>(c.ordinal)];
          else
            d = fallback;
        }
        break;
      case Kind::Procedural: d = procedural ? procedural(c) : 0; break;
    }
    if (d < 1)
      throw Error(ErrorCode::ZeroOutdegreeRule,
                  "rule yields outdegree " + std::to_string(d) + " at generation " + std::to_string(c.generation));
    return d;
  }

  void validate() const
  {
    switch (kind) {
      case Kind::Constant:
        if (constant < 1) throw Error(ErrorCode::ZeroOutdegreeRule, "constant outdegree must be >= 1");
        break;
      case Kind::Symmetric: gamma.validate(); break;
      case Kind::Table:
        if (fallback < 1) throw Error(ErrorCode::ZeroOutdegreeRule, "table default outdegree must be >= 1");
        for (auto& [g, row] : rows)
          for (long x : row)
            if (x < 1) throw Error(ErrorCode::ZeroOutdegreeRule, "table row " + std::to_string(g) + " has entry < 1");
        if (!left.empty()) {
          left.validate("table left");
          for (long x : left.values)
            if (x < 1) throw Error(ErrorCode::ZeroOutdegreeRule, "table left entry < 1");
        }
        break;
      case Kind::Procedural:
        if (!procedural) throw Error(ErrorCode::InvalidSpec, "procedural rule without a function");
        break;
    }
  }
};

struct TreeSpec {
  bool rooted = true;
  // Explicit seed. With no edges the seed is the single anchor vertex 0.
  std::vector<std::pair<Vertex, Vertex>> edges;
  // Childless seed vertices whose children are unknown (only without a rule).
  std::vector<Vertex> frontier;
  std::optional<ExtensionRule> rule;
  int depth_right = 0;
  int depth_left = 0;
  std::size_t max_vertices = 6'000'000;
};

enum class Tri { No, Yes, Unknown };

inline const char* tri_name(Tri t)
{
  switch (t) {
    case Tri::No: return "no";
    case Tri::Yes: return "yes";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

struct StructureReport {
  bool rooted = true;
  bool leafless = true;
  bool symmetric = true;
  bool symmetric_exact = false;  // decided from the rule rather than the horizon
  Tri free_left_end = Tri::No;
  long max_outdegree = 0;
  bool max_outdegree_exact = false;
  bool max_outdegree_infinite = false;
  bool branchless_Z = false;
  std::size_t vertices = 0;
  int depth_right = 0;
  int depth_left = 0;
};

class Tree {
 public:
  Tree() = default;

  std::size_t size() const { return parent_.size(); }
  bool rooted() const { return spec_.rooted; }
  Vertex anchor() const { return 0; }
  Vertex top() const { return top_; }
  int depth_right() const { return depth_right_; }
  int depth_left() const { return depth_left_; }
  const TreeSpec& spec() const { return spec_; }
  const std::optional<ExtensionRule>& rule() const { return spec_.rule; }
  bool has_rule() const { return spec_.rule.has_value(); }
  // True when the tree is generated by its rule alone (no explicit seed edges).
  bool pure_rule() const { return spec_.rule.has_value() && spec_.edges.empty(); }

  bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < size(); }
  Vertex parent(Vertex v) const { return parent_[check(v)]; }
  std::span<const Vertex> children(Vertex v) const
  {
    auto i = check(v);
    return {child_ids_.data() + child_off_[i], child_ids_.data() + child_off_[i + 1]};
  }
  std::size_t outdegree(Vertex v) const
  {
    auto i = check(v);
    return static_cast<std::size_t>(child_off_[i + 1] - child_off_[i]);
  }
  int generation(Vertex v) const { return gen_[check(v)]; }
  bool is_frontier(Vertex v) const { return frontier_[check(v)] != 0; }
  bool in_anchor_subtree(Vertex v) const { return anchor_sub_[check(v)] != 0; }
  // Position among the parent's children; the top vertex counts as child 0 of
  // its (unmaterialized) parent, matching how ancestors are grown.
  std::size_t child_index(Vertex v) const { return child_pos_[check(v)]; }
  // Outdegree of the parent, consulting the rule for the top vertex.
  std::optional<long> parent_outdegree(Vertex v) const
  {
    Vertex p = parent(v);
    if (p != kNoVertex) return static_cast<long>(outdegree(p));
    if (rooted() || !has_rule()) return std::nullopt;
    RuleContext c;
    c.generation = generation(v) - 1;
    c.ancestor = true;
    return spec_.rule->degree(c);
  }
  int min_generation() const { return gen_.empty() ? 0 : gen_[static_cast<std::size_t>(top_)]; }
  int max_generation() const { return max_gen_; }

  friend Tree materialize(const TreeSpec& spec);

 private:
  std::size_t check(Vertex v) const
  {
    if (!contains(v)) throw Error(ErrorCode::InvalidSpec, "vertex " + std::to_string(v) + " is not materialized");
    return static_cast<std::size_t>(v);
  }

  TreeSpec spec_;
  std::vector<Vertex> parent_;
  std::vector<std::uint64_t> child_off_;
  std::vector<Vertex> child_ids_;
  std::vector<int> gen_;
  std::vector<std::uint8_t> frontier_;
  std::vector<std::uint8_t> anchor_sub_;
  std::vector<std::uint32_t> child_pos_;
  Vertex top_ = 0;
  int depth_right_ = 0;
  int depth_left_ = 0;
  int max_gen_ = 0;
};

// Builds the truncation described by `spec` in one deterministic pass: seed,
// then ancestors on the left (each ancestor lists the previous top as its
// first child), then breadth-first layers by generation in vertex-id order.
inline Tree materialize(const TreeSpec& spec)
{
  if (spec.rule) spec.rule->validate();
  if (spec.depth_right < 0 || spec.depth_left < 0) throw Error(ErrorCode::InvalidSpec, "negative depth");

  Vertex n = 1;
  for (auto& [p, c] : spec.edges) {
    if (p < 0 || c < 0) throw Error(ErrorCode::InvalidSpec, "negative vertex id in edge list");
    n = std::max({n, p + 1, c + 1});
  }
  std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoVertex);
  std::vector<std::vector<Vertex>> seed_children(static_cast<std::size_t>(n));
  std::vector<std::uint8_t> touched(static_cast<std::size_t>(n), 0);
  touched[0] = 1;
  for (auto& [p, c] : spec.edges) {
    if (p == c) throw Error(ErrorCode::CycleDetected, "self-loop at vertex " + std::to_string(p));
    if (parent[static_cast<std::size_t>(c)] != kNoVertex)
      throw Error(ErrorCode::MultipleParents, "vertex " + std::to_string(c) + " has two parents");
    parent[static_cast<std::size_t>(c)] = p;
    seed_children[static_cast<std::size_t>(p)].push_back(c);
    touched[static_cast<std::size_t>(p)] = touched[static_cast<std::size_t>(c)] = 1;
  }
  for (Vertex v = 0; v < n; ++v)
    if (!touched[static_cast<std::size_t>(v)])
      throw Error(ErrorCode::Disconnected, "vertex " + std::to_string(v) + " is isolated (ids must be dense)");

  // Cycle detection and depth from the top by iterated parents.
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> roots;
  for (Vertex v = 0; v < n; ++v)
    if (parent[static_cast<std::size_t>(v)] == kNoVertex) {
      roots.push_back(v);
      depth[static_cast<std::size_t>(v)] = 0;
    }
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> path;
    Vertex w = v;
    while (depth[static_cast<std::size_t>(w)] < 0) {
      path.push_back(w);
      if (path.size() > static_cast<std::size_t>(n))
        throw Error(ErrorCode::CycleDetected, "cycle through vertex " + std::to_string(v));
      w = parent[static_cast<std::size_t>(w)];
      if (w == kNoVertex) break;
    }
    int d = depth[static_cast<std::size_t>(w)];
    for (auto it = path.rbegin(); it != path.rend(); ++it) depth[static_cast<std::size_t>(*it)] = ++d;
  }
  if (roots.empty()) throw Error(ErrorCode::CycleDetected, "no parentless vertex");
  if (roots.size() > 1)
    throw Error(ErrorCode::MultipleRoots, std::to_string(roots.size()) + " parentless vertices");
  Vertex top = roots.front();
  if (spec.rooted && top != 0) throw Error(ErrorCode::InvalidSpec, "rooted trees must have the root as vertex 0");

  std::vector<int> gen(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) gen[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(v)] - depth[0];

  std::vector<std::uint8_t> anchor_sub(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    Vertex w = v;
    while (w != kNoVertex && w != 0) w = parent[static_cast<std::size_t>(w)];
    anchor_sub[static_cast<std::size_t>(v)] = (w == 0);
  }

  // Working storage. Rule-expanded vertices get consecutive children, so we
  // keep (first, count) and only store explicit lists for seed vertices and
  // ancestors.
  std::vector<Vertex> first(static_cast<std::size_t>(n), kNoVertex);
  std::vector<std::uint32_t> count(static_cast<std::size_t>(n), 0);
  std::map<Vertex, std::vector<Vertex>> explicit_lists;
  for (Vertex v = 0; v < n; ++v)
    if (!seed_children[static_cast<std::size_t>(v)].empty())
      explicit_lists[v] = std::move(seed_children[static_cast<std::size_t>(v)]);
  std::vector<std::uint8_t> expandable(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> frontier(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v)
    if (!explicit_lists.count(v) && spec.rule) expandable[static_cast<std::size_t>(v)] = 1;
  if (!spec.rule)
    for (Vertex f : spec.frontier) {
      if (f < 0 || f >= n) throw Error(ErrorCode::InvalidSpec, "frontier vertex out of range");
      if (explicit_lists.count(f)) throw Error(ErrorCode::InvalidSpec, "frontier vertex has children");
      frontier[static_cast<std::size_t>(f)] = 1;
    }

  std::map<int, std::int64_t> ordinal_counter;
  std::vector<std::int64_t> ordinal(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v)
    if (anchor_sub[static_cast<std::size_t>(v)])
      ordinal[static_cast<std::size_t>(v)] = ordinal_counter[gen[static_cast<std::size_t>(v)]]++;

  auto add_vertex = [&](Vertex p, int g, bool in_anchor) {
    Vertex id = static_cast<Vertex>(parent.size());
    if (parent.size() >= spec.max_vertices)
      throw Error(ErrorCode::SizeLimit, "materialization exceeds " + std::to_string(spec.max_vertices) + " vertices");
    parent.push_back(p);
    gen.push_back(g);
    anchor_sub.push_back(in_anchor);
    first.push_back(kNoVertex);
    count.push_back(0);
    expandable.push_back(1);
    frontier.push_back(0);
    ordinal.push_back(in_anchor ? ordinal_counter[g]++ : -1);
    return id;
  };

  if (!spec.rooted && spec.rule) {
    while (-gen[static_cast<std::size_t>(top)] < spec.depth_left) {
      int g = gen[static_cast<std::size_t>(top)] - 1;
      RuleContext c;
      c.generation = g;
      c.ancestor = true;
      long d = spec.rule->degree(c);
      Vertex a = add_vertex(kNoVertex, g, false);
      expandable[static_cast<std::size_t>(a)] = 0;
      parent[static_cast<std::size_t>(top)] = a;
      std::vector<Vertex> kids{top};
      for (long i = 1; i < d; ++i) kids.push_back(add_vertex(a, g + 1, false));
      explicit_lists[a] = std::move(kids);
      top = a;
    }
  }

  if (spec.rule) {
    std::map<int, std::vector<Vertex>> layers;
    for (Vertex v = 0; v < static_cast<Vertex>(parent.size()); ++v) layers[gen[static_cast<std::size_t>(v)]].push_back(v);
    int g = layers.begin()->first;
    for (; g < spec.depth_right; ++g) {
      auto it = layers.find(g);
      if (it == layers.end()) continue;
      std::vector<Vertex> next;
      for (Vertex v : it->second) {
        auto vi = static_cast<std::size_t>(v);
        if (!expandable[vi]) continue;
        RuleContext c;
        c.generation = g;
        c.ordinal = ordinal[vi];
        long d = spec.rule->degree(c);
        bool in_anchor = anchor_sub[vi] != 0;
        Vertex f = kNoVertex;
        for (long i = 0; i < d; ++i) {
          Vertex id = add_vertex(v, g + 1, in_anchor);
          if (i == 0) f = id;
          next.push_back(id);
        }
        first[vi] = f;
        count[vi] = static_cast<std::uint32_t>(d);
        expandable[vi] = 0;
      }
      auto& dst = layers[g + 1];
      dst.insert(dst.end(), next.begin(), next.end());
    }
    for (std::size_t v = 0; v < parent.size(); ++v)
      if (expandable[v]) frontier[v] = 1;
  }

  Tree t;
  t.spec_ = spec;
  std::size_t total = parent.size();
  t.child_off_.assign(total + 1, 0);
  for (std::size_t v = 0; v < total; ++v) {
    auto it = explicit_lists.find(static_cast<Vertex>(v));
    std::size_t k = it != explicit_lists.end() ? it->second.size() : count[v];
    t.child_off_[v + 1] = t.child_off_[v] + k;
  }
  t.child_ids_.resize(t.child_off_[total]);
  t.child_pos_.assign(total, 0);
  for (std::size_t v = 0; v < total; ++v) {
    auto it = explicit_lists.find(static_cast<Vertex>(v));
    std::uint64_t o = t.child_off_[v];
    if (it != explicit_lists.end()) {
      for (std::size_t i = 0; i < it->second.size(); ++i) t.child_ids_[o + i] = it->second[i];
    } else {
      for (std::uint32_t i = 0; i < count[v]; ++i) t.child_ids_[o + i] = first[v] + i;
    }
    for (std::uint64_t i = o; i < t.child_off_[v + 1]; ++i)
      t.child_pos_[static_cast<std::size_t>(t.child_ids_[i])] = static_cast<std::uint32_t>(i - o);
  }
  t.parent_ = std::move(parent);
  t.gen_ = std::move(gen);
  t.frontier_ = std::move(frontier);
  t.anchor_sub_ = std::move(anchor_sub);
  t.top_ = top;
  t.max_gen_ = *std::max_element(t.gen_.begin(), t.gen_.end());
  t.depth_left_ = -t.gen_[static_cast<std::size_t>(top)];
  t.depth_right_ = spec.rule ? spec.depth_right : t.max_gen_;
  return t;
}

inline Tree build_tree(const TreeSpec& spec) { return materialize(spec); }

// Re-materializes from the same seed and rule, so the result depends only on
// the final horizon and never on the extension history.
inline Tree extend_to_horizon(const Tree& t, int depth_right, int depth_left)
{
  if (!t.has_rule()) throw Error(ErrorCode::FrontierHit, "tree has no extension rule");
  TreeSpec s = t.spec();
  s.depth_right = std::max(depth_right, t.spec().depth_right);
  s.depth_left = t.rooted() ? 0 : std::max(depth_left, t.spec().depth_left);
  return materialize(s);
}

inline int generation_index(const Tree& t, Vertex v) { return t.generation(v); }

// prt^n(v). Absent on a rooted tree that runs out of ancestors; on an unrooted
// truncation running out of materialized ancestors is an error.
inline std::optional<Vertex> ancestor(const Tree& t, Vertex v, int n)
{
  if (n < 0) throw Error(ErrorCode::InvalidSpec, "negative ancestor depth");
  Vertex w = v;
  (void)t.generation(v);
  for (int k = 0; k < n; ++k) {
    Vertex p = t.parent(w);
    if (p == kNoVertex) {
      if (t.rooted()) return std::nullopt;
      throw Error(ErrorCode::TruncationExceeded,
                  "prt^" + std::to_string(n) + "(" + std::to_string(v) + ") is beyond the left horizon");
    }
    w = p;
  }
  return w;
}

// Chi^n(v) in increasing vertex order.
inline std::vector<Vertex> descendants(const Tree& t, Vertex v, int n)
{
  if (n < 0) throw Error(ErrorCode::InvalidSpec, "negative descendant depth");
  std::vector<Vertex> cur{v}, next;
  (void)t.generation(v);
  for (int k = 0; k < n; ++k) {
    next.clear();
    for (Vertex w : cur) {
      if (t.is_frontier(w))
        throw Error(ErrorCode::FrontierHit, "Chi^" + std::to_string(n) + "(" + std::to_string(v) +
                                                ") needs children of frontier vertex " + std::to_string(w));
      auto ch = t.children(w);
      next.insert(next.end(), ch.begin(), ch.end());
    }
    cur.swap(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

// Extends the tree (when it has a rule) so that Chi^n(v) is materialized.
inline Tree ensure_descendants(const Tree& t, Vertex v, int n)
{
  int need = t.generation(v) + n;
  if (need <= t.depth_right() || !t.has_rule()) return t;
  return extend_to_horizon(t, need, t.depth_left());
}

inline Vertex lowest_common_ancestor(const Tree& t, Vertex a, Vertex b)
{
  while (t.generation(a) > t.generation(b)) a = t.parent(a);
  while (t.generation(b) > t.generation(a)) b = t.parent(b);
  while (a != b) {
    a = t.parent(a);
    b = t.parent(b);
    if (a == kNoVertex || b == kNoVertex) throw Error(ErrorCode::Disconnected, "no common ancestor");
  }
  return a;
}

// Undirected graph distance from the anchor.
inline std::vector<int> distance_from_anchor(const Tree& t)
{
  std::vector<int> d(t.size(), -1);
  std::vector<Vertex> queue{0};
  d[0] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Vertex v = queue[h];
    auto visit = [&](Vertex w) {
      if (w != kNoVertex && d[static_cast<std::size_t>(w)] < 0) {
        d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
    };
    visit(t.parent(v));
    for (Vertex c : t.children(v)) visit(c);
  }
  return d;
}

// V \ {v0} ordered by undirected distance from the anchor, then vertex id. On
// rooted trees this is breadth-first by generation.
inline std::vector<Vertex> enumeration_by_distance(const Tree& t)
{
  auto d = distance_from_anchor(t);
  std::vector<Vertex> out;
  for (Vertex v = 1; v < static_cast<Vertex>(t.size()); ++v) out.push_back(v);
  std::stable_sort(out.begin(), out.end(), [&](Vertex a, Vertex b) {
    return d[static_cast<std::size_t>(a)] < d[static_cast<std::size_t>(b)];
  });
  return out;
}

inline StructureReport classify(const Tree& t)
{
  StructureReport r;
  r.rooted = t.rooted();
  r.vertices = t.size();
  r.depth_right = t.depth_right();
  r.depth_left = t.depth_left();
  long maxdeg = 0;
  std::map<int, long> deg_by_gen;
  bool sym = true;
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    long d = static_cast<long>(t.outdegree(v));
    if (t.is_frontier(v)) continue;
    if (d == 0) r.leafless = false;
    maxdeg = std::max(maxdeg, d);
    auto [it, inserted] = deg_by_gen.emplace(t.generation(v), d);
    if (!inserted && it->second != d) sym = false;
  }
  r.symmetric = sym;
  r.max_outdegree = maxdeg;
  const auto& rule = t.rule();
  if (t.pure_rule()) {
    switch (rule->kind) {
      case ExtensionRule::Kind::Constant:
        r.symmetric = true;
        r.symmetric_exact = true;
        r.max_outdegree = rule->constant;
        r.max_outdegree_exact = true;
        r.free_left_end = t.rooted() ? Tri::No : (rule->constant == 1 ? Tri::Yes : Tri::No);
        break;
      case ExtensionRule::Kind::Symmetric: {
        r.symmetric = true;
        r.symmetric_exact = true;
        r.max_outdegree_infinite = rule->gamma.unbounded();
        r.max_outdegree = r.max_outdegree_infinite ? maxdeg : rule->gamma.max_value();
        r.max_outdegree_exact = true;
        auto tail = rule->gamma.left_tail_constant();
        r.free_left_end = t.rooted() ? Tri::No : (tail ? (*tail == 1 ? Tri::Yes : Tri::No) : Tri::No);
        break;
      }
      case ExtensionRule::Kind::Table: {
        long m = rule->fallback;
        for (auto& [g, row] : rule->rows)
          for (long x : row) m = std::max(m, x);
        for (long x : rule->left.values) m = std::max(m, x);
        r.max_outdegree = m;
        r.max_outdegree_exact = true;
        if (t.rooted()) {
          r.free_left_end = Tri::No;
        } else {
          bool all_one = true;
          if (rule->left.empty()) {
            all_one = rule->fallback == 1;
          } else {
            for (std::size_t i = rule->left.prefix(); i < rule->left.values.size(); ++i)
              if (rule->left.values[i] != 1) all_one = false;
          }
          r.free_left_end = all_one ? Tri::Yes : Tri::No;
        }
        break;
      }
      case ExtensionRule::Kind::Procedural:
        r.free_left_end = t.rooted() ? Tri::No : Tri::Unknown;
        break;
    }
  } else {
    r.free_left_end = t.rooted() ? Tri::No : Tri::Unknown;
    r.max_outdegree_exact = !t.has_rule() && [&] {
      for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
        if (t.is_frontier(v)) return false;
      return true;
    }();
  }
  r.branchless_Z = !r.rooted && r.max_outdegree == 1;
  return r;
}

}  // namespace tsl
