#pragma once

// JSON formats for trees, weights and transcripts, and JSON renderings of
// every report.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "constructor.hpp"
#include "dynamics.hpp"
#include "witnesses.hpp"

namespace tsl {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidSpec, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidSpec, "'" + path + "': " + e.what());
  }
}

inline void need(const json& j, const char* key, const char* what)
{
  if (!j.contains(key)) throw Error(ErrorCode::InvalidSpec, std::string(what) + " needs \"" + key + "\"");
}

// ---- scalars ----

// Number, "p/q" string, or {"re":..,"im":..} (reduced to its modulus).
template <class T>
T parse_scalar(const json& j, bool* phase = nullptr)
{
  if (j.is_object()) {
    need(j, "re", "complex value");
    T re = parse_scalar<T>(j["re"]);
    T im = j.contains("im") ? parse_scalar<T>(j["im"]) : T(0);
    if (phase && (im != T(0) || re < T(0))) *phase = true;
    T sq = re * re + im * im;
    if constexpr (is_exact_v<T>)
      return exact_root(sq, 2);
    else
      return std::sqrt(sq);
  }
  T x;
  if (j.is_string()) {
    if constexpr (is_exact_v<T>)
      x = parse_rational(j.get<std::string>());
    else
      x = to_double(parse_rational(j.get<std::string>()));
  } else if (j.is_number_integer()) {
    x = T(j.get<std::int64_t>());
  } else if (j.is_number()) {
    if constexpr (is_exact_v<T>)
      x = parse_rational(j.dump());
    else
      x = j.get<double>();
  } else {
    throw Error(ErrorCode::InvalidSpec, "expected a number, got " + j.dump());
  }
  if (phase && x < T(0)) *phase = true;
  return x;
}

template <class T>
json scalar_json(const T& x)
{
  if constexpr (is_exact_v<T>) {
    if (boost::multiprecision::denominator(x) == 1) {
      BigInt n = boost::multiprecision::numerator(x);
      if (boost::multiprecision::abs(n) < BigInt(1) << 53) return json(static_cast<std::int64_t>(n));
    }
    return json(x.str());
  } else {
    if (std::isinf(x)) return json("inf");
    return json(x);
  }
}

inline json double_json(double x)
{
  if (std::isinf(x)) return json(x > 0 ? "inf" : "-inf");
  if (std::isnan(x)) return json(nullptr);
  return json(x);
}

inline std::vector<long> long_list(const json& j)
{
  std::vector<long> out;
  for (auto& x : j) out.push_back(x.get<long>());
  return out;
}

inline EventuallyPeriodic<long> periodic_longs(const json& j, const char* vals, const char* per)
{
  EventuallyPeriodic<long> e;
  if (!j.contains(vals)) return e;
  e.values = long_list(j[vals]);
  e.period = j.contains(per) ? j[per].get<std::size_t>() : 1;
  if (!e.values.empty()) e.validate(vals);
  return e;
}

// ---- trees ----

inline ExtensionRule parse_rule(const json& j)
{
  need(j, "kind", "rule");
  auto kind = j["kind"].get<std::string>();
  ExtensionRule r;
  if (kind == "constant") {
    need(j, "n", "constant rule");
    r = ExtensionRule::make_constant(j["n"].get<long>());
  } else if (kind == "symmetric") {
    DegreeProfile g;
    g.kind = DegreeProfile::Kind::Periodic;
    need(j, "gamma", "symmetric rule");
    g.right = periodic_longs(j, "gamma", "period");
    g.left = periodic_longs(j, "left", "left_period");
    r = ExtensionRule::make_symmetric(g);
  } else if (kind == "alternating") {
    DegreeProfile g;
    g.kind = DegreeProfile::Kind::Alternating;
    g.low = j.value("low", 1L);
    g.high = j.value("high", 2L);
    g.a = j.value("a", 1L);
    g.b = j.value("b", 1L);
    g.r = j.value("r", 2L);
    g.left = periodic_longs(j, "left", "left_period");
    r = ExtensionRule::make_symmetric(g);
  } else if (kind == "geometric") {
    DegreeProfile g;
    g.kind = DegreeProfile::Kind::Geometric;
    g.base = j.value("base", 1L);
    g.ratio = j.value("ratio", 2L);
    g.left = periodic_longs(j, "left", "left_period");
    r = ExtensionRule::make_symmetric(g);
  } else if (kind == "table") {
    r.kind = ExtensionRule::Kind::Table;
    if (j.contains("rows"))
      for (auto& [k, v] : j["rows"].items()) r.rows[std::stoi(k)] = long_list(v);
    r.fallback = j.value("default", 1L);
    r.left = periodic_longs(j, "left", "left_period");
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown rule kind '" + kind + "'");
  }
  r.validate();
  return r;
}

inline json rule_json(const ExtensionRule& r)
{
  json j;
  auto put_left = [&](const EventuallyPeriodic<long>& l) {
    if (l.empty()) return;
    j["left"] = l.values;
    j["left_period"] = l.period;
  };
  switch (r.kind) {
    case ExtensionRule::Kind::Constant:
      j["kind"] = "constant";
      j["n"] = r.constant;
      break;
    case ExtensionRule::Kind::Symmetric: {
      const auto& g = r.gamma;
      if (g.kind == DegreeProfile::Kind::Periodic) {
        j["kind"] = "symmetric";
        j["gamma"] = g.right.values;
        j["period"] = g.right.period;
      } else if (g.kind == DegreeProfile::Kind::Alternating) {
        j["kind"] = "alternating";
        j["low"] = g.low;
        j["high"] = g.high;
        j["a"] = g.a;
        j["b"] = g.b;
        j["r"] = g.r;
      } else {
        j["kind"] = "geometric";
        j["base"] = g.base;
        j["ratio"] = g.ratio;
      }
      put_left(g.left);
      break;
    }
    case ExtensionRule::Kind::Table: {
      j["kind"] = "table";
      json rows = json::object();
      for (auto& [g, row] : r.rows) rows[std::to_string(g)] = row;
      j["rows"] = rows;
      j["default"] = r.fallback;
      put_left(r.left);
      break;
    }
    case ExtensionRule::Kind::Procedural: j["kind"] = "procedural"; break;
  }
  return j;
}

inline TreeSpec parse_tree_spec(const json& j)
{
  TreeSpec s;
  s.rooted = j.value("rooted", true);
  if (j.contains("edges"))
    for (auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::InvalidSpec, "edges are [parent, child] pairs");
      s.edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
  if (j.contains("frontier"))
    for (auto& v : j["frontier"]) s.frontier.push_back(v.get<Vertex>());
  if (j.contains("rule")) s.rule = parse_rule(j["rule"]);
  s.depth_right = j.value("depth_right", s.rule ? 4 : 0);
  s.depth_left = j.value("depth_left", (s.rule && !s.rooted) ? 4 : 0);
  return s;
}

inline json tree_spec_json(const TreeSpec& s)
{
  json j;
  j["rooted"] = s.rooted;
  if (!s.edges.empty()) {
    json e = json::array();
    for (auto& [p, c] : s.edges) e.push_back({p, c});
    j["edges"] = e;
  }
  if (!s.frontier.empty()) j["frontier"] = s.frontier;
  if (s.rule) j["rule"] = rule_json(*s.rule);
  j["depth_right"] = s.depth_right;
  j["depth_left"] = s.depth_left;
  return j;
}

inline Tree load_tree(const std::string& path) { return build_tree(parse_tree_spec(read_json_file(path))); }

inline json structure_json(const StructureReport& r)
{
  json j;
  j["rooted"] = r.rooted;
  j["leafless"] = r.leafless;
  j["symmetric"] = r.symmetric;
  j["symmetric_exact"] = r.symmetric_exact;
  j["free_left_end"] = tri_name(r.free_left_end);
  if (r.max_outdegree_infinite)
    j["max_outdegree"] = "inf";
  else
    j["max_outdegree"] = r.max_outdegree;
  j["max_outdegree_exact"] = r.max_outdegree_exact;
  j["branchless_Z"] = r.branchless_Z;
  j["vertices"] = r.vertices;
  j["depth_right"] = r.depth_right;
  j["depth_left"] = r.depth_left;
  return j;
}

// ---- weights ----

template <class T>
ScalarProfile<T> parse_profile(const json& j, bool* phase)
{
  ScalarProfile<T> p;
  need(j, "table", "symmetric weights");
  for (auto& x : j["table"]) p.right.values.push_back(parse_scalar<T>(x, phase));
  p.right.period = j.value("period", std::size_t{1});
  if (j.contains("left")) {
    for (auto& x : j["left"]) p.left.values.push_back(parse_scalar<T>(x, phase));
    p.left.period = j.value("left_period", std::size_t{1});
  }
  return p;
}

inline ConstructedWeights parse_constructed(const json& j);

template <class T>
WeightFamily<T> parse_weights(const json& j)
{
  need(j, "kind", "weights");
  auto kind = j["kind"].get<std::string>();
  bool phase = false;
  WeightFamily<T> w;
  if (kind == "constant") {
    need(j, "value", "constant weights");
    w = WeightFamily<T>::constant(parse_scalar<T>(j["value"], &phase));
  } else if (kind == "symmetric") {
    w = WeightFamily<T>::symmetric(parse_profile<T>(j, &phase));
  } else if (kind == "dirichlet") {
    need(j, "q", "dirichlet weights");
    w = WeightFamily<T>::dirichlet(to_double(parse_scalar<Rational>(j["q"])));
  } else if (kind == "explicit") {
    need(j, "values", "explicit weights");
    std::map<Vertex, T> vals;
    for (auto& [k, v] : j["values"].items()) vals[static_cast<Vertex>(std::stol(k))] = parse_scalar<T>(v, &phase);
    w = WeightFamily<T>::explicit_values(vals);
  } else if (kind == "by_child") {
    need(j, "values", "by_child weights");
    std::vector<T> vals;
    for (auto& x : j["values"]) vals.push_back(parse_scalar<T>(x, &phase));
    w = WeightFamily<T>::child_pattern(std::move(vals));
  } else if (kind == "two_branch") {
    std::string ps = j.contains("pstar") ? (j["pstar"].is_string() ? j["pstar"].get<std::string>() : j["pstar"].dump())
                                         : "2";
    Exponent e = ps == "inf" ? Exponent::infinity() : Exponent::from_double(to_double(parse_rational(ps)));
    w = WeightFamily<T>::two_branch(e);
  } else if (kind == "constructed") {
    if constexpr (is_exact_v<T>)
      throw Error(ErrorCode::InexactArithmetic, "constructed weights are irrational; drop --exact");
    else
      w = parse_constructed(j).family();
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown weight kind '" + kind + "'");
  }
  w.phase = phase;
  return w;
}

template <class T>
json weights_json(const WeightFamily<T>& w, const Tree* t = nullptr)
{
  json j;
  switch (w.kind) {
    case WeightKind::Constant:
      j["kind"] = "constant";
      j["value"] = scalar_json(w.value);
      break;
    case WeightKind::Symmetric: {
      j["kind"] = "symmetric";
      json tab = json::array();
      for (auto& x : w.profile.right.values) tab.push_back(scalar_json(x));
      j["table"] = tab;
      j["period"] = w.profile.right.period;
      if (!w.profile.left.empty()) {
        json l = json::array();
        for (auto& x : w.profile.left.values) l.push_back(scalar_json(x));
        j["left"] = l;
        j["left_period"] = w.profile.left.period;
      }
      break;
    }
    case WeightKind::Dirichlet:
      j["kind"] = "dirichlet";
      j["q"] = w.q;
      break;
    case WeightKind::ByChild: {
      j["kind"] = "by_child";
      json v = json::array();
      for (auto& x : w.by_child) v.push_back(scalar_json(x));
      j["values"] = v;
      break;
    }
    case WeightKind::TwoBranch:
      if (!t) {
        j["kind"] = "two_branch";
        j["pstar"] = w.pstar.str();
        break;
      }
      return weights_json(to_explicit(w, *t));
    case WeightKind::Procedural:
      if (!t) throw Error(ErrorCode::InvalidSpec, "procedural weights need a tree to export");
      return weights_json(to_explicit(w, *t));
    case WeightKind::Explicit: {
      j["kind"] = "explicit";
      json v = json::object();
      for (std::size_t i = 0; i < w.values.size(); ++i)
        if (w.defined[i]) v[std::to_string(i)] = scalar_json(w.values[i]);
      j["values"] = v;
      break;
    }
  }
  return j;
}

// "rolewicz:0.8", "constant:2", "dirichlet:2", "two_branch:2", or a JSON file.
template <class T>
WeightFamily<T> parse_weight_arg(const std::string& arg)
{
  auto colon = arg.find(':');
  if (colon != std::string::npos) {
    std::string kind = arg.substr(0, colon), val = arg.substr(colon + 1);
    json j;
    if (kind == "rolewicz" || kind == "constant") {
      j["kind"] = "constant";
      j["value"] = val;
    } else if (kind == "dirichlet") {
      j["kind"] = "dirichlet";
      j["q"] = val;
    } else if (kind == "two_branch") {
      j["kind"] = "two_branch";
      j["pstar"] = val;
    } else {
      throw Error(ErrorCode::InvalidSpec, "unknown weight shorthand '" + kind + "'");
    }
    return parse_weights<T>(j);
  }
  return parse_weights<T>(read_json_file(arg));
}

// ---- vectors ----

template <class T>
json vector_json(const FinVector<T>& f)
{
  json j = json::object();
  for (auto& [v, x] : f) j[std::to_string(v)] = scalar_json(x);
  return j;
}

template <class T>
FinVector<T> parse_vector(const json& j)
{
  FinVector<T> f;
  if (j.is_array()) {
    for (auto& v : j) f.add(v.get<Vertex>(), T(1));
    return f;
  }
  for (auto& [k, v] : j.items()) f.add(static_cast<Vertex>(std::stol(k)), parse_scalar<T>(v));
  return f;
}

// ---- reports ----

template <class T>
json norm_json(const NormReport<T>& r)
{
  json j;
  j["formula"] = r.formula;
  j["bounded"] = tri_name(r.bounded);
  j["exact"] = r.exact;
  j["value"] = double_json(r.value);
  if (r.value_exact) j["value_exact"] = scalar_json(*r.value_exact);
  if (r.inner) j["inner"] = scalar_json(*r.inner);
  j["power"] = r.power.str();
  if (r.arg_sup != kNoVertex)
    j["arg_sup"] = r.arg_sup;
  else
    j["arg_sup"] = nullptr;
  if (r.arg_generation)
    j["arg_generation"] = *r.arg_generation;
  j["horizon"] = r.horizon;
  return j;
}

inline json verdict_json(const Verdict& v)
{
  json j;
  j["verdict"] = status_name(v.status);
  j["property"] = property_name(v.property);
  j["rule"] = v.witness.rule;
  if (v.status == Status::Supported || v.status == Status::Undetermined) j["horizon"] = v.horizon;
  json w;
  w["params"] = v.witness.params;
  w["vertices"] = v.witness.vertices;
  j["witness"] = w;
  json d = json::array();
  for (auto& p : v.witness.diagnostics) d.push_back({{"v", p.v}, {"n", p.n}, {"kind", p.kind}, {"value", double_json(p.value)}});
  j["diagnostics"] = d;
  return j;
}

inline json certification_json(const Certification& c)
{
  return json{{"hypercyclic", verdict_json(c.hc)}, {"mixing", verdict_json(c.mixing)}};
}

template <class T>
json witness_json(const WitnessBundle<T>& b)
{
  json j;
  j["v"] = b.v;
  j["n"] = b.n;
  if (b.top != kNoVertex) j["top"] = b.top;
  j["R"] = vector_json(b.R_vec);
  if (b.branch != Branch::None) {
    j["I"] = vector_json(b.I_vec);
    j["branch"] = branch_name(b.branch);
    j["M"] = scalar_json(b.M);
    j["bound_pstar"] = scalar_json(b.bound_pstar);
    j["bound"] = double_json(b.bound);
  }
  return j;
}

inline json audit_json(const AuditReport& a)
{
  json rows = json::array();
  for (auto& r : a.rows) {
    json x{{"v", r.v}, {"n", r.n}, {"Bn_ev", r.Bn_ev}, {"R_norm", r.R_norm}, {"BR_residual", r.BR_residual}};
    if (r.has_I) {
      x["I_residual"] = r.I_residual;
      x["BI_norm"] = r.BI_norm;
      x["bound"] = r.bound;
      x["branch"] = r.branch;
    }
    rows.push_back(x);
  }
  json j;
  j["rows"] = rows;
  json rd = json::object(), id = json::object();
  for (auto& [v, f] : a.R_decay) rd[std::to_string(v)] = f;
  for (auto& [v, f] : a.I_decay) id[std::to_string(v)] = f;
  j["R_decay"] = rd;
  if (!a.I_decay.empty()) j["I_decay"] = id;
  j["exact_identity"] = a.exact_identity;
  return j;
}

template <class T>
json sufficient_json(const SufficientReport<T>& r)
{
  json j;
  j["v"] = r.v;
  j["n"] = r.n;
  auto arr = [](const std::vector<double>& x) {
    json a = json::array();
    for (double y : x) a.push_back(double_json(y));
    return a;
  };
  j["lambda_big"] = arr(r.lambda_big);
  j["normalized"] = arr(r.normalized);
  j["remark"] = arr(r.remark);
  if (!r.left_product.empty()) j["left_product"] = arr(r.left_product);
  j["fires"] = {{"necessary", r.necessary_fires},
                {"normalized", r.normalized_fires},
                {"remark", r.remark_fires},
                {"left_product", r.left_fires}};
  return j;
}

inline json transcript_json(const ConstructionTranscript& t)
{
  json j;
  j["anchor"] = t.anchor;
  j["rooted"] = t.rooted;
  j["space"] = t.space;
  j["stages"] = t.stages;
  j["horizon"] = t.horizon;
  j["left_depth"] = t.left_depth;
  j["depth_right"] = t.depth_right;
  j["enumeration"] = t.enumeration;
  j["N"] = t.N;
  json st = json::array();
  for (auto& s : t.stage) {
    json x;
    x["k"] = s.k;
    x["m"] = s.m;
    x["n"] = s.n;
    x["r"] = s.r;
    x["s"] = s.s;
    x["damping"] = s.damping;
    x["v0_before"] = double_json(s.v0_before);
    x["v0_at_m"] = s.v0_at_m;
    x["alpha"] = s.alpha;
    x["lineage_roots"] = s.lineage_roots;
    x["max_budget"] = s.max_budget;
    x["budget_ok"] = s.budget_ok;
    st.push_back(x);
  }
  j["stage"] = st;
  return j;
}

inline ConstructionTranscript parse_transcript(const json& j)
{
  ConstructionTranscript t;
  t.anchor = j.value("anchor", 0);
  t.rooted = j.value("rooted", true);
  t.space = j.value("space", std::string());
  t.stages = j.value("stages", 0);
  t.horizon = j.value("horizon", 0);
  t.left_depth = j.value("left_depth", 0);
  t.depth_right = j.value("depth_right", 0);
  need(j, "enumeration", "transcript");
  need(j, "stage", "transcript");
  t.enumeration = j["enumeration"].get<std::vector<Vertex>>();
  t.N = j["N"].get<std::vector<int>>();
  for (auto& x : j["stage"]) {
    StageRecord s;
    s.k = x.value("k", 0);
    s.m = x.at("m").get<int>();
    s.n = x.at("n").get<int>();
    s.r = x.at("r").get<int>();
    s.s = x.value("s", s.r - s.m);
    s.damping = x.value("damping", 1.0);
    if (x.contains("v0_before") && x["v0_before"].is_number()) s.v0_before = x["v0_before"].get<double>();
    s.v0_at_m = x.value("v0_at_m", 0.0);
    if (x.contains("alpha")) s.alpha = x["alpha"].get<std::vector<double>>();
    s.lineage_roots = x.value("lineage_roots", std::uint64_t{0});
    s.max_budget = x.value("max_budget", 0.0);
    s.budget_ok = x.value("budget_ok", true);
    t.stage.push_back(s);
  }
  if (t.enumeration.size() != t.N.size()) throw Error(ErrorCode::InvalidSpec, "transcript enumeration and N differ");
  if (static_cast<int>(t.enumeration.size()) < static_cast<int>(t.stage.size()))
    throw Error(ErrorCode::InvalidSpec, "transcript enumeration shorter than the stage list");
  return t;
}

inline json verify_json(const VerifyReport& r)
{
  json c = json::array();
  for (auto& x : r.clauses) c.push_back({{"clause", x.name}, {"result", x.pass ? "PASS" : "FAIL"}, {"detail", x.detail}});
  return json{{"all_pass", r.all_pass()}, {"method", r.method}, {"clauses", c}};
}

// Constructed weights are stored by their stage windows; the values follow
// from the tree.
inline json constructed_json(const ConstructedWeights& w)
{
  json j;
  j["kind"] = "constructed";
  j["space"] = w.space;
  j["rooted"] = w.rooted;
  j["left_depth"] = w.left_depth;
  j["anchor"] = w.anchor;
  j["enumeration"] = w.enumeration;
  json ws = json::array();
  for (auto& x : w.windows) ws.push_back({{"lo", x.lo}, {"m", x.m}, {"r", x.r}, {"c", x.c}});
  j["windows"] = ws;
  return j;
}

inline ConstructedWeights parse_constructed(const json& j)
{
  ConstructedWeights w;
  need(j, "space", "constructed weights");
  need(j, "windows", "constructed weights");
  w.space = j["space"].get<std::string>();
  w.b = detail::budget_for(parse_space<double>(w.space));
  w.rooted = j.value("rooted", true);
  w.left_depth = j.value("left_depth", 0);
  w.anchor = j.value("anchor", Vertex{0});
  if (j.contains("enumeration")) w.enumeration = j["enumeration"].get<std::vector<Vertex>>();
  int prev = 0;
  for (auto& x : j["windows"]) {
    StageWindow s{x.at("lo").get<int>(), x.at("m").get<int>(), x.at("r").get<int>(), x.at("c").get<double>()};
    if (s.lo != prev || s.lo > s.m || s.m > s.r || !(s.c > 0))
      throw Error(ErrorCode::InvalidSpec, "constructed weight windows must tile [0, r) with c > 0");
    prev = s.r;
    w.windows.push_back(s);
  }
  return w;
}

inline bool is_constructed(const json& j) { return j.is_object() && j.value("kind", std::string()) == "constructed"; }

}  // namespace tsl
