// Command-line front end: certify, diagnose and construct weighted shifts on
// directed trees.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tsl/tsl.hpp>

using namespace tsl;

namespace {

struct Options {
  std::string tree, weights = "constant:1", mu, space = "l2", property, expect, format = "text", out, transcript;
  std::string direction = "backward", vector, mode, basis, seq;
  std::optional<int> horizon, left;
  std::optional<double> threshold;
  int stages = 3, vertex = 0, n = 4, power = 1;
  bool exact = false, audit = false;
};

// Exit status 2: a computed answer contradicts --expect, or verify failed.
struct Contradiction {
  std::string what;
};

void emit(const Options& o, const json& j, const std::string& text)
{
  std::string body = o.format == "json" ? j.dump(2) + "\n" : text;
  if (o.out.empty() || o.format != "json") {
    std::cout << body;
  }
  if (!o.out.empty() && o.format == "json") {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorCode::InvalidSpec, "cannot write '" + o.out + "'");
    f << body;
  }
}

void write_file(const std::string& path, const json& j)
{
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidSpec, "cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

bool is_constructed_arg(const std::string& arg)
{
  if (arg.find(':') != std::string::npos) return false;
  return is_constructed(read_json_file(arg));
}

Tree load_tree_opts(const Options& o, std::optional<int> left_override = std::nullopt)
{
  if (o.tree.empty()) throw Error(ErrorCode::InvalidSpec, "--tree is required");
  TreeSpec s = parse_tree_spec(read_json_file(o.tree));
  if (s.rule) {
    if (o.horizon) s.depth_right = *o.horizon;
    if (o.left && !s.rooted) s.depth_left = *o.left;
    if (left_override && !s.rooted) s.depth_left = *left_override;
  }
  return build_tree(s);
}

template <class T>
SpaceSpec<T> space_opts(const Options& o)
{
  auto s = parse_space<T>(o.space);
  if (!o.mu.empty()) s.mu = parse_weight_arg<T>(o.mu);
  return s;
}

template <class T>
WeightFamily<T> weights_opts(const Options& o)
{
  return parse_weight_arg<T>(o.weights);
}

Direction direction_opts(const Options& o)
{
  if (o.direction == "backward") return Direction::Backward;
  if (o.direction == "forward") return Direction::Forward;
  throw Error(ErrorCode::InvalidSpec, "--direction is backward or forward");
}

template <class T>
std::vector<T> scalar_list(const std::string& s)
{
  std::vector<T> out;
  std::string body = s;
  if (!body.empty() && body.front() == '[') {
    for (auto& x : json::parse(body)) out.push_back(parse_scalar<T>(x));
    return out;
  }
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_scalar<T>(json(item)));
  return out;
}

std::vector<int> int_list(const std::string& s)
{
  std::vector<int> out;
  for (auto& x : scalar_list<Rational>(s)) {
    if (boost::multiprecision::denominator(x) != 1) throw Error(ErrorCode::InvalidSpec, "expected integers in '" + s + "'");
    out.push_back(static_cast<int>(boost::multiprecision::numerator(x)));
  }
  return out;
}

template <class T>
FinVector<T> vector_opts(const Options& o)
{
  if (o.vector.empty()) return FinVector<T>::basis(o.vertex);
  std::string v = o.vector;
  json j = (v.front() == '{' || v.front() == '[') ? json::parse(v) : read_json_file(v);
  return parse_vector<T>(j);
}

std::string lines(const json& j, const std::string& indent = "")
{
  std::string out;
  for (auto& [k, v] : j.items()) {
    if (v.is_object() && !v.empty()) {
      out += indent + k + ":\n" + lines(v, indent + "  ");
    } else {
      out += indent + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
  }
  return out;
}

Status parse_status(const std::string& s)
{
  if (s == "proven") return Status::Proven;
  if (s == "refuted") return Status::Refuted;
  if (s == "supported") return Status::Supported;
  if (s == "undetermined") return Status::Undetermined;
  throw Error(ErrorCode::InvalidSpec, "unknown verdict '" + s + "'");
}

Property parse_property(const std::string& s)
{
  if (s == "hc" || s == "hypercyclic") return Property::Hypercyclic;
  if (s == "mixing") return Property::Mixing;
  throw Error(ErrorCode::InvalidSpec, "--property is hc or mixing");
}

// --expect proven|refuted|supported|undetermined compares the verdict;
// --expect hc|mixing asserts that property, so only Refuted contradicts it.
void check_expect(const Options& o, const Certification& c)
{
  if (o.expect.empty()) return;
  if (o.expect == "hc" || o.expect == "hypercyclic" || o.expect == "mixing") {
    const Verdict& v = c.get(parse_property(o.expect));
    if (v.status == Status::Refuted)
      throw Contradiction{std::string(property_name(v.property)) + " asserted but refuted by " + v.witness.rule};
    return;
  }
  Status want = parse_status(o.expect);
  Property p = o.property.empty() ? Property::Hypercyclic : parse_property(o.property);
  const Verdict& v = c.get(p);
  if (v.status != want)
    throw Contradiction{std::string("expected ") + status_name(want) + ", got " + status_name(v.status)};
}

// ---- verbs ----

void cmd_inspect(const Options& o)
{
  Tree t = load_tree_opts(o);
  auto r = classify(t);
  json j{{"command", "inspect"}, {"structure", structure_json(r)}};
  emit(o, j, lines(j["structure"]));
}

template <class T>
void cmd_norm(const Options& o)
{
  Tree t = load_tree_opts(o);
  auto lam = weights_opts<T>(o);
  auto s = space_opts<T>(o);
  auto r = operator_norm(t, lam, s, direction_opts(o));
  json j{{"command", "norm"}, {"direction", o.direction}, {"space", s.name()}, {"norm", norm_json(r)}};
  std::string text = "formula: " + r.formula + "\nnorm: " + (r.bounded == Tri::No ? "inf" : to_string(r.value)) +
                     (r.exact ? " (exact)" : " (lower bound on the truncation)") + "\n";
  if (r.arg_sup != kNoVertex) text += "arg_sup: vertex " + std::to_string(r.arg_sup) + "\n";
  if (r.arg_generation) text += "arg_sup: generation " + std::to_string(*r.arg_generation) + "\n";
  emit(o, j, text);
}

template <class T>
void cmd_apply(const Options& o)
{
  Tree t = load_tree_opts(o);
  auto lam = weights_opts<T>(o);
  auto f = vector_opts<T>(o);
  auto g = direction_opts(o) == Direction::Forward ? apply_forward_pow(t, lam, f, o.power)
                                                   : apply_backward_pow(t, lam, f, o.power);
  json j{{"command", "apply"}, {"direction", o.direction}, {"power", o.power}, {"input", vector_json(f)},
         {"output", vector_json(g)}};
  std::string text;
  for (auto& [v, x] : g) text += std::to_string(v) + " " + to_string(x) + "\n";
  if (g.empty()) text = "zero\n";
  emit(o, j, text);
}

std::string verdict_text(const Verdict& v)
{
  std::string s = std::string(property_name(v.property)) + ": " + status_name(v.status) + " [" + v.witness.rule + "]";
  if (v.status == Status::Supported || v.status == Status::Undetermined) s += " horizon " + std::to_string(v.horizon);
  for (auto& [k, x] : v.witness.params) s += " " + k + "=" + x;
  if (!v.witness.vertices.empty()) {
    s += " vertices";
    for (Vertex w : v.witness.vertices) s += " " + std::to_string(w);
  }
  return s + "\n";
}

template <class T>
Certification certify_opts(const Options& o, std::string& space_name)
{
  if (is_constructed_arg(o.weights)) {
    if constexpr (is_exact_v<T>) {
      throw Error(ErrorCode::InexactArithmetic, "constructed weights are irrational; drop --exact");
    } else {
      if (o.transcript.empty()) throw Error(ErrorCode::InvalidSpec, "constructed weights need --transcript");
      if (direction_opts(o) != Direction::Backward) throw Error(ErrorCode::InvalidSpec, "constructed weights are backward");
      auto s = parse_space<double>(o.space);
      space_name = s.name();
      Tree t0 = build_tree(parse_tree_spec(read_json_file(o.tree)));
      return certify_constructed(t0, parse_constructed(read_json_file(o.weights)),
                                 parse_transcript(read_json_file(o.transcript)), s);
    }
  }
  Tree t = load_tree_opts(o);
  auto lam = weights_opts<T>(o);
  auto s = space_opts<T>(o);
  space_name = s.name();
  CertifyPolicy pol;
  if (o.horizon) pol.horizon = *o.horizon;
  if (o.threshold) pol.threshold = *o.threshold;
  return direction_opts(o) == Direction::Forward ? certify_forward(t, lam, s, pol) : certify_backward(t, lam, s, pol);
}

template <class T>
void cmd_certify(const Options& o)
{
  std::string space_name;
  auto c = certify_opts<T>(o, space_name);
  json j{{"command", "certify"}, {"direction", o.direction}, {"space", space_name}};
  std::string text;
  if (o.property.empty()) {
    j["report"] = certification_json(c);
    text = verdict_text(c.hc) + verdict_text(c.mixing);
  } else {
    const Verdict& v = c.get(parse_property(o.property));
    j["report"] = verdict_json(v);
    text = verdict_text(v);
  }
  emit(o, j, text);
  check_expect(o, c);
}

template <class T>
void cmd_diagnose(const Options& o)
{
  std::optional<int> left;
  if (is_constructed_arg(o.weights)) left = parse_constructed(read_json_file(o.weights)).left_depth;
  Tree t = load_tree_opts(o, left);
  auto lam = weights_opts<T>(o);
  auto s = space_opts<T>(o);
  Vertex v = o.vertex;
  int H = o.n;
  t = ensure_descendants(t, v, H);
  auto w = absorb_mu(lam, s.mu);
  auto series = main_series(t, lam, s, v, H);
  json j{{"command", "diagnose"}, {"vertex", v}, {"space", s.name()}};
  json ms = json::array();
  std::string text = "n main";
  for (auto& x : series) ms.push_back(scalar_json(x));
  j["main"] = ms;
  bool unrooted = !t.rooted();
  json par = json::array();
  if (unrooted) {
    text += " parent";
    for (int n = 1; n <= H; ++n) {
      try {
        if (t.depth_left() < n - t.generation(v)) t = extend_to_horizon(t, t.depth_right(), n - t.generation(v));
        par.push_back(scalar_json(unrooted_diagnostics(t, lam, s, v, n).parent));
      } catch (const Error&) {
        par.push_back(nullptr);
      }
    }
    j["parent"] = par;
  }
  text += "\n";
  for (int n = 1; n <= H; ++n) {
    text += std::to_string(n) + " " + to_string(series[static_cast<std::size_t>(n)]);
    if (unrooted) {
      auto& x = par[static_cast<std::size_t>(n - 1)];
      text += " " + (x.is_null() ? std::string("-") : (x.is_string() ? x.get<std::string>() : x.dump()));
    }
    text += "\n";
  }
  if (s.mu.is_constant()) {
    auto sr = sufficient_report(t, w, s.p, v, H, o.threshold.value_or(1e3));
    j["sufficient"] = sufficient_json(sr);
    text += std::string("necessary condition fires: ") + (sr.necessary_fires ? "yes" : "no") + "\n";
  }
  emit(o, j, text);
}

template <class T>
void cmd_witness(const Options& o)
{
  Tree t = load_tree_opts(o);
  auto lam = weights_opts<T>(o);
  auto s = space_opts<T>(o);
  Vertex v = o.vertex;
  json j{{"command", "witness"}, {"space", s.name()}};
  if (o.audit) {
    std::vector<Vertex> basis;
    for (int x : (o.basis.empty() ? std::vector<int>{static_cast<int>(v)} : int_list(o.basis))) basis.push_back(x);
    std::vector<int> seq;
    if (o.seq.empty())
      for (int n = 1; n <= o.n; ++n) seq.push_back(n);
    else
      seq = int_list(o.seq);
    int need = *std::max_element(seq.begin(), seq.end());
    for (Vertex b : basis) {
      t = ensure_descendants(t, b, need + (t.rooted() ? 0 : 2 * need));
      if (!t.rooted() && t.has_rule() && t.depth_left() < need - t.generation(b))
        t = extend_to_horizon(t, t.depth_right(), need - t.generation(b));
    }
    auto a = criterion_audit_lambda(t, lam, s, basis, seq);
    j["audit"] = audit_json(a);
    std::string text = "v n |B^n e_v| |R_n e_v| |B^n R_n e_v - e_v|";
    if (!t.rooted()) text += " |I_n e_v - e_v| |B^n I_n e_v| bound branch";
    text += "\n";
    for (auto& r : a.rows) {
      text += std::to_string(r.v) + " " + std::to_string(r.n) + " " + to_string(r.Bn_ev) + " " + to_string(r.R_norm) +
              " " + to_string(r.BR_residual);
      if (r.has_I)
        text += " " + to_string(r.I_residual) + " " + to_string(r.BI_norm) + " " + to_string(r.bound) + " " + r.branch;
      text += "\n";
    }
    for (auto& [b, d] : a.R_decay) text += "R decay at " + std::to_string(b) + ": " + (d ? "yes" : "no") + "\n";
    emit(o, j, text);
    return;
  }
  int n = o.n;
  t = ensure_descendants(t, v, n);
  if (!t.rooted() && t.has_rule()) {
    int need = n - t.generation(v);
    if (t.depth_left() < need) t = extend_to_horizon(t, t.depth_right(), need);
    Vertex top = *ancestor(t, v, n);
    t = ensure_descendants(t, top, n);
  }
  auto ms = mu_space_from_lambda(t, lam, s);
  std::string text;
  if (t.rooted()) {
    WitnessBundle<T> b;
    b.v = v;
    b.n = n;
    b.R_vec = build_R_witness(t, ms, v, n);
    j["witness"] = witness_json(b);
    text = "R_n e_v:\n";
    for (auto& [u, x] : b.R_vec) text += "  " + std::to_string(u) + " " + to_string(x) + "\n";
  } else {
    auto b = build_I_witness(t, ms, v, n);
    j["witness"] = witness_json(b);
    text = "R_n e_v:\n";
    for (auto& [u, x] : b.R_vec) text += "  " + std::to_string(u) + " " + to_string(x) + "\n";
    text += std::string("I_n e_v (branch ") + branch_name(b.branch) + "):\n";
    for (auto& [u, x] : b.I_vec) text += "  " + std::to_string(u) + " " + to_string(x) + "\n";
    text += "bound: " + to_string(b.bound) + "\n";
  }
  emit(o, j, text);
}

std::string verify_text(const VerifyReport& r)
{
  std::string s;
  for (auto& c : r.clauses) s += c.name + ": " + (c.pass ? "PASS" : "FAIL") + " (" + c.detail + ")\n";
  return s;
}

void cmd_construct(const Options& o)
{
  Tree t0 = load_tree_opts(o);
  auto s = parse_space<double>(o.space);
  std::string mode = o.mode.empty() ? "nonmixing" : o.mode;
  if (mode == "mixing") {
    auto w = mixing_weights(t0, s);
    auto c = certify_backward(t0, w, s);
    json j{{"command", "construct"}, {"mode", "mixing"}, {"weights", weights_json(w)}, {"certify", certification_json(c)}};
    if (!o.transcript.empty()) throw Error(ErrorCode::InvalidSpec, "mixing construction has no transcript");
    if (!o.out.empty()) write_file(o.out, weights_json(w));
    Options q = o;
    q.out.clear();
    emit(q, j, verdict_text(c.hc) + verdict_text(c.mixing));
    return;
  }
  if (mode != "nonmixing") throw Error(ErrorCode::InvalidSpec, "--mode is mixing or nonmixing");
  int G = o.horizon.value_or(64);
  auto res = nonmixing_weights(t0, s, o.stages, G);
  auto rep = verify_transcript(t0, res.model, res.transcript, s);
  json tj = transcript_json(res.transcript);
  json wj = constructed_json(res.model);
  if (!o.out.empty()) write_file(o.out, wj);
  if (!o.transcript.empty()) write_file(o.transcript, tj);
  json j{{"command", "construct"}, {"mode", "nonmixing"}, {"transcript", tj}, {"verify", verify_json(rep)}};
  std::string text;
  for (auto& st : res.transcript.stage)
    text += "stage " + std::to_string(st.k) + ": m=" + std::to_string(st.m) + " n=" + std::to_string(st.n) +
            " r=" + std::to_string(st.r) + " damping=" + to_string(st.damping) + "\n";
  text += verify_text(rep);
  Options q = o;
  q.out.clear();
  emit(q, j, text);
  if (!rep.all_pass()) throw Contradiction{"construction failed its own verification"};
}

void cmd_verify(const Options& o)
{
  if (o.transcript.empty()) throw Error(ErrorCode::InvalidSpec, "--transcript is required");
  auto s = parse_space<double>(o.space);
  auto tr = parse_transcript(read_json_file(o.transcript));
  TreeSpec sp = parse_tree_spec(read_json_file(o.tree));
  Tree t0 = build_tree(sp);
  VerifyReport rep;
  if (is_constructed_arg(o.weights)) {
    rep = verify_transcript(t0, parse_constructed(read_json_file(o.weights)), tr, s);
  } else {
    rep = verify_transcript(t0, parse_weight_arg<double>(o.weights), tr, s);
  }
  json j{{"command", "verify"}, {"verify", verify_json(rep)}};
  emit(o, j, verify_text(rep));
  if (!rep.all_pass()) throw Contradiction{"verification failed"};
}

template <class T>
void cmd_revholder(const Options& o)
{
  if (o.mu.empty()) throw Error(ErrorCode::InvalidSpec, "--mu takes the weights, e.g. 1,2,3");
  auto s = parse_space<T>(o.space);
  ExtremalProblem<T> pr;
  pr.mu = scalar_list<T>(o.mu);
  for (std::size_t i = 0; i < pr.mu.size(); ++i) pr.J.push_back(static_cast<Vertex>(i));
  pr.p = s.p;
  if (o.mode.empty())
    pr.mode = mode_for(s);
  else if (o.mode == "p1")
    pr.mode = ExtremalMode::P1;
  else if (o.mode == "p")
    pr.mode = ExtremalMode::P;
  else if (o.mode == "sup")
    pr.mode = ExtremalMode::Sup;
  else
    throw Error(ErrorCode::InvalidSpec, "--mode is p1, p or sup");
  pr.validate();
  auto x = minimizer(pr);
  auto inf = infimum(pr);
  json j{{"command", "revholder"},
         {"mode", extremal_mode_name(pr.mode)},
         {"infimum", scalar_json(inf)},
         {"infimum_value", infimum_value(pr)},
         {"minimizer", vector_json(x)}};
  std::string text = std::string("mode: ") + extremal_mode_name(pr.mode) + "\ninfimum: " + to_string(inf) + "\nminimizer:";
  for (auto& [v, c] : x) text += " " + std::to_string(v) + "=" + to_string(c);
  emit(o, j, text + "\n");
}

template <template <class> class F>
void dispatch(const Options& o)
{
  if (o.exact)
    F<Rational>::run(o);
  else
    F<double>::run(o);
}

#define TSL_VERB(name)                                   \
  template <class T>                                     \
  struct V_##name {                                      \
    static void run(const Options& o) { cmd_##name<T>(o); } \
  };
TSL_VERB(norm)
TSL_VERB(apply)
TSL_VERB(certify)
TSL_VERB(diagnose)
TSL_VERB(witness)
TSL_VERB(revholder)
#undef TSL_VERB

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"tsl: weighted shifts on directed trees"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--tree", o.tree, "tree spec (JSON)");
    c->add_option("--weights", o.weights, "weights: rolewicz:X, constant:X, dirichlet:Q, two_branch:P* or a JSON file");
    c->add_option("--mu", o.mu, "space weight (same forms as --weights)");
    c->add_option("--space", o.space, "l1, l2, lp:P, c0 or linf");
    c->add_option("--horizon", o.horizon, "materialization depth / certification horizon")->check(CLI::PositiveNumber);
    c->add_option("--left", o.left, "left depth for unrooted trees")->check(CLI::NonNegativeNumber);
    c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--out", o.out, "write the JSON report (or weights, for construct) here");
    c->add_flag("--exact", o.exact, "rational arithmetic");
  };

  auto* inspect = app.add_subcommand("inspect", "structure of a tree");
  common(inspect);
  auto* norm = app.add_subcommand("norm", "operator norm");
  common(norm);
  norm->add_option("--direction", o.direction, "backward or forward");
  auto* apply = app.add_subcommand("apply", "apply a shift to a finitely supported vector");
  common(apply);
  apply->add_option("--direction", o.direction, "backward or forward");
  apply->add_option("--vector", o.vector, "JSON {vertex: value} or [vertices], inline or a file");
  apply->add_option("--vertex", o.vertex, "basis vector e_v when --vector is absent");
  apply->add_option("--power", o.power, "number of applications")->check(CLI::NonNegativeNumber);
  auto* certify = app.add_subcommand("certify", "hypercyclicity and mixing verdicts");
  common(certify);
  certify->add_option("--direction", o.direction, "backward or forward");
  certify->add_option("--property", o.property, "hc or mixing (default: both)");
  certify->add_option("--threshold", o.threshold, "empirical divergence threshold");
  certify->add_option("--expect", o.expect, "proven|refuted|supported|undetermined, or hc|mixing");
  certify->add_option("--transcript", o.transcript, "transcript for constructed weights");
  auto* diagnose = app.add_subcommand("diagnose", "diagnostic series at a vertex");
  common(diagnose);
  diagnose->add_option("--vertex", o.vertex);
  diagnose->add_option("--n", o.n, "largest n")->check(CLI::PositiveNumber);
  diagnose->add_option("--threshold", o.threshold, "threshold for the one-sided tests");
  auto* witness = app.add_subcommand("witness", "criterion witnesses R_n e_v and I_n e_v");
  common(witness);
  witness->add_option("--vertex", o.vertex);
  witness->add_option("--n", o.n)->check(CLI::PositiveNumber);
  witness->add_flag("--audit", o.audit, "tabulate the criterion over --basis and --seq");
  witness->add_option("--basis", o.basis, "vertices, e.g. 0,1,2");
  witness->add_option("--seq", o.seq, "n values, e.g. 1,2,4,8");
  auto* construct = app.add_subcommand("construct", "mixing or hypercyclic non-mixing weights");
  common(construct);
  construct->add_option("--mode", o.mode, "mixing or nonmixing");
  construct->add_option("--stages", o.stages, "stages K")->check(CLI::PositiveNumber);
  construct->add_option("--transcript", o.transcript, "write the transcript here");
  auto* verify = app.add_subcommand("verify", "re-check a construction transcript");
  common(verify);
  verify->add_option("--transcript", o.transcript, "transcript JSON")->required();
  auto* revholder = app.add_subcommand("revholder", "extremal problem over a finite index set");
  common(revholder);
  revholder->add_option("--mode", o.mode, "p1, p or sup (default from --space)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*inspect) cmd_inspect(o);
    if (*norm) dispatch<V_norm>(o);
    if (*apply) dispatch<V_apply>(o);
    if (*certify) dispatch<V_certify>(o);
    if (*diagnose) dispatch<V_diagnose>(o);
    if (*witness) dispatch<V_witness>(o);
    if (*construct) {
      if (o.exact) throw Error(ErrorCode::InexactArithmetic, "constructed weights are irrational; drop --exact");
      cmd_construct(o);
    }
    if (*verify) cmd_verify(o);
    if (*revholder) dispatch<V_revholder>(o);
  } catch (const Contradiction& c) {
    std::cerr << "contradiction: " << c.what << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
