#include "helpers.hpp"

using namespace tsl;
using th::mk;

namespace {

void same_tree(const Tree& a, const Tree& b)
{
  REQUIRE(a.size() == b.size());
  CHECK(a.rooted() == b.rooted());
  for (Vertex v = 0; v < static_cast<Vertex>(a.size()); ++v) {
    CHECK(a.parent(v) == b.parent(v));
    CHECK(a.generation(v) == b.generation(v));
    CHECK(a.is_frontier(v) == b.is_frontier(v));
  }
}

template <class T>
void same_weights(const Tree& t, const WeightFamily<T>& a, const WeightFamily<T>& b)
{
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    if (t.rooted() && v == 0) continue;
    if (t.parent(v) == kNoVertex) continue;
    if (a.kind == WeightKind::Explicit && (v < 1 || v > 3)) continue;
    CHECK(weight_at(a, t, v) == weight_at(b, t, v));
  }
}

}  // namespace

TEST_CASE("tree specs round-trip")
{
  const char* specs[] = {
      R"({"rooted":true,"rule":{"kind":"constant","n":2},"depth_right":5})",
      R"({"rooted":false,"rule":{"kind":"constant","n":3},"depth_right":3,"depth_left":2})",
      R"({"rooted":true,"edges":[[0,1],[0,2],[1,3]]})",
      R"({"rooted":false,"rule":{"kind":"table","rows":{"0":[3],"1":[3,1,2]},"default":1,"left":[1]},"depth_right":4,"depth_left":3})",
  };
  for (auto s : specs) {
    Tree a = mk(s);
    auto j = tree_spec_json(a.spec());
    Tree b = build_tree(parse_tree_spec(json::parse(j.dump())));
    same_tree(a, b);
  }
  for (auto f : {"binary.json", "binary_unrooted.json", "ternary_unrooted.json", "figure1.json", "z.json", "n.json",
                 "finite.json"})
    CHECK_NOTHROW(load_tree(std::string(TSL_SAMPLES) + "/" + f));
}

TEST_CASE("weights round-trip")
{
  Tree t = th::rooted_nary(2, 5);
  Tree u = th::unrooted_nary(2, 4, 3);
  std::vector<WeightFamily<Rational>> ws = {
      WeightFamily<Rational>::constant(Rational(4, 5)),
      WeightFamily<Rational>::child_pattern({Rational(1, 2), Rational(3)}),
      WeightFamily<Rational>::explicit_values({{1, Rational(2)}, {2, Rational(-1, 3)}, {3, Rational(5)}}),
  };
  for (auto& w : ws) {
    auto back = parse_weights<Rational>(json::parse(weights_json(w).dump()));
    same_weights(t, w, back);
    same_weights(u, w, back);
  }
  auto d = parse_weights<double>(json::parse(R"({"kind":"dirichlet","q":"3/2"})"));
  auto d2 = parse_weights<double>(weights_json(d));
  same_weights(t, d, d2);
  auto tb = parse_weights<double>(json::parse(R"({"kind":"two_branch","pstar":"inf"})"));
  same_weights(t, tb, parse_weights<double>(weights_json(tb)));

  CHECK(parse_weight_arg<Rational>("rolewicz:0.8").value == Rational(4, 5));
  CHECK(parse_weight_arg<Rational>("constant:-3/2").phase);
  auto c = parse_weights<double>(json::parse(R"({"kind":"constant","value":{"re":3,"im":4}})"));
  CHECK(c.value == 5.0);
  CHECK(c.phase);
}

TEST_CASE("vectors and scalars")
{
  auto f = parse_vector<Rational>(json::parse(R"({"0":"1/2","3":2,"4":0.25})"));
  CHECK(f.get(0) == Rational(1, 2));
  CHECK(f.get(3) == Rational(2));
  CHECK(f.get(4) == Rational(1, 4));
  CHECK(parse_vector<Rational>(json::parse(vector_json(f).dump())) == f);
  auto e = parse_vector<double>(json::parse("[1,2]"));
  CHECK(e.size() == 2);
  CHECK(e.get(2) == 1.0);
}

TEST_CASE("transcripts and constructed models round-trip")
{
  Tree t0 = th::unrooted_nary(2, 0, 0);
  auto s = SpaceSpec<double>::lp(2);
  auto res = nonmixing_weights(t0, s, 2, 64);
  auto tr = parse_transcript(json::parse(transcript_json(res.transcript).dump()));
  CHECK(tr.rooted == res.transcript.rooted);
  CHECK(tr.left_depth == res.transcript.left_depth);
  CHECK(tr.depth_right == res.transcript.depth_right);
  CHECK(tr.enumeration == res.transcript.enumeration);
  CHECK(tr.N == res.transcript.N);
  REQUIRE(tr.stage.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(tr.stage[k].m == res.transcript.stage[k].m);
    CHECK(tr.stage[k].n == res.transcript.stage[k].n);
    CHECK(tr.stage[k].r == res.transcript.stage[k].r);
    CHECK(tr.stage[k].damping == res.transcript.stage[k].damping);
  }
  auto j = constructed_json(res.model);
  CHECK(is_constructed(j));
  auto cw = parse_constructed(json::parse(j.dump()));
  auto w = parse_weights<double>(json::parse(j.dump()));
  CHECK(verify_transcript(t0, cw, tr, s).all_pass());
  Tree et = transcript_tree(t0, tr, tr.r_at(2) - 1);
  for (Vertex v = 0; v < static_cast<Vertex>(et.size()); v += 7)
    if (et.parent(v) != kNoVertex) CHECK(weight_at(w, et, v) == weight_at(res.weights, et, v));
  CHECK(th::code_of([&] { parse_weights<Rational>(j); }) == ErrorCode::InexactArithmetic);
}

TEST_CASE("parse errors")
{
  auto bad_tree = [](const char* s) { return th::code_of([&] { mk(s); }); };
  CHECK(bad_tree(R"({"rooted":true,"edges":[[0,1],[1,0]]})") == ErrorCode::CycleDetected);
  CHECK(bad_tree(R"({"rooted":true,"edges":[[0,2],[1,2]]})") == ErrorCode::MultipleParents);
  CHECK(bad_tree(R"({"rooted":true,"rule":{"kind":"constant","n":0},"depth_right":2})") ==
        ErrorCode::ZeroOutdegreeRule);
  CHECK(bad_tree(R"({"rooted":true,"rule":{"kind":"bogus"}})") == ErrorCode::InvalidSpec);

  auto bad_w = [](const char* s) { return th::code_of([&] { parse_weights<Rational>(json::parse(s)); }); };
  CHECK(bad_w(R"({"kind":"nope"})") == ErrorCode::InvalidSpec);
  CHECK(bad_w(R"({"value":1})") == ErrorCode::InvalidSpec);
  CHECK(bad_w(R"({"kind":"constant"})") == ErrorCode::InvalidSpec);
  CHECK(bad_w(R"({"kind":"constant","value":"1/x"})") == ErrorCode::InvalidSpec);
  CHECK(bad_w(R"({"kind":"constant","value":[1]})") == ErrorCode::InvalidSpec);
  CHECK(th::code_of([] { parse_weight_arg<double>("wavy:2"); }) == ErrorCode::InvalidSpec);
  CHECK(th::code_of([] { read_json_file("/nonexistent/x.json"); }) == ErrorCode::InvalidSpec);
  CHECK(th::code_of([] { parse_transcript(json::parse("{}")); }) == ErrorCode::InvalidSpec);
}
