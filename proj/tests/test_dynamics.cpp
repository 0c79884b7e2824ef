#include "helpers.hpp"

using namespace tsl;
using th::mk;

namespace {

Tree line(int right, int left) { return th::unrooted_nary(1, right, left); }

// lambda_n = hi for n > 0, lo for n <= 0.
template <class T>
WeightFamily<T> two_sided(T hi, T lo)
{
  ScalarProfile<T> p;
  p.right.values = {lo, hi};
  p.right.period = 1;
  p.left.values = {lo};
  p.left.period = 1;
  return WeightFamily<T>::symmetric(p);
}

}  // namespace

TEST_CASE("rooted diagnostic closed forms")
{
  Tree b = th::rooted_nary(2, 8);
  auto ab = WeightFamily<Rational>::child_pattern({Rational(1, 5), Rational(6, 5)});
  for (int n = 1; n <= 8; ++n)
    CHECK(rooted_diagnostic(b, ab, SpaceSpec<Rational>::lp(2), 0, n) ==
          ipow(Rational(1, 25) + Rational(36, 25), n));

  for (long N : {1L, 2L, 3L}) {
    Tree t = th::rooted_nary(N, 6);
    auto w = WeightFamily<Rational>::constant(Rational(3, 4));
    for (int n = 1; n <= 6; ++n) {
      Rational direct(0);
      for (Vertex u : descendants(t, 0, n)) direct += path_product(w, t, 0, u);
      CHECK(rooted_diagnostic(t, w, SpaceSpec<Rational>::c0(), 0, n) == direct);
      CHECK(direct == ipow(Rational(N) * Rational(3, 4), n));
    }
  }

  Tree b5 = th::rooted_nary(2, 5);
  auto d = WeightFamily<Rational>::dirichlet(2.0);
  auto dd = WeightFamily<double>::dirichlet(2.0);
  double direct = 0;
  for (Vertex u : descendants(b5, 0, 5)) direct += std::pow(path_product(dd, b5, 0, u), 2);
  CHECK(direct == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(rooted_diagnostic(b5, d, SpaceSpec<Rational>::lp(2), 0, 5) == Rational(6));
  // l1 uses the sup over the level
  CHECK(rooted_diagnostic(b, ab, SpaceSpec<Rational>::lp(1), 0, 3) == Rational(216, 125));
}

TEST_CASE("unrooted diagnostics")
{
  int n = 6;
  Tree z = line(n, n);
  auto two = WeightFamily<Rational>::constant(Rational(2));
  for (int k = 1; k <= n; ++k) {
    auto d = unrooted_diagnostics(z, two, SpaceSpec<Rational>::lp(2), 0, k);
    CHECK(d.main == ipow(Rational(4), k));
    CHECK(d.parent == (1 + ipow(Rational(4), k)) / ipow(Rational(4), k));
  }
  auto bil = two_sided(Rational(2), Rational(1, 2));
  for (int k = 1; k <= n; ++k) {
    auto d = unrooted_diagnostics(z, bil, SpaceSpec<Rational>::lp(2), 0, k);
    CHECK(d.main == ipow(Rational(4), k));
    // below v0 the weights are 1/2, so the left product is 2^{-k}
    CHECK(d.parent == ipow(Rational(4), k) + 1);
  }
  Tree u = th::unrooted_nary(2, 5, 5);
  auto one = WeightFamily<Rational>::constant(Rational(1));
  for (int k = 1; k <= 5; ++k) {
    auto d = unrooted_diagnostics(u, one, SpaceSpec<Rational>::c0(), 0, k);
    CHECK(d.main == ipow(Rational(2), k));
    CHECK(d.parent == 1 + ipow(Rational(2), k));
  }
  CHECK(th::code_of([&] { unrooted_diagnostics(u, one, SpaceSpec<Rational>::c0(), 0, 6); }) ==
        ErrorCode::TruncationExceeded);
}

TEST_CASE("certify: structural and norm rules")
{
  auto s2 = SpaceSpec<double>::lp(2);
  Tree leaf = mk(R"({"edges":[[0,1],[0,2],[1,3]],"frontier":[3]})");
  auto c = certify_backward(leaf, WeightFamily<double>::constant(5.0), s2);
  CHECK(c.hc.status == Status::Refuted);
  CHECK(c.hc.witness.rule == "leaf-obstruction");
  CHECK(c.hc.witness.vertices == std::vector<Vertex>{2});

  Tree b = th::rooted_nary(2, 6);
  auto r = certify_backward(b, WeightFamily<double>::constant(0.8), s2);
  CHECK(r.hc.status == Status::Proven);
  CHECK(r.mixing.status == Status::Proven);
  CHECK(r.mixing.witness.rule == "rolewicz-threshold");
  auto below = certify_backward(b, WeightFamily<double>::constant(0.7), s2);
  CHECK(below.hc.status == Status::Refuted);

  Tree alt = mk(R"({"rule":{"kind":"alternating","low":1,"high":3,"a":1,"b":3},"depth_right":6})");
  auto a = certify_backward(alt, WeightFamily<double>::constant(0.7), s2);
  CHECK(a.hc.status == Status::Proven);
  CHECK(a.mixing.status == Status::Refuted);
  CHECK(a.hc.witness.rule == "symmetric-alternating");
  // equal stretch lengths are too short for N = 3 at this lambda
  Tree even = mk(R"({"rule":{"kind":"alternating","low":1,"high":3},"depth_right":6})");
  CHECK(certify_backward(even, WeightFamily<double>::constant(0.7), s2).hc.status == Status::Refuted);
}

TEST_CASE("Rolewicz")
{
  auto l1 = SpaceSpec<Rational>::lp(1), c0 = SpaceSpec<Rational>::c0();
  for (long N : {1L, 2L, 4L}) {
    auto r = certify_rolewicz(th::rooted_nary(N, 3), WeightFamily<Rational>::constant(Rational(3, 2)), l1);
    CHECK(r.mixing.status == Status::Proven);
    auto u = certify_rolewicz(th::unrooted_nary(N, 3, 3), WeightFamily<Rational>::constant(Rational(3, 2)), l1);
    CHECK(u.hc.status == Status::Refuted);
  }
  Tree u2 = th::unrooted_nary(2, 3, 3);
  CHECK(certify_rolewicz(u2, WeightFamily<Rational>::constant(Rational(3, 5)), c0).mixing.status == Status::Proven);
  CHECK(certify_rolewicz(u2, WeightFamily<Rational>::constant(Rational(1, 2)), c0).hc.status == Status::Refuted);
  CHECK(th::code_of([&] { certify_rolewicz(u2, WeightFamily<Rational>::child_pattern({Rational(1), Rational(2)}), c0); }) ==
        ErrorCode::NotConstantWeight);
}

TEST_CASE("symmetric products")
{
  Tree n = mk(R"({"rule":{"kind":"constant","n":1},"depth_right":4})");
  auto s2 = SpaceSpec<double>::lp(2);
  auto c = certify_symmetric(n, WeightFamily<double>::symmetric({1.0, 2.0}), s2);
  REQUIRE(c);
  CHECK(c->mixing.status == Status::Proven);

  Tree b = th::rooted_nary(2, 4);
  for (double cc : {1.1, 0.9}) {
    auto w = WeightFamily<double>::symmetric({1.0, std::sqrt(0.5) * cc});
    auto r = certify_symmetric(b, w, s2);
    REQUIRE(r);
    CHECK(r->hc.status == (cc > 1 ? Status::Proven : Status::Refuted));
  }
  Tree z = line(4, 4);
  auto rz = certify_symmetric(z, WeightFamily<double>::constant(2.0), s2);
  REQUIRE(rz);
  CHECK(rz->hc.status == Status::Refuted);
  auto bil = certify_backward(z, two_sided(2.0, 0.5), s2);
  CHECK(bil.mixing.status == Status::Proven);
  CHECK_FALSE(certify_symmetric(mk(R"({"edges":[[0,1]],"rule":{"kind":"constant","n":2}})"),
                                WeightFamily<double>::constant(2.0), s2));
}

TEST_CASE("forward shifts")
{
  auto s2 = SpaceSpec<double>::lp(2);
  auto c = certify_forward(th::rooted_nary(1, 4), WeightFamily<double>::constant(3.0), s2);
  CHECK(c.hc.status == Status::Refuted);
  CHECK(c.hc.witness.rule == "rooted-forward");

  Tree u = th::unrooted_nary(2, 3, 3);
  auto w = WeightFamily<double>::constant(3.0);
  auto b = certify_forward(u, w, s2);
  CHECK(b.hc.status == Status::Refuted);
  REQUIRE(b.hc.witness.vertices.size() == 2);
  Vertex v1 = b.hc.witness.vertices[0], v2 = b.hc.witness.vertices[1];
  CHECK(u.parent(v1) == u.parent(v2));
  // equal coordinates, up to the branch weights, for every f and n
  std::mt19937 g(3);
  for (int trial = 0; trial < 20; ++trial) {
    FinVector<double> f;
    for (int k = 0; k < 4; ++k) f.add(static_cast<Vertex>(g() % 7), 1.0 + k);
    for (int n = 1; n <= 2; ++n) {
      auto img = apply_forward_pow(u, w, f, n);
      CHECK(img.get(v1) == doctest::Approx(img.get(v2)));
    }
  }

  // Z: forward orbit of e_0 equals the backward orbit on the reversed line.
  Tree z = line(10, 10);
  auto lam = two_sided(2.0, 0.5);
  auto rev = reverse_line_weights(lam);
  Vertex x = 0;
  for (int n = 1; n <= 10; ++n) {
    x = z.children(x)[0];
    double f = apply_forward_pow(z, lam, FinVector<double>::basis(0), n).get(x);
    double bb = apply_backward_pow(z, rev, FinVector<double>::basis(0), n).get(*ancestor(z, 0, n));
    CHECK(f == doctest::Approx(bb).epsilon(1e-14));
  }
  auto fz = certify_forward(z, WeightFamily<double>::constant(2.0), s2);
  CHECK(fz.hc.status == certify_backward(z, WeightFamily<double>::constant(2.0), s2).hc.status);
  auto fb = certify_forward(z, lam, s2);
  CHECK(fb.hc.status == certify_backward(z, rev, s2).hc.status);
}

TEST_CASE("Dirichlet verdicts")
{
  Tree b = th::rooted_nary(2, 5);
  auto s2 = SpaceSpec<double>::lp(2);
  auto c1 = certify_backward(b, WeightFamily<double>::dirichlet(1.0), s2);
  CHECK(c1.hc.status == Status::Refuted);
  CHECK(c1.hc.witness.rule == "norm-at-most-one");
  auto c2 = certify_backward(b, WeightFamily<double>::dirichlet(2.0), s2);
  CHECK(c2.mixing.status == Status::Proven);
}

TEST_CASE("one-sided sufficient tests")
{
  Tree b = th::rooted_nary(2, 16);
  auto ab = WeightFamily<double>::child_pattern({0.2, 1.2});
  auto r = sufficient_report(b, ab, Exponent::rational(2, 1), 0, 16);
  CHECK_FALSE(r.normalized_fires);
  CHECK(r.normalized.back() < 1);
  CHECK(certify_backward(b, ab, SpaceSpec<double>::lp(2)).mixing.status == Status::Proven);

  auto rol = WeightFamily<double>::constant(0.65);
  auto rr = sufficient_report(b, rol, Exponent::rational(2, 1), 0, 16, 10.0);
  CHECK(rr.necessary_fires);
  CHECK(certify_backward(b, rol, SpaceSpec<double>::lp(2)).hc.status == Status::Refuted);

  Tree n = mk(R"({"rule":{"kind":"constant","n":1},"depth_right":12})");
  auto cl = sufficient_report(n, WeightFamily<double>::constant(2.0), Exponent::rational(2, 1), 0, 12);
  CHECK(cl.necessary_fires);
  CHECK(cl.normalized_fires);
  CHECK(cl.remark_fires);
}

TEST_CASE("diagnostic recursion")
{
  std::mt19937 g(41);
  Tree t = th::rooted_nary(3, 5);
  std::map<Vertex, Rational> vals;
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) vals[v] = th::rand_rational(g);
  auto w = WeightFamily<Rational>::explicit_values(vals);
  auto s = SpaceSpec<Rational>::lp(2);
  for (Vertex v : {Vertex(0), Vertex(1), Vertex(4)})
    for (int n = 0; t.generation(v) + n + 1 <= 5; ++n) {
      Rational rhs(0);
      for (Vertex c : t.children(v)) {
        Rational l = weight_at(w, t, c);
        rhs += l * l * main_series(t, w, s, c, n).back();
      }
      CHECK(main_series(t, w, s, v, n + 1).back() == rhs);
    }
}

TEST_CASE("anchor independence on the line")
{
  // Re-anchoring at generation k shifts the profile by k.
  auto s = SpaceSpec<double>::lp(2);
  auto base = [](long n) { return n > 2 ? 1.5 : (n > -3 ? 0.9 : 0.5); };
  for (int k = -2; k <= 2; ++k) {
    auto prof = tabulate_profile<double>(8, 1, 8, 1, [&](long n) { return base(n + k); });
    auto c = certify_backward(line(6, 6), WeightFamily<double>::symmetric(prof), s);
    auto p0 = tabulate_profile<double>(8, 1, 8, 1, base);
    auto c0 = certify_backward(line(6, 6), WeightFamily<double>::symmetric(p0), s);
    CHECK(c.hc.status == c0.hc.status);
    CHECK(c.mixing.status == c0.mixing.status);
  }
}

TEST_CASE("Proven verdicts diverge by enumeration")
{
  auto s = SpaceSpec<double>::lp(2);
  Tree b = th::rooted_nary(2, 14);
  auto w = WeightFamily<double>::constant(0.8);
  REQUIRE(certify_backward(b, w, s).mixing.status == Status::Proven);
  double prev = 1;
  for (int n = 1; n <= 14; ++n) {
    double x = 0;
    for (Vertex u : descendants(b, 0, n)) x += std::pow(path_product(w, b, 0, u), 2);
    CHECK(x > prev);
    prev = x;
  }
  CHECK(prev > 20);
  // Refuted by threshold: the series stays at the closed form N^n |lambda|^{n p*} <= 1.
  auto low = WeightFamily<double>::constant(0.7);
  for (int n = 1; n <= 14; ++n) CHECK(rooted_diagnostic(b, low, s, 0, n) <= 1.0);
}

TEST_CASE("empirical tier: monotone horizon")
{
  auto s = SpaceSpec<double>::lp(2);
  // Generation-free weights, so no exact rule applies.
  auto w = WeightFamily<double>::procedural([](const Tree& t, Vertex v) { return t.child_index(v) == 0 ? 1.3 : 0.4; });
  Tree b = th::rooted_nary(2, 4);
  Status prev = Status::Undetermined;
  for (int h : {8, 12, 16}) {
    CertifyPolicy pol;
    pol.horizon = h;
    pol.threshold = 20;
    auto c = certify_backward(b, w, s, pol);
    if (prev == Status::Supported) CHECK(c.hc.status == Status::Supported);
    prev = c.hc.status;
    CHECK(c.hc.witness.rule == "empirical-diagnostics");
  }
  CHECK(prev == Status::Supported);
}

TEST_CASE("free left end: parent divergence tracks the left product")
{
  Tree fig = mk(R"({"rooted":false,"rule":{"kind":"table","rows":{"0":[3],"1":[3,1,2]},"default":1,"left":[1]},
                   "depth_right":14,"depth_left":14})");
  REQUIRE(classify(fig).free_left_end == Tri::Yes);
  auto s = SpaceSpec<double>::lp(2);
  for (double lam : {0.5, 2.0}) {
    auto w = WeightFamily<double>::constant(lam);
    for (Vertex v : {Vertex(0), fig.children(0)[0]}) {
      int n = 12;
      auto d = unrooted_diagnostics(fig, w, s, v, n);
      double left = path_product(w, fig, *ancestor(fig, v, n), v);
      CHECK((d.parent > 1e3) == (left < 1e-3));
    }
  }
}
