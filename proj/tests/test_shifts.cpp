#include "helpers.hpp"

using namespace tsl;
using th::mk;

namespace {

WeightFamily<Rational> random_weights(std::mt19937& g, const Tree& t)
{
  std::map<Vertex, Rational> vals;
  std::uniform_int_distribution<int> sign(0, 1);
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
    vals[v] = th::rand_rational(g) * (sign(g) ? 1 : -1);
  return WeightFamily<Rational>::explicit_values(vals);
}

}  // namespace

TEST_CASE("forward shift")
{
  Tree t = mk(R"({"edges":[[0,1],[0,2]],"frontier":[1,2]})");
  auto w = WeightFamily<Rational>::explicit_values({{1, Rational(2)}, {2, Rational(3)}});
  auto out = apply_forward(t, w, FinVector<Rational>::basis(0));
  CHECK(out == FinVector<Rational>::basis(1, Rational(2)) + FinVector<Rational>::basis(2, Rational(3)));
  CHECK(apply_forward(t, w, FinVector<Rational>{}).empty());
  CHECK(th::code_of([&] { apply_forward(t, w, FinVector<Rational>::basis(1)); }) == ErrorCode::FrontierHit);

  Tree z = th::unrooted_nary(1, 4, 4);
  auto one = WeightFamily<Rational>::constant(Rational(1));
  Vertex x = 0;
  for (int k = 0; k < 4; ++k) {
    Vertex nx = z.children(x)[0];
    CHECK(apply_forward(z, one, FinVector<Rational>::basis(x)) == FinVector<Rational>::basis(nx));
    x = nx;
  }
}

TEST_CASE("backward shift")
{
  Tree t = mk(R"({"edges":[[0,1],[0,2]],"frontier":[1,2]})");
  auto w = WeightFamily<Rational>::explicit_values({{1, Rational(2)}, {2, Rational(3)}});
  auto f = FinVector<Rational>::basis(1) + FinVector<Rational>::basis(2);
  CHECK(apply_backward(t, w, f) == FinVector<Rational>::basis(0, Rational(5)));
  CHECK(apply_backward(t, w, FinVector<Rational>::basis(0)).empty());

  Tree u = th::unrooted_nary(2, 2, 1);
  auto one = WeightFamily<Rational>::constant(Rational(1));
  CHECK(th::code_of([&] { apply_backward(u, one, FinVector<Rational>::basis(u.top())); }) ==
        ErrorCode::TruncationExceeded);
}

TEST_CASE("powers agree with branch products")
{
  std::mt19937 g(21);
  Tree t = th::rooted_nary(3, 4);
  auto w = random_weights(g, t);
  for (Vertex u : descendants(t, 0, 4))
    for (int n = 0; n <= 4; ++n) {
      Vertex top = *ancestor(t, u, n);
      CHECK(apply_backward_pow(t, w, FinVector<Rational>::basis(u), n) ==
            FinVector<Rational>::basis(top, path_product(w, t, top, u)));
    }
  for (Vertex v : {Vertex(0), Vertex(1), Vertex(5)}) {
    int n = 4 - t.generation(v);
    FinVector<Rational> want;
    for (Vertex u : descendants(t, v, n)) want.set(u, path_product(w, t, v, u));
    CHECK(apply_forward_pow(t, w, FinVector<Rational>::basis(v), n) == want);
  }
  // Rooted nilpotence past the deepest generation in the support.
  for (int trial = 0; trial < 20; ++trial) {
    auto f = th::random_vector<Rational>(g, t, 6);
    int gmax = 0;
    for (auto& [v, x] : f) gmax = std::max(gmax, t.generation(v));
    CHECK(apply_backward_pow(t, w, f, gmax + 1).empty());
  }
}

TEST_CASE("Rolewicz norm and the sibling-set oracle")
{
  Tree b = th::rooted_nary(2, 6);
  auto r = operator_norm(b, WeightFamily<double>::constant(1.0), SpaceSpec<double>::lp(2));
  CHECK(r.exact);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  std::mt19937 g(1);
  std::normal_distribution<double> n01;
  double best = 0;
  for (int i = 0; i < 20000; ++i) {
    double a = n01(g), c = n01(g);
    best = std::max(best, std::abs(a + c) / std::hypot(a, c));
  }
  CHECK(best <= r.value * (1 + 1e-12));
  CHECK(best > r.value - 1e-3);

  for (long N : {1L, 2L, 3L, 5L})
    for (auto [s, want] : {std::pair{SpaceSpec<double>::lp(1), 0.7}, std::pair{SpaceSpec<double>::lp(2), 0.7 * std::sqrt(double(N))},
                           std::pair{SpaceSpec<double>::lp(3), 0.7 * std::pow(double(N), 2.0 / 3.0)},
                           std::pair{SpaceSpec<double>::c0(), 0.7 * N}}) {
      auto rr = operator_norm(th::rooted_nary(N, 3), WeightFamily<double>::constant(0.7), s);
      CHECK(rr.exact);
      CHECK(rr.value == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("unbounded symmetric shift")
{
  Tree t = mk(R"({"rule":{"kind":"geometric","base":1,"ratio":2},"depth_right":4})");
  auto r = operator_norm(t, WeightFamily<double>::constant(1.0), SpaceSpec<double>::c0());
  CHECK(r.exact);
  CHECK(r.bounded == Tri::No);
  CHECK(std::isinf(r.value));
}

TEST_CASE("Dirichlet norm")
{
  Tree b = th::rooted_nary(2, 6);
  for (double q : {1.0, 2.0, 4.0}) {
    auto w = WeightFamily<double>::dirichlet(q);
    auto f = operator_norm(b, w, SpaceSpec<double>::lp(2), Direction::Forward);
    CHECK(f.exact);
    CHECK(f.value == doctest::Approx(std::sqrt(q)).epsilon(1e-12));
    // The truncated formula at the root reaches the same value.
    auto tr = truncated_norm(b, w, SpaceSpec<double>::lp(2), Direction::Forward);
    CHECK(tr.value == doctest::Approx(std::sqrt(q)).epsilon(1e-12));
  }
}

TEST_CASE("norm bounds every image")
{
  std::mt19937 g(4);
  for (auto s : {SpaceSpec<double>::lp(1), SpaceSpec<double>::lp(2), SpaceSpec<double>::lp(3, 2),
                 SpaceSpec<double>::c0()}) {
    Tree t = th::rooted_nary(2, 5);
    std::map<Vertex, double> vals;
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) vals[v] = u(g);
    auto w = WeightFamily<double>::explicit_values(vals);
    auto r = operator_norm(t, w, s);
    for (int trial = 0; trial < 200; ++trial) {
      auto f = th::random_vector<double>(g, t, 6);
      CHECK(norm_value(s, apply_backward(t, w, f), t) <= r.value * norm_value(s, f, t) * (1 + 1e-12));
      auto h = th::random_vector<double>(g, t, 6, true);
      auto rf = operator_norm(t, w, s, Direction::Forward);
      CHECK(norm_value(s, apply_forward(t, w, h), t) <= rf.value * norm_value(s, h, t) * (1 + 1e-12));
    }
  }
}

TEST_CASE("adjoint identity")
{
  std::mt19937 g(8);
  Tree t = th::rooted_nary(2, 6);
  auto w = random_weights(g, t);
  Vertex u = t.children(0)[1];
  CHECK(adjoint_residual(t, w, FinVector<Rational>::basis(0), FinVector<Rational>::basis(u)) == Rational(0));
  CHECK(pairing(apply_forward(t, w, FinVector<Rational>::basis(0)), FinVector<Rational>::basis(u)) == weight_at(w, t, u));
  for (int trial = 0; trial < 50; ++trial) {
    auto f = th::random_vector<Rational>(g, t, 20, true), h = th::random_vector<Rational>(g, t, 20);
    CHECK(adjoint_residual(t, w, f, h) == Rational(0));
  }
}

TEST_CASE("conjugacy weights")
{
  Tree n = mk(R"({"rule":{"kind":"constant","n":1},"depth_right":10})");
  auto two = WeightFamily<Rational>::constant(Rational(2));
  auto mu = mu_from_lambda(two, n, Rational(1));
  Vertex x = 0;
  for (int k = 0; k <= 10; ++k) {
    CHECK(weight_at(mu, n, x) == Rational(1, 1 << k));
    CHECK(conjugacy_residual(n, two, mu, FinVector<Rational>::basis(x)) == Rational(0));
    if (k < 10) x = n.children(x)[0];
  }

  std::mt19937 g(2);
  for (Tree t : {th::rooted_nary(2, 5), th::unrooted_nary(2, 3, 3)}) {
    auto w = random_weights(g, t);
    auto m = mu_from_lambda(w, t, Rational(3));
    auto back = lambda_from_mu(m, t);
    for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
      if (t.parent(v) != kNoVertex) CHECK(weight_at(back, t, v) == weight_at(w, t, v));
    auto mf = mu_from_lambda(w, t, Rational(3), Direction::Forward);
    auto lf = lambda_from_mu(mf, t, Direction::Forward);
    for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
      if (t.parent(v) != kNoVertex) CHECK(weight_at(lf, t, v) == weight_at(w, t, v));
    for (int trial = 0; trial < 30; ++trial) {
      auto f = th::random_vector<Rational>(g, t, 8, true);
      FinVector<Rational> inner;
      for (auto& [v, c] : f)
        if (t.parent(v) != kNoVertex) inner.set(v, c);
      CHECK(conjugacy_residual(t, w, m, inner) == Rational(0));
      CHECK(conjugacy_residual(t, lf, mf, f, Direction::Forward) == Rational(0));
    }
  }
}

TEST_CASE("circularity")
{
  std::mt19937 g(6);
  Tree t = th::unrooted_nary(2, 3, 2);
  auto w = random_weights(g, t);
  CHECK(circularity_residual(t, w, Rational(-1)) == Rational(0));
  CHECK(circularity_residual(t, w, Rational(1)) == Rational(0));
  CHECK(circularity_residual(t, w, Rational(2)) > Rational(0));
}
