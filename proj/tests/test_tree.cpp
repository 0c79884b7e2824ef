#include "helpers.hpp"

using namespace tsl;
using th::mk;

TEST_CASE("edge list, with and without a rule")
{
  Tree a = mk(R"({"rooted":true,"edges":[[0,1],[0,2]]})");
  CHECK(a.size() == 3);
  CHECK(a.parent(1) == 0);
  CHECK(a.children(0).size() == 2);
  CHECK_FALSE(a.is_frontier(1));
  CHECK(a.outdegree(1) == 0);

  Tree b = mk(R"({"rooted":true,"edges":[[0,1],[0,2]],"rule":{"kind":"constant","n":2},"depth_right":1})");
  CHECK(b.size() == 3);
  CHECK(b.is_frontier(1));
  CHECK(b.is_frontier(2));

  Tree c = mk(R"({"rooted":true,"edges":[[0,1],[1,2]],"frontier":[2]})");
  CHECK(c.is_frontier(2));
}

TEST_CASE("constant rule sizes")
{
  CHECK(th::rooted_nary(2, 3).size() == 15);
  Tree t = th::rooted_nary(2, 3);
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
    if (!t.is_frontier(v)) CHECK(t.outdegree(v) == 2);
  Tree z = th::unrooted_nary(1, 3, 3);
  CHECK(z.size() == 7);
  CHECK(classify(z).branchless_Z);
  CHECK(th::rooted_nary(2, 10).size() == 2047);
}

TEST_CASE("build errors")
{
  CHECK(th::code_of([] { mk(R"({"edges":[[0,1],[1,0]]})"); }) == ErrorCode::CycleDetected);
  CHECK(th::code_of([] { mk(R"({"edges":[[0,1],[2,3]]})"); }) == ErrorCode::MultipleRoots);
  CHECK(th::code_of([] { mk(R"({"edges":[[0,2],[1,2]]})"); }) == ErrorCode::MultipleParents);
  CHECK(th::code_of([] { mk(R"({"rule":{"kind":"constant","n":0}})"); }) == ErrorCode::ZeroOutdegreeRule);
  CHECK(th::code_of([] { mk(R"({"rule":{"kind":"table","rows":{"1":[2,0]}}})"); }) == ErrorCode::ZeroOutdegreeRule);
}

TEST_CASE("ancestors")
{
  Tree ch = mk(R"({"edges":[[0,1],[1,2]]})");
  CHECK(ancestor(ch, 2, 0) == std::optional<Vertex>(2));
  CHECK(ancestor(ch, 2, 2) == std::optional<Vertex>(0));
  CHECK_FALSE(ancestor(ch, 0, 1).has_value());
  Tree u = th::unrooted_nary(2, 2, 2);
  CHECK(ancestor(u, 0, 2).has_value());
  CHECK(th::code_of([&] { ancestor(u, 0, 3); }) == ErrorCode::TruncationExceeded);
}

TEST_CASE("descendants")
{
  Tree b = th::rooted_nary(2, 10);
  CHECK(descendants(b, 0, 10).size() == 1024);
  CHECK(descendants(b, 5, 0) == std::vector<Vertex>{5});
  CHECK(th::code_of([&] { descendants(b, 0, 11); }) == ErrorCode::FrontierHit);
  Tree f = mk(R"({"edges":[[0,1]]})");
  CHECK(descendants(f, 0, 3).empty());

  // Expanding the rule two levels by hand: prt^2(v0) has 3 children, each with 3.
  Tree u = th::unrooted_nary(3, 2, 2);
  Vertex top = *ancestor(u, 0, 2);
  std::size_t count = 0;
  for (Vertex c : u.children(top)) count += u.children(c).size();
  CHECK(count == 9);
  CHECK(descendants(u, top, 2).size() == 9);

  Tree g = ensure_descendants(th::rooted_nary(2, 2), 0, 5);
  CHECK(descendants(g, 0, 5).size() == 32);
}

TEST_CASE("generations")
{
  Tree b = th::rooted_nary(2, 3);
  CHECK(generation_index(b, 0) == 0);
  CHECK(generation_index(b, b.children(0)[0]) == 1);
  Tree u = th::unrooted_nary(2, 2, 3);
  CHECK(generation_index(u, *ancestor(u, 0, 2)) == -2);
  CHECK(generation_index(u, 0) == 0);
}

TEST_CASE("classify")
{
  auto r = classify(th::rooted_nary(2, 4));
  CHECK(r.rooted);
  CHECK(r.leafless);
  CHECK(r.symmetric);
  CHECK(r.max_outdegree == 2);

  Tree fig = mk(R"({"rooted":false,"rule":{"kind":"table","rows":{"0":[3],"1":[3,1,2]},"default":1,"left":[1]},
                   "depth_right":4,"depth_left":3})");
  auto rf = classify(fig);
  CHECK(rf.free_left_end == Tri::Yes);
  CHECK_FALSE(rf.symmetric);
  CHECK(rf.max_outdegree == 3);

  CHECK_FALSE(classify(mk(R"({"edges":[[0,1],[0,2]]})")).leafless);
  CHECK(classify(mk(R"({"edges":[[0,1],[0,2]],"frontier":[1,2]})")).leafless);
  CHECK(classify(th::unrooted_nary(2, 3, 3)).free_left_end == Tri::No);
}

TEST_CASE("extend_to_horizon")
{
  Tree b = th::rooted_nary(2, 3);
  CHECK(extend_to_horizon(b, 5, 0).size() == 63);
  Tree twice = extend_to_horizon(extend_to_horizon(b, 4, 0), 5, 0);
  Tree once = extend_to_horizon(b, 5, 0);
  REQUIRE(twice.size() == once.size());
  for (Vertex v = 0; v < static_cast<Vertex>(once.size()); ++v) CHECK(twice.parent(v) == once.parent(v));

  Tree z = extend_to_horizon(th::unrooted_nary(1, 1, 1), 3, 3);
  CHECK(z.size() == 7);

  // Max of horizons, in either order.
  Tree u = th::unrooted_nary(2, 2, 1);
  Tree ab = extend_to_horizon(extend_to_horizon(u, 4, 1), 2, 3);
  Tree ba = extend_to_horizon(u, 4, 3);
  REQUIRE(ab.size() == ba.size());
  for (Vertex v = 0; v < static_cast<Vertex>(ab.size()); ++v) {
    CHECK(ab.parent(v) == ba.parent(v));
    CHECK(ab.generation(v) == ba.generation(v));
  }
}

TEST_CASE("tree invariants on random trees")
{
  std::mt19937 g(7);
  for (int trial = 0; trial < 30; ++trial) {
    Tree t = th::random_leafless(g, 2 + trial % 9, 1 + trial % 3, 3);
    for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
      for (Vertex c : t.children(v)) CHECK(t.parent(c) == v);
      for (int n = 0; n <= 2; ++n) {
        if (t.max_generation() - t.generation(v) < n) continue;
        std::vector<Vertex> d;
        try {
          d = descendants(t, v, n);
        } catch (const Error&) {
          continue;
        }
        for (Vertex u : d) {
          CHECK(ancestor(t, u, n) == std::optional<Vertex>(v));
          for (int k = 0; k <= n; ++k) {
            auto a = ancestor(t, u, k);
            REQUIRE(a.has_value());
            auto below = descendants(t, v, n - k);
            CHECK(std::find(below.begin(), below.end(), *a) != below.end());
          }
          CHECK(t.generation(u) == t.generation(v) + n);
        }
      }
    }
  }
}

TEST_CASE("symmetric counts match the profile")
{
  Tree s = mk(R"({"rule":{"kind":"symmetric","gamma":[1,3,2],"period":2},"depth_right":6})");
  auto gamma = [](int m) { return m == 0 ? 1L : (m % 2 == 1 ? 3L : 2L); };
  for (Vertex v = 0; v < static_cast<Vertex>(s.size()); ++v)
    for (int n = 0; s.generation(v) + n <= 6; ++n) {
      long prod = 1;
      for (int k = 0; k < n; ++k) prod *= gamma(s.generation(v) + k);
      CHECK(static_cast<long>(descendants(s, v, n).size()) == prod);
    }
  CHECK(classify(s).symmetric);
  CHECK(classify(s).symmetric_exact);
}

TEST_CASE("enumeration by distance")
{
  Tree u = th::unrooted_nary(2, 2, 2);
  auto en = enumeration_by_distance(u);
  auto d = distance_from_anchor(u);
  CHECK(en.size() == u.size() - 1);
  for (std::size_t i = 1; i < en.size(); ++i) CHECK(d[en[i - 1]] <= d[en[i]]);
}
