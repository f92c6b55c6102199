#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "hynet/model.hpp"

using namespace hynet;
using namespace testutil;

namespace {

std::string body(const Hypernetwork& n) {
  std::string s = serialize(n);
  auto nl = s.find('\n');
  return s.substr(nl + 1);  // drop the hypernet line
}

}  // namespace

TEST_CASE("core file parses to a first-order hypernetwork") {
  Hypernetwork n = core3();
  CHECK(n.name == "core3");
  CHECK(n.order() == 1);
  CHECK(n.vertices.size() == 3);
  CHECK(n.hyperedges.size() == 9);
  CHECK(validate(n).empty());
}

TEST_CASE("five-cell example network is valid of order 2") {
  Hypernetwork n = running_example();
  CHECK(n.order() == 2);
  CHECK(n.vertices.size() == 5);
  CHECK(n.hyperedges.size() == 17);
  int order2 = 0;
  for (const auto& h : n.hyperedges)
    if (h.order() == 2) ++order2;
  CHECK(order2 == 6);
  CHECK(validate(n).empty());
}

TEST_CASE("empty hypernetwork is valid of order 0") {
  Hypernetwork n = parse("");
  CHECK(n.order() == 0);
  CHECK(n.vertices.empty());
  CHECK(validate(n).empty());
}

TEST_CASE("equal-type hyperedges of different order violate condition 1") {
  Hypernetwork n = parse_unchecked(
      "vertex a type t\n"
      "vertex b type t\n"
      "edge e1 type c target a sources a\n"
      "edge e2 type c target b sources a b\n");
  auto vios = validate(n);
  REQUIRE(!vios.empty());
  CHECK(vios[0].condition == 1);
  CHECK_THROWS_AS(
      parse("vertex a type t\nvertex b type t\n"
            "edge e1 type c target a sources a\nedge e2 type c target b sources a b\n"),
      Error);
}

TEST_CASE("equal-type hyperedges with different target types violate condition 1") {
  Hypernetwork n = parse_unchecked(
      "vertex a type t\n"
      "vertex b type u\n"
      "edge e1 type c target a sources a\n"
      "edge e2 type c target b sources a\n");
  auto vios = validate(n);
  REQUIRE(!vios.empty());
  CHECK(vios[0].condition == 1);
}

TEST_CASE("equal-type hyperedges with different source types violate condition 1") {
  Hypernetwork n = parse_unchecked(
      "vertex a type t\n"
      "vertex b type u\n"
      "vertex a2 type t\n"
      "edge e1 type c target a sources a\n"
      "edge e2 type c target a2 sources b\n");
  auto vios = validate(n);
  REQUIRE(!vios.empty());
  CHECK(vios[0].condition == 1);
}

TEST_CASE("same-type vertices with different in-edge multisets violate condition 2") {
  Hypernetwork n = parse_unchecked(
      "vertex a type t\n"
      "vertex b type t\n"
      "edge e1 type c target a sources a\n");
  auto vios = validate(n);
  REQUIRE(!vios.empty());
  CHECK(vios[0].condition == 2);
}

TEST_CASE("same-type vertices with different dimensions violate condition 2") {
  Hypernetwork n = parse_unchecked(
      "vertex a type t dim 2\n"
      "vertex b type t\n");
  auto vios = validate(n);
  REQUIRE(!vios.empty());
  CHECK(vios[0].condition == 2);
}

TEST_CASE("referential problems are reported before type conditions") {
  SUBCASE("unknown target") {
    auto vios = validate(parse_unchecked("vertex a type t\nedge e type c target x sources a\n"));
    REQUIRE(!vios.empty());
    CHECK(vios[0].condition == 0);
  }
  SUBCASE("unknown source") {
    auto vios = validate(parse_unchecked("vertex a type t\nedge e type c target a sources x\n"));
    REQUIRE(!vios.empty());
    CHECK(vios[0].condition == 0);
  }
  SUBCASE("duplicate edge id") {
    auto vios = validate(
        parse_unchecked("vertex a type t\n"
                        "edge e type c target a sources a\n"
                        "edge e type c target a sources a\n"));
    REQUIRE(!vios.empty());
    CHECK(vios[0].condition == 0);
  }
}

TEST_CASE("syntax errors carry line numbers") {
  try {
    parse("vertex a type t\nnonsense here\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse("hypernet a\nhypernet b\n"), ParseError);
  CHECK_THROWS_AS(parse("vertex a type t dim 0\n"), ParseError);
  CHECK_THROWS_AS(parse("vertex a\n"), ParseError);
  CHECK_THROWS_AS(parse("edge e type c target a\n"), ParseError);
}

TEST_CASE("comments and duplicate vertex ids") {
  Hypernetwork n = parse("# comment line\nvertex a type t # trailing\n");
  CHECK(n.vertices.size() == 1);
  CHECK_THROWS_AS(parse("vertex a type t\nvertex a type t\n"), ParseError);
}

TEST_CASE("serialize parse round-trip is the identity on canonical text") {
  std::string text = slurp(data_file("running.hn"));
  REQUIRE(!text.empty());
  Hypernetwork n = parse(text);
  CHECK(serialize(n) == text);
  CHECK(serialize(parse(serialize(n))) == serialize(n));
}

TEST_CASE("restriction to the core recovers the core") {
  Hypernetwork n = running_example();
  Hypernetwork sub = sub_hypernetwork(n, {"v0", "v1", "v2"});
  CHECK(body(sub) == body(core3()));
  CHECK(validate(sub).empty());

  std::set<std::string> all;
  for (const auto& [v, info] : n.vertices) all.insert(v);
  CHECK(body(sub_hypernetwork(n, all)) == body(n));

  CHECK_THROWS_AS(sub_hypernetwork(n, {"w0"}), Error);
}

TEST_CASE("undirected expansion enumerates all ordered source tuples") {
  SUBCASE("three vertices") {
    auto edges = expand_undirected({"a", "b", "c"}, "u");
    CHECK(edges.size() == 27);
    std::set<std::string> verts = {"a", "b", "c"};
    std::set<std::pair<std::string, std::vector<std::string>>> got, want;
    std::map<std::string, int> per_target;
    for (const auto& h : edges) {
      CHECK(h.order() == 2);
      CHECK(h.etype == "u");
      got.insert({h.target, h.sources});
      per_target[h.target]++;
    }
    for (const auto& t : verts)
      for (const auto& s1 : verts)
        for (const auto& s2 : verts) want.insert({t, {s1, s2}});
    CHECK(got == want);
    for (const auto& [t, c] : per_target) CHECK(c == 9);
  }
  SUBCASE("two vertices give order-1 edges including self-loops") {
    auto edges = expand_undirected({"a", "b"}, "u");
    CHECK(edges.size() == 4);
    int self_loops = 0;
    for (const auto& h : edges) {
      CHECK(h.order() == 1);
      if (h.sources[0] == h.target) ++self_loops;
    }
    CHECK(self_loops == 2);
  }
}

TEST_CASE("state layout is lexicographic with per-vertex dimensions") {
  Hypernetwork n = parse(
      "vertex b type t dim 2\n"
      "vertex a type u dim 3\n"
      "vertex c type t dim 2\n");
  StateLayout layout(n);
  CHECK(layout.order == std::vector<std::string>{"a", "b", "c"});
  CHECK(layout.offset.at("a") == 0);
  CHECK(layout.offset.at("b") == 3);
  CHECK(layout.offset.at("c") == 5);
  CHECK(layout.dim.at("a") == 3);
  CHECK(layout.total == 7);
}

TEST_CASE("in-edges are sorted by edge type then id") {
  Hypernetwork n = running_example();
  auto ins = n.in_edges("w0");
  REQUIRE(ins.size() == 4);
  CHECK(ins[0]->id == "agg_012");
  CHECK(ins[1]->id == "agg_120");
  CHECK(ins[2]->id == "agg_201");
  CHECK(ins[3]->id == "wself_w0");
}

TEST_CASE("random networks are valid by construction") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    Hypernetwork n = random_network(rng, i % 3 == 0);
    auto vios = validate(n);
    CHECK(vios.empty());
    if (!vios.empty()) {
      CAPTURE(serialize(n));
      CAPTURE(vios[0].message);
      break;
    }
  }
}
