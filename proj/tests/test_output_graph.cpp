#include <doctest.h>

#include <algorithm>

#include "sstkit/error.hpp"
#include "sstkit/flow_monoid.hpp"
#include "sstkit/output_graph.hpp"
#include "support.hpp"

using namespace sstkit;
using testing::ab;

namespace {

const char* kOneBounded[] = {"t0.sst", "t1.sst", "t2.sst", "fig3.sst"};

std::size_t node(const SstOutputGraph& g, std::uint32_t x, Side d, std::size_t i) {
  auto n = g.find(x, d, i);
  REQUIRE(n);
  return *n;
}

const GraphEdge* edge(const SstOutputGraph& g, std::size_t from, std::size_t to) {
  for (const auto& e : g.edges) {
    if (e.from == from && e.to == to) return &e;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("five-variable example graph") {
  Sst t = testing::load_sst("fig3.sst");
  Word s(5, 0);
  auto g = build_graph(t, s);
  CHECK(g.nodes.size() == 24);
  CHECK(t.output.render(readout(g)) == "ceaeaaafbdcdcf");
  const std::uint32_t X = 0, Z = 2;
  const auto* e0 = edge(g, node(g, Z, Side::in, 0), node(g, Z, Side::out, 0));
  REQUIRE(e0);
  CHECK(e0->label.empty());
  const auto* c = edge(g, node(g, Z, Side::out, 0), node(g, Z, Side::out, 1));
  REQUIRE(c);
  CHECK(t.output.render(c->label) == "c");
  auto p = unique_path_check(g);
  REQUIRE(p.ok);
  CHECK(p.path.front() == node(g, X, Side::in, 5));
  CHECK(p.path.back() == node(g, X, Side::out, 5));

  auto full = build_graph(t, s, GraphOptions{true});
  CHECK(full.nodes.size() == 36);
  CHECK(full.useful_nodes() == 24);
  CHECK(t.output.render(readout(full)) == "ceaeaaafbdcdcf");
  CHECK(to_dot(t, full).find("style=dashed") != std::string::npos);
}

TEST_CASE("T2 graphs") {
  Sst t = testing::load_sst("t2.sst");
  auto g0 = build_graph(t, Word{});
  CHECK(g0.nodes.size() == 6);
  std::size_t eps_update = 0;
  for (const auto& e : g0.edges) eps_update += e.kind == EdgeKind::update && e.label.empty();
  CHECK(eps_update == 3);
  CHECK(readout(g0).empty());
  CHECK(t.output.render(readout(build_graph(t, ab("a")))) == "aa");
  auto g = build_graph(t, ab("abaa"));
  CHECK(unique_path_check(g).ok);
  CHECK(t.output.render(readout(g)) == "aaaaabab");
}

TEST_CASE("graph preconditions") {
  CHECK_THROWS_AS(build_graph(testing::load_sst("flow4.sst"), Word(4, 0)), ValidationError);
  CHECK_THROWS_AS(build_graph(testing::load_sst("fig3.sst"), Word(3, 0)), DomainError);
  SstOutputGraph empty;
  auto v = unique_path_check(empty);
  CHECK_FALSE(v.ok);
  CHECK(v.violation == "no source");
}

TEST_CASE("readout equals output on the corpus") {
  for (const char* name : kOneBounded) {
    Sst t = testing::load_sst(name);
    for_each_word(t.input.size(), 6, [&](const Word& s) {
      auto out = output(t, s);
      if (!out) return true;
      auto g = build_graph(t, s);
      CHECK(readout(g) == *out);
      CHECK(g.nodes.size() == 2 * [&] {
        std::size_t c = 0;
        for (const auto& row : usefulness_table(t, s)) c += std::count(row.begin(), row.end(), true);
        return c;
      }());
      return true;
    });
  }
}

TEST_CASE("in-out paths spell variable values and usefulness matches composition") {
  for (const char* name : kOneBounded) {
    Sst t = testing::load_sst(name);
    for_each_word(t.input.size(), 5, [&](const Word& s) {
      auto r = run(t, s);
      if (!r || !t.final[r->states.back()]) return true;
      auto g = build_graph(t, s);
      auto values = variable_values(t, *r);
      auto table = usefulness_table(t, s);
      for (std::size_t i = 0; i <= s.size(); ++i) {
        for (std::uint32_t x = 0; x < t.num_vars(); ++x) {
          CHECK(table[i][x] == useful(t, s, i, x));
          if (!table[i][x]) continue;
          auto w = path_word(g, node(g, x, Side::in, i), node(g, x, Side::out, i));
          REQUIRE(w);
          CHECK(*w == values[i][x]);
        }
      }
      return true;
    });
  }
}

TEST_CASE("path conditions on the five-variable example") {
  Sst t = testing::load_sst("fig3.sst");
  Word s(5, 0);
  auto v = path_characterization_check(t, s);
  CHECK_MESSAGE(v.ok, v.from << " -> " << v.to);
  const std::uint32_t X = 0, Z = 2;
  auto reach = reachability(build_graph(t, s));
  auto g = build_graph(t, s);
  CHECK(reach[node(g, X, Side::in, 3)][node(g, Z, Side::out, 2)]);
  CHECK(path_conditions(t, s, X, Side::in, 3, Z, Side::out, 2) == 4u);
  CHECK(reach[node(g, Z, Side::in, 1)][node(g, Z, Side::out, 0)]);
  CHECK((path_conditions(t, s, Z, Side::in, 1, Z, Side::out, 0) & 1u) != 0);
  CHECK((path_conditions(t, s, Z, Side::in, 1, Z, Side::in, 0) & 1u) != 0);
}

TEST_CASE("path characterization on all short inputs") {
  for (const char* name : {"t2.sst", "fig3.sst"}) {
    Sst t = testing::load_sst(name);
    for_each_word(t.input.size(), 5, [&](const Word& s) {
      if (!output(t, s)) return true;
      auto v = path_characterization_check(t, s);
      CHECK_MESSAGE(v.ok, name << " on " << testing::str(s) << ": " << v.from << " -> " << v.to);
      return true;
    });
  }
}

TEST_CASE("DOT naming") {
  Sst t = testing::load_sst("t2.sst");
  std::string dot = to_dot(t, build_graph(t, ab("a")));
  CHECK(dot.find("X_in_1 -> X_in_0 [label=\"\"]") != std::string::npos);
  CHECK(dot.find("X_out_0 -> X_out_1 [label=\"a\"]") != std::string::npos);
  CHECK(dot.find("style=dotted") != std::string::npos);
}
