#include <doctest.h>

#include <algorithm>

#include "sstkit/error.hpp"
#include "sstkit/fo_transducer.hpp"
#include "support.hpp"

using namespace sstkit;
using testing::ab;

namespace {

std::string render(const FoTransducer& t, const Word& w) { return t.output.render(w); }

std::string f1_text_without(const std::string& line) {
  std::string text = testing::slurp("f1.fot");
  auto at = text.find(line);
  REQUIRE(at != std::string::npos);
  return text.erase(at, line.size() + 1);
}

}  // namespace

TEST_CASE("f1 parses with three copies") {
  FoTransducer f = testing::load_fot("f1.fot");
  CHECK(f.copies == 3);
  CHECK(qrank_fot(f) == 1);
  CHECK(qrank_fot(testing::load_fot("identity.fot")) == 1);
  CHECK_THROWS_AS(parse_fot(f1_text_without("ord 2 1: (false)")), ValidationError);
  CHECK_THROWS_AS(parse_fot(f1_text_without("dom: (true)")), ParseError);
}

TEST_CASE("formula free variables are checked") {
  std::string text = testing::slurp("identity.fot");
  CHECK_THROWS_AS(parse_fot(text + "pos 1 a: (lab a y)\n"), ParseError);
  std::string dom = text;
  dom.replace(dom.find("dom: (true)"), 11, "dom: (lab a x)");
  CHECK_THROWS_AS(parse_fot(dom), ParseError);
  CHECK_THROWS_AS(parse_fot(text + "ord 1 2: (true)\n"), ParseError);
}

TEST_CASE("quantifier rank of a transducer with a quantified domain") {
  std::string text = testing::slurp("identity.fot");
  text.replace(text.find("dom: (true)"), 11, "dom: (forall x (implies (last x) (lab b x)))");
  FoTransducer t = parse_fot(text);
  CHECK(qrank_fot(t) == 1 + qrank(parse_formula("(forall x (implies (last x) (lab b x)))")));
  CHECK(qrank_fot(t) == 4);
  CHECK_FALSE(output_string(t, ab("ba")));
  CHECK(render(t, *output_string(t, ab("ab"))) == "ab");
}

TEST_CASE("alive nodes") {
  FoTransducer f = testing::load_fot("f1.fot");
  Word s = ab("abaabbbba");
  for (std::size_t j = 1; j <= s.size(); ++j) {
    CHECK(alive(f, s, 1, j).has_value() == (s[j - 1] == 0));
    CHECK(alive(f, s, 2, j) == std::optional<Letter>(s[j - 1]));
    CHECK(alive(f, s, 3, j).has_value() == (s[j - 1] == 1));
  }
  FoTransducer id = testing::load_fot("identity.fot");
  CHECK(alive(id, ab("ab"), 1, 2) == std::optional<Letter>(1));

  std::string clash = testing::slurp("identity.fot");
  clash.replace(clash.find("pos 1 b: (lab b x)"), 18, "pos 1 b: (true)");
  CHECK_THROWS_AS(alive(parse_fot(clash), ab("a"), 1, 1), ValidationError);
}

TEST_CASE("f1 outputs") {
  FoTransducer f = testing::load_fot("f1.fot");
  CHECK(render(f, *output_string(f, ab("abaa"))) == "aaaaabab");
  CHECK(output_string(f, Word{})->empty());
  CHECK(render(f, *output_string(f, ab("b"))) == "bb");
  auto m = output_structure(f, ab("abaa"));
  REQUIRE(m);
  CHECK(m->size() == 8);
  for_each_word(2, 6, [&](const Word& w) {
    auto out = output_string(f, w);
    REQUIRE(out);
    CHECK(testing::str(*out) == testing::f1_oracle(testing::str(w)));
    CHECK(out->size() == output_structure(f, w)->size());
    return true;
  });
}

TEST_CASE("f1 agrees with T2") {
  Machine f = testing::load_fot("f1.fot");
  Machine t2 = testing::load_sst("t2.sst");
  auto v = equiv_bounded(f, t2, 6);
  CHECK(v.equal);
  CHECK(v.words_checked == 127);
}

TEST_CASE("identity transducer structure") {
  FoTransducer id = testing::load_fot("identity.fot");
  auto m = output_structure(id, ab("ab"));
  REQUIRE(m);
  REQUIRE(m->size() == 2);
  CHECK(m->order[0][1]);
  CHECK_FALSE(m->order[1][0]);
  CHECK(m->next[0] == std::optional<std::size_t>(1));
}

TEST_CASE("non-string outputs are rejected") {
  std::string text = testing::slurp("f1.fot");
  text.replace(text.find("ord 1 2: (true)"), 15, "ord 1 2: (false)");
  FoTransducer t = parse_fot(text);
  CHECK_THROWS_AS(output_string(t, ab("ab")), ValidationError);
}

TEST_CASE("heads and tails on the running example") {
  FoTransducer f = testing::load_fot("f1.fot");
  Word s = ab("abaabbbba");
  auto r = heads_tails(f, s, 3);
  std::vector<CopyNode> heads{{1, 1}, {3, 2}}, tails{{3, 1}, {2, 3}};
  CHECK(r.heads == heads);
  CHECK(r.tails == tails);
  REQUIRE(r.segments.size() == 2);
  CHECK(render(f, r.segments[0].word) == "aa");
  CHECK(render(f, r.segments[1].word) == "abab");
  CHECK(r.head_addresses[1].prefix == ab("ab"));
  CHECK(r.head_addresses[1].infix.empty());
  CHECK(verify_head_uniqueness(f, s, 3, qrank_fot(f)));

  FoTransducer id = testing::load_fot("identity.fot");
  auto ri = heads_tails(id, ab("ab"), 1);
  CHECK(ri.heads == std::vector<CopyNode>{{1, 1}});
  CHECK(ri.tails == std::vector<CopyNode>{{1, 1}});
  CHECK_THROWS_AS(heads_tails(id, ab("ab"), 3), ValidationError);
}

TEST_CASE("segments partition the restricted graph") {
  FoTransducer f = testing::load_fot("f1.fot");
  for_each_word(2, 5, [&](const Word& s) {
    for (std::size_t i = 1; i <= s.size(); ++i) {
      auto r = heads_tails(f, s, i);
      CHECK(r.heads.size() == r.tails.size());
      CHECK(r.heads.size() <= f.copies * s.size());
      std::vector<CopyNode> covered;
      for (const auto& seg : r.segments) covered.insert(covered.end(), seg.nodes.begin(), seg.nodes.end());
      std::sort(covered.begin(), covered.end());
      CHECK(std::adjacent_find(covered.begin(), covered.end()) == covered.end());
      std::vector<CopyNode> expected;
      auto m = output_structure(f, s);
      for (const auto& n : m->nodes) {
        if (n.position <= i) expected.push_back(n);
      }
      std::sort(expected.begin(), expected.end());
      CHECK(covered == expected);
      CHECK(verify_head_uniqueness(f, s, i, qrank_fot(f)));
    }
    if (!s.empty()) {
      auto whole = heads_tails(f, s, s.size());
      CHECK(whole.heads.size() == 1);
      CHECK(whole.segments[0].word == *output_string(f, s));
    }
    return true;
  });
}

TEST_CASE("DOT export lists alive nodes") {
  FoTransducer f = testing::load_fot("f1.fot");
  auto m = output_structure(f, ab("ab"));
  std::string dot = to_dot(f, *m);
  CHECK(dot.find("label=\"1^1:a\"") != std::string::npos);
  CHECK(dot.find("2^1") == std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 3);
}
