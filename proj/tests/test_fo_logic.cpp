#include <doctest.h>

#include <map>

#include "sstkit/error.hpp"
#include "sstkit/fo_logic.hpp"
#include "support.hpp"

using namespace sstkit;

namespace {

StringModel model(const std::string& s) {
  StringModel m;
  for (char c : s) m.labels.emplace_back(1, c);
  return m;
}

// Random formula of quantifier rank at most `rank` whose free variables are among `bound`.
Formula random_formula(std::mt19937& rng, std::size_t rank, std::vector<std::string>& bound, int size) {
  using K = Formula::Kind;
  std::uniform_int_distribution<int> pick(0, 9);
  auto var = [&] { return bound[std::uniform_int_distribution<std::size_t>(0, bound.size() - 1)(rng)]; };
  int choice = pick(rng);
  if (size <= 0 || (choice < 3 && !bound.empty())) {
    if (bound.empty()) return choice % 2 ? Formula::truth() : Formula::falsity();
    switch (choice % 3) {
      case 0: return Formula::label(choice % 2 ? "a" : "b", var());
      case 1: return Formula::binary(K::le, var(), var());
      default: return Formula::binary(K::eq, var(), var());
    }
  }
  if (choice < 5 && rank > 0) {
    std::string v = "v" + std::to_string(bound.size());
    bound.push_back(v);
    Formula body = random_formula(rng, rank - 1, bound, size - 1);
    bound.pop_back();
    return Formula::quantify(choice % 2 ? K::exists : K::forall, v, std::move(body));
  }
  if (choice < 7) return Formula::negate(random_formula(rng, rank, bound, size - 1));
  Formula a = random_formula(rng, rank, bound, size / 2);
  Formula b = random_formula(rng, rank, bound, size / 2);
  return Formula::connect(choice == 7 ? K::conjunction : choice == 8 ? K::disjunction : K::implication, a, b);
}

std::vector<std::string> all_words(std::size_t max_len) {
  std::vector<std::string> out;
  for_each_word(2, max_len, [&](const Word& w) {
    out.push_back(testing::str(w));
    return true;
  });
  return out;
}

}  // namespace

TEST_CASE("parse and print round trip") {
  for (const char* text : {"(forall x (implies (last x) (lab b x)))", "(exists y (and (succ x y) (not (= x y))))",
                           "(or (first x) (le x y))", "(true)", "(false)"}) {
    Formula f = parse_formula(text);
    CHECK(to_string(f) == text);
    CHECK(parse_formula(to_string(f)) == f);
  }
  CHECK(to_string(parse_formula("(and (true) (false) (true))")) == "(and (and (true) (false)) (true))");
  CHECK_THROWS_AS(parse_formula("(exists _1 (true))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(bogus x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(lab a x"), ParseError);
  CHECK_THROWS_AS(parse_formula("(true) (true)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(and (true))"), ParseError);
}

TEST_CASE("quantifier rank") {
  CHECK(qrank(parse_formula("(le x y)")) == 0);
  CHECK(qrank(parse_formula("(lt x y)")) == 0);
  CHECK(qrank(parse_formula("(succ x y)")) == 1);
  CHECK(qrank(parse_formula("(last x)")) == 2);
  CHECK(qrank(parse_formula("(first x)")) == 2);
  CHECK(qrank(parse_formula("(forall x (implies (last x) (lab b x)))")) == 3);
  CHECK(qrank(parse_formula("(and (exists x (true)) (exists x (exists y (true))))")) == 2);
}

TEST_CASE("macro expansion preserves meaning and free variables") {
  Formula f = parse_formula("(and (succ x y) (or (first x) (last y)))");
  Formula g = expand_macros(f);
  CHECK_FALSE(has_macros(g));
  CHECK(free_variables(g) == std::set<std::string>{"x", "y"});
  for (const auto& s : all_words(4)) {
    for (std::size_t i = 1; i <= s.size(); ++i) {
      for (std::size_t j = 1; j <= s.size(); ++j) {
        bool direct = j == i + 1 && (i == 1 || j == s.size());
        CHECK(eval(f, model(s), {{"x", i}, {"y", j}}) == direct);
      }
    }
  }
}

TEST_CASE("ends-with-b sentence") {
  Formula f = parse_formula("(forall x (implies (last x) (lab b x)))");
  for (const auto& s : all_words(5)) CHECK(eval(f, model(s)) == (s.empty() || s.back() == 'b'));
}

TEST_CASE("evaluation guards") {
  Formula f = parse_formula("(lab a x)");
  CHECK_THROWS_AS(eval(f, model("ab")), ValidationError);
  CHECK_THROWS_AS(eval(f, model("ab"), {{"x", 3}}), ValidationError);
  Formula deep = parse_formula("(forall x (forall y (forall z (le x x))))");
  CHECK_THROWS_AS(eval(deep, model("abababab"), {}, 50), ResourceLimit);
}

TEST_CASE("k-equivalence matches known characterizations") {
  for (std::size_t k = 0; k <= 3; ++k) {
    for (std::size_t m = 0; m <= 9; ++m) {
      for (std::size_t n = 0; n <= 9; ++n) {
        // Unary words agree up to rank k iff equal or both at least 2^k - 1.
        const std::size_t t = (std::size_t{1} << k) - 1;
        bool expect = m == n || (m >= t && n >= t);
        CHECK(equiv_k(model(std::string(m, 'a')), model(std::string(n, 'a')), k) == expect);
      }
    }
  }
  for (const auto& u : all_words(4)) {
    for (const auto& v : all_words(4)) {
      bool same_letters = (u.find('a') != std::string::npos) == (v.find('a') != std::string::npos) &&
                          (u.find('b') != std::string::npos) == (v.find('b') != std::string::npos);
      CHECK(equiv_k(model(u), model(v), 1) == same_letters);
      CHECK(equiv_k(model(u), model(v), 0));
    }
  }
}

TEST_CASE("k-equivalent words satisfy the same sampled sentences") {
  std::mt19937 rng(testing::seed());
  auto words = all_words(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t k = trial % 3;
    std::vector<std::string> bound;
    Formula f = random_formula(rng, k, bound, 8);
    REQUIRE(qrank(f) <= k);
    REQUIRE(free_variables(f).empty());
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (int pair = 0; pair < 20; ++pair) {
      const auto& u = words[pick(rng)];
      const auto& v = words[pick(rng)];
      if (equiv_k(model(u), model(v), k)) CHECK(eval(f, model(u)) == eval(f, model(v)));
    }
  }
}

TEST_CASE("powers stabilize") {
  for (std::size_t k = 0; k <= 2; ++k) {
    for (const char* s : {"a", "ab", "ba"}) {
      std::string lo, hi;
      for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) lo += s;
      hi = lo + s;
      CHECK(equiv_k(model(lo), model(hi), k));
    }
  }
  CHECK_FALSE(equiv_k(model("ab"), model("abab"), 2));
}

TEST_CASE("k-equivalence is a congruence") {
  std::mt19937 rng(testing::seed());
  std::map<std::size_t, std::vector<std::vector<std::string>>> classes;
  auto words = all_words(5);
  for (std::size_t k = 0; k <= 2; ++k) {
    for (const auto& w : words) {
      bool placed = false;
      for (auto& c : classes[k]) {
        if (equiv_k(model(c.front()), model(w), k)) {
          c.push_back(w);
          placed = true;
          break;
        }
      }
      if (!placed) classes[k].push_back({w});
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t k = trial % 3;
    const auto& cs = classes[k];
    auto sample = [&](const std::vector<std::string>& c) {
      return c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)];
    };
    const auto& c1 = cs[std::uniform_int_distribution<std::size_t>(0, cs.size() - 1)(rng)];
    const auto& c2 = cs[std::uniform_int_distribution<std::size_t>(0, cs.size() - 1)(rng)];
    std::string s1 = sample(c1), t1 = sample(c1), s2 = sample(c2), t2 = sample(c2);
    CHECK(equiv_k(model(s1 + s2), model(t1 + t2), k));
  }
}

TEST_CASE("transfer of rank-k formulas across (k+2)-equivalent factors") {
  std::mt19937 rng(testing::seed());
  auto words = all_words(3);
  for (std::size_t k = 0; k <= 1; ++k) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& u : words) {
      for (const auto& v : words) {
        if (equiv_k(model(u), model(v), k + 2)) pairs.emplace_back(u, v);
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<std::string> bound{"x", "y"};
      Formula phi = random_formula(rng, k, bound, 6);
      bound = {"x"};
      Formula psi = random_formula(rng, k, bound, 6);
      auto [s1, t1] = pairs[pick(rng)];
      auto [s2, t2] = pairs[pick(rng)];
      auto [s3, t3] = pairs[pick(rng)];
      for (const char* a : {"a", "b"}) {
        CHECK(eval(psi, model(s1 + a + s2), {{"x", s1.size() + 1}}) ==
              eval(psi, model(t1 + a + t2), {{"x", t1.size() + 1}}));
        for (const char* b : {"a", "b"}) {
          Valuation nu{{"x", s1.size() + 1}, {"y", s1.size() + s2.size() + 2}};
          Valuation nu2{{"x", t1.size() + 1}, {"y", t1.size() + t2.size() + 2}};
          CHECK(eval(phi, model(s1 + a + s2 + b + s3), nu) == eval(phi, model(t1 + a + t2 + b + t3), nu2));
        }
      }
    }
  }
}

TEST_CASE("renaming a bound variable keeps the truth value") {
  Formula f = parse_formula("(exists y (and (le x y) (lab b y)))");
  Formula g = parse_formula("(exists w (and (le x w) (lab b w)))");
  for (const auto& s : all_words(4)) {
    for (std::size_t i = 1; i <= s.size(); ++i) CHECK(eval(f, model(s), {{"x", i}}) == eval(g, model(s), {{"x", i}}));
  }
}

TEST_CASE("higher rank refines lower rank") {
  auto words = all_words(4);
  for (const auto& u : words) {
    for (const auto& v : words) {
      if (equiv_k(model(u), model(v), 3)) CHECK(equiv_k(model(u), model(v), 2));
      if (equiv_k(model(u), model(v), 2)) CHECK(equiv_k(model(u), model(v), 1));
    }
  }
}

TEST_CASE("string structures") {
  RelStructure ok{3, {{true, true, true}, {false, true, true}, {false, false, true}}, {{"a"}, {"b"}, {"a"}}};
  CHECK(is_string_check(ok));
  RelStructure two_labels = ok;
  two_labels.labels[1] = {"a", "b"};
  CHECK_FALSE(is_string_check(two_labels));
  RelStructure partial = ok;
  partial.order[0][2] = false;
  CHECK_FALSE(is_string_check(partial));
  RelStructure cyclic = ok;
  cyclic.order[2][0] = true;
  CHECK_FALSE(is_string_check(cyclic));
}

TEST_CASE("game budget") {
  CHECK_THROWS_AS(equiv_k(model(std::string(30, 'a')), model(std::string(31, 'a')), 4, 100), ResourceLimit);
}
