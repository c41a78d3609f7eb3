#include <doctest.h>

#include "sstkit/error.hpp"
#include "sstkit/flow_monoid.hpp"
#include "support.hpp"

using namespace sstkit;

namespace {

constexpr Flow B = Flow::bottom, O = Flow::zero, I = Flow::one, W = Flow::omega;

FlowMatrix matrix(std::size_t n, std::initializer_list<Flow> cells) {
  FlowMatrix m(n);
  m.cells.assign(cells);
  return m;
}

const char* kCorpus[] = {"t0.sst", "t1.sst", "t2.sst", "flow4.sst", "fig3.sst"};

// Brute-force oracle: the largest flow seen over all words up to max_len.
bool omega_free_up_to(const Sst& t, std::size_t max_len) {
  bool ok = true;
  for_each_word(t.input.size(), max_len, [&](const Word& w) {
    for (std::size_t p = 0; p < t.num_states(); ++p) {
      for (std::size_t q = 0; q < t.num_states(); ++q) {
        for (std::size_t x = 0; x < t.num_vars(); ++x) {
          for (std::size_t y = 0; y < t.num_vars(); ++y) {
            if (flow_count(t, w, p, x, q, y) == Flow::omega) ok = false;
          }
        }
      }
    }
    return ok;
  });
  return ok;
}

// Oracle: w^n and w^(n+1) have equal matrices for every w up to max_len.
bool powers_stabilize(const Sst& t, std::size_t max_len, std::size_t n) {
  bool ok = true;
  for_each_word(t.input.size(), max_len, [&](const Word& w) {
    ok = matrix_of_string(t, power(w, n)) == matrix_of_string(t, power(w, n + 1));
    return ok;
  });
  return ok;
}

}  // namespace

TEST_CASE("flow semiring laws hold on all elements") {
  const Flow all[] = {B, O, I, W};
  for (Flow a : all) {
    CHECK(flow_add(a, B) == a);
    CHECK(flow_mul(a, I) == (a == B ? B : a));
    for (Flow b : all) {
      CHECK(flow_add(a, b) == flow_add(b, a));
      for (Flow c : all) {
        CHECK(flow_add(flow_add(a, b), c) == flow_add(a, flow_add(b, c)));
        CHECK(flow_mul(flow_mul(a, b), c) == flow_mul(a, flow_mul(b, c)));
      }
    }
  }
  CHECK(flow_add(I, I) == W);
  CHECK(flow_mul(I, I) == I);
  CHECK(flow_mul(O, W) == O);
}

TEST_CASE("displayed matrices of the halving machines") {
  Sst t0 = testing::load_sst("t0.sst");
  CHECK(letter_matrix(t0, 0) == matrix(2, {O, I, I, O}));
  CHECK(matrix_of_string(t0, Word{0, 0}) == matrix(2, {I, O, O, I}));
  CHECK(matrix_of_string(t0, Word{0, 0}) == epsilon_matrix(t0));

  // Between different states there is no run, hence bottom.
  Sst t1 = testing::load_sst("t1.sst");
  CHECK(letter_matrix(t1, 0) == matrix(2, {B, I, I, B}));
  CHECK(matrix_of_string(t1, Word{0, 0}) == matrix(2, {I, B, B, I}));
}

TEST_CASE("T2 matrices are identities") {
  Sst t = testing::load_sst("t2.sst");
  for_each_word(2, 4, [&](const Word& w) {
    CHECK(matrix_of_string(t, w) == epsilon_matrix(t));
    return true;
  });
}

TEST_CASE("matrix_of_string agrees with flow_count entrywise") {
  for (const char* name : kCorpus) {
    Sst t = testing::load_sst(name);
    for_each_word(t.input.size(), 6, [&](const Word& w) {
      FlowMatrix m = matrix_of_string(t, w);
      for (std::size_t p = 0; p < t.num_states(); ++p) {
        for (std::size_t x = 0; x < t.num_vars(); ++x) {
          for (std::size_t q = 0; q < t.num_states(); ++q) {
            for (std::size_t y = 0; y < t.num_vars(); ++y) {
              CHECK(m.at(pair_index(t, p, x), pair_index(t, q, y)) == flow_count(t, w, p, x, q, y));
            }
          }
        }
      }
      return true;
    });
  }
}

TEST_CASE("matrices form a morphism") {
  std::mt19937 rng(testing::seed());
  for (const char* name : kCorpus) {
    Sst t = testing::load_sst(name);
    for (int i = 0; i < 100; ++i) {
      Word u = testing::random_word(rng, t.input.size(), 6);
      Word v = testing::random_word(rng, t.input.size(), 6);
      CHECK(matrix_of_string(t, concat(u, v)) == mat_mul(matrix_of_string(t, u), matrix_of_string(t, v)));
    }
  }
}

TEST_CASE("1-boundedness verdicts agree with the brute-force oracle") {
  for (const char* name : {"t0.sst", "t1.sst", "t2.sst", "fig3.sst"}) {
    Sst t = testing::load_sst(name);
    auto v = check_one_bounded(t);
    CHECK(v.one_bounded);
    CHECK(v.exact);
    CHECK(omega_free_up_to(t, 8));
  }
  Sst f = testing::load_sst("flow4.sst");
  auto v = check_one_bounded(f);
  CHECK_FALSE(v.one_bounded);
  REQUIRE(v.witness);
  CHECK(*v.witness == Word(4, 0));
  CHECK(flow_count(f, Word(4, 0), 0, 0, 0, 3) == Flow::omega);
  CHECK(flow_count(f, Word(3, 0), 1, 0, 0, 3) == Flow::omega);
  CHECK_FALSE(omega_free_up_to(f, 4));
  CHECK(omega_free_up_to(f, 2));
}

TEST_CASE("aperiodicity verdicts agree with power stabilization") {
  Sst t2 = testing::load_sst("t2.sst");
  auto a2 = check_aperiodic(t2);
  CHECK(a2.aperiodic);
  CHECK(a2.monoid_size == 1);
  CHECK(powers_stabilize(t2, 4, 1));

  for (const char* name : {"t0.sst", "t1.sst"}) {
    Sst t = testing::load_sst(name);
    auto v = check_aperiodic(t);
    CHECK_FALSE(v.aperiodic);
    REQUIRE(v.witness);
    CHECK(*v.witness == Word{0});
    CHECK(v.witness_period == 2);
    CHECK_FALSE(powers_stabilize(t, 1, 8));
  }

  Sst fig3 = testing::load_sst("fig3.sst");
  auto v = check_aperiodic(fig3);
  CHECK(v.aperiodic);
  CHECK(powers_stabilize(fig3, 3, v.idempotent_bound));
}

TEST_CASE("non-trivial cycles exactly when not aperiodic") {
  for (const char* name : {"t0.sst", "t1.sst", "t2.sst", "fig3.sst"}) {
    Sst t = testing::load_sst(name);
    auto cyc = nontrivial_cycle_check(t);
    CHECK(cyc.found == !check_aperiodic(t).aperiodic);
    if (cyc.found) {
      // Re-verify the witness in the flow automaton.
      FlowAutomaton a = flow_automaton(t);
      BoolMatrix u = BoolMatrix::identity(a.nodes);
      for (Letter l : cyc.word) u = bool_mul(u, a.letters[l]);
      BoolMatrix ur = u;
      for (std::size_t r = 1; r < cyc.r; ++r) ur = bool_mul(ur, u);
      CHECK_FALSE(u.at(cyc.node, cyc.node));
      CHECK(ur.at(cyc.node, cyc.node));
    }
  }
  CHECK_THROWS_AS(nontrivial_cycle_check(testing::load_sst("flow4.sst")), ValidationError);
}

TEST_CASE("monoid enumeration is shortlex and respects the cap") {
  Sst t = testing::load_sst("flow4.sst");
  auto m = enumerate_monoid(t);
  CHECK_FALSE(m.truncated);
  for (std::size_t i = 0; i < m.size(); ++i) CHECK(matrix_of_string(t, m.representative[i]) == m.elements[i]);
  for (std::size_t i = 1; i < m.size(); ++i) CHECK(shortlex_less(m.representative[i - 1], m.representative[i]));
  auto capped = enumerate_monoid(t, 3);
  CHECK(capped.truncated);
  CHECK(capped.size() == 3);
  CHECK_FALSE(check_aperiodic(t, 3).exact);
}

TEST_CASE("usefulness by direct composition") {
  Sst fig3 = testing::load_sst("fig3.sst");
  Word s(5, 0);
  // X useful on columns 2..5, Y on 1..4, Z on 0..3.
  for (std::size_t i = 0; i <= 5; ++i) {
    CHECK(useful(fig3, s, i, 0) == (i >= 2));
    CHECK(useful(fig3, s, i, 1) == (i >= 1 && i <= 4));
    CHECK(useful(fig3, s, i, 2) == (i <= 3));
  }
  CHECK_THROWS_AS(useful(fig3, Word(2, 0), 0, 0), DomainError);
}

TEST_CASE("domain projection of the monoid") {
  Sst fig3 = testing::load_sst("fig3.sst");
  for_each_word(1, 7, [&](const Word& w) {
    BoolMatrix direct = underlying_monoid_matrix(fig3, w);
    CHECK(project_states(matrix_of_string(fig3, w), fig3.num_states(), fig3.num_vars()) == direct);
    CHECK(direct.at(0, 5) == output(fig3, w).has_value());
    return true;
  });
}

TEST_CASE("automaton aperiodicity") {
  Dfa even;
  even.alphabet = Alphabet({"a"});
  even.states = {"e", "o"};
  even.transition = {1, 0};
  even.finals = {true, false};
  auto v = dfa_aperiodic(even);
  CHECK_FALSE(v.aperiodic);
  CHECK(v.witness_period == 2);

  Dfa ab_star;
  ab_star.alphabet = Alphabet({"a", "b"});
  ab_star.states = {"A", "B", "dead"};
  ab_star.transition = {0, 1, 2, 1, 2, 2};
  ab_star.finals = {true, true, false};
  CHECK(dfa_aperiodic(ab_star).aperiodic);
}
