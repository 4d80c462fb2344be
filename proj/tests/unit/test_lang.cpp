#include <doctest/doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "veemap/error.hpp"
#include "veemap/lang.hpp"

using namespace veemap;

namespace {

std::vector<std::string> render_all(const Dfa& d, const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(d.alphabet().render(w));
  return out;
}

Dfa random_dfa(std::mt19937_64& rng, int max_states, std::size_t symbols = 2) {
  std::uniform_int_distribution<int> n_dist(1, max_states);
  const int n = n_dist(rng);
  std::uniform_int_distribution<int> q_dist(0, n - 1);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < symbols; ++a) names.push_back(std::string(1, static_cast<char>('0' + a)));
  std::vector<bool> acc;
  std::vector<std::vector<int>> delta;
  for (int q = 0; q < n; ++q) {
    acc.push_back(coin(rng));
    std::vector<int> row;
    for (std::size_t a = 0; a < symbols; ++a) row.push_back(q_dist(rng));
    delta.push_back(row);
  }
  return Dfa(Alphabet(names), n, q_dist(rng), acc, delta);
}

oracle::Pred member(const Dfa& d) {
  return [d](const std::string& w) { return d.accepts(d.alphabet().parse(w)); };
}

// ε+(0+1)*1 spread over six states, four of them redundant
Dfa padded_thompson() {
  return Dfa(Alphabet::binary(), 6, 0, {true, false, true, false, true, true},
             {{1, 2}, {3, 4}, {1, 4}, {1, 2}, {3, 2}, {5, 5}});
}

}  // namespace

TEST_SUITE("alphabet") {
  TEST_CASE("construction rejects empty, duplicate and blank symbols") {
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), Error);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), Error);
    CHECK_THROWS_AS(Alphabet({"a", ""}), Error);
    CHECK(Alphabet({"b", "a"}).index("a") == 1);
  }

  TEST_CASE("parse uses longest match and render round-trips") {
    const Alphabet a({"0_A", "1_A", "@", "0"});
    const Word w = a.parse("0_A @ 0 1_A");
    CHECK(w == Word{0, 2, 3, 1});
    CHECK(a.parse(a.render(w)) == w);
    CHECK(Alphabet::binary().render(fx::w("0110")) == "0110");
    CHECK_THROWS_AS(Alphabet::binary().parse("012"), Error);
  }
}

TEST_SUITE("regex") {
  TEST_CASE("membership agrees with std::regex on every word up to length 8") {
    for (const char* re : {"eps+(0+1)*1", "(0+1)*1", "(01)*", "1*", "0*1*0", "(0+1)*", "eps", "(00+1)*(eps+0)"}) {
      const Dfa d = from_regex(re, Alphabet::binary());
      for (const auto& word : oracle::all_words("01", 8))
        CHECK_MESSAGE(d.accepts(Alphabet::binary().parse(word)) == oracle::regex_member(re, word), re, " on '", word, "'");
    }
  }

  TEST_CASE("inferred alphabet is the sorted set of symbols") {
    CHECK(from_regex("b(a+c)*").alphabet() == Alphabet({"a", "b", "c"}));
  }

  TEST_CASE("syntax errors are reported") {
    CHECK_THROWS_AS(from_regex("(01", Alphabet::binary()), Error);
    CHECK_THROWS_AS(from_regex("0+", Alphabet::binary()), Error);
    CHECK_THROWS_AS(from_regex("2", Alphabet::binary()), Error);
  }
}

TEST_SUITE("minimize") {
  TEST_CASE("padded automaton for the Thompson language shrinks to two states") {
    const Dfa d = padded_thompson();
    REQUIRE(oracle::table_filling_classes(d) == 2);
    const Dfa m = minimize(d);
    CHECK(m.num_states() == 2);
    CHECK(equivalent(m, fx::L()));
  }

  TEST_CASE("minimal input is returned unchanged") {
    const Dfa m = minimize(padded_thompson());
    CHECK(minimize(m) == m);
  }

  TEST_CASE("empty language gives one rejecting state") {
    const Dfa m = minimize(Dfa::empty_language(Alphabet::binary()));
    CHECK(m.num_states() == 1);
    CHECK_FALSE(m.accepting(0));
  }

  TEST_CASE("random automata: language preserved, size matches table filling, idempotent") {
    std::mt19937_64 rng(1101);
    for (int trial = 0; trial < 200; ++trial) {
      const Dfa d = random_dfa(rng, 6, trial % 3 == 0 ? 3 : 2);
      const Dfa m = minimize(d);
      CHECK(static_cast<std::size_t>(m.num_states()) == oracle::table_filling_classes(d));
      CHECK(render_all(d, enumerate(d, 8)) == render_all(m, enumerate(m, 8)));
      CHECK(minimize(m) == m);
    }
  }
}

TEST_SUITE("equivalence") {
  TEST_CASE("Thompson language against its minimized self") {
    CHECK(equivalent(fx::L(), minimize(padded_thompson())));
  }

  TEST_CASE("eps+(0+1)*1 differs from (0+1)*1 on the empty word") {
    const Dfa b = from_regex("(0+1)*1", Alphabet::binary());
    auto w = distinguishing_word(fx::L(), b);
    REQUIRE(w.has_value());
    CHECK(w->empty());
    // brute force: the first word of length <= 2 on which they differ
    for (const auto& word : oracle::all_words("01", 2))
      if (oracle::in_thompson(word) != oracle::regex_member("(0+1)*1", word)) {
        CHECK(word.empty());
        break;
      }
  }

  TEST_CASE("empty language against {eps}") {
    CHECK_FALSE(equivalent(Dfa::empty_language(Alphabet::binary()), from_regex("eps", Alphabet::binary())));
  }

  TEST_CASE("alphabet mismatch throws") {
    CHECK_THROWS_AS(equivalent(fx::L(), from_regex("ab")), Error);
  }
}

TEST_SUITE("enumerate") {
  TEST_CASE("Thompson language up to length 2") {
    CHECK(render_all(fx::L(), enumerate(fx::L(), 2)) == std::vector<std::string>{"", "1", "01", "11"});
    CHECK(render_all(fx::L(), enumerate(fx::L(), 2)) == oracle::scan(oracle::in_thompson, "01", 2));
  }

  TEST_CASE("max_len 0 lists eps iff the start state accepts") {
    CHECK(enumerate(fx::L(), 0).size() == 1);
    CHECK(enumerate(from_regex("(0+1)*1", Alphabet::binary()), 0).empty());
  }

  TEST_CASE("full language up to length 1") {
    const Dfa full = Dfa::universal(Alphabet::binary());
    CHECK(render_all(full, enumerate(full, 1)) == std::vector<std::string>{"", "0", "1"});
  }

  TEST_CASE("random automata agree with a membership scan") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
      const Dfa d = random_dfa(rng, 5);
      CHECK(render_all(d, enumerate(d, 7)) == oracle::scan(member(d), "01", 7));
    }
  }
}

TEST_SUITE("local testability") {
  TEST_CASE("Thompson language is 2-testable") { CHECK(is_locally_testable(fx::L(), 2)); }

  TEST_CASE("even number of 01 factors is not 2-testable") {
    // automaton counting "01" occurrences mod 2
    const Dfa even(Alphabet::binary(), 4, 0, {true, true, false, false}, {{1, 0}, {1, 2}, {3, 2}, {3, 0}});
    for (const auto& word : oracle::all_words("01", 8)) REQUIRE(even.accepts(Alphabet::binary().parse(word)) == oracle::even_01(word));
    const auto result = check_local_testability(even, 2);
    CHECK_FALSE(result.testable);
    REQUIRE(result.witness.has_value());
    const auto [x, y] = *result.witness;
    CHECK(even.accepts(x) != even.accepts(y));
    CHECK(oracle::testability_conflict(oracle::even_01, "01", 2, 8).has_value());
  }

  TEST_CASE("full language is k-testable for every k") {
    for (std::size_t k = 1; k <= 4; ++k) CHECK(is_locally_testable(Dfa::universal(Alphabet::binary()), k));
  }

  TEST_CASE("(01)* is 2-testable") {
    CHECK(is_locally_testable(from_regex("(01)*", Alphabet::binary()), 2));
    CHECK_FALSE(oracle::testability_conflict([](const std::string& w) { return oracle::regex_member("(01)*", w); }, "01", 2, 10));
  }

  TEST_CASE("random automata: agreement with the signature oracle and monotonicity in k") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 150; ++trial) {
      const Dfa d = random_dfa(rng, 4);
      for (std::size_t k = 1; k <= 3; ++k) {
        const auto r = check_local_testability(d, k);
        const auto brute = oracle::testability_conflict(member(d), "01", k, 9);
        if (brute) CHECK_FALSE(r.testable);
        if (!r.testable) {
          REQUIRE(r.witness.has_value());
          const auto& [x, y] = *r.witness;
          CHECK(d.accepts(x) != d.accepts(y));
          // same signature under the oracle's definition
          const std::string sx = d.alphabet().render(x), sy = d.alphabet().render(y);
          if (sx.size() < k || sy.size() < k) {
            CHECK(sx == sy);
          } else {
            CHECK(sx.substr(0, k) == sy.substr(0, k));
            CHECK(sx.substr(sx.size() - k) == sy.substr(sy.size() - k));
            std::set<std::string> fa, fb;
            for (std::size_t i = 0; i + k <= sx.size(); ++i) fa.insert(sx.substr(i, k));
            for (std::size_t i = 0; i + k <= sy.size(); ++i) fb.insert(sy.substr(i, k));
            CHECK(fa == fb);
          }
        }
        if (r.testable && k < 3) CHECK(is_locally_testable(d, k + 1));
      }
    }
  }
}

TEST_SUITE("syntactic monoid") {
  TEST_CASE("full language has the trivial monoid") { CHECK(syntactic_monoid(Dfa::universal(Alphabet::binary())).size() == 1); }

  TEST_CASE("Thompson language has three elements") {
    const auto m = syntactic_monoid(fx::L());
    CHECK(m.size() == 3);
    CHECK(oracle::transformations(minimize(fx::L())).size() == 3);
    CHECK(m.image(Word{}) == m.identity());
    CHECK(m.generator(0) != m.generator(1));
  }

  TEST_CASE("in 0* the image of 1 is a zero") {
    const auto m = syntactic_monoid(from_regex("0*", Alphabet::binary()));
    const auto z = m.generator(1);
    for (int x = 0; x < static_cast<int>(m.size()); ++x) {
      CHECK(m.multiply(x, z) == z);
      CHECK(m.multiply(z, x) == z);
    }
    // oracle: the state map of "1" absorbs every word's map on both sides
    const Dfa d = minimize(from_regex("0*", Alphabet::binary()));
    for (const auto& word : oracle::all_words("01", 4)) {
      CHECK(oracle::transformation(d, word + "1") == oracle::transformation(d, "1"));
      CHECK(oracle::transformation(d, "1" + word) == oracle::transformation(d, "1"));
    }
  }

  TEST_CASE("random automata: size matches word enumeration, table associative, image multiplicative") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
      const Dfa d = random_dfa(rng, 4);
      const auto m = syntactic_monoid(d);
      CHECK(m.size() == oracle::transformations(minimize(d)).size());
      if (m.size() > 64) continue;
      const int n = static_cast<int>(m.size());
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) CHECK(m.multiply(m.multiply(x, y), z) == m.multiply(x, m.multiply(y, z)));
      for (const auto& a : oracle::all_words("01", 3))
        for (const auto& b : oracle::all_words("01", 2))
          CHECK(m.image(d.alphabet().parse(a + b)) == m.multiply(m.image(d.alphabet().parse(a)), m.image(d.alphabet().parse(b))));
    }
  }
}

TEST_SUITE("unbordered words") {
  TEST_CASE("examples") {
    CHECK(is_unbordered(fx::w("110100")));
    CHECK_FALSE(oracle::bordered("110100"));
    CHECK(is_unbordered(fx::w("0")));
    CHECK_FALSE(is_unbordered(fx::w("0110")));
    CHECK_THROWS_AS(is_unbordered(Word{}), Error);
  }

  TEST_CASE("agrees with the oracle on all words up to length 10") {
    for (const auto& word : oracle::all_words("01", 10)) {
      if (word.empty()) continue;
      CHECK(is_unbordered(fx::w(word)) == !oracle::bordered(word));
    }
  }
}

TEST_SUITE("marker words") {
  TEST_CASE("three markers over the full shift have length 6") {
    const Dfa full = Dfa::universal(Alphabet::binary());
    const auto r = find_marker_words(full, 3, 6);
    REQUIRE(r);
    REQUIRE(r.words.size() == 3);
    // no triple at length 5 or below
    for (std::size_t len = 1; len < 6; ++len) CHECK_FALSE(oracle::first_marker_tuple([](const std::string&) { return true; }, "01", 3, len));
    const auto brute = oracle::first_marker_tuple([](const std::string&) { return true; }, "01", 3, 6);
    REQUIRE(brute);
    CHECK(*brute == std::vector<std::string>{"000011", "001011", "010011"});
    CHECK(render_all(full, r.words) == *brute);
  }

  TEST_CASE("one marker over the full shift is 0") {
    const auto r = find_marker_words(Dfa::universal(Alphabet::binary()), 1, 3);
    REQUIRE(r);
    CHECK(fx::s(r.words.front()) == "0");
  }

  TEST_CASE("1* has no two markers") {
    const auto r = find_marker_words(from_regex("1*", Alphabet::binary()), 2, 4);
    CHECK_FALSE(r);
    CHECK(r.searched_bound == 4);
    for (std::size_t len = 1; len <= 4; ++len)
      CHECK_FALSE(oracle::first_marker_tuple([](const std::string& x) { return oracle::regex_member("1*", x); }, "01", 2, len));
  }

  TEST_CASE("returned markers satisfy every stated property") {
    for (const char* re : {"(0+1)*", "eps+(0+1)*1", "(0+1)*0(0+1)*"}) {
      const Dfa d = from_regex(re, Alphabet::binary());
      const auto r = find_marker_words(d, 2, 8);
      REQUIRE_MESSAGE(r, re);
      const auto m = syntactic_monoid(d);
      for (const auto& x : r.words) {
        CHECK(x.size() == r.words.front().size());
        CHECK(is_unbordered(x));
        CHECK(d.accepts(x));
        CHECK(m.image(x) == m.image(r.words.front()));
        for (const auto& y : r.words)
          if (x != y) CHECK(mutually_unbordered(x, y));
      }
      // every concatenation of up to four markers is accepted
      std::vector<Word> layer{Word{}};
      for (int blocks = 1; blocks <= 4; ++blocks) {
        std::vector<Word> next;
        for (const auto& p : layer)
          for (const auto& x : r.words) {
            next.push_back(concat(p, x));
            CHECK(d.accepts(next.back()));
          }
        layer = std::move(next);
      }
    }
  }
}
