#include <doctest/doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "veemap/error.hpp"
#include "veemap/flow.hpp"

using namespace veemap;
using fx::block_orbit;
using fx::split;

namespace {

Rational q(long long p, long long d = 1) { return Rational(p) / Rational(d); }

FlowOrbit spaced(const std::string& s) { return FlowOrbit::unit(split(s)); }

std::vector<InducedMap> maps_for(const std::string& word) {
  const auto gens = standard_generators();
  std::vector<InducedMap> out;
  for (const auto& [c, inverse] : parse_generator_word(gens, word))
    out.push_back(induced_map(inverse ? v_inverse(gens.at(c)) : gens.at(c)));
  return out;
}

CodedAlphabet three_markers() {
  const auto found = find_marker_words(Dfa::universal(Alphabet::binary()), 3, 8);
  REQUIRE(found);
  return CodedAlphabet(Alphabet({"0", "1", "#"}), Alphabet::binary(), found.words);
}

/// Host tiles spelling the words, each of the given length.
FlowOrbit host_orbit(const std::vector<std::string>& bit_words, const Rational& len = Rational(1)) {
  std::vector<Tile> tiles;
  for (const auto& bits : bit_words)
    for (char c : bits) tiles.push_back(Tile{std::string(1, c), len});
  return FlowOrbit(tiles);
}

/// Rotated so the basepoint tile comes first; equal circular orbits then compare equal.
FlowOrbit rooted(const FlowOrbit& o) {
  std::vector<Tile> tiles(o.tiles.begin() + static_cast<std::ptrdiff_t>(o.base.tile), o.tiles.end());
  tiles.insert(tiles.end(), o.tiles.begin(), o.tiles.begin() + static_cast<std::ptrdiff_t>(o.base.tile));
  return FlowOrbit(tiles, Position{0, o.base.offset});
}

}  // namespace

TEST_SUITE("orbits") {
  TEST_CASE("validation and basics") {
    CHECK_THROWS_AS(FlowOrbit(std::vector<Tile>{}), Error);
    CHECK_THROWS_AS(FlowOrbit({Tile{"#", q(0)}}), Error);
    CHECK_THROWS_AS(FlowOrbit({Tile{"#", q(1)}}, Position{0, q(1)}), Error);
    CHECK_THROWS_AS(FlowOrbit({Tile{"#", q(1)}}, Position{1, q(0)}), Error);
    const FlowOrbit o({Tile{"#", q(1, 2)}, Tile{"1", q(3, 2)}});
    CHECK(o.circumference() == q(2));
    CHECK(o.symbols() == std::vector<std::string>{"#", "1"});
  }

  TEST_CASE("symbol sequence ignores rotation and lengths") {
    CHECK(symbol_sequence(block_orbit("1")) == std::vector<std::string>{"#", "1"});
    CHECK(symbol_sequence(spaced("1 #")) == std::vector<std::string>{"#", "1"});
    CHECK(symbol_sequence(FlowOrbit({Tile{"#", q(3)}, Tile{"1", q(1, 3)}})) == symbol_sequence(block_orbit("1")));
  }
}

TEST_SUITE("anchors") {
  TEST_CASE("single mode") {
    const auto a = anchors(block_orbit("1"), induced_map(fx::swap()));
    CHECK(a == std::vector<Position>{Position{0, q(0)}});
    CHECK(anchors(spaced("1 1"), induced_map(fx::swap())).empty());
  }

  TEST_CASE("pair mode") {
    const auto a = anchors(spaced("1_A @ 1_B #"), induced_pair_map(fx::baker()));
    CHECK(a == std::vector<Position>{Position{1, q(1, 2)}});
  }
}

TEST_SUITE("single mode apply") {
  TEST_CASE("swap on #1 and back") {
    const InducedMap m = induced_map(fx::swap());
    const FlowOrbit once = apply(m, block_orbit("1"));
    CHECK(once == FlowOrbit({Tile{"#", q(2)}}));
    CHECK(apply(m, once) == block_orbit("1"));
  }

  TEST_CASE("swap on #01") {
    const FlowOrbit out = apply(induced_map(fx::swap()), block_orbit("01"));
    CHECK(symbol_sequence(out) == std::vector<std::string>{"#", "1", "1"});
    CHECK(out == block_orbit("11"));
  }

  TEST_CASE("identity leaves lengths alone") {
    const FlowOrbit o({Tile{"#", q(1, 2)}, Tile{"0", q(3, 2)}, Tile{"1", q(2)}, Tile{"#", q(1)}, Tile{"1", q(1)}},
                      Position{2, q(1, 3)});
    CHECK(apply(induced_map(VElement::identity()), o) == o);
  }

  TEST_CASE("no separator means no change") {
    const FlowOrbit o = spaced("1 1 0 1");
    CHECK(apply(induced_map(fx::A()), o) == o);
  }

  TEST_CASE("only the first n symbols of a long block move") {
    // A has rule depth 3 and rewrites 110 to 10 (head 11 goes to 1).
    const FlowOrbit o({Tile{"#", q(1)}, Tile{"1", q(1)}, Tile{"1", q(1)}, Tile{"0", q(1)}, Tile{"1", q(5)}});
    const FlowOrbit out = apply(induced_map(fx::A()), o);
    CHECK(out.symbols() == std::vector<std::string>{"#", "1", "0", "1"});
    CHECK(out.tiles.back() == Tile{"1", q(5)});
    CHECK(out.tiles[0].length == q(4, 3));
    CHECK(out.circumference() == o.circumference());
  }

  TEST_CASE("inadmissible orbits are refused") {
    CHECK_THROWS_AS(apply(induced_map(fx::swap()), block_orbit("10")), Error);
    CHECK_THROWS_AS(apply(induced_map(fx::swap()), spaced("# 2")), Error);
  }

  TEST_CASE("basepoint moves with its piece") {
    const FlowOrbit o({Tile{"#", q(1)}, Tile{"1", q(1)}}, Position{1, q(1, 2)});
    const FlowOrbit out = apply(induced_map(fx::swap()), o);
    CHECK(out.base == Position{0, q(3, 2)});
  }
}

TEST_SUITE("embedding") {
  TEST_CASE("examples") {
    CHECK(simulate_embedding(fx::swap(), fx::w("1")).empty());
    CHECK(fx::s(simulate_embedding(fx::A(), fx::w("11"))) == "1");
    for (const auto& u : oracle::scan(oracle::in_thompson, "01", 6))
      CHECK(fx::s(simulate_embedding(VElement::identity(), fx::w(u))) == u);
  }

  TEST_CASE("simulation identity for the generators") {
    for (const auto& [name, g] : standard_generators()) {
      const VeelikeRule r = action_on_L(g);
      for (const auto& u : oracle::scan(oracle::in_thompson, "01", 6)) {
        CHECK(simulate_embedding(g, fx::w(u)) == apply_rule(r, fx::w(u)));
        CHECK(fx::s(simulate_embedding(g, fx::w(u))) == oracle::phi_action(g.domain(), g.range(), u));
      }
    }
  }

  TEST_CASE("faithfulness") {
    for (const auto& [name, g] : standard_generators()) {
      const auto witness = faithfulness_witness(g, 6);
      REQUIRE_MESSAGE(witness.has_value(), "generator " << name);
      CHECK(symbol_sequence(apply(induced_map(g), block_orbit(fx::s(*witness)))) != symbol_sequence(block_orbit(fx::s(*witness))));
    }
    CHECK_FALSE(faithfulness_witness(VElement::identity(), 6).has_value());
  }
}

TEST_SUITE("orbit fixed check") {
  TEST_CASE("swap twice fixes #01") {
    const auto m = induced_map(fx::swap());
    CHECK(static_cast<bool>(orbit_fixed_check({m, m}, {block_orbit("01")})));
  }

  TEST_CASE("A against its inverse on every short block") {
    std::vector<FlowOrbit> orbits;
    for (const auto& u : oracle::scan(oracle::in_thompson, "01", 5)) orbits.push_back(block_orbit(u));
    const auto r = orbit_fixed_check({induced_map(fx::A()), induced_map(v_inverse(fx::A()))}, orbits);
    CHECK(static_cast<bool>(r));
  }

  TEST_CASE("swap alone moves #1") {
    const auto r = orbit_fixed_check({induced_map(fx::swap())}, {block_orbit("01"), block_orbit("1")});
    CHECK_FALSE(static_cast<bool>(r));
    CHECK(r.failing_orbit == std::optional<std::size_t>(0));
    REQUIRE(r.after.has_value());
    CHECK(symbol_sequence(*r.after) == std::vector<std::string>{"#", "1", "1"});
  }

  TEST_CASE("distortion is reported without failing") {
    // a a A A: each step rescales pieces, so lengths may come back changed.
    const auto r = orbit_fixed_check(maps_for("a b A B b a B A"), {block_orbit("0101"), block_orbit("111")});
    CHECK(static_cast<bool>(r));
    CHECK(r.max_length_change >= q(0));
  }
}

TEST_SUITE("orbit properties") {
  TEST_CASE("random orbits: circumference, admissibility, involution, relators") {
    std::mt19937_64 rng(4242);
    const auto gens = standard_generators();
    const VertexShift h = induced_map(fx::swap()).hull();
    const InducedMap swap = induced_map(fx::swap());
    const std::vector<std::string> relators{"s s", "a A", "a b B A", "b a s S A B", "c c c", "p p", "a c A a C A"};
    for (int trial = 0; trial < 150; ++trial) {
      const FlowOrbit o = random_orbit(rng, h, 8, trial % 3 == 0);
      CHECK(o.tiles.size() <= 8);
      check_admissible(swap, o);
      for (const auto& [name, g] : gens) {
        const FlowOrbit out = apply(induced_map(g), o);
        CHECK(out.circumference() == o.circumference());
        CHECK_NOTHROW(check_admissible(swap, out));
        CHECK(anchors(out, swap).size() == anchors(o, swap).size());
      }
      const FlowOrbit back = apply(swap, apply(swap, o));
      // Uniform rescaling undoes itself exactly only on pieces that started uniform.
      if (trial % 3 == 0) CHECK(rooted(back) == rooted(o));
      CHECK(symbol_sequence(back) == symbol_sequence(o));
      CHECK(back.circumference() == o.circumference());
      for (const auto& rel : relators) {
        const auto r = orbit_fixed_check(maps_for(rel), {o});
        CHECK_MESSAGE(static_cast<bool>(r), rel << ": " << r.reason);
      }
    }
  }

  TEST_CASE("random words against their inverses") {
    std::mt19937_64 rng(17);
    const std::string letters = "sabcpABCP";
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
    const VertexShift h = induced_map(fx::swap()).hull();
    for (int trial = 0; trial < 40; ++trial) {
      std::string word, inverse;
      for (int i = 0; i < 4; ++i) {
        const char c = letters[pick(rng)];
        word += c;
        const char inv = static_cast<char>(std::islower(static_cast<unsigned char>(c)) ? std::toupper(c) : std::tolower(c));
        inverse.insert(inverse.begin(), inv);
      }
      const std::string conj = std::string(1, letters[pick(rng)]);
      std::string conj_inv = conj;
      conj_inv[0] = static_cast<char>(std::islower(static_cast<unsigned char>(conj[0])) ? std::toupper(conj[0]) : std::tolower(conj[0]));
      const std::string relator = conj + word + inverse + conj_inv;
      REQUIRE(v_is_identity(evaluate_word(standard_generators(), relator)));
      std::vector<FlowOrbit> orbits;
      for (int k = 0; k < 5; ++k) orbits.push_back(random_orbit(rng, h, 8));
      const auto r = orbit_fixed_check(maps_for(relator), orbits);
      CHECK_MESSAGE(static_cast<bool>(r), relator << ": " << r.reason);
    }
  }

  TEST_CASE("a non-identity word is caught") {
    CHECK_FALSE(static_cast<bool>(orbit_fixed_check(maps_for("a b"), {block_orbit(""), block_orbit("1"), block_orbit("11")})));
  }
}

TEST_SUITE("pair mode") {
  TEST_CASE("baker moves a bit across") {
    const FlowOrbit out = pair_apply(induced_pair_map(fx::baker()), spaced("1_A @ 1_B #"));
    CHECK(symbol_sequence(out) == symbol_sequence(spaced("@ 1_B 1_B #")));
    CHECK(out.circumference() == q(4));
    // left piece 1_A + half of @ (3/2) becomes half of @; right piece 3/2 becomes half of @ + 1_B 1_B at 3/5 each
    REQUIRE(out.tiles.size() == 4);
    CHECK(out.tiles[0] == Tile{"@", q(3, 2) + q(3, 10)});
    CHECK(out.tiles[1] == Tile{"1_B", q(3, 5)});
    CHECK(out.tiles[3] == Tile{"#", q(1)});
  }

  TEST_CASE("fixed configurations") {
    const InducedMap m = induced_pair_map(fx::baker());
    CHECK(pair_apply(m, spaced("@ #")) == spaced("@ #"));
    const FlowOrbit o = spaced("1_A 0_A @ 0_B 1_B #");
    CHECK(pair_apply(induced_pair_map(TwoVElement::identity()), o) == o);
    CHECK(apply(induced_pair_map(TwoVElement::identity()), o) == o);
  }

  TEST_CASE("inadmissible pair orbits are refused") {
    CHECK_THROWS_AS(pair_apply(induced_pair_map(fx::baker()), spaced("# 0_A @ #")), Error);
  }

  TEST_CASE("random pair orbits: circumference, admissibility, inverse") {
    std::mt19937_64 rng(2718);
    const InducedMap b = induced_pair_map(fx::baker());
    const InducedMap binv = induced_pair_map(tv_inverse(fx::baker()));
    const InducedMap fs = induced_pair_map(fx::first_swap());
    for (int trial = 0; trial < 150; ++trial) {
      const FlowOrbit o = random_orbit(rng, b.hull(), 10);
      for (const InducedMap* m : {&b, &binv, &fs}) {
        const FlowOrbit out = pair_apply(*m, o);
        CHECK(out.circumference() == o.circumference());
        CHECK_NOTHROW(check_admissible(*m, out));
        CHECK(anchors(out, *m).size() == anchors(o, *m).size());
      }
      CHECK(static_cast<bool>(orbit_fixed_check({binv, b}, {o})));
      CHECK(static_cast<bool>(orbit_fixed_check({fs, fs}, {o})));
    }
  }

  TEST_CASE("random 2V elements against their inverses") {
    std::mt19937_64 rng(1618);
    for (int trial = 0; trial < 12; ++trial) {
      const TwoVElement g = random_tv_element(rng, 2);
      const InducedMap m = induced_pair_map(g), minv = induced_pair_map(tv_inverse(g));
      std::vector<FlowOrbit> orbits;
      for (int k = 0; k < 6; ++k) orbits.push_back(random_orbit(rng, m.hull(), 12));
      CHECK(static_cast<bool>(orbit_fixed_check({minv, m}, orbits)));
    }
  }
}

TEST_SUITE("coded") {
  TEST_CASE("marker alphabet validation") {
    CHECK_THROWS_AS(CodedAlphabet(Alphabet({"0", "1"}), Alphabet::binary(), {fx::w("01"), fx::w("011")}), Error);
    CHECK_THROWS_AS(CodedAlphabet(Alphabet({"0", "1"}), Alphabet::binary(), {fx::w("010"), fx::w("011")}), Error);
    CHECK_THROWS_AS(CodedAlphabet(Alphabet({"0", "1"}), Alphabet::binary(), {fx::w("001"), fx::w("011")}), Error);
    const CodedAlphabet c = three_markers();
    CHECK(c.block_length() == 6);
    CHECK(c.encode({"#", "1"}) == split("0 1 0 0 1 1 0 0 1 0 1 1"));
  }

  TEST_CASE("encoded #1 goes to encoded #") {
    const CodedAlphabet c = three_markers();
    const InducedMap m = induced_map(fx::swap());
    const FlowOrbit o = FlowOrbit::unit(c.encode({"#", "1"}));
    REQUIRE(decode_periodic(c, o) == std::optional<std::vector<std::string>>(std::vector<std::string>{"#", "1"}));
    const FlowOrbit out = coded_apply(m, c, o);
    CHECK(out == host_orbit({"010011"}, q(2)));
    CHECK(decode_periodic(c, out) == std::optional<std::vector<std::string>>(std::vector<std::string>{"#"}));
    CHECK(coded_apply(m, c, out) == o);
  }

  TEST_CASE("decoded action matches the abstract rewriting") {
    const CodedAlphabet c = three_markers();
    for (const auto& [name, g] : standard_generators()) {
      const InducedMap m = induced_map(g);
      for (const auto& u : oracle::scan(oracle::in_thompson, "01", 4)) {
        const FlowOrbit abstract = block_orbit(u);
        const FlowOrbit coded = FlowOrbit::unit(c.encode(abstract.symbols()));
        const auto decoded = decode_periodic(c, coded_apply(m, c, coded));
        REQUIRE(decoded.has_value());
        CHECK(*decoded == apply(m, abstract).symbols());
      }
    }
  }

  TEST_CASE("no markers, no change") {
    const CodedAlphabet c = three_markers();
    const FlowOrbit o = host_orbit({"1111"});
    CHECK(coded_apply(induced_map(fx::swap()), c, o) == o);
    CHECK_FALSE(decode_periodic(c, o).has_value());
  }

  TEST_CASE("a run cut on the right ends as if a separator began there") {
    const CodedAlphabet c = three_markers();
    // #, 1, then junk 1111: the block "1" is complete, so swap sends it to the empty word.
    const FlowOrbit o = host_orbit({"010011", "001011", "1111"});
    const FlowOrbit out = coded_apply(induced_map(fx::swap()), c, o);
    const FlowOrbit expect = [] {
      FlowOrbit e = host_orbit({"010011"}, q(2));
      for (int i = 0; i < 4; ++i) e.tiles.push_back(Tile{"1", q(1)});
      return e;
    }();
    CHECK(out == expect);
    CHECK(out.circumference() == o.circumference());
  }

  TEST_CASE("content before the first separator of a run is left alone") {
    const CodedAlphabet c = three_markers();
    // junk, then 1 (cut on the left), then # 1: only the block after # moves.
    const FlowOrbit o = host_orbit({"1111", "001011", "010011", "001011"});
    const FlowOrbit out = coded_apply(induced_map(fx::swap()), c, o);
    CHECK(symbol_sequence(out) == symbol_sequence(host_orbit({"1111", "001011", "010011"})));
    CHECK(out.circumference() == o.circumference());
  }
}

TEST_SUITE("svg") {
  TEST_CASE("one rect per tile") {
    const std::string svg = to_svg(block_orbit("011"));
    std::size_t rects = 0;
    for (std::size_t p = svg.find("<rect"); p != std::string::npos; p = svg.find("<rect", p + 1)) ++rects;
    CHECK(rects == 4);
  }
}
