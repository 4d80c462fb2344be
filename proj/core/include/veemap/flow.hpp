#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "veemap/lang.hpp"
#include "veemap/rational.hpp"
#include "veemap/subshift.hpp"
#include "veemap/thompson.hpp"
#include "veemap/veelike.hpp"

namespace veemap {

struct Tile {
  std::string symbol;
  Rational length{1};

  friend bool operator==(const Tile&, const Tile&) = default;
};

struct Position {
  std::size_t tile = 0;
  Rational offset{0};

  friend bool operator==(const Position&, const Position&) = default;
};

/// A periodic point of the mapping torus: one period of tiles read
/// circularly, and a basepoint inside one of them.
struct FlowOrbit {
  std::vector<Tile> tiles;
  Position base;

  FlowOrbit() = default;
  FlowOrbit(std::vector<Tile> tiles, Position base = {});

  /// Unit-length tiles, basepoint at the start of tile 0.
  static FlowOrbit unit(const std::vector<std::string>& symbols);

  std::vector<std::string> symbols() const;
  Rational circumference() const;

  friend bool operator==(const FlowOrbit&, const FlowOrbit&) = default;
};

/// Circular symbol sequence, rotated to its lexicographically least rotation.
std::vector<std::string> symbol_sequence(const FlowOrbit& o);

/// The flow map determined by a local rule. Single mode rewrites after each
/// separator; pair mode rewrites on both sides of each inner separator.
class InducedMap {
 public:
  enum class Mode { single, pair };

  /// Rule alphabet must be the language's alphabet; the separator lies outside it.
  static InducedMap single(VeelikeRule rule, Dfa language, std::string separator = "#");
  /// left_names / right_names rename the rule alphabets for use on orbits
  /// (position i of each is rule symbol i).
  static InducedMap pair(PairVeelikeRule rule, Dfa left, Dfa right, Alphabet left_names, Alphabet right_names,
                         std::string separator = "#", std::string inner_separator = "@");

  Mode mode() const noexcept { return mode_; }
  const VeelikeRule& rule() const;
  const PairVeelikeRule& pair_rule() const;
  const std::string& separator() const noexcept { return separator_; }
  const std::string& inner_separator() const noexcept { return inner_separator_; }
  /// Orbit-level content alphabet (single mode) or left content alphabet (pair mode).
  const Alphabet& left_names() const noexcept { return left_names_; }
  const Alphabet& right_names() const noexcept { return right_names_; }
  /// The hull vertex shift orbits must be admissible for.
  const VertexShift& hull() const noexcept { return hull_; }

 private:
  InducedMap() = default;

  Mode mode_ = Mode::single;
  std::optional<VeelikeRule> rule_;
  std::optional<PairVeelikeRule> pair_rule_;
  std::string separator_;
  std::string inner_separator_;
  Alphabet left_names_;
  Alphabet right_names_;
  VertexShift hull_;
};

/// Induced map of action_on_L(g) on orbits over {0,1,#}.
InducedMap induced_map(const VElement& g);
/// Induced map of pair_action(g) on orbits over {0_A,1_A,@,0_B,1_B,#}.
InducedMap induced_pair_map(const TwoVElement& g);

/// Throws Error naming the first forbidden circular bigram or foreign symbol.
void check_admissible(const InducedMap& m, const FlowOrbit& o);

/// Left endpoints of separator tiles (single mode) or midpoints of inner
/// separator tiles (pair mode), in tile order.
std::vector<Position> anchors(const FlowOrbit& o, const InducedMap& m);

/// Single-mode rewriting; pair-mode maps are forwarded to pair_apply.
FlowOrbit apply(const InducedMap& m, const FlowOrbit& o);
FlowOrbit pair_apply(const InducedMap& m, const FlowOrbit& o);

/// Runs the orbit #u through induced_map(g) and reads back the block.
Word simulate_embedding(const VElement& g, const Word& u);

/// Shortest-first, lexicographic: some u in L with |u| <= max_len whose orbit #u changes.
std::optional<Word> faithfulness_witness(const VElement& g, std::size_t max_len);

struct OrbitCheckResult {
  bool pass = true;
  std::optional<std::size_t> failing_orbit;
  std::string reason;
  std::optional<FlowOrbit> before;
  std::optional<FlowOrbit> after;
  /// Orbits whose tile lengths moved although the symbols did not.
  std::size_t distorted_orbits = 0;
  Rational max_length_change{0};
  explicit operator bool() const noexcept { return pass; }
};

/// Applies maps right to left to each orbit; passes iff symbol sequence,
/// circumference and anchor count are preserved on every orbit. Tile-length
/// changes are reported, not failed.
OrbitCheckResult orbit_fixed_check(const std::vector<InducedMap>& maps, const std::vector<FlowOrbit>& orbits);

/// Random closed walk of at most max_tiles symbols on the hull, tile lengths
/// drawn from {1/2, 1, 3/2, 2} unless unit_lengths.
FlowOrbit random_orbit(std::mt19937_64& rng, const VertexShift& hull, std::size_t max_tiles, bool unit_lengths = false);

/// Abstract symbols spelled by equal-length, mutually unbordered host words.
struct CodedAlphabet {
  Alphabet abstract;
  Alphabet host;
  std::vector<Word> words;  // words[i] codes abstract symbol i

  CodedAlphabet() = default;
  CodedAlphabet(Alphabet abstract, Alphabet host, std::vector<Word> words);

  std::size_t block_length() const { return words.front().size(); }
  std::vector<std::string> encode(const std::vector<std::string>& abstract_symbols) const;
};

/// Marker-coded single-mode rewriting on an orbit over the host alphabet.
/// Content outside marker runs is fixed; a run broken on the left is left
/// alone up to its first separator, a run broken on the right ends as if a
/// separator started there.
FlowOrbit coded_apply(const InducedMap& m, const CodedAlphabet& c, const FlowOrbit& o);

/// Decoded circular orbit when every tile belongs to a marker occurrence.
std::optional<std::vector<std::string>> decode_periodic(const CodedAlphabet& c, const FlowOrbit& o);

/// Horizontal tile strip, one rect per tile, for documentation.
std::string to_svg(const FlowOrbit& o);

}  // namespace veemap
