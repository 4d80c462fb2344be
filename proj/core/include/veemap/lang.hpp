#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace veemap {

/// Index of a symbol within its Alphabet.
using Symbol = int;

/// Finite word over an Alphabet, stored as symbol indices.
using Word = std::vector<Symbol>;

/// Ordered set of named symbols. The order fixes matrix indexing downstream.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  /// The alphabet {"0", "1"}.
  static Alphabet binary();

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  const std::string& name(Symbol s) const;
  std::optional<Symbol> find(std::string_view name) const;
  Symbol index(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  /// Tokenizes by longest match against the symbol names; whitespace is skipped.
  Word parse(std::string_view text) const;

  /// Concatenates symbol names; names are space-separated when any name is longer than one character.
  std::string render(const Word& w) const;

  std::vector<std::string> names(const Word& w) const;
  Word from_names(std::span<const std::string> names) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

Word concat(const Word& a, const Word& b);
bool is_prefix(const Word& prefix, const Word& w);
bool is_suffix(const Word& suffix, const Word& w);
Word reversed(Word w);

/// Complete deterministic automaton over an Alphabet.
class Dfa {
 public:
  using State = int;

  Dfa() = default;
  Dfa(Alphabet alphabet, int num_states, State start, std::vector<bool> accepting,
      std::vector<std::vector<State>> delta);

  static Dfa empty_language(Alphabet alphabet);
  static Dfa universal(Alphabet alphabet);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int num_states() const noexcept { return num_states_; }
  State start() const noexcept { return start_; }
  bool accepting(State q) const { return accepting_.at(static_cast<std::size_t>(q)); }
  const std::vector<bool>& accepting_states() const noexcept { return accepting_; }
  const std::vector<std::vector<State>>& delta() const noexcept { return delta_; }

  State next(State q, Symbol a) const {
    return delta_[static_cast<std::size_t>(q)][static_cast<std::size_t>(a)];
  }
  State run(State q, const Word& w) const;
  bool accepts(const Word& w) const { return accepting(run(start_, w)); }

  /// States from which some accepting state is reachable.
  std::vector<bool> coreachable() const;
  /// States reachable from the start state.
  std::vector<bool> reachable() const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  Alphabet alphabet_;
  int num_states_ = 0;
  State start_ = 0;
  std::vector<bool> accepting_;
  std::vector<std::vector<State>> delta_;
};

/// Minimal equivalent DFA with states numbered breadth-first from the start in symbol order.
Dfa minimize(const Dfa& d);

/// Shortest (then lexicographically least) word accepted by exactly one of the automata.
/// Throws Error when the alphabets differ.
std::optional<Word> distinguishing_word(const Dfa& a, const Dfa& b);
bool equivalent(const Dfa& a, const Dfa& b);

/// All accepted words of length <= max_len, shortest first, then lexicographic.
std::vector<Word> enumerate(const Dfa& d, std::size_t max_len);

/// Automaton for the reversal of the language.
Dfa reverse(const Dfa& d);

/// Same automaton with symbol i renamed to alphabet.name(i).
Dfa relabel(const Dfa& d, Alphabet alphabet);

Dfa intersect(const Dfa& a, const Dfa& b);
Dfa complement(const Dfa& d);

/// Outcome of the local k-testability check. The witness holds two words
/// with identical k-signature but different membership.
struct TestabilityResult {
  bool testable = true;
  std::optional<std::pair<Word, Word>> witness;
  explicit operator bool() const noexcept { return testable; }
};

/// Membership of words of length >= k must depend only on the length-k prefix,
/// the length-k suffix and the set of length-k factors. Shorter words are
/// compared verbatim.
TestabilityResult check_local_testability(const Dfa& d, std::size_t k);
bool is_locally_testable(const Dfa& d, std::size_t k);

/// Transition monoid of the minimal DFA.
class SyntacticMonoid {
 public:
  using Element = int;
  using Transformation = std::vector<Dfa::State>;

  explicit SyntacticMonoid(const Dfa& d);

  const Dfa& automaton() const noexcept { return minimal_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Transformation>& elements() const noexcept { return elements_; }
  /// table()[x][y] is the element for "x then y".
  const std::vector<std::vector<Element>>& table() const noexcept { return table_; }
  Element identity() const noexcept { return 0; }
  Element generator(Symbol a) const { return generators_.at(static_cast<std::size_t>(a)); }
  Element multiply(Element x, Element y) const {
    return table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  }
  Element image(const Word& w) const;
  bool idempotent(Element x) const { return multiply(x, x) == x; }

 private:
  Dfa minimal_;
  std::vector<Transformation> elements_;
  std::vector<std::vector<Element>> table_;
  std::vector<Element> generators_;
};

SyntacticMonoid syntactic_monoid(const Dfa& d);

/// True iff no proper non-empty prefix of w is a suffix of w. Throws on the empty word.
bool is_unbordered(const Word& w);

/// True iff no non-empty prefix of one word shorter than it is a suffix of the
/// other, in both directions.
bool mutually_unbordered(const Word& a, const Word& b);

struct MarkerSearch {
  std::vector<Word> words;
  std::size_t searched_bound = 0;
  explicit operator bool() const noexcept { return !words.empty(); }
};

/// Searches lengths 1..max_len for `count` accepted, pairwise mutually
/// unbordered words of one length sharing an idempotent syntactic image.
MarkerSearch find_marker_words(const Dfa& d, std::size_t count, std::size_t max_len);

/// Regular expression with symbols, juxtaposition, '+', '*', parentheses and "eps".
/// Without an alphabet every other non-blank character is a symbol and the
/// alphabet is their sorted set.
Dfa from_regex(std::string_view regex, std::optional<Alphabet> alphabet = std::nullopt);

}  // namespace veemap
