#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "veemap/error.hpp"
#include "veemap/lang.hpp"

namespace veemap {

/// Bi-infinite walks on the digraph with the given 0/1 adjacency matrix;
/// matrix row/column i belongs to alphabet symbol i.
struct VertexShift {
  Alphabet alphabet;
  std::vector<std::vector<int>> matrix;

  VertexShift() = default;
  VertexShift(Alphabet alphabet, std::vector<std::vector<int>> matrix);

  bool allowed(Symbol a, Symbol b) const {
    return matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0;
  }
  bool allowed(const std::string& a, const std::string& b) const {
    return allowed(alphabet.index(a), alphabet.index(b));
  }

  friend bool operator==(const VertexShift&, const VertexShift&) = default;
};

/// Shift given by a finite list of forbidden words.
struct Sft {
  Alphabet alphabet;
  std::vector<Word> forbidden;

  friend bool operator==(const Sft&, const Sft&) = default;
};

/// Configurations ... w # w' # w'' ... with w in `language` (single mode), or
/// ... u @ v # u' @ v' # ... with (u^R, v) in language x right_language (pair
/// mode; u itself when reverse_left is false).
struct HullSpec {
  Dfa language;
  std::string separator = "#";
  std::optional<Dfa> right_language;
  std::string inner_separator = "@";
  bool reverse_left = true;

  bool pair_mode() const noexcept { return right_language.has_value(); }
  /// Single mode: A then separator. Pair mode: A, inner separator, B, separator.
  Alphabet hull_alphabet() const;
};

/// Thrown when a component language is not locally 2-testable.
class HullRefusal : public Error {
 public:
  HullRefusal(std::string component, std::pair<std::string, std::string> witness);

  const std::string& component() const noexcept { return component_; }
  /// Two words with equal 2-signature but different membership.
  const std::pair<std::string, std::string>& witness() const noexcept { return witness_; }

 private:
  std::string component_;
  std::pair<std::string, std::string> witness_;
};

VertexShift hull_vertex_shift(const HullSpec& h);
VertexShift pair_hull_vertex_shift(const HullSpec& h);
/// Dispatches on h.pair_mode().
VertexShift hull(const HullSpec& h);

Sft sft_from_bigrams(const VertexShift& v);
/// Throws Error unless every forbidden word has length exactly 2.
VertexShift vertex_from_sft(const Sft& s);

/// Symbols lying on some bi-infinite walk, in alphabet order.
std::vector<Symbol> essential_symbols(const VertexShift& v);
/// Symbols on no bi-infinite walk; they keep their row and column.
std::vector<Symbol> unused_symbols(const VertexShift& v);

struct MixingResult {
  bool mixing = false;
  /// Smallest k with (restricted matrix)^k > 0, when mixing.
  std::size_t exponent = 0;
  std::vector<Symbol> core;
};

/// Primitivity of the matrix restricted to the essential symbols, with the
/// Wielandt exponent bound (d-1)^2 + 1.
MixingResult check_mixing(const VertexShift& v);
bool is_mixing(const VertexShift& v);

/// Words of length <= m on bi-infinite walks, shortest first, then lexicographic.
std::vector<Word> shift_language(const VertexShift& v, std::size_t m);

struct HullValidation {
  bool pass = true;
  /// First word (in length-lexicographic order) where the two factor sets differ.
  std::optional<std::vector<std::string>> counterexample;
  /// True if the counterexample is a hull factor the matrix does not admit.
  bool missing_from_matrix = false;
  explicit operator bool() const noexcept { return pass; }
};

/// Compares shift_language(v, m) with the factors of length <= m of block
/// concatenations generated directly from the language(s).
HullValidation cross_validate_hull(const HullSpec& h, const VertexShift& v, std::size_t m);

/// Graphviz digraph: node per symbol, edge per 1-entry.
std::string to_dot(const VertexShift& v);

}  // namespace veemap
