#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "veemap/lang.hpp"
#include "veemap/thompson.hpp"

namespace veemap {

/// The language of words that are empty or end in 1, over {0,1}.
Dfa thompson_language();

Word to_word(const Bits& bits);
Bits to_bits(const Word& w);

/// w 0^N for w in the Thompson language; throws Error for other words.
EventuallyZero phi(const Word& w);
/// Inverse of phi: the canonical head as a word.
Word phi_inv(const EventuallyZero& x);

/// Local data of a veelike action on a language L over `alphabet`: words of
/// length >= n rewrite their length-n prefix through long_table; shorter
/// L-words are looked up in short_table.
struct VeelikeRule {
  Alphabet alphabet;
  std::size_t n = 0;
  std::map<Word, Word> long_table;
  std::map<Word, Word> short_table;

  friend bool operator==(const VeelikeRule&, const VeelikeRule&) = default;
};

/// The phi-conjugated action of g on the Thompson language, with n = depth(g) + 1.
VeelikeRule action_on_L(const VElement& g);

/// Identity on L-words of length < n and on all longer prefixes.
VeelikeRule identity_rule(const Dfa& language, std::size_t n);

/// Applies the rule without a membership check. Throws Error when a short word
/// has no short_table entry or a prefix has no long_table entry.
Word apply_rule(const VeelikeRule& rule, const Word& w);
/// Checks w against the language first.
Word apply_rule(const VeelikeRule& rule, const Dfa& language, const Word& w);

struct VeelikeViolation {
  enum class Kind { missing_entry, image_outside_language, not_injective, not_surjective };
  Kind kind;
  Word word;          // offending input (or missing image for not_surjective)
  Word other;         // colliding input for not_injective
  std::size_t split;  // |u| in the factorization w = uv, when w was rewritten by the long table
};

std::string to_string(VeelikeViolation::Kind kind);

struct VerifyResult {
  std::optional<VeelikeViolation> violation;
  std::size_t words_checked = 0;
  explicit operator bool() const noexcept { return !violation.has_value(); }
};

/// Scans the L-words of length <= max_len in length-lexicographic order:
/// every entry must exist, images stay in L, the map is injective, and every
/// L-word short enough to have all its preimages inside the scan is hit.
VerifyResult verify_veelike(const VeelikeRule& rule, const Dfa& language, std::size_t max_len);

// ---------------------------------------------------------------------------
// Pair languages

struct WordPair {
  Word left;
  Word right;
  auto operator<=>(const WordPair&) const = default;
};

WordPair concat(const WordPair& a, const WordPair& b);

/// Componentwise prefix of length n (the whole component when shorter).
WordPair alpha_n(const WordPair& p, std::size_t n);
/// Tails left after removing alpha_n(p), so that alpha_n(p) . omega_n(p) = p.
WordPair omega_n(const WordPair& p, std::size_t n);

struct PairVeelikeRule {
  Alphabet left_alphabet;
  Alphabet right_alphabet;
  std::size_t n = 0;
  std::map<WordPair, WordPair> table;

  friend bool operator==(const PairVeelikeRule&, const PairVeelikeRule&) = default;
};

/// The (phi x phi)-conjugated action of g on the pair language L^2, with n = depth(g) + 1.
PairVeelikeRule pair_action(const TwoVElement& g);

/// table(alpha_n(p)) . omega_n(p); throws Error for a missing entry.
WordPair apply_pair_rule(const PairVeelikeRule& rule, const WordPair& p);

struct PairViolation {
  VeelikeViolation::Kind kind;
  WordPair pair;
  WordPair other;
};

struct PairVerifyResult {
  std::optional<PairViolation> violation;
  std::size_t pairs_checked = 0;
  explicit operator bool() const noexcept { return !violation.has_value(); }
};

/// Pairwise analogue of verify_veelike over left x right with both components of length <= max_len.
PairVerifyResult verify_pair_veelike(const PairVeelikeRule& rule, const Dfa& left, const Dfa& right,
                                     std::size_t max_len);

}  // namespace veemap
