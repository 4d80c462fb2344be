#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "veemap/rational.hpp"

namespace veemap {

/// Finite word over {0,1} written with the characters '0' and '1'.
using Bits = std::string;

bool is_bits(std::string_view s);
bool bits_prefix(std::string_view prefix, std::string_view w);

/// Sum of 2^-|w| over the words, computed exactly.
Rational kraft_sum(std::span<const Bits> words);

/// Prefix-free with Kraft sum exactly one, i.e. the leaves of a finite binary tree.
bool is_complete_prefix_code(std::span<const Bits> words);

/// Point of {0,1}^N with finitely many ones, stored as the head before the
/// all-zero tail. The head is empty or ends in '1'.
class EventuallyZero {
 public:
  EventuallyZero() = default;
  /// Throws Error unless `head` is canonical.
  explicit EventuallyZero(Bits head);
  /// Strips trailing zeros.
  static EventuallyZero canonical(std::string_view head);

  const Bits& head() const noexcept { return head_; }
  /// First n coordinates.
  Bits prefix(std::size_t n) const;

  auto operator<=>(const EventuallyZero&) const = default;

 private:
  Bits head_;
};

/// Element of Thompson's V as a bijection between two complete prefix codes:
/// domain()[i] is mapped to range()[i], so f(domain[i] x) = range[i] x.
class VElement {
 public:
  VElement();  // identity
  VElement(std::vector<Bits> domain, std::vector<Bits> range);

  static VElement identity() { return {}; }

  const std::vector<Bits>& domain() const noexcept { return domain_; }
  const std::vector<Bits>& range() const noexcept { return range_; }
  std::size_t size() const noexcept { return domain_.size(); }
  /// Longest domain word.
  std::size_t depth() const noexcept;

  /// Structural equality; compare reduced forms to decide group equality.
  friend bool operator==(const VElement&, const VElement&) = default;

 private:
  std::vector<Bits> domain_;
  std::vector<Bits> range_;
};

/// Merges sibling pairs d0->r0, d1->r1 into d->r until none remain; pairs are
/// then sorted by domain word, so equal elements have equal reduced forms.
VElement v_reduce(const VElement& g);

/// g after h: (g o h)(x) = g(h(x)).
VElement v_compose(const VElement& g, const VElement& h);
VElement v_inverse(const VElement& g);
bool v_equal(const VElement& a, const VElement& b);
bool v_is_identity(const VElement& g);

/// Same element with every domain leaf split down to uniform depth (>= depth()).
VElement v_expand(const VElement& g, std::size_t depth);

/// F : {0,1}^n -> {0,1}^* with f(ux) = F(u)x. Throws Error if n < g.depth().
std::map<Bits, Bits> v_local_rule(const VElement& g, std::size_t n);

EventuallyZero v_apply(const VElement& g, const EventuallyZero& x);

// ---------------------------------------------------------------------------
// Brin-Thompson 2V

/// Dyadic rectangle first*{0,1}^N x second*{0,1}^N.
struct Rect {
  Bits first;
  Bits second;
  auto operator<=>(const Rect&) const = default;
};

/// Element of 2V as a bijection between two dyadic rectangle partitions:
/// f((domain[i].first x, domain[i].second y)) = (range[i].first x, range[i].second y).
class TwoVElement {
 public:
  TwoVElement();  // identity
  TwoVElement(std::vector<Rect> domain, std::vector<Rect> range);

  static TwoVElement identity() { return {}; }

  const std::vector<Rect>& domain() const noexcept { return domain_; }
  const std::vector<Rect>& range() const noexcept { return range_; }
  std::size_t size() const noexcept { return domain_.size(); }
  /// Longest coordinate word in the domain.
  std::size_t depth() const noexcept;
  /// Longest coordinate word in domain or range.
  std::size_t max_word_length() const noexcept;

  friend bool operator==(const TwoVElement&, const TwoVElement&) = default;

 private:
  std::vector<Rect> domain_;
  std::vector<Rect> range_;
};

/// Checks that the rectangles have total area one and are pairwise disjoint.
bool is_rect_partition(std::span<const Rect> rects);

/// Greedy merge of rectangle pairs that split along one coordinate and whose
/// images split consistently; the result is compact but not unique.
TwoVElement tv_reduce(const TwoVElement& g);
TwoVElement tv_compose(const TwoVElement& g, const TwoVElement& h);
TwoVElement tv_inverse(const TwoVElement& g);
/// Refines both elements to the uniform grid of depth m (m the longest domain
/// coordinate of either) and compares images cell by cell.
bool tv_equal(const TwoVElement& a, const TwoVElement& b);
TwoVElement tv_refine(const TwoVElement& g, std::size_t m);

using BitsPair = std::pair<Bits, Bits>;

/// (F_1, F_2) on ({0,1}^n)^2, with f((ux, vy)) = (F_1(u,v) x, F_2(u,v) y).
std::map<BitsPair, BitsPair> tv_local_rule(const TwoVElement& g, std::size_t n);

std::pair<EventuallyZero, EventuallyZero> tv_apply(const TwoVElement& g, const EventuallyZero& x,
                                                   const EventuallyZero& y);

// ---------------------------------------------------------------------------
// Random elements and generator words

/// Random reduced element whose tree pair has depth at most max_depth.
VElement random_v_element(std::mt19937_64& rng, std::size_t max_depth);
TwoVElement random_tv_element(std::mt19937_64& rng, std::size_t max_depth);

/// Named generators; a lowercase letter names an element, its uppercase form the inverse.
using GeneratorSet = std::map<char, VElement>;

/// s (swap), a and b (the usual generators x0, x1 of F), c (3-cycle of {0,10,11}),
/// p (transposition 0 <-> 10).
GeneratorSet standard_generators();

/// Letters of `word` left to right, whitespace ignored. Throws on unknown letters.
std::vector<std::pair<char, bool>> parse_generator_word(const GeneratorSet& gens, std::string_view word);

/// Product g_1 o g_2 o ... o g_k of the letters, reduced.
VElement evaluate_word(const GeneratorSet& gens, std::string_view word);

}  // namespace veemap
