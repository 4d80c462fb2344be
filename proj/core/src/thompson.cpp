#include "veemap/thompson.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <set>

#include "veemap/error.hpp"

namespace veemap {

bool is_bits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

bool bits_prefix(std::string_view prefix, std::string_view w) {
  return prefix.size() <= w.size() && w.substr(0, prefix.size()) == prefix;
}

namespace {

bool comparable(std::string_view a, std::string_view b) { return bits_prefix(a, b) || bits_prefix(b, a); }

Rational power_of_half(std::size_t n) { return Rational(BigInt(1), BigInt(1) << n); }

std::vector<Bits> all_bits(std::size_t n) {
  std::vector<Bits> out{""};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Bits> next;
    next.reserve(out.size() * 2);
    for (const auto& w : out) {
      next.push_back(w + '0');
      next.push_back(w + '1');
    }
    out = std::move(next);
  }
  return out;
}

Bits strip_zeros(std::string_view head) {
  auto end = head.find_last_not_of('0');
  return end == std::string_view::npos ? Bits{} : Bits(head.substr(0, end + 1));
}

Bits tail_after(const EventuallyZero& x, std::size_t n) {
  return x.head().size() > n ? x.head().substr(n) : Bits{};
}

}  // namespace

Rational kraft_sum(std::span<const Bits> words) {
  Rational sum = 0;
  for (const auto& w : words) sum += power_of_half(w.size());
  return sum;
}

bool is_complete_prefix_code(std::span<const Bits> words) {
  if (words.empty()) return false;
  if (!std::all_of(words.begin(), words.end(), [](const Bits& w) { return is_bits(w); })) return false;
  std::vector<Bits> sorted(words.begin(), words.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (bits_prefix(sorted[i], sorted[i + 1])) return false;
  return kraft_sum(words) == 1;
}

// ---------------------------------------------------------------------------
// EventuallyZero

EventuallyZero::EventuallyZero(Bits head) : head_(std::move(head)) {
  if (!is_bits(head_)) throw Error("eventually-zero head must be a binary word");
  if (!head_.empty() && head_.back() != '1')
    throw Error("eventually-zero head '" + head_ + "' is not canonical (must be empty or end in 1)");
}

EventuallyZero EventuallyZero::canonical(std::string_view head) {
  if (!is_bits(head)) throw Error("eventually-zero head must be a binary word");
  return EventuallyZero(strip_zeros(head));
}

Bits EventuallyZero::prefix(std::size_t n) const {
  Bits p = head_.substr(0, std::min(n, head_.size()));
  p.resize(n, '0');
  return p;
}

// ---------------------------------------------------------------------------
// V

VElement::VElement() : domain_{""}, range_{""} {}

VElement::VElement(std::vector<Bits> domain, std::vector<Bits> range)
    : domain_(std::move(domain)), range_(std::move(range)) {
  if (domain_.size() != range_.size()) throw Error("V element needs domain and range codes of equal size");
  if (!is_complete_prefix_code(domain_)) throw Error("V element domain is not a complete prefix code");
  if (!is_complete_prefix_code(range_)) throw Error("V element range is not a complete prefix code");
}

std::size_t VElement::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& w : domain_) d = std::max(d, w.size());
  return d;
}

VElement v_reduce(const VElement& g) {
  std::vector<std::pair<Bits, Bits>> pairs;
  for (std::size_t i = 0; i < g.size(); ++i) pairs.emplace_back(g.domain()[i], g.range()[i]);
  for (bool merged = true; merged;) {
    merged = false;
    std::sort(pairs.begin(), pairs.end());
    // sorted by domain: a sibling pair d0, d1 is adjacent
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
      const auto& [d0, r0] = pairs[i];
      const auto& [d1, r1] = pairs[i + 1];
      if (d0.empty() || d0.back() != '0' || d1.size() != d0.size() || d1.back() != '1') continue;
      if (d0.compare(0, d0.size() - 1, d1, 0, d1.size() - 1) != 0) continue;
      if (r0.empty() || r0.back() != '0' || r1.size() != r0.size() || r1.back() != '1') continue;
      if (r0.compare(0, r0.size() - 1, r1, 0, r1.size() - 1) != 0) continue;
      pairs[i] = {d0.substr(0, d0.size() - 1), r0.substr(0, r0.size() - 1)};
      pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      merged = true;
    }
  }
  std::vector<Bits> dom, ran;
  for (auto& [d, r] : pairs) {
    dom.push_back(std::move(d));
    ran.push_back(std::move(r));
  }
  return VElement(std::move(dom), std::move(ran));
}

VElement v_compose(const VElement& g, const VElement& h) {
  std::vector<Bits> dom, ran;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& dh = h.domain()[i];
    const auto& rh = h.range()[i];
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto& dg = g.domain()[j];
      const auto& rg = g.range()[j];
      if (bits_prefix(rh, dg)) {
        dom.push_back(dh + dg.substr(rh.size()));
        ran.push_back(rg);
      } else if (bits_prefix(dg, rh)) {
        dom.push_back(dh);
        ran.push_back(rg + rh.substr(dg.size()));
      }
    }
  }
  return v_reduce(VElement(std::move(dom), std::move(ran)));
}

VElement v_inverse(const VElement& g) { return v_reduce(VElement(g.range(), g.domain())); }

bool v_equal(const VElement& a, const VElement& b) { return v_reduce(a) == v_reduce(b); }

bool v_is_identity(const VElement& g) { return v_reduce(g) == VElement::identity(); }

VElement v_expand(const VElement& g, std::size_t depth) {
  if (depth < g.depth()) throw Error("expansion depth below the element's depth");
  std::vector<Bits> dom, ran;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (const auto& s : all_bits(depth - g.domain()[i].size())) {
      dom.push_back(g.domain()[i] + s);
      ran.push_back(g.range()[i] + s);
    }
  return VElement(std::move(dom), std::move(ran));
}

std::map<Bits, Bits> v_local_rule(const VElement& g, std::size_t n) {
  if (n < g.depth())
    throw Error("local rule radius " + std::to_string(n) + " below element depth " + std::to_string(g.depth()));
  std::map<Bits, Bits> rule;
  for (const auto& u : all_bits(n))
    for (std::size_t i = 0; i < g.size(); ++i)
      if (bits_prefix(g.domain()[i], u)) {
        rule.emplace(u, g.range()[i] + u.substr(g.domain()[i].size()));
        break;
      }
  return rule;
}

EventuallyZero v_apply(const VElement& g, const EventuallyZero& x) {
  const Bits p = x.prefix(g.depth());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (bits_prefix(g.domain()[i], p))
      return EventuallyZero::canonical(g.range()[i] + tail_after(x, g.domain()[i].size()));
  throw Error("V element domain does not cover the point");  // unreachable for complete codes
}

// ---------------------------------------------------------------------------
// 2V

bool is_rect_partition(std::span<const Rect> rects) {
  if (rects.empty()) return false;
  Rational area = 0;
  for (const auto& r : rects) {
    if (!is_bits(r.first) || !is_bits(r.second)) return false;
    area += power_of_half(r.first.size() + r.second.size());
  }
  if (area != 1) return false;
  for (std::size_t i = 0; i < rects.size(); ++i)
    for (std::size_t j = i + 1; j < rects.size(); ++j)
      if (comparable(rects[i].first, rects[j].first) && comparable(rects[i].second, rects[j].second)) return false;
  return true;
}

TwoVElement::TwoVElement() : domain_{Rect{}}, range_{Rect{}} {}

TwoVElement::TwoVElement(std::vector<Rect> domain, std::vector<Rect> range)
    : domain_(std::move(domain)), range_(std::move(range)) {
  if (domain_.size() != range_.size()) throw Error("2V element needs partitions of equal size");
  if (!is_rect_partition(domain_)) throw Error("2V element domain is not a dyadic rectangle partition");
  if (!is_rect_partition(range_)) throw Error("2V element range is not a dyadic rectangle partition");
}

std::size_t TwoVElement::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& r : domain_) d = std::max({d, r.first.size(), r.second.size()});
  return d;
}

std::size_t TwoVElement::max_word_length() const noexcept {
  std::size_t d = depth();
  for (const auto& r : range_) d = std::max({d, r.first.size(), r.second.size()});
  return d;
}

namespace {

Bits& coord(Rect& r, int c) { return c == 0 ? r.first : r.second; }
const Bits& coord(const Rect& r, int c) { return c == 0 ? r.first : r.second; }

std::optional<std::pair<Rect, Rect>> merge_along(const Rect& d0, const Rect& r0, const Rect& d1, const Rect& r1,
                                                 int c) {
  const int o = 1 - c;
  const Bits& a = coord(d0, c);
  const Bits& b = coord(d1, c);
  if (a.empty() || a.back() != '0' || b.size() != a.size() || b.back() != '1') return std::nullopt;
  if (a.compare(0, a.size() - 1, b, 0, b.size() - 1) != 0 || coord(d0, o) != coord(d1, o)) return std::nullopt;
  const Bits& x = coord(r0, c);
  const Bits& y = coord(r1, c);
  if (x.empty() || x.back() != '0' || y.size() != x.size() || y.back() != '1') return std::nullopt;
  if (x.compare(0, x.size() - 1, y, 0, y.size() - 1) != 0 || coord(r0, o) != coord(r1, o)) return std::nullopt;
  Rect d = d0, r = r0;
  coord(d, c).pop_back();
  coord(r, c).pop_back();
  return std::pair{d, r};
}

}  // namespace

TwoVElement tv_reduce(const TwoVElement& g) {
  std::vector<std::pair<Rect, Rect>> pairs;
  for (std::size_t i = 0; i < g.size(); ++i) pairs.emplace_back(g.domain()[i], g.range()[i]);
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < pairs.size() && !merged; ++i)
      for (std::size_t j = 0; j < pairs.size() && !merged; ++j) {
        if (i == j) continue;
        for (int c = 0; c < 2 && !merged; ++c)
          if (auto m = merge_along(pairs[i].first, pairs[i].second, pairs[j].first, pairs[j].second, c)) {
            pairs[i] = *m;
            pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(j));
            merged = true;
          }
      }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<Rect> dom, ran;
  for (auto& [d, r] : pairs) {
    dom.push_back(std::move(d));
    ran.push_back(std::move(r));
  }
  return TwoVElement(std::move(dom), std::move(ran));
}

TwoVElement tv_compose(const TwoVElement& g, const TwoVElement& h) {
  std::vector<Rect> dom, ran;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Rect& dh = h.domain()[i];
    const Rect& rh = h.range()[i];
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Rect& dg = g.domain()[j];
      const Rect& rg = g.range()[j];
      if (!comparable(rh.first, dg.first) || !comparable(rh.second, dg.second)) continue;
      Rect d = dh, r = rg;
      for (int c = 0; c < 2; ++c) {
        const Bits& mid_out = coord(rh, c);
        const Bits& mid_in = coord(dg, c);
        if (mid_out.size() <= mid_in.size())
          coord(d, c) += mid_in.substr(mid_out.size());
        else
          coord(r, c) += mid_out.substr(mid_in.size());
      }
      dom.push_back(std::move(d));
      ran.push_back(std::move(r));
    }
  }
  return tv_reduce(TwoVElement(std::move(dom), std::move(ran)));
}

TwoVElement tv_inverse(const TwoVElement& g) { return tv_reduce(TwoVElement(g.range(), g.domain())); }

TwoVElement tv_refine(const TwoVElement& g, std::size_t m) {
  if (m < g.depth()) throw Error("refinement depth below the element's depth");
  std::vector<std::pair<Rect, Rect>> cells;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Rect& d = g.domain()[i];
    const Rect& r = g.range()[i];
    for (const auto& s : all_bits(m - d.first.size()))
      for (const auto& t : all_bits(m - d.second.size()))
        cells.emplace_back(Rect{d.first + s, d.second + t}, Rect{r.first + s, r.second + t});
  }
  std::sort(cells.begin(), cells.end());
  std::vector<Rect> dom, ran;
  for (auto& [d, r] : cells) {
    dom.push_back(std::move(d));
    ran.push_back(std::move(r));
  }
  return TwoVElement(std::move(dom), std::move(ran));
}

bool tv_equal(const TwoVElement& a, const TwoVElement& b) {
  const std::size_t m = std::max(a.depth(), b.depth());
  return tv_refine(a, m) == tv_refine(b, m);
}

std::map<BitsPair, BitsPair> tv_local_rule(const TwoVElement& g, std::size_t n) {
  if (n < g.depth())
    throw Error("local rule radius " + std::to_string(n) + " below element depth " + std::to_string(g.depth()));
  std::map<BitsPair, BitsPair> rule;
  const auto words = all_bits(n);
  for (const auto& u : words)
    for (const auto& v : words)
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Rect& d = g.domain()[i];
        if (bits_prefix(d.first, u) && bits_prefix(d.second, v)) {
          const Rect& r = g.range()[i];
          rule.emplace(BitsPair{u, v}, BitsPair{r.first + u.substr(d.first.size()), r.second + v.substr(d.second.size())});
          break;
        }
      }
  return rule;
}

std::pair<EventuallyZero, EventuallyZero> tv_apply(const TwoVElement& g, const EventuallyZero& x,
                                                   const EventuallyZero& y) {
  const Bits px = x.prefix(g.depth());
  const Bits py = y.prefix(g.depth());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Rect& d = g.domain()[i];
    if (bits_prefix(d.first, px) && bits_prefix(d.second, py)) {
      const Rect& r = g.range()[i];
      return {EventuallyZero::canonical(r.first + tail_after(x, d.first.size())),
              EventuallyZero::canonical(r.second + tail_after(y, d.second.size()))};
    }
  }
  throw Error("2V element domain does not cover the point");
}

// ---------------------------------------------------------------------------
// Random elements

namespace {

template <class T, class Splittable, class Split>
void random_splits(std::mt19937_64& rng, std::vector<T>& leaves, Splittable splittable, Split split,
                   std::size_t target) {
  while (leaves.size() < target) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (splittable(leaves[i])) open.push_back(i);
    if (open.empty()) return;
    const auto pick = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    auto [a, b] = split(leaves[pick], rng);
    leaves[pick] = std::move(a);
    leaves.push_back(std::move(b));
  }
}

}  // namespace

VElement random_v_element(std::mt19937_64& rng, std::size_t max_depth) {
  const std::size_t cap = std::size_t{1} << std::min<std::size_t>(max_depth, 16);
  const std::size_t target = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(cap, 2 * max_depth + 2))(rng);
  auto splittable = [&](const Bits& w) { return w.size() < max_depth; };
  auto split = [](const Bits& w, std::mt19937_64&) { return std::pair{w + '0', w + '1'}; };
  std::vector<Bits> dom{""}, ran{""};
  random_splits(rng, dom, splittable, split, target);
  random_splits(rng, ran, splittable, split, dom.size());
  std::shuffle(ran.begin(), ran.end(), rng);
  return v_reduce(VElement(std::move(dom), std::move(ran)));
}

TwoVElement random_tv_element(std::mt19937_64& rng, std::size_t max_depth) {
  const std::size_t cap = std::size_t{1} << std::min<std::size_t>(2 * max_depth, 16);
  const std::size_t target = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(cap, 2 * max_depth + 2))(rng);
  auto splittable = [&](const Rect& r) { return r.first.size() < max_depth || r.second.size() < max_depth; };
  auto split = [&](const Rect& r, std::mt19937_64& g) {
    std::vector<int> coords;
    if (r.first.size() < max_depth) coords.push_back(0);
    if (r.second.size() < max_depth) coords.push_back(1);
    const int c = coords[std::uniform_int_distribution<std::size_t>(0, coords.size() - 1)(g)];
    Rect a = r, b = r;
    coord(a, c) += '0';
    coord(b, c) += '1';
    return std::pair{a, b};
  };
  std::vector<Rect> dom{Rect{}}, ran{Rect{}};
  random_splits(rng, dom, splittable, split, target);
  random_splits(rng, ran, splittable, split, dom.size());
  std::shuffle(ran.begin(), ran.end(), rng);
  return tv_reduce(TwoVElement(std::move(dom), std::move(ran)));
}

// ---------------------------------------------------------------------------
// Generators

GeneratorSet standard_generators() {
  return {
      {'s', VElement({"0", "1"}, {"1", "0"})},
      {'a', VElement({"0", "10", "11"}, {"00", "01", "1"})},
      {'b', VElement({"0", "10", "110", "111"}, {"0", "100", "101", "11"})},
      {'c', VElement({"0", "10", "11"}, {"10", "11", "0"})},
      {'p', VElement({"0", "10", "11"}, {"10", "0", "11"})},
  };
}

std::vector<std::pair<char, bool>> parse_generator_word(const GeneratorSet& gens, std::string_view word) {
  std::vector<std::pair<char, bool>> letters;
  for (char ch : word) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    const bool inverse = std::isupper(static_cast<unsigned char>(ch)) != 0;
    const char name = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (!gens.contains(name)) throw Error(std::string("unknown generator '") + ch + "'");
    letters.emplace_back(name, inverse);
  }
  return letters;
}

VElement evaluate_word(const GeneratorSet& gens, std::string_view word) {
  VElement product;
  for (const auto& [name, inverse] : parse_generator_word(gens, word)) {
    const VElement& g = gens.at(name);
    product = v_compose(product, inverse ? v_inverse(g) : g);
  }
  return v_reduce(product);
}

}  // namespace veemap
