#pragma once

#include <string>
#include <vector>

#include "veemap/flow.hpp"
#include "veemap/lang.hpp"
#include "veemap/subshift.hpp"
#include "veemap/thompson.hpp"
#include "veemap/veelike.hpp"

namespace fx {

inline const std::vector<std::vector<int>> kThreeMatrix{{1, 1, 0}, {1, 1, 1}, {1, 1, 1}};

inline const std::vector<std::vector<int>> kSixMatrix{
    {1, 1, 1, 0, 0, 0},  //
    {1, 1, 1, 0, 0, 0},  //
    {0, 0, 0, 1, 1, 1},  //
    {0, 0, 0, 1, 1, 0},  //
    {0, 0, 0, 1, 1, 1},  //
    {0, 1, 1, 0, 0, 0},
};

inline const std::vector<std::string> kSixSymbols{"0_A", "1_A", "@", "0_B", "1_B", "#"};

inline std::vector<std::vector<long long>> as_ll(const std::vector<std::vector<int>>& m) {
  std::vector<std::vector<long long>> out;
  for (const auto& r : m) out.emplace_back(r.begin(), r.end());
  return out;
}

inline veemap::Dfa L() { return veemap::thompson_language(); }

inline veemap::HullSpec single_spec(const std::string& sep = "2") {
  return veemap::HullSpec{L(), sep, std::nullopt, "@", true};
}

inline veemap::HullSpec pair_spec() {
  using veemap::Alphabet;
  return veemap::HullSpec{veemap::relabel(L(), Alphabet({"0_A", "1_A"})), "#",
                          veemap::relabel(L(), Alphabet({"0_B", "1_B"})), "@", true};
}

inline veemap::VElement swap() { return veemap::VElement({"0", "1"}, {"1", "0"}); }
inline veemap::VElement A() { return veemap::VElement({"0", "10", "11"}, {"00", "01", "1"}); }

/// f((ax, y)) = (x, ay)
inline veemap::TwoVElement baker() {
  return veemap::TwoVElement({{"0", ""}, {"1", ""}}, {{"", "0"}, {"", "1"}});
}

/// Flips the first bit of the first coordinate.
inline veemap::TwoVElement first_swap() {
  return veemap::TwoVElement({{"0", ""}, {"1", ""}}, {{"1", ""}, {"0", ""}});
}

inline veemap::Word w(const std::string& bits) { return veemap::to_word(bits); }

inline std::string s(const veemap::Word& word) { return veemap::to_bits(word); }

/// Orbit "#u" (separator first) with unit tiles.
inline veemap::FlowOrbit block_orbit(const std::string& u, const std::string& sep = "#") {
  std::vector<std::string> syms{sep};
  for (char c : u) syms.emplace_back(1, c);
  return veemap::FlowOrbit::unit(syms);
}

inline std::vector<std::string> split(const std::string& spaced) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : spaced) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace fx
