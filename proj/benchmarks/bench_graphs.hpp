#pragma once

#include <random>
#include <string>

#include "vcflow/graph.hpp"

namespace vcflow::bench {

/// Loop-heavy CFG: a spine 0..n-1 with random forward skips and back edges.
inline SuperGraph random_cfg(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    text += "V " + std::to_string(i) + (i == 0 ? " entry " : " ");
    switch (rng() % 4) {
      case 0: text += "def v" + std::to_string(rng() % 16) + " d" + std::to_string(i); break;
      case 1: text += "assign v" + std::to_string(rng() % 16) + " = " + std::to_string(rng() % 8); break;
      case 2: text += "access " + std::to_string(rng() % 32); break;
      default: text += "use v" + std::to_string(rng() % 16); break;
    }
    text += "\n";
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    text += "E " + std::to_string(i) + " " + std::to_string(i + 1) + "\n";
    if (rng() % 4 == 0 && i + 2 < n)
      text += "E " + std::to_string(i) + " " + std::to_string(i + 2 + rng() % (n - i - 2)) + "\n";
    if (rng() % 8 == 0 && i > 0) text += "E " + std::to_string(i) + " " + std::to_string(rng() % i) + "\n";
  }
  return parse_graph(text);
}

/// Straight chain where vertex i defines its own variable.
inline SuperGraph def_chain(std::size_t n) {
  std::string text;
  for (std::size_t i = 0; i < n; ++i)
    text += "V " + std::to_string(i) + " def v" + std::to_string(i) + " d" + std::to_string(i) + "\n";
  for (std::size_t i = 0; i + 1 < n; ++i) text += "E " + std::to_string(i) + " " + std::to_string(i + 1) + "\n";
  return parse_graph(text);
}

}  // namespace vcflow::bench
