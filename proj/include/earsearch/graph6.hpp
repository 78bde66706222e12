#pragma once

/// \file graph6.hpp
/// \brief graph6 text encoding for graphs of at most kMaxVertices vertices.

#include <stdexcept>
#include <string>
#include <string_view>

#include "graph.hpp"

namespace earsearch {

/// Encodes g as graph6: one byte n+63, then the upper triangle in the order
/// (0,1),(0,2),(1,2),(0,3),... packed six bits per byte, each byte +63.
inline std::string to_graph6(const Graph& g) {
  const int n = g.vertex_count();
  std::string out;
  out.push_back(static_cast<char>(n + 63));
  int acc = 0;
  int bits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

/// Inverse of to_graph6. Trailing whitespace is ignored; anything else that
/// does not fit the format throws std::invalid_argument.
inline Graph from_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
    text.remove_suffix(1);
  }
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  if (text.empty()) throw std::invalid_argument("empty graph6 string");
  const int n = static_cast<unsigned char>(text[0]) - 63;
  if (n < 0 || n > 62) throw std::invalid_argument("graph6 header out of range");
  if (n > kMaxVertices) throw std::invalid_argument("graph6 order exceeds capacity");
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t expected = 1 + (pairs + 5) / 6;
  if (text.size() != expected) throw std::invalid_argument("graph6 length mismatch");

  Graph g(n);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      int byte = static_cast<unsigned char>(text[1 + k / 6]) - 63;
      if (byte < 0 || byte > 63) throw std::invalid_argument("graph6 byte out of range");
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace earsearch
