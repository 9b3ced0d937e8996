#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace ccsynth::graph {

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

/// Adjacency in compressed-row form. Edge payloads (letters) ride along.
struct Csr {
  std::vector<std::uint32_t> offsets{0};  // size n+1
  std::vector<std::uint32_t> targets;
  std::vector<std::uint32_t> labels;

  std::uint32_t size() const { return static_cast<std::uint32_t>(offsets.size() - 1); }
  std::uint32_t begin(std::uint32_t v) const { return offsets[v]; }
  std::uint32_t end(std::uint32_t v) const { return offsets[v + 1]; }
};

/// Strongly connected components (iterative Tarjan). Returns the component
/// index of every node; nodes never visited from `roots` get kNone.
/// `has_cycle[c]` is set for components containing at least one edge.
struct SccResult {
  std::vector<std::uint32_t> component;
  std::vector<char> has_cycle;
  std::uint32_t count = 0;
};

SccResult tarjan(const Csr& g, const std::vector<std::uint32_t>& roots);

/// Shortest path by BFS from `sources` to the first node satisfying `goal`,
/// exploring successors in edge order and restricted to nodes accepted by
/// `allowed`. Returns the sequence of edge indices. When `require_edge` is
/// set, a source itself does not count as reached without taking an edge.
std::optional<std::vector<std::uint32_t>> bfs_path(const Csr& g, const std::vector<std::uint32_t>& sources,
                                                   const std::function<bool(std::uint32_t)>& goal,
                                                   const std::function<bool(std::uint32_t)>& allowed,
                                                   bool require_edge);

/// Nodes reachable from roots (including roots).
std::vector<char> reachable(const Csr& g, const std::vector<std::uint32_t>& roots);

/// Nodes from which some node in `targets` is reachable (including targets).
std::vector<char> coreachable(const Csr& g, const std::vector<char>& targets);

}  // namespace ccsynth::graph
