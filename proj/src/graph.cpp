#include "ccsynth/graph.hpp"

#include <deque>

namespace ccsynth::graph {

SccResult tarjan(const Csr& g, const std::vector<std::uint32_t>& roots) {
  const std::uint32_t n = g.size();
  SccResult r;
  r.component.assign(n, kNone);
  std::vector<std::uint32_t> index(n, kNone), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t v;
    std::uint32_t edge;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;

  for (std::uint32_t root : roots) {
    if (index[root] != kNone) continue;
    call.push_back({root, g.begin(root)});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      const std::uint32_t v = fr.v;
      if (fr.edge < g.end(v)) {
        const std::uint32_t w = g.targets[fr.edge++];
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, g.begin(w)});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        const std::uint32_t c = r.count++;
        std::uint32_t size = 0;
        while (true) {
          const std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          r.component[w] = c;
          ++size;
          if (w == v) break;
        }
        bool cyc = size > 1;
        if (!cyc)
          for (std::uint32_t e = g.begin(v); e < g.end(v); ++e)
            if (g.targets[e] == v) cyc = true;
        r.has_cycle.push_back(cyc ? 1 : 0);
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return r;
}

std::optional<std::vector<std::uint32_t>> bfs_path(const Csr& g, const std::vector<std::uint32_t>& sources,
                                                   const std::function<bool(std::uint32_t)>& goal,
                                                   const std::function<bool(std::uint32_t)>& allowed,
                                                   bool require_edge) {
  const std::uint32_t n = g.size();
  std::vector<std::uint32_t> parent_edge(n, kNone), parent(n, kNone), depth(n, 0);
  std::vector<char> seen(n, 0);
  std::deque<std::uint32_t> queue;

  auto unwind = [&](std::uint32_t x) {
    std::vector<std::uint32_t> path(depth[x]);
    for (std::uint32_t k = depth[x]; k-- > 0;) {
      path[k] = parent_edge[x];
      x = parent[x];
    }
    return path;
  };
  // Returns true when t is a goal.
  auto visit = [&](std::uint32_t from, std::uint32_t from_depth, std::uint32_t e) {
    const std::uint32_t t = g.targets[e];
    if (!allowed(t) || seen[t]) return false;
    seen[t] = 1;
    parent_edge[t] = e;
    parent[t] = from;
    depth[t] = from_depth + 1;
    if (goal(t)) return true;
    queue.push_back(t);
    return false;
  };

  if (require_edge) {
    // Sources are expanded without being marked, so a path may come back to them.
    for (std::uint32_t s : sources) {
      if (!allowed(s)) continue;
      for (std::uint32_t e = g.begin(s); e < g.end(s); ++e)
        if (visit(s, 0, e)) return unwind(g.targets[e]);
    }
  } else {
    for (std::uint32_t s : sources) {
      if (!allowed(s) || seen[s]) continue;
      if (goal(s)) return std::vector<std::uint32_t>{};
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t e = g.begin(v); e < g.end(v); ++e)
      if (visit(v, depth[v], e)) return unwind(g.targets[e]);
  }
  return std::nullopt;
}

std::vector<char> reachable(const Csr& g, const std::vector<std::uint32_t>& roots) {
  std::vector<char> seen(g.size(), 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t r : roots)
    if (!seen[r]) {
      seen[r] = 1;
      stack.push_back(r);
    }
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t e = g.begin(v); e < g.end(v); ++e) {
      const std::uint32_t t = g.targets[e];
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

std::vector<char> coreachable(const Csr& g, const std::vector<char>& targets) {
  const std::uint32_t n = g.size();
  std::vector<std::vector<std::uint32_t>> rev(n);
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t e = g.begin(v); e < g.end(v); ++e) rev[g.targets[e]].push_back(v);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < n; ++v)
    if (targets[v]) {
      seen[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t p : rev[v])
      if (!seen[p]) {
        seen[p] = 1;
        stack.push_back(p);
      }
  }
  return seen;
}

}  // namespace ccsynth::graph
