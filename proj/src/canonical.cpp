#include "gallai_lab/canonical.hpp"

#include <algorithm>
#include <array>

namespace gallai_lab {

std::string coloring_key(const ColoredCompleteGraph& g) {
  auto tri = g.row_major_colors();
  return std::string(tri.begin(), tri.end());
}

ColoredCompleteGraph coloring_from_key(int n, int palette, const std::string& key) {
  if (key.size() != static_cast<std::size_t>(n) * (n - 1) / 2) {
    throw Error(ErrorCode::InvalidArgument, "key length does not match order " + std::to_string(n));
  }
  std::size_t at = 0;
  return ColoredCompleteGraph::from_function(n, palette, [&](int, int) {
    return static_cast<Color>(static_cast<unsigned char>(key[at++]));
  });
}

namespace {

using Cells = std::vector<std::vector<int>>;

class Labeller {
 public:
  Labeller(int n, const std::string& key) : n_(n) {
    std::size_t at = 0;
    for (int v = 1; v < n; ++v) {
      for (int u = 0; u < v; ++u) {
        auto c = static_cast<unsigned char>(key[at++]);
        col_[u][v] = col_[v][u] = c;
        max_color_ = std::max<int>(max_color_, c);
      }
    }
  }

  CanonicalForm run() {
    Cells start(1);
    for (int v = 0; v < n_; ++v) start[0].push_back(v);
    search(std::move(start));
    return {best_key_, best_order_};
  }

 private:
  // Splits cells by (color, cell) neighbour counts until stable. Sub-cells are
  // ordered by signature, so the result is isomorphism-invariant.
  void refine(Cells& cells) const {
    std::array<int, kMaxCanonicalOrder> cell_of{};
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        for (int v : cells[i]) cell_of[v] = static_cast<int>(i);
      }
      const std::size_t width = cells.size() * static_cast<std::size_t>(max_color_ + 1);
      Cells next;
      next.reserve(cells.size());
      for (const auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::vector<std::pair<std::vector<int>, int>> sig;
        sig.reserve(cell.size());
        for (int v : cell) {
          std::vector<int> counts(width, 0);
          for (int w = 0; w < n_; ++w) {
            if (w != v) ++counts[static_cast<std::size_t>(col_[v][w]) * cells.size() + cell_of[w]];
          }
          sig.emplace_back(std::move(counts), v);
        }
        std::sort(sig.begin(), sig.end());
        std::size_t begin = 0;
        for (std::size_t i = 1; i <= sig.size(); ++i) {
          if (i == sig.size() || sig[i].first != sig[begin].first) {
            std::vector<int> part;
            for (std::size_t j = begin; j < i; ++j) part.push_back(sig[j].second);
            next.push_back(std::move(part));
            begin = i;
          }
        }
      }
      if (next.size() != cells.size()) changed = true;
      cells = std::move(next);
    }
  }

  // Key entries for the leading run of singleton cells, compared against the best
  // key's prefix. Returns <0, 0, >0 like strcmp.
  int compare_prefix(const Cells& cells) const {
    if (best_key_.empty()) return -1;
    std::array<int, kMaxCanonicalOrder> fixed{};
    int s = 0;
    while (s < static_cast<int>(cells.size()) && cells[s].size() == 1) {
      fixed[s] = cells[s][0];
      ++s;
    }
    std::size_t at = 0;
    for (int v = 1; v < s; ++v) {
      for (int u = 0; u < v; ++u, ++at) {
        auto c = static_cast<char>(col_[fixed[u]][fixed[v]]);
        if (c != best_key_[at]) return c < best_key_[at] ? -1 : 1;
      }
    }
    return 0;
  }

  void search(Cells cells) {
    refine(cells);
    if (compare_prefix(cells) > 0) return;
    auto open = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
    if (open == cells.end()) {
      leaf(cells);
      return;
    }
    const auto index = open - cells.begin();
    const std::vector<int> choices = *open;
    const std::size_t depth = path_.size();
    std::vector<int> tried;
    for (int x : choices) {
      if (!tried.empty() && same_orbit(x, tried)) continue;
      tried.push_back(x);
      Cells child;
      child.reserve(cells.size() + 1);
      child.insert(child.end(), cells.begin(), cells.begin() + index);
      child.push_back({x});
      std::vector<int> rest;
      for (int y : choices) {
        if (y != x) rest.push_back(y);
      }
      child.push_back(std::move(rest));
      child.insert(child.end(), cells.begin() + index + 1, cells.end());
      path_.push_back(x);
      search(std::move(child));
      path_.pop_back();
      if (jump_ < depth) return;
      jump_ = kNoJump;
    }
  }

  void leaf(const Cells& cells) {
    std::string key;
    key.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    for (int v = 1; v < n_; ++v) {
      for (int u = 0; u < v; ++u) key.push_back(static_cast<char>(col_[cells[u][0]][cells[v][0]]));
    }
    if (best_key_.empty() || key < best_key_) {
      best_key_ = std::move(key);
      best_order_.clear();
      for (const auto& c : cells) best_order_.push_back(c[0]);
      best_path_ = path_;
      return;
    }
    if (key != best_key_) return;
    // Same key: leaf order -> best order is an automorphism. The subtree below the
    // last common ancestor is its image of one already searched.
    std::vector<int> gamma(n_);
    for (int i = 0; i < n_; ++i) gamma[cells[i][0]] = best_order_[i];
    generators_.push_back(std::move(gamma));
    std::size_t common = 0;
    while (common < path_.size() && common < best_path_.size() && path_[common] == best_path_[common]) ++common;
    jump_ = common;
  }

  // x is in the orbit of some vertex in `tried` under the found automorphisms that
  // fix the current path pointwise.
  bool same_orbit(int x, const std::vector<int>& tried) const {
    std::array<int, kMaxCanonicalOrder> parent{};
    for (int v = 0; v < n_; ++v) parent[v] = v;
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& g : generators_) {
      bool fixes = true;
      for (int p : path_) fixes = fixes && g[p] == p;
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) parent[find(v)] = find(g[v]);
    }
    for (int y : tried) {
      if (find(x) == find(y)) return true;
    }
    return false;
  }

  static constexpr std::size_t kNoJump = ~std::size_t{0};

  int n_;
  int max_color_ = 0;
  std::array<std::array<unsigned char, kMaxCanonicalOrder>, kMaxCanonicalOrder> col_{};
  std::string best_key_;
  std::vector<int> best_order_;
  std::vector<int> best_path_;
  std::vector<int> path_;
  std::vector<std::vector<int>> generators_;
  std::size_t jump_ = kNoJump;
};

}  // namespace

CanonicalForm canonical_form(int n, const std::string& key) {
  if (n < 1 || n > kMaxCanonicalOrder) {
    throw Error(ErrorCode::OverLimit, "canonical labelling supports orders 1.." +
                                          std::to_string(kMaxCanonicalOrder));
  }
  if (n == 1) return {"", {0}};
  return Labeller(n, key).run();
}

CanonicalForm canonical_form(const ColoredCompleteGraph& g) {
  return canonical_form(g.order(), coloring_key(g));
}

}  // namespace gallai_lab
