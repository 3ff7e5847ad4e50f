#include "gallai_lab/search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gallai_lab/canonical.hpp"
#include "gallai_lab/constructions.hpp"
#include "gallai_lab/detectors.hpp"

namespace gallai_lab {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Found: return "found";
    case Outcome::Exhausted: return "exhausted";
    case Outcome::BudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

std::string_view to_string(Family family) {
  return family == Family::Ramsey ? "Ramsey" : "GallaiRamsey";
}

// ---------------------------------------------------------------------------
// Limits

SearchLimits SearchLimits::defaults() {
  SearchLimits l;
  l.by_colors_ = {{1, kMaxVertices}, {2, 9}, {3, 7}, {4, 6}};
  return l;
}

int SearchLimits::max_order(int colors) const {
  auto it = by_colors_.find(colors);
  if (it != by_colors_.end()) return it->second;
  return 5;
}

void SearchLimits::set(int colors, int max_order) {
  if (colors < 1) throw Error(ErrorCode::InvalidArgument, "color count must be >= 1");
  const int cap = colors == 1 ? kMaxVertices : kMaxCanonicalOrder;
  if (max_order < 1 || max_order > cap) {
    throw Error(ErrorCode::InvalidArgument, "limit for k=" + std::to_string(colors) +
                                                " must lie in 1.." + std::to_string(cap));
  }
  by_colors_[colors] = max_order;
}

SearchLimits SearchLimits::parse(const std::string& overrides) {
  SearchLimits l = defaults();
  std::stringstream ss(overrides);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    int colors = 0;
    int order = 0;
    try {
      if (eq == std::string::npos) throw std::invalid_argument("no '='");
      std::size_t used = 0;
      colors = std::stoi(item.substr(0, eq), &used);
      if (used != eq) throw std::invalid_argument("trailing");
      order = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument,
                  "bad limit override \"" + item + "\", expected k=n");
    }
    l.set(colors, order);
  }
  return l;
}

SearchLimits SearchLimits::from_environment() {
  const char* env = std::getenv("GALLAI_LAB_LIMITS");
  return env ? parse(env) : defaults();
}

// ---------------------------------------------------------------------------
// Problems

AvoidanceProblem AvoidanceProblem::ramsey(int n, int m1, int m2) {
  return {n, 2, {m1, m2}, false};
}

AvoidanceProblem AvoidanceProblem::gallai_ramsey(int n, int k, int m) {
  return {n, k, std::vector<int>(static_cast<std::size_t>(std::max(k, 0)), m), true};
}

void AvoidanceProblem::check() const {
  if (n < 1) throw Error(ErrorCode::BadParameters, "host order must be >= 1");
  if (k < 1 || k > kMaxColors) throw Error(ErrorCode::BadParameters, "color count out of range");
  if (static_cast<int>(forbidden_cycle.size()) != k) {
    throw Error(ErrorCode::BadParameters, "one forbidden cycle order per color is required");
  }
  for (int m : forbidden_cycle) {
    if (m != 0 && m < 3) throw Error(ErrorCode::BadParameters, "forbidden cycle orders must be >= 3");
  }
}

namespace {

// ---------------------------------------------------------------------------
// Incremental checks for the newest vertex

constexpr int kMaxPalette = 8;

struct Extension {
  int n = 0;  // order after adding the vertex
  std::array<std::array<Mask, kMaxVertices>, kMaxPalette + 1> adj{};  // old vertices only
  std::array<std::array<unsigned char, kMaxVertices>, kMaxVertices> col{};
};

Extension load_parent(int parent_order, const std::string& key) {
  Extension e;
  e.n = parent_order + 1;
  std::size_t at = 0;
  for (int v = 1; v < parent_order; ++v) {
    for (int u = 0; u < v; ++u) {
      auto c = static_cast<unsigned char>(key[at++]);
      e.col[u][v] = e.col[v][u] = c;
      e.adj[c][u] |= bit(v);
      e.adj[c][v] |= bit(u);
    }
  }
  return e;
}

// Path through `avail` in `adj` starting after `end`, `remaining` more vertices,
// finishing inside `targets`.
bool closing_path(const std::array<Mask, kMaxVertices>& adj, int end, Mask avail,
                  Mask targets, int remaining) {
  Mask next = adj[end] & avail;
  if (remaining == 1) return next & targets;
  while (next) {
    int v = __builtin_ctzll(next);
    next &= next - 1;
    if (closing_path(adj, v, avail & ~bit(v), targets, remaining - 1)) return true;
  }
  return false;
}

bool violates(const AvoidanceProblem& p, const Extension& e, const std::vector<unsigned char>& row) {
  const int v = e.n - 1;
  if (p.rainbow_triangle_forbidden && p.k >= 3) {
    for (int u = 0; u < v; ++u) {
      for (int w = u + 1; w < v; ++w) {
        const auto a = row[u];
        const auto b = row[w];
        const auto c = e.col[u][w];
        if (a != b && a != c && b != c) return true;
      }
    }
  }
  for (int c = 1; c <= p.k; ++c) {
    const int m = p.forbidden_cycle[c - 1];
    if (m == 0 || m > e.n) continue;
    Mask nbrs = 0;
    for (int u = 0; u < v; ++u) {
      if (row[u] == c) nbrs |= bit(u);
    }
    if (popcount(nbrs) < 2) continue;
    // cycle v, x, ..., y, v with x < y: a path on m-1 old vertices from x to y
    const Mask old = low_mask(v);
    Mask starts = nbrs;
    while (starts) {
      int x = __builtin_ctzll(starts);
      starts &= starts - 1;
      Mask targets = nbrs & ~low_mask(x + 1);
      if (targets && closing_path(e.adj[c], x, old & ~bit(x), targets, m - 2)) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Level-by-level orderly generation with canonical deduplication

class LevelSearch {
 public:
  LevelSearch(const AvoidanceProblem& p, const SearchOptions& options)
      : problem_(p), options_(options) {
    if (p.k > kMaxPalette) {
      throw Error(ErrorCode::OverLimit, "exhaustive search supports at most " +
                                            std::to_string(kMaxPalette) + " colors");
    }
    classes_.push_back("");
    stats_.canonical = 1;
  }

  int order() const { return order_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const SearchStats& stats() const { return stats_; }

  /// Moves to order()+1. Returns false, leaving state untouched, when the level
  /// would exceed the node budget.
  bool advance() {
    const int parent = order_;
    const int child = parent + 1;
    if (child > kMaxCanonicalOrder && problem_.k > 1) {
      throw Error(ErrorCode::OverLimit, "order " + std::to_string(child) +
                                            " beyond canonical labelling range");
    }
    const long double per_parent = std::pow(static_cast<long double>(problem_.k), parent);
    const long double level_nodes = per_parent * static_cast<long double>(classes_.size());
    if (static_cast<long double>(stats_.nodes) + level_nodes >
        static_cast<long double>(options_.budget)) {
      return false;
    }

    const std::size_t total = classes_.size();
    const int workers = static_cast<int>(
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options_.threads, 1)), 1,
                                std::max<std::size_t>(total, 1)));
    std::vector<std::vector<std::string>> found(static_cast<std::size_t>(workers));
    std::vector<std::uint64_t> passed_by(static_cast<std::size_t>(workers), 0);
    auto work = [&](int w) {
      const std::size_t begin = total * static_cast<std::size_t>(w) / workers;
      const std::size_t end = total * static_cast<std::size_t>(w + 1) / workers;
      for (std::size_t i = begin; i < end; ++i) {
        passed_by[w] += expand(classes_[i], parent, found[w]);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }

    std::vector<std::string> next;
    std::uint64_t passed = 0;
    for (auto c : passed_by) passed += c;
    for (auto& f : found) {
      next.insert(next.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());

    stats_.nodes += static_cast<std::uint64_t>(level_nodes);
    stats_.canonical += next.size();
    stats_.rejected += passed - next.size();
    classes_ = std::move(next);
    order_ = child;
    return true;
  }

  ColoredCompleteGraph decode(const std::string& key) const {
    return coloring_from_key(order_, problem_.k, key);
  }

 private:
  // Appends the canonical keys of every admissible child; returns how many
  // children passed the forbidden-structure checks.
  std::uint64_t expand(const std::string& parent_key, int parent,
                       std::vector<std::string>& out) const {
    const Extension e = load_parent(parent, parent_key);
    const int k = problem_.k;
    std::vector<unsigned char> row(static_cast<std::size_t>(parent), 1);
    std::vector<std::string> local;
    std::uint64_t passed = 0;
    for (;;) {
      if (!violates(problem_, e, row)) {
        ++passed;
        std::string key = parent_key;
        key.append(row.begin(), row.end());
        if (k == 1) {
          local.push_back(std::move(key));
        } else {
          local.push_back(canonical_form(parent + 1, key).key);
        }
      }
      // odometer over colors 1..k
      int i = 0;
      while (i < parent && row[i] == k) row[i++] = 1;
      if (i == parent) break;
      ++row[i];
    }
    std::sort(local.begin(), local.end());
    local.erase(std::unique(local.begin(), local.end()), local.end());
    out.insert(out.end(), std::make_move_iterator(local.begin()),
               std::make_move_iterator(local.end()));
    return passed;
  }

  AvoidanceProblem problem_;
  SearchOptions options_;
  int order_ = 1;
  std::vector<std::string> classes_;
  SearchStats stats_;
};

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               start)
      .count();
}

}  // namespace

AvoidanceResult exists_avoiding(const AvoidanceProblem& p, const SearchOptions& options) {
  p.check();
  if (p.n > options.limits.max_order(p.k)) {
    throw Error(ErrorCode::OverLimit, "n = " + std::to_string(p.n) + " exceeds the exhaustive limit " +
                                          std::to_string(options.limits.max_order(p.k)) +
                                          " for k = " + std::to_string(p.k));
  }
  const auto start = std::chrono::steady_clock::now();
  LevelSearch search(p, options);
  AvoidanceResult result;
  while (search.order() < p.n) {
    if (!search.advance()) {
      result.outcome = Outcome::BudgetExceeded;
      break;
    }
    if (search.classes().empty()) {
      result.outcome = Outcome::Exhausted;
      break;
    }
  }
  if (search.order() == p.n && !search.classes().empty()) {
    result.outcome = Outcome::Found;
    result.coloring = search.decode(search.classes().front());
  }
  result.stats = search.stats();
  result.stats.ms = elapsed_ms(start);
  return result;
}

std::vector<ColoredCompleteGraph> enumerate_classes(const AvoidanceProblem& p, int n,
                                                    const SearchOptions& options) {
  AvoidanceProblem q = p;
  q.n = n;
  q.check();
  LevelSearch search(q, options);
  while (search.order() < n && !search.classes().empty()) {
    if (!search.advance()) throw Error(ErrorCode::OverLimit, "node budget exceeded");
  }
  std::vector<ColoredCompleteGraph> out;
  if (search.order() == n) {
    for (const auto& key : search.classes()) out.push_back(search.decode(key));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Threshold searches

namespace {

bool avoids(const AvoidanceProblem& p, const ColoredCompleteGraph& g) {
  if (g.palette() > p.k) return false;
  if (p.rainbow_triangle_forbidden && find_rainbow_triangle(g)) return false;
  for (int c = 1; c <= p.k; ++c) {
    const int m = p.forbidden_cycle[c - 1];
    if (m != 0 && find_mono_cycle(g, c, m)) return false;
  }
  return true;
}

ColoredCompleteGraph swap_colors_12(const ColoredCompleteGraph& g) {
  return ColoredCompleteGraph::from_function(g.order(), g.palette(), [&](int u, int v) {
    Color c = g.color(u, v);
    return c == 1 ? 2 : c == 2 ? 1 : c;
  });
}

constexpr int kRandomSeedsPerOrder = 64;

// Raises report.lower using constructions and seeded random Gallai colorings.
void seed_lower_bound(const AvoidanceProblem& shape, const std::vector<ColoredCompleteGraph>& built,
                      SearchReport& report) {
  for (const auto& g : built) {
    if (g.order() + 1 > report.lower && avoids(shape, g)) {
      report.lower = g.order() + 1;
      report.witness = g;
    }
  }
  for (int order = report.lower; order <= kMaxVertices; ++order) {
    bool hit = false;
    for (std::uint64_t seed = 0; seed < kRandomSeedsPerOrder && !hit; ++seed) {
      auto g = random_gallai(order, shape.k, seed);
      if (avoids(shape, g)) {
        report.lower = order + 1;
        report.witness = g;
        hit = true;
      }
    }
    if (!hit) break;
  }
}

SearchReport run_threshold(Family family, const AvoidanceProblem& shape, int n_max,
                           std::vector<std::pair<std::string, std::int64_t>> params,
                           const std::vector<ColoredCompleteGraph>& constructions,
                           const SearchOptions& options) {
  if (n_max < 1 || n_max > kMaxVertices) {
    throw Error(ErrorCode::OverLimit, "n_max must lie in 1.." + std::to_string(kMaxVertices));
  }
  const auto start = std::chrono::steady_clock::now();
  SearchReport report;
  report.family = family;
  report.params = std::move(params);

  const int limit = options.limits.max_order(shape.k);
  const int cap = std::min(n_max, limit);
  LevelSearch search(shape, options);
  std::string last_key;  // lowest class at the last nonempty level
  int last_order = 1;
  bool stopped_early = false;
  while (search.order() < cap) {
    if (!search.advance()) {
      stopped_early = true;
      break;
    }
    if (search.classes().empty()) {
      report.value = search.order();
      report.upper = search.order();
      break;
    }
    last_key = search.classes().front();
    last_order = search.order();
  }
  report.lower = last_order + 1;
  report.witness = coloring_from_key(last_order, shape.k, last_key);
  if (!report.value && (stopped_early || cap < n_max)) {
    seed_lower_bound(shape, constructions, report);
  }
  report.stats = search.stats();
  report.stats.ms = elapsed_ms(start);
  return report;
}

}  // namespace

SearchReport search_ramsey(int m, int n, int n_max, const SearchOptions& options) {
  if (m < 3 || n < 3) throw Error(ErrorCode::BadParameters, "cycle orders must be >= 3");
  std::vector<std::pair<std::string, std::int64_t>> params{{"m", m}, {"n", n}, {"n_max", n_max}};
  if (auto f = ramsey_formula(std::min(m, n), std::max(m, n))) params.emplace_back("formula", *f);

  std::vector<ColoredCompleteGraph> built;
  if (m % 2 == 1 && m >= 5 && m <= n && 2 * n - 2 <= kMaxVertices) {
    built.push_back(build_ramsey_cycle_lower(m, n).graph);
  }
  if (n % 2 == 1 && n >= 5 && n <= m && 2 * m - 2 <= kMaxVertices) {
    built.push_back(swap_colors_12(build_ramsey_cycle_lower(n, m).graph));
  }
  return run_threshold(Family::Ramsey, AvoidanceProblem::ramsey(1, m, n), n_max, std::move(params),
                       built, options);
}

SearchReport search_gallai_ramsey(int m, int k, int n_max, const SearchOptions& options) {
  if (m < 3) throw Error(ErrorCode::BadParameters, "cycle order must be >= 3");
  if (k < 1) throw Error(ErrorCode::BadParameters, "color count must be >= 1");
  std::vector<std::pair<std::string, std::int64_t>> params{{"m", m}, {"k", k}, {"n_max", n_max}};
  std::vector<ColoredCompleteGraph> built;
  const int ell = (m - 1) / 2;
  if (m % 2 == 1 && ell >= 2 && k <= 6 && (ell << k) <= kMaxVertices) {
    built.push_back(build_extremal_odd(ell, k).graph);
  }
  return run_threshold(Family::GallaiRamsey, AvoidanceProblem::gallai_ramsey(1, k, m), n_max,
                       std::move(params), built, options);
}

// ---------------------------------------------------------------------------
// Reports

std::optional<std::int64_t> SearchReport::param(const std::string& name) const {
  for (const auto& [key, value] : params) {
    if (key == name) return value;
  }
  return std::nullopt;
}

bool SearchReport::same_result(const SearchReport& o) const {
  return family == o.family && params == o.params && value == o.value && lower == o.lower &&
         upper == o.upper && witness == o.witness && stats.same_counts(o.stats);
}

std::string SearchReport::to_json(const std::string& witness_file) const {
  ordered_json j;
  j["family"] = std::string(to_string(family));
  ordered_json p = ordered_json::object();
  for (const auto& [key, v] : params) p[key] = v;
  j["params"] = p;
  j["value"] = value ? ordered_json(*value) : ordered_json(nullptr);
  j["lower"] = lower;
  j["upper"] = upper ? ordered_json(*upper) : ordered_json(nullptr);
  j["witness_file"] = witness_file;
  j["stats"] = {{"nodes", stats.nodes},
                {"canonical", stats.canonical},
                {"rejected", stats.rejected},
                {"ms", stats.ms}};
  return j.dump(2) + "\n";
}

SearchReport SearchReport::from_json(const std::string& text, const std::string& base_dir) {
  SearchReport r;
  std::string witness_file;
  try {
    auto j = ordered_json::parse(text);
    const auto family = j.at("family").get<std::string>();
    if (family == "Ramsey") {
      r.family = Family::Ramsey;
    } else if (family == "GallaiRamsey") {
      r.family = Family::GallaiRamsey;
    } else {
      throw Error(ErrorCode::ParseError, "unknown family \"" + family + "\"");
    }
    for (const auto& [key, v] : j.at("params").items()) r.params.emplace_back(key, v.get<std::int64_t>());
    if (!j.at("value").is_null()) r.value = j.at("value").get<int>();
    r.lower = j.at("lower").get<int>();
    if (!j.at("upper").is_null()) r.upper = j.at("upper").get<int>();
    witness_file = j.at("witness_file").get<std::string>();
    const auto& s = j.at("stats");
    r.stats.nodes = s.at("nodes").get<std::uint64_t>();
    r.stats.canonical = s.at("canonical").get<std::uint64_t>();
    r.stats.rejected = s.at("rejected").get<std::uint64_t>();
    r.stats.ms = s.at("ms").get<std::int64_t>();
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("bad report JSON: ") + ex.what());
  }
  if (!witness_file.empty()) {
    std::filesystem::path path(witness_file);
    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
    r.witness = read_coloring_file(path.string());
  }
  return r;
}

void write_report(const SearchReport& report, const std::string& json_path) {
  std::filesystem::path path(json_path);
  std::filesystem::path witness = path;
  witness.replace_extension();
  witness += ".witness.txt";
  std::string witness_name;
  if (report.witness) {
    std::ostringstream header;
    header << "witness: " << to_string(report.family) << " lower bound " << report.lower;
    std::vector<std::string> comments{header.str()};
    write_text_file(witness.string(), serialize(*report.witness, comments));
    witness_name = witness.filename().string();
  }
  write_text_file(json_path, report.to_json(witness_name));
}

SearchReport read_report(const std::string& json_path) {
  std::filesystem::path path(json_path);
  return SearchReport::from_json(read_text_file(json_path), path.parent_path().string());
}

CertificateCheck verify_certificate(const SearchReport& report) {
  auto bad = [](std::string why, std::optional<Witness> w = std::nullopt) {
    return CertificateCheck{false, std::move(why), std::move(w)};
  };
  if (!report.witness) return bad("report carries no witness coloring");
  const auto& g = *report.witness;

  if (report.value) {
    if (report.lower != *report.value || report.upper != report.value) {
      return bad("exact value " + std::to_string(*report.value) + " disagrees with bounds");
    }
  }
  if (report.upper && *report.upper < report.lower) return bad("upper bound below lower bound");
  const int threshold = report.value ? *report.value : report.lower;
  if (g.order() != threshold - 1) {
    return bad("witness order " + std::to_string(g.order()) + " != " + std::to_string(threshold) +
               " - 1");
  }

  AvoidanceProblem shape;
  if (report.family == Family::Ramsey) {
    auto m = report.param("m");
    auto n = report.param("n");
    if (!m || !n) return bad("Ramsey report needs parameters m and n");
    shape = AvoidanceProblem::ramsey(g.order(), static_cast<int>(*m), static_cast<int>(*n));
  } else {
    auto m = report.param("m");
    auto k = report.param("k");
    if (!m || !k) return bad("Gallai-Ramsey report needs parameters m and k");
    shape = AvoidanceProblem::gallai_ramsey(g.order(), static_cast<int>(*k), static_cast<int>(*m));
  }
  for (Color c : g.colors_used()) {
    if (c > shape.k) return bad("witness uses color " + std::to_string(c) + " beyond k");
  }
  if (shape.rainbow_triangle_forbidden) {
    if (auto w = find_rainbow_triangle(g)) return bad("witness has a rainbow triangle", *w);
  }
  for (int c = 1; c <= shape.k; ++c) {
    const int m = shape.forbidden_cycle[c - 1];
    if (auto w = find_mono_cycle(g, c, m)) {
      return bad("witness has a monochromatic C_" + std::to_string(m) + " in color " +
                     std::to_string(c),
                 *w);
    }
  }
  return {};
}

}  // namespace gallai_lab
