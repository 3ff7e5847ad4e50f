// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <functional>
#include <numeric>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gallai_lab/constructions.hpp"
#include "gallai_lab/detectors.hpp"
#include "gallai_lab/gallai_structure.hpp"
#include "gallai_lab/search.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace gallai_lab;

namespace {

// Wall-clock ceilings in seconds, per criterion.
constexpr double kExtremalSeconds = 10.0;
constexpr double kRamseySeconds = 300.0;
constexpr double kGallaiRamseySeconds = 300.0;
constexpr double kWitnessSweepSeconds = 30.0;
constexpr double kPeelingSeconds = 5.0;

// Largest order checked with the subset-DP cycle oracle.
constexpr int kDpOracleMaxOrder = 20;

// Property-test sample sizes and order caps.
constexpr int kDiracSamples = 1000;
constexpr int kDiracMaxOrder = 32;
constexpr int kErdosGallaiSamples = 1000;
constexpr int kErdosGallaiMaxOrder = 16;
constexpr int kSplitSamples = 500;
constexpr int kSplitMaxOrder = 12;
constexpr int kRecolorSamples = 500;
constexpr int kRecolorMaxOrder = 20;
constexpr int kPartitionSamples = 500;
constexpr int kPartitionMaxOrder = 30;
constexpr int kPartitionMaxColors = 5;
constexpr int kBruteForcePartitionMaxOrder = 8;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
  void note(const std::string& what) {
    if (pass) detail << (detail.tellp() > 0 ? "; " : "") << what;
  }
};

int failures = 0;

void report(int criterion, const std::string& title, Verdict& v, double seconds) {
  std::ostringstream t;
  t.setf(std::ios::fixed);
  t.precision(2);
  t << seconds;
  std::cout << "criterion " << criterion << ": " << (v.pass ? "PASS" : "FAIL") << "  " << title << " ("
            << t.str() << " s)";
  const auto d = v.detail.str();
  if (!d.empty()) std::cout << "  -- " << d;
  std::cout << std::endl;
  if (!v.pass) ++failures;
}

void run(int criterion, const std::string& title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  Timer timer;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.fail(std::string("exception: ") + e.what());
  }
  report(criterion, title, v, timer.seconds());
}

ColoredCompleteGraph two_colored(const SimpleGraph& h) {
  return ColoredCompleteGraph::from_function(h.order(), 2, [&](int u, int v) { return h.adjacent(u, v) ? 1 : 2; });
}

// Monochromatic C_m absent in every color: detector, plus the DP oracle when small.
bool sweep_no_cycle(const ColoredCompleteGraph& g, int m, std::string& why) {
  for (Color c = 1; c <= g.palette(); ++c) {
    if (auto w = find_mono_cycle(g, c, m)) {
      why = "detector found C_" + std::to_string(m) + " in color " + std::to_string(c);
      return false;
    }
    if (g.order() <= kDpOracleMaxOrder && oracle::has_cycle_dp(oracle::color_class(g, c), m)) {
      why = "oracle found C_" + std::to_string(m) + " in color " + std::to_string(c);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

void extremal_validity(Verdict& v) {
  Timer timer;
  int built = 0;
  for (int ell : {3, 4, 5}) {
    for (int k = 1; (ell << k) <= kMaxVertices; ++k) {
      auto g = build_extremal_odd(ell, k).graph;
      ++built;
      const std::string tag = "(l=" + std::to_string(ell) + ",k=" + std::to_string(k) + ")";
      if (g.order() != (ell << k)) v.fail(tag + " wrong order");
      if (oracle::count_rainbow_triangles(g) != 0) v.fail(tag + " rainbow triangle");
      std::string why;
      if (!sweep_no_cycle(g, 2 * ell + 1, why)) v.fail(tag + " " + why);
    }
  }
  v.note(std::to_string(built) + " constructions");
  if (timer.seconds() > kExtremalSeconds) v.fail("over time limit");
}

void ramsey_values(Verdict& v) {
  Timer timer;
  struct Case {
    int m, n, expected;
    bool formula;
  };
  const Case cases[] = {{3, 3, 6, false}, {4, 4, 6, false}, {4, 5, 7, true}, {5, 5, 9, true}};
  for (const auto& c : cases) {
    const std::string tag = "R(C" + std::to_string(c.m) + ",C" + std::to_string(c.n) + ")";
    auto r = search_ramsey(c.m, c.n, 9);
    if (r.value != c.expected) {
      v.fail(tag + " = " + (r.value ? std::to_string(*r.value) : "?"));
      continue;
    }
    if (!verify_certificate(r)) v.fail(tag + " certificate: " + verify_certificate(r).reason);
    const auto& w = *r.witness;
    if (oracle::has_cycle_dp(oracle::color_class(w, 1), c.m) || oracle::has_cycle_dp(oracle::color_class(w, 2), c.n)) {
      v.fail(tag + " witness rejected by oracle");
    }
    if (c.formula && ramsey_formula(c.m, c.n) != c.expected) v.fail(tag + " disagrees with formula");
    v.note(tag + "=" + std::to_string(c.expected));
  }
  if (timer.seconds() > kRamseySeconds) v.fail("over time limit");
}

// Informational only. The level-k coloring is two level-(k-1) copies joined in color
// k, so its mono odd cycles and rainbow triangles would have to live inside one
// copy, or use the bipartite join twice. Checks both halves of the out-of-range case
// and the join shape at the largest representable level.
void supplementary_halves() {
  std::vector<std::string> info;
  for (int ell : {3, 4, 5}) {
    for (int k = 2; k <= 4; ++k) {
      if ((ell << k) <= kMaxVertices) continue;
      auto half = build_extremal_odd(ell, k - 1).graph;
      std::string why;
      const bool half_ok = !find_rainbow_triangle(half) && sweep_no_cycle(half, 2 * ell + 1, why);
      // Join shape, checked where the doubled coloring still fits.
      int j = k - 1;
      while ((ell << j) > kMaxVertices) --j;
      auto whole = build_extremal_odd(ell, j).graph;
      auto lower = build_extremal_odd(ell, j - 1).graph;
      const int h = lower.order();
      bool join_ok = true;
      for (int a = 0; a < whole.order(); ++a) {
        for (int b = a + 1; b < whole.order(); ++b) {
          const bool across = (a < h) != (b < h);
          const Color want = across ? j : lower.color(a % h, b % h);
          join_ok = join_ok && whole.color(a, b) == want;
        }
      }
      info.push_back("(l=" + std::to_string(ell) + ",k=" + std::to_string(k) + ") half of order " +
                     std::to_string(half.order()) + (half_ok ? " passes" : " fails") + " the sweep, level " +
                     std::to_string(j) + " is " + (join_ok ? "" : "not ") + "two copies joined in color " +
                     std::to_string(j));
    }
  }
  for (const auto& line : info) std::cout << "  info: " << line << std::endl;
}

void gallai_ramsey_values(Verdict& v) {
  Timer timer;
  struct Case {
    int m, k, expected;
  };
  const Case cases[] = {{5, 1, 5}, {7, 1, 7}, {9, 1, 9}, {5, 2, 9}};
  for (const auto& c : cases) {
    const std::string tag = "gr_" + std::to_string(c.k) + "(C" + std::to_string(c.m) + ")";
    auto r = search_gallai_ramsey(c.m, c.k, 12);
    if (r.value != c.expected) {
      v.fail(tag + " = " + (r.value ? std::to_string(*r.value) : "?"));
      continue;
    }
    if (!verify_certificate(r)) v.fail(tag + " certificate: " + verify_certificate(r).reason);
    std::string why;
    if (oracle::count_rainbow_triangles(*r.witness) != 0 || !sweep_no_cycle(*r.witness, c.m, why)) {
      v.fail(tag + " witness rejected " + why);
    }
    v.note(tag + "=" + std::to_string(c.expected));
  }
  if (timer.seconds() > kGallaiRamseySeconds) v.fail("exact values over time limit");

  // Lower-bound witnesses at l * 2^k vertices for the general-k values.
  Timer sweep;
  std::vector<std::string> unreachable;
  for (int ell : {3, 4, 5}) {
    for (int k = 1; k <= 4; ++k) {
      const std::string tag = "(l=" + std::to_string(ell) + ",k=" + std::to_string(k) + ")";
      if ((ell << k) > kMaxVertices) {
        unreachable.push_back(tag + " needs " + std::to_string(ell << k) + " vertices");
        continue;
      }
      auto g = build_extremal_odd(ell, k).graph;
      std::string why;
      if (find_rainbow_triangle(g) || !sweep_no_cycle(g, 2 * ell + 1, why)) v.fail(tag + " sweep failed " + why);
    }
  }
  if (sweep.seconds() > kWitnessSweepSeconds) v.fail("witness sweep over time limit");
  for (const auto& u : unreachable) {
    v.fail(u + ", beyond the " + std::to_string(kMaxVertices) + "-vertex coloring limit; no sweep possible");
  }
  if (!unreachable.empty()) supplementary_halves();
}

void lemma_engines(Verdict& v) {
  oracle::Rng rng(20260401);

  int dirac_ok = 0;
  for (int i = 0; i < kDiracSamples; ++i) {
    auto h = oracle::random_dirac_graph(rng, oracle::uniform(rng, 3, kDiracMaxOrder));
    if (validate_witness(h, dirac_hamiltonian(h))) ++dirac_ok;
  }
  if (dirac_ok != kDiracSamples) v.fail("(a) Dirac " + std::to_string(dirac_ok) + "/" + std::to_string(kDiracSamples));

  int eg_ok = 0;
  for (int i = 0; i < kErdosGallaiSamples; ++i) {
    const int n = oracle::uniform(rng, 3, kErdosGallaiMaxOrder);
    const int k = oracle::uniform(rng, 2, n - 1);
    const int low = (k - 1) * n / 2 + 1;  // smallest e with 2e > (k-1)n
    const int edges = oracle::uniform(rng, low, n * (n - 1) / 2);
    auto h = oracle::random_graph_with_edges(rng, n, edges);
    auto w = erdos_gallai_path(h, k);
    if (w && w->vertices.size() == static_cast<std::size_t>(k + 1) && oracle::has_path_dp(h, k + 1) &&
        validate_witness(two_colored(h), Witness{WitnessKind::MonoPath, w->vertices, 1})) {
      ++eg_ok;
    }
  }
  if (eg_ok != kErdosGallaiSamples) {
    v.fail("(b) Erdos-Gallai " + std::to_string(eg_ok) + "/" + std::to_string(kErdosGallaiSamples));
  }

  int split_ok = 0;
  int split_done = 0;
  while (split_done < kSplitSamples) {
    const int n = oracle::uniform(rng, 3, kSplitMaxOrder);
    // Red and blue edges of a random graph; color 3 marks non-edges.
    auto g = ColoredCompleteGraph::from_function(n, 3, [&](int, int) {
      const int r = oracle::uniform(rng, 0, 9);
      return r < 2 ? 3 : r % 2 ? 1 : 2;
    });
    Mask host = 0;
    while (popcount(host) < 2) host = rng() & low_mask(n);
    int min_deg = n;
    for_each_bit(host, [&](int x) { min_deg = std::min(min_deg, popcount((g.neighbors(1, x) | g.neighbors(2, x)) & host)); });
    const int sum = oracle::uniform(rng, 3, min_deg + 3);  // a + b
    const int a = oracle::uniform(rng, 1, sum - 1);
    const int b = sum - a;
    ++split_done;
    auto w = colored_path_split(g, 1, 2, VertexSubset(n, host), a, b);
    const int want = w.color == 1 ? a : b;
    bool inside = true;
    for (int x : w.vertices) inside = inside && (host & bit(x));
    const SimpleGraph cls = oracle::color_class(g, *w.color).induced(host);
    if (validate_witness(g, w) && inside && static_cast<int>(w.vertices.size()) == want &&
        oracle::has_path_dp(cls, want)) {
      ++split_ok;
    }
  }
  if (split_ok != kSplitSamples) v.fail("(c) colored split " + std::to_string(split_ok) + "/" + std::to_string(kSplitSamples));

  int recolor_ok = 0;
  int recolor_done = 0;
  int attempts = 0;
  while (recolor_done < kRecolorSamples && attempts < 200 * kRecolorSamples) {
    ++attempts;
    auto cfg = oracle::random_small_parts(rng, kRecolorMaxOrder);
    std::string ignored;
    if (!sweep_no_cycle(cfg.g, cfg.m, ignored)) continue;
    ++recolor_done;
    auto out = recolor_small_parts(cfg.g, cfg.a, cfg.bs, cfg.k, cfg.m);
    std::string why;
    if (out.palette() == cfg.k && oracle::count_rainbow_triangles(out) == 0 && !find_rainbow_triangle(out) &&
        sweep_no_cycle(out, cfg.m, why)) {
      ++recolor_ok;
    }
  }
  if (recolor_ok != kRecolorSamples) {
    v.fail("(d) recolor " + std::to_string(recolor_ok) + "/" + std::to_string(kRecolorSamples) + " of " +
           std::to_string(recolor_done) + " generated");
  }
  v.note("(a) " + std::to_string(dirac_ok) + " (b) " + std::to_string(eg_ok) + " (c) " + std::to_string(split_ok) +
         " (d) " + std::to_string(recolor_ok));
}

void partition_checks(Verdict& v) {
  oracle::Rng rng(20260402);
  int ok = 0;
  int small = 0;
  int discrepancies = 0;
  for (int i = 0; i < kPartitionSamples; ++i) {
    const int n = oracle::uniform(rng, 2, kPartitionMaxOrder);
    const int k = oracle::uniform(rng, 1, kPartitionMaxColors);
    const std::uint64_t seed = rng();
    auto g = random_gallai(n, k, seed);
    auto p = gallai_partition(g);
    bool good = validate_partition(g, p) && oracle::is_gallai_partition(g, p) && p.part_count() >= 2 &&
                p.between_colors.size() <= 2;
    std::vector<int> order;
    for (const auto& s : p.parts) {
      for (int x : s.members()) order.push_back(x);
    }
    auto parts = part_colorings(g, p);
    auto rebuilt = substitute(reduced_graph(g, p), parts);
    good = good && rebuilt == oracle::relabel(g, order).with_palette(rebuilt.palette());
    if (good) ++ok;
    if (n <= kBruteForcePartitionMaxOrder) {
      ++small;
      const int best = oracle::min_gallai_parts(g);
      if (best != p.part_count()) {
        ++discrepancies;
        std::cout << "  partition log: random_gallai(" << n << ", " << k << ", " << seed << ") coarsest has "
                  << p.part_count() << " parts, global minimum " << best << std::endl;
      }
    }
  }
  if (ok != kPartitionSamples) v.fail(std::to_string(ok) + "/" + std::to_string(kPartitionSamples) + " valid");
  v.note(std::to_string(ok) + "/" + std::to_string(kPartitionSamples) + " valid and rebuilt; " +
         std::to_string(small) + " brute-forced, " + std::to_string(discrepancies) + " logged discrepancies");
}

// Some color permutation makes `a` equal to `b`.
bool equal_up_to_colors(const ColoredCompleteGraph& a, const ColoredCompleteGraph& b) {
  if (a.order() != b.order()) return false;
  const int k = std::max(a.palette(), b.palette());
  std::vector<int> perm(k + 1);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool same = true;
    for (int u = 0; u < a.order() && same; ++u) {
      for (int x = u + 1; x < a.order() && same; ++x) same = perm[a.color(u, x)] == b.color(u, x);
    }
    if (same) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

void peeling(Verdict& v) {
  Timer timer;
  const int ell = 3;
  for (int k : {2, 3, 4}) {
    auto g = build_extremal_odd(ell, k).graph;
    auto p = gallai_partition(g);
    const std::string tag = "k=" + std::to_string(k);
    if (p.part_count() != 2) {
      v.fail(tag + ": " + std::to_string(p.part_count()) + " parts");
      continue;
    }
    auto lower = build_extremal_odd(ell, k - 1).graph;
    for (const auto& part : part_colorings(g, p)) {
      if (!equal_up_to_colors(part, lower)) v.fail(tag + ": part is not the level-" + std::to_string(k - 1) + " coloring");
    }
  }
  if (timer.seconds() > kPeelingSeconds) v.fail("over time limit");
}

// ---------------------------------------------------------------------------

struct Captured {
  int code = -1;
  std::string out;
};

Captured shell(const std::string& cmd) {
  Captured c;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), got);
  const int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(Verdict& v) {
  const fs::path dir = GALLAI_LAB_TEST_TMP;
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = GALLAI_LAB_CLI;

  // Each command runs twice into separate directories; every output must match.
  const std::vector<std::string> commands{
      "gen random --n 40 --k 5 --seed 7 -o {}/random.txt",
      "gen extremal-odd --ell 4 --k 3 -o {}/extremal.txt",
      "gen ramsey-lower --m 5 --n 9 -o {}/lower.txt",
      "check {}/random.txt --cycle 5 --json",
      "partition {}/random.txt --json -o {}/partition.json",
      "lemmas eg-path {}/random.txt --color 1 --edges 4 --json",
      "search ramsey --m 5 --n 5 --no-timing --json -o {}/ramsey.json",
      "search gallai --m 3 --k 3 --no-timing --json -o {}/gallai.json",
      "verify {}/ramsey.json --json",
  };
  auto expand = [](std::string cmd, const fs::path& d) {
    for (std::size_t at; (at = cmd.find("{}")) != std::string::npos;) cmd.replace(at, 2, d.string());
    return cmd;
  };
  std::vector<std::string> first;
  for (int pass = 0; pass < 2; ++pass) {
    const fs::path d = dir / ("run" + std::to_string(pass));
    fs::create_directories(d);
    std::vector<std::string> outputs;
    for (const auto& c : commands) {
      auto r = shell(cli + " " + expand(c, d));
      outputs.push_back(std::to_string(r.code) + "\n" + r.out);
    }
    for (const auto& entry : fs::directory_iterator(d)) outputs.push_back(entry.path().filename().string());
    std::sort(outputs.begin() + static_cast<long>(commands.size()), outputs.end());
    for (const auto& name : std::vector<std::string>(outputs.begin() + static_cast<long>(commands.size()), outputs.end())) {
      outputs.push_back(slurp(d / name));
    }
    if (pass == 0) {
      first = outputs;
    } else if (outputs != first) {
      for (std::size_t i = 0; i < std::min(outputs.size(), first.size()); ++i) {
        if (outputs[i] != first[i]) v.fail("output " + std::to_string(i) + " differs between runs");
      }
      if (outputs.size() != first.size()) v.fail("different number of outputs");
    }
  }

  // Thread count must not change the report.
  for (int threads : {2, 4}) {
    const auto one = shell(cli + " search ramsey --m 5 --n 5 --no-timing --json --threads 1");
    const auto many = shell(cli + " search ramsey --m 5 --n 5 --no-timing --json --threads " + std::to_string(threads));
    if (one.out != many.out || one.out.empty()) v.fail("CLI report differs with " + std::to_string(threads) + " threads");
  }
  SearchOptions single;
  SearchOptions parallel;
  parallel.threads = 4;
  if (!search_ramsey(5, 5, 9, single).same_result(search_ramsey(5, 5, 9, parallel))) {
    v.fail("search_ramsey differs with 4 threads");
  }
  if (!search_gallai_ramsey(5, 3, 6, single).same_result(search_gallai_ramsey(5, 3, 6, parallel))) {
    v.fail("search_gallai_ramsey differs with 4 threads");
  }
  v.note(std::to_string(commands.size()) + " commands twice, thread counts 1/2/4");
}

}  // namespace

int main() {
  run(1, "extremal construction validity", extremal_validity);
  run(2, "exact small Ramsey numbers", ramsey_values);
  run(3, "exact small Gallai-Ramsey values and lower-bound witnesses", gallai_ramsey_values);
  run(4, "lemma engines", lemma_engines);
  run(5, "Gallai partitions of random Gallai colorings", partition_checks);
  run(6, "peeling of the extremal construction", peeling);
  run(7, "determinism", determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
