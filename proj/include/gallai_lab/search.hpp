#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gallai_lab/coloring.hpp"
#include "gallai_lab/witness.hpp"

namespace gallai_lab {

/// Largest host order searched exhaustively, per color count.
class SearchLimits {
 public:
  /// k=1: 64, k=2: 9, k=3: 7, k=4: 6, k>=5: 5.
  static SearchLimits defaults();

  /// Applies overrides of the form "2=10,3=8" on top of the defaults.
  static SearchLimits parse(const std::string& overrides);

  /// Defaults, overridden by the GALLAI_LAB_LIMITS environment variable if set.
  static SearchLimits from_environment();

  int max_order(int colors) const;
  void set(int colors, int max_order);

 private:
  std::map<int, int> by_colors_;
};

/// Colorings of K_n with palette k to avoid: a monochromatic cycle of the given
/// order in each color (0 = unconstrained) and, optionally, rainbow triangles.
struct AvoidanceProblem {
  int n = 1;
  int k = 1;
  std::vector<int> forbidden_cycle;  // index c-1
  bool rainbow_triangle_forbidden = false;

  /// Color 1 avoids C_m1, color 2 avoids C_m2.
  static AvoidanceProblem ramsey(int n, int m1, int m2);
  /// No rainbow triangle and no monochromatic C_m in any of k colors.
  static AvoidanceProblem gallai_ramsey(int n, int k, int m);

  void check() const;
};

struct SearchOptions {
  SearchLimits limits = SearchLimits::defaults();
  /// Extension candidates examined before giving up.
  std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
  int threads = 1;
};

struct SearchStats {
  std::uint64_t nodes = 0;      // extension candidates examined
  std::uint64_t canonical = 0;  // distinct isomorphism classes kept
  std::uint64_t rejected = 0;   // candidates dropped as isomorphic duplicates
  std::int64_t ms = 0;          // wall time; excluded from result equality

  bool same_counts(const SearchStats& o) const {
    return nodes == o.nodes && canonical == o.canonical && rejected == o.rejected;
  }
};

enum class Outcome { Found, Exhausted, BudgetExceeded };
std::string_view to_string(Outcome outcome);

struct AvoidanceResult {
  Outcome outcome = Outcome::Exhausted;
  std::optional<ColoredCompleteGraph> coloring;  // set when Found
  SearchStats stats;
};

/// Decides whether some coloring avoids everything in `p`. Throws OverLimit when
/// p.n exceeds the exhaustive limit for p.k.
AvoidanceResult exists_avoiding(const AvoidanceProblem& p, const SearchOptions& options = {});

/// Isomorphism classes of colorings of K_n avoiding `p` (p.n ignored), as
/// canonical colorings in increasing key order. Exposed for enumeration checks.
std::vector<ColoredCompleteGraph> enumerate_classes(const AvoidanceProblem& p, int n,
                                                    const SearchOptions& options = {});

enum class Family { Ramsey, GallaiRamsey };
std::string_view to_string(Family family);

struct SearchReport {
  Family family = Family::Ramsey;
  /// Ordered parameters: Ramsey {m, n, n_max, formula?}, GallaiRamsey {m, k, n_max}.
  std::vector<std::pair<std::string, std::int64_t>> params;
  std::optional<int> value;  // exact threshold when determined
  int lower = 1;             // threshold >= lower
  std::optional<int> upper;  // threshold <= upper
  std::optional<ColoredCompleteGraph> witness;  // order lower - 1
  SearchStats stats;

  std::optional<std::int64_t> param(const std::string& name) const;

  /// JSON with the witness referenced by file name.
  std::string to_json(const std::string& witness_file) const;
  /// Parses JSON; the witness is loaded from `witness_file` resolved against base_dir.
  static SearchReport from_json(const std::string& text, const std::string& base_dir);

  /// Equality ignoring wall time.
  bool same_result(const SearchReport& other) const;
};

/// Writes `<json_path>` and the witness coloring beside it as
/// `<stem>.witness.txt`. The JSON records the witness by file name only.
void write_report(const SearchReport& report, const std::string& json_path);
SearchReport read_report(const std::string& json_path);

/// R(C_m, C_n): least N such that every 2-coloring of K_N has a color-1 C_m or a
/// color-2 C_n. Exhaustive up to min(n_max, limit); beyond that only lower bounds
/// from constructions and seeded random colorings are attempted.
SearchReport search_ramsey(int m, int n, int n_max, const SearchOptions& options = {});

/// gr_k(K_3 : C_m), same search regime as search_ramsey.
SearchReport search_gallai_ramsey(int m, int k, int n_max, const SearchOptions& options = {});

struct CertificateCheck {
  bool valid = true;
  std::string reason;
  std::optional<Witness> offending;

  explicit operator bool() const { return valid; }
};

/// Re-runs the detector sweep on the witness and the order arithmetic. Does not
/// repeat the exhaustion.
CertificateCheck verify_certificate(const SearchReport& report);

}  // namespace gallai_lab
