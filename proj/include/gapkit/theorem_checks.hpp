#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gapkit/check_report.hpp"
#include "gapkit/gap_stats.hpp"
#include "gapkit/rational.hpp"

namespace gapkit {

// Exact prefix data over prime indices 1..n_max:
//   primes p_1..p_{n_max+1}, means A_k = (p_{k+1}-2)/k,
//   SG_j = sum_{k=2..j} g_k/(k-1), SA_j = sum_{k=2..j} A_k/(k-1).
// Every telescoping identity reduces to comparisons of these prefixes.
class AggregateHistory {
 public:
  static AggregateHistory build(std::uint64_t n_max);

  std::uint64_t n_max() const { return n_max_; }
  std::uint64_t prime(std::uint64_t k) const { return primes_[k]; }
  std::uint64_t gap(std::uint64_t k) const {
    return primes_[k + 1] - primes_[k];
  }
  const Rational& mean(std::uint64_t k) const { return a_[k]; }
  const Rational& gap_weight_prefix(std::uint64_t j) const { return sg_[j]; }
  const Rational& mean_weight_prefix(std::uint64_t j) const { return sa_[j]; }

  // E_j = SG_j - SA_j - A_j; identically -1 when the identities hold.
  const Rational& residual(std::uint64_t j) const { return e_[j]; }
  // G_n = g_n/(n(n-1)) - SA_n + SG_{n-1} - (p_n - 2)/n.
  const Rational& third_residual(std::uint64_t n) const { return g_[n]; }

 private:
  std::uint64_t n_max_ = 0;
  std::vector<std::uint64_t> primes_;  // primes_[k] = p_k, k in [1, n_max+1]
  std::vector<Rational> a_, sg_, sa_, e_, g_;
};

// Literal two-sided evaluation of the three telescoping identities for one
// anchor pair 2 <= m <= n. All arithmetic exact.
CheckReport verify_identity_theorem1(std::uint64_t m, std::uint64_t n,
                                     const AggregateHistory& hist);

// All anchor pairs 2 <= m <= n <= n_max via the residual factorization.
CheckReport verify_identity_matrix(std::uint64_t n_max,
                                   const AggregateHistory& hist);

// T_n = sum_{k=m}^{n} A_k/(k-1) + (p_n - 2)/n - A_{m-1}; equals
// sum_{k=m}^{n-1} g_k/(k-1) + g_n/(n(n-1)), so the default anchor
// m = 2 gives B_{n-1} + g_n/(n(n-1)) and shifting the anchor
// subtracts B_{m-1}.
Rational tail_value(std::uint64_t n, const AggregateHistory& hist,
                    std::uint64_t m = 2);

// Individual scans. Each sieves what it needs.
CheckReport check_mean_bound(NRange range);              // A_n < 2 log(n-1), n >= 6
ThresholdResult check_loglog_threshold(std::uint64_t cap = 10'000'000);
struct RosserReports {
  CheckReport upper;  // p_k < k(log k + log log k), k >= 6
  CheckReport lower;  // n log n < p_n, n >= 1
};
RosserReports check_rosser_bounds(NRange range);
CheckReport check_b_lower_bound(NRange range, std::uint64_t exact_until = 20000);
CheckReport check_b_upper_bound(NRange range, std::uint64_t exact_until = 20000);
CheckReport check_lemma_b_inequality(NRange range,
                                     std::uint64_t exact_until = 20000);
CheckReport check_gap_bound(NRange range);  // g_n < 2 log^2 p_n, n >= 5
CheckReport check_corollary_max_gap(std::uint64_t n);
CheckReport check_corollary_first_occurrence(
    const std::vector<FirstOccurrence>& table);

struct ConstantAudit {
  Rational sum;                  // sum_{k=2..5} A_k/(k-1)
  std::vector<Rational> terms;   // the four summands
  Rational lemma_derived;        // sum - 3
  Rational lemma_stated;         // constant printed in the source chain
  Rational theorem_derived;      // sum - 1
  Rational theorem_stated;
  bool lemma_matches = false;
  bool theorem_matches = false;

  Json to_json() const;
  static ConstantAudit from_json(const Json& j);
};
ConstantAudit audit_constants();

// One streaming pass evaluating every enabled bound check; standalone
// check_* calls above are thin wrappers enabling a single field.
struct BoundsRequest {
  std::optional<NRange> mean_bound;
  std::optional<NRange> rosser_upper;
  std::optional<NRange> rosser_lower;
  std::optional<NRange> b_lower;
  std::optional<NRange> b_upper;
  std::optional<NRange> lemma_b;
  std::optional<NRange> gap_bound;
  std::optional<NRange> max_gap_corollary;
  std::optional<NRange> cramer_observation;
  bool first_occurrence_corollary = false;
  bool collect_records = false;
  std::uint64_t exact_until = 20000;
  std::uint64_t sieve_limit = 0;  // 0: size from the widest index range
  std::uint64_t segment_size = 1ull << 20;
  unsigned threads = 1;
};

struct BoundsResult {
  std::vector<CheckReport> reports;
  std::vector<RecordEntry> records;
  std::vector<FirstOccurrence> first_occurrences;
};

BoundsResult run_bounds_scan(const BoundsRequest& req);

// Claimed starting indices for each bound (instances below are informational).
inline constexpr std::uint64_t kMeanBoundStart = 6;
inline constexpr std::uint64_t kRosserUpperStart = 6;
inline constexpr std::uint64_t kRosserLowerStart = 1;
inline constexpr std::uint64_t kBLowerStart = 6;
inline constexpr std::uint64_t kBUpperStart = 22;
inline constexpr std::uint64_t kLemmaBStart = 22;
inline constexpr std::uint64_t kGapBoundStart = 5;
inline constexpr std::uint64_t kMaxGapCorollaryStart = 5;
inline constexpr std::uint64_t kCramerObservationStart = 5;

}  // namespace gapkit
