#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gapkit/check_report.hpp"

namespace gapkit {

// a^2 must stay clear of the 64-bit prime ceiling for witness searches.
inline constexpr std::uint64_t kMaxIntervalBase = 4294967295ull;

struct IntervalResult {
  std::uint64_t a = 0;
  // Smallest prime in (a(a-1), a^2), if any.
  std::optional<std::uint64_t> lower_witness;
  // Smallest prime in (a^2, a(a+1)), if any.
  std::optional<std::uint64_t> upper_witness;
  bool complete() const { return lower_witness && upper_witness; }
};

IntervalResult oppermann_check(std::uint64_t a);  // CapacityError past base cap

struct OppermannScan {
  CheckReport report;
  std::vector<IntervalResult> witnesses;
};
OppermannScan oppermann_scan(std::uint64_t a_min, std::uint64_t a_max,
                             unsigned threads = 1);

// Folds one interval result into a running report: min-margin update plus a
// violation row when a witness is absent. violation_count is the total.
void oppermann_fold(const IntervalResult& r, CheckReport& rep);

// Block size used to shard and checkpoint interval scans.
inline constexpr std::uint64_t kIntervalBlock = 2048;

struct AndricaSample {
  std::uint64_t n = 0, p = 0, p_next = 0;
  double sqrt_diff = 0.0;   // sqrt(p_next) - sqrt(p)
  bool sqrt_gap_ok = false; // gap^2 < p, decided in integers
  static AndricaSample make(std::uint64_t n, std::uint64_t p,
                            std::uint64_t p_next);
};

// Exact integer equivalent of sqrt(p_next) - sqrt(p) < 1/2.
bool andrica_half_exact(std::uint64_t p, std::uint64_t p_next);

// primes[i] must hold p_{i+1}; the scans need p_{hi+1}, i.e. hi+1 entries.
CheckReport andrica_check(NRange range, std::span<const std::uint64_t> primes);
CheckReport sqrt_gap_check(NRange range, std::span<const std::uint64_t> primes);

// Largest prime p with sqrt(p) <= 2 log^2 p, scanning the given primes.
ThresholdResult find_sqrt_threshold(std::span<const std::uint64_t> primes);
// Largest integer a with a < 8 log^2 a.
ThresholdResult find_growth_threshold(std::uint64_t cap = 10'000'000);

std::string witnesses_csv(const std::vector<IntervalResult>& rows);
std::vector<IntervalResult> parse_witnesses_csv(const std::string& text);

inline constexpr std::uint64_t kAndricaStart = 31;
inline constexpr std::uint64_t kSqrtGapStart = 31;

}  // namespace gapkit
