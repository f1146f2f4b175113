#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gapkit/rational.hpp"

namespace gapkit {

using Json = nlohmann::ordered_json;

// Inclusive index range. hi == kToStreamEnd means "to the end of the sieved
// prime stream".
inline constexpr std::uint64_t kToStreamEnd =
    ~static_cast<std::uint64_t>(0);

struct NRange {
  std::uint64_t lo = 0, hi = 0;
};

// One scanned instance of a strict inequality lhs < rhs.
struct BoundInstance {
  std::uint64_t n = 0;
  std::string lhs, rhs, margin;
};

struct CheckReport {
  std::string check_id;
  std::uint64_t lo = 0, hi = 0;
  bool passed = true;
  std::vector<BoundInstance> violations;
  std::uint64_t violation_count = 0;
  std::vector<BoundInstance> informational;
  std::uint64_t informational_count = 0;
  bool has_min_margin = false;
  double min_margin = 0.0;
  std::uint64_t recheck_count = 0;
  std::vector<std::pair<std::string, std::string>> notes;

  Json to_json() const;
  static CheckReport from_json(const Json& j);
};

struct ThresholdWitness {
  std::uint64_t index = 0;
  std::string lhs, rhs, margin;
};

// Result of a bounded search for the last index where a predicate holds.
struct ThresholdResult {
  std::string check_id;
  std::uint64_t crossover = 0;
  bool has_crossover_index = false;
  std::uint64_t crossover_index = 0;
  ThresholdWitness holds_at, fails_at;
  std::vector<std::pair<std::string, std::uint64_t>> reference;
  bool passed = false;
  std::uint64_t recheck_digits = 40;

  Json to_json() const;
  static ThresholdResult from_json(const Json& j);
};

// Streaming margin scanner for a strict inequality lhs < rhs over an index
// range. Instances below claimed_lo are informational: failures there are
// recorded but do not fail the check. Margins within 1e-9 relative of zero
// are recomputed at 40 decimal digits before a verdict is taken.
class MarginScanner {
 public:
  static constexpr std::size_t kMaxStoredInstances = 10000;
  static constexpr double kRecheckRelative = 1e-9;

  MarginScanner(std::string check_id, std::uint64_t claimed_lo)
      : check_id_(std::move(check_id)), claimed_lo_(claimed_lo) {}

  // hp() must return {lhs, rhs} as BigFloat for the same instance.
  template <class HpFn>
  void note(std::uint64_t index, double lhs, double rhs, HpFn&& hp) {
    double margin = rhs - lhs;
    const double scale =
        std::max({std::abs(lhs), std::abs(rhs), 1.0e-300});
    std::string lhs_s, rhs_s, margin_s;
    bool have_strings = false;
    if (std::abs(margin) < kRecheckRelative * scale) {
      const auto [hl, hr] = hp();
      const BigFloat hm = hr - hl;
      margin = hm.convert_to<double>();
      lhs_s = decimal20(hl);
      rhs_s = decimal20(hr);
      margin_s = decimal20(hm);
      have_strings = true;
      ++recheck_count_;
    }
    const bool counted = index >= claimed_lo_;
    if (counted) update_min(margin);
    if (margin <= 0.0) {
      if (!have_strings) {
        lhs_s = fmt_sig20(lhs);
        rhs_s = fmt_sig20(rhs);
        margin_s = fmt_sig20(margin);
      }
      record_failure(counted, BoundInstance{index, std::move(lhs_s),
                                            std::move(rhs_s),
                                            std::move(margin_s)});
    }
  }

  // Exact-rational instance; no recheck path needed.
  void note_exact(std::uint64_t index, const Rational& lhs, const Rational& rhs);

  void add_note(const std::string& key, const std::string& value);
  std::uint64_t recheck_count() const { return recheck_count_; }

  CheckReport finish(std::uint64_t lo, std::uint64_t hi) const;

  Json state_json() const;
  void restore_state(const Json& j);

 private:
  void update_min(double margin) {
    if (!has_min_ || margin < min_margin_) {
      has_min_ = true;
      min_margin_ = margin;
    }
  }
  void record_failure(bool counted, BoundInstance inst);

  std::string check_id_;
  std::uint64_t claimed_lo_;
  bool has_min_ = false;
  double min_margin_ = 0.0;
  std::uint64_t recheck_count_ = 0;
  std::vector<BoundInstance> violations_, informational_;
  std::uint64_t violation_total_ = 0, informational_total_ = 0;
  std::vector<std::pair<std::string, std::string>> notes_;
};

}  // namespace gapkit
