#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gapkit/prime_engine.hpp"
#include "gapkit/rational.hpp"

namespace gapkit {

struct GapSample {
  std::uint64_t n;       // index of the lower prime
  std::uint64_t p;       // p_n
  std::uint64_t p_next;  // p_{n+1}
  std::uint64_t gap;     // p_next - p
};

template <class F>
void for_each_gap(const SieveConfig& cfg, F&& fn) {
  std::uint64_t prev_n = 0, prev_p = 0;
  for_each_prime(cfg, [&](PrimeIndexEntry e) {
    if (prev_n) fn(GapSample{prev_n, prev_p, e.p, e.p - prev_p});
    prev_n = e.n;
    prev_p = e.p;
  });
}

// Neumaier-compensated sum with a running first-order error bound.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }
  double abs_sum() const { return abs_sum_; }
  // Valid bound on |value() - exact sum of inputs as reals| assuming each
  // input itself carries at most one rounding.
  double error_bound() const;

  double raw_sum() const { return sum_; }
  double raw_comp() const { return comp_; }
  void restore(double sum, double comp, double abs_sum);

 private:
  double sum_ = 0.0, comp_ = 0.0, abs_sum_ = 0.0;
};

// Streaming fold over consecutive gap samples starting at n = 1.
// Maintains the exact mean A_n and the weighted sum B_n = sum g_i/(i-1)
// in two modes: exact rationals while n <= exact_until, compensated
// double throughout.
class RunningAggregate {
 public:
  explicit RunningAggregate(std::uint64_t exact_until = 20000);

  void apply(const GapSample& s);  // SequencingError on gaps out of order

  std::uint64_t n() const { return n_; }
  std::uint64_t p_next() const { return p_next_; }
  std::uint64_t last_gap() const { return last_gap_; }
  std::uint64_t exact_until() const { return exact_until_; }

  Rational mean_gap() const;  // A_n = (p_{n+1} - 2)/n, exact at any n
  double mean_gap_d() const;

  bool exact_available() const { return exact_on_; }
  const Rational& weighted_sum_exact() const;       // B_n; ModeError past window
  const Rational& prev_weighted_sum_exact() const;  // B_{n-1}
  double weighted_sum() const { return bf_.value(); }
  double prev_weighted_sum() const { return bf_prev_; }
  double weighted_sum_error_bound() const { return bf_.error_bound(); }

  // T_n anchored at m = 2: T_n = B_{n-1} + g_n/(n(n-1)); exact mode only.
  Rational tail_value() const;

  const CompensatedSum& float_state() const { return bf_; }
  void restore(std::uint64_t n, std::uint64_t p_next, std::uint64_t last_gap,
               bool exact_on, const Rational& b, const Rational& b_prev,
               const CompensatedSum& bf, double bf_prev);

 private:
  std::uint64_t exact_until_;
  std::uint64_t n_ = 0, p_next_ = 0, last_gap_ = 0;
  bool exact_on_ = true;
  Rational b_, b_prev_;
  CompensatedSum bf_;
  double bf_prev_ = 0.0;
};

// Value-flavored fold for callers that prefer explicit state passing.
RunningAggregate fold_gap(RunningAggregate agg, const GapSample& s);

struct RecordEntry {
  std::uint64_t n, p, gap;
  double merit;
  double cramer;
};

class RecordTracker {
 public:
  void push(const GapSample& s);
  const std::vector<RecordEntry>& records() const { return records_; }
  std::uint64_t best_gap() const { return best_; }
  void restore(std::vector<RecordEntry> records);

 private:
  std::uint64_t best_ = 0;
  std::vector<RecordEntry> records_;
};

struct FirstOccurrence {
  std::uint64_t gap, n, p;
};

class FirstOccurrenceTracker {
 public:
  void push(const GapSample& s);
  std::vector<FirstOccurrence> sorted_by_gap() const;
  void restore(const std::vector<FirstOccurrence>& rows);

 private:
  std::vector<FirstOccurrence> seen_;  // indexed by gap; gap == 0 means unseen
  std::uint64_t count_ = 0;

 public:
  std::uint64_t count() const { return count_; }
};

std::vector<RecordEntry> max_gap_records(std::span<const GapSample> samples);
std::vector<FirstOccurrence> first_occurrence_gaps(
    std::span<const GapSample> samples);

double merit(const GapSample& s);
double cramer_ratio(const GapSample& s);  // std::domain_error for p < 3

std::string records_csv(const std::vector<RecordEntry>& rows);
std::vector<RecordEntry> parse_records_csv(const std::string& text);
std::string first_occurrence_csv(const std::vector<FirstOccurrence>& rows);
std::vector<FirstOccurrence> parse_first_occurrence_csv(const std::string& text);

}  // namespace gapkit
