#include "gapkit/gap_stats.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gapkit {

namespace {
constexpr double kUnit = 0x1p-53;  // rounding unit for IEEE doubles
}

void CompensatedSum::add(double x) {
  abs_sum_ += std::abs(x);
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

double CompensatedSum::error_bound() const { return 4.0 * kUnit * abs_sum_; }

void CompensatedSum::restore(double sum, double comp, double abs_sum) {
  sum_ = sum;
  comp_ = comp;
  abs_sum_ = abs_sum;
}

RunningAggregate::RunningAggregate(std::uint64_t exact_until)
    : exact_until_(exact_until) {
  exact_on_ = exact_until_ >= 1;
}

void RunningAggregate::apply(const GapSample& s) {
  if (s.n != n_ + 1)
    throw SequencingError("gap samples must arrive consecutively from n = 1");
  if (n_ == 0) {
    if (s.p != 2) throw SequencingError("gap stream must start at p_1 = 2");
  } else if (s.p != p_next_) {
    throw SequencingError("gap sample does not continue the prime stream");
  }
  if (s.p_next <= s.p) throw SequencingError("gap sample is not increasing");
  if (s.gap != s.p_next - s.p)
    throw SequencingError("gap sample has inconsistent gap field");

  n_ = s.n;
  p_next_ = s.p_next;
  last_gap_ = s.gap;
  if (exact_on_ && n_ > exact_until_) {
    exact_on_ = false;
    b_ = 0;
    b_prev_ = 0;
  }
  if (n_ >= 2) {
    if (exact_on_) {
      b_prev_ = b_;
      b_ += Rational(s.gap, s.n - 1);
    }
    bf_prev_ = bf_.value();
    bf_.add(static_cast<double>(s.gap) / static_cast<double>(s.n - 1));
  }
}

Rational RunningAggregate::mean_gap() const {
  if (n_ == 0) throw ModeError("mean gap undefined before the first sample");
  return Rational(p_next_ - 2, n_);
}

double RunningAggregate::mean_gap_d() const {
  if (n_ == 0) throw ModeError("mean gap undefined before the first sample");
  return static_cast<double>(p_next_ - 2) / static_cast<double>(n_);
}

const Rational& RunningAggregate::weighted_sum_exact() const {
  if (!exact_on_)
    throw ModeError("exact weighted sum unavailable past exact_until");
  return b_;
}

const Rational& RunningAggregate::prev_weighted_sum_exact() const {
  if (!exact_on_)
    throw ModeError("exact weighted sum unavailable past exact_until");
  return b_prev_;
}

Rational RunningAggregate::tail_value() const {
  if (!exact_on_)
    throw ModeError("exact weighted sum unavailable past exact_until");
  if (n_ < 2) throw ModeError("tail value defined for n >= 2");
  return b_prev_ + Rational(last_gap_, n_ * (n_ - 1));
}

void RunningAggregate::restore(std::uint64_t n, std::uint64_t p_next,
                               std::uint64_t last_gap, bool exact_on,
                               const Rational& b, const Rational& b_prev,
                               const CompensatedSum& bf, double bf_prev) {
  n_ = n;
  p_next_ = p_next;
  last_gap_ = last_gap;
  exact_on_ = exact_on;
  b_ = b;
  b_prev_ = b_prev;
  bf_ = bf;
  bf_prev_ = bf_prev;
}

RunningAggregate fold_gap(RunningAggregate agg, const GapSample& s) {
  agg.apply(s);
  return agg;
}

double merit(const GapSample& s) {
  return static_cast<double>(s.gap) / std::log(static_cast<double>(s.p));
}

double cramer_ratio(const GapSample& s) {
  if (s.p < 3) throw std::domain_error("cramer ratio requires p >= 3");
  const double lp = std::log(static_cast<double>(s.p));
  return static_cast<double>(s.gap) / (lp * lp);
}

void RecordTracker::push(const GapSample& s) {
  if (s.gap <= best_) return;
  best_ = s.gap;
  const double lp = std::log(static_cast<double>(s.p));
  records_.push_back(RecordEntry{s.n, s.p, s.gap,
                                 static_cast<double>(s.gap) / lp,
                                 static_cast<double>(s.gap) / (lp * lp)});
}

void RecordTracker::restore(std::vector<RecordEntry> records) {
  records_ = std::move(records);
  best_ = records_.empty() ? 0 : records_.back().gap;
}

void FirstOccurrenceTracker::push(const GapSample& s) {
  if (s.gap >= seen_.size()) seen_.resize(s.gap + 1);
  if (seen_[s.gap].gap == 0) {
    seen_[s.gap] = FirstOccurrence{s.gap, s.n, s.p};
    ++count_;
  }
}

std::vector<FirstOccurrence> FirstOccurrenceTracker::sorted_by_gap() const {
  std::vector<FirstOccurrence> out;
  out.reserve(count_);
  for (const auto& fo : seen_)
    if (fo.gap != 0) out.push_back(fo);
  return out;
}

void FirstOccurrenceTracker::restore(const std::vector<FirstOccurrence>& rows) {
  seen_.clear();
  count_ = 0;
  for (const auto& fo : rows) {
    if (fo.gap >= seen_.size()) seen_.resize(fo.gap + 1);
    seen_[fo.gap] = fo;
    ++count_;
  }
}

std::vector<RecordEntry> max_gap_records(std::span<const GapSample> samples) {
  RecordTracker tracker;
  for (const auto& s : samples) tracker.push(s);
  return tracker.records();
}

std::vector<FirstOccurrence> first_occurrence_gaps(
    std::span<const GapSample> samples) {
  FirstOccurrenceTracker tracker;
  for (const auto& s : samples) tracker.push(s);
  return tracker.sorted_by_gap();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text,
                                                const std::string& header,
                                                std::size_t fields) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      throw std::invalid_argument("CSV must use LF line endings");
    if (first) {
      if (line != header)
        throw std::invalid_argument("unexpected CSV header: " + line);
      first = false;
      continue;
    }
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != fields)
      throw std::invalid_argument("unexpected CSV row: " + line);
    rows.push_back(std::move(cells));
  }
  if (first) throw std::invalid_argument("CSV missing header");
  return rows;
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

}  // namespace

std::string records_csv(const std::vector<RecordEntry>& rows) {
  std::string out = "n,p_n,gap,merit,cramer_ratio\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.p) + "," +
           std::to_string(r.gap) + "," + fmt_g15(r.merit) + "," +
           fmt_g15(r.cramer) + "\n";
  }
  return out;
}

std::vector<RecordEntry> parse_records_csv(const std::string& text) {
  std::vector<RecordEntry> out;
  for (const auto& cells : parse_csv(text, "n,p_n,gap,merit,cramer_ratio", 5)) {
    out.push_back(RecordEntry{parse_u64(cells[0]), parse_u64(cells[1]),
                              parse_u64(cells[2]), std::strtod(cells[3].c_str(), nullptr),
                              std::strtod(cells[4].c_str(), nullptr)});
  }
  return out;
}

std::string first_occurrence_csv(const std::vector<FirstOccurrence>& rows) {
  std::string out = "gap,n,p_n\n";
  for (const auto& r : rows)
    out += std::to_string(r.gap) + "," + std::to_string(r.n) + "," +
           std::to_string(r.p) + "\n";
  return out;
}

std::vector<FirstOccurrence> parse_first_occurrence_csv(const std::string& text) {
  std::vector<FirstOccurrence> out;
  for (const auto& cells : parse_csv(text, "gap,n,p_n", 3))
    out.push_back(FirstOccurrence{parse_u64(cells[0]), parse_u64(cells[1]),
                                  parse_u64(cells[2])});
  return out;
}

}  // namespace gapkit
