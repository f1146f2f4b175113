#include "gapkit/interval_checks.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <sstream>
#include <stdexcept>

#include "gapkit/prime_engine.hpp"

namespace gapkit {

namespace {

BigFloat blog(std::uint64_t x) { return log(BigFloat(x)); }

// Smallest prime strictly inside (lo, hi), if any.
std::optional<std::uint64_t> prime_in_open_interval(std::uint64_t lo,
                                                    std::uint64_t hi) {
  if (hi <= lo + 1) return std::nullopt;
  const std::uint64_t w = next_prime(lo);
  if (w < hi) return w;
  return std::nullopt;
}

void push_instance(std::vector<BoundInstance>& rows, std::uint64_t& total,
                   BoundInstance inst) {
  ++total;
  if (rows.size() < MarginScanner::kMaxStoredInstances)
    rows.push_back(std::move(inst));
}

}  // namespace

IntervalResult oppermann_check(std::uint64_t a) {
  if (a < 2) throw std::invalid_argument("interval base must be >= 2");
  if (a > kMaxIntervalBase)
    throw CapacityError("interval base exceeds 64-bit witness range");
  IntervalResult r;
  r.a = a;
  const std::uint64_t a2 = a * a;
  r.lower_witness = prime_in_open_interval(a * (a - 1), a2);
  r.upper_witness = prime_in_open_interval(a2, a * (a + 1));
  return r;
}

OppermannScan oppermann_scan(std::uint64_t a_min, std::uint64_t a_max,
                             unsigned threads) {
  if (a_min < 2 || a_min > a_max)
    throw std::invalid_argument("bad interval base range");
  if (a_max > kMaxIntervalBase)
    throw CapacityError("interval base exceeds 64-bit witness range");
  OppermannScan out;
  out.witnesses.reserve(a_max - a_min + 1);
  CheckReport& rep = out.report;
  rep.check_id = "oppermann";
  rep.lo = a_min;
  rep.hi = a_max;

  auto run_block = [](std::uint64_t lo, std::uint64_t hi) {
    std::vector<IntervalResult> rows;
    rows.reserve(hi - lo + 1);
    for (std::uint64_t a = lo; a <= hi; ++a) rows.push_back(oppermann_check(a));
    return rows;
  };
  auto consume = [&](const std::vector<IntervalResult>& rows) {
    for (const auto& r : rows) {
      oppermann_fold(r, rep);
      out.witnesses.push_back(r);
    }
  };

  if (threads <= 1) {
    for (std::uint64_t lo = a_min; lo <= a_max; lo += kIntervalBlock)
      consume(run_block(lo, std::min(a_max, lo + kIntervalBlock - 1)));
  } else {
    std::deque<std::future<std::vector<IntervalResult>>> window;
    std::uint64_t next_lo = a_min;
    auto schedule = [&] {
      if (next_lo > a_max) return;
      const std::uint64_t lo = next_lo;
      const std::uint64_t hi = std::min(a_max, lo + kIntervalBlock - 1);
      next_lo = hi + 1;
      window.push_back(
          std::async(std::launch::async, [=] { return run_block(lo, hi); }));
    };
    for (unsigned i = 0; i < threads; ++i) schedule();
    while (!window.empty()) {
      auto rows = window.front().get();
      window.pop_front();
      schedule();
      consume(rows);
    }
  }
  rep.passed = rep.violation_count == 0;
  rep.notes.emplace_back("bases_checked", std::to_string(a_max - a_min + 1));
  return out;
}

void oppermann_fold(const IntervalResult& r, CheckReport& rep) {
  if (r.complete()) {
    // Margin: the smaller distance from a witness to its interval's open
    // upper end, in integers.
    const std::uint64_t slack_lo = r.a * r.a - *r.lower_witness;
    const std::uint64_t slack_hi = r.a * (r.a + 1) - *r.upper_witness;
    const double margin = static_cast<double>(std::min(slack_lo, slack_hi));
    if (!rep.has_min_margin || margin < rep.min_margin) {
      rep.has_min_margin = true;
      rep.min_margin = margin;
    }
    return;
  }
  ++rep.violation_count;
  if (rep.violations.size() < MarginScanner::kMaxStoredInstances) {
    rep.violations.push_back(BoundInstance{
        r.a, r.lower_witness ? std::to_string(*r.lower_witness) : "none",
        r.upper_witness ? std::to_string(*r.upper_witness) : "none", "-1"});
  }
  if (!rep.has_min_margin || -1.0 < rep.min_margin) {
    rep.has_min_margin = true;
    rep.min_margin = -1.0;
  }
}

AndricaSample AndricaSample::make(std::uint64_t n, std::uint64_t p,
                                  std::uint64_t p_next) {
  if (p_next <= p) throw std::invalid_argument("primes must increase");
  AndricaSample s;
  s.n = n;
  s.p = p;
  s.p_next = p_next;
  s.sqrt_diff = std::sqrt(static_cast<double>(p_next)) -
                std::sqrt(static_cast<double>(p));
  const std::uint64_t gap = p_next - p;
  s.sqrt_gap_ok = static_cast<unsigned __int128>(gap) * gap < p;
  return s;
}

bool andrica_half_exact(std::uint64_t p, std::uint64_t p_next) {
  // sqrt(p_next) - sqrt(p) < 1/2  <=>  (4g - 1)^2 < 16 p  for g >= 1.
  const std::uint64_t gap = p_next - p;
  const unsigned __int128 lhs =
      static_cast<unsigned __int128>(4 * gap - 1) * (4 * gap - 1);
  return lhs < static_cast<unsigned __int128>(16) * p;
}

namespace {

void validate_prime_span(NRange range, std::span<const std::uint64_t> primes,
                         const char* what) {
  if (range.lo < 1 || range.lo > range.hi)
    throw std::invalid_argument(std::string(what) + ": bad index range");
  if (primes.size() < range.hi + 1)
    throw std::invalid_argument(std::string(what) +
                                ": prime table too short for range");
}

}  // namespace

CheckReport andrica_check(NRange range, std::span<const std::uint64_t> primes) {
  validate_prime_span(range, primes, "andrica");
  MarginScanner scan("andrica", kAndricaStart);
  std::uint64_t exact_confirms = 0, exact_agreements = 0;
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    const std::uint64_t p = primes[n - 1], pn = primes[n];
    const auto s = AndricaSample::make(n, p, pn);
    const bool exact_ok = andrica_half_exact(p, pn);
    ++exact_confirms;
    if ((s.sqrt_diff < 0.5) == exact_ok) ++exact_agreements;
    scan.note(n, s.sqrt_diff, 0.5, [&] {
      return std::pair(sqrt(BigFloat(pn)) - sqrt(BigFloat(p)),
                       BigFloat(1) / 2);
    });
  }
  scan.add_note("integer_form_confirms", std::to_string(exact_confirms));
  scan.add_note("integer_form_agreements", std::to_string(exact_agreements));
  return scan.finish(range.lo, range.hi);
}

CheckReport sqrt_gap_check(NRange range, std::span<const std::uint64_t> primes) {
  validate_prime_span(range, primes, "sqrt_gap");
  CheckReport rep;
  rep.check_id = "sqrt_gap";
  rep.lo = std::max(range.lo, kSqrtGapStart);
  rep.hi = range.hi;
  std::uint64_t viol_total = 0, info_total = 0;
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    const std::uint64_t p = primes[n - 1];
    const std::uint64_t gap = primes[n] - p;
    // g_n < sqrt(p_n), decided in integers as g^2 < p.
    const bool ok = static_cast<unsigned __int128>(gap) * gap < p;
    const double sq = std::sqrt(static_cast<double>(p));
    double margin = sq - static_cast<double>(gap);
    if ((margin > 0.0) != ok || std::abs(margin) < 1e-9 * std::max(sq, 1.0)) {
      const BigFloat hm = sqrt(BigFloat(p)) - gap;
      margin = hm.convert_to<double>();
      ++rep.recheck_count;
      if ((margin > 0.0) != ok && margin != 0.0)
        throw std::logic_error("sqrt_gap: precision fault");
    }
    const bool counted = n >= kSqrtGapStart;
    if (counted && (!rep.has_min_margin || margin < rep.min_margin)) {
      rep.has_min_margin = true;
      rep.min_margin = margin;
    }
    if (!ok) {
      BoundInstance inst{n, std::to_string(gap), fmt_sig20(sq),
                         fmt_sig20(margin)};
      if (counted)
        push_instance(rep.violations, viol_total, std::move(inst));
      else
        push_instance(rep.informational, info_total, std::move(inst));
    }
  }
  rep.violation_count = viol_total;
  rep.informational_count = info_total;
  rep.passed = viol_total == 0;
  rep.notes.emplace_back("integer_decided", "true");
  return rep;
}

ThresholdResult find_sqrt_threshold(std::span<const std::uint64_t> primes) {
  if (primes.size() < 6)
    throw std::invalid_argument("prime table too short for threshold search");
  ThresholdResult res;
  res.check_id = "sqrt_threshold";
  res.reference.emplace_back("crossover_max", 57827);
  res.reference.emplace_back("index_max", 5858);
  std::uint64_t last_hold = 0, last_hold_index = 0;
  for (std::uint64_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    const double lp = std::log(static_cast<double>(p));
    if (std::sqrt(static_cast<double>(p)) <= 2.0 * lp * lp) {
      last_hold = p;
      last_hold_index = i + 1;
    }
  }
  if (last_hold == 0 || last_hold_index >= primes.size())
    return res;  // no crossover inside the table, or flip not witnessable
  res.crossover = last_hold;
  res.has_crossover_index = true;
  res.crossover_index = last_hold_index;
  auto witness = [&](std::uint64_t p) {
    const BigFloat s = sqrt(BigFloat(p));
    const BigFloat l = blog(p);
    const BigFloat r = 2 * l * l;
    return ThresholdWitness{p, decimal20(s), decimal20(r),
                            decimal20(BigFloat(r - s))};
  };
  res.holds_at = witness(last_hold);
  res.fails_at = witness(primes[last_hold_index]);
  const bool confirm = parse_double(res.holds_at.margin) >= 0 &&
                       parse_double(res.fails_at.margin) < 0;
  res.passed = confirm && res.crossover < 57827 && res.crossover_index <= 5858;
  return res;
}

ThresholdResult find_growth_threshold(std::uint64_t cap) {
  if (cap < 250) throw std::invalid_argument("threshold cap too small");
  ThresholdResult res;
  res.check_id = "oppermann_growth_threshold";
  res.reference.emplace_back("crossover", 240);
  std::uint64_t last_hold = 0;
  for (std::uint64_t a = 2; a <= cap; ++a) {
    const double la = std::log(static_cast<double>(a));
    if (static_cast<double>(a) < 8.0 * la * la) last_hold = a;
  }
  res.crossover = last_hold;
  auto witness = [&](std::uint64_t a) {
    const BigFloat l = blog(a);
    const BigFloat rhs = 8 * l * l;
    return ThresholdWitness{a, decimal20(BigFloat(a)), decimal20(rhs),
                            decimal20(BigFloat(rhs - a))};
  };
  if (last_hold >= 2) {
    res.holds_at = witness(last_hold);
    res.fails_at = witness(last_hold + 1);
    const bool confirm = parse_double(res.holds_at.margin) > 0 &&
                         parse_double(res.fails_at.margin) <= 0;
    res.passed = confirm && res.crossover == 240;
  }
  return res;
}

std::string witnesses_csv(const std::vector<IntervalResult>& rows) {
  std::string out = "a,lower_witness,upper_witness\n";
  for (const auto& r : rows) {
    out += std::to_string(r.a);
    out += ',';
    out += r.lower_witness ? std::to_string(*r.lower_witness) : "";
    out += ',';
    out += r.upper_witness ? std::to_string(*r.upper_witness) : "";
    out += '\n';
  }
  return out;
}

std::vector<IntervalResult> parse_witnesses_csv(const std::string& text) {
  std::vector<IntervalResult> out;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      if (line != "a,lower_witness,upper_witness")
        throw std::invalid_argument("unexpected CSV header: " + line);
      first = false;
      continue;
    }
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument("unexpected CSV row: " + line);
    IntervalResult r;
    r.a = std::stoull(line.substr(0, c1));
    const std::string lw = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string uw = line.substr(c2 + 1);
    if (!lw.empty()) r.lower_witness = std::stoull(lw);
    if (!uw.empty()) r.upper_witness = std::stoull(uw);
    out.push_back(r);
  }
  if (first) throw std::invalid_argument("CSV missing header");
  return out;
}

}  // namespace gapkit
