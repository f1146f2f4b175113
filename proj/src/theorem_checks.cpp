#include "gapkit/theorem_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace gapkit {

namespace {

BigFloat blog(std::uint64_t x) { return log(BigFloat(x)); }

bool in_range(const std::optional<NRange>& r, std::uint64_t n) {
  return r && n >= r->lo && n <= r->hi;
}

}  // namespace

AggregateHistory AggregateHistory::build(std::uint64_t n_max) {
  if (n_max < 2) throw std::invalid_argument("history needs n_max >= 2");
  AggregateHistory h;
  h.n_max_ = n_max;
  h.primes_.assign(n_max + 2, 0);
  {
    SieveConfig cfg;
    cfg.limit = prime_upper_bound(n_max + 1);
    for_each_prime(cfg, [&](PrimeIndexEntry e) {
      if (e.n <= n_max + 1) h.primes_[e.n] = e.p;
    });
  }
  if (h.primes_[n_max + 1] == 0)
    throw CapacityError("prime bound estimate too small for history");
  h.a_.assign(n_max + 1, Rational(0));
  h.sg_.assign(n_max + 1, Rational(0));
  h.sa_.assign(n_max + 1, Rational(0));
  h.e_.assign(n_max + 1, Rational(0));
  h.g_.assign(n_max + 1, Rational(0));
  for (std::uint64_t k = 1; k <= n_max; ++k)
    h.a_[k] = Rational(h.primes_[k + 1] - 2, k);
  for (std::uint64_t k = 2; k <= n_max; ++k) {
    h.sg_[k] = h.sg_[k - 1] + Rational(h.gap(k), k - 1);
    h.sa_[k] = h.sa_[k - 1] + h.a_[k] / (k - 1);
  }
  for (std::uint64_t j = 1; j <= n_max; ++j)
    h.e_[j] = h.sg_[j] - h.sa_[j] - h.a_[j];
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    h.g_[n] = Rational(h.gap(n), n * (n - 1)) - h.sa_[n] + h.sg_[n - 1] -
              Rational(h.primes_[n] - 2, n);
  }
  return h;
}

namespace {

struct EqualityReport {
  CheckReport rep;
  void check(std::uint64_t index, const Rational& lhs, const Rational& rhs,
             const char* tag) {
    if (lhs == rhs) return;
    rep.passed = false;
    ++rep.violation_count;
    if (rep.violations.size() < MarginScanner::kMaxStoredInstances)
      rep.violations.push_back(BoundInstance{index, decimal20(lhs),
                                             decimal20(rhs),
                                             decimal20(Rational(rhs - lhs))});
    bool noted = false;
    for (auto& [k, v] : rep.notes)
      if (k == "first_failed_identity") noted = true;
    if (!noted)
      rep.notes.emplace_back("first_failed_identity", tag);
  }
};

}  // namespace

CheckReport verify_identity_theorem1(std::uint64_t m, std::uint64_t n,
                                     const AggregateHistory& hist) {
  if (m < 2 || m > n || n > hist.n_max())
    throw std::invalid_argument("identity check needs 2 <= m <= n <= n_max");
  EqualityReport er;
  er.rep.check_id = "theorem1_identities";
  er.rep.lo = m;
  er.rep.hi = n;
  er.rep.has_min_margin = true;
  er.rep.min_margin = 0.0;

  auto sg = [&](std::uint64_t j) -> const Rational& {
    return hist.gap_weight_prefix(j);
  };
  auto sa = [&](std::uint64_t j) -> const Rational& {
    return hist.mean_weight_prefix(j);
  };
  const Rational pn_term(hist.prime(n) - 2, n);

  const Rational id1_lhs = sg(n) - sg(m - 1);
  const Rational id1_rhs =
      hist.mean(n) - hist.mean(m - 1) + (sa(n) - sa(m - 1));
  er.check(n, id1_lhs, id1_rhs, "sum_of_weighted_gaps");

  const Rational id2_lhs(hist.gap(n), n);
  const Rational id2_rhs = (sg(n) - sg(m - 1)) - (sa(n) - sa(m - 1)) -
                           pn_term + hist.mean(m - 1);
  er.check(n, id2_lhs, id2_rhs, "gap_over_n");

  const Rational id3_lhs(hist.gap(n), n * (n - 1));
  const Rational id3_rhs = (sa(n) - sa(m - 1)) - (sg(n - 1) - sg(m - 1)) +
                           pn_term - hist.mean(m - 1);
  er.check(n, id3_lhs, id3_rhs, "gap_over_n_n_minus_1");

  er.rep.notes.emplace_back("anchor_m", std::to_string(m));
  er.rep.notes.emplace_back("identities_checked", "3");
  return er.rep;
}

CheckReport verify_identity_matrix(std::uint64_t n_max,
                                   const AggregateHistory& hist) {
  if (n_max < 2 || n_max > hist.n_max())
    throw std::invalid_argument("identity matrix needs 2 <= n_max <= history");
  EqualityReport er;
  er.rep.check_id = "theorem1_identities";
  er.rep.lo = 2;
  er.rep.hi = n_max;
  er.rep.has_min_margin = true;
  er.rep.min_margin = 0.0;
  std::uint64_t pairs = 0;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const Rational& en = hist.residual(n);
    const Rational& gn = hist.third_residual(n);
    for (std::uint64_t m = 2; m <= n; ++m) {
      const Rational& em = hist.residual(m - 1);
      // Identities (i) and (ii) both reduce to E(n) == E(m-1); (iii) to
      // G(n) == E(m-1).
      er.check(n, en, em, "prefix_residual");
      er.check(n, gn, em, "third_identity_residual");
      ++pairs;
    }
  }
  er.rep.notes.emplace_back("pairs_checked", std::to_string(pairs));
  er.rep.notes.emplace_back("identities_per_pair", "3");
  return er.rep;
}

Rational tail_value(std::uint64_t n, const AggregateHistory& hist,
                    std::uint64_t m) {
  if (m < 2 || m > n || n > hist.n_max())
    throw std::invalid_argument("tail value needs 2 <= m <= n <= n_max");
  return (hist.mean_weight_prefix(n) - hist.mean_weight_prefix(m - 1)) +
         Rational(hist.prime(n) - 2, n) - hist.mean(m - 1);
}

ConstantAudit audit_constants() {
  static constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13};
  ConstantAudit a;
  a.sum = 0;
  for (std::uint64_t k = 2; k <= 5; ++k) {
    const Rational mean_k(kPrimes[k] - 2, k);  // kPrimes[k] is p_{k+1}
    const Rational term = mean_k / (k - 1);
    a.terms.push_back(term);
    a.sum += term;
  }
  a.lemma_derived = a.sum - 3;
  a.lemma_stated = Rational(-11, 30);
  a.theorem_derived = a.sum - 1;
  a.theorem_stated = Rational(49, 30);
  a.lemma_matches = a.lemma_derived == a.lemma_stated;
  a.theorem_matches = a.theorem_derived == a.theorem_stated;
  return a;
}

Json ConstantAudit::to_json() const {
  Json j;
  j["check_id"] = "constant_audit";
  Json terms_arr = Json::array();
  for (const auto& t : terms) terms_arr.push_back(rational_str(t));
  j["terms"] = std::move(terms_arr);
  j["sum"] = rational_str(sum);
  Json lemma;
  lemma["derived"] = rational_str(lemma_derived);
  lemma["stated"] = rational_str(lemma_stated);
  lemma["matches"] = lemma_matches;
  j["lemma_chain"] = std::move(lemma);
  Json theorem;
  theorem["derived"] = rational_str(theorem_derived);
  theorem["stated"] = rational_str(theorem_stated);
  theorem["matches"] = theorem_matches;
  j["theorem_chain"] = std::move(theorem);
  j["passed"] = true;
  return j;
}

ConstantAudit ConstantAudit::from_json(const Json& j) {
  ConstantAudit a;
  for (const auto& t : j.at("terms"))
    a.terms.push_back(parse_rational(t.get<std::string>()));
  a.sum = parse_rational(j.at("sum").get<std::string>());
  a.lemma_derived =
      parse_rational(j.at("lemma_chain").at("derived").get<std::string>());
  a.lemma_stated =
      parse_rational(j.at("lemma_chain").at("stated").get<std::string>());
  a.lemma_matches = j.at("lemma_chain").at("matches").get<bool>();
  a.theorem_derived =
      parse_rational(j.at("theorem_chain").at("derived").get<std::string>());
  a.theorem_stated =
      parse_rational(j.at("theorem_chain").at("stated").get<std::string>());
  a.theorem_matches = j.at("theorem_chain").at("matches").get<bool>();
  return a;
}

ThresholdResult check_loglog_threshold(std::uint64_t cap) {
  if (cap < 6) throw std::invalid_argument("threshold cap too small");
  ThresholdResult res;
  res.check_id = "loglog_threshold";
  res.reference.emplace_back("crossover", 5);
  // Predicate over n >= 3: log(n-1) < log(log(n-1)) + 1.11.
  std::uint64_t last_hold = 0;
  for (std::uint64_t n = 3; n <= cap; ++n) {
    const double l = std::log(static_cast<double>(n - 1));
    if (l < std::log(l) + 1.11) last_hold = n;
  }
  res.crossover = last_hold;
  auto witness = [&](std::uint64_t n) {
    const BigFloat l = blog(n - 1);
    const BigFloat rhs = log(l) + BigFloat(111) / 100;
    return ThresholdWitness{n, decimal20(l), decimal20(rhs),
                            decimal20(BigFloat(rhs - l))};
  };
  if (last_hold >= 3) {
    res.holds_at = witness(last_hold);
    res.fails_at = witness(last_hold + 1);
    const bool confirm = parse_double(res.holds_at.margin) > 0 &&
                         parse_double(res.fails_at.margin) <= 0;
    res.passed = confirm && res.crossover == 5;
  }
  return res;
}

CheckReport check_corollary_first_occurrence(
    const std::vector<FirstOccurrence>& table) {
  MarginScanner scan("corollary_first_occurrence", kGapBoundStart);
  std::uint64_t lo = kToStreamEnd, hi = 0;
  for (const auto& fo : table) {
    lo = std::min(lo, fo.n);
    hi = std::max(hi, fo.n);
    // e^sqrt(g/2) < p_n checked in log form.
    const double lhs = std::sqrt(static_cast<double>(fo.gap) / 2.0);
    const double rhs = std::log(static_cast<double>(fo.p));
    scan.note(fo.n, lhs, rhs, [&] {
      return std::pair(sqrt(BigFloat(fo.gap) / 2), blog(fo.p));
    });
  }
  scan.add_note("log_form", "true");
  scan.add_note("table_size", std::to_string(table.size()));
  if (table.empty()) {
    lo = 0;
    hi = 0;
  }
  return scan.finish(lo, hi);
}

namespace {

struct DriverCheck {
  NRange range;
  MarginScanner scanner;
  bool to_stream_end = false;
  DriverCheck(const NRange& r, const char* id, std::uint64_t claimed_lo)
      : range(r), scanner(id, claimed_lo), to_stream_end(r.hi == kToStreamEnd) {}
  CheckReport finish(std::uint64_t last_n) {
    return scanner.finish(range.lo, std::min(range.hi, last_n));
  }
};

}  // namespace

BoundsResult run_bounds_scan(const BoundsRequest& req) {
  std::uint64_t max_bounded_n = 0;
  bool any_range = false, any_stream_end = false;
  auto widen = [&](const std::optional<NRange>& r, const char* what) {
    if (!r) return;
    if (r->lo < 1 || r->lo > r->hi)
      throw std::invalid_argument(std::string(what) + ": bad index range");
    any_range = true;
    if (r->hi == kToStreamEnd)
      any_stream_end = true;
    else
      max_bounded_n = std::max(max_bounded_n, r->hi);
  };
  widen(req.mean_bound, "mean_bound");
  widen(req.rosser_upper, "rosser_upper");
  widen(req.rosser_lower, "rosser_lower");
  widen(req.b_lower, "b_lower_bound");
  widen(req.b_upper, "b_upper_bound");
  widen(req.lemma_b, "lemma_b_inequality");
  widen(req.gap_bound, "gap_bound");
  widen(req.max_gap_corollary, "corollary_max_gap");
  widen(req.cramer_observation, "cramer_observation");

  std::uint64_t limit = req.sieve_limit;
  if (limit == 0) {
    if (!any_range && !req.first_occurrence_corollary && !req.collect_records)
      throw std::invalid_argument("bounds scan has nothing to do");
    if (any_stream_end || !any_range)
      throw std::invalid_argument(
          "open-ended scans need an explicit sieve limit");
    limit = prime_upper_bound(max_bounded_n + 1);
  }
  SieveConfig cfg;
  cfg.limit = limit;
  cfg.segment_size = req.segment_size;
  cfg.parallel_segments = req.threads;

  std::optional<DriverCheck> mean_c, ru_c, rl_c, bl_c, bu_c, lem_c, gap_c,
      mg_c, cr_c;
  if (req.mean_bound)
    mean_c.emplace(*req.mean_bound, "mean_bound", kMeanBoundStart);
  if (req.rosser_upper)
    ru_c.emplace(*req.rosser_upper, "rosser_upper", kRosserUpperStart);
  if (req.rosser_lower)
    rl_c.emplace(*req.rosser_lower, "rosser_lower", kRosserLowerStart);
  if (req.b_lower) bl_c.emplace(*req.b_lower, "b_lower_bound", kBLowerStart);
  if (req.b_upper) bu_c.emplace(*req.b_upper, "b_upper_bound", kBUpperStart);
  if (req.lemma_b)
    lem_c.emplace(*req.lemma_b, "lemma_b_inequality", kLemmaBStart);
  if (req.gap_bound) gap_c.emplace(*req.gap_bound, "gap_bound", kGapBoundStart);
  if (req.max_gap_corollary)
    mg_c.emplace(*req.max_gap_corollary, "corollary_max_gap",
                 kMaxGapCorollaryStart);
  if (req.cramer_observation)
    cr_c.emplace(*req.cramer_observation, "cramer_observation",
                 kCramerObservationStart);

  const bool need_records = req.collect_records || mg_c.has_value();
  const bool need_firsts = req.first_occurrence_corollary;
  const bool need_b = bl_c || bu_c || lem_c;

  RunningAggregate agg(req.exact_until);
  RecordTracker records;
  FirstOccurrenceTracker firsts;
  Rational sa_exact(0);  // sum A_k/(k-1), maintained while exact mode holds
  std::uint64_t b_identity_checks = 0, b_identity_hits = 0;
  std::uint64_t lemma_exact = 0, lemma_float_agree = 0, lemma_form_agree = 0;
  double cramer_max = 0.0;
  std::uint64_t cramer_max_n = 0;
  std::uint64_t last_n = 0;

  for_each_gap(cfg, [&](const GapSample& s) {
    agg.apply(s);
    const std::uint64_t n = s.n;
    last_n = n;
    if (need_records) records.push(s);
    if (need_firsts) firsts.push(s);

    double lp = 0.0;
    bool lp_ready = false;
    auto logp = [&] {
      if (!lp_ready) {
        lp = std::log(static_cast<double>(s.p));
        lp_ready = true;
      }
      return lp;
    };
    const double gd = static_cast<double>(s.gap);

    if (need_b && agg.exact_available() && n >= 2) {
      sa_exact += agg.mean_gap() / (n - 1);
      ++b_identity_checks;
      if (agg.weighted_sum_exact() == sa_exact + agg.mean_gap() - 1)
        ++b_identity_hits;
    }

    if (in_range(req.gap_bound, n)) {
      const double rhs = 2.0 * logp() * logp();
      gap_c->scanner.note(n, gd, rhs, [&] {
        const BigFloat l = blog(s.p);
        return std::pair(BigFloat(s.gap), 2 * l * l);
      });
    }
    if (in_range(req.cramer_observation, n)) {
      const double rhs = logp() * logp();
      cr_c->scanner.note(n, gd, rhs, [&] {
        const BigFloat l = blog(s.p);
        return std::pair(BigFloat(s.gap), l * l);
      });
      if (n >= kCramerObservationStart) {
        const double ratio = gd / (logp() * logp());
        if (ratio > cramer_max) {
          cramer_max = ratio;
          cramer_max_n = n;
        }
      }
    }
    if (in_range(req.max_gap_corollary, n)) {
      const double rhs = 2.0 * logp() * logp();
      const std::uint64_t best = records.best_gap();
      mg_c->scanner.note(n, static_cast<double>(best), rhs, [&] {
        const BigFloat l = blog(s.p);
        return std::pair(BigFloat(best), 2 * l * l);
      });
    }
    if (in_range(req.mean_bound, n) && n >= 2) {
      const double lhs =
          static_cast<double>(s.p_next - 2) / static_cast<double>(n);
      const double rhs = 2.0 * std::log(static_cast<double>(n - 1));
      mean_c->scanner.note(n, lhs, rhs, [&] {
        return std::pair(BigFloat(s.p_next - 2) / n, 2 * blog(n - 1));
      });
    }
    if (in_range(req.rosser_upper, n) && n >= 2) {
      const double lk = std::log(static_cast<double>(n));
      const double rhs = static_cast<double>(n) * (lk + std::log(lk));
      ru_c->scanner.note(n, static_cast<double>(s.p), rhs, [&] {
        const BigFloat l = blog(n);
        return std::pair(BigFloat(s.p), BigFloat(n) * (l + log(l)));
      });
    }
    if (in_range(req.rosser_lower, n)) {
      const double lhs =
          static_cast<double>(n) * std::log(static_cast<double>(n));
      rl_c->scanner.note(n, lhs, static_cast<double>(s.p), [&] {
        return std::pair(BigFloat(n) * blog(n), BigFloat(s.p));
      });
    }
    if (in_range(req.b_lower, n) && n >= 2) {
      const double l1 = std::log(static_cast<double>(n - 1));
      const double l5 = std::log(5.0);
      const double lhs = 0.5 * (l1 * l1 - l5 * l5) +
                         std::log(static_cast<double>(n)) - 11.0 / 30.0;
      bl_c->scanner.note(n, lhs, agg.weighted_sum(), [&] {
        const BigFloat h1 = blog(n - 1), h5 = blog(5);
        const BigFloat hl =
            (h1 * h1 - h5 * h5) / 2 + blog(n) - BigFloat(11) / 30;
        BigFloat hr = agg.exact_available()
                          ? BigFloat(agg.weighted_sum_exact())
                          : BigFloat(agg.weighted_sum()) -
                                BigFloat(agg.weighted_sum_error_bound());
        return std::pair(hl, hr);
      });
    }
    if (in_range(req.b_upper, n) && n >= 2) {
      const double l1 = std::log(static_cast<double>(n - 1));
      const double l4 = std::log(4.0);
      const double rhs = 49.0 / 30.0 + l1 * l1 - l4 * l4 + 2.0 * l1;
      bu_c->scanner.note(n, agg.prev_weighted_sum(), rhs, [&] {
        const BigFloat h1 = blog(n - 1), h4 = blog(4);
        const BigFloat hr =
            BigFloat(49) / 30 + h1 * h1 - h4 * h4 + 2 * h1;
        BigFloat hl = agg.exact_available()
                          ? BigFloat(agg.prev_weighted_sum_exact())
                          : BigFloat(agg.prev_weighted_sum()) +
                                BigFloat(agg.weighted_sum_error_bound());
        return std::pair(hl, hr);
      });
    }
    if (in_range(req.lemma_b, n) && n >= 3) {
      if (agg.exact_available()) {
        const Rational& b_prev = agg.prev_weighted_sum_exact();
        const Rational lhs =
            Rational(s.gap, n) + Rational(4) * b_prev / (n * (n - 2));
        const Rational rhs = Rational(2) * b_prev / (n - 2);
        lem_c->scanner.note_exact(n, lhs, rhs);
        ++lemma_exact;
        const bool exact_holds = lhs < rhs;
        const bool simplified_holds = Rational(s.gap) < 2 * b_prev;
        if (exact_holds == simplified_holds) ++lemma_form_agree;
        const double bp = agg.prev_weighted_sum();
        const double fl = gd / static_cast<double>(n) +
                          4.0 * bp / static_cast<double>(n * (n - 2));
        const double fr = 2.0 * bp / static_cast<double>(n - 2);
        if ((fl < fr) == exact_holds) ++lemma_float_agree;
      } else {
        const double bp = agg.prev_weighted_sum();
        const double lhs = gd / static_cast<double>(n) +
                           4.0 * bp / static_cast<double>(n * (n - 2));
        const double rhs = 2.0 * bp / static_cast<double>(n - 2);
        lem_c->scanner.note(n, lhs, rhs, [&] {
          const BigFloat err(agg.weighted_sum_error_bound());
          const BigFloat bl = BigFloat(bp) - err, bh = BigFloat(bp) + err;
          const BigFloat hl =
              BigFloat(s.gap) / n + 4 * bh / BigFloat(n * (n - 2));
          const BigFloat hr = 2 * bl / BigFloat(n - 2);
          return std::pair(hl, hr);
        });
      }
    }
  });

  auto require_reached = [&](const std::optional<DriverCheck>& c,
                             const char* what) {
    if (!c) return;
    const std::uint64_t need = c->to_stream_end ? c->range.lo : c->range.hi;
    if (last_n < need)
      throw CapacityError(std::string(what) +
                          ": sieve limit too small for requested range");
  };
  require_reached(mean_c, "mean_bound");
  require_reached(ru_c, "rosser_upper");
  require_reached(rl_c, "rosser_lower");
  require_reached(bl_c, "b_lower_bound");
  require_reached(bu_c, "b_upper_bound");
  require_reached(lem_c, "lemma_b_inequality");
  require_reached(gap_c, "gap_bound");
  require_reached(mg_c, "corollary_max_gap");
  require_reached(cr_c, "cramer_observation");

  if (need_b) {
    const std::string checks = std::to_string(b_identity_checks);
    const std::string hits = std::to_string(b_identity_hits);
    for (auto* c : {&bl_c, &bu_c, &lem_c}) {
      if (!c->has_value()) continue;
      (*c)->scanner.add_note("b_identity_cross_checks", checks);
      (*c)->scanner.add_note("b_identity_matches", hits);
    }
  }
  if (lem_c) {
    lem_c->scanner.add_note("exact_instances", std::to_string(lemma_exact));
    lem_c->scanner.add_note("float_agreements",
                            std::to_string(lemma_float_agree));
    lem_c->scanner.add_note("stated_vs_simplified_agreements",
                            std::to_string(lemma_form_agree));
  }
  if (cr_c) {
    cr_c->scanner.add_note("max_ratio", fmt_sig20(cramer_max));
    cr_c->scanner.add_note("max_ratio_n", std::to_string(cramer_max_n));
  }

  BoundsResult out;
  for (auto* c : {&mean_c, &ru_c, &rl_c, &bl_c, &bu_c, &lem_c, &gap_c, &mg_c,
                  &cr_c}) {
    if (c->has_value()) out.reports.push_back((*c)->finish(last_n));
  }
  if (req.first_occurrence_corollary) {
    out.first_occurrences = firsts.sorted_by_gap();
    out.reports.push_back(
        check_corollary_first_occurrence(out.first_occurrences));
  }
  if (req.collect_records) out.records = records.records();
  return out;
}

CheckReport check_mean_bound(NRange range) {
  BoundsRequest req;
  req.mean_bound = range;
  return std::move(run_bounds_scan(req).reports.at(0));
}

RosserReports check_rosser_bounds(NRange range) {
  BoundsRequest req;
  req.rosser_upper = range;
  req.rosser_lower = range;
  auto result = run_bounds_scan(req);
  return RosserReports{std::move(result.reports.at(0)),
                       std::move(result.reports.at(1))};
}

CheckReport check_b_lower_bound(NRange range, std::uint64_t exact_until) {
  BoundsRequest req;
  req.b_lower = range;
  req.exact_until = exact_until;
  return std::move(run_bounds_scan(req).reports.at(0));
}

CheckReport check_b_upper_bound(NRange range, std::uint64_t exact_until) {
  BoundsRequest req;
  req.b_upper = range;
  req.exact_until = exact_until;
  return std::move(run_bounds_scan(req).reports.at(0));
}

CheckReport check_lemma_b_inequality(NRange range, std::uint64_t exact_until) {
  BoundsRequest req;
  req.lemma_b = range;
  req.exact_until = exact_until;
  return std::move(run_bounds_scan(req).reports.at(0));
}

CheckReport check_gap_bound(NRange range) {
  BoundsRequest req;
  req.gap_bound = range;
  return std::move(run_bounds_scan(req).reports.at(0));
}

CheckReport check_corollary_max_gap(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("index must be >= 1");
  BoundsRequest req;
  req.max_gap_corollary = NRange{n, n};
  return std::move(run_bounds_scan(req).reports.at(0));
}

}  // namespace gapkit
