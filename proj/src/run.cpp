#include "gapkit/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gapkit/checkpoint.hpp"
#include "gapkit/gap_stats.hpp"
#include "gapkit/interval_checks.hpp"
#include "gapkit/prime_engine.hpp"
#include "gapkit/theorem_checks.hpp"

namespace gapkit {

namespace {

namespace fs = std::filesystem;

struct Halted {};  // raised after --halt-after-checkpoints fires

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kJson:
      return "json";
    default:
      return "both";
  }
}

OutputFormat format_from_name(const std::string& s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  if (s == "both") return OutputFormat::kBoth;
  throw std::invalid_argument("unknown format: " + s);
}

struct Outputs {
  std::string dir;
  OutputFormat format = OutputFormat::kBoth;

  bool want_json() const { return format != OutputFormat::kCsv; }
  bool want_csv() const { return format != OutputFormat::kJson; }

  void prepare() const {
    fs::create_directories(dir);
    if (want_json()) fs::create_directories(dir + "/checks");
  }
  void write_check(const Json& j, const std::string& name) const {
    if (want_json())
      write_text_file(dir + "/checks/" + name + ".json", j.dump(2) + "\n");
  }
  void write_csv(const std::string& content, const std::string& name) const {
    if (want_csv()) write_text_file(dir + "/" + name + ".csv", content);
  }
};

int exit_from_reports(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return kExitViolations;
  return kExitPassed;
}

std::uint64_t default_limit(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::kOppermann:
      return 100'000;
    case Subcommand::kBounds:
      return 1'000'000;
    default:
      return 100'000'000;
  }
}

Json config_echo(const RunConfig& cfg, Subcommand cmd, std::uint64_t limit) {
  Json j;
  j["subcommand"] = subcommand_name(cmd);
  j["limit"] = limit;
  j["segment_size"] = cfg.segment_size;
  j["threads"] = cfg.threads;
  j["exact_until"] = cfg.exact_until;
  j["checkpoint_every"] = cfg.checkpoint_every;
  j["format"] = format_name(cfg.format);
  return j;
}

RunConfig config_from_echo(const Json& j, const std::string& output_dir) {
  RunConfig cfg;
  cfg.limit = j.at("limit").get<std::uint64_t>();
  cfg.segment_size = j.at("segment_size").get<std::uint64_t>();
  cfg.threads = j.at("threads").get<unsigned>();
  cfg.exact_until = j.at("exact_until").get<std::uint64_t>();
  cfg.checkpoint_every = j.at("checkpoint_every").get<std::uint64_t>();
  cfg.format = format_from_name(j.at("format").get<std::string>());
  cfg.output_dir = output_dir;
  return cfg;
}

// ---------------------------------------------------------------------------
// scan / records

struct ScanMachine {
  bool enable_checks = true;
  std::uint64_t exact_until = 20000;

  RunningAggregate agg{20000};
  RecordTracker records;
  FirstOccurrenceTracker firsts;
  MarginScanner gap_scan{"gap_bound", kGapBoundStart};
  MarginScanner mg_scan{"corollary_max_gap", kMaxGapCorollaryStart};
  MarginScanner cr_scan{"cramer_observation", kCramerObservationStart};
  double cramer_max = 0.0;
  std::uint64_t cramer_max_n = 0;
  std::uint64_t stream_n = 0;  // index of prev_p
  std::uint64_t prev_p = 0;

  explicit ScanMachine(bool checks, std::uint64_t exact)
      : enable_checks(checks), exact_until(exact), agg(exact) {}

  void on_prime(std::uint64_t v) {
    if (stream_n == 0) {
      stream_n = 1;
      prev_p = v;
      return;
    }
    const GapSample s{stream_n, prev_p, v, v - prev_p};
    agg.apply(s);
    records.push(s);
    firsts.push(s);
    if (enable_checks) note_checks(s);
    ++stream_n;
    prev_p = v;
  }

  void note_checks(const GapSample& s) {
    const std::uint64_t n = s.n;
    const double lp = std::log(static_cast<double>(s.p));
    const double gd = static_cast<double>(s.gap);
    gap_scan.note(n, gd, 2.0 * lp * lp, [&] {
      const BigFloat l = log(BigFloat(s.p));
      return std::pair(BigFloat(s.gap), 2 * l * l);
    });
    const std::uint64_t best = records.best_gap();
    mg_scan.note(n, static_cast<double>(best), 2.0 * lp * lp, [&] {
      const BigFloat l = log(BigFloat(s.p));
      return std::pair(BigFloat(best), 2 * l * l);
    });
    cr_scan.note(n, gd, lp * lp, [&] {
      const BigFloat l = log(BigFloat(s.p));
      return std::pair(BigFloat(s.gap), l * l);
    });
    if (n >= kCramerObservationStart) {
      const double ratio = gd / (lp * lp);
      if (ratio > cramer_max) {
        cramer_max = ratio;
        cramer_max_n = n;
      }
    }
  }

  Json state_json() const {
    Json j;
    j["stream_n"] = stream_n;
    j["prev_p"] = prev_p;
    Json a;
    a["n"] = agg.n();
    a["p_next"] = agg.p_next();
    a["last_gap"] = agg.last_gap();
    a["exact_on"] = agg.exact_available();
    if (agg.exact_available()) {
      a["b"] = rational_str(agg.weighted_sum_exact());
      a["b_prev"] = rational_str(agg.prev_weighted_sum_exact());
    } else {
      a["b"] = nullptr;
      a["b_prev"] = nullptr;
    }
    a["bf_sum"] = fmt_shortest(agg.float_state().raw_sum());
    a["bf_comp"] = fmt_shortest(agg.float_state().raw_comp());
    a["bf_abs"] = fmt_shortest(agg.float_state().abs_sum());
    a["bf_prev"] = fmt_shortest(agg.prev_weighted_sum());
    j["aggregate"] = std::move(a);
    Json recs = Json::array();
    for (const auto& r : records.records())
      recs.push_back(Json::array({r.n, r.p, r.gap}));
    j["records"] = std::move(recs);
    Json firsts_arr = Json::array();
    for (const auto& fo : firsts.sorted_by_gap())
      firsts_arr.push_back(Json::array({fo.gap, fo.n, fo.p}));
    j["first_occurrences"] = std::move(firsts_arr);
    j["cramer_max"] = fmt_shortest(cramer_max);
    j["cramer_max_n"] = cramer_max_n;
    if (enable_checks) {
      Json sc;
      sc["gap_bound"] = gap_scan.state_json();
      sc["corollary_max_gap"] = mg_scan.state_json();
      sc["cramer_observation"] = cr_scan.state_json();
      j["scanners"] = std::move(sc);
    }
    return j;
  }

  void restore(const Json& j) {
    stream_n = j.at("stream_n").get<std::uint64_t>();
    prev_p = j.at("prev_p").get<std::uint64_t>();
    const Json& a = j.at("aggregate");
    const bool exact_on = a.at("exact_on").get<bool>();
    CompensatedSum bf;
    bf.restore(parse_double(a.at("bf_sum").get<std::string>()),
               parse_double(a.at("bf_comp").get<std::string>()),
               parse_double(a.at("bf_abs").get<std::string>()));
    agg.restore(a.at("n").get<std::uint64_t>(),
                a.at("p_next").get<std::uint64_t>(),
                a.at("last_gap").get<std::uint64_t>(), exact_on,
                exact_on ? parse_rational(a.at("b").get<std::string>())
                         : Rational(0),
                exact_on ? parse_rational(a.at("b_prev").get<std::string>())
                         : Rational(0),
                bf, parse_double(a.at("bf_prev").get<std::string>()));
    std::vector<RecordEntry> recs;
    for (const auto& row : j.at("records")) {
      const GapSample s{row.at(0).get<std::uint64_t>(),
                        row.at(1).get<std::uint64_t>(),
                        row.at(1).get<std::uint64_t>() +
                            row.at(2).get<std::uint64_t>(),
                        row.at(2).get<std::uint64_t>()};
      const double lp = std::log(static_cast<double>(s.p));
      recs.push_back(RecordEntry{s.n, s.p, s.gap,
                                 static_cast<double>(s.gap) / lp,
                                 static_cast<double>(s.gap) / (lp * lp)});
    }
    records.restore(std::move(recs));
    std::vector<FirstOccurrence> fos;
    for (const auto& row : j.at("first_occurrences"))
      fos.push_back(FirstOccurrence{row.at(0).get<std::uint64_t>(),
                                    row.at(1).get<std::uint64_t>(),
                                    row.at(2).get<std::uint64_t>()});
    firsts.restore(fos);
    cramer_max = parse_double(j.at("cramer_max").get<std::string>());
    cramer_max_n = j.at("cramer_max_n").get<std::uint64_t>();
    if (enable_checks) {
      gap_scan.restore_state(j.at("scanners").at("gap_bound"));
      mg_scan.restore_state(j.at("scanners").at("corollary_max_gap"));
      cr_scan.restore_state(j.at("scanners").at("cramer_observation"));
    }
  }
};

int run_scan(const RunConfig& cfg, bool enable_checks,
             const Checkpoint* resume_from) {
  const Subcommand cmd =
      enable_checks ? Subcommand::kScan : Subcommand::kRecords;
  const std::uint64_t limit = cfg.limit ? cfg.limit : default_limit(cmd);
  SieveConfig sieve_cfg;
  sieve_cfg.limit = limit;
  sieve_cfg.segment_size = cfg.segment_size;
  sieve_cfg.parallel_segments = cfg.threads;
  sieve_cfg.validate();

  Outputs out{cfg.output_dir, cfg.format};
  out.prepare();
  const std::string checkpoint_path = cfg.output_dir + "/checkpoint.json";

  ScanMachine m(enable_checks, cfg.exact_until);
  std::uint64_t first_segment = 0;
  if (resume_from) {
    m.restore(resume_from->state);
    first_segment = resume_from->last_completed;
  } else {
    m.on_prime(2);
  }

  std::uint64_t segments_done = first_segment;
  std::uint64_t checkpoints_written = 0;
  const SegmentedSieve sieve(sieve_cfg);
  sieve.for_each_segment(
      [&](const Segment& seg) {
        std::uint64_t n_unused = 0;
        auto emit = [&](PrimeIndexEntry e) { m.on_prime(e.p); };
        detail::scan_segment_bits(seg, n_unused, emit);
        segments_done = seg.index + 1;
        if (cfg.checkpoint_every &&
            segments_done % cfg.checkpoint_every == 0 &&
            segments_done < sieve.segment_count()) {
          Checkpoint c;
          c.subcommand = subcommand_name(cmd);
          c.config = config_echo(cfg, cmd, limit);
          c.last_completed = segments_done;
          c.state = m.state_json();
          c.save(checkpoint_path);
          ++checkpoints_written;
          if (cfg.halt_after_checkpoints &&
              checkpoints_written >= cfg.halt_after_checkpoints)
            throw Halted{};
        }
      },
      first_segment);

  const std::uint64_t last_n = m.stream_n - 1;  // index of the last gap sample
  std::vector<CheckReport> reports;
  if (enable_checks) {
    m.gap_scan.add_note("final_n", std::to_string(last_n));
    m.gap_scan.add_note("weighted_sum", fmt_sig20(m.agg.weighted_sum()));
    m.gap_scan.add_note("weighted_sum_error_bound",
                        fmt_sig20(m.agg.weighted_sum_error_bound()));
    m.gap_scan.add_note("mean_gap", fmt_sig20(m.agg.mean_gap_d()));
    m.cr_scan.add_note("max_ratio", fmt_sig20(m.cramer_max));
    m.cr_scan.add_note("max_ratio_n", std::to_string(m.cramer_max_n));
    reports.push_back(m.gap_scan.finish(1, last_n));
    reports.push_back(m.mg_scan.finish(1, last_n));
    reports.push_back(m.cr_scan.finish(1, last_n));
    reports.push_back(
        check_corollary_first_occurrence(m.firsts.sorted_by_gap()));
    for (const auto& r : reports) out.write_check(r.to_json(), r.check_id);
  }
  out.write_csv(records_csv(m.records.records()), "records");
  out.write_csv(first_occurrence_csv(m.firsts.sorted_by_gap()),
                "first_occurrence");

  const int code = exit_from_reports(reports);
  if (cfg.checkpoint_every) {
    Checkpoint c;
    c.subcommand = subcommand_name(cmd);
    c.config = config_echo(cfg, cmd, limit);
    c.last_completed = sieve.segment_count();
    c.completed = true;
    c.exit_code = code;
    c.save(checkpoint_path);
  }
  return code;
}

// ---------------------------------------------------------------------------
// oppermann

struct OppermannMachine {
  CheckReport rep;
  std::vector<IntervalResult> witnesses;
  std::uint64_t next_a = 2;

  Json state_json() const {
    Json j;
    j["next_a"] = next_a;
    j["report"] = rep.to_json();
    Json rows = Json::array();
    for (const auto& w : witnesses)
      rows.push_back(Json::array({w.a, w.lower_witness.value_or(0),
                                  w.upper_witness.value_or(0)}));
    j["witnesses"] = std::move(rows);
    return j;
  }

  void restore(const Json& j) {
    next_a = j.at("next_a").get<std::uint64_t>();
    rep = CheckReport::from_json(j.at("report"));
    witnesses.clear();
    for (const auto& row : j.at("witnesses")) {
      IntervalResult r;
      r.a = row.at(0).get<std::uint64_t>();
      const std::uint64_t lw = row.at(1).get<std::uint64_t>();
      const std::uint64_t uw = row.at(2).get<std::uint64_t>();
      if (lw) r.lower_witness = lw;
      if (uw) r.upper_witness = uw;
      witnesses.push_back(r);
    }
  }
};

int run_oppermann(const RunConfig& cfg, const Checkpoint* resume_from) {
  const std::uint64_t a_max =
      cfg.limit ? cfg.limit : default_limit(Subcommand::kOppermann);
  if (a_max < 2) throw std::invalid_argument("oppermann needs limit >= 2");
  if (a_max > kMaxIntervalBase)
    throw CapacityError("interval base exceeds 64-bit witness range");

  Outputs out{cfg.output_dir, cfg.format};
  out.prepare();
  const std::string checkpoint_path = cfg.output_dir + "/checkpoint.json";

  OppermannMachine m;
  if (resume_from) {
    m.restore(resume_from->state);
  } else {
    m.rep.check_id = "oppermann";
    m.rep.lo = 2;
    m.rep.hi = a_max;
    m.witnesses.reserve(a_max - 1);
  }

  std::uint64_t blocks_done = resume_from ? resume_from->last_completed : 0;
  std::uint64_t checkpoints_written = 0;
  while (m.next_a <= a_max) {
    const std::uint64_t lo = m.next_a;
    const std::uint64_t hi = std::min(a_max, lo + kIntervalBlock - 1);
    for (std::uint64_t a = lo; a <= hi; ++a) {
      const IntervalResult r = oppermann_check(a);
      oppermann_fold(r, m.rep);
      m.witnesses.push_back(r);
    }
    m.next_a = hi + 1;
    ++blocks_done;
    if (cfg.checkpoint_every && blocks_done % cfg.checkpoint_every == 0 &&
        m.next_a <= a_max) {
      Checkpoint c;
      c.subcommand = "oppermann";
      c.config = config_echo(cfg, Subcommand::kOppermann, a_max);
      c.last_completed = blocks_done;
      c.state = m.state_json();
      c.save(checkpoint_path);
      ++checkpoints_written;
      if (cfg.halt_after_checkpoints &&
          checkpoints_written >= cfg.halt_after_checkpoints)
        throw Halted{};
    }
  }

  m.rep.passed = m.rep.violation_count == 0;
  m.rep.notes.clear();
  m.rep.notes.emplace_back("bases_checked", std::to_string(a_max - 1));
  const ThresholdResult growth = find_growth_threshold();
  out.write_check(m.rep.to_json(), "oppermann");
  out.write_check(growth.to_json(), "oppermann_growth_threshold");
  out.write_csv(witnesses_csv(m.witnesses), "witnesses");

  const int code =
      (m.rep.passed && growth.passed) ? kExitPassed : kExitViolations;
  if (cfg.checkpoint_every) {
    Checkpoint c;
    c.subcommand = "oppermann";
    c.config = config_echo(cfg, Subcommand::kOppermann, a_max);
    c.last_completed = blocks_done;
    c.completed = true;
    c.exit_code = code;
    c.save(checkpoint_path);
  }
  return code;
}

// ---------------------------------------------------------------------------
// one-shot subcommands

int run_identities(const RunConfig& cfg) {
  const std::uint64_t n_max = cfg.n_max ? cfg.n_max : 2000;
  Outputs out{cfg.output_dir, cfg.format};
  out.prepare();
  const AggregateHistory hist = AggregateHistory::build(n_max);
  CheckReport rep = verify_identity_matrix(n_max, hist);
  out.write_check(rep.to_json(), rep.check_id);
  return exit_from_reports({rep});
}

int run_bounds(const RunConfig& cfg, bool include_gap_chain) {
  const std::uint64_t limit =
      cfg.limit ? cfg.limit : default_limit(Subcommand::kBounds);
  Outputs out{cfg.output_dir, cfg.format};
  out.prepare();

  BoundsRequest req;
  req.mean_bound = NRange{2, kToStreamEnd};
  req.rosser_upper = NRange{2, kToStreamEnd};
  req.rosser_lower = NRange{1, kToStreamEnd};
  req.b_lower = NRange{2, kToStreamEnd};
  req.b_upper = NRange{2, kToStreamEnd};
  req.lemma_b = NRange{3, kToStreamEnd};
  if (include_gap_chain) {
    req.gap_bound = NRange{1, kToStreamEnd};
    req.max_gap_corollary = NRange{1, kToStreamEnd};
    req.first_occurrence_corollary = true;
  }
  req.exact_until = cfg.exact_until;
  req.sieve_limit = limit;
  req.segment_size = cfg.segment_size;
  req.threads = cfg.threads;

  BoundsResult result = run_bounds_scan(req);
  for (const auto& r : result.reports) out.write_check(r.to_json(), r.check_id);

  const ThresholdResult loglog = check_loglog_threshold();
  out.write_check(loglog.to_json(), "loglog_threshold");
  const ConstantAudit audit = audit_constants();
  out.write_check(audit.to_json(), "constant_audit");

  int code = exit_from_reports(result.reports);
  if (!loglog.passed) code = kExitViolations;
  return code;
}

int run_andrica(const RunConfig& cfg) {
  const std::uint64_t limit =
      cfg.limit ? cfg.limit : default_limit(Subcommand::kAndrica);
  Outputs out{cfg.output_dir, cfg.format};
  out.prepare();

  const std::vector<std::uint64_t> primes = prime_values_up_to(limit);
  if (primes.size() < 3)
    throw std::invalid_argument("andrica needs a larger sieve limit");
  const std::uint64_t hi = primes.size() - 1;  // last index with p_{n+1} known

  const CheckReport andrica = andrica_check(NRange{1, hi}, primes);
  const CheckReport sqrt_gap = sqrt_gap_check(NRange{1, hi}, primes);
  const ThresholdResult threshold = find_sqrt_threshold(primes);
  out.write_check(andrica.to_json(), "andrica");
  out.write_check(sqrt_gap.to_json(), "sqrt_gap");
  out.write_check(threshold.to_json(), "sqrt_threshold");

  int code = exit_from_reports({andrica, sqrt_gap});
  if (!threshold.passed) code = kExitViolations;
  return code;
}

int run_audit(const RunConfig& cfg) {
  Outputs out{cfg.output_dir, cfg.format};
  out.prepare();
  const ConstantAudit audit = audit_constants();
  out.write_check(audit.to_json(), "constant_audit");
  return kExitPassed;
}

int dispatch(const RunConfig& cfg) {
  switch (cfg.cmd) {
    case Subcommand::kScan:
      return run_scan(cfg, true, nullptr);
    case Subcommand::kRecords:
      return run_scan(cfg, false, nullptr);
    case Subcommand::kIdentities:
      return run_identities(cfg);
    case Subcommand::kBounds:
      return run_bounds(cfg, true);
    case Subcommand::kOppermann:
      return run_oppermann(cfg, nullptr);
    case Subcommand::kAndrica:
      return run_andrica(cfg);
    case Subcommand::kAudit:
      return run_audit(cfg);
    case Subcommand::kAll: {
      int worst = kExitPassed;
      auto fold = [&](int code) { worst = std::max(worst, code); };
      RunConfig sub = cfg;
      sub.checkpoint_every = 0;  // sub-suites share one directory
      sub.limit = 0;
      fold(run_audit(sub));
      fold(run_identities(sub));
      fold(run_bounds(sub, false));
      {
        RunConfig scan_cfg = sub;
        scan_cfg.limit = cfg.limit;
        fold(run_scan(scan_cfg, true, nullptr));
        fold(run_andrica(scan_cfg));
      }
      fold(run_oppermann(sub, nullptr));
      return worst;
    }
  }
  throw std::invalid_argument("unknown subcommand");
}

}  // namespace

const char* subcommand_name(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::kScan:
      return "scan";
    case Subcommand::kIdentities:
      return "identities";
    case Subcommand::kBounds:
      return "bounds";
    case Subcommand::kOppermann:
      return "oppermann";
    case Subcommand::kAndrica:
      return "andrica";
    case Subcommand::kRecords:
      return "records";
    case Subcommand::kAudit:
      return "audit";
    case Subcommand::kAll:
      return "all";
  }
  return "unknown";
}

int run(const RunConfig& cfg) {
  try {
    return dispatch(cfg);
  } catch (const Halted&) {
    std::fprintf(stderr, "halted after checkpoint (testing aid)\n");
    return kExitHalted;
  } catch (const CheckpointError& e) {
    std::fprintf(stderr, "checkpoint error: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
}

int resume(const std::string& checkpoint_path) {
  try {
    const Checkpoint c = Checkpoint::load(checkpoint_path);
    if (c.completed) {
      std::fprintf(stderr, "run already completed; nothing to resume\n");
      return c.exit_code;
    }
    const std::string dir =
        fs::path(checkpoint_path).parent_path().string();
    RunConfig cfg = config_from_echo(c.config, dir.empty() ? "." : dir);
    if (c.subcommand == "scan") {
      cfg.cmd = Subcommand::kScan;
      return run_scan(cfg, true, &c);
    }
    if (c.subcommand == "records") {
      cfg.cmd = Subcommand::kRecords;
      return run_scan(cfg, false, &c);
    }
    if (c.subcommand == "oppermann") {
      cfg.cmd = Subcommand::kOppermann;
      return run_oppermann(cfg, &c);
    }
    throw CheckpointError("checkpoint subcommand cannot be resumed: " +
                          c.subcommand);
  } catch (const Halted&) {
    std::fprintf(stderr, "halted after checkpoint (testing aid)\n");
    return kExitHalted;
  } catch (const CheckpointError& e) {
    std::fprintf(stderr, "checkpoint error: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
}

}  // namespace gapkit
