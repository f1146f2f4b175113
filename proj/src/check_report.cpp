#include "gapkit/check_report.hpp"

#include "gapkit/errors.hpp"

namespace gapkit {

namespace {

Json instances_json(const std::vector<BoundInstance>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json o;
    o["n"] = r.n;
    o["lhs"] = r.lhs;
    o["rhs"] = r.rhs;
    o["margin"] = r.margin;
    arr.push_back(std::move(o));
  }
  return arr;
}

std::vector<BoundInstance> instances_from_json(const Json& arr) {
  std::vector<BoundInstance> rows;
  for (const auto& o : arr) {
    rows.push_back(BoundInstance{o.at("n").get<std::uint64_t>(),
                                 o.at("lhs").get<std::string>(),
                                 o.at("rhs").get<std::string>(),
                                 o.at("margin").get<std::string>()});
  }
  return rows;
}

Json witness_json(const ThresholdWitness& w) {
  Json o;
  o["index"] = w.index;
  o["lhs"] = w.lhs;
  o["rhs"] = w.rhs;
  o["margin"] = w.margin;
  return o;
}

ThresholdWitness witness_from_json(const Json& o) {
  return ThresholdWitness{o.at("index").get<std::uint64_t>(),
                          o.at("lhs").get<std::string>(),
                          o.at("rhs").get<std::string>(),
                          o.at("margin").get<std::string>()};
}

}  // namespace

Json CheckReport::to_json() const {
  Json j;
  j["check_id"] = check_id;
  j["range"] = Json::array({lo, hi});
  j["passed"] = passed;
  j["violations"] = instances_json(violations);
  j["violation_count"] = violation_count;
  j["informational"] = instances_json(informational);
  j["informational_count"] = informational_count;
  if (has_min_margin)
    j["min_margin"] = fmt_sig20(min_margin);
  else
    j["min_margin"] = nullptr;
  j["recheck_count"] = recheck_count;
  Json notes_obj = Json::object();
  for (const auto& [k, v] : notes) notes_obj[k] = v;
  j["notes"] = std::move(notes_obj);
  return j;
}

CheckReport CheckReport::from_json(const Json& j) {
  CheckReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.lo = j.at("range").at(0).get<std::uint64_t>();
  r.hi = j.at("range").at(1).get<std::uint64_t>();
  r.passed = j.at("passed").get<bool>();
  r.violations = instances_from_json(j.at("violations"));
  r.violation_count = j.at("violation_count").get<std::uint64_t>();
  r.informational = instances_from_json(j.at("informational"));
  r.informational_count = j.at("informational_count").get<std::uint64_t>();
  if (j.at("min_margin").is_null()) {
    r.has_min_margin = false;
  } else {
    r.has_min_margin = true;
    r.min_margin = parse_double(j.at("min_margin").get<std::string>());
  }
  r.recheck_count = j.at("recheck_count").get<std::uint64_t>();
  for (const auto& [k, v] : j.at("notes").items())
    r.notes.emplace_back(k, v.get<std::string>());
  return r;
}

Json ThresholdResult::to_json() const {
  Json j;
  j["check_id"] = check_id;
  j["crossover"] = crossover;
  if (has_crossover_index)
    j["crossover_index"] = crossover_index;
  else
    j["crossover_index"] = nullptr;
  j["holds_at"] = witness_json(holds_at);
  j["fails_at"] = witness_json(fails_at);
  Json ref = Json::object();
  for (const auto& [k, v] : reference) ref[k] = v;
  j["reference"] = std::move(ref);
  j["passed"] = passed;
  j["recheck_digits"] = recheck_digits;
  return j;
}

ThresholdResult ThresholdResult::from_json(const Json& j) {
  ThresholdResult r;
  r.check_id = j.at("check_id").get<std::string>();
  r.crossover = j.at("crossover").get<std::uint64_t>();
  if (j.at("crossover_index").is_null()) {
    r.has_crossover_index = false;
  } else {
    r.has_crossover_index = true;
    r.crossover_index = j.at("crossover_index").get<std::uint64_t>();
  }
  r.holds_at = witness_from_json(j.at("holds_at"));
  r.fails_at = witness_from_json(j.at("fails_at"));
  for (const auto& [k, v] : j.at("reference").items())
    r.reference.emplace_back(k, v.get<std::uint64_t>());
  r.passed = j.at("passed").get<bool>();
  r.recheck_digits = j.at("recheck_digits").get<std::uint64_t>();
  return r;
}

void MarginScanner::note_exact(std::uint64_t index, const Rational& lhs,
                               const Rational& rhs) {
  const Rational margin = rhs - lhs;
  const double margin_d = margin.convert_to<double>();
  const bool counted = index >= claimed_lo_;
  if (counted) update_min(margin_d);
  if (margin <= 0) {
    record_failure(counted, BoundInstance{index, decimal20(lhs), decimal20(rhs),
                                          decimal20(margin)});
  }
}

void MarginScanner::add_note(const std::string& key, const std::string& value) {
  for (auto& [k, v] : notes_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  notes_.emplace_back(key, value);
}

void MarginScanner::record_failure(bool counted, BoundInstance inst) {
  auto& total = counted ? violation_total_ : informational_total_;
  auto& rows = counted ? violations_ : informational_;
  ++total;
  if (rows.size() < kMaxStoredInstances) rows.push_back(std::move(inst));
}

CheckReport MarginScanner::finish(std::uint64_t lo, std::uint64_t hi) const {
  CheckReport r;
  r.check_id = check_id_;
  r.lo = std::max(lo, claimed_lo_);
  r.hi = hi;
  r.violations = violations_;
  r.violation_count = violation_total_;
  r.informational = informational_;
  r.informational_count = informational_total_;
  r.passed = violation_total_ == 0;
  r.has_min_margin = has_min_;
  r.min_margin = min_margin_;
  r.recheck_count = recheck_count_;
  r.notes = notes_;
  return r;
}

Json MarginScanner::state_json() const {
  Json j;
  j["check_id"] = check_id_;
  j["claimed_lo"] = claimed_lo_;
  if (has_min_)
    j["min_margin"] = fmt_shortest(min_margin_);
  else
    j["min_margin"] = nullptr;
  j["recheck_count"] = recheck_count_;
  j["violations"] = instances_json(violations_);
  j["violation_total"] = violation_total_;
  j["informational"] = instances_json(informational_);
  j["informational_total"] = informational_total_;
  Json notes_obj = Json::object();
  for (const auto& [k, v] : notes_) notes_obj[k] = v;
  j["notes"] = std::move(notes_obj);
  return j;
}

void MarginScanner::restore_state(const Json& j) {
  if (j.at("check_id").get<std::string>() != check_id_)
    throw CheckpointError("scanner state is for a different check");
  claimed_lo_ = j.at("claimed_lo").get<std::uint64_t>();
  if (j.at("min_margin").is_null()) {
    has_min_ = false;
    min_margin_ = 0.0;
  } else {
    has_min_ = true;
    min_margin_ = parse_double(j.at("min_margin").get<std::string>());
  }
  recheck_count_ = j.at("recheck_count").get<std::uint64_t>();
  violations_ = instances_from_json(j.at("violations"));
  violation_total_ = j.at("violation_total").get<std::uint64_t>();
  informational_ = instances_from_json(j.at("informational"));
  informational_total_ = j.at("informational_total").get<std::uint64_t>();
  notes_.clear();
  for (const auto& [k, v] : j.at("notes").items())
    notes_.emplace_back(k, v.get<std::string>());
}

}  // namespace gapkit
