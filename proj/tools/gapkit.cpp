#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "gapkit/run.hpp"

namespace {

// Accepts plain integers and scientific notation ("1e8").
std::uint64_t parse_count(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE ||
      !std::isfinite(v) || v < 0.0 || v != std::floor(v) || v >= 1.8e19)
    throw CLI::ValidationError("--limit",
                               "expected a nonnegative integer: " + text);
  return static_cast<std::uint64_t>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gapkit: prime gap statistics and inequality check suites"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gapkit 1.0.0");

  gapkit::RunConfig cfg;
  const char* env_out = std::getenv("GAPKIT_OUT");
  cfg.output_dir = env_out ? env_out : "gapkit-out";

  std::string limit_text;
  std::string format_text = "both";
  std::string resume_path;

  auto add_common = [&](CLI::App* sub, bool has_limit, bool streaming) {
    if (has_limit)
      sub->add_option("--limit", limit_text,
                      "scan bound (accepts scientific notation, e.g. 1e8)");
    sub->add_option("--output-dir", cfg.output_dir, "artifact directory")
        ->capture_default_str();
    sub->add_option("--format", format_text, "csv, json, or both")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads, "parallel sieve segments")
        ->check(CLI::Range(1u, 256u));
    sub->add_option("--exact-until", cfg.exact_until,
                    "largest n kept in exact-rational mode");
    sub->add_option("--segment-size", cfg.segment_size,
                    "odd candidates per sieve segment");
    if (streaming) {
      sub->add_option("--checkpoint-every", cfg.checkpoint_every,
                      "write a checkpoint every N segments (0 = off)");
      sub->add_option("--halt-after-checkpoints", cfg.halt_after_checkpoints,
                      "stop after N checkpoints (testing aid)");
    }
  };

  CLI::App* scan = app.add_subcommand(
      "scan", "stream prime gaps; check the gap bound, records, ratios");
  add_common(scan, true, true);
  CLI::App* records = app.add_subcommand(
      "records", "emit maximal-gap and first-occurrence tables only");
  add_common(records, true, true);
  CLI::App* identities =
      app.add_subcommand("identities", "verify the exact telescoping identities");
  identities
      ->add_option("--n", cfg.n_max, "largest n in the identity matrix")
      ->capture_default_str();
  add_common(identities, false, false);
  CLI::App* bounds = app.add_subcommand(
      "bounds", "check the mean-gap, prime-size, and B-sum inequalities");
  add_common(bounds, true, false);
  CLI::App* oppermann = app.add_subcommand(
      "oppermann", "find primes in (a(a-1), a^2) and (a^2, a(a+1))");
  add_common(oppermann, true, true);
  CLI::App* andrica = app.add_subcommand(
      "andrica", "check sqrt(p_{n+1}) - sqrt(p_n) < 1/2 and g_n^2 < p_n");
  add_common(andrica, true, false);
  CLI::App* audit =
      app.add_subcommand("audit", "recompute the additive constant chain");
  add_common(audit, false, false);
  CLI::App* all = app.add_subcommand("all", "run every suite at default scale");
  all->add_option("--n", cfg.n_max, "largest n in the identity matrix")
      ->capture_default_str();
  add_common(all, true, false);

  CLI::App* resume_cmd = app.add_subcommand(
      "resume", "continue an interrupted run from its checkpoint");
  resume_cmd->add_option("checkpoint", resume_path, "path to checkpoint.json")
      ->required();

  try {
    app.parse(argc, argv);
    if (!limit_text.empty()) cfg.limit = parse_count(limit_text);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gapkit::kExitError;
  }

  if (format_text == "csv")
    cfg.format = gapkit::OutputFormat::kCsv;
  else if (format_text == "json")
    cfg.format = gapkit::OutputFormat::kJson;
  else
    cfg.format = gapkit::OutputFormat::kBoth;

  if (app.got_subcommand(resume_cmd)) return gapkit::resume(resume_path);
  if (app.got_subcommand(scan))
    cfg.cmd = gapkit::Subcommand::kScan;
  else if (app.got_subcommand(records))
    cfg.cmd = gapkit::Subcommand::kRecords;
  else if (app.got_subcommand(identities))
    cfg.cmd = gapkit::Subcommand::kIdentities;
  else if (app.got_subcommand(bounds))
    cfg.cmd = gapkit::Subcommand::kBounds;
  else if (app.got_subcommand(oppermann))
    cfg.cmd = gapkit::Subcommand::kOppermann;
  else if (app.got_subcommand(andrica))
    cfg.cmd = gapkit::Subcommand::kAndrica;
  else if (app.got_subcommand(audit))
    cfg.cmd = gapkit::Subcommand::kAudit;
  else
    cfg.cmd = gapkit::Subcommand::kAll;
  return gapkit::run(cfg);
}
