// ostmix: exact and Monte Carlo mixing analysis for the one-sided
// transposition shuffle on colored decks.
//
// Subcommands: curve, projection-check, sst, selftest. Every run is
// deterministic given its flags; files land in --out with the name
// pattern <cmd>_m<m>_n<n>_seed<seed>.<ext>.
//
// Exit codes: 0 all assertions passed, 1 a mathematical assertion failed,
// 2 capacity or configuration error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ostmix/exact.hpp"
#include "ostmix/group.hpp"
#include "ostmix/monte_carlo.hpp"
#include "ostmix/shuffle.hpp"
#include "selftest.hpp"

using nlohmann::json;
using namespace ostmix;

namespace {

// Fixed default seed so runs are reproducible out of the box.
constexpr std::uint64_t kDefaultSeed = 1729;

// The CLI admits smaller exact computations than the library cap (2^24):
// curve runs keep convolution-plan memory and per-step cost reasonable.
constexpr std::uint64_t kCliExactCap = std::uint64_t{1} << 20;

struct RunConfig {
  std::uint32_t m = 1;
  std::uint32_t n = 1;
  int t_max = 60;
  std::uint64_t trials = 100000;
  std::vector<double> cs;
  std::uint64_t seed = kDefaultSeed;
  std::string out = ".";
  std::string format = "csv";
  std::uint64_t cap = kCliExactCap;
  bool quick = false;
  bool trace = false;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::filesystem::path output_path(const RunConfig& cfg, const std::string& cmd) {
  const std::string ext = cfg.format == "json" ? "json" : "csv";
  return std::filesystem::path(cfg.out) /
         (cmd + "_m" + std::to_string(cfg.m) + "_n" + std::to_string(cfg.n) +
          "_seed" + std::to_string(cfg.seed) + "." + ext);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path.string());
  return out;
}

int cmd_curve(const RunConfig& cfg) {
  GroupParams params(cfg.m, cfg.n);
  DistanceCurve curve = distance_curve(params, cfg.t_max, cfg.cap);

  // The curve's defining inequalities are hard assertions.
  for (std::size_t t = 0; t < curve.times.size(); ++t) {
    if (curve.sep[t] < curve.tv[t]) {
      std::cerr << "assertion failed: sep < tv at t=" << curve.times[t] << "\n";
      return 1;
    }
    if (t > 0 && curve.tv[t] > curve.tv[t - 1] + 1e-12) {
      std::cerr << "assertion failed: tv increased at t=" << curve.times[t] << "\n";
      return 1;
    }
  }

  auto t_tv = mixing_time(curve, 0.25, Metric::tv);
  auto t_sep = mixing_time(curve, 0.25, Metric::sep);
  const double reference = double(cfg.n) * std::log(double(cfg.n));

  auto path = output_path(cfg, "curve");
  auto out = open_output(path);
  if (cfg.format == "json") {
    json summary;
    summary["m"] = cfg.m;
    summary["n"] = cfg.n;
    if (t_tv)
      summary["t_mix_quarter_tv"] = *t_tv;
    else
      summary["t_mix_quarter_tv"] = nullptr;
    if (t_sep)
      summary["t_mix_quarter_sep"] = *t_sep;
    else
      summary["t_mix_quarter_sep"] = nullptr;
    out << summary.dump(2) << "\n";
  } else {
    curve.write_csv(out);
  }

  auto show = [&](const char* name, const std::optional<int>& t) {
    if (t)
      std::cout << "t_mix(1/4) " << name << " = " << *t << "\n";
    else
      std::cout << "t_mix(1/4) " << name << " not reached within --t-max="
                << cfg.t_max << "\n";
  };
  show("tv", t_tv);
  show("sep", t_sep);
  std::cout << "n ln n = " << fmt17(reference) << "\n";
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_projection_check(const RunConfig& cfg) {
  GroupParams up(cfg.m, cfg.n);
  GroupParams down(1, cfg.n);
  ConvolutionPlan plan_up(ost_generators(up), cfg.cap);
  ConvolutionPlan plan_down(ost_generators(down), cfg.cap);
  DenseDistribution p_up = delta_at_identity(up, cfg.cap);
  DenseDistribution p_down = delta_at_identity(down, cfg.cap);

  std::vector<double> discrepancy;
  double worst = 0.0;
  for (int t = 1; t <= cfg.t_max; ++t) {
    p_up = plan_up.apply(p_up);
    p_down = plan_down.apply(p_down);
    DenseDistribution pushed = pushforward_projection(p_up);
    double max_diff = 0.0;
    for (std::uint64_t r = 0; r < p_down.size(); ++r)
      max_diff = std::max(max_diff,
                          std::abs(pushed.at(GroupIndex{r}) - p_down.at(GroupIndex{r})));
    discrepancy.push_back(max_diff);
    worst = std::max(worst, max_diff);
  }

  const bool pass = worst < 1e-10;
  auto path = output_path(cfg, "projection-check");
  auto out = open_output(path);
  if (cfg.format == "json") {
    json report;
    report["m"] = cfg.m;
    report["n"] = cfg.n;
    report["t_max"] = cfg.t_max;
    report["max_discrepancy"] = worst;
    report["pass"] = pass;
    out << report.dump(2) << "\n";
  } else {
    out << "t,max_fiber_discrepancy\n";
    for (std::size_t i = 0; i < discrepancy.size(); ++i)
      out << (i + 1) << "," << fmt17(discrepancy[i]) << "\n";
  }

  std::cout << "max fiber-sum discrepancy over t=1.." << cfg.t_max << ": "
            << fmt17(worst) << (pass ? " (pass)" : " (FAIL)") << "\n";
  std::cout << "wrote " << path.string() << "\n";
  return pass ? 0 : 1;
}

std::vector<TailEstimate> traced_tail_grid(const RunConfig& cfg, const GroupParams& params) {
  // Trace mode samples full (i, j, k) moves so each draw can be printed;
  // the first-draw sequence has the same law as the coupon-only path.
  auto gens = ost_generators(params);
  std::vector<int> thresholds;
  int t_cap = 1;
  for (double c : cfg.cs) {
    const double raw = std::ceil(params.n * std::log(double(params.n)) + c * params.n);
    if (raw >= double(std::numeric_limits<int>::max()))
      throw std::invalid_argument("sst threshold n ln n + c n exceeds the step limit");
    const int t = int(raw);
    thresholds.push_back(t);
    t_cap = std::max(t_cap, t);
  }
  std::vector<std::uint64_t> exceed(cfg.cs.size(), 0);
  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    std::cout << "# trial " << trial << "\n";
    Rng rng = make_trial_rng(cfg.seed, trial);
    std::vector<bool> seen(params.n, false);
    std::uint32_t remaining = params.n;
    int t_hit = -1;
    for (int t = 1; t <= t_cap; ++t) {
      StepDraw draw = sample_step(gens, rng);
      std::cout << to_string(draw.gen) << "\n";
      if (!seen[draw.first_draw - 1]) {
        seen[draw.first_draw - 1] = true;
        if (--remaining == 0) {
          t_hit = t;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i)
      if (t_hit < 0 || t_hit > thresholds[i]) ++exceed[i];
  }
  std::vector<TailEstimate> rows(cfg.cs.size());
  for (std::size_t i = 0; i < cfg.cs.size(); ++i) {
    rows[i].n = params.n;
    rows[i].c = cfg.cs[i];
    rows[i].t = thresholds[i];
    rows[i].trials = cfg.trials;
    rows[i].exceed = exceed[i];
    rows[i].p_hat = double(exceed[i]) / double(cfg.trials);
    rows[i].stderr_ = std::sqrt(rows[i].p_hat * (1.0 - rows[i].p_hat) / double(cfg.trials));
    rows[i].bound = std::exp(-cfg.cs[i]);
  }
  return rows;
}

int cmd_sst(const RunConfig& cfg) {
  GroupParams params(cfg.m, cfg.n);
  std::vector<TailEstimate> rows =
      cfg.trace ? traced_tail_grid(cfg, params)
                : sst_tail_grid(params, cfg.cs, cfg.trials, cfg.seed);

  bool violated = false;
  auto path = output_path(cfg, "sst");
  auto out = open_output(path);
  if (cfg.format == "json") {
    json array = json::array();
    for (const auto& r : rows) {
      json row;
      row["n"] = r.n;
      row["c"] = r.c;
      row["t"] = r.t;
      row["trials"] = r.trials;
      row["exceed"] = r.exceed;
      row["p_hat"] = r.p_hat;
      row["stderr"] = r.stderr_;
      row["bound_e_minus_c"] = r.bound;
      array.push_back(row);
    }
    out << array.dump(2) << "\n";
  } else {
    out << "n,c,t,trials,exceed,p_hat,stderr,bound_e_minus_c\n";
    for (const auto& r : rows)
      out << r.n << "," << fmt17(r.c) << "," << r.t << "," << r.trials << ","
          << r.exceed << "," << fmt17(r.p_hat) << "," << fmt17(r.stderr_) << ","
          << fmt17(r.bound) << "\n";
  }

  for (const auto& r : rows) {
    const bool bad = r.p_hat > r.bound + 4.0 * r.stderr_;
    violated = violated || bad;
    std::cout << "c=" << r.c << " t=" << r.t << " p_hat=" << fmt17(r.p_hat)
              << " bound=" << fmt17(r.bound) << (bad ? "  VIOLATION" : "") << "\n";
  }
  std::cout << "wrote " << path.string() << "\n";
  return violated ? 1 : 0;
}

int cmd_selftest(const RunConfig& cfg) {
  std::vector<GroupParams> groups;
  if (cfg.quick)
    groups = {GroupParams(2, 2)};
  else
    groups = {GroupParams(2, 2), GroupParams(2, 3), GroupParams(3, 3), GroupParams(1, 4)};

  auto results = selftest::run(groups);
  const selftest::CheckResult* first_failure = nullptr;
  for (const auto& r : results) {
    if (r.passed) {
      std::cout << "ok   " << r.name << "\n";
    } else {
      std::cout << "FAIL " << r.name << ": " << r.detail << "\n";
      if (!first_failure) first_failure = &r;
    }
  }
  if (first_failure) {
    std::cout << "selftest failed: " << first_failure->name << "\n";
    return 1;
  }
  std::cout << "selftest passed (" << results.size() << " checks)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixing analysis for the one-sided transposition shuffle on colored decks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "master seed (default 1729)");
    sub->add_option("--out", cfg.out, "output directory (default .)");
    sub->add_option("--format", cfg.format, "csv | json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* curve = app.add_subcommand(
      "curve", "exact tv/sep distance curve, one convolution per step");
  curve->add_option("--m", cfg.m, "orientations per card")->required();
  curve->add_option("--n", cfg.n, "number of cards")->required();
  curve->add_option("--t-max", cfg.t_max, "last step (default 60)");
  curve->add_option("--cap", cfg.cap, "exact-engine element cap (default 2^20)");
  add_common(curve);

  auto* projection = app.add_subcommand(
      "projection-check",
      "fiber sums of the t-step law against the colorless shuffle");
  projection->add_option("--m", cfg.m, "orientations per card")->required();
  projection->add_option("--n", cfg.n, "number of cards")->required();
  projection->add_option("--t-max", cfg.t_max, "steps to check (default 10)")
      ->default_val(10);
  projection->add_option("--cap", cfg.cap, "exact-engine element cap (default 2^20)");
  add_common(projection);

  auto* sst = app.add_subcommand(
      "sst", "Monte Carlo tail of the strong stationary time vs e^{-c}");
  sst->add_option("--n", cfg.n, "number of cards")->required();
  sst->add_option("--m", cfg.m, "orientations per card (the tail law ignores m)");
  sst->add_option("--trials", cfg.trials, "Monte Carlo trials (default 100000)");
  sst->add_option("--c", cfg.cs, "threshold offsets, repeatable (default 0.5 1 2 3 5)");
  sst->add_flag("--trace", cfg.trace, "print every sampled move as i-j^k");
  add_common(sst);

  auto* selftest_cmd = app.add_subcommand(
      "selftest", "exhaustive group-axiom and normalization checks on small groups");
  selftest_cmd->add_flag("--quick", cfg.quick, "only the 8-element group");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cfg.cs.empty()) cfg.cs = {0.5, 1.0, 2.0, 3.0, 5.0};

  try {
    if (curve->parsed()) return cmd_curve(cfg);
    if (projection->parsed()) return cmd_projection_check(cfg);
    if (sst->parsed()) return cmd_sst(cfg);
    if (selftest_cmd->parsed()) return cmd_selftest(cfg);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
