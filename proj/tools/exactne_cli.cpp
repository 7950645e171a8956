// exactne: evaluate, verify, trace and search exact query plans for iterated NE.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.

#include "exactne/fixtures.hpp"
#include "exactne/pcalc.hpp"
#include "exactne/plan.hpp"
#include "exactne/planner.hpp"
#include "exactne/simulator.hpp"
#include "exactne/verifier.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace exactne;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 1e-9;
  std::string format = "text";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--seed", opts.seed, "PRNG seed for sampled inputs");
  cmd->add_option("--tol", opts.tolerance, "absolute tolerance for overlap checks");
  cmd->add_option("--format", opts.format, "output format")->check(CLI::IsMember({"text", "csv"}));
  cmd->add_option("--out", opts.out_path, "write output to PATH instead of stdout");
}

void emit(const CommonOptions& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opts.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open " + opts.out_path + " for writing");
  file << text;
}

std::string fmt(double v, int digits = 17) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

Plan parse_plan_arg(const std::string& text) {
  try {
    return parse_plan(text);
  } catch (const PlanParseError& e) {
    throw UsageError(std::string("plan: ") + e.what());
  }
}

// "0101..." or "@path" (one 0/1 per bit, whitespace ignored).
InputAssignment parse_bits_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream file(arg.substr(1));
    if (!file) throw UsageError("cannot read input file " + arg.substr(1));
    std::ostringstream ss;
    ss << file.rdbuf();
    text = ss.str();
  }
  InputAssignment bits;
  for (char ch : text) {
    if (ch == '0' || ch == '1') {
      bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw UsageError(std::string("input bits may only contain 0 and 1, found '") + ch + "'");
    }
  }
  return bits;
}

int run_eval(const CommonOptions& opts, const std::string& plan_text, const std::string& bits_arg) {
  const Plan plan = parse_plan_arg(plan_text);
  const InputAssignment bits = parse_bits_arg(bits_arg);
  if (bits.size() != pow3(plan.depth())) {
    throw UsageError("plan of depth " + std::to_string(plan.depth()) + " needs " +
                     std::to_string(pow3(plan.depth())) + " bits, got " + std::to_string(bits.size()));
  }
  const Simulator sim(plan);
  const OverlapResult r = sim.overlap(bits);
  const int ne = eval_ne_d(plan.depth(), bits);
  const std::string p_text = sim.exact_p() ? to_string(*sim.exact_p()) : fmt(plan.approx_p());
  const double predicted = sim.exact_p() ? to_double(*sim.exact_p()) : plan.approx_p();
  const double expected = ne == 0 ? 1.0 : predicted;
  const bool pass = std::abs(r.overlap - expected) <= opts.tolerance &&
                    (ne == 1 || r.residual_norm <= opts.tolerance);

  std::ostringstream out;
  if (opts.format == "csv") {
    out << "ne,predicted_p,overlap_re,overlap_im,residual_norm,pass\n"
        << ne << ',' << p_text << ',' << fmt(r.overlap.real()) << ',' << fmt(r.overlap.imag()) << ','
        << fmt(r.residual_norm) << ',' << (pass ? "true" : "false") << '\n';
  } else {
    out << "plan=" << render_plan(plan) << '\n'
        << "ne=" << ne << '\n'
        << "predicted_p=" << p_text << '\n'
        << "overlap_re=" << fmt(r.overlap.real()) << '\n'
        << "overlap_im=" << fmt(r.overlap.imag()) << '\n'
        << "residual_norm=" << fmt(r.residual_norm) << '\n'
        << "pass=" << (pass ? "true" : "false") << '\n';
  }
  emit(opts, out.str());
  return pass ? kExitPass : kExitCheckFailed;
}

int run_verify(const CommonOptions& opts, const std::string& plan_text, bool exhaustive,
               std::optional<std::size_t> samples, bool exact) {
  const Plan plan = parse_plan_arg(plan_text);
  if (exhaustive && samples) throw UsageError("--exhaustive and --samples are exclusive");
  if (exhaustive && plan.depth() > 3) throw UsageError("--exhaustive needs plan depth <= 3");
  const bool use_exhaustive = exhaustive || (!samples && plan.depth() <= 2);
  const InputSet inputs = use_exhaustive ? InputSet::exhaustive(plan.depth())
                                         : InputSet::sampled(plan.depth(), opts.seed, samples.value_or(1000));
  VerificationReport report;
  if (exact) {
    try {
      report = verify_exact(plan, inputs, opts.tolerance);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    report = verify_p_computation(plan, inputs, opts.tolerance);
  }
  emit(opts, opts.format == "csv" ? report.to_csv() : report.to_text());
  return report.pass ? kExitPass : kExitCheckFailed;
}

int run_trace(const CommonOptions& opts, const std::string& plan_text) {
  const Plan plan = parse_plan_arg(plan_text);
  std::ostringstream out;
  const auto rows = trace(plan);
  if (opts.format == "csv") {
    write_trace_csv(out, rows);
  } else {
    out << "plan=" << render_plan(plan) << '\n';
    write_trace_text(out, rows);
  }
  emit(opts, out.str());
  return kExitPass;
}

int run_search(const CommonOptions& opts, const SearchConfig& config) {
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const SearchResult result = search(config);
  std::ostringstream out;
  if (!result.plan) {
    out << "plan=none\n";
    if (opts.format == "csv") {
      std::cerr << out.str();
      emit(opts, "step,move,t,k,p_exact,p_decimal,dim\n");
    } else {
      emit(opts, out.str());
    }
    return kExitCheckFailed;
  }
  std::ostringstream summary;
  summary << "plan=" << render_plan(*result.plan) << '\n'
          << "depth=" << result.depth << '\n'
          << "queries=" << result.queries << '\n'
          << "exponent=" << fmt(result.exponent.per_level, 6) << '\n'
          << "exponent_over_classical=" << fmt(result.exponent.over_classical, 6) << '\n'
          << "exact_p=" << (result.exact_p ? to_string(*result.exact_p) : "irrational") << '\n'
          << "expanded=" << result.expanded << '\n';
  const auto rows = trace(*result.plan);
  if (opts.format == "csv") {
    std::cerr << summary.str();
    write_trace_csv(out, rows);
  } else {
    out << summary.str();
    write_trace_text(out, rows);
  }
  emit(opts, out.str());
  return result.truncated ? kExitCheckFailed : kExitPass;
}

int run_fixtures(const CommonOptions& opts) {
  const auto checks = fixtures::run_fixture_checks(opts.tolerance);
  std::ostringstream out;
  bool all = true;
  if (opts.format == "csv") out << "fixture,pass,detail\n";
  for (const auto& c : checks) {
    all = all && c.pass;
    if (opts.format == "csv") {
      out << '"' << c.name << "\"," << (c.pass ? "true" : "false") << ",\"" << c.detail << "\"\n";
    } else {
      out << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    }
  }
  emit(opts, out.str());
  return all ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quantum query plans for iterated NE"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string plan_text;
  std::string bits_arg;

  auto* eval = app.add_subcommand("eval", "overlap of a plan on one input");
  eval->add_option("plan", plan_text, "plan expression")->required();
  eval->add_option("bits", bits_arg, "input as a 0/1 string, or @FILE")->required();
  add_common(eval, opts);

  bool exhaustive = false;
  bool exact = false;
  std::size_t samples = 0;
  auto* verify = app.add_subcommand("verify", "check a plan against its predicted p");
  verify->add_option("plan", plan_text, "plan expression")->required();
  verify->add_flag("--exhaustive", exhaustive, "all 2^(3^d) inputs (d <= 3)");
  auto* samples_opt = verify->add_option("--samples", samples, "structured inputs plus N seeded random ones");
  verify->add_flag("--exact", exact, "decide NE by measurement (plan must have p = 0)");
  add_common(verify, opts);

  auto* trace_cmd = app.add_subcommand("trace", "per-node table of t, k, p and dimension");
  trace_cmd->add_option("plan", plan_text, "plan expression")->required();
  add_common(trace_cmd, opts);

  SearchConfig config;
  auto* search_cmd = app.add_subcommand("search", "find the best (-1)-computing plan");
  search_cmd->add_option("--tmax", config.max_depth, "maximum depth t");
  search_cmd->add_option("--cmax", config.max_factor, "maximum amplification factor c");
  search_cmd->add_option("--pmax", config.p_ceiling, "prune states with p above this");
  search_cmd->add_flag("--cos-lift", config.cos_lift, "allow lift to cos(pi/c) before amplify(c)");
  add_common(search_cmd, opts);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "run the hand-built NE / NE^2 algorithm checks");
  add_common(fixtures_cmd, opts);
  opts.tolerance = 1e-9;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(opts, plan_text, bits_arg);
    if (*verify) {
      return run_verify(opts, plan_text, exhaustive,
                        samples_opt->count() ? std::optional<std::size_t>(samples) : std::nullopt, exact);
    }
    if (*trace_cmd) return run_trace(opts, plan_text);
    if (*search_cmd) return run_search(opts, config);
    if (*fixtures_cmd) {
      if (fixtures_cmd->get_option("--tol")->count() == 0) opts.tolerance = 1e-10;
      return run_fixtures(opts);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}
