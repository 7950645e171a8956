#include "exactne/verifier.hpp"

#include "exactne/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace exactne {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string bit_string(const InputAssignment& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

constexpr std::size_t kMaxRecordedFailures = 8;

}  // namespace

// ---------------------------------------------------------------------------

InputSet InputSet::exhaustive(int depth) {
  if (depth < 0 || depth > 3) throw std::invalid_argument("exhaustive inputs need depth in [0, 3]");
  InputSet set;
  set.depth_ = depth;
  set.exhaustive_ = true;
  set.descriptor_ = "exhaustive depth=" + std::to_string(depth);
  return set;
}

InputSet InputSet::listed(int depth, std::vector<InputAssignment> inputs, std::string descriptor,
                          std::optional<std::uint64_t> seed) {
  const std::size_t n = pow3(depth);
  for (const auto& in : inputs) {
    if (in.size() != n) {
      throw std::invalid_argument("input of length " + std::to_string(in.size()) +
                                  " in a depth-" + std::to_string(depth) + " set");
    }
  }
  InputSet set;
  set.depth_ = depth;
  set.inputs_ = std::move(inputs);
  set.descriptor_ = std::move(descriptor);
  set.seed_ = seed;
  return set;
}

InputSet InputSet::sampled(int depth, std::uint64_t seed, std::size_t n_random) {
  return listed(depth, structured_inputs(depth, seed, n_random),
                "structured+random seed=" + std::to_string(seed) + " random=" + std::to_string(n_random),
                seed);
}

std::size_t InputSet::size() const {
  if (exhaustive_) return std::size_t{1} << pow3(depth_);
  return inputs_.size();
}

void InputSet::fill(std::size_t index, InputAssignment& out) const {
  if (!exhaustive_) {
    out = inputs_.at(index);
    return;
  }
  const std::size_t n = pow3(depth_);
  out.resize(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<std::uint8_t>((index >> j) & 1U);
}

InputAssignment InputSet::at(std::size_t index) const {
  InputAssignment out;
  fill(index, out);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<InputAssignment> structured_inputs(int depth, std::uint64_t seed, std::size_t n_random) {
  const std::size_t n = pow3(depth);
  std::vector<InputAssignment> out;
  std::set<InputAssignment> seen;
  auto add = [&](InputAssignment in) {
    if (seen.insert(in).second) out.push_back(std::move(in));
  };

  add(InputAssignment(n, 0));
  add(InputAssignment(n, 1));

  if (depth >= 1) {
    const std::size_t block = n / 3;
    for (std::size_t l = 0; l < 3; ++l) {
      for (std::size_t pos : {l * block, l * block + block - 1}) {
        InputAssignment in(n, 0);
        in[pos] = 1;
        add(std::move(in));
      }
    }
    // Child l evaluates to 1 iff it carries a single 1 (sensitivity of NE^{d-1} at zero);
    // child l puts its 1 at offset l within the block.
    for (unsigned mask : {1U, 2U, 4U, 3U, 5U, 6U, 7U}) {
      InputAssignment in(n, 0);
      for (std::size_t l = 0; l < 3; ++l) {
        if (mask & (1U << l)) in[l * block + (l % block)] = 1;
      }
      add(std::move(in));
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < n_random; ++r) {
    InputAssignment in(n);
    std::uint64_t word = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j % 64 == 0) word = rng();
      in[j] = static_cast<std::uint8_t>((word >> (j % 64)) & 1U);
    }
    add(std::move(in));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void accumulate_overlap(ClassStats& s, const OverlapResult& r, double expected) {
  const double re = r.overlap.real();
  if (s.count == 0) {
    s.min_overlap = s.max_overlap = re;
  } else {
    s.min_overlap = std::min(s.min_overlap, re);
    s.max_overlap = std::max(s.max_overlap, re);
  }
  ++s.count;
  s.max_overlap_deviation = std::max(s.max_overlap_deviation, std::abs(r.overlap - expected));
  s.max_residual = std::max(s.max_residual, r.residual_norm);
}

VerificationReport make_report(const Simulator& sim, const InputSet& inputs, double tolerance,
                               VerificationMode mode) {
  VerificationReport report;
  report.plan = render_plan(sim.plan());
  report.mode = mode;
  report.inputs = inputs.descriptor();
  report.seed = inputs.seed();
  report.tolerance = tolerance;
  if (sim.exact_p()) {
    report.predicted_p = to_string(*sim.exact_p());
    report.predicted_p_value = to_double(*sim.exact_p());
  } else {
    report.predicted_p_value = sim.plan().approx_p();
    report.predicted_p = fmt_double(report.predicted_p_value);
  }
  return report;
}

void check_depth(const Plan& plan, const InputSet& inputs) {
  if (plan.depth() != inputs.depth()) {
    throw std::invalid_argument("plan depth " + std::to_string(plan.depth()) +
                                " does not match input depth " + std::to_string(inputs.depth()));
  }
}

}  // namespace

// Every unitary in a plan is real orthogonal and the start state is real, so the
// sweeps run on real state vectors; results are identical to the complex path.
VerificationReport verify_p_computation(const Plan& plan, const InputSet& inputs, double tolerance) {
  check_depth(plan, inputs);
  const Simulator sim(plan);
  VerificationReport report = make_report(sim, inputs, tolerance, VerificationMode::PComputation);

  InputAssignment bits;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    inputs.fill(i, bits);
    const int value = eval_ne_d(plan.depth(), bits);
    const OverlapResult r = sim.overlap<double>(bits);
    ClassStats& cls = value == 0 ? report.ne0 : report.ne1;
    const double expected = value == 0 ? 1.0 : report.predicted_p_value;
    accumulate_overlap(cls, r, expected);
    const bool ok = std::abs(r.overlap - expected) <= tolerance &&
                    (value == 1 || r.residual_norm <= tolerance);
    if (!ok && report.failures.size() < kMaxRecordedFailures) {
      report.failures.push_back(bit_string(bits) + " NE=" + std::to_string(value) +
                                " overlap=" + fmt_double(r.overlap.real()));
    }
  }
  report.pass = report.ne0.max_overlap_deviation <= tolerance &&
                report.ne0.max_residual <= tolerance &&
                report.ne1.max_overlap_deviation <= tolerance;
  return report;
}

VerificationReport verify_exact(const Plan& plan, const InputSet& inputs, double tolerance) {
  check_depth(plan, inputs);
  const Simulator sim(plan);
  if (!sim.exact_p() || *sim.exact_p() != 0) {
    throw std::invalid_argument("verify_exact needs a plan with exact p = 0");
  }
  VerificationReport report = make_report(sim, inputs, tolerance, VerificationMode::Exact);

  InputAssignment bits;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    inputs.fill(i, bits);
    const int value = eval_ne_d(plan.depth(), bits);
    const OverlapResult r = sim.overlap<double>(bits);
    ClassStats& cls = value == 0 ? report.ne0 : report.ne1;
    accumulate_overlap(cls, r, value == 0 ? 1.0 : 0.0);

    // Same measurement as exact_decide, without throwing so failures land in the report.
    const double stay = std::norm(r.overlap);
    const double leave = r.residual_norm * r.residual_norm;
    const int outcome = stay >= leave ? 0 : 1;
    const double deviation = std::abs(1.0 - std::max(stay, leave));
    cls.max_probability_deviation = std::max(cls.max_probability_deviation, deviation);
    const bool ok = outcome == value && deviation <= tolerance;
    if (ok) {
      ++cls.correct;
    } else if (report.failures.size() < kMaxRecordedFailures) {
      report.failures.push_back(bit_string(bits) + " NE=" + std::to_string(value) +
                                " decided=" + std::to_string(outcome));
    }
  }
  report.pass = report.ne0.correct == report.ne0.count && report.ne1.correct == report.ne1.count;
  return report;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "plan=" << plan << '\n'
      << "mode=" << (mode == VerificationMode::Exact ? "exact" : "p-computation") << '\n'
      << "inputs=" << inputs << '\n';
  if (seed) out << "seed=" << *seed << '\n';
  out << "tolerance=" << fmt_double(tolerance) << '\n'
      << "predicted_p=" << predicted_p << '\n'
      << "predicted_p_decimal=" << fmt_double(predicted_p_value) << '\n';
  for (const auto& [name, s] : {std::pair{"ne0", &ne0}, std::pair{"ne1", &ne1}}) {
    out << name << ".count=" << s->count << '\n'
        << name << ".max_overlap_deviation=" << fmt_double(s->max_overlap_deviation) << '\n'
        << name << ".max_residual=" << fmt_double(s->max_residual) << '\n'
        << name << ".min_overlap=" << fmt_double(s->min_overlap) << '\n'
        << name << ".max_overlap=" << fmt_double(s->max_overlap) << '\n';
    if (mode == VerificationMode::Exact) {
      out << name << ".correct=" << s->correct << '\n'
          << name << ".max_probability_deviation=" << fmt_double(s->max_probability_deviation) << '\n';
    }
  }
  for (const auto& f : failures) out << "failure=" << f << '\n';
  out << "pass=" << (pass ? "true" : "false") << '\n';
  return out.str();
}

std::string VerificationReport::to_csv() const {
  std::ostringstream out;
  out << "class,count,expected_overlap,max_overlap_deviation,max_residual,min_overlap,max_overlap,"
         "correct,max_probability_deviation,pass\n";
  const bool exact = mode == VerificationMode::Exact;
  const double expected1 = exact ? 0.0 : predicted_p_value;
  for (const auto& [name, s, expected] :
       {std::tuple{"ne0", &ne0, 1.0}, std::tuple{"ne1", &ne1, expected1}}) {
    const bool class_pass =
        exact ? s->correct == s->count
              : s->max_overlap_deviation <= tolerance &&
                    (s == &ne1 || s->max_residual <= tolerance);
    out << name << ',' << s->count << ',' << fmt_double(expected) << ','
        << fmt_double(s->max_overlap_deviation) << ',' << fmt_double(s->max_residual) << ','
        << fmt_double(s->min_overlap) << ',' << fmt_double(s->max_overlap) << ','
        << (exact ? std::to_string(s->correct) : std::string()) << ','
        << (exact ? fmt_double(s->max_probability_deviation) : std::string()) << ','
        << (class_pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::size_t sensitivity_check(int depth) {
  if (depth < 0 || depth > 3) throw std::invalid_argument("sensitivity_check needs depth in [0, 3]");
  const std::size_t n = pow3(depth);
  InputAssignment bits(n, 0);
  const int base = eval_ne_d(depth, bits);
  std::size_t sensitive = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bits[i] = 1;
    if (eval_ne_d(depth, bits) != base) ++sensitive;
    bits[i] = 0;
  }
  return sensitive;
}

}  // namespace exactne
