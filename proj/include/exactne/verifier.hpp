#pragma once

#include "exactne/plan.hpp"
#include "exactne/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exactne {

/// Default seed for sampled inputs; recorded in every report that uses it.
inline constexpr std::uint64_t kDefaultSeed = 20130601;

/// A finite, indexable set of inputs of length 3^depth.
class InputSet {
 public:
  /// All 2^(3^depth) inputs; input i has bit j equal to bit j of i. Requires depth <= 3.
  static InputSet exhaustive(int depth);
  static InputSet listed(int depth, std::vector<InputAssignment> inputs, std::string descriptor,
                         std::optional<std::uint64_t> seed = std::nullopt);
  /// structured_inputs(depth, seed, n_random) with a descriptor recording seed and count.
  static InputSet sampled(int depth, std::uint64_t seed, std::size_t n_random);

  int depth() const { return depth_; }
  std::size_t size() const;
  void fill(std::size_t index, InputAssignment& out) const;
  InputAssignment at(std::size_t index) const;
  const std::string& descriptor() const { return descriptor_; }
  const std::optional<std::uint64_t>& seed() const { return seed_; }

 private:
  int depth_ = 0;
  bool exhaustive_ = false;
  std::vector<InputAssignment> inputs_;
  std::string descriptor_;
  std::optional<std::uint64_t> seed_;
};

/// Deterministic test inputs for NE^depth, in this order: all zeros, all ones,
/// a single 1 at the first and last position of each top-level block, inputs
/// whose three top-level children evaluate to (1,0,0), (0,1,0), (0,0,1)
/// [one child set] and (1,1,0), (1,0,1), (0,1,1) [two children set], and
/// (1,1,1); then n_random uniform inputs drawn from mt19937_64(seed).
/// Duplicates are removed keeping the first occurrence.
std::vector<InputAssignment> structured_inputs(int depth, std::uint64_t seed, std::size_t n_random);

/// Overlap statistics over one class of inputs (NE = 0 or NE = 1).
struct ClassStats {
  std::size_t count = 0;
  double max_overlap_deviation = 0.0;  ///< max |overlap - expected|
  double max_residual = 0.0;
  double min_overlap = 0.0;  ///< real part, over the class
  double max_overlap = 0.0;
  std::size_t correct = 0;             ///< exact mode: correct decisions
  double max_probability_deviation = 0.0;  ///< exact mode: max |1 - success probability|
};

enum class VerificationMode { PComputation, Exact };

struct VerificationReport {
  std::string plan;
  VerificationMode mode = VerificationMode::PComputation;
  std::string inputs;
  std::optional<std::uint64_t> seed;
  double tolerance = 1e-9;
  std::string predicted_p;  ///< exact rational text, or a decimal for irrational plans
  double predicted_p_value = 0.0;
  ClassStats ne0;
  ClassStats ne1;
  std::vector<std::string> failures;  ///< first few failing inputs, for diagnosis
  bool pass = false;

  /// key=value lines.
  std::string to_text() const;
  /// Header plus one row per input class.
  std::string to_csv() const;
};

/// Checks that every NE = 0 input leaves the start state fixed and every NE = 1
/// input yields overlap equal to the plan's p, all within `tolerance`.
VerificationReport verify_p_computation(const Plan& plan, const InputSet& inputs, double tolerance = 1e-9);

/// For a plan with exact p = 0: checks that measuring the start-state projector
/// returns NE^depth on every input with probability within `tolerance` of 1.
/// Throws std::invalid_argument if p != 0.
VerificationReport verify_exact(const Plan& plan, const InputSet& inputs, double tolerance = 1e-9);

/// Number of positions whose flip changes NE^depth at the all-zeros input. Requires depth <= 3.
std::size_t sensitivity_check(int depth);

}  // namespace exactne
