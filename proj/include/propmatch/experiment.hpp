#pragma once

// Batch drivers behind the command-line tool: welfare campaigns, axiom
// sweeps, and profile generation.
//
// Experiment config: one `key = value` per line, '#' starts a comment.
//
//   mechanisms = RSD, R-TLQ+G, PS     required, comma separated
//   n          = 4..8                 list "4,6,8", range "4..16", or "4..16:2"
//   metrics    = util_loss, order_bias   util_loss | egal | egal_min_exp | order_bias
//   profiles   = 10000                profiles sampled per (n, mechanism)
//   seed       = 1
//   orders     = auto                 auto | exact | sampled
//   order_samples = 8                 orders per profile when sampling
//   exact_max_n   = 5                 auto: enumerate all orders up to this n
//   loss       = per_profile          per_profile | ratio_of_means

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "propmatch/core.hpp"
#include "propmatch/mechanism.hpp"
#include "propmatch/welfare.hpp"

namespace propmatch {

struct ExperimentConfig {
  std::vector<Mechanism> mechanisms;
  std::vector<std::size_t> n_values;
  std::vector<std::string> metrics;
  WelfareConfig welfare;
};

/// Throws Error(ErrorKind::Parse) for malformed lines and
/// Error(ErrorKind::Mode) for invalid mechanism/metric combinations, before
/// any computation.
ExperimentConfig parse_experiment_config(std::string_view text);
void validate(const ExperimentConfig& cfg);

struct CsvRow {
  std::size_t n = 0;
  std::string mechanism;
  std::string metric;
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
  std::string orders_mode;
  std::uint64_t seed = 0;
};

using Progress = std::function<void(const std::string&)>;

std::vector<CsvRow> run_experiment(const ExperimentConfig& cfg, const Progress& progress = {});

std::string csv_header();
std::string to_csv(const std::vector<CsvRow>& rows);
/// Inverse of to_csv; throws Error(ErrorKind::Parse).
std::vector<CsvRow> parse_csv(std::string_view text);

// ---------------------------------------------------------------------------
// Axiom sweeps

enum class Axiom { ExPost, Ordinal, Strategyproof, WeakStrategyproof, ConditionalBound };

const char* to_string(Axiom a);
/// Accepts ex-post, ordinal, sp, weak-sp, bound.
Axiom parse_axiom(std::string_view name);

struct SweepConfig {
  std::size_t n = 3;
  bool exhaustive = true;          ///< all n!^n profiles, otherwise `samples` random ones
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::size_t k = 2;               ///< for the conditional bound
};

struct AxiomResult {
  Axiom axiom = Axiom::ExPost;
  std::string mechanism;
  std::size_t n = 0;
  bool pass = true;
  bool applicable = true;
  std::uint64_t profiles_checked = 0;
  std::optional<Profile> witness_profile;
  std::optional<AgentOrder> witness_order;
  std::optional<std::pair<AgentId, PreferenceOrder>> witness_misreport;
};

/// Exhaustive sweeps refuse n > 4 with Error(ErrorKind::LimitExceeded).
AxiomResult sweep_axiom(Axiom axiom, const Mechanism& mech, const SweepConfig& cfg,
                        const Progress& progress = {});

/// "axiom, mechanism, n, verdict, witness-profile, witness-order, witness-misreport"
std::string format_axiom_line(const AxiomResult& r);

/// "a>b>c|a>b>c|b>a>c" with default item names.
std::string compact_profile(const Profile& p);

// ---------------------------------------------------------------------------
// Profile generation

/// `count` i.i.d. uniform profiles from `seed`, or every profile of size n
/// when `exhaustive` (count ignored).
std::vector<Profile> generate_profiles(std::size_t n, std::size_t count, std::uint64_t seed,
                                       bool exhaustive);

}  // namespace propmatch
