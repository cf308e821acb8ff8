#pragma once

// Named mechanisms. Names are the three-letter engine codes (PFS ... TLQ),
// SD, NB (one-sided Naive Boston), PS, GS, BOS-SEQ and BOS-SIM, with two
// optional modifiers:
//   "R-" prefix   randomize the initial agent order uniformly
//   "+G" suffix   feed the matching to top trading cycles as an endowment
// "RSD" is accepted for "R-SD", and "TLSG" style names for "TLS+G".

#include <string>
#include <string_view>

#include "propmatch/core.hpp"
#include "propmatch/engine.hpp"

namespace propmatch {

enum class BaseKind {
  Engine,
  SerialDictatorship,
  NaiveBoston,
  ProbabilisticSerial,
  GaleShapley,
  BostonSequential,
  BostonSimultaneous,
};

class Mechanism {
 public:
  /// Throws Error(ErrorKind::Mode) for unknown names and invalid
  /// combinations such as "PS+G" or "R-PS".
  static Mechanism parse(std::string_view name);
  static Mechanism engine(EngineConfig config, bool randomized = false, bool ttc = false);
  static Mechanism of(BaseKind kind, bool randomized = false, bool ttc = false);

  std::string name() const;
  BaseKind kind() const noexcept { return kind_; }
  EngineConfig engine_config() const noexcept { return config_; }
  bool randomized() const noexcept { return randomized_; }
  bool composed() const noexcept { return ttc_; }

  /// PS: the outcome is a fractional assignment, not a matching.
  bool fractional() const noexcept { return kind_ == BaseKind::ProbabilisticSerial; }
  bool needs_item_prefs() const noexcept;
  /// False for mechanisms whose outcome never depends on the agent order.
  bool order_dependent() const noexcept;

  /// Same mechanism without the "R-" prefix.
  Mechanism deterministic() const;
  Mechanism randomize() const;
  /// Same mechanism with the TTC stage; throws Error(ErrorKind::Mode) for PS.
  Mechanism with_ttc() const;

  /// Outcome for one initial order; the "R-" flag is ignored here.
  /// Throws Error(ErrorKind::Mode) for PS and for two-sided mechanisms on
  /// one-sided profiles.
  Matching run(const Profile& profile, const AgentOrder& order) const;

  friend bool operator==(const Mechanism&, const Mechanism&) = default;

 private:
  BaseKind kind_ = BaseKind::Engine;
  EngineConfig config_{};
  bool randomized_ = false;
  bool ttc_ = false;
};

/// The "XG" construction: returns `inner` with the TTC stage appended.
Mechanism compose_ttc(const Mechanism& inner);

}  // namespace propmatch
