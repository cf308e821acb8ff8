#include "propmatch/mechanism.hpp"

#include <algorithm>
#include <cctype>

#include "propmatch/classic.hpp"

namespace propmatch {

namespace {

[[noreturn]] void bad_name(std::string_view name, const std::string& why) {
  throw Error(ErrorKind::Mode, "mechanism '" + std::string(name) + "': " + why);
}

}  // namespace

Mechanism Mechanism::engine(EngineConfig config, bool randomized, bool ttc) {
  Mechanism m;
  m.kind_ = BaseKind::Engine;
  m.config_ = config;
  m.randomized_ = randomized;
  m.ttc_ = ttc;
  return m;
}

Mechanism Mechanism::of(BaseKind kind, bool randomized, bool ttc) {
  if (kind == BaseKind::ProbabilisticSerial && (randomized || ttc)) {
    throw Error(ErrorKind::Mode, "PS takes no modifiers");
  }
  Mechanism m;
  m.kind_ = kind;
  m.randomized_ = randomized;
  m.ttc_ = ttc;
  return m;
}

Mechanism Mechanism::parse(std::string_view raw) {
  std::string s(raw);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  if (s == "RSD") s = "R-SD";

  bool randomized = false;
  bool ttc = false;
  std::string_view body = s;
  if (body.starts_with("R-")) {
    randomized = true;
    body.remove_prefix(2);
  }
  if (body.ends_with("+G")) {
    ttc = true;
    body.remove_suffix(2);
  } else if (body.size() == 4 && body.back() == 'G') {
    ttc = true;
    body.remove_suffix(1);
  }
  if (body.empty()) bad_name(raw, "empty name");

  BaseKind kind;
  EngineConfig config{};
  if (body == "SD") {
    kind = BaseKind::SerialDictatorship;
  } else if (body == "NB") {
    kind = BaseKind::NaiveBoston;
  } else if (body == "PS") {
    if (randomized) bad_name(raw, "PS is already a random assignment; drop the R- prefix");
    if (ttc) bad_name(raw, "+G needs a matching, PS produces a fractional assignment");
    kind = BaseKind::ProbabilisticSerial;
  } else if (body == "GS") {
    kind = BaseKind::GaleShapley;
  } else if (body == "BOS-SEQ") {
    kind = BaseKind::BostonSequential;
  } else if (body == "BOS-SIM") {
    kind = BaseKind::BostonSimultaneous;
  } else {
    try {
      config = EngineConfig::from_code(body);
    } catch (const Error&) {
      bad_name(raw, "unknown base mechanism");
    }
    kind = BaseKind::Engine;
  }
  Mechanism m;
  m.kind_ = kind;
  m.config_ = config;
  m.randomized_ = randomized;
  m.ttc_ = ttc;
  return m;
}

std::string Mechanism::name() const {
  std::string base;
  switch (kind_) {
    case BaseKind::Engine: base = config_.code(); break;
    case BaseKind::SerialDictatorship: base = "SD"; break;
    case BaseKind::NaiveBoston: base = "NB"; break;
    case BaseKind::ProbabilisticSerial: base = "PS"; break;
    case BaseKind::GaleShapley: base = "GS"; break;
    case BaseKind::BostonSequential: base = "BOS-SEQ"; break;
    case BaseKind::BostonSimultaneous: base = "BOS-SIM"; break;
  }
  return (randomized_ ? "R-" : "") + base + (ttc_ ? "+G" : "");
}

bool Mechanism::needs_item_prefs() const noexcept {
  return kind_ == BaseKind::GaleShapley || kind_ == BaseKind::BostonSequential ||
         kind_ == BaseKind::BostonSimultaneous;
}

bool Mechanism::order_dependent() const noexcept {
  return kind_ != BaseKind::ProbabilisticSerial && kind_ != BaseKind::GaleShapley;
}

Mechanism Mechanism::deterministic() const {
  Mechanism m = *this;
  m.randomized_ = false;
  return m;
}

Mechanism Mechanism::randomize() const {
  if (fractional()) return *this;
  Mechanism m = *this;
  m.randomized_ = true;
  return m;
}

Matching Mechanism::run(const Profile& profile, const AgentOrder& order) const {
  if (needs_item_prefs() && !profile.two_sided()) {
    throw Error(ErrorKind::Mode, name() + " needs item-side preferences");
  }
  Matching m;
  switch (kind_) {
    case BaseKind::Engine: m = engine_matching(profile, order, config_); break;
    case BaseKind::SerialDictatorship: m = serial_dictatorship(profile, order); break;
    case BaseKind::NaiveBoston: m = naive_boston_one_sided(profile, order); break;
    case BaseKind::ProbabilisticSerial:
      throw Error(ErrorKind::Mode, "PS produces a fractional assignment, not a matching");
    case BaseKind::GaleShapley:
      m = run_gale_shapley(profile, order, TraceLevel::None).matching;
      break;
    case BaseKind::BostonSequential:
      m = run_boston_two_sided(profile, order, BostonMode::Sequential);
      break;
    case BaseKind::BostonSimultaneous:
      m = run_boston_two_sided(profile, order, BostonMode::Simultaneous);
      break;
  }
  return ttc_ ? top_trading_cycles(profile, m) : m;
}

Mechanism Mechanism::with_ttc() const {
  if (fractional()) {
    throw Error(ErrorKind::Mode, "+G needs a matching, PS produces a fractional assignment");
  }
  Mechanism m = *this;
  m.ttc_ = true;
  return m;
}

Mechanism compose_ttc(const Mechanism& inner) { return inner.with_ttc(); }

}  // namespace propmatch
