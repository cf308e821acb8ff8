#include "propmatch/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "propmatch/axioms.hpp"
#include "propmatch/io.hpp"
#include "propmatch/lottery.hpp"
#include "propmatch/random.hpp"

namespace propmatch {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, const std::string& what) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::Parse, "bad " + what + " '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::size_t> parse_n_values(std::string_view v) {
  std::vector<std::size_t> out;
  for (auto part : split(v, ',')) {
    if (const auto dots = part.find(".."); dots != std::string_view::npos) {
      auto hi_part = part.substr(dots + 2);
      std::size_t step = 1;
      if (const auto colon = hi_part.find(':'); colon != std::string_view::npos) {
        step = parse_number<std::size_t>(trim(hi_part.substr(colon + 1)), "n step");
        hi_part = hi_part.substr(0, colon);
      }
      const auto lo = parse_number<std::size_t>(trim(part.substr(0, dots)), "n");
      const auto hi = parse_number<std::size_t>(trim(hi_part), "n");
      if (step == 0 || hi < lo) throw Error(ErrorKind::Parse, "bad n range '" + std::string(part) + "'");
      for (std::size_t n = lo; n <= hi; n += step) out.push_back(n);
    } else {
      out.push_back(parse_number<std::size_t>(part, "n"));
    }
  }
  return out;
}

const std::set<std::string>& known_metrics() {
  static const std::set<std::string> m{"util_loss", "egal", "egal_min_exp", "order_bias"};
  return m;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig cfg;
  cfg.metrics = {"util_loss"};
  std::string orders = "auto";
  std::size_t line_no = 0;
  std::set<std::string> seen;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    if (key == "mechanisms") {
      for (auto m : split(value, ',')) {
        if (!m.empty()) cfg.mechanisms.push_back(Mechanism::parse(m));
      }
    } else if (key == "n") {
      cfg.n_values = parse_n_values(value);
    } else if (key == "metrics") {
      cfg.metrics.clear();
      for (auto m : split(value, ',')) {
        if (!m.empty()) cfg.metrics.emplace_back(m);
      }
    } else if (key == "profiles") {
      cfg.welfare.profile_samples = parse_number<std::size_t>(value, "profiles");
    } else if (key == "seed") {
      cfg.welfare.seed = parse_number<std::uint64_t>(value, "seed");
    } else if (key == "orders") {
      orders = std::string(value);
    } else if (key == "order_samples") {
      cfg.welfare.sampled_orders = parse_number<std::size_t>(value, "order_samples");
    } else if (key == "exact_max_n") {
      cfg.welfare.exact_order_max_n = parse_number<std::size_t>(value, "exact_max_n");
    } else if (key == "loss") {
      if (value == "per_profile") {
        cfg.welfare.ratio_of_means = false;
      } else if (value == "ratio_of_means") {
        cfg.welfare.ratio_of_means = true;
      } else {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": loss must be per_profile or ratio_of_means");
      }
    } else {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (orders == "exact") {
    cfg.welfare.exact_order_max_n = kDefaultEnumerationLimit;
    for (auto n : cfg.n_values) {
      if (n > kDefaultEnumerationLimit) {
        throw Error(ErrorKind::LimitExceeded, "orders = exact needs every n <= " +
                                                  std::to_string(kDefaultEnumerationLimit));
      }
    }
  } else if (orders == "sampled") {
    cfg.welfare.exact_order_max_n = 0;
  } else if (orders != "auto") {
    throw Error(ErrorKind::Parse, "orders must be auto, exact or sampled");
  }
  validate(cfg);
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.mechanisms.empty()) throw Error(ErrorKind::Mode, "no mechanisms listed");
  if (cfg.n_values.empty()) throw Error(ErrorKind::Mode, "no n values listed");
  if (cfg.metrics.empty()) throw Error(ErrorKind::Mode, "no metrics listed");
  for (auto n : cfg.n_values) {
    if (n < 1) throw Error(ErrorKind::Mode, "n must be at least 1");
  }
  for (const auto& m : cfg.metrics) {
    if (!known_metrics().count(m)) throw Error(ErrorKind::Mode, "unknown metric '" + m + "'");
  }
  for (const auto& mech : cfg.mechanisms) {
    if (mech.needs_item_prefs()) {
      throw Error(ErrorKind::Mode, mech.name() + " needs two-sided profiles; experiments sample one-sided profiles");
    }
  }
  if (cfg.welfare.profile_samples == 0) throw Error(ErrorKind::Mode, "profiles must be at least 1");
  if (cfg.welfare.sampled_orders == 0) throw Error(ErrorKind::Mode, "order_samples must be at least 1");
}

std::vector<CsvRow> run_experiment(const ExperimentConfig& cfg, const Progress& progress) {
  validate(cfg);
  std::vector<CsvRow> rows;
  for (auto n : cfg.n_values) {
    for (const auto& mech : cfg.mechanisms) {
      for (const auto& metric : cfg.metrics) {
        if (progress) progress("n=" + std::to_string(n) + " " + mech.name() + " " + metric);
        WelfareStats st;
        std::string mode;
        if (metric == "util_loss") {
          st = utilitarian_loss(mech, n, cfg.welfare);
          mode = to_string(st.orders_mode);
        } else if (metric == "egal") {
          st = egalitarian(mech, n, cfg.welfare);
          mode = to_string(st.orders_mode);
        } else if (metric == "egal_min_exp") {
          st = summarize(egalitarian_min_expected_samples(mech, n, cfg.welfare), cfg.welfare.seed);
          mode = to_string(st.orders_mode);
        } else {
          st = order_bias(mech, n, cfg.welfare);
          mode = "fixed";
        }
        rows.push_back(CsvRow{n, mech.name(), metric, st.mean, st.std_error, st.samples, mode, cfg.welfare.seed});
      }
    }
  }
  return rows;
}

std::string csv_header() { return "n,mechanism,metric,mean,stderr,samples,orders_mode,seed"; }

std::string to_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.mechanism << ',' << r.metric << ',' << format_double(r.mean) << ','
        << format_double(r.std_error) << ',' << r.samples << ',' << r.orders_mode << ',' << r.seed
        << '\n';
  }
  return out.str();
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != csv_header()) throw Error(ErrorKind::Parse, "unexpected CSV header");
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 8) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 8 fields");
    CsvRow r;
    r.n = parse_number<std::size_t>(f[0], "n");
    r.mechanism = std::string(f[1]);
    r.metric = std::string(f[2]);
    r.mean = std::stod(std::string(f[3]));
    r.std_error = std::stod(std::string(f[4]));
    r.samples = parse_number<std::size_t>(f[5], "samples");
    r.orders_mode = std::string(f[6]);
    r.seed = parse_number<std::uint64_t>(f[7], "seed");
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------

const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::ExPost: return "ex-post";
    case Axiom::Ordinal: return "ordinal";
    case Axiom::Strategyproof: return "sp";
    case Axiom::WeakStrategyproof: return "weak-sp";
    case Axiom::ConditionalBound: return "bound";
  }
  return "?";
}

Axiom parse_axiom(std::string_view name) {
  for (auto a : {Axiom::ExPost, Axiom::Ordinal, Axiom::Strategyproof, Axiom::WeakStrategyproof,
                 Axiom::ConditionalBound}) {
    if (name == to_string(a)) return a;
  }
  throw Error(ErrorKind::Mode, "unknown axiom '" + std::string(name) + "'");
}

std::string compact_profile(const Profile& p) {
  std::string out;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (a) out += '|';
    const auto& pref = p.agent(static_cast<AgentId>(a));
    for (std::size_t r = 0; r < p.size(); ++r) {
      if (r) out += '>';
      out += default_item_name(pref.at(r));
    }
  }
  return out;
}

namespace {

// Returns true when the profile passes; fills the witness otherwise.
bool check_profile(Axiom axiom, const Mechanism& mech, const Profile& profile,
                   const SweepConfig& cfg, AxiomResult& r) {
  const std::size_t n = profile.size();
  switch (axiom) {
    case Axiom::ExPost: {
      const Mechanism det = mech.deterministic();
      bool ok = true;
      for_each_permutation(n, [&](const std::vector<int>& perm) {
        if (!ok) return;
        AgentOrder order(perm);
        if (!is_pareto_efficient(det.run(profile, order), profile)) {
          ok = false;
          r.witness_order = std::move(order);
        }
      });
      return ok;
    }
    case Axiom::Ordinal:
      return is_ordinally_efficient(random_assignment(mech.randomize(), profile), profile);
    case Axiom::Strategyproof:
    case Axiom::WeakStrategyproof: {
      const Mechanism rnd = mech.randomize();
      for (std::size_t a = 0; a < n; ++a) {
        const auto rep = check_strategyproofness(rnd, profile, static_cast<AgentId>(a));
        const bool fail = axiom == Axiom::Strategyproof ? rep.overall != SPVerdict::Strategyproof
                                                        : rep.overall == SPVerdict::NotWeaklySP;
        if (fail) {
          r.witness_misreport.emplace(static_cast<AgentId>(a), rep.misreports[*rep.witness].report);
          return false;
        }
      }
      return true;
    }
    case Axiom::ConditionalBound: {
      auto bad = conditional_bound_violation(mech.deterministic(), profile, cfg.k);
      if (bad) {
        if (bad->size() > 0) r.witness_order = std::move(*bad);
        return false;
      }
      return true;
    }
  }
  return true;
}

}  // namespace

AxiomResult sweep_axiom(Axiom axiom, const Mechanism& mech, const SweepConfig& cfg,
                        const Progress& progress) {
  AxiomResult r;
  r.axiom = axiom;
  r.mechanism = mech.name();
  r.n = cfg.n;
  if (cfg.n == 0) throw Error(ErrorKind::InvalidInstance, "n must be at least 1");
  if (mech.needs_item_prefs()) {
    throw Error(ErrorKind::Mode, mech.name() + " needs two-sided profiles; sweeps use one-sided profiles");
  }
  if (axiom == Axiom::ExPost && mech.fractional()) {
    r.applicable = false;
    return r;
  }
  if (cfg.n > kDefaultEnumerationLimit) {
    throw Error(ErrorKind::LimitExceeded, "sweeps enumerate all orders and need n <= " +
                                              std::to_string(kDefaultEnumerationLimit));
  }
  auto visit = [&](const Profile& p) {
    ++r.profiles_checked;
    if (progress && r.profiles_checked % 10000 == 0) {
      progress(std::string(to_string(axiom)) + " " + r.mechanism + ": " +
               std::to_string(r.profiles_checked) + " profiles");
    }
    if (!check_profile(axiom, mech, p, cfg, r)) {
      r.pass = false;
      r.witness_profile = p;
      return false;
    }
    return true;
  };
  if (cfg.exhaustive) {
    if (cfg.n > 4) {
      throw Error(ErrorKind::LimitExceeded, "exhaustive sweeps need n <= 4; use --samples");
    }
    for_each_profile(cfg.n, visit);
  } else {
    ProfileSampler sampler(cfg.n, cfg.seed);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      if (!visit(sampler.next())) break;
    }
  }
  return r;
}

std::string format_axiom_line(const AxiomResult& r) {
  std::ostringstream out;
  out << to_string(r.axiom) << ", " << r.mechanism << ", " << r.n << ", "
      << (!r.applicable ? "N/A" : r.pass ? "PASS" : "FAIL") << ", ";
  out << (r.witness_profile ? compact_profile(*r.witness_profile) : "-") << ", ";
  if (r.witness_order) {
    for (std::size_t i = 0; i < r.witness_order->size(); ++i) {
      if (i) out << ' ';
      out << default_agent_name(r.witness_order->at(i));
    }
  } else {
    out << '-';
  }
  out << ", ";
  if (r.witness_misreport) {
    out << default_agent_name(r.witness_misreport->first) << ':';
    const auto& rep = r.witness_misreport->second;
    for (std::size_t i = 0; i < rep.size(); ++i) {
      if (i) out << '>';
      out << default_item_name(rep.at(i));
    }
  } else {
    out << '-';
  }
  return out.str();
}

std::vector<Profile> generate_profiles(std::size_t n, std::size_t count, std::uint64_t seed,
                                       bool exhaustive) {
  if (n == 0) throw Error(ErrorKind::InvalidInstance, "n must be at least 1");
  std::vector<Profile> out;
  if (exhaustive) {
    if (n > 4) throw Error(ErrorKind::LimitExceeded, "exhaustive generation needs n <= 4");
    for_each_profile(n, [&](const Profile& p) {
      out.push_back(p);
      return true;
    });
    return out;
  }
  ProfileSampler sampler(n, seed);
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

}  // namespace propmatch
