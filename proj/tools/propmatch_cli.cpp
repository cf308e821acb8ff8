// propmatch: command-line front end.
//
//   propmatch run PROFILE -m TLS [--order 3,1,2,4] [--trace]
//   propmatch lottery PROFILE -m R-TLQ [--exact | --samples K --seed S] [--support]
//   propmatch axioms -m PFS,PLS -n 3 [--exhaustive | --samples K] [--axiom sp,bound] [--k 2]
//   propmatch experiment CONFIG [--out results.csv]
//   propmatch generate -n 4 --count 10 --seed 7 [--exhaustive] [--out DIR]
//   propmatch compare A B (--profile FILE | -n N [--samples K]) [--orders K]
//
// Exit status: 0 success, 1 usage error, 2 input error, 3 resource limit.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "propmatch/axioms.hpp"
#include "propmatch/classic.hpp"
#include "propmatch/engine.hpp"
#include "propmatch/experiment.hpp"
#include "propmatch/io.hpp"
#include "propmatch/lottery.hpp"
#include "propmatch/mechanism.hpp"
#include "propmatch/random.hpp"

namespace pm = propmatch;

namespace {

constexpr int kUsage = 1;
constexpr int kInput = 2;
constexpr int kLimit = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pm::Error(pm::ErrorKind::Parse, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw pm::Error(pm::ErrorKind::Parse, "cannot write '" + path + "'");
  out << text;
}

struct RunArgs {
  std::string profile;
  std::string mechanism;
  std::string order;
  bool trace = false;
};

int cmd_run(const RunArgs& args) {
  const auto lp = pm::read_profile_file(args.profile);
  const auto mech = pm::Mechanism::parse(args.mechanism);
  const auto n = lp.profile.size();
  if (mech.fractional()) {
    std::cout << pm::format_matrix(pm::probabilistic_serial(lp.profile), lp.labels);
    return 0;
  }
  if (mech.randomized()) {
    throw pm::Error(pm::ErrorKind::Mode, "run takes a deterministic mechanism; use 'lottery' for " + mech.name());
  }
  if (mech.needs_item_prefs() && !lp.profile.two_sided()) {
    throw pm::Error(pm::ErrorKind::Mode, mech.name() + " needs an @items section in the profile");
  }
  const pm::AgentOrder order =
      args.order.empty() ? pm::AgentOrder::identity(n) : pm::parse_order(args.order, lp.labels);

  std::optional<pm::EngineResult> traced;
  const auto level = args.trace ? pm::TraceLevel::Full : pm::TraceLevel::Events;
  if (mech.kind() == pm::BaseKind::Engine) {
    traced = pm::run_engine(lp.profile, order, mech.engine_config(), level);
  } else if (mech.kind() == pm::BaseKind::GaleShapley) {
    traced = pm::run_gale_shapley(lp.profile, order, level);
  } else if (args.trace) {
    throw pm::Error(pm::ErrorKind::Mode, "--trace is available for proposal mechanisms only");
  }
  const pm::Matching final_matching = mech.run(lp.profile, order);
  if (traced && args.trace) std::cout << pm::format_trace(*traced, lp.labels);
  std::cout << pm::format_matching(final_matching, lp.labels);
  if (traced) std::cout << "; proposals=" << traced->proposal_count;
  std::cout << '\n';
  return 0;
}

struct LotteryArgs {
  std::string profile;
  std::string mechanism;
  bool exact = false;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  bool support = false;
};

int cmd_lottery(const LotteryArgs& args) {
  const auto lp = pm::read_profile_file(args.profile);
  const auto mech = pm::Mechanism::parse(args.mechanism);
  if (mech.fractional()) {
    std::cout << pm::format_matrix(pm::probabilistic_serial(lp.profile), lp.labels);
    return 0;
  }
  if (args.samples > 0 && !args.exact) {
    const auto p = pm::sampled_lottery(mech, lp.profile, {args.samples, args.seed});
    std::cout << "# sampled orders=" << args.samples << " seed=" << args.seed << '\n';
    std::cout << pm::format_matrix(p, lp.labels);
    return 0;
  }
  const auto res = pm::exact_lottery(mech, lp.profile);
  std::cout << pm::format_matrix(res.assignment, lp.labels);
  if (args.support) {
    std::cout << "# support (" << res.support.size() << " matchings over " << res.order_count << " orders)\n";
    for (const auto& [m, w] : res.support) {
      std::cout << w.get_str() << ' ' << pm::format_matching(m, lp.labels) << '\n';
    }
  }
  return 0;
}

struct AxiomArgs {
  std::vector<std::string> mechanisms;
  std::vector<std::string> axioms{"ex-post", "ordinal", "sp", "weak-sp", "bound"};
  std::size_t n = 3;
  bool exhaustive = false;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::size_t k = 2;
};

int cmd_axioms(const AxiomArgs& args) {
  pm::SweepConfig cfg;
  cfg.n = args.n;
  cfg.exhaustive = args.exhaustive || args.samples == 0;
  cfg.samples = args.samples;
  cfg.seed = args.seed;
  cfg.k = args.k;
  std::vector<pm::Mechanism> mechs;
  for (const auto& m : args.mechanisms) mechs.push_back(pm::Mechanism::parse(m));
  std::vector<pm::Axiom> axioms;
  for (const auto& a : args.axioms) axioms.push_back(pm::parse_axiom(a));
  if (cfg.exhaustive && cfg.n > 4) {
    throw pm::Error(pm::ErrorKind::LimitExceeded,
                    "exhaustive sweeps enumerate n!^n profiles and need n <= 4; use --samples");
  }
  auto progress = [](const std::string& msg) { std::cerr << msg << '\n'; };
  for (const auto& mech : mechs) {
    for (auto axiom : axioms) {
      std::cout << pm::format_axiom_line(pm::sweep_axiom(axiom, mech, cfg, progress)) << '\n'
                << std::flush;
    }
  }
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_path) {
  const auto cfg = pm::parse_experiment_config(read_file(config_path));
  const auto rows = pm::run_experiment(cfg, [](const std::string& msg) { std::cerr << msg << '\n'; });
  write_output(out_path, pm::to_csv(rows));
  return 0;
}

struct GenerateArgs {
  std::size_t n = 0;
  std::size_t count = 1;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  std::string out;
};

int cmd_generate(const GenerateArgs& args) {
  const auto profiles = pm::generate_profiles(args.n, args.count, args.seed, args.exhaustive);
  const std::string header = "# n=" + std::to_string(args.n) +
                             (args.exhaustive ? " exhaustive" : " seed=" + std::to_string(args.seed));
  if (args.out.empty()) {
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      std::cout << header << " profile=" << (i + 1) << '\n' << pm::format_profile(profiles[i]);
      if (i + 1 < profiles.size()) std::cout << '\n';
    }
    return 0;
  }
  std::filesystem::create_directories(args.out);
  const std::size_t width = std::to_string(profiles.size()).size();
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    std::string idx = std::to_string(i + 1);
    idx.insert(0, width - idx.size(), '0');
    write_output((std::filesystem::path(args.out) / ("profile_" + idx + ".txt")).string(),
                 header + " profile=" + std::to_string(i + 1) + '\n' + pm::format_profile(profiles[i]));
  }
  std::cerr << "wrote " << profiles.size() << " profiles to " << args.out << '\n';
  return 0;
}

struct CompareArgs {
  std::string a;
  std::string b;
  std::string profile;
  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t orders = 0;
  std::uint64_t seed = 1;
};

int cmd_compare(const CompareArgs& args) {
  const auto ma = pm::Mechanism::parse(args.a);
  const auto mb = pm::Mechanism::parse(args.b);
  pm::OrderSpec orders;
  if (args.orders > 0) orders = {pm::OrderMode::Sampled, args.orders, args.seed};
  std::vector<pm::Profile> profiles;
  pm::Labels labels;
  if (!args.profile.empty()) {
    auto lp = pm::read_profile_file(args.profile);
    labels = lp.labels;
    profiles.push_back(std::move(lp.profile));
  } else {
    if (args.n == 0) throw pm::Error(pm::ErrorKind::Mode, "compare needs --profile or -n");
    profiles = pm::generate_profiles(args.n, args.samples, args.seed, args.samples == 0);
    labels = pm::Labels::defaults(args.n);
  }
  const auto v = pm::equivalent_on(ma, mb, profiles, orders);
  if (v.equal) {
    std::cout << "EQUAL " << ma.name() << ' ' << mb.name() << " cases=" << v.cases << '\n';
    return 0;
  }
  std::cout << "DIFFERENT " << ma.name() << ' ' << mb.name() << " cases=" << v.cases << '\n';
  std::cout << pm::format_profile(v.witness->profile, labels);
  if (v.witness->order) {
    std::cout << "order:";
    for (auto a : v.witness->order->agents()) std::cout << ' ' << labels.agents[static_cast<std::size_t>(a)];
    std::cout << '\n';
  }
  std::cout << v.witness->detail << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proposal-based one- and two-sided matching mechanisms"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a deterministic mechanism on a profile file");
  run_cmd->add_option("profile", run.profile, "Profile file")->required();
  run_cmd->add_option("-m,--mechanism", run.mechanism, "Mechanism name, e.g. TLS, GS, PFS+G")->required();
  run_cmd->add_option("--order", run.order, "Initial agent order, e.g. 3,1,2,4 (default: file order)");
  run_cmd->add_flag("--trace", run.trace, "Print one line per proposal");

  LotteryArgs lot;
  auto* lot_cmd = app.add_subcommand("lottery", "Random assignment over uniformly random initial orders");
  lot_cmd->add_option("profile", lot.profile, "Profile file")->required();
  lot_cmd->add_option("-m,--mechanism", lot.mechanism, "Mechanism name")->required();
  auto* exact_flag = lot_cmd->add_flag("--exact", lot.exact, "Enumerate all n! orders (default)");
  lot_cmd->add_option("--samples", lot.samples, "Sample this many orders instead")->excludes(exact_flag);
  lot_cmd->add_option("--seed", lot.seed, "Seed for --samples");
  lot_cmd->add_flag("--support", lot.support, "Also list the outcome matchings with probabilities");

  AxiomArgs ax;
  auto* ax_cmd = app.add_subcommand("axioms", "Sweep axioms over all or sampled profiles");
  ax_cmd->add_option("-m,--mechanisms", ax.mechanisms, "Mechanisms")->required()->delimiter(',');
  ax_cmd->add_option("-n", ax.n, "Number of agents")->required();
  ax_cmd->add_option("--axiom", ax.axioms, "ex-post, ordinal, sp, weak-sp, bound")->delimiter(',');
  auto* exh_flag = ax_cmd->add_flag("--exhaustive", ax.exhaustive, "All n!^n profiles (default, n <= 4)");
  ax_cmd->add_option("--samples", ax.samples, "Random profiles instead")->excludes(exh_flag);
  ax_cmd->add_option("--seed", ax.seed, "Seed for --samples");
  ax_cmd->add_option("--k", ax.k, "k for the conditional egalitarian bound");

  std::string exp_config;
  std::string exp_out;
  auto* exp_cmd = app.add_subcommand("experiment", "Welfare and order-bias campaign from a config file");
  exp_cmd->add_option("config", exp_config, "key = value config file")->required();
  exp_cmd->add_option("--out", exp_out, "CSV output file (default stdout)");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write random or all profiles");
  gen_cmd->add_option("-n", gen.n, "Number of agents")->required();
  gen_cmd->add_option("--count", gen.count, "Number of profiles");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_flag("--exhaustive", gen.exhaustive, "All n!^n profiles (n <= 4)");
  gen_cmd->add_option("--out", gen.out, "Directory for profile_NNN.txt files (default stdout)");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Test two mechanisms for equal outputs");
  cmp_cmd->add_option("a", cmp.a, "First mechanism")->required();
  cmp_cmd->add_option("b", cmp.b, "Second mechanism")->required();
  cmp_cmd->add_option("--profile", cmp.profile, "Compare on this profile only");
  cmp_cmd->add_option("-n", cmp.n, "Compare on profiles of this size");
  cmp_cmd->add_option("--samples", cmp.samples, "Random profiles (default: all, n <= 4)");
  cmp_cmd->add_option("--orders", cmp.orders, "Sample this many orders per profile (default: all)");
  cmp_cmd->add_option("--seed", cmp.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*lot_cmd) return cmd_lottery(lot);
    if (*ax_cmd) return cmd_axioms(ax);
    if (*exp_cmd) return cmd_experiment(exp_config, exp_out);
    if (*gen_cmd) return cmd_generate(gen);
    if (*cmp_cmd) return cmd_compare(cmp);
  } catch (const pm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case pm::ErrorKind::Mode: return kUsage;
      case pm::ErrorKind::LimitExceeded: return kLimit;
      case pm::ErrorKind::Parse:
      case pm::ErrorKind::InvalidInstance: return kInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}
