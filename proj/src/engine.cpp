#include "propmatch/engine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace propmatch {

std::string EngineConfig::code() const {
  std::string s;
  s += memory == Memory::Permanent ? 'P' : 'T';
  s += acceptance == Acceptance::AcceptFirst ? 'F' : 'L';
  s += discipline == Discipline::Stack ? 'S' : 'Q';
  return s;
}

EngineConfig EngineConfig::from_code(std::string_view code) {
  if (code.size() != 3) throw Error(ErrorKind::Mode, "unknown engine code '" + std::string(code) + "'");
  EngineConfig c;
  switch (code[0]) {
    case 'P': c.memory = Memory::Permanent; break;
    case 'T': c.memory = Memory::Temporary; break;
    default: throw Error(ErrorKind::Mode, "unknown engine code '" + std::string(code) + "'");
  }
  switch (code[1]) {
    case 'F': c.acceptance = Acceptance::AcceptFirst; break;
    case 'L': c.acceptance = Acceptance::AcceptLast; break;
    default: throw Error(ErrorKind::Mode, "unknown engine code '" + std::string(code) + "'");
  }
  switch (code[2]) {
    case 'S': c.discipline = Discipline::Stack; break;
    case 'Q': c.discipline = Discipline::Queue; break;
    default: throw Error(ErrorKind::Mode, "unknown engine code '" + std::string(code) + "'");
  }
  return c;
}

std::array<EngineConfig, 8> EngineConfig::all() {
  std::array<EngineConfig, 8> out;
  std::size_t k = 0;
  for (auto m : {Memory::Permanent, Memory::Temporary}) {
    for (auto a : {Acceptance::AcceptFirst, Acceptance::AcceptLast}) {
      for (auto d : {Discipline::Stack, Discipline::Queue}) out[k++] = EngineConfig{m, a, d};
    }
  }
  return out;
}

namespace {

// Mutable state of one run. Blocked sets and memory membership are stamped
// with the current epoch so that a global reset is a counter increment.
class Machine {
 public:
  void init(std::size_t n, Discipline discipline, TraceLevel level) {
    n_ = n;
    discipline_ = discipline;
    level_ = level;
    holder_.assign(n, -1);
    item_of_.assign(n, -1);
    blocked_.assign(n * n, 0);
    in_memory_.assign(n * n, 0);
    memory_size_.assign(n, 0);
    memory_order_.assign(level == TraceLevel::Full ? n : 0, {});
    epoch_ = 1;
    pending_.clear();
  }

  void enqueue_initial(const AgentOrder& order) {
    for (AgentId a : order.agents()) pending_.push_back(a);
  }

  bool has_pending() const { return !pending_.empty(); }
  AgentId pop() {
    const AgentId a = pending_.front();
    pending_.pop_front();
    return a;
  }
  void requeue(AgentId a) {
    if (discipline_ == Discipline::Stack) {
      pending_.push_front(a);
    } else {
      pending_.push_back(a);
    }
  }

  ItemId best_unblocked(const PreferenceOrder& pref, AgentId a) const {
    for (std::size_t r = 0; r < n_; ++r) {
      const ItemId o = pref.at(r);
      if (!is_blocked(a, o)) return o;
    }
    throw std::logic_error("agent " + std::to_string(a) + " has every item blocked");
  }

  bool is_blocked(AgentId a, ItemId o) const { return blocked_[cell(a, o)] == epoch_; }
  void block(AgentId a, ItemId o) { blocked_[cell(a, o)] = epoch_; }

  AgentId holder(ItemId o) const { return holder_[static_cast<std::size_t>(o)]; }
  void assign(AgentId a, ItemId o) {
    const AgentId prev = holder_[static_cast<std::size_t>(o)];
    if (prev >= 0) item_of_[static_cast<std::size_t>(prev)] = -1;
    holder_[static_cast<std::size_t>(o)] = a;
    item_of_[static_cast<std::size_t>(a)] = o;
  }

  bool memory_empty(ItemId o) const { return memory_size_[static_cast<std::size_t>(o)] == 0; }
  bool remembers(ItemId o, AgentId a) const { return in_memory_[cell(o, a)] == epoch_; }
  void remember_bottom(ItemId o, AgentId a) {
    in_memory_[cell(o, a)] = epoch_;
    ++memory_size_[static_cast<std::size_t>(o)];
    if (level_ == TraceLevel::Full) memory_order_[static_cast<std::size_t>(o)].push_back(a);
  }
  void remember_top(ItemId o, AgentId a) {
    in_memory_[cell(o, a)] = epoch_;
    ++memory_size_[static_cast<std::size_t>(o)];
    if (level_ == TraceLevel::Full) {
      auto& mem = memory_order_[static_cast<std::size_t>(o)];
      mem.insert(mem.begin(), a);
    }
  }

  // Forget every item memory and every agent's blocked set.
  void reset() {
    ++epoch_;
    std::fill(memory_size_.begin(), memory_size_.end(), 0);
    for (auto& m : memory_order_) m.clear();
  }

  StateSnapshot snapshot() const {
    StateSnapshot s;
    s.pending.assign(pending_.begin(), pending_.end());
    s.item_of = item_of_;
    s.memories.resize(n_);
    if (!memory_order_.empty()) s.memories = memory_order_;
    return s;
  }

  Matching matching() const { return Matching(item_of_); }

 private:
  std::size_t cell(int row, int col) const {
    return static_cast<std::size_t>(row) * n_ + static_cast<std::size_t>(col);
  }

  std::size_t n_ = 0;
  Discipline discipline_ = Discipline::Stack;
  TraceLevel level_ = TraceLevel::None;
  std::vector<AgentId> holder_;
  std::vector<ItemId> item_of_;
  std::vector<std::uint32_t> blocked_;
  std::vector<std::uint32_t> in_memory_;
  std::vector<int> memory_size_;
  std::vector<std::vector<AgentId>> memory_order_;
  std::uint32_t epoch_ = 1;
  std::deque<AgentId> pending_;
};

void check_order(const Profile& profile, const AgentOrder& order) {
  if (order.size() != profile.size()) {
    throw Error(ErrorKind::InvalidInstance, "agent order length does not match profile size");
  }
}

void record(EngineResult& result, TraceLevel level, const TraceEvent& ev, const Machine& m) {
  if (level == TraceLevel::None) return;
  result.trace.push_back(ev);
  if (level == TraceLevel::Full) result.snapshots.push_back(m.snapshot());
}

EngineResult run_engine_with(Machine& m, const Profile& profile, const AgentOrder& order,
                             EngineConfig config, TraceLevel level) {
  check_order(profile, order);
  const std::size_t n = profile.size();
  const std::size_t bound = config.memory == Memory::Permanent ? n * n : n * n * n;
  m.init(n, config.discipline, level);
  m.enqueue_initial(order);

  EngineResult result;
  while (m.has_pending()) {
    const AgentId j = m.pop();
    const ItemId o = m.best_unblocked(profile.agent(j), j);
    if (++result.proposal_count > bound) {
      throw std::logic_error(config.code() + " exceeded its proposal bound of " +
                             std::to_string(bound));
    }
    TraceEvent ev{j, o, Outcome::Rejected, -1, false};
    const AgentId h = m.holder(o);

    if (h < 0) {
      m.assign(j, o);
      ev.outcome = Outcome::MatchedUnassigned;
      if (config.memory == Memory::Permanent) {
        m.remember_bottom(o, j);
      } else {
        m.reset();
        ev.reset_occurred = true;
        ++result.reset_count;
      }
    } else if (m.memory_empty(o)) {
      // Only reachable right after a reset: the item prefers the newcomer.
      m.assign(j, o);
      m.remember_bottom(o, j);
      m.remember_bottom(o, h);
      m.requeue(h);
      ev.outcome = Outcome::DisplacedHolder;
      ev.displaced = h;
    } else if (config.acceptance == Acceptance::AcceptFirst || m.remembers(o, j)) {
      if (!m.remembers(o, j)) m.remember_bottom(o, j);
      m.block(j, o);
      m.requeue(j);
    } else {
      m.assign(j, o);
      m.remember_top(o, j);
      m.block(h, o);
      m.requeue(h);
      ev.outcome = Outcome::DisplacedHolder;
      ev.displaced = h;
    }
    record(result, level, ev, m);
  }
  result.matching = m.matching();
  return result;
}

}  // namespace

EngineResult run_engine(const Profile& profile, const AgentOrder& order, EngineConfig config,
                        TraceLevel level) {
  Machine m;
  return run_engine_with(m, profile, order, config, level);
}

Matching engine_matching(const Profile& profile, const AgentOrder& order, EngineConfig config) {
  thread_local Machine m;
  return run_engine_with(m, profile, order, config, TraceLevel::None).matching;
}

EngineResult run_gale_shapley(const Profile& profile, const AgentOrder& order, TraceLevel level) {
  if (!profile.two_sided()) {
    throw Error(ErrorKind::Mode, "Gale-Shapley needs item preferences (@items section)");
  }
  check_order(profile, order);
  const std::size_t n = profile.size();
  Machine m;
  m.init(n, Discipline::Queue, level);
  m.enqueue_initial(order);

  EngineResult result;
  while (m.has_pending()) {
    const AgentId j = m.pop();
    const ItemId o = m.best_unblocked(profile.agent(j), j);
    if (++result.proposal_count > n * n) {
      throw std::logic_error("Gale-Shapley exceeded n^2 proposals");
    }
    TraceEvent ev{j, o, Outcome::Rejected, -1, false};
    const AgentId h = m.holder(o);
    if (h < 0) {
      m.assign(j, o);
      ev.outcome = Outcome::MatchedUnassigned;
    } else if (profile.item(o).prefers(j, h)) {
      m.assign(j, o);
      m.block(h, o);
      m.requeue(h);
      ev.outcome = Outcome::DisplacedHolder;
      ev.displaced = h;
    } else {
      m.block(j, o);
      m.requeue(j);
    }
    record(result, level, ev, m);
  }
  result.matching = m.matching();
  return result;
}

Matching run_boston_two_sided(const Profile& profile, const AgentOrder& order, BostonMode mode) {
  if (!profile.two_sided()) {
    throw Error(ErrorKind::Mode, "Boston mechanism needs item preferences (@items section)");
  }
  check_order(profile, order);
  const std::size_t n = profile.size();
  std::vector<ItemId> item_of(n, -1);
  std::vector<bool> taken(n, false);

  if (mode == BostonMode::Sequential) {
    for (AgentId a : order.agents()) {
      const auto& pref = profile.agent(a);
      for (std::size_t r = 0; r < n; ++r) {
        const ItemId o = pref.at(r);
        if (!taken[static_cast<std::size_t>(o)]) {
          taken[static_cast<std::size_t>(o)] = true;
          item_of[static_cast<std::size_t>(a)] = o;
          break;
        }
      }
    }
    return Matching(std::move(item_of));
  }

  for (std::size_t round = 0; round < n; ++round) {
    std::vector<AgentId> best(n, -1);
    for (AgentId a : order.agents()) {
      if (item_of[static_cast<std::size_t>(a)] >= 0) continue;
      const ItemId o = profile.agent(a).at(round);
      if (taken[static_cast<std::size_t>(o)]) continue;
      AgentId& cur = best[static_cast<std::size_t>(o)];
      if (cur < 0 || profile.item(o).prefers(a, cur)) cur = a;
    }
    for (std::size_t o = 0; o < n; ++o) {
      if (best[o] < 0) continue;
      taken[o] = true;
      item_of[static_cast<std::size_t>(best[o])] = static_cast<ItemId>(o);
    }
  }
  return Matching(std::move(item_of));
}

Matching replay_trace(std::size_t n, const std::vector<TraceEvent>& trace) {
  std::vector<AgentId> holder(n, -1);
  std::vector<ItemId> item_of(n, -1);
  std::size_t k = 0;
  for (const auto& ev : trace) {
    ++k;
    auto fail = [&](const char* why) {
      throw std::logic_error("replay event " + std::to_string(k) + ": " + why);
    };
    if (ev.proposer < 0 || static_cast<std::size_t>(ev.proposer) >= n || ev.item < 0 ||
        static_cast<std::size_t>(ev.item) >= n) {
      fail("index out of range");
    }
    const auto j = static_cast<std::size_t>(ev.proposer);
    const auto o = static_cast<std::size_t>(ev.item);
    if (item_of[j] >= 0) fail("proposer already holds an item");
    switch (ev.outcome) {
      case Outcome::MatchedUnassigned:
        if (holder[o] >= 0) fail("item was not unassigned");
        holder[o] = ev.proposer;
        item_of[j] = ev.item;
        break;
      case Outcome::DisplacedHolder:
        if (holder[o] < 0 || holder[o] != ev.displaced) fail("displaced agent was not the holder");
        item_of[static_cast<std::size_t>(holder[o])] = -1;
        holder[o] = ev.proposer;
        item_of[j] = ev.item;
        break;
      case Outcome::Rejected:
        if (holder[o] < 0) fail("rejected by an unassigned item");
        break;
    }
  }
  if (std::find(item_of.begin(), item_of.end(), -1) != item_of.end()) {
    throw std::logic_error("replay ends with unmatched agents");
  }
  return Matching(std::move(item_of));
}

std::string format_trace(const EngineResult& result, const Labels& labels) {
  if (result.snapshots.size() != result.trace.size()) {
    throw std::logic_error("format_trace needs a result recorded with TraceLevel::Full");
  }
  auto agent = [&](AgentId a) { return labels.agents[static_cast<std::size_t>(a)]; };
  auto item = [&](ItemId i) { return labels.items[static_cast<std::size_t>(i)]; };
  std::ostringstream out;
  for (std::size_t k = 0; k < result.trace.size(); ++k) {
    const auto& ev = result.trace[k];
    const auto& snap = result.snapshots[k];
    out << (k + 1) << " | " << agent(ev.proposer) << " -> " << item(ev.item) << " | ";
    switch (ev.outcome) {
      case Outcome::MatchedUnassigned:
        out << (ev.reset_occurred ? "matched (reset)" : "matched");
        break;
      case Outcome::DisplacedHolder: out << "displaced " << agent(ev.displaced); break;
      case Outcome::Rejected: out << "rejected"; break;
    }
    out << " | ";
    if (snap.pending.empty()) out << '-';
    for (std::size_t p = 0; p < snap.pending.size(); ++p) {
      out << (p ? " " : "") << agent(snap.pending[p]);
    }
    out << " | ";
    bool any = false;
    for (std::size_t a = 0; a < snap.item_of.size(); ++a) {
      if (snap.item_of[a] < 0) continue;
      out << (any ? " " : "") << agent(static_cast<AgentId>(a)) << ':' << item(snap.item_of[a]);
      any = true;
    }
    if (!any) out << '-';
    out << " | ";
    any = false;
    for (std::size_t o = 0; o < snap.memories.size(); ++o) {
      if (snap.memories[o].empty()) continue;
      out << (any ? " " : "") << item(static_cast<ItemId>(o)) << ':';
      for (std::size_t r = 0; r < snap.memories[o].size(); ++r) {
        out << (r ? ">" : "") << agent(snap.memories[o][r]);
      }
      any = true;
    }
    if (!any) out << '-';
    out << '\n';
  }
  return out.str();
}

}  // namespace propmatch
