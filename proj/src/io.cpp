#include "propmatch/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

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

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + msg);
}

bool valid_token(std::string_view t) {
  return !t.empty() && t.find_first_of(",: \t#@") == std::string_view::npos;
}

// Items are indexed in natural name order: shorter names first, then
// lexicographic. Default names a..z, aa.. and numerals both sort correctly.
bool natural_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct RawLine {
  std::size_t line_no;
  std::string name;
  std::vector<std::string> entries;
};

RawLine split_pref_line(std::string_view line, std::size_t line_no) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) parse_fail(line_no, "expected '<name>: <x>,<y>,...'");
  RawLine raw{line_no, std::string(trim(line.substr(0, colon))), {}};
  if (!valid_token(raw.name)) parse_fail(line_no, "invalid name '" + raw.name + "'");
  const auto body = trim(line.substr(colon + 1));
  if (body.empty()) parse_fail(line_no, "empty preference list");
  for (auto tok : split(body, ',')) {
    if (!valid_token(tok)) parse_fail(line_no, "invalid entry '" + std::string(tok) + "'");
    raw.entries.emplace_back(tok);
  }
  return raw;
}

}  // namespace

Labels Labels::defaults(std::size_t n) {
  Labels l;
  for (std::size_t k = 0; k < n; ++k) {
    l.agents.push_back(default_agent_name(static_cast<AgentId>(k)));
    l.items.push_back(default_item_name(static_cast<ItemId>(k)));
  }
  return l;
}

AgentId Labels::agent_index(std::string_view name) const {
  auto it = std::find(agents.begin(), agents.end(), name);
  return it == agents.end() ? -1 : static_cast<AgentId>(it - agents.begin());
}

ItemId Labels::item_index(std::string_view name) const {
  auto it = std::find(items.begin(), items.end(), name);
  return it == items.end() ? -1 : static_cast<ItemId>(it - items.begin());
}

LabeledProfile parse_profile(std::string_view text) {
  std::vector<RawLine> agent_lines;
  std::vector<RawLine> item_lines;
  bool in_items = false;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    if (line == "@items") {
      if (in_items) parse_fail(line_no, "duplicate @items section");
      in_items = true;
      continue;
    }
    (in_items ? item_lines : agent_lines).push_back(split_pref_line(line, line_no));
  }
  if (agent_lines.empty()) throw Error(ErrorKind::Parse, "profile has no agent lines");

  LabeledProfile out;
  const std::size_t n = agent_lines.size();
  for (const auto& raw : agent_lines) {
    if (std::find(out.labels.agents.begin(), out.labels.agents.end(), raw.name) !=
        out.labels.agents.end()) {
      parse_fail(raw.line_no, "duplicate agent '" + raw.name + "'");
    }
    out.labels.agents.push_back(raw.name);
  }
  out.labels.items = agent_lines.front().entries;
  std::sort(out.labels.items.begin(), out.labels.items.end(), natural_less);
  if (out.labels.items.size() != n) {
    parse_fail(agent_lines.front().line_no,
               std::to_string(n) + " agents but " + std::to_string(out.labels.items.size()) +
                   " items");
  }

  auto convert = [](const RawLine& raw, std::size_t expected,
                    const std::vector<std::string>& universe, const char* what) {
    if (raw.entries.size() != expected) {
      parse_fail(raw.line_no, "expected " + std::to_string(expected) + " " + what + "s, got " +
                                  std::to_string(raw.entries.size()));
    }
    std::vector<int> ranking;
    std::set<std::string> seen;
    for (const auto& e : raw.entries) {
      if (!seen.insert(e).second) parse_fail(raw.line_no, std::string("duplicate ") + what + " '" + e + "'");
      auto it = std::find(universe.begin(), universe.end(), e);
      if (it == universe.end()) parse_fail(raw.line_no, std::string("unknown ") + what + " '" + e + "'");
      ranking.push_back(static_cast<int>(it - universe.begin()));
    }
    return PreferenceOrder(std::move(ranking));
  };

  std::vector<PreferenceOrder> agent_prefs;
  for (const auto& raw : agent_lines) {
    agent_prefs.push_back(convert(raw, n, out.labels.items, "item"));
  }

  std::optional<std::vector<PreferenceOrder>> item_prefs;
  if (in_items) {
    if (item_lines.size() != n) {
      throw Error(ErrorKind::Parse, "@items section has " + std::to_string(item_lines.size()) +
                                        " lines, expected " + std::to_string(n));
    }
    std::vector<std::optional<PreferenceOrder>> slots(n);
    for (const auto& raw : item_lines) {
      const ItemId idx = out.labels.item_index(raw.name);
      if (idx < 0) parse_fail(raw.line_no, "unknown item '" + raw.name + "'");
      if (slots[static_cast<std::size_t>(idx)]) parse_fail(raw.line_no, "duplicate item '" + raw.name + "'");
      slots[static_cast<std::size_t>(idx)] = convert(raw, n, out.labels.agents, "agent");
    }
    item_prefs.emplace();
    for (auto& s : slots) item_prefs->push_back(std::move(*s));
  }
  out.profile = Profile(std::move(agent_prefs), std::move(item_prefs));
  return out;
}

LabeledProfile read_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open profile file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

std::string format_profile(const Profile& p, const Labels& labels) {
  std::ostringstream out;
  const std::size_t n = p.size();
  auto emit = [&](const std::string& name, const PreferenceOrder& pref,
                  const std::vector<std::string>& names) {
    out << name << ": ";
    for (std::size_t r = 0; r < n; ++r) {
      if (r) out << ',';
      out << names[static_cast<std::size_t>(pref.at(r))];
    }
    out << '\n';
  };
  for (std::size_t a = 0; a < n; ++a) {
    emit(labels.agents[a], p.agent(static_cast<AgentId>(a)), labels.items);
  }
  if (p.two_sided()) {
    out << "@items\n";
    for (std::size_t i = 0; i < n; ++i) {
      emit(labels.items[i], p.item(static_cast<ItemId>(i)), labels.agents);
    }
  }
  return out.str();
}

std::string format_profile(const Profile& p) { return format_profile(p, Labels::defaults(p.size())); }

std::string format_matching(const Matching& m, const Labels& labels) {
  std::ostringstream out;
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (a) out << ' ';
    out << labels.agents[a] << ':'
        << labels.items[static_cast<std::size_t>(m.item_of(static_cast<AgentId>(a)))];
  }
  return out.str();
}

std::string format_matrix(const FractionalAssignment& p, const Labels& labels, bool header) {
  std::ostringstream out;
  const std::size_t n = p.size();
  if (header) {
    out << '#';
    for (const auto& item : labels.items) out << ' ' << item;
    out << '\n';
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i) out << ' ';
      out << p.at(static_cast<AgentId>(a), static_cast<ItemId>(i)).get_str();
    }
    out << '\n';
  }
  return out.str();
}

FractionalAssignment parse_matrix(std::string_view text) {
  std::vector<Rational> entries;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::size_t width = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream in{std::string(line)};
    std::string tok;
    std::size_t cols = 0;
    while (in >> tok) {
      Rational q;
      if (q.set_str(tok, 10) != 0) parse_fail(line_no, "bad fraction '" + tok + "'");
      q.canonicalize();
      entries.push_back(q);
      ++cols;
    }
    if (rows == 0) width = cols;
    if (cols != width) parse_fail(line_no, "ragged matrix row");
    ++rows;
  }
  if (rows != width) throw Error(ErrorKind::Parse, "matrix is not square");
  return FractionalAssignment(rows, std::move(entries));
}

AgentOrder parse_order(std::string_view text, const Labels& labels) {
  std::vector<AgentId> order;
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::string tok;
  while (in >> tok) {
    const AgentId a = labels.agent_index(tok);
    if (a < 0) throw Error(ErrorKind::Parse, "order names unknown agent '" + tok + "'");
    order.push_back(a);
  }
  if (order.size() != labels.agents.size()) {
    throw Error(ErrorKind::Parse, "order must list all " + std::to_string(labels.agents.size()) +
                                      " agents");
  }
  try {
    return AgentOrder(std::move(order));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, std::string("order: ") + e.what());
  }
}

}  // namespace propmatch
