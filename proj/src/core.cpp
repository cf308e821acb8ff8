#include "propmatch/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace propmatch {

namespace {

std::vector<int> inverse_permutation(const std::vector<int>& perm, const char* what) {
  std::vector<int> inv(perm.size(), -1);
  for (std::size_t r = 0; r < perm.size(); ++r) {
    const int x = perm[r];
    if (x < 0 || static_cast<std::size_t>(x) >= perm.size()) {
      throw Error(ErrorKind::InvalidInstance,
                  std::string(what) + ": index " + std::to_string(x) + " out of range");
    }
    if (inv[static_cast<std::size_t>(x)] != -1) {
      throw Error(ErrorKind::InvalidInstance,
                  std::string(what) + ": duplicate index " + std::to_string(x));
    }
    inv[static_cast<std::size_t>(x)] = static_cast<int>(r);
  }
  return inv;
}

}  // namespace

PreferenceOrder::PreferenceOrder(std::vector<int> ranking)
    : ranking_(std::move(ranking)), rank_(inverse_permutation(ranking_, "preference order")) {}

Profile::Profile(std::vector<PreferenceOrder> agent_prefs,
                 std::optional<std::vector<PreferenceOrder>> item_prefs)
    : agent_prefs_(std::move(agent_prefs)), item_prefs_(std::move(item_prefs)) {
  const std::size_t n = agent_prefs_.size();
  if (n == 0) throw Error(ErrorKind::InvalidInstance, "profile has no agents");
  for (const auto& p : agent_prefs_) {
    if (p.size() != n) {
      throw Error(ErrorKind::InvalidInstance,
                  "agent preference ranks " + std::to_string(p.size()) + " items, expected " +
                      std::to_string(n));
    }
  }
  if (item_prefs_) {
    if (item_prefs_->size() != n) {
      throw Error(ErrorKind::InvalidInstance, "item preferences must cover all n items");
    }
    for (const auto& p : *item_prefs_) {
      if (p.size() != n) {
        throw Error(ErrorKind::InvalidInstance, "item preference must rank all n agents");
      }
    }
  }
}

Profile Profile::from_rankings(const std::vector<std::vector<int>>& rankings) {
  std::vector<PreferenceOrder> prefs;
  prefs.reserve(rankings.size());
  for (const auto& r : rankings) prefs.emplace_back(r);
  return Profile(std::move(prefs));
}

Profile Profile::with_agent(AgentId a, PreferenceOrder pref) const {
  Profile copy = *this;
  if (pref.size() != size()) {
    throw Error(ErrorKind::InvalidInstance, "replacement preference has wrong length");
  }
  copy.agent_prefs_[static_cast<std::size_t>(a)] = std::move(pref);
  return copy;
}

Profile Profile::one_sided() const {
  Profile copy = *this;
  copy.item_prefs_.reset();
  return copy;
}

AgentOrder::AgentOrder(std::vector<AgentId> order) : order_(std::move(order)) {
  inverse_permutation(order_, "agent order");
}

AgentOrder AgentOrder::identity(std::size_t n) {
  std::vector<AgentId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return AgentOrder(std::move(v));
}

std::size_t AgentOrder::position_of(AgentId a) const {
  auto it = std::find(order_.begin(), order_.end(), a);
  return static_cast<std::size_t>(it - order_.begin());
}

Matching::Matching(std::vector<ItemId> item_of) : item_of_(std::move(item_of)) {
  inverse_permutation(item_of_, "matching");
}

std::vector<AgentId> Matching::agent_of() const {
  std::vector<AgentId> inv(item_of_.size());
  for (std::size_t a = 0; a < item_of_.size(); ++a) {
    inv[static_cast<std::size_t>(item_of_[a])] = static_cast<AgentId>(a);
  }
  return inv;
}

FractionalAssignment::FractionalAssignment(std::size_t n) : n_(n), p_(n * n) {}

FractionalAssignment::FractionalAssignment(std::size_t n, std::vector<Rational> entries)
    : n_(n), p_(std::move(entries)) {
  if (p_.size() != n * n) {
    throw Error(ErrorKind::InvalidInstance, "fractional assignment needs n*n entries");
  }
  for (auto& x : p_) x.canonicalize();
}

FractionalAssignment FractionalAssignment::from_counts(std::size_t n,
                                                       std::span<const std::uint64_t> counts,
                                                       std::uint64_t total) {
  FractionalAssignment out(n);
  const mpz_class den(std::to_string(total));
  for (std::size_t k = 0; k < n * n; ++k) {
    out.p_[k] = Rational(mpz_class(std::to_string(counts[k])), den);
    out.p_[k].canonicalize();
  }
  return out;
}

std::vector<Rational> FractionalAssignment::row(AgentId a) const {
  const auto begin = p_.begin() + static_cast<std::ptrdiff_t>(index(a, 0));
  return {begin, begin + static_cast<std::ptrdiff_t>(n_)};
}

bool FractionalAssignment::is_doubly_stochastic() const {
  try {
    check_doubly_stochastic();
  } catch (const std::logic_error&) {
    return false;
  }
  return true;
}

void FractionalAssignment::check_doubly_stochastic() const {
  for (std::size_t i = 0; i < n_; ++i) {
    Rational row_sum = 0;
    Rational col_sum = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      const Rational& x = p_[i * n_ + j];
      if (x < 0 || x > 1) {
        throw std::logic_error("entry (" + std::to_string(i) + "," + std::to_string(j) +
                               ") outside [0,1]");
      }
      row_sum += x;
      col_sum += p_[j * n_ + i];
    }
    if (row_sum != 1) throw std::logic_error("row " + std::to_string(i) + " does not sum to 1");
    if (col_sum != 1) {
      throw std::logic_error("column " + std::to_string(i) + " does not sum to 1");
    }
  }
}

FractionalAssignment proportional_assignment(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInstance, "proportional assignment needs n >= 1");
  FractionalAssignment out(n);
  const Rational share(1, static_cast<unsigned long>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) out.at(static_cast<AgentId>(a), static_cast<ItemId>(i)) = share;
  }
  return out;
}

FractionalAssignment matching_to_assignment(const Matching& m) {
  FractionalAssignment out(m.size());
  for (std::size_t a = 0; a < m.size(); ++a) {
    out.at(static_cast<AgentId>(a), m.item_of(static_cast<AgentId>(a))) = 1;
  }
  return out;
}

std::string default_agent_name(AgentId a) { return std::to_string(a + 1); }

std::string default_item_name(ItemId i) {
  // bijective base 26: a..z, aa..az, ba..
  std::string s;
  int v = i + 1;
  while (v > 0) {
    --v;
    s.insert(s.begin(), static_cast<char>('a' + v % 26));
    v /= 26;
  }
  return s;
}

std::string format_matching(const Matching& m) {
  std::ostringstream out;
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (a) out << ' ';
    out << default_agent_name(static_cast<AgentId>(a)) << ':'
        << default_item_name(m.item_of(static_cast<AgentId>(a)));
  }
  return out.str();
}

}  // namespace propmatch
