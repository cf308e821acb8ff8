#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "propmatch/axioms.hpp"
#include "propmatch/classic.hpp"
#include "propmatch/engine.hpp"
#include "propmatch/io.hpp"
#include "propmatch/lottery.hpp"
#include "propmatch/mechanism.hpp"
#include "propmatch/welfare.hpp"

namespace py = pybind11;
using namespace propmatch;

namespace {

AgentOrder order_or_identity(const std::optional<std::vector<AgentId>>& order, std::size_t n) {
  return order ? AgentOrder(*order) : AgentOrder::identity(n);
}

py::list to_fractions(const FractionalAssignment& p) {
  const auto fraction = py::module_::import("fractions").attr("Fraction");
  py::list rows;
  for (std::size_t a = 0; a < p.size(); ++a) {
    py::list row;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto& q = p.at(static_cast<AgentId>(a), static_cast<ItemId>(i));
      row.append(fraction(py::str(q.get_str())));
    }
    rows.append(row);
  }
  return rows;
}

FractionalAssignment from_fractions(const std::vector<std::vector<py::object>>& rows) {
  FractionalAssignment p(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a].size() != rows.size()) throw Error(ErrorKind::InvalidInstance, "matrix is not square");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rational q(py::str(rows[a][i]).cast<std::string>());
      q.canonicalize();
      p.at(static_cast<AgentId>(a), static_cast<ItemId>(i)) = q;
    }
  }
  return p;
}

std::vector<ItemId> items_of(const Matching& m) {
  std::vector<ItemId> out;
  for (std::size_t a = 0; a < m.size(); ++a) out.push_back(m.item_of(static_cast<AgentId>(a)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-sided matching by proposals: engines, lotteries, axioms, welfare.";

  static py::exception<Error> error(m, "PropmatchError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Profile>(m, "Profile")
      .def(py::init(&Profile::from_rankings), py::arg("rankings"),
           "Agent rankings as item indices, most preferred first.")
      .def_static("parse", [](const std::string& text) { return parse_profile(text).profile; })
      .def_property_readonly("size", &Profile::size)
      .def("rankings",
           [](const Profile& p) {
             std::vector<std::vector<int>> out;
             for (const auto& pref : p.agent_prefs()) {
               std::vector<int> r;
               for (std::size_t k = 0; k < p.size(); ++k) r.push_back(pref.at(k));
               out.push_back(std::move(r));
             }
             return out;
           })
      .def("__str__", [](const Profile& p) { return format_profile(p); })
      .def("__eq__", [](const Profile& a, const Profile& b) { return a == b; });

  m.def(
      "run",
      [](const std::string& mechanism, const Profile& profile, std::optional<std::vector<AgentId>> order) {
        return items_of(Mechanism::parse(mechanism).run(profile, order_or_identity(order, profile.size())));
      },
      py::arg("mechanism"), py::arg("profile"), py::arg("order") = py::none(),
      "Item index per agent for a deterministic mechanism and initial order.");

  m.def(
      "run_engine",
      [](const std::string& code, const Profile& profile, std::optional<std::vector<AgentId>> order) {
        const auto r = run_engine(profile, order_or_identity(order, profile.size()), EngineConfig::from_code(code),
                                  TraceLevel::None);
        return py::make_tuple(items_of(r.matching), r.proposal_count);
      },
      py::arg("code"), py::arg("profile"), py::arg("order") = py::none(),
      "(matching, proposal count) for one of PFS ... TLQ.");

  m.def(
      "random_assignment",
      [](const std::string& mechanism, const Profile& profile) {
        return to_fractions(random_assignment(Mechanism::parse(mechanism), profile));
      },
      py::arg("mechanism"), py::arg("profile"), "Exact matrix of Fractions; rows are agents.");

  m.def("probabilistic_serial", [](const Profile& p) { return to_fractions(probabilistic_serial(p)); });

  m.def(
      "is_pareto_efficient",
      [](const std::vector<ItemId>& matching, const Profile& p) { return is_pareto_efficient(Matching(matching), p); },
      py::arg("matching"), py::arg("profile"));

  m.def(
      "is_ordinally_efficient",
      [](const std::vector<std::vector<py::object>>& rows, const Profile& p) {
        return is_ordinally_efficient(from_fractions(rows), p);
      },
      py::arg("matrix"), py::arg("profile"));

  m.def(
      "utilitarian_loss",
      [](const std::string& mechanism, std::size_t n, std::size_t profiles, std::uint64_t seed) {
        WelfareConfig cfg;
        cfg.profile_samples = profiles;
        cfg.seed = seed;
        const auto s = utilitarian_loss(Mechanism::parse(mechanism), n, cfg);
        return py::make_tuple(s.mean, s.std_error);
      },
      py::arg("mechanism"), py::arg("n"), py::arg("profiles") = 1000, py::arg("seed") = 1,
      "(mean, standard error) of normalized utilitarian loss over sampled profiles.");
}
