#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "netdecomp/decomposition.hpp"
#include "netdecomp/diameter_refine.hpp"
#include "netdecomp/ledger.hpp"
#include "netdecomp/strong_carving.hpp"
#include "netdecomp/verify.hpp"
#include "netdecomp/weak_carving.hpp"

namespace netdecomp {

using json = nlohmann::ordered_json;

inline json to_json(const RoundLedger& ledger) {
  json breakdown = json::array();
  for (const auto& e : ledger.breakdown()) breakdown.push_back({{"label", e.label}, {"rounds", e.rounds}});
  return {{"total", ledger.total()}, {"breakdown", std::move(breakdown)}};
}

inline RoundLedger ledger_from_json(const json& j) {
  RoundLedger ledger;
  for (const auto& e : j.at("breakdown")) ledger.charge(e.at("label").get<std::string>(), e.at("rounds").get<std::uint64_t>());
  if (ledger.total() != j.at("total").get<std::uint64_t>()) throw std::runtime_error("ledger total does not match its breakdown");
  return ledger;
}

inline json to_json(const WeakCarving& w) {
  json clusters = json::array();
  for (std::size_t i = 0; i < w.clusters.size(); ++i) {
    const auto& c = w.clusters[i];
    json parent = json::array();
    for (auto [v, p] : c.tree.parent) parent.push_back({v, p});
    clusters.push_back({{"id", i},
                        {"nodes", c.nodes},
                        {"steiner", {{"root", c.tree.root}, {"parent", std::move(parent)}, {"terminals", c.tree.terminals}}}});
  }
  return {{"kind", "weak-carving"},
          {"declared_depth", w.declared_depth},
          {"declared_congestion", w.declared_congestion},
          {"clusters", std::move(clusters)},
          {"dead", w.dead}};
}

inline DeadCause dead_cause_from_string(const std::string& s) {
  if (s == "black-box") return DeadCause::BlackBox;
  if (s == "boundary") return DeadCause::Boundary;
  if (s == "separator") return DeadCause::Separator;
  if (s == "halo") return DeadCause::Halo;
  throw std::runtime_error("unknown dead cause: " + s);
}

inline json to_json(const StrongCarving& c) {
  json clusters = json::array();
  for (std::size_t i = 0; i < c.clusters.size(); ++i) {
    const auto& cl = c.clusters[i];
    clusters.push_back({{"id", i}, {"center", cl.center}, {"radius", cl.radius}, {"nodes", cl.nodes}});
  }
  json dead = json::array();
  for (const auto& d : c.dead) dead.push_back({{"node", d.node}, {"cause", to_string(d.cause)}});
  return {{"kind", "carving"},
          {"clusters", std::move(clusters)},
          {"dead", std::move(dead)},
          {"stats",
           {{"rounds", c.ledger.total()},
            {"black_box_depth", c.black_box_depth},
            {"growth_cap", c.growth_cap},
            {"d_bound", c.diameter_bound}}},
          {"ledger", to_json(c.ledger)}};
}

inline StrongCarving strong_carving_from_json(const json& j) {
  StrongCarving c;
  for (const auto& cl : j.at("clusters")) {
    StrongCluster s;
    s.nodes = cl.at("nodes").get<std::vector<NodeId>>();
    s.center = cl.value("center", s.nodes.empty() ? NodeId{0} : s.nodes.front());
    s.radius = cl.value("radius", std::uint32_t{0});
    c.clusters.push_back(std::move(s));
  }
  for (const auto& d : j.at("dead")) {
    c.dead.push_back({d.at("node").get<NodeId>(), dead_cause_from_string(d.at("cause").get<std::string>())});
  }
  if (j.contains("stats")) {
    const auto& st = j.at("stats");
    c.black_box_depth = st.value("black_box_depth", std::uint32_t{0});
    c.growth_cap = st.value("growth_cap", std::uint32_t{0});
    c.diameter_bound = st.value("d_bound", std::uint64_t{0});
  }
  if (j.contains("ledger")) c.ledger = ledger_from_json(j.at("ledger"));
  return c;
}

inline json to_json(const DecompositionResult& r, std::uint64_t max_diameter) {
  const auto& d = r.decomposition;
  json clusters = json::array();
  for (const auto& c : d.clusters) {
    clusters.push_back({{"id", c.id}, {"color", c.color}, {"center", c.center}, {"nodes", c.nodes}});
  }
  return {{"colors", d.colors},
          {"clusters", std::move(clusters)},
          {"stats",
           {{"rounds", r.ledger.total()},
            {"max_diameter", max_diameter},
            {"n", d.num_nodes},
            {"d_bound", r.diameter_bound}}},
          {"ledger", to_json(r.ledger)}};
}

inline NetworkDecomposition decomposition_from_json(const json& j) {
  NetworkDecomposition d;
  d.colors = j.at("colors").get<std::uint32_t>();
  if (j.contains("stats")) d.num_nodes = j.at("stats").value("n", std::size_t{0});
  for (const auto& c : j.at("clusters")) {
    ColoredCluster cc;
    cc.id = c.at("id").get<std::uint32_t>();
    cc.color = c.at("color").get<std::uint32_t>();
    cc.nodes = c.at("nodes").get<std::vector<NodeId>>();
    cc.center = c.value("center", cc.nodes.empty() ? NodeId{0} : cc.nodes.front());
    d.clusters.push_back(std::move(cc));
  }
  return d;
}

inline json to_json(const CutOrClusterOutcome& outcome, std::uint32_t measured_diameter) {
  if (const auto* cut = std::get_if<BalancedCut>(&outcome)) {
    return {{"variant", "cut"}, {"v1", cut->side1}, {"v2", cut->side2}, {"separator", cut->separator}};
  }
  const auto& comp = std::get<LargeComponent>(outcome);
  return {{"variant", "component"},
          {"u", comp.nodes},
          {"halo", comp.halo},
          {"center", comp.center},
          {"radius", comp.radius},
          {"diameter", measured_diameter}};
}

inline json to_json(const std::vector<Violation>& violations) {
  json out = json::array();
  for (const auto& v : violations) {
    out.push_back({{"kind", to_string(v.kind)},
                   {"witness", v.witness},
                   {"measured", v.measured},
                   {"bound", v.bound},
                   {"detail", v.detail}});
  }
  return out;
}

}  // namespace netdecomp
