#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "transclab/algebra/serialize.hpp"
#include "transclab/error.hpp"
#include "transclab/gamma/bounds.hpp"
#include "transclab/gamma/gamma_value.hpp"

namespace transclab::gamma {

/// Graph of a tensor network with internal tensors and degree-one external
/// (physical) vertices.
///
/// Only internal vertices are listed. An edge incident to two internal vertices
/// is a bond; an edge incident to exactly one internal vertex ends at an
/// external vertex and must have dimension d. N, delta and D are recomputed from
/// the edge lists and never stored.
class TensorNetworkGraph {
 public:
  struct Vertex {
    std::vector<std::string> edges;
  };

  TensorNetworkGraph(unsigned d, std::size_t external, std::vector<Vertex> internal,
                     std::map<std::string, unsigned> edge_dims)
      : d_(d), external_(external), internal_(std::move(internal)), edge_dims_(std::move(edge_dims)) {
    validate();
  }

  unsigned d() const { return d_; }
  std::size_t external_count() const { return external_; }
  const std::vector<Vertex>& internal() const { return internal_; }
  const std::map<std::string, unsigned>& edge_dims() const { return edge_dims_; }

  /// N = |V_i|.
  std::size_t internal_count() const { return internal_.size(); }

  /// delta = maximal internal degree.
  std::size_t max_degree() const {
    std::size_t m = 0;
    for (const auto& v : internal_) m = std::max(m, v.edges.size());
    return m;
  }

  /// D = maximal edge dimension.
  unsigned max_bond_dim() const {
    unsigned m = 0;
    for (const auto& [id, dim] : edge_dims_) m = std::max(m, dim);
    return m;
  }

 private:
  void validate() const {
    if (d_ < 1) throw DomainError("physical dimension d must be >= 1");
    std::map<std::string, unsigned> incidences;
    for (std::size_t v = 0; v < internal_.size(); ++v) {
      std::set<std::string> local;
      if (internal_[v].edges.empty()) throw DomainError("internal vertex " + std::to_string(v) + " has no edges");
      for (const auto& e : internal_[v].edges) {
        if (!edge_dims_.count(e)) throw DomainError("edge '" + e + "' has no dimension");
        if (!local.insert(e).second) throw DomainError("edge '" + e + "' listed twice at vertex " + std::to_string(v));
        ++incidences[e];
      }
    }
    std::size_t external_edges = 0;
    for (const auto& [e, dim] : edge_dims_) {
      if (dim < 1) throw DomainError("edge '" + e + "' has dimension 0");
      auto it = incidences.find(e);
      if (it == incidences.end()) throw DomainError("dangling edge '" + e + "' touches no internal vertex");
      if (it->second > 2) throw DomainError("edge '" + e + "' has more than two endpoints");
      if (it->second == 1) {
        ++external_edges;
        if (dim != d_)
          throw DomainError("external edge '" + e + "' has dimension " + std::to_string(dim) + " != d = " + std::to_string(d_));
      }
    }
    if (external_edges != external_)
      throw DomainError("graph has " + std::to_string(external_edges) + " external edges but declares " +
                        std::to_string(external_) + " external vertices of degree one");
  }

  unsigned d_;
  std::size_t external_;
  std::vector<Vertex> internal_;
  std::map<std::string, unsigned> edge_dims_;
};

/// {"d":…, "external":n, "internal":[{"edges":[ids]}…], "edge_dims":{id:dim}}
inline TensorNetworkGraph graph_from_json(const json& v) {
  try {
    auto edge_id = [](const json& e) { return e.is_string() ? e.get<std::string>() : e.dump(); };
    std::vector<TensorNetworkGraph::Vertex> internal;
    for (const auto& vert : v.at("internal")) {
      TensorNetworkGraph::Vertex x;
      for (const auto& e : vert.at("edges")) x.edges.push_back(edge_id(e));
      internal.push_back(std::move(x));
    }
    std::map<std::string, unsigned> dims;
    for (const auto& [id, dim] : v.at("edge_dims").items()) dims.emplace(id, dim.get<unsigned>());
    return TensorNetworkGraph(v.at("d").get<unsigned>(), v.at("external").get<std::size_t>(), std::move(internal),
                              std::move(dims));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed tensor network: ") + e.what());
  }
}

inline json to_json(const TensorNetworkGraph& g) {
  json internal = json::array();
  for (const auto& v : g.internal()) internal.push_back({{"edges", v.edges}});
  return {{"d", g.d()}, {"external", g.external_count()}, {"internal", internal}, {"edge_dims", g.edge_dims()}};
}

/// Network of a circuit: one degree-4 vertex per two-site gate, 2n external legs.
inline TensorNetworkGraph circuit_network(std::size_t sites, const std::vector<std::pair<std::size_t, std::size_t>>& gates,
                                          unsigned d) {
  std::vector<std::string> wire(sites);
  std::map<std::string, unsigned> dims;
  for (std::size_t s = 0; s < sites; ++s) {
    wire[s] = "in" + std::to_string(s);
    dims[wire[s]] = d;
  }
  std::vector<TensorNetworkGraph::Vertex> internal;
  std::set<std::size_t> touched;
  for (std::size_t g = 0; g < gates.size(); ++g) {
    auto [a, b] = gates[g];
    if (a >= sites || b >= sites || a == b) throw DomainError("gate sites out of range or equal");
    std::string oa = "g" + std::to_string(g) + "." + std::to_string(a);
    std::string ob = "g" + std::to_string(g) + "." + std::to_string(b);
    internal.push_back({{wire[a], wire[b], oa, ob}});
    dims[oa] = d;
    dims[ob] = d;
    wire[a] = oa;
    wire[b] = ob;
    touched.insert(a);
    touched.insert(b);
  }
  if (touched.size() != sites) throw DomainError("every site must be touched by some gate");
  return TensorNetworkGraph(d, 2 * sites, std::move(internal), std::move(dims));
}

/// Open-boundary matrix product state on `sites` sites with bond dimension D.
inline TensorNetworkGraph mps_network(std::size_t sites, unsigned d, unsigned bond) {
  std::vector<TensorNetworkGraph::Vertex> internal(sites);
  std::map<std::string, unsigned> dims;
  for (std::size_t s = 0; s < sites; ++s) {
    std::string phys = "p" + std::to_string(s);
    dims[phys] = d;
    internal[s].edges.push_back(phys);
    if (s + 1 < sites) {
      std::string b = "b" + std::to_string(s);
      dims[b] = bond;
      internal[s].edges.push_back(b);
      internal[s + 1].edges.push_back(b);
    }
  }
  return TensorNetworkGraph(d, sites, std::move(internal), std::move(dims));
}

struct ParameterCount {
  mpz_class coarse;  // N D^delta
  mpz_class exact;   // sum_v prod_{e at v} d_e
};

inline ParameterCount tn_parameter_count(const TensorNetworkGraph& g) {
  ParameterCount c;
  c.coarse = mpz_class(static_cast<unsigned long>(g.internal_count())) * pow_ui(g.max_bond_dim(), g.max_degree());
  c.exact = 0;
  for (const auto& v : g.internal()) {
    mpz_class prod = 1;
    for (const auto& e : v.edges) prod *= g.edge_dims().at(e);
    c.exact += prod;
  }
  return c;
}

enum class Feasibility { infeasible, undecided };

inline const char* to_string(Feasibility f) { return f == Feasibility::infeasible ? "INFEASIBLE" : "UNDECIDED"; }

/// gamma(Psi) <= N D^delta: a network whose coarse count is below a lower bound
/// on gamma cannot represent the tensor. The converse is not implied.
inline Feasibility tn_feasibility(const GammaValue& g, const TensorNetworkGraph& graph) {
  if (!g.bounds_from_below()) throw DomainError("tn_feasibility needs an exact value or a lower bound");
  return tn_parameter_count(graph).coarse < g.value ? Feasibility::infeasible : Feasibility::undecided;
}

}  // namespace transclab::gamma
