#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "transclab/error.hpp"
#include "transclab/parallel.hpp"
#include "transclab/synth/circuit.hpp"
#include "transclab/synth/gate_set.hpp"

namespace transclab::synth {

/// Dense search regime: d^n <= 64.
inline constexpr std::uint64_t search_dim_cap = 64;
inline constexpr unsigned default_gmax_cap = 12;
/// Requests with eps = 0 are served at this tolerance.
inline constexpr double zero_epsilon_substitute = 1e-9;

struct SynthesisResult {
  std::string target;
  double epsilon_requested = 0;
  double epsilon = 0;               // tolerance actually used
  std::optional<unsigned> found_g;  // nullopt means NOT_FOUND within g_max
  Circuit witness;
  double distance = 0;
  std::uint64_t explored = 0;                 // sequences evaluated, all depths
  std::vector<std::uint64_t> explored_per_depth;
  std::vector<std::string> notes;
};

/// One search move: gate index and ordered site pair.
struct Move {
  std::size_t gate = 0;
  std::size_t first = 0;
  std::size_t second = 1;
};

/// All placements: ordered pairs, collapsed to i < j for swap-symmetric gates.
inline std::vector<Move> enumerate_moves(const GateSet& gs, std::size_t n) {
  std::vector<Move> moves;
  for (std::size_t g = 0; g < gs.size(); ++g) {
    const bool sym = is_swap_symmetric(gs.gates()[g].matrix, gs.d());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || (sym && j < i)) continue;
        moves.push_back({g, i, j});
      }
  }
  return moves;
}

/// ||A||_F / sqrt(dim) <= ||A||_2 <= ||A||_F screens most candidates before an SVD.
inline bool within(const Matrix& target, const Matrix& u, double eps, double& dist) {
  const double fro = (target - u).norm();
  const double dim = static_cast<double>(u.rows());
  if (fro / std::sqrt(dim) > eps) return false;
  dist = opnorm_dist(target, u);
  return dist <= eps;
}

namespace detail {

struct BranchOutcome {
  bool found = false;
  std::vector<std::size_t> path;
  double distance = 0;
  std::uint64_t leaves = 0;
};

struct SearchContext {
  const Matrix& target;
  const GateSet& gs;
  const std::vector<Move>& moves;
  const std::vector<Placement>& placements;
  double eps;
  unsigned depth;
};

/// Depth-first over the remaining steps; stops at the first hit in lexicographic order.
inline bool descend(const SearchContext& ctx, const Matrix& prefix, std::vector<std::size_t>& path, BranchOutcome& out) {
  if (path.size() == ctx.depth) {
    ++out.leaves;
    double dist = 0;
    if (within(ctx.target, prefix, ctx.eps, dist)) {
      out.found = true;
      out.path = path;
      out.distance = dist;
      return true;
    }
    return false;
  }
  for (std::size_t m = 0; m < ctx.moves.size(); ++m) {
    Matrix next = prefix;
    apply_right(next, ctx.gs.gates()[ctx.moves[m].gate].matrix, ctx.placements[m]);
    path.push_back(m);
    bool hit = descend(ctx, next, path, out);
    path.pop_back();
    if (hit) return true;
  }
  return false;
}

}  // namespace detail

/// Least g <= g_max such that some length-g placed sequence from gs is within
/// operator-norm eps of the target, by iterative deepening.
///
/// At each depth the first-step branches run independently (in parallel when
/// threads > 1); each stops at its first hit and the lowest-index hit wins, so
/// the witness and the explored count do not depend on scheduling.
inline SynthesisResult brute_force_cost(const Matrix& target, const GateSet& gs, double epsilon, unsigned g_max,
                                        unsigned threads = 1, unsigned g_max_cap = default_gmax_cap,
                                        std::string target_label = "custom") {
  if (epsilon < 0) throw DomainError("epsilon must be >= 0");
  if (g_max > g_max_cap) throw CapExceeded("g_max " + std::to_string(g_max) + " exceeds the cap " + std::to_string(g_max_cap));
  if (target.rows() != target.cols()) throw DomainError("target must be square");
  std::size_t n = 0;
  for (std::uint64_t dim = 1; dim < static_cast<std::uint64_t>(target.rows()); dim *= gs.d()) ++n;
  if (checked_dim(gs.d(), n, search_dim_cap) != static_cast<std::uint64_t>(target.rows()))
    throw DomainError("target dimension is not a power of d");
  if (n < 2) throw DomainError("two-qudit gates need n >= 2 sites");

  SynthesisResult res;
  res.target = std::move(target_label);
  res.epsilon_requested = epsilon;
  res.epsilon = epsilon;
  if (epsilon == 0) {
    res.epsilon = zero_epsilon_substitute;
    res.notes.push_back("eps = 0 served as 1e-9; exact C_0 lives in the gamma certificates");
  }
  res.witness.n = n;

  const Matrix identity = Matrix::Identity(target.rows(), target.cols());
  res.explored_per_depth.push_back(1);
  res.explored = 1;
  double dist0 = 0;
  if (within(target, identity, res.epsilon, dist0)) {
    res.found_g = 0;
    res.distance = dist0;
    return res;
  }

  const auto moves = enumerate_moves(gs, n);
  std::vector<detail::Placement> placements;
  for (const auto& m : moves) placements.push_back(detail::make_placement(gs.d(), n, m.first, m.second));

  for (unsigned depth = 1; depth <= g_max; ++depth) {
    std::vector<detail::BranchOutcome> branches(moves.size());
    detail::SearchContext ctx{target, gs, moves, placements, res.epsilon, depth};
    parallel_for(moves.size(), threads, [&](std::size_t b) {
      Matrix first = identity;
      apply_right(first, gs.gates()[moves[b].gate].matrix, placements[b]);
      std::vector<std::size_t> path{b};
      detail::descend(ctx, first, path, branches[b]);
    });
    std::uint64_t leaves = 0;
    for (const auto& br : branches) leaves += br.leaves;
    res.explored_per_depth.push_back(leaves);
    res.explored += leaves;
    for (const auto& br : branches) {
      if (!br.found) continue;
      res.found_g = depth;
      res.distance = br.distance;
      for (std::size_t m : br.path)
        res.witness.steps.push_back({gs.gates()[moves[m].gate].label, moves[m].first, moves[m].second});
      return res;
    }
  }
  return res;
}

inline json to_json(const SynthesisResult& r) {
  json out = {{"target", r.target},
              {"epsilon_requested", r.epsilon_requested},
              {"epsilon", r.epsilon},
              {"found_g", r.found_g ? json(*r.found_g) : json("NOT_FOUND")},
              {"distance", r.distance},
              {"explored", r.explored},
              {"explored_per_depth", r.explored_per_depth},
              {"notes", r.notes}};
  if (r.found_g) out["witness"] = to_json(r.witness);
  return out;
}

/// Named targets: identity, swap, cnot, cz on n sites (two-site gates on (0, 1)).
inline Matrix named_target(const std::string& name, std::size_t n) {
  const std::string key = normalize_label(name);
  if (key == "identity" || key == "id" || key == "1") {
    auto dim = static_cast<Eigen::Index>(checked_dim(2, n, search_dim_cap));
    return Matrix::Identity(dim, dim);
  }
  return embed_gate(builtin_gate(name).matrix, 2, n, 0, 1);
}

/// c C ln(C / eps): gate count after changing to an efficiently universal gate set.
inline double sk_overhead(double c_eps, double epsilon, double c) {
  if (!(c_eps >= 1)) throw DomainError("sk_overhead needs C_eps >= 1");
  if (!(epsilon > 0)) throw DomainError("sk_overhead needs eps > 0");
  if (!(c > 0)) throw DomainError("sk_overhead needs c > 0");
  return c * c_eps * std::log(c_eps / epsilon);
}

}  // namespace transclab::synth
