#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "transclab/algebra.hpp"
#include "transclab/equidist.hpp"
#include "transclab/error.hpp"
#include "transclab/families.hpp"
#include "transclab/gamma.hpp"
#include "transclab/hardness.hpp"
#include "transclab/parallel.hpp"
#include "transclab/synth.hpp"

namespace transclab::cli {

using json = nlohmann::json;

inline constexpr const char* schema = "transclab/1";
inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"certify",   "phase-table", "build-unitary", "build-state", "tn-audit",
                                                 "gibbs",     "hardness-bound", "mc-ball",    "mc-overlap",  "weyl",
                                                 "discrepancy", "synth",     "sk-bound"};
  return names;
}

// ---------------------------------------------------------------- rendering

/// -inf (log of an exact zero) is not representable in JSON; it is written as the string "-inf".
inline json log10_json(double l) {
  if (std::isfinite(l)) return l;
  return l < 0 ? json("-inf") : json("inf");
}

inline json to_json(const hardness::LogValue& v) { return {{"value", v.value}, {"log10", log10_json(v.log10)}}; }

inline json to_json(const hardness::McReport& r) {
  return {{"samples", r.samples},
          {"seed", r.seed},
          {"hits", r.hits},
          {"exhaustive", r.exhaustive},
          {"empirical", r.empirical},
          {"log10_empirical", log10_json(r.hits ? std::log10(r.empirical) : -INFINITY)},
          {"bound", to_json(r.bound)},
          {"standard_error", r.standard_error},
          {"z_score", std::isfinite(r.z_score()) ? json(r.z_score()) : json(r.z_score() > 0 ? "inf" : "-inf")},
          {"verdict", hardness::to_string(r.verdict)},
          {"batches", r.batch_hits.size()},
          {"samples_per_batch", hardness::samples_per_batch}};
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

// ---------------------------------------------------------------- input parsing

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline std::vector<mpz_class> parse_primes(const std::string& csv) {
  std::vector<mpz_class> primes;
  for (const auto& item : split(csv, ',')) {
    mpz_class p;
    if (p.set_str(item, 10) != 0) throw FormatError("prime '" + item + "' is not a decimal integer");
    primes.push_back(p);
  }
  return primes;
}

inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) throw FormatError("'" + s + "' is not a rational number");
  q.canonicalize();
  return q;
}

inline double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw FormatError("");
    return v;
  } catch (const std::exception&) {
    throw FormatError("'" + s + "' is not a number");
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("malformed JSON in '" + path + "': " + e.what());
  }
}

/// "lo:hi,lo:hi,..." per box, boxes separated by ';'.
inline std::vector<equidist::Box> parse_boxes(const std::string& s) {
  std::vector<equidist::Box> boxes;
  for (const auto& spec : split(s, ';')) {
    equidist::Box b;
    for (const auto& side : split(spec, ',')) {
      auto parts = split(side, ':');
      if (parts.size() != 2) throw FormatError("box side '" + side + "' is not lo:hi");
      b.arcs.push_back({parse_double(parts[0]), parse_double(parts[1])});
    }
    boxes.push_back(std::move(b));
  }
  return boxes;
}

/// "0:1,1:2" site pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& s) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& item : split(s, ',')) {
    auto parts = split(item, ':');
    if (parts.size() != 2) throw FormatError("site pair '" + item + "' is not a:b");
    try {
      pairs.emplace_back(std::stoul(parts[0]), std::stoul(parts[1]));
    } catch (const std::exception&) {
      throw FormatError("site pair '" + item + "' is not a:b");
    }
  }
  return pairs;
}

// ---------------------------------------------------------------- config merge

/// A JSON config value rendered as flag tokens; false and null contribute nothing.
inline std::vector<std::string> config_tokens(const json& config) {
  if (!config.is_object()) throw FormatError("config must be a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : config.items()) {
    if (key == "command" || key == "config") continue;
    const std::string flag = "--" + key;
    if (value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
      continue;
    }
    tokens.push_back(flag);
    if (value.is_string()) {
      tokens.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& e : value) {
        if (!joined.empty()) joined += ",";
        joined += e.is_string() ? e.get<std::string>() : e.dump();
      }
      tokens.push_back(joined);
    } else {
      tokens.push_back(value.dump());
    }
  }
  return tokens;
}

/// Splits argv into (tokens without --config, config path).
inline std::pair<std::vector<std::string>, std::optional<std::string>> extract_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  return {rest, path};
}

inline unsigned threads_from_env() {
  const char* v = std::getenv("TRANSCLAB_THREADS");
  if (!v || !*v) return 0;
  try {
    std::size_t used = 0;
    unsigned long n = std::stoul(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument("");
    return static_cast<unsigned>(n);
  } catch (const std::exception&) {
    throw FormatError(std::string("TRANSCLAB_THREADS='") + v + "' is not a natural number");
  }
}

// ---------------------------------------------------------------- parameters

struct Params {
  // family
  std::string primes;
  unsigned d = 2;
  std::size_t n = 0;
  std::string t = "1";
  // numerics and caps
  int precision = 15;
  std::uint64_t cap = families::default_table_cap;
  std::uint64_t rank_cap = families::default_rank_verify_cap;
  std::string export_prefix;
  // tensor networks
  std::string graph;
  std::string shape = "file";
  std::size_t sites = 0;
  unsigned bond = 2;
  std::string gates;
  std::string gamma;
  // gibbs
  std::string spectrum;
  // hardness
  unsigned k = 1;
  double eps = 0.5;
  unsigned D = 2;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::string variant = "steinhaus";
  bool exhaustive = false;
  std::string reference;
  // equidistribution
  std::uint64_t N = 1000;
  unsigned grid = 0;
  std::string boxes;
  double identity_eps = 0;
  // synthesis
  std::string target = "swap";
  std::string target_file;
  std::string gateset = "cnot";
  std::string gateset_file;
  unsigned gmax = 4;
  double C = 1;
  double c = 1;
  // output
  std::string output;
  std::string csv;
};

/// Registers options and remembers how to read each one back for the resolved config.
class Registry {
 public:
  template <class T>
  CLI::Option* add(CLI::App* sub, const std::string& name, T& var, const std::string& desc) {
    fields_[sub].emplace_back(name, [&var] { return json(var); });
    return sub->add_option("--" + name, var, desc);
  }

  CLI::Option* flag(CLI::App* sub, const std::string& name, bool& var, const std::string& desc) {
    fields_[sub].emplace_back(name, [&var] { return json(var); });
    return sub->add_flag("--" + name, var, desc);
  }

  json resolved(CLI::App* sub) const {
    json out = json::object();
    if (auto it = fields_.find(sub); it != fields_.end())
      for (const auto& [name, read] : it->second) out[name] = read();
    return out;
  }

 private:
  std::map<CLI::App*, std::vector<std::pair<std::string, std::function<json()>>>> fields_;
};

inline families::FamilySpec family_from(const Params& p) {
  std::vector<mpz_class> primes = parse_primes(p.primes);
  if (primes.empty()) {
    if (p.n == 0) throw DomainError("give --primes or --n >= 1");
    primes = algebra::FieldContext::first_primes(p.n, p.d).primes();
  } else if (p.n != 0 && p.n != primes.size()) {
    throw DomainError("--n disagrees with the number of --primes");
  }
  return families::make_family(std::move(primes), p.d, parse_rational(p.t));
}

inline bool family_given(const Params& p) { return !p.primes.empty() || p.n != 0; }

// ---------------------------------------------------------------- commands

struct Outcome {
  json result;
  std::optional<std::uint64_t> seed;
  std::string csv;  // plot-ready CSV body, empty if the command has none
};

inline Outcome cmd_certify(const Params& p) {
  return {gamma::to_json(families::certify(family_from(p), p.rank_cap)), std::nullopt, {}};
}

inline Outcome cmd_phase_table(const Params& p) {
  auto spec = family_from(p);
  auto table = families::build_phase_table(spec, p.cap);
  json entries = json::array();
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    auto j = families::index_to_exponent(i, spec.d(), spec.n());
    entries.push_back({{"index", i},
                       {"j", j},
                       {"radicand", algebra::bigint_to_json(table.entries[i].radicand_of(j))},
                       {"phi", table.entries[i].to_string()}});
  }
  return {{{"spec", families::to_json(spec)}, {"dim", table.entries.size()}, {"entries", entries}}, std::nullopt, {}};
}

/// Inline numeric vectors up to this size; larger objects need --export.
inline constexpr std::size_t inline_vector_cap = 1u << 16;

inline Outcome cmd_build_unitary(const Params& p, unsigned threads) {
  auto u = families::build_diagonal_unitary(family_from(p), p.precision, threads, p.cap);
  json r = {{"spec", families::to_json(u.spec)}, {"precision", u.precision}, {"dim", u.dim()}, {"max_error", u.max_error()}};
  if (!p.export_prefix.empty()) r["export"] = families::export_unitary(u, p.export_prefix);
  if (u.dim() <= inline_vector_cap) {
    r["phases"] = u.phases;
    r["errors"] = u.errors;
  }
  return {r, std::nullopt, {}};
}

inline Outcome cmd_build_state(const Params& p, unsigned threads) {
  auto s = families::build_coherent_state(family_from(p), p.precision, threads, p.cap);
  json r = {{"spec", families::to_json(s.spec)}, {"precision", s.precision}, {"dim", s.dim()},
            {"error_bound", s.error_bound},     {"norm", s.norm()}};
  if (!p.export_prefix.empty()) r["export"] = families::export_state(s, p.export_prefix);
  if (s.dim() <= inline_vector_cap) {
    json amps = json::array();
    for (auto a : s.amplitudes) amps.push_back({a.real(), a.imag()});
    r["amplitudes"] = amps;
  }
  return {r, std::nullopt, {}};
}

inline gamma::TensorNetworkGraph graph_from(const Params& p) {
  if (p.shape == "file") {
    if (p.graph.empty()) throw DomainError("tn-audit needs --graph FILE or --shape circuit|mps");
    return gamma::graph_from_json(read_json_file(p.graph));
  }
  if (p.shape == "circuit") return gamma::circuit_network(p.sites, parse_pairs(p.gates), p.d);
  if (p.shape == "mps") return gamma::mps_network(p.sites, p.d, p.bond);
  throw DomainError("unknown --shape '" + p.shape + "' (expected file, circuit or mps)");
}

inline Outcome cmd_tn_audit(const Params& p) {
  auto g = graph_from(p);
  auto count = gamma::tn_parameter_count(g);
  json r = {{"d", g.d()},
            {"external", g.external_count()},
            {"N", g.internal_count()},
            {"delta", g.max_degree()},
            {"D", g.max_bond_dim()},
            {"coarse", algebra::bigint_to_json(count.coarse)},
            {"exact", algebra::bigint_to_json(count.exact)}};
  std::optional<gamma::GammaValue> gv;
  if (!p.gamma.empty()) {
    mpz_class v;
    if (v.set_str(p.gamma, 10) != 0 || v < 0) throw FormatError("--gamma must be a natural number");
    gv = gamma::GammaValue::make(gamma::GammaKind::exact, v, {{"user", "gamma supplied on the command line"}});
  } else if (family_given(p)) {
    auto cert = families::certify(family_from(p), p.rank_cap);
    r["certificate"] = gamma::to_json(cert);
    gv = cert.gamma;
  }
  if (gv) {
    r["gamma"] = gamma::to_json(*gv);
    r["verdict"] = gamma::to_string(gamma::tn_feasibility(*gv, g));
  }
  return {r, std::nullopt, {}};
}

inline Outcome cmd_gibbs(const Params& p) {
  gamma::SpectrumSet spec;
  if (!p.spectrum.empty()) {
    json v = read_json_file(p.spectrum);
    if (v.is_object() && v.contains("values")) v = v["values"];
    if (!v.is_array() || v.empty()) throw FormatError("spectrum must be a nonempty array of field elements");
    algebra::ContextPtr ctx;
    for (const auto& e : v) {
      spec.values.push_back(algebra::from_json(e, ctx));
      ctx = spec.values.back().context();
    }
  } else if (family_given(p)) {
    spec = families::build_hamiltonian_spectrum(family_from(p), p.cap);
  } else {
    throw DomainError("gibbs needs --spectrum FILE or a family (--primes/--n)");
  }
  auto b = gamma::gibbs_bounds(spec);
  json values = json::array();
  for (const auto& e : spec.values) values.push_back(e.to_string());
  return {{{"values", values}, {"dim", b.dim}, {"gamma_interval", {b.gamma_lo, b.gamma_hi}}}, std::nullopt, {}};
}

/// Runs a bound, or records why it does not apply at this epsilon.
template <class F>
json guarded(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    return {{"not_applicable", e.what()}};
  }
}

inline Outcome cmd_hardness_bound(const Params& p) {
  hardness::HardnessQuery q{p.d, static_cast<unsigned>(p.n), p.k, p.eps};
  q.validate();
  if (q.epsilon > 1) throw DomainError("every bound needs epsilon <= 1");
  const double D = q.dimension();
  json r = {{"dimension", D}, {"log10_dimension", q.n * std::log10(static_cast<double>(q.d))}};
  r["diagonal"] = guarded([&] {
    auto b = hardness::diagonal_bound(q);
    return json{{"g", b.g}, {"measure_bound", to_json(b.measure_bound)}};
  });
  r["sign_diagonal"] = guarded([&] { return to_json(hardness::sign_diagonal_bound(q)); });
  r["coherent"] = guarded([&] {
    auto b = hardness::coherent_bound(q);
    json out = {{"g_cap", b.g_cap}, {"bound", to_json(b.bound)}};
    out["sign_bound"] = b.sign_bound ? to_json(*b.sign_bound) : json{{"not_applicable", "needs epsilon in [0, 3/4]"}};
    return out;
  });
  r["steinhaus_tail"] = guarded([&] {
    auto s = hardness::steinhaus_tail(D, q.epsilon);
    return json{{"bound", to_json(s.bound)}, {"quarter_form", to_json(s.quarter_form)}, {"final_form", to_json(s.final_form)}};
  });
  r["rademacher_tail"] = guarded([&] { return to_json(hardness::rademacher_tail(D, q.epsilon)); });
  return {r, std::nullopt, {}};
}

inline std::string batch_csv(const hardness::McReport& r) {
  std::ostringstream os;
  os << "batch,samples,hits\n";
  for (std::size_t b = 0; b < r.batch_hits.size(); ++b) {
    const std::uint64_t begin = b * hardness::samples_per_batch;
    const std::uint64_t size = std::min(r.samples, begin + hardness::samples_per_batch) - begin;
    os << b << ',' << size << ',' << r.batch_hits[b] << '\n';
  }
  return os.str();
}

inline Outcome cmd_mc_ball(const Params& p, unsigned threads) {
  auto r = hardness::mc_ball_measure(p.D, p.eps, p.samples, p.seed, threads);
  json out = to_json(r);
  out["D"] = p.D;
  out["epsilon"] = p.eps;
  return {out, p.seed, batch_csv(r)};
}

inline Outcome cmd_mc_overlap(const Params& p, unsigned threads) {
  hardness::OverlapOptions opts;
  opts.exhaustive = p.exhaustive;
  opts.threads = threads;
  if (!p.reference.empty()) {
    json v = read_json_file(p.reference);
    if (!v.is_array()) throw FormatError("reference must be an array of [re, im] pairs");
    for (const auto& e : v) opts.reference.push_back(synth::parse_complex(e));
  }
  const auto variant = hardness::parse_variant(p.variant);
  auto r = hardness::mc_overlap_tail(p.D, p.eps, variant, p.samples, p.seed, opts);
  json out = to_json(r);
  out["D"] = p.D;
  out["epsilon"] = p.eps;
  out["variant"] = hardness::to_string(variant);
  out["threshold"] = 1 - p.eps * p.eps / 2;
  auto chain = hardness::steinhaus_tail(p.D, p.eps);
  out["steinhaus_chain"] = {{"bound", to_json(chain.bound)},
                            {"quarter_form", to_json(chain.quarter_form)},
                            {"final_form", to_json(chain.final_form)}};
  out["rademacher_hoeffding"] = to_json(hardness::rademacher_tail(p.D, p.eps));
  return {out, p.seed, batch_csv(r)};
}

inline json weyl_summary(const equidist::WeylSequence& seq) {
  json head = json::array();
  for (std::uint64_t t = 0; t < std::min<std::uint64_t>(seq.count, 10); ++t) head.push_back(seq.row(t));
  return {{"spec", families::to_json(seq.spec)}, {"N", seq.count},
          {"dim", seq.dim},                      {"precision", seq.precision},
          {"theta", seq.theta},                  {"theta_error", seq.theta_error},
          {"point_error", seq.point_error},      {"head", head},
          {"last", seq.row(seq.count - 1)}};
}

inline Outcome cmd_weyl(const Params& p, unsigned threads) {
  auto seq = equidist::weyl_points(family_from(p), p.N, p.precision, threads);
  std::string csv;
  if (!p.csv.empty()) {
    std::ostringstream os;
    os << "t";
    for (std::size_t j = 0; j < seq.dim; ++j) os << ",x" << j;
    os << '\n';
    for (std::uint64_t t = 0; t < seq.count; ++t) {
      os << t + 1;
      for (std::size_t j = 0; j < seq.dim; ++j) os << ',' << fmt_double(seq.at(t, j));
      os << '\n';
    }
    csv = os.str();
  }
  return {weyl_summary(seq), std::nullopt, csv};
}

/// Finest grid with grid^D <= 10^6, or 0 when even a binary grid is too large.
inline unsigned auto_grid(std::size_t D) {
  unsigned g = 0;
  for (unsigned c = 2; c <= 64; ++c) {
    if (std::pow(static_cast<double>(c), static_cast<double>(D)) > static_cast<double>(equidist::max_grid_boxes)) break;
    g = c;
  }
  return g;
}

inline Outcome cmd_discrepancy(const Params& p, unsigned threads) {
  auto seq = equidist::weyl_points(family_from(p), p.N, p.precision, threads);
  json r = {{"N", seq.count}, {"dim", seq.dim}, {"precision", seq.precision}, {"point_error", seq.point_error}};
  const unsigned grid = p.grid ? p.grid : auto_grid(seq.dim);
  if (grid) {
    auto s = equidist::discrepancy_stats(seq, grid);
    r["grid"] = grid;
    r["max_box_deviation"] = s.max_box_deviation;
    r["per_coordinate_ks"] = s.per_coordinate_ks;
  } else {
    r["grid"] = {{"not_applicable", "2^D exceeds the 10^6 box cap"}};
  }
  std::vector<equidist::Box> boxes = parse_boxes(p.boxes);
  if (p.identity_eps > 0) boxes.push_back(equidist::identity_neighborhood_box(seq.dim, p.identity_eps));
  json measures = json::array();
  for (const auto& b : boxes) {
    auto m = equidist::box_measure(seq, b);
    measures.push_back({{"fraction", m.fraction}, {"volume", m.volume}, {"deviation", m.deviation}});
  }
  r["boxes"] = measures;
  auto table = equidist::hard_fraction_demo(seq, boxes, equidist::decade_checkpoints(seq.count));
  json rows = json::array();
  std::ostringstream os;
  os << "box,N,fraction,volume,deviation\n";
  for (const auto& row : table) {
    rows.push_back({{"box", row.box}, {"N", row.N}, {"fraction", row.fraction}, {"volume", row.volume}, {"deviation", row.deviation}});
    os << row.box << ',' << row.N << ',' << fmt_double(row.fraction) << ',' << fmt_double(row.volume) << ','
       << fmt_double(row.deviation) << '\n';
  }
  r["fraction_table"] = rows;
  return {r, std::nullopt, os.str()};
}

inline Outcome cmd_synth(const Params& p, unsigned threads) {
  synth::GateSet gs = p.gateset_file.empty() ? synth::builtin_gate_set(p.gateset)
                                             : synth::gate_set_from_json(read_json_file(p.gateset_file));
  const std::size_t n = p.n;
  synth::Matrix target;
  std::string label;
  if (!p.target_file.empty()) {
    target = synth::matrix_from_json(read_json_file(p.target_file));
    label = p.target_file;
  } else {
    label = p.target;
    const std::string key = synth::normalize_label(p.target);
    if (key == "identity" || key == "id") {
      auto dim = static_cast<Eigen::Index>(synth::checked_dim(gs.d(), n, synth::search_dim_cap));
      target = synth::Matrix::Identity(dim, dim);
    } else {
      if (gs.d() != 2) throw DomainError("named targets other than identity are qubit gates");
      target = synth::named_target(p.target, n);
    }
  }
  auto res = synth::brute_force_cost(target, gs, p.eps, p.gmax, threads, synth::default_gmax_cap, label);
  json r = synth::to_json(res);
  r["gate_set"] = [&] {
    json labels = json::array();
    for (const auto& g : gs.gates()) labels.push_back(g.label);
    return labels;
  }();
  r["placements_per_step"] = synth::enumerate_moves(gs, n).size();
  return {r, std::nullopt, {}};
}

inline Outcome cmd_sk_bound(const Params& p) {
  const double v = synth::sk_overhead(p.C, p.eps, p.c);
  return {{{"bound", v}, {"C_eps", p.C}, {"epsilon", p.eps}, {"c", p.c}}, std::nullopt, {}};
}

// ---------------------------------------------------------------- dispatch

inline constexpr std::array<std::string_view, 13> subcommand_names = {
    "certify", "phase-table", "build-unitary", "build-state", "tn-audit", "gibbs", "hardness-bound",
    "mc-ball", "mc-overlap", "weyl", "discrepancy", "synth", "sk-bound"};

inline bool is_subcommand(const std::string& s) {
  return std::find(subcommand_names.begin(), subcommand_names.end(), s) != subcommand_names.end();
}

/// Params is shared by all subcommands, so defaults that differ per command are set once the command is known.
inline void apply_command_defaults(Params& p, const std::string& command) {
  if (command == "mc-ball") p.eps = 1.0;
  if (command == "synth") p.eps = 1e-6;
  if (command == "sk-bound") p.eps = 0.01;
  if (command == "hardness-bound" || command == "synth") p.n = 2;
  if (command == "weyl" || command == "discrepancy") p.precision = 0;
}

/// Parses args (without the program name), runs one subcommand and writes its JSON report.
/// Returns 0 on success, 1 on a domain error, 2 on a usage error or malformed input.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Params p;
  Registry reg;

  // The command is resolved before any option is bound so that captured defaults (shown in help) are per command.
  std::string command;
  std::vector<std::string> rest;
  json config = json::object();
  try {
    auto [remaining, config_path] = extract_config(args);
    rest = std::move(remaining);
    if (config_path) {
      config = read_json_file(*config_path);
      if (!config.is_object()) throw FormatError("config must be a JSON object");
    }
    auto pos = std::find_if(rest.begin(), rest.end(), is_subcommand);
    if (pos != rest.end()) command = *pos;
    if (config.contains("command")) {
      if (!config["command"].is_string()) throw FormatError("config command must be a string");
      const std::string cfg = config["command"];
      if (!command.empty() && command != cfg) throw FormatError("config command '" + cfg + "' differs from '" + command + "'");
      if (command.empty()) {
        if (!is_subcommand(cfg)) throw FormatError("unknown command '" + cfg + "' in config");
        command = cfg;
        rest.insert(rest.begin(), command);
      }
    }
  } catch (const FormatError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }
  apply_command_defaults(p, command);

  CLI::App app{"transclab: transcendence-degree complexity certificates and hardness checks", "transclab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  app.require_subcommand(1);
  unsigned threads_flag = 0;
  auto* threads_opt = app.add_option("--threads", threads_flag, "worker threads (0 = all cores; env TRANSCLAB_THREADS)");
  app.add_option("--config", "JSON file of flag values; explicit flags override it");

  std::map<std::string, CLI::App*> subs;
  auto sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->fallthrough();
    reg.add(s, "output", p.output, "write the JSON report here instead of stdout");
    subs[name] = s;
    return s;
  };
  auto family = [&](CLI::App* s) {
    reg.add(s, "primes", p.primes, "comma-separated distinct primes (default: the first n primes)");
    reg.add(s, "d", p.d, "root order / local dimension");
    reg.add(s, "n", p.n, "number of sites (primes)");
    reg.add(s, "t", p.t, "rational family parameter, e.g. 1 or 3/2");
  };

  auto* certify = sub("certify", "gamma certificate with C_0 and tensor-network lower bounds");
  family(certify);
  reg.add(certify, "rank-cap", p.rank_cap, "verify the rank explicitly when d^n is at most this");

  auto* phase = sub("phase-table", "exact phase monomials phi(j)");
  family(phase);
  reg.add(phase, "cap", p.cap, "table size cap");

  for (const std::string name : {"build-unitary", "build-state"}) {
    auto* s = sub(name, name == "build-unitary" ? "diagonal unitary U_t" : "maximally coherent state psi_t");
    family(s);
    reg.add(s, "precision", p.precision, "decimal digits of the phases (<= 15)");
    reg.add(s, "cap", p.cap, "table size cap");
    reg.add(s, "export", p.export_prefix, "write <prefix>.bin and <prefix>.json");
  }

  auto* tn = sub("tn-audit", "tensor-network parameter counts and feasibility");
  family(tn);
  reg.add(tn, "graph", p.graph, "graph JSON file");
  reg.add(tn, "shape", p.shape, "file, circuit or mps");
  reg.add(tn, "sites", p.sites, "physical sites for generated shapes");
  reg.add(tn, "bond", p.bond, "MPS bond dimension");
  reg.add(tn, "gates", p.gates, "circuit gate pairs, e.g. 0:1,1:2");
  reg.add(tn, "gamma", p.gamma, "exact gamma to test against (default: certify the family if given)");
  reg.add(tn, "rank-cap", p.rank_cap, "explicit rank verification cap");

  auto* gibbs = sub("gibbs", "gamma interval of a Gibbs state");
  family(gibbs);
  reg.add(gibbs, "spectrum", p.spectrum, "JSON array of field elements");
  reg.add(gibbs, "cap", p.cap, "table size cap for family spectra");

  auto* hb = sub("hardness-bound", "closed-form hardness bounds");
  reg.add(hb, "d", p.d, "local dimension");
  reg.add(hb, "n", p.n, "sites");
  reg.add(hb, "k", p.k, "gate-set cardinality");
  reg.add(hb, "eps", p.eps, "approximation parameter");

  for (const std::string name : {"mc-ball", "mc-overlap"}) {
    auto* s = sub(name, name == "mc-ball" ? "Monte Carlo ball measure" : "Monte Carlo overlap tail");
    reg.add(s, "D", p.D, "dimension");
    reg.add(s, "eps", p.eps, "epsilon");
    reg.add(s, "samples", p.samples, "sample count");
    reg.add(s, "seed", p.seed, "64-bit seed");
    reg.add(s, "csv", p.csv, "write per-batch hit counts here");
    if (name == "mc-overlap") {
      reg.add(s, "variant", p.variant, "steinhaus or rademacher");
      reg.flag(s, "exhaustive", p.exhaustive, "enumerate all 2^D sign vectors");
      reg.add(s, "reference", p.reference, "JSON file with the unit reference vector");
    }
  }

  for (const std::string name : {"weyl", "discrepancy"}) {
    auto* s = sub(name, name == "weyl" ? "Weyl phase sequence t*theta mod 1" : "equidistribution diagnostics");
    family(s);
    reg.add(s, "N", p.N, "number of points");
    reg.add(s, "precision", p.precision, "digits of theta (0 = digits(N) + 12)");
    reg.add(s, "csv", p.csv, name == "weyl" ? "write the points here" : "write the fraction table here");
    if (name == "discrepancy") {
      reg.add(s, "grid", p.grid, "anchored grid resolution (0 = finest within 10^6 boxes)");
      reg.add(s, "box", p.boxes, "boxes lo:hi,... separated by ';'");
      reg.add(s, "identity-eps", p.identity_eps, "add the identity-neighborhood box for this epsilon");
    }
  }

  auto* sy = sub("synth", "brute-force circuit complexity C_eps");
  reg.add(sy, "target", p.target, "identity, swap, cnot or cz");
  reg.add(sy, "target-file", p.target_file, "JSON matrix target");
  reg.add(sy, "gateset", p.gateset, "built-in gate labels, e.g. cnot or CNOT,H*1");
  reg.add(sy, "gateset-file", p.gateset_file, "JSON gate set");
  reg.add(sy, "n", p.n, "sites");
  reg.add(sy, "eps", p.eps, "operator-norm tolerance");
  reg.add(sy, "gmax", p.gmax, "largest circuit size searched");

  auto* sk = sub("sk-bound", "gate count after a change of gate set");
  reg.add(sk, "C", p.C, "circuit complexity C_eps");
  reg.add(sk, "eps", p.eps, "epsilon");
  reg.add(sk, "c", p.c, "gate-set dependent constant");

  try {
    auto pos = command.empty() ? rest.end() : std::find(rest.begin(), rest.end(), command);
    std::vector<std::string> tokens(rest.begin(), pos);
    if (pos != rest.end()) {
      tokens.push_back(*pos);
      for (auto& t : config_tokens(config)) tokens.push_back(t);
      tokens.insert(tokens.end(), pos + 1, rest.end());
    }
    std::reverse(tokens.begin(), tokens.end());  // CLI11 consumes from the back
    app.parse(tokens);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const FormatError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    const unsigned threads = resolve_threads(threads_opt->count() ? threads_flag : threads_from_env());
    Outcome o;
    if (command == "certify") o = cmd_certify(p);
    else if (command == "phase-table") o = cmd_phase_table(p);
    else if (command == "build-unitary") o = cmd_build_unitary(p, threads);
    else if (command == "build-state") o = cmd_build_state(p, threads);
    else if (command == "tn-audit") o = cmd_tn_audit(p);
    else if (command == "gibbs") o = cmd_gibbs(p);
    else if (command == "hardness-bound") o = cmd_hardness_bound(p);
    else if (command == "mc-ball") o = cmd_mc_ball(p, threads);
    else if (command == "mc-overlap") o = cmd_mc_overlap(p, threads);
    else if (command == "weyl") o = cmd_weyl(p, threads);
    else if (command == "discrepancy") o = cmd_discrepancy(p, threads);
    else if (command == "synth") o = cmd_synth(p, threads);
    else if (command == "sk-bound") o = cmd_sk_bound(p);

    json report = {{"schema", schema},
                   {"command", command},
                   {"config", reg.resolved(subs[command])},
                   {"result", o.result},
                   {"runtime", {{"threads", threads}}},
                   {"timestamp", utc_timestamp()}};
    if (o.seed) report["seed"] = *o.seed;
    if (!p.csv.empty() && !o.csv.empty()) {
      std::ofstream f(p.csv);
      if (!f) throw FormatError("cannot write '" + p.csv + "'");
      f << o.csv;
    }
    if (p.output.empty()) {
      out << report.dump(2) << "\n";
    } else {
      std::ofstream f(p.output);
      if (!f) throw FormatError("cannot write '" + p.output + "'");
      f << report.dump(2) << "\n";
    }
    return exit_ok;
  } catch (const FormatError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  }
}

}  // namespace transclab::cli
