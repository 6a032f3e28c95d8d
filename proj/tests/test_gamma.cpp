#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "transclab/families.hpp"
#include "transclab/gamma.hpp"

using namespace transclab;
using namespace transclab::gamma;
using algebra::RadicalElement;

namespace {

std::vector<RadicalElement> monomials(const algebra::ContextPtr& c) {
  std::vector<RadicalElement> out;
  for (std::uint64_t i = 0; i < c->basis_size_u64(); ++i)
    out.push_back(RadicalElement::monomial(c, families::index_to_exponent(i, c->d(), c->n())));
  return out;
}

GammaValue exact(unsigned long v) { return GammaValue::make(GammaKind::exact, v, {{"test", "fixture"}}); }
GammaValue upper(unsigned long v) { return GammaValue::make(GammaKind::upper_bound, v, {{"test", "fixture"}}); }
GammaValue lower(unsigned long v) { return GammaValue::make(GammaKind::lower_bound, v, {{"test", "fixture"}}); }

}  // namespace

TEST(GammaExponentialSet, Examples) {
  auto c = algebra::make_context({2, 3}, 2);
  auto g = gamma_exponential_set(monomials(c), 1);
  EXPECT_EQ(g.kind, GammaKind::exact);
  EXPECT_EQ(g.value, 4);
  EXPECT_GE(g.provenance.size(), 3u);

  auto r2 = RadicalElement::monomial(c, {1, 0});
  std::vector<RadicalElement> pair = {r2, mpq_class(2) * r2};
  EXPECT_EQ(gamma_exponential_set(pair, 1).value, 1);

  auto one = RadicalElement::one(c);
  std::vector<RadicalElement> three = {one, r2, one + r2};
  EXPECT_EQ(gamma_exponential_set(three, 3).value, 2);

  EXPECT_THROW(gamma_exponential_set(pair, 0), DomainError);
  EXPECT_THROW(gamma_exponential_set(std::vector<RadicalElement>{}, 1), DomainError);
}

TEST(GammaExponentialSet, EqualsRankAndIsMonotone) {
  std::mt19937_64 rng(17);
  auto c = oracle::first_primes(3, 2);
  auto basis = monomials(c);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<RadicalElement> set;
    for (int i = 0; i < 6; ++i) {
      auto e = RadicalElement::zero(c);
      for (const auto& b : basis)
        if (int k = coef(rng); k != 0 && rng() % 3 == 0) e += mpq_class(k) * b;
      set.push_back(e);
      auto g = gamma_exponential_set(set, mpq_class(5, 2));
      EXPECT_EQ(g.value, static_cast<unsigned long>(oracle::modular_rank(set)));
      if (set.size() > 1) {
        std::span<const RadicalElement> prefix(set.data(), set.size() - 1);
        EXPECT_LE(gamma_exponential_set(prefix, 1).value, g.value);
      }
    }
  }
}

TEST(GammaPowerTower, Examples) {
  auto g = gamma_power_tower(mpq_class(2), 2, 4);
  EXPECT_EQ(g.kind, GammaKind::lower_bound);
  EXPECT_EQ(g.value, 2);
  EXPECT_EQ(gamma_power_tower(mpq_class(2), 2, 2).value, 1);
  EXPECT_EQ(gamma_power_tower(mpq_class(2), 6, 5).value, 3);
  EXPECT_THROW(gamma_power_tower(mpq_class(1), 2, 4), DomainError);
  EXPECT_THROW(gamma_power_tower(mpq_class(0), 2, 4), DomainError);
  EXPECT_THROW(gamma_power_tower(mpq_class(2), 4, 4), DomainError);
  auto c = algebra::make_context({3}, 2);
  EXPECT_EQ(gamma_power_tower(RadicalElement::monomial(c, {1}), 5, 3).value, 2);
  EXPECT_THROW(gamma_power_tower(RadicalElement::one(c), 5, 3), DomainError);
}

TEST(GammaCombine, SumsUpperBounds) {
  std::vector<GammaValue> parts = {exact(4), exact(3)};
  auto g = gamma_combine(parts);
  EXPECT_EQ(g.kind, GammaKind::upper_bound);
  EXPECT_EQ(g.value, 7);
  std::vector<GammaValue> zero = {exact(0)};
  EXPECT_EQ(gamma_combine(zero).value, 0);
  std::vector<GammaValue> gates(3, two_qudit_gate_cap(2));
  EXPECT_EQ(gamma_combine(gates).value, 48);
  std::vector<GammaValue> bad = {upper(3), lower(2)};
  EXPECT_THROW(gamma_combine(bad), DomainError);
}

TEST(GammaCombine, AssociativeAndOrderInsensitive) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<GammaValue> parts;
    for (int i = 0; i < 5; ++i) parts.push_back(rng() % 2 ? exact(rng() % 100) : upper(rng() % 100));
    auto whole = gamma_combine(parts).value;
    std::vector<GammaValue> left(parts.begin(), parts.begin() + 2), right(parts.begin() + 2, parts.end());
    std::vector<GammaValue> nested = {gamma_combine(left), gamma_combine(right)};
    EXPECT_EQ(gamma_combine(nested).value, whole);
    std::shuffle(parts.begin(), parts.end(), rng);
    EXPECT_EQ(gamma_combine(parts).value, whole);
  }
}

TEST(CircuitLowerBound, CeilingArithmetic) {
  EXPECT_EQ(circuit_lower_bound(exact(1024), 2), 64);
  EXPECT_EQ(circuit_lower_bound(exact(0), 2), 0);
  EXPECT_EQ(circuit_lower_bound(exact(17), 2), 2);
  EXPECT_EQ(circuit_lower_bound(lower(81), 3), 1);
  EXPECT_EQ(circuit_lower_bound(lower(82), 3), 2);
  EXPECT_THROW(circuit_lower_bound(exact(16), 1), DomainError);
  EXPECT_THROW(circuit_lower_bound(upper(16), 2), DomainError);
}

TEST(CircuitLowerBound, ExponentialFamiliesGiveDToTheNMinusFour) {
  for (auto [d, n] : std::vector<std::pair<unsigned, std::size_t>>{{2, 4}, {2, 6}, {2, 8}, {3, 4}, {3, 5}}) {
    auto c = oracle::first_primes(n, d);
    auto g = gamma_exponential_set(monomials(c), 1);
    mpz_class want;
    mpz_ui_pow_ui(want.get_mpz_t(), d, n - 4);
    EXPECT_EQ(circuit_lower_bound(g, d), want) << d << "," << n;
  }
}

TEST(Certificate, InvariantsHold) {
  auto cert = make_certificate(exact(729), 3, 6);
  EXPECT_EQ(cert.c0_lower, 9);
  EXPECT_EQ(cert.tn_param_lower, 729);
  EXPECT_THROW(make_certificate(upper(10), 2, 4), DomainError);
  json v = to_json(cert);
  EXPECT_EQ(v["c0_lower"], 9);
  EXPECT_EQ(v["gamma"]["kind"], "exact");
}

TEST(TensorNetwork, CircuitShapedNetwork) {
  for (unsigned d : {2u, 3u}) {
    auto g = circuit_network(4, {{0, 1}, {2, 3}, {1, 2}, {0, 1}, {2, 3}, {1, 2}}, d);
    EXPECT_EQ(g.internal_count(), 6u);
    EXPECT_EQ(g.max_degree(), 4u);
    auto count = tn_parameter_count(g);
    const mpz_class want = 6 * d * d * d * d;
    EXPECT_EQ(count.coarse, want);
    EXPECT_EQ(count.exact, want);
  }
}

TEST(TensorNetwork, MatrixProductState) {
  auto g = mps_network(8, 2, 5);
  EXPECT_EQ(g.max_degree(), 3u);
  auto count = tn_parameter_count(g);
  EXPECT_EQ(count.coarse, 8 * 125);
  // ends are 2 x 5, the six inner tensors 2 x 5 x 5
  EXPECT_EQ(count.exact, 2 * 10 + 6 * 50);
  auto small_bond = tn_parameter_count(mps_network(8, 3, 2));
  EXPECT_EQ(small_bond.coarse, 8 * 27);
}

TEST(TensorNetwork, SingleVertexIsFullTensor) {
  std::map<std::string, unsigned> dims;
  TensorNetworkGraph::Vertex v;
  for (int i = 0; i < 5; ++i) {
    dims["e" + std::to_string(i)] = 3;
    v.edges.push_back("e" + std::to_string(i));
  }
  TensorNetworkGraph g(3, 5, {v}, dims);
  EXPECT_EQ(tn_parameter_count(g).exact, 243);
  EXPECT_EQ(tn_parameter_count(g).coarse, 243);
}

TEST(TensorNetwork, ExactNeverExceedsCoarse) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t sites = 2 + rng() % 5;
    auto g = mps_network(sites, 2 + rng() % 3, 1 + rng() % 6);
    auto c = tn_parameter_count(g);
    EXPECT_LE(c.exact, c.coarse);
    bool uniform = true;
    for (const auto& v : g.internal()) {
      if (v.edges.size() != g.max_degree()) uniform = false;
      for (const auto& e : v.edges)
        if (g.edge_dims().at(e) != g.max_bond_dim()) uniform = false;
    }
    EXPECT_EQ(c.exact == c.coarse, uniform);
  }
}

TEST(TensorNetwork, MalformedGraphsAreRejected) {
  using V = TensorNetworkGraph::Vertex;
  EXPECT_THROW(TensorNetworkGraph(2, 1, {V{{"a"}}}, {{"a", 2}, {"z", 2}}), DomainError);   // dangling
  EXPECT_THROW(TensorNetworkGraph(2, 1, {V{{"a"}}}, {{"a", 3}}), DomainError);             // external dim != d
  EXPECT_THROW(TensorNetworkGraph(2, 2, {V{{"a"}}}, {{"a", 2}}), DomainError);             // external count
  EXPECT_THROW(TensorNetworkGraph(2, 1, {V{{"a", "b"}}}, {{"a", 2}}), DomainError);        // missing dim
  EXPECT_THROW(TensorNetworkGraph(2, 0, {V{{"a"}}, V{{"a"}}, V{{"a"}}}, {{"a", 2}}), DomainError);  // hyperedge
  EXPECT_THROW(graph_from_json(json::parse(R"({"d":2,"internal":[]})")), FormatError);
}

TEST(TensorNetwork, JsonRoundTrip) {
  auto g = circuit_network(3, {{0, 1}, {1, 2}}, 2);
  auto back = graph_from_json(to_json(g));
  EXPECT_EQ(tn_parameter_count(back).exact, tn_parameter_count(g).exact);
  auto parsed = graph_from_json(json::parse(
      R"({"d":2,"external":2,"internal":[{"edges":["x","b"]},{"edges":["b","y"]}],"edge_dims":{"x":2,"y":2,"b":4}})"));
  EXPECT_EQ(tn_parameter_count(parsed).coarse, 2 * 16);
  EXPECT_EQ(tn_parameter_count(parsed).exact, 16);
}

TEST(TensorNetwork, FeasibilityVerdicts) {
  using V = TensorNetworkGraph::Vertex;
  // 3 vertices, degree <= 2, D = 2: coarse 3 * 4 = 12
  TensorNetworkGraph twelve(2, 2, {V{{"p0", "b"}}, V{{"b", "c"}}, V{{"c", "p1"}}}, {{"p0", 2}, {"p1", 2}, {"b", 2}, {"c", 2}});
  ASSERT_EQ(tn_parameter_count(twelve).coarse, 12);
  EXPECT_EQ(tn_feasibility(exact(16), twelve), Feasibility::infeasible);
  // 4 vertices: coarse 16
  TensorNetworkGraph sixteen(2, 2, {V{{"p0", "b"}}, V{{"b", "c"}}, V{{"c", "e"}}, V{{"e", "p1"}}},
                             {{"p0", 2}, {"p1", 2}, {"b", 2}, {"c", 2}, {"e", 2}});
  EXPECT_EQ(tn_feasibility(exact(16), sixteen), Feasibility::undecided);
  EXPECT_THROW(tn_feasibility(upper(16), sixteen), DomainError);
}

TEST(TensorNetwork, SmallCircuitsCannotCarryCertifiedFamilies) {
  // d = 2, n = 10 family: gamma = 1024 = 64 * 16, so any circuit with < 64 gates is ruled out
  auto cert = families::certify(families::make_family(algebra::FieldContext::first_primes(10, 2).primes(), 2, 1));
  std::vector<std::pair<std::size_t, std::size_t>> gates;
  for (std::size_t g = 0; g < 63; ++g) gates.emplace_back(g % 9, g % 9 + 1);
  EXPECT_EQ(tn_feasibility(cert.gamma, circuit_network(10, gates, 2)), Feasibility::infeasible);
  gates.emplace_back(0, 1);
  EXPECT_EQ(tn_feasibility(cert.gamma, circuit_network(10, gates, 2)), Feasibility::undecided);
}

TEST(Gibbs, Examples) {
  auto c = algebra::make_context({2, 3}, 2);
  auto q = [&](long v) { return RadicalElement::rational(c, v); };
  auto b = gibbs_bounds({{q(1), q(2), q(3)}});
  EXPECT_EQ(b.dim, 1u);
  EXPECT_EQ(b.gamma_lo, 0u);
  EXPECT_EQ(b.gamma_hi, 1u);
  auto r2 = RadicalElement::monomial(c, {1, 0});
  auto r3 = RadicalElement::monomial(c, {0, 1});
  b = gibbs_bounds({{q(1), r2}});
  EXPECT_EQ(b.dim, 2u);
  EXPECT_EQ(b.gamma_lo, 1u);
  b = gibbs_bounds({{q(1), r2, r3}});
  EXPECT_EQ(b.dim, 3u);
  EXPECT_EQ(b.gamma_lo, 2u);
  EXPECT_EQ(b.gamma_hi, 3u);
  b = gibbs_bounds({{q(0)}});
  EXPECT_EQ(b.dim, 0u);
  EXPECT_EQ(b.gamma_hi, 0u);
  EXPECT_THROW(gibbs_bounds({}), DomainError);
}

TEST(Gibbs, IntervalWidthIsOneUnlessZero) {
  auto c = oracle::first_primes(2, 3);
  std::mt19937_64 rng(4);
  auto basis = monomials(c);
  for (int trial = 0; trial < 40; ++trial) {
    SpectrumSet s;
    for (int i = 0; i < 4; ++i) s.values.push_back(mpq_class(static_cast<long>(rng() % 3)) * basis[rng() % basis.size()]);
    auto b = gibbs_bounds(s);
    EXPECT_EQ(b.gamma_hi - b.gamma_lo, b.dim == 0 ? 0u : 1u);
  }
}
