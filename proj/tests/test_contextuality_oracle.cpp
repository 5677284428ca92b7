#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "modesim/contextuality_oracle.hpp"
#include "modesim/io.hpp"

#include <cmath>
#include <limits>

using namespace modesim;
using testutil::make_rng;

namespace {

RaySet standard_triple() {
  return RaySet({"e0", "e1", "e2"},
                {Eigen::Vector3cd(1, 0, 0), Eigen::Vector3cd(0, 1, 0),
                 Eigen::Vector3cd(0, 0, 1)});
}

io::InequalityFile bundled_13() {
  return io::parse_inequality_file(std::string(MODESIM_DATA_DIR) + "/yu_oh_13.json");
}

// Plain full enumeration, no Gray code: the independent oracle for the
// exhaustive bound. Coefficients arrive pre-scaled to integers.
long long plain_enumeration_max(const std::vector<long long>& vertex,
                                const std::vector<std::pair<int, int>>& edges,
                                const std::vector<long long>& edge_weights) {
  const int n = static_cast<int>(vertex.size());
  long long best = std::numeric_limits<long long>::min();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long long value = 0;
    for (int i = 0; i < n; ++i) {
      value += ((mask >> i) & 1U) ? vertex[i] : -vertex[i];
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const int si = ((mask >> edges[e].first) & 1U) ? 1 : -1;
      const int sj = ((mask >> edges[e].second) & 1U) ? 1 : -1;
      value += edge_weights[e] * si * sj;
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational::parse("-1/4").str() == "-1/4");
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
  CHECK((Rational(2, 3) * Rational(3, 4)) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(Rational::from_double(M_PI / 4.0),
                       doctest::Contains("not close to a rational"),
                       std::invalid_argument);
}

TEST_CASE("ray sets validate and normalize") {
  CHECK_THROWS_WITH_AS(RaySet({"r"}, {Eigen::Vector3cd(1, 1, 0)}),
                       doctest::Contains("norm"), std::invalid_argument);
  const RaySet rays =
      RaySet::normalized({"r"}, {Eigen::Vector3cd(1, 1, 0)});
  CHECK(std::abs(rays.ray(0).norm() - 1.0) <= kAlgebraicTol);
  CHECK_THROWS_AS(RaySet::normalized({"z"}, {Eigen::Vector3cd(0, 0, 0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RaySet({"a", "b"}, {Eigen::Vector3cd(1, 0, 0)}),
                  std::invalid_argument);
}

TEST_CASE("compatibility graph validation") {
  CHECK_THROWS_WITH_AS(CompatibilityGraph(3, {{1, 1}}), doctest::Contains("self-loop"),
                       std::invalid_argument);
  CHECK_THROWS_AS(CompatibilityGraph(3, {{0, 3}}), std::invalid_argument);
  const CompatibilityGraph g(3, {{2, 0}, {0, 1}, {1, 0}});
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
}

TEST_CASE("orthogonality graphs") {
  SUBCASE("the standard basis forms a triangle") {
    const CompatibilityGraph g = orthogonality_graph(standard_triple());
    CHECK(g.vertex_count == 3);
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  }

  SUBCASE("non-orthogonal rays get no edge") {
    const RaySet rays = RaySet::normalized(
        {"e0", "plus"}, {Eigen::Vector3cd(1, 0, 0), Eigen::Vector3cd(1, 1, 0)});
    CHECK(orthogonality_graph(rays).edges.empty());
  }

  SUBCASE("the bundled 13 rays match an independent pairwise scan") {
    const io::InequalityFile file = bundled_13();
    const CompatibilityGraph g = orthogonality_graph(file.rays);

    std::vector<std::pair<int, int>> expected;
    for (int i = 0; i < 13; ++i) {
      for (int j = i + 1; j < 13; ++j) {
        Complex overlap = 0.0;
        for (int c = 0; c < 3; ++c) {
          overlap += std::conj(file.rays.ray(i)(c)) * file.rays.ray(j)(c);
        }
        if (std::abs(overlap) <= kPhysicalTol) expected.emplace_back(i, j);
      }
    }
    CHECK(g.edges == expected);
    CHECK(g.edges.size() == 24);
  }
}

TEST_CASE("classical bound by exhaustive enumeration") {
  SUBCASE("single vertex") {
    InequalityExpression expr;
    expr.vertex_coeffs = {Rational(1)};
    const auto [bound, assignment] =
        classical_bound_bruteforce(expr, CompatibilityGraph(1, {}));
    CHECK(bound == Rational(1));
    CHECK(assignment == std::vector<int>{1});
  }

  SUBCASE("triangle with unit edge coefficients") {
    const CompatibilityGraph triangle(3, {{0, 1}, {0, 2}, {1, 2}});
    InequalityExpression expr;
    expr.vertex_coeffs = {Rational(0), Rational(0), Rational(0)};
    for (const auto& e : triangle.edges) expr.edge_coeffs[e] = Rational(1);

    const auto [bound, assignment] = classical_bound_bruteforce(expr, triangle);
    CHECK(bound == Rational(3));
    CHECK((assignment == std::vector<int>{1, 1, 1} ||
           assignment == std::vector<int>{-1, -1, -1}));
    CHECK(evaluate_assignment(expr, assignment) == bound);

    // Negating the coefficients turns the maximum into minus the minimum.
    InequalityExpression negated = expr;
    for (auto& [e, c] : negated.edge_coeffs) c = c * Rational(-1);
    const auto [neg_bound, neg_assignment] =
        classical_bound_bruteforce(negated, triangle);
    CHECK(neg_bound == Rational(1));  // so min of the original is -1
  }

  SUBCASE("vertex terms") {
    const CompatibilityGraph g(2, {{0, 1}});
    InequalityExpression expr;
    expr.vertex_coeffs = {Rational(2), Rational(-3)};
    expr.edge_coeffs[{0, 1}] = Rational(1, 2);
    // max over 4 assignments: (+1,-1): 2 + 3 - 1/2 = 9/2.
    const auto [bound, assignment] = classical_bound_bruteforce(expr, g);
    CHECK(bound == Rational(9, 2));
    CHECK(assignment == std::vector<int>{1, -1});
    CHECK(evaluate_assignment(expr, assignment) == bound);

    // Negating every coefficient swaps the maximum with minus the minimum;
    // here min f = f(-1, +1) = -11/2.
    InequalityExpression negated;
    negated.vertex_coeffs = {Rational(-2), Rational(3)};
    negated.edge_coeffs[{0, 1}] = Rational(-1, 2);
    const auto [neg_bound, neg_assignment] = classical_bound_bruteforce(negated, g);
    CHECK(neg_bound == Rational(11, 2));
    CHECK(neg_assignment == std::vector<int>{-1, 1});
  }

  SUBCASE("mismatched expression/graph pairs are rejected") {
    InequalityExpression expr;
    expr.vertex_coeffs = {Rational(1), Rational(1)};
    CHECK_THROWS_AS(classical_bound_bruteforce(expr, CompatibilityGraph(3, {})),
                    std::invalid_argument);
    expr.vertex_coeffs = {Rational(1), Rational(1), Rational(1)};
    expr.edge_coeffs[{0, 1}] = Rational(1);
    CHECK_THROWS_AS(classical_bound_bruteforce(expr, CompatibilityGraph(3, {{1, 2}})),
                    std::invalid_argument);
  }

  SUBCASE("enumeration refuses more than 30 vertices") {
    InequalityExpression expr;
    expr.vertex_coeffs.assign(31, Rational(1));
    CHECK_THROWS_WITH_AS(classical_bound_bruteforce(expr, CompatibilityGraph(31, {})),
                         doctest::Contains("31"), std::invalid_argument);
  }
}

TEST_CASE("sign flip invariance when vertex terms vanish") {
  auto rng = make_rng(51);
  std::uniform_int_distribution<int> coin(0, 1);
  const CompatibilityGraph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  InequalityExpression expr;
  expr.vertex_coeffs.assign(4, Rational(0));
  for (const auto& e : g.edges) {
    expr.edge_coeffs[e] = Rational(coin(rng) == 0 ? 1 : -1, 2);
  }
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> assignment(4);
    for (auto& a : assignment) a = coin(rng) == 0 ? 1 : -1;
    std::vector<int> negated = assignment;
    for (auto& a : negated) a = -a;
    CHECK(evaluate_assignment(expr, assignment) ==
          evaluate_assignment(expr, negated));
  }
  const auto [bound, assignment] = classical_bound_bruteforce(expr, g);
  std::vector<int> negated = assignment;
  for (auto& a : negated) a = -a;
  CHECK(evaluate_assignment(expr, negated) == bound);
}

TEST_CASE("quantum values") {
  SUBCASE("a single ray observable on its own eigenstates") {
    InequalityExpression expr;
    expr.vertex_coeffs = {Rational(1)};
    const RaySet ray({"e0"}, {Eigen::Vector3cd(1, 0, 0)});

    Eigen::Matrix3cd rho0 = Eigen::Matrix3cd::Zero();
    rho0(0, 0) = 1.0;
    CHECK(quantum_value(expr, ray, rho0) == doctest::Approx(-1.0).epsilon(1e-12));

    Eigen::Matrix3cd rho1 = Eigen::Matrix3cd::Zero();
    rho1(1, 1) = 1.0;
    CHECK(quantum_value(expr, ray, rho1) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("invalid density matrices are rejected") {
    InequalityExpression expr;
    expr.vertex_coeffs = {Rational(1)};
    const RaySet ray({"e0"}, {Eigen::Vector3cd(1, 0, 0)});

    CHECK_THROWS_WITH_AS(quantum_value(expr, ray, Eigen::Matrix3cd::Identity()),
                         doctest::Contains("trace"), std::invalid_argument);

    Eigen::Matrix3cd skew = Eigen::Matrix3cd::Identity() / 3.0;
    skew(0, 1) = 0.2;
    CHECK_THROWS_WITH_AS(quantum_value(expr, ray, skew),
                         doctest::Contains("Hermitian"), std::invalid_argument);

    Eigen::Matrix3cd negative = Eigen::Matrix3cd::Zero();
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_WITH_AS(quantum_value(expr, ray, negative),
                         doctest::Contains("negative eigenvalue"),
                         std::invalid_argument);
  }

  SUBCASE("edges joining non-commuting observables are rejected") {
    const RaySet rays = RaySet::normalized(
        {"e0", "plus"}, {Eigen::Vector3cd(1, 0, 0), Eigen::Vector3cd(1, 1, 0)});
    InequalityExpression expr;
    expr.vertex_coeffs = {Rational(0), Rational(0)};
    expr.edge_coeffs[{0, 1}] = Rational(1);
    CHECK_THROWS_WITH_AS(
        quantum_value(expr, rays, Eigen::Matrix3cd::Identity() / 3.0),
        doctest::Contains("ill-defined"), std::invalid_argument);
  }

  SUBCASE("quantum_value is linear in the state") {
    auto rng = make_rng(52);
    const io::InequalityFile file = bundled_13();
    const CompatibilityGraph g = orthogonality_graph(file.rays);
    const InequalityExpression expr = io::build_expression(file, g);
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::Vector3cd psi1 = testutil::random_unit_state(rng, 3);
      const Eigen::Vector3cd psi2 = testutil::random_unit_state(rng, 3);
      const Eigen::Matrix3cd rho1 = psi1 * psi1.adjoint();
      const Eigen::Matrix3cd rho2 = psi2 * psi2.adjoint();
      const double mixed = quantum_value(expr, file.rays, 0.5 * rho1 + 0.5 * rho2);
      const double split = 0.5 * quantum_value(expr, file.rays, rho1) +
                           0.5 * quantum_value(expr, file.rays, rho2);
      CHECK(mixed == doctest::Approx(split).epsilon(1e-9));
    }
  }
}

TEST_CASE("every orthogonality edge joins commuting observables") {
  auto rng = make_rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> names;
    std::vector<Eigen::Vector3cd> vectors;
    for (int i = 0; i < 6; ++i) {
      names.push_back("r" + std::to_string(i));
      vectors.push_back(testutil::random_unit_state(rng, 3));
    }
    // Plant an orthogonal pair so the graph is never trivially empty.
    Eigen::Vector3cd perp = vectors[0].unitOrthogonal();
    names.push_back("perp");
    vectors.push_back(perp);

    const RaySet rays(names, vectors);
    const CompatibilityGraph g = orthogonality_graph(rays);
    for (const auto& [i, j] : g.edges) {
      const Eigen::Matrix3cd a =
          Eigen::Matrix3cd::Identity() - 2.0 * rays.ray(i) * rays.ray(i).adjoint();
      const Eigen::Matrix3cd b =
          Eigen::Matrix3cd::Identity() - 2.0 * rays.ray(j) * rays.ray(j).adjoint();
      CHECK(max_abs(a * b - b * a) <= kPhysicalTol);
    }
  }
}

TEST_CASE("the bundled 13-ray inequality") {
  const io::InequalityFile file = bundled_13();
  const CompatibilityGraph graph = orthogonality_graph(file.rays);
  const InequalityExpression expr = io::build_expression(file, graph);

  SUBCASE("exhaustive bound is exactly 8, confirmed by a plain enumerator") {
    const auto [bound, assignment] = classical_bound_bruteforce(expr, graph);
    CHECK(bound == Rational(8));
    CHECK(evaluate_assignment(expr, assignment) == bound);

    // Oracle: full scan over all 8192 assignments with x4-scaled integers.
    std::vector<long long> vertex(13, 4);
    std::vector<long long> weights(graph.edges.size(), -2);
    const long long oracle_best =
        plain_enumeration_max(vertex, graph.edges, weights);
    CHECK(oracle_best == 32);  // 8 after undoing the x4 scaling
    CHECK(bound == Rational(oracle_best, 4));
  }

  SUBCASE("quantum value at the maximally mixed state is 25/3") {
    const double value =
        quantum_value(expr, file.rays, Eigen::Matrix3cd::Identity() / 3.0);
    CHECK(value == doctest::Approx(25.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("the scan is state independent and always violating") {
    const ScanResult scan = state_independence_scan(expr, file.rays, 100);
    CHECK(scan.values.size() == 101);
    CHECK(scan.spread <= kPhysicalTol);
    for (const double value : scan.values) {
      CHECK(value == doctest::Approx(25.0 / 3.0).epsilon(1e-9));
      CHECK(value - 8.0 > 0.0);  // positive violation for every state
    }
  }

  SUBCASE("full report") {
    const InequalityReport report = evaluate_inequality(
        expr, graph, file.rays, Eigen::Matrix3cd::Identity() / 3.0);
    CHECK(report.classical_bound == Rational(8));
    CHECK(report.quantum_value == doctest::Approx(25.0 / 3.0).epsilon(1e-12));
    CHECK(report.violation == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }
}

TEST_CASE("state independence scans") {
  SUBCASE("a resolution of the identity is constant for every state") {
    InequalityExpression expr;
    expr.vertex_coeffs = {Rational(1), Rational(1), Rational(1)};
    const ScanResult scan = state_independence_scan(expr, standard_triple(), 50);
    for (const double value : scan.values) {
      CHECK(value == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(scan.spread <= kAlgebraicTol);
  }

  SUBCASE("a single projector expression is strongly state dependent") {
    InequalityExpression expr;
    expr.vertex_coeffs = {Rational(1)};
    const RaySet ray({"e0"}, {Eigen::Vector3cd(1, 0, 0)});
    const ScanResult scan = state_independence_scan(expr, ray, 1000);
    CHECK(scan.spread > 1.5);
    CHECK(scan.min_value >= -1.0 - kPhysicalTol);
    CHECK(scan.max_value <= 1.0 + kPhysicalTol);
  }

  SUBCASE("identical seeds reproduce identical values") {
    InequalityExpression expr;
    expr.vertex_coeffs = {Rational(1), Rational(1), Rational(1)};
    const ScanResult a = state_independence_scan(expr, standard_triple(), 10, 99);
    const ScanResult b = state_independence_scan(expr, standard_triple(), 10, 99);
    CHECK(a.values == b.values);
    CHECK_THROWS_AS(state_independence_scan(expr, standard_triple(), 0),
                    std::invalid_argument);
  }
}
