#include "modesim/contextuality_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace modesim {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(std::abs(num), den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num)
                  : std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}

Rational Rational::parse(const std::string& text) {
  double decimal = 0.0;
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      return Rational(std::stoll(text.substr(0, slash)),
                      std::stoll(text.substr(slash + 1)));
    }
    if (text.find('.') == std::string::npos &&
        text.find('e') == std::string::npos &&
        text.find('E') == std::string::npos) {
      return Rational(std::stoll(text));
    }
    decimal = std::stod(text);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("cannot parse rational from '" + text + "'");
  }
  return from_double(decimal);
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("coefficient is not finite");
  }
  // Continued-fraction best approximation with bounded denominator.
  constexpr long long kMaxDen = 10'000;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double floor = std::floor(frac);
    const auto a = static_cast<long long>(floor);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > kMaxDen) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double remainder = frac - floor;
    if (remainder < 1e-15) break;
    frac = 1.0 / remainder;
  }
  const Rational candidate(p1, q1);
  if (std::abs(candidate.value() - x) > 1e-12 * std::max(1.0, std::abs(x))) {
    std::ostringstream out;
    out << "coefficient " << x << " is not close to a rational with denominator <= "
        << kMaxDen;
    throw std::invalid_argument(out.str());
  }
  return candidate;
}

RaySet::RaySet(std::vector<std::string> names, std::vector<Eigen::Vector3cd> rays)
    : names_(std::move(names)), rays_(std::move(rays)) {
  if (names_.size() != rays_.size()) {
    throw std::invalid_argument("ray set has " + std::to_string(names_.size()) +
                                " names for " + std::to_string(rays_.size()) +
                                " rays");
  }
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    const double norm = rays_[i].norm();
    if (std::abs(norm - 1.0) > kAlgebraicTol) {
      std::ostringstream out;
      out << "ray '" << names_[i] << "' has norm " << norm;
      throw std::invalid_argument(out.str());
    }
  }
}

RaySet RaySet::normalized(std::vector<std::string> names,
                          std::vector<Eigen::Vector3cd> rays) {
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const double norm = rays[i].norm();
    if (norm < 1e-9) {
      throw std::invalid_argument("ray " + std::to_string(i) + " is (near) zero");
    }
    rays[i] /= norm;
  }
  return RaySet(std::move(names), std::move(rays));
}

CompatibilityGraph::CompatibilityGraph(int vertex_count_in,
                                       std::vector<std::pair<int, int>> edges_in)
    : vertex_count(vertex_count_in), edges(std::move(edges_in)) {
  if (vertex_count < 0) {
    throw std::invalid_argument("negative vertex count");
  }
  for (auto& [i, j] : edges) {
    if (i == j) {
      throw std::invalid_argument("self-loop on vertex " + std::to_string(i));
    }
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= vertex_count) {
      throw std::invalid_argument("edge (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") outside vertex range");
    }
  }
  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  edges.erase(last, edges.end());
}

CompatibilityGraph orthogonality_graph(const RaySet& rays, double tol) {
  std::vector<std::pair<int, int>> edges;
  const int n = static_cast<int>(rays.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double overlap = std::abs(rays.ray(i).dot(rays.ray(j)));
      if (overlap <= tol) {
        edges.emplace_back(i, j);
      }
    }
  }
  return CompatibilityGraph(n, std::move(edges));
}

namespace {

void require_expression_matches(const InequalityExpression& expr,
                                const CompatibilityGraph& graph) {
  if (static_cast<int>(expr.vertex_coeffs.size()) != graph.vertex_count) {
    throw std::invalid_argument(
        "expression has " + std::to_string(expr.vertex_coeffs.size()) +
        " vertex coefficients for " + std::to_string(graph.vertex_count) +
        " vertices");
  }
  if (expr.edge_coeffs.size() != graph.edges.size()) {
    throw std::invalid_argument("expression has " +
                                std::to_string(expr.edge_coeffs.size()) +
                                " edge coefficients for " +
                                std::to_string(graph.edges.size()) + " edges");
  }
  for (const auto& edge : graph.edges) {
    if (expr.edge_coeffs.find(edge) == expr.edge_coeffs.end()) {
      throw std::invalid_argument("expression is missing coefficient for edge (" +
                                  std::to_string(edge.first) + ", " +
                                  std::to_string(edge.second) + ")");
    }
  }
}

long long scaled_integer(const Rational& r, long long scale) {
  return r.num * (scale / r.den);
}

}  // namespace

Rational evaluate_assignment(const InequalityExpression& expr,
                             const std::vector<int>& assignment) {
  const int n = static_cast<int>(expr.vertex_coeffs.size());
  if (static_cast<int>(assignment.size()) != n) {
    throw std::invalid_argument("assignment length does not match vertex count");
  }
  for (const int a : assignment) {
    if (a != 1 && a != -1) {
      throw std::invalid_argument("assignment entries must be ±1");
    }
  }
  Rational total(0);
  for (int i = 0; i < n; ++i) {
    total = total + expr.vertex_coeffs[i] * Rational(assignment[i]);
  }
  for (const auto& [edge, coeff] : expr.edge_coeffs) {
    total = total + coeff * Rational(assignment.at(edge.first) *
                                     assignment.at(edge.second));
  }
  return total;
}

std::pair<Rational, std::vector<int>> classical_bound_bruteforce(
    const InequalityExpression& expr, const CompatibilityGraph& graph) {
  require_expression_matches(expr, graph);
  const int n = graph.vertex_count;
  if (n > 30) {
    throw std::invalid_argument("refusing exhaustive enumeration for n = " +
                                std::to_string(n) + " (> 30)");
  }

  long long scale = 1;
  for (const auto& c : expr.vertex_coeffs) scale = std::lcm(scale, c.den);
  for (const auto& [edge, c] : expr.edge_coeffs) scale = std::lcm(scale, c.den);

  std::vector<long long> vertex(n);
  for (int i = 0; i < n; ++i) vertex[i] = scaled_integer(expr.vertex_coeffs[i], scale);
  std::vector<std::vector<std::pair<int, long long>>> adjacent(n);
  for (const auto& [edge, c] : expr.edge_coeffs) {
    const long long w = scaled_integer(c, scale);
    adjacent[edge.first].emplace_back(edge.second, w);
    adjacent[edge.second].emplace_back(edge.first, w);
  }

  std::vector<int> a(n, 1);
  long long value = 0;
  for (int i = 0; i < n; ++i) value += vertex[i];
  for (const auto& [edge, c] : expr.edge_coeffs) value += scaled_integer(c, scale);

  long long best = value;
  std::vector<int> best_assignment = a;

  // Reflected Gray code: step t flips exactly the bit countr_zero(t).
  const std::uint64_t total = n == 0 ? 1 : (std::uint64_t{1} << n);
  for (std::uint64_t t = 1; t < total; ++t) {
    const int i = std::countr_zero(t);
    long long around = vertex[i];
    for (const auto& [j, w] : adjacent[i]) around += w * a[j];
    value -= 2 * a[i] * around;
    a[i] = -a[i];
    if (value > best) {
      best = value;
      best_assignment = a;
    }
  }

  return {Rational(best, scale), std::move(best_assignment)};
}

namespace {

void require_density_matrix(const Eigen::Matrix3cd& state) {
  if (max_abs(state - state.adjoint()) > kPhysicalTol) {
    throw std::invalid_argument("state is not Hermitian");
  }
  if (std::abs(state.trace().real() - 1.0) > kPhysicalTol ||
      std::abs(state.trace().imag()) > kPhysicalTol) {
    std::ostringstream out;
    out << "state trace " << state.trace() << " is not 1";
    throw std::invalid_argument(out.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(state);
  if (solver.eigenvalues().minCoeff() < -kPhysicalTol) {
    std::ostringstream out;
    out << "state has negative eigenvalue " << solver.eigenvalues().minCoeff();
    throw std::invalid_argument(out.str());
  }
}

Eigen::Matrix3cd ray_observable(const Eigen::Vector3cd& ray) {
  return Eigen::Matrix3cd::Identity() - 2.0 * (ray * ray.adjoint());
}

}  // namespace

double quantum_value(const InequalityExpression& expr, const RaySet& rays,
                     const Eigen::Matrix3cd& state) {
  if (expr.vertex_coeffs.size() != rays.size()) {
    throw std::invalid_argument("expression has " +
                                std::to_string(expr.vertex_coeffs.size()) +
                                " vertex coefficients for " +
                                std::to_string(rays.size()) + " rays");
  }
  require_density_matrix(state);

  const int n = static_cast<int>(rays.size());
  std::vector<Eigen::Matrix3cd> observables(n);
  for (int i = 0; i < n; ++i) observables[i] = ray_observable(rays.ray(i));

  Eigen::Matrix3cd total = Eigen::Matrix3cd::Zero();
  for (int i = 0; i < n; ++i) {
    total += expr.vertex_coeffs[i].value() * observables[i];
  }
  for (const auto& [edge, coeff] : expr.edge_coeffs) {
    if (edge.first < 0 || edge.first >= n || edge.second < 0 || edge.second >= n) {
      throw std::invalid_argument("edge (" + std::to_string(edge.first) + ", " +
                                  std::to_string(edge.second) +
                                  ") references a ray outside the set");
    }
    const auto& a = observables[edge.first];
    const auto& b = observables[edge.second];
    const double commutator = max_abs(a * b - b * a);
    if (commutator > kPhysicalTol) {
      std::ostringstream out;
      out << "edge (" << edge.first << ", " << edge.second
          << ") joins non-commuting observables (max |[A,B]| = " << commutator
          << "); the expression is ill-defined";
      throw std::invalid_argument(out.str());
    }
    total += coeff.value() * (a * b);
  }
  return (state * total).trace().real();
}

ScanResult state_independence_scan(const InequalityExpression& expr,
                                   const RaySet& rays, int n_states,
                                   std::uint64_t seed) {
  if (n_states < 1) {
    throw std::invalid_argument("scan needs at least one state");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  ScanResult result;
  result.values.reserve(static_cast<std::size_t>(n_states) + 1);
  for (int k = 0; k < n_states; ++k) {
    Eigen::Vector3cd psi;
    for (int i = 0; i < 3; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
    psi.normalize();
    result.values.push_back(quantum_value(expr, rays, psi * psi.adjoint()));
  }
  result.values.push_back(
      quantum_value(expr, rays, Eigen::Matrix3cd::Identity() / 3.0));

  const auto [lo, hi] = std::minmax_element(result.values.begin(), result.values.end());
  result.min_value = *lo;
  result.max_value = *hi;
  result.spread = result.max_value - result.min_value;
  return result;
}

InequalityReport evaluate_inequality(const InequalityExpression& expr,
                                     const CompatibilityGraph& graph,
                                     const RaySet& rays,
                                     const Eigen::Matrix3cd& state) {
  auto [bound, assignment] = classical_bound_bruteforce(expr, graph);
  const double quantum = quantum_value(expr, rays, state);
  InequalityReport report{std::move(bound), std::move(assignment), quantum, 0.0};
  report.violation = report.quantum_value - report.classical_bound.value();
  return report;
}

}  // namespace modesim
