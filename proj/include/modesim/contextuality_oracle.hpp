// Noncontextuality inequality evaluation: exhaustive classical bound over
// deterministic ±1 assignments in exact integer arithmetic, quantum values
// for ray sets and states, and state-independence scans.

#ifndef MODESIM_CONTEXTUALITY_ORACLE_HPP
#define MODESIM_CONTEXTUALITY_ORACLE_HPP

#include "modesim/mode_calculus.hpp"

#include <utility>
#include <vector>

namespace modesim {

/// Exact rational p/q with q > 0, always reduced.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);
  Rational(long long n) : num(n), den(1) {}  // NOLINT: implicit integers wanted

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const = default;

  /// Accepts "p/q", "p", or a decimal string; decimals must be within
  /// 1e-12 of a rational with denominator at most 1e4.
  static Rational parse(const std::string& text);
  static Rational from_double(double x);
};

/// Named unit rays in the 3-dimensional logical space.
class RaySet {
 public:
  RaySet(std::vector<std::string> names, std::vector<Eigen::Vector3cd> rays);

  /// Normalizes the given vectors; rejects (near-)zero ones.
  static RaySet normalized(std::vector<std::string> names,
                           std::vector<Eigen::Vector3cd> rays);

  std::size_t size() const { return rays_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Eigen::Vector3cd>& rays() const { return rays_; }
  const Eigen::Vector3cd& ray(std::size_t i) const { return rays_.at(i); }

 private:
  std::vector<std::string> names_;
  std::vector<Eigen::Vector3cd> rays_;
};

/// Vertices 0..n-1 with unordered edges (i < j), sorted and duplicate-free.
struct CompatibilityGraph {
  CompatibilityGraph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count;
  std::vector<std::pair<int, int>> edges;
};

/// Edge (i, j) present iff |<r_i|r_j>| <= tol.
CompatibilityGraph orthogonality_graph(const RaySet& rays,
                                       double tol = kPhysicalTol);

/// Linear form  sum_i v_i <A_i>  +  sum_{(i,j)} w_ij <A_i A_j>  over a
/// compatibility graph; one w per unordered edge.
struct InequalityExpression {
  std::vector<Rational> vertex_coeffs;
  std::map<std::pair<int, int>, Rational> edge_coeffs;
};

/// Exact value of the expression at a deterministic ±1 assignment.
Rational evaluate_assignment(const InequalityExpression& expr,
                             const std::vector<int>& assignment);

/// Exact maximum over all 2^n deterministic ±1 assignments, by Gray-code
/// enumeration on integer-scaled coefficients. Requires n <= 30 and that
/// the expression's edge coefficients match the graph's edge set.
std::pair<Rational, std::vector<int>> classical_bound_bruteforce(
    const InequalityExpression& expr, const CompatibilityGraph& graph);

/// Tr(rho M) for M = sum v_i A_i + sum w_ij A_i A_j with A = I - 2|r><r|.
/// The state must be a density matrix; every edge pair must commute to
/// kPhysicalTol, otherwise the expression is ill-defined.
double quantum_value(const InequalityExpression& expr, const RaySet& rays,
                     const Eigen::Matrix3cd& state);

struct ScanResult {
  std::vector<double> values;  // one per random state, then the mixed state
  double min_value;
  double max_value;
  double spread;
};

/// quantum_value over seeded random pure qutrit states plus I/3.
ScanResult state_independence_scan(const InequalityExpression& expr,
                                   const RaySet& rays, int n_states,
                                   std::uint64_t seed = kDefaultSeed);

struct InequalityReport {
  Rational classical_bound;
  std::vector<int> maximizing_assignment;
  double quantum_value;
  double violation;  // quantum_value - classical_bound
};

InequalityReport evaluate_inequality(const InequalityExpression& expr,
                                     const CompatibilityGraph& graph,
                                     const RaySet& rays,
                                     const Eigen::Matrix3cd& state);

}  // namespace modesim

#endif  // MODESIM_CONTEXTUALITY_ORACLE_HPP
