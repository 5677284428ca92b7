// Complex linear algebra over labeled optical modes: bases of
// (path, polarization) labels, amplitude vectors, validated unitary maps,
// composition and permutation.

#ifndef MODESIM_MODE_CALCULUS_HPP
#define MODESIM_MODE_CALCULUS_HPP

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace modesim {

using Complex = std::complex<double>;

// Tolerance for algebraic identities (unitarity, exact trig laws).
inline constexpr double kAlgebraicTol = 1e-12;
// Tolerance for derived physical comparisons, where rounding accumulates.
inline constexpr double kPhysicalTol = 1e-9;
// Default seed for every seeded random sampling in the library.
inline constexpr std::uint64_t kDefaultSeed = 7;

/// Largest entrywise absolute value; the norm used for all matrix comparisons.
double max_abs(const Eigen::MatrixXcd& m);

enum class Polarization { H, V };

std::string to_string(Polarization pol);

/// One optical mode: a spatial beam path plus a polarization component.
struct ModeLabel {
  std::string path;
  Polarization polarization;

  auto operator<=>(const ModeLabel&) const = default;

  /// "path.H" / "path.V"
  std::string str() const;
  /// Inverse of str(); throws std::invalid_argument on malformed input.
  static ModeLabel parse(const std::string& text);
};

/// An ordered, duplicate-free list of mode labels. Immutable once built.
class ModeBasis {
 public:
  explicit ModeBasis(std::vector<ModeLabel> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<ModeLabel>& labels() const { return labels_; }
  const ModeLabel& label(std::size_t i) const { return labels_.at(i); }

  bool contains(const ModeLabel& label) const;
  /// Position of a label; throws std::invalid_argument if absent.
  std::size_t index_of(const ModeLabel& label) const;

  bool operator==(const ModeBasis& other) const;

  /// "[a.H, a.V, b.H]" — used in error messages.
  std::string str() const;

 private:
  std::vector<ModeLabel> labels_;
  std::map<ModeLabel, std::size_t> index_;
};

/// Field amplitudes over a basis; intensity of mode k is |amplitudes[k]|^2.
struct AmplitudeVector {
  AmplitudeVector(ModeBasis basis, Eigen::VectorXcd amplitudes);

  double norm() const { return amplitudes.norm(); }

  ModeBasis basis;
  Eigen::VectorXcd amplitudes;
};

// Column convention: column k of the matrix is the image of basis mode k,
// so a transformation law "H -> a H + b V" reads as the column (a, b).
class UnitaryMap {
 public:
  /// Validates U†U = I to kAlgebraicTol; throws std::invalid_argument otherwise.
  UnitaryMap(ModeBasis basis, Eigen::MatrixXcd matrix);

  static UnitaryMap identity(ModeBasis basis);

  const ModeBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  ModeBasis basis_;
  Eigen::MatrixXcd matrix_;
};

/// Sequential application: `first`, then `second`. Both maps must share a basis.
UnitaryMap compose(const UnitaryMap& first, const UnitaryMap& second);

/// Matrix action on an amplitude vector; preserves the Euclidean norm.
AmplitudeVector apply(const UnitaryMap& map, const AmplitudeVector& state);

/// Permutation unitary sending mode l to relabel(l). Labels missing from the
/// mapping stay fixed; the mapping must be injective and closed over its own
/// key set so the identity extension is a bijection on the basis.
UnitaryMap permutation_map(const ModeBasis& basis,
                           const std::map<ModeLabel, ModeLabel>& relabel);

}  // namespace modesim

#endif  // MODESIM_MODE_CALCULUS_HPP
