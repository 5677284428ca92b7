#include "modesim/mode_calculus.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace modesim {

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string to_string(Polarization pol) {
  return pol == Polarization::H ? "H" : "V";
}

std::string ModeLabel::str() const { return path + "." + to_string(polarization); }

ModeLabel ModeLabel::parse(const std::string& text) {
  const auto dot = text.rfind('.');
  if (dot == std::string::npos || dot == 0) {
    throw std::invalid_argument("mode label '" + text +
                                "' is not of the form path.H or path.V");
  }
  const std::string pol = text.substr(dot + 1);
  if (pol != "H" && pol != "V") {
    throw std::invalid_argument("mode label '" + text +
                                "' has polarization '" + pol +
                                "', expected H or V");
  }
  return ModeLabel{text.substr(0, dot),
                   pol == "H" ? Polarization::H : Polarization::V};
}

ModeBasis::ModeBasis(std::vector<ModeLabel> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const auto [it, inserted] = index_.emplace(labels_[i], i);
    if (!inserted) {
      throw std::invalid_argument("duplicate mode label '" + labels_[i].str() +
                                  "' in basis");
    }
  }
}

bool ModeBasis::contains(const ModeLabel& label) const {
  return index_.count(label) != 0;
}

std::size_t ModeBasis::index_of(const ModeLabel& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) {
    throw std::invalid_argument("mode label '" + label.str() +
                                "' not in basis " + str());
  }
  return it->second;
}

bool ModeBasis::operator==(const ModeBasis& other) const {
  return labels_ == other.labels_;
}

std::string ModeBasis::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i != 0) out << ", ";
    out << labels_[i].str();
  }
  out << ']';
  return out.str();
}

AmplitudeVector::AmplitudeVector(ModeBasis basis_in, Eigen::VectorXcd amplitudes_in)
    : basis(std::move(basis_in)), amplitudes(std::move(amplitudes_in)) {
  if (static_cast<std::size_t>(amplitudes.size()) != basis.size()) {
    throw std::invalid_argument(
        "amplitude vector of length " + std::to_string(amplitudes.size()) +
        " does not match basis " + basis.str());
  }
}

UnitaryMap::UnitaryMap(ModeBasis basis_in, Eigen::MatrixXcd matrix_in)
    : basis_(std::move(basis_in)), matrix_(std::move(matrix_in)) {
  const auto n = static_cast<Eigen::Index>(basis_.size());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::invalid_argument("matrix is " + std::to_string(matrix_.rows()) +
                                "x" + std::to_string(matrix_.cols()) +
                                " but basis " + basis_.str() + " has " +
                                std::to_string(n) + " modes");
  }
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  const double defect =
      max_abs(gram - Eigen::MatrixXcd::Identity(n, n));
  if (defect > kAlgebraicTol) {
    std::ostringstream out;
    out << "matrix on basis " << basis_.str()
        << " is not unitary: max |U†U - I| = " << defect;
    throw std::invalid_argument(out.str());
  }
}

UnitaryMap UnitaryMap::identity(ModeBasis basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  return UnitaryMap(std::move(basis), Eigen::MatrixXcd::Identity(n, n));
}

namespace {

void require_same_basis(const ModeBasis& a, const ModeBasis& b,
                        const char* operation) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(operation) + ": basis mismatch, " +
                                a.str() + " vs " + b.str());
  }
}

}  // namespace

UnitaryMap compose(const UnitaryMap& first, const UnitaryMap& second) {
  require_same_basis(first.basis(), second.basis(), "compose");
  return UnitaryMap(first.basis(), second.matrix() * first.matrix());
}

AmplitudeVector apply(const UnitaryMap& map, const AmplitudeVector& state) {
  require_same_basis(map.basis(), state.basis, "apply");
  return AmplitudeVector(state.basis, map.matrix() * state.amplitudes);
}

UnitaryMap permutation_map(const ModeBasis& basis,
                           const std::map<ModeLabel, ModeLabel>& relabel) {
  std::map<ModeLabel, int> image_count;
  for (const auto& [from, to] : relabel) {
    basis.index_of(from);
    basis.index_of(to);
    if (++image_count[to] > 1) {
      throw std::invalid_argument("relabel is not injective: '" + to.str() +
                                  "' is the image of two labels");
    }
  }
  for (const auto& [from, to] : relabel) {
    if (relabel.count(to) == 0) {
      throw std::invalid_argument(
          "relabel is not a bijection: image '" + to.str() +
          "' is not itself relabeled, so the identity extension would collide");
    }
  }

  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const ModeLabel& from = basis.label(k);
    const auto it = relabel.find(from);
    const ModeLabel& to = it == relabel.end() ? from : it->second;
    matrix(static_cast<Eigen::Index>(basis.index_of(to)),
           static_cast<Eigen::Index>(k)) = 1.0;
  }
  return UnitaryMap(basis, std::move(matrix));
}

}  // namespace modesim
