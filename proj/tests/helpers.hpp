// Shared test utilities: seeded random states, unitaries and networks, and
// a raw-loop reference implementation of the optical network algebra that
// stays independent of the library's Eigen-based code paths.

#ifndef MODESIM_TESTS_HELPERS_HPP
#define MODESIM_TESTS_HELPERS_HPP

#include "modesim/optical_elements.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace testutil {

using modesim::Complex;

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Eigen::VectorXcd random_state(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v;
}

inline Eigen::VectorXcd random_unit_state(std::mt19937_64& rng, Eigen::Index n) {
  Eigen::VectorXcd v = random_state(rng, n);
  v.normalize();
  return v;
}

inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  Eigen::MatrixXcd g(n, n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      g(r, c) = Complex(gauss(rng), gauss(rng));
    }
  }
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
}

// ---------------------------------------------------------------------------
// Raw-loop reference algebra on std::vector matrices (row-major).

using RawMatrix = std::vector<std::vector<Complex>>;

inline RawMatrix raw_identity(std::size_t n) {
  RawMatrix m(n, std::vector<Complex>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline RawMatrix raw_product(const RawMatrix& a, const RawMatrix& b) {
  const std::size_t n = a.size();
  RawMatrix c(n, std::vector<Complex>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        c[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

// Element matrices rebuilt from the transformation laws themselves, without
// going through the library.
inline RawMatrix raw_element_matrix(const modesim::ElementSpec& element,
                                    const modesim::ModeBasis& basis) {
  using modesim::ModeLabel;
  using modesim::Polarization;
  const std::size_t n = basis.size();
  RawMatrix m = raw_identity(n);
  if (const auto* hwp = std::get_if<modesim::HwpElement>(&element)) {
    const std::size_t h = basis.index_of(ModeLabel{hwp->path, Polarization::H});
    const std::size_t v = basis.index_of(ModeLabel{hwp->path, Polarization::V});
    const double c = std::cos(2.0 * hwp->theta);
    const double s = std::sin(2.0 * hwp->theta);
    m[h][h] = c;
    m[v][h] = s;   // image of H is (c, s)
    m[h][v] = -s;  // image of V is (-s, c)
    m[v][v] = c;
  } else if (const auto* pbs = std::get_if<modesim::PbsElement>(&element)) {
    const std::size_t av = basis.index_of(ModeLabel{pbs->path_a, Polarization::V});
    const std::size_t bv = basis.index_of(ModeLabel{pbs->path_b, Polarization::V});
    // H components transmit (stay on the identity); V components swap paths.
    m[av][av] = 0.0;
    m[bv][bv] = 0.0;
    m[bv][av] = 1.0;
    m[av][bv] = 1.0;
  } else {
    const auto& mapping = std::get<modesim::RelabelElement>(element).mapping;
    for (std::size_t k = 0; k < n; ++k) m[k][k] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const ModeLabel& from = basis.label(k);
      const auto it = mapping.find(from);
      const ModeLabel& to = it == mapping.end() ? from : it->second;
      m[basis.index_of(to)][k] = 1.0;
    }
  }
  return m;
}

// Independent left-to-right fold over the element list.
inline RawMatrix raw_network_matrix(const modesim::NetworkSpec& net) {
  RawMatrix u = raw_identity(net.basis.size());
  for (const auto& element : net.elements) {
    u = raw_product(raw_element_matrix(element, net.basis), u);
  }
  return u;
}

// Full-matrix conjugation U† |d><d| U followed by block slicing; the oracle
// for projector extraction.
inline Eigen::Matrix3cd raw_back_projector(const modesim::NetworkSpec& net,
                                           const std::string& detector) {
  const RawMatrix u = raw_network_matrix(net);
  const std::size_t n = net.basis.size();
  const std::size_t d = net.basis.index_of(net.detectors.at(detector));

  RawMatrix diag(n, std::vector<Complex>(n, 0.0));
  diag[d][d] = 1.0;

  RawMatrix u_dagger(n, std::vector<Complex>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      u_dagger[i][j] = std::conj(u[j][i]);
    }
  }
  const RawMatrix full = raw_product(raw_product(u_dagger, diag), u);

  Eigen::Matrix3cd block;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      block(a, b) = full[net.basis.index_of(net.logical_inputs[a])]
                        [net.basis.index_of(net.logical_inputs[b])];
    }
  }
  return block;
}

// ---------------------------------------------------------------------------
// Random networks whose ancilla modes never mix into the logical block, so
// every detector extraction is leakage-free: HWPs on path a, ancilla-only
// optics on paths b/c, and permutations of the three logical modes.

inline modesim::NetworkSpec random_clean_network(std::mt19937_64& rng,
                                                 int max_elements) {
  using modesim::ModeLabel;
  using modesim::Polarization;

  const ModeLabel a_h{"a", Polarization::H};
  const ModeLabel a_v{"a", Polarization::V};
  const ModeLabel b_h{"b", Polarization::H};
  modesim::ModeBasis basis({a_h, a_v, b_h,
                            ModeLabel{"b", Polarization::V},
                            ModeLabel{"c", Polarization::H},
                            ModeLabel{"c", Polarization::V}});
  const std::array<ModeLabel, 3> logical = {a_h, a_v, b_h};

  std::uniform_int_distribution<int> n_elements(0, max_elements);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_int_distribution<int> pick3(0, 2);

  std::vector<modesim::ElementSpec> elements;
  const int count = n_elements(rng);
  while (static_cast<int>(elements.size()) < count) {
    switch (kind(rng)) {
      case 0:
        elements.push_back(modesim::HwpElement{"a", angle(rng)});
        break;
      case 1:
        elements.push_back(modesim::HwpElement{"c", angle(rng)});
        break;
      case 2:
        elements.push_back(modesim::PbsElement{"b", "c"});
        break;
      default: {
        // Random transposition of two logical modes.
        const int i = pick3(rng);
        const int j = pick3(rng);
        if (i == j) continue;
        modesim::RelabelElement relabel;
        relabel.mapping.emplace(logical[i], logical[j]);
        relabel.mapping.emplace(logical[j], logical[i]);
        elements.push_back(std::move(relabel));
        break;
      }
    }
  }

  return modesim::NetworkSpec(
      basis, std::move(elements),
      {{"D0", a_h}, {"D1", a_v}, {"D2", b_h}}, logical);
}

}  // namespace testutil

#endif  // MODESIM_TESTS_HELPERS_HPP
