// Mechanical certification of the three experimental claims: a shared
// observable is unchanged across measurement contexts, mode relabeling is
// pure bookkeeping, and the mode transformer is intensity independent.

#ifndef MODESIM_CONTEXT_VERIFIER_HPP
#define MODESIM_CONTEXT_VERIFIER_HPP

#include "modesim/observable_extraction.hpp"

namespace modesim {

/// Two configurations measuring the same detector alongside different
/// companion observables. Both networks share basis and logical inputs.
struct ContextPair {
  ContextPair(NetworkSpec left, NetworkSpec right, std::string shared);

  NetworkSpec net_left;
  NetworkSpec net_right;
  std::string shared_detector;
};

struct ReportEntry {
  std::string name;
  double deviation;
};

struct VerificationReport {
  bool passed;
  double deviation;   // max entrywise norm of the worst comparison
  double tolerance;   // the tolerance the pass/fail decision used
  std::vector<ReportEntry> detail;
};

/// Extracts the shared detector's projector from both networks and compares
/// them entrywise. Comparison is at the projector level, so global phases
/// introduced by element ordering cannot cause false failures.
VerificationReport verify_shared_observable(const ContextPair& pair,
                                            double tol = kPhysicalTol);

/// Prepends the relabel permutation to the network and checks, for every
/// detector, that conjugating the relabeled projector by the induced
/// permutation of logical modes recovers the original projector.
/// The relabel must be a bijection on the logical input labels.
VerificationReport verify_relabel_equivalence(
    const NetworkSpec& net, const std::map<ModeLabel, ModeLabel>& relabel,
    double tol = kPhysicalTol);

/// For seeded random states v and complex scalars c, asserts
/// apply(U, c v) = c apply(U, v) and that the detector with the highest
/// intensity is unchanged under real positive rescaling of the input.
VerificationReport linearity_check(const NetworkSpec& net, int trials,
                                   double tol = kAlgebraicTol,
                                   std::uint64_t seed = kDefaultSeed);

}  // namespace modesim

#endif  // MODESIM_CONTEXT_VERIFIER_HPP
