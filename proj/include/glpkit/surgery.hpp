#pragma once

// Countermodel surgery for the reduction lemma.
//
// Given a rooted J-model W whose root forces
//     M+(<m+1>psi -> <m>phi) & Q^k_m(psi) & ~<m>phi
// with k larger than the number of d-bisimilarity classes of W
// (d = max(dp(phi), dp(psi))), surgery cuts out the submodel generated by a
// repeated chain element a and hangs a fresh root b below the
// (m+1)-plane of a.  The new root refutes <m+1>psi -> <m>phi together with
// M+ of that formula.

#include <string>
#include <vector>

#include "glpkit/formula.hpp"
#include "glpkit/jmodel.hpp"

namespace glpkit {

enum class SurgeryFailure { InvalidFrame, NoRoot, PremiseFalse, KTooSmall, ChainTooShort, NoRepeatedPair };

class SurgeryError : public std::runtime_error {
 public:
  SurgeryError(SurgeryFailure kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  SurgeryFailure kind() const { return kind_; }

 private:
  SurgeryFailure kind_;
};

struct SurgeryResult {
  JModel model;  // W'
  NodeId b = 0;  // root of W'
  // Diagnostics, all node ids refer to the input model.
  NodeId root = 0;
  std::vector<NodeId> chain;  // chain[i] = a_i
  std::size_t depth = 0;      // d
  std::size_t classes = 0;    // number of d-bisimilarity classes of W
  std::size_t i = 0, j = 0;   // a = a_i, a' = a_j
  std::vector<NodeId> alpha;  // (m+1)-plane of a
};

// The formula <m+1>psi -> <m>phi.
Formula reduction_premise(Modality m, const Formula& psi, const Formula& phi);

SurgeryResult surgery(const JModel& w, Modality m, const Formula& psi, const Formula& phi, unsigned k);

struct Check {
  std::string name;
  bool passed = false;
};

struct SurgeryReport {
  std::vector<Check> checks;
  bool ok() const;
};

SurgeryReport check_surgery_conclusion(const JModel& w2, NodeId b, Modality m, const Formula& psi, const Formula& phi);

}  // namespace glpkit
