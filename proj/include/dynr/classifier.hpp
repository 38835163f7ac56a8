#pragma once

#include "dynr/gauge_transform.hpp"

namespace dynr {

struct SignChange : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct QRelationViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentF : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Causal type of q_psi^2 along an interval: maximal constant-signature
/// segments plus the located zeros.
struct SignatureSegment {
  double lo = 0.0, hi = 0.0;
  CausalType type = CausalType::Lightlike;
};

struct SignatureScan {
  std::vector<SignatureSegment> segments;
  std::vector<double> transitions;  // roots of q_psi^2, to 1e-10
};

SignatureScan signature_scan(const DynRSpec& spec, double lo, double hi,
                             int samples = 200);

/// Outcome of the proof-following reduction: the aligning transformation and
/// the reduced family with q_psi, q_alpha, q_theta, w, m on a common axis.
struct ReducedForm {
  char case_tag = '?';  // 'a' (timelike axis e0) or 'b' (spacelike axis e1)
  int axis = 0;
  DynPoincare p;
  DynRSpec spec;
  double axis_residual = 0.0;  // sup of off-axis components over the samples
  double relation_residual = 0.0;  // q_alpha^0 d_a q_theta^0 - q_psi^0 d_psi q_alpha^0
};

ReducedForm standard_form_reduce(const DynRSpec& spec, double lo, double hi);

/// Full local classification: the standard case, the transformation, and the
/// reparametrisation maps y1 = f(psi), y2 = h(psi) + alpha g(psi).
struct ClassificationResult {
  char case_tag = '?';
  /// case b splits into the tanh ('t') and coth ('c') axis-profile branches;
  /// '-' for case a
  char branch = '-';
  DynPoincare p;
  ScalarFn f, g, h;          // y1 = f, y2 = h + alpha g
  double lo = 0.0, hi = 0.0;
  double match_residual = 0.0;   // sup |r^p - r_std(y1,y2)| over the grid
  double f_consistency = 0.0;    // quadrature vs inversion of the axis profile
  double proof_identity = 0.0;   // gamma phi1 + 1/2 beta eps'
  double axis_residual = 0.0;

  double y1(double psi) const { return f(psi); }
  double y2(double psi, double alpha) const { return h(psi) + alpha * g(psi); }
};

ClassificationResult classify(const DynRSpec& spec, double lo, double hi);

}  // namespace dynr
