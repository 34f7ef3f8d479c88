#pragma once

#include <optional>
#include <vector>

#include "fpqc/channels.hpp"
#include "fpqc/majorana.hpp"

namespace fpqc {

// Schatten p-norm: the l_p norm of the singular values. p = 1 is the trace
// norm, p = 2 the Hilbert-Schmidt norm, p = infinity the operator norm.
// Hermitian inputs are handled through their eigenvalues.
double schatten_norm(const DenseOperator& a, double p);

// || rho - I/d ||_p for a unit-trace d x d operator. The maximally mixed
// state is normalized by the Hilbert-space dimension d = 2^M, as unit trace
// requires.
double distance_to_mms(const DenseOperator& rho, double p);

struct PqcVerdict {
  double p = 1.0;
  double epsilon = 0.0;
  int dimension = 0;     // d used in the threshold
  double threshold = 0.0;  // epsilon / d^{(p-1)/p}; equals epsilon at p = 1
  double measured = 0.0;   // max over states of the output distance to I/d
  bool passes = false;
};

// Applies the channel to every state and compares the worst-case distance to
// the maximally mixed state against the threshold. `dimension` defaults to
// the Hilbert-space dimension 2^M.
PqcVerdict pqc_test(const RandomUnitaryChannel& channel,
                    const std::vector<DenseOperator>& states, double epsilon,
                    double p, std::optional<int> dimension = std::nullopt);

}  // namespace fpqc
