#pragma once

#include <span>
#include <string>
#include <vector>

#include "qtel/channel.hpp"
#include "qtel/corelin.hpp"

namespace qtel {

/// Resource costs of a teleportation run: channel entropy E, measurement
/// entanglement E12, classical communication H12 (all in bits) and the
/// per-outcome basis concurrences.
struct ResourceReport {
  double channel_entropy;
  double measurement_entanglement;
  double classical_bits;
  std::vector<double> concurrences;

  std::string to_json() const;
};

/// Pure-state concurrence of a qubit(x)qudit state from the reduced qubit
/// purity: C = sqrt(2(1 - Tr rho_A^2)).
double concurrence_oracle(const StateVec& state);

/// Closed-form concurrences of the cascade basis, in label order; (j,+) and
/// (j,-) share one value.
std::vector<double> basis_concurrences_closed(const SchmidtChannel& ch);

/// Entanglement entropy of a qubit-qudit pure state with concurrence C,
/// i.e. the binary entropy of (1 +- sqrt(1 - C^2))/2.
double entropy_from_concurrence(double concurrence);

/// Probability-weighted mean basis entanglement of the joint measurement.
double measurement_entanglement(const SchmidtChannel& ch);

/// Shannon entropy (bits) of a probability list; 0 log 0 = 0.
double shannon_bits(std::span<const double> probs);

/// Shannon entropy of the outcome distribution: the classical cost in bits.
double classical_bits(const SchmidtChannel& ch);

/// Full report computed through the general pipeline.
ResourceReport resource_report(const SchmidtChannel& ch);

/// Closed-form report for the family with the first n-1 coefficients equal
/// (parameter x = a_0/a_n), evaluated without the general pipeline.
ResourceReport case1_metrics(int n, double x);

/// Closed-form report for the family with the first n-2 coefficients zero
/// (parameter y = a_{n-2}/a_n, n >= 3). At y = 0 this describes the limit
/// measurement, which differs from the pipeline's convention basis on the
/// same channel.
ResourceReport case2_metrics(int n, double y);

/// Limit entanglement of the (n,+-) measurement pair as all coefficient
/// ratios below the top plateau vanish: H[2^-(n-3) - 2^-(2n-4)], n >= 3.
double min_single_measurement_entanglement(int n);

}  // namespace qtel
