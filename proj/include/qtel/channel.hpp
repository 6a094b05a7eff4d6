#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtel/corelin.hpp"

namespace qtel {

/// Two-qudit pure channel in Schmidt form, ascending coefficients with the
/// two largest equal. d = n+1.
class SchmidtChannel {
public:
  /// Validates and (within a 1e-6 window) renormalizes the coefficient list.
  /// Throws std::invalid_argument naming the violated invariant.
  static SchmidtChannel from_coeffs(std::vector<double> coeffs);

  int n() const { return static_cast<int>(coeffs_.size()) - 1; }
  int dim() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

  /// The channel state sum_i a_i |i>|i> on C^{d*d}.
  StateVec state() const;

  std::string to_json() const;
  static SchmidtChannel from_json(const std::string& text);

private:
  explicit SchmidtChannel(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}
  std::vector<double> coeffs_;
};

/// Channel with the first tau coefficients zero and the rest equal
/// (a maximally entangled state of an (n+1-tau)-dimensional subspace).
SchmidtChannel vertex_channel(int n, int tau);

/// First n-1 coefficients equal: a_0..a_{n-2} = x*a_n, a_{n-1} = a_n.
SchmidtChannel case1_channel(int n, double x);

/// First n-2 coefficients zero: a_{n-2} = y*a_n, a_{n-1} = a_n. Requires n >= 3.
SchmidtChannel case2_channel(int n, double y);

/// Squared coefficients from the flat Dirichlet distribution on the simplex,
/// sorted ascending, top two squared values replaced by their mean.
/// Deterministic given the seed.
SchmidtChannel sample_random_channel(int n, std::uint64_t seed);

/// Entanglement entropy -sum a_i^2 log2 a_i^2 in bits (0 log 0 = 0).
double channel_entropy(const SchmidtChannel& ch);

}  // namespace qtel
