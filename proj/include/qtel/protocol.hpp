#pragma once

#include <string>
#include <vector>

#include "qtel/channel.hpp"
#include "qtel/corelin.hpp"

namespace qtel {

/// Rotation parameters of the measurement-basis cascade. c[k], s[k] for
/// k = 0..n-1, with c[n-1] = 1, s[n-1] = 0 forced by a_{n-1} = a_n and the
/// convention c[k] = 1, s[k] = 0 whenever a_{k+1} = 0.
struct CascadeParams {
  std::vector<double> c;
  std::vector<double> s;
};

CascadeParams cascade_params(const SchmidtChannel& ch);

enum class Sign : int { plus = 0, minus = 1 };
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

/// Joint-measurement basis on qubit(x)qudit: 2(n+1) orthonormal vectors of
/// dimension 2(n+1), stored in label order (0,+),(0,-),...,(n,+),(n,-).
class MeasurementBasis {
public:
  MeasurementBasis(int n, std::vector<StateVec> vectors);

  int n() const { return n_; }
  int size() const { return static_cast<int>(vectors_.size()); }

  static int index(int j, Sign s) { return 2 * j + static_cast<int>(s); }
  const StateVec& vector(int j, Sign s) const { return vectors_[static_cast<std::size_t>(index(j, s))]; }
  const StateVec& operator[](int idx) const { return vectors_[static_cast<std::size_t>(idx)]; }

  /// Label of the idx-th vector: (j, sign).
  std::pair<int, Sign> label(int idx) const { return {idx / 2, static_cast<Sign>(idx % 2)}; }

private:
  int n_;
  std::vector<StateVec> vectors_;
};

/// Translation-strategy basis for the vertex channel with the first tau
/// coefficients zero: 2(n+1-tau) entangled pairs plus 2*tau product vectors
/// |0k>, |1k> (k < tau) occupying the (k,+)/(k,-) slots.
MeasurementBasis extreme_basis(int n, int tau);

/// Basis built by applying the two-plane rotations u_{n-2}...u_0 to the
/// tau = 0 translation basis.
MeasurementBasis build_basis_cascade(const SchmidtChannel& ch);

/// Same basis evaluated from its closed-form coefficients.
MeasurementBasis build_basis_closed_form(const SchmidtChannel& ch);

/// Unnormalized receiver states for every outcome, evaluated in closed form.
/// The squared norm of each entry is the outcome probability.
std::vector<StateVec> collapsed_states(const SchmidtChannel& ch, Complex alpha, Complex beta);

/// Outcome probabilities in label order; independent of the input qubit.
std::vector<double> outcome_probabilities(const SchmidtChannel& ch);

/// Receiver-side correction for one outcome. Vanished outcomes (zero
/// probability) carry the identity.
struct Correction {
  Operator op;
  bool vanished;
};

/// State-independent corrections built from probe inputs (1,0) and (0,1):
/// the unitary maps the two collapsed branches to |0>, |1> and is completed
/// over the standard basis.
std::vector<Correction> bob_corrections(const SchmidtChannel& ch);

struct TeleportOutcome {
  int j;
  Sign sign;
  double probability;
  StateVec collapsed;  // normalized; zero vector for vanished outcomes
  Operator correction;
  double fidelity;     // 1.0 by convention for vanished outcomes
  bool vanished;
};

/// Full closed-form pipeline: basis, collapse, probabilities, corrections,
/// per-outcome fidelity against the input qubit.
std::vector<TeleportOutcome> run_teleportation(const SchmidtChannel& ch, Complex alpha,
                                               Complex beta);

/// Ground-truth path: identical contract to run_teleportation but computed
/// exclusively with corelin primitives (tensor / project_sender / fidelity)
/// from an explicitly supplied basis. No closed-form shortcuts.
std::vector<TeleportOutcome> oracle_teleport(const SchmidtChannel& ch, Complex alpha, Complex beta,
                                             const MeasurementBasis& basis);

/// Reference scheme: Bell-state channel embedded in a qutrit receiver.
/// Four outcomes, probability 1/4 each, fidelity 1.
std::vector<TeleportOutcome> standard_bell_teleport(Complex alpha, Complex beta);

/// JSON array of {"j","sign","p","fidelity","vanished"}.
std::string outcomes_to_json(const std::vector<TeleportOutcome>& outcomes);

}  // namespace qtel
