#include "qtel/protocol.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace qtel {

namespace {

constexpr double kVanishTol = 1e-30;  // squared-norm threshold for vanished outcomes
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Index of |q, m> on the 2 x (n+1) sender space, qubit slowest.
inline Eigen::Index idx2d(int q, int m, int d) { return static_cast<Eigen::Index>(q) * d + m; }

void check_qubit(Complex alpha, Complex beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTol)
    throw std::invalid_argument("input qubit is not normalized");
}

Operator correction_from_branches(const StateVec& branch0, const StateVec& branch1) {
  const int d = branch0.dim();
  std::vector<StateVec> ext =
      complete_orthonormal({branch0.normalized(), branch1.normalized()}, d);
  Eigen::MatrixXcd u(d, d);
  for (int k = 0; k < d; ++k) u.row(k) = ext[static_cast<std::size_t>(k)].amplitudes().adjoint();
  return Operator(std::move(u));
}

double outcome_fidelity(const Operator& correction, const StateVec& collapsed_normalized,
                        Complex alpha, Complex beta) {
  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(collapsed_normalized.dim());
  target[0] = alpha;
  target[1] = beta;
  return fidelity(StateVec(std::move(target)), correction.apply(collapsed_normalized));
}

std::vector<TeleportOutcome> assemble_outcomes(const std::vector<double>& probs,
                                               const std::vector<StateVec>& collapsed,
                                               const std::vector<Correction>& corrections,
                                               Complex alpha, Complex beta, int d) {
  std::vector<TeleportOutcome> out;
  out.reserve(probs.size());
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    const int j = static_cast<int>(idx) / 2;
    const Sign sign = static_cast<Sign>(idx % 2);
    if (corrections[idx].vanished) {
      out.push_back({j, sign, 0.0, StateVec::zero(d), Operator::identity(d), 1.0, true});
      continue;
    }
    StateVec phi = collapsed[idx].normalized();
    double f = outcome_fidelity(corrections[idx].op, phi, alpha, beta);
    out.push_back({j, sign, probs[idx], std::move(phi), corrections[idx].op, f, false});
  }
  return out;
}

}  // namespace

CascadeParams cascade_params(const SchmidtChannel& ch) {
  const int n = ch.n();
  CascadeParams p;
  p.c.assign(static_cast<std::size_t>(n), 1.0);
  p.s.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k + 1 < n; ++k) {
    const double ak1 = ch.coeff(k + 1);
    if (ak1 == 0.0) continue;  // a_k = a_{k+1} = 0: keep (c,s) = (1,0)
    const double r = std::min(1.0, ch.coeff(k) / ak1);
    p.c[static_cast<std::size_t>(k)] = std::sqrt(0.5 * (1.0 + r * r));
    p.s[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, 0.5 * (1.0 - r * r)));
  }
  return p;
}

MeasurementBasis::MeasurementBasis(int n, std::vector<StateVec> vectors)
    : n_(n), vectors_(std::move(vectors)) {
  if (static_cast<int>(vectors_.size()) != 2 * (n_ + 1))
    throw std::invalid_argument("MeasurementBasis: expected 2(n+1) vectors");
  for (const StateVec& v : vectors_)
    if (v.dim() != 2 * (n_ + 1))
      throw std::invalid_argument("MeasurementBasis: vector dimension mismatch");
}

MeasurementBasis extreme_basis(int n, int tau) {
  if (n < 2) throw std::invalid_argument("extreme_basis: n < 2");
  if (tau < 0 || tau > n - 1) throw std::invalid_argument("extreme_basis: tau out of range");
  const int d = n + 1;
  std::vector<StateVec> vecs;
  vecs.reserve(static_cast<std::size_t>(2 * d));
  for (int j = 0; j <= n; ++j) {
    for (Sign sg : {Sign::plus, Sign::minus}) {
      const double sv = sg == Sign::plus ? 1.0 : -1.0;
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * d);
      if (j < tau) {
        // vanished product states: |0j> on the + slot, |1j> on the - slot
        v[idx2d(sg == Sign::plus ? 0 : 1, j, d)] = 1.0;
      } else if (j < n) {
        v[idx2d(0, j, d)] = kInvSqrt2;
        v[idx2d(1, j + 1, d)] = sv * kInvSqrt2;
      } else {
        v[idx2d(0, n, d)] = kInvSqrt2;
        v[idx2d(1, tau, d)] = sv * kInvSqrt2;
      }
      vecs.emplace_back(std::move(v));
    }
  }
  return MeasurementBasis(n, std::move(vecs));
}

MeasurementBasis build_basis_cascade(const SchmidtChannel& ch) {
  const int n = ch.n();
  const int d = n + 1;
  const CascadeParams p = cascade_params(ch);
  MeasurementBasis base = extreme_basis(n, 0);
  std::vector<StateVec> vecs;
  vecs.reserve(static_cast<std::size_t>(2 * d));
  for (int idx = 0; idx < base.size(); ++idx) {
    Eigen::VectorXcd v = base[idx].amplitudes();
    for (int k = 0; k <= n - 2; ++k) {
      // u_k: rotation in the {|0n>, |1,k+1>} plane by (c_k, s_k)
      const Eigen::Index i0n = idx2d(0, n, d);
      const Eigen::Index i1k = idx2d(1, k + 1, d);
      const Complex x = v[i0n], y = v[i1k];
      const double c = p.c[static_cast<std::size_t>(k)], s = p.s[static_cast<std::size_t>(k)];
      v[i0n] = c * x - s * y;
      v[i1k] = s * x + c * y;
    }
    vecs.emplace_back(std::move(v));
  }
  return MeasurementBasis(n, std::move(vecs));
}

MeasurementBasis build_basis_closed_form(const SchmidtChannel& ch) {
  const int n = ch.n();
  const int d = n + 1;
  const CascadeParams p = cascade_params(ch);
  auto cprod = [&](int from, int to) {  // product of c_k over [from, to]; empty product = 1
    double acc = 1.0;
    for (int k = from; k <= to; ++k) acc *= p.c[static_cast<std::size_t>(k)];
    return acc;
  };

  std::vector<StateVec> vecs;
  vecs.reserve(static_cast<std::size_t>(2 * d));
  for (int j = 0; j < n; ++j) {
    const double sj = p.s[static_cast<std::size_t>(j)];
    const double cj = p.c[static_cast<std::size_t>(j)];
    for (Sign sg : {Sign::plus, Sign::minus}) {
      const double sv = sg == Sign::plus ? 1.0 : -1.0;
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * d);
      v[idx2d(0, j, d)] += 1.0;
      v[idx2d(1, j + 1, d)] += sv * cj;
      v[idx2d(0, n, d)] += -sv * sj * cprod(j + 1, n - 2);
      for (int l = j + 1; l <= n - 2; ++l)
        v[idx2d(1, l + 1, d)] += -sv * sj * cprod(j + 1, l - 1) * p.s[static_cast<std::size_t>(l)];
      vecs.emplace_back(v * kInvSqrt2);
    }
  }
  for (Sign sg : {Sign::plus, Sign::minus}) {
    const double sv = sg == Sign::plus ? 1.0 : -1.0;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * d);
    v[idx2d(0, n, d)] += cprod(0, n - 2);
    for (int l = 0; l <= n - 2; ++l)
      v[idx2d(1, l + 1, d)] += cprod(0, l - 1) * p.s[static_cast<std::size_t>(l)];
    v[idx2d(1, 0, d)] += sv;
    vecs.emplace_back(v * kInvSqrt2);
  }
  return MeasurementBasis(n, std::move(vecs));
}

std::vector<StateVec> collapsed_states(const SchmidtChannel& ch, Complex alpha, Complex beta) {
  check_qubit(alpha, beta);
  const int n = ch.n();
  const int d = n + 1;
  const CascadeParams p = cascade_params(ch);
  auto cprod = [&](int from, int to) {
    double acc = 1.0;
    for (int k = from; k <= to; ++k) acc *= p.c[static_cast<std::size_t>(k)];
    return acc;
  };

  std::vector<StateVec> out;
  out.reserve(static_cast<std::size_t>(2 * d));
  for (int j = 0; j < n; ++j) {
    const double sj = p.s[static_cast<std::size_t>(j)];
    const double cj = p.c[static_cast<std::size_t>(j)];
    for (Sign sg : {Sign::plus, Sign::minus}) {
      const double sv = sg == Sign::plus ? 1.0 : -1.0;
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
      v[j] += alpha * ch.coeff(j);
      v[n] += alpha * (-sv * sj * cprod(j + 1, n - 2) * ch.coeff(n));
      v[j + 1] += beta * sv * cj * ch.coeff(j + 1);
      for (int l = j + 1; l <= n - 2; ++l)
        v[l + 1] += beta * sv *
                    (-sj * cprod(j + 1, l - 1) * p.s[static_cast<std::size_t>(l)] * ch.coeff(l + 1));
      out.emplace_back(v * kInvSqrt2);
    }
  }
  for (Sign sg : {Sign::plus, Sign::minus}) {
    const double sv = sg == Sign::plus ? 1.0 : -1.0;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v[n] += alpha * cprod(0, n - 2) * ch.coeff(n);
    for (int l = 0; l <= n - 2; ++l)
      v[l + 1] += beta * cprod(0, l - 1) * p.s[static_cast<std::size_t>(l)] * ch.coeff(l + 1);
    v[0] += beta * sv * ch.coeff(0);
    out.emplace_back(v * kInvSqrt2);
  }
  return out;
}

std::vector<double> outcome_probabilities(const SchmidtChannel& ch) {
  const int n = ch.n();
  const CascadeParams p = cascade_params(ch);
  auto c2prod = [&](int from, int to) {
    double acc = 1.0;
    for (int k = from; k <= to; ++k) acc *= p.c[static_cast<std::size_t>(k)] * p.c[static_cast<std::size_t>(k)];
    return acc;
  };
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>(2 * (n + 1)));
  const double an2 = ch.coeff(n) * ch.coeff(n);
  for (int j = 0; j < n; ++j) {
    const double sj = p.s[static_cast<std::size_t>(j)];
    const double pj = 0.5 * (ch.coeff(j) * ch.coeff(j) + sj * sj * c2prod(j + 1, n - 2) * an2);
    probs.push_back(pj);
    probs.push_back(pj);
  }
  const double pn = 0.5 * c2prod(0, n - 2) * an2;
  probs.push_back(pn);
  probs.push_back(pn);
  return probs;
}

std::vector<Correction> bob_corrections(const SchmidtChannel& ch) {
  const int d = ch.dim();
  const std::vector<StateVec> probe0 = collapsed_states(ch, 1.0, 0.0);
  const std::vector<StateVec> probe1 = collapsed_states(ch, 0.0, 1.0);
  std::vector<Correction> out;
  out.reserve(probe0.size());
  for (std::size_t idx = 0; idx < probe0.size(); ++idx) {
    if (probe0[idx].squared_norm() < kVanishTol || probe1[idx].squared_norm() < kVanishTol) {
      out.push_back({Operator::identity(d), true});
      continue;
    }
    out.push_back({correction_from_branches(probe0[idx], probe1[idx]), false});
  }
  return out;
}

std::vector<TeleportOutcome> run_teleportation(const SchmidtChannel& ch, Complex alpha,
                                               Complex beta) {
  check_qubit(alpha, beta);
  return assemble_outcomes(outcome_probabilities(ch), collapsed_states(ch, alpha, beta),
                           bob_corrections(ch), alpha, beta, ch.dim());
}

std::vector<TeleportOutcome> oracle_teleport(const SchmidtChannel& ch, Complex alpha, Complex beta,
                                             const MeasurementBasis& basis) {
  check_qubit(alpha, beta);
  const int d = ch.dim();
  const StateVec channel = ch.state();
  const StateVec psi = tensor(StateVec{alpha, beta}, channel);
  const StateVec psi0 = tensor(StateVec{1.0, 0.0}, channel);
  const StateVec psi1 = tensor(StateVec{0.0, 1.0}, channel);

  std::vector<double> probs;
  std::vector<StateVec> collapsed;
  std::vector<Correction> corrections;
  for (int idx = 0; idx < basis.size(); ++idx) {
    StateVec phi = project_sender(basis[idx], psi, d);
    probs.push_back(phi.squared_norm());
    collapsed.push_back(std::move(phi));
    StateVec b0 = project_sender(basis[idx], psi0, d);
    StateVec b1 = project_sender(basis[idx], psi1, d);
    if (b0.squared_norm() < kVanishTol || b1.squared_norm() < kVanishTol)
      corrections.push_back({Operator::identity(d), true});
    else
      corrections.push_back({correction_from_branches(b0, b1), false});
  }
  return assemble_outcomes(probs, collapsed, corrections, alpha, beta, d);
}

std::vector<TeleportOutcome> standard_bell_teleport(Complex alpha, Complex beta) {
  check_qubit(alpha, beta);
  // Bell channel shared on qubit 2 (x) qutrit 3, receiver support on {|0>,|1>}.
  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(6);
  bell[0 * 3 + 0] = kInvSqrt2;
  bell[1 * 3 + 1] = kInvSqrt2;
  const StateVec channel(std::move(bell));
  const StateVec psi = tensor(StateVec{alpha, beta}, channel);
  const StateVec psi0 = tensor(StateVec{1.0, 0.0}, channel);
  const StateVec psi1 = tensor(StateVec{0.0, 1.0}, channel);

  std::vector<double> probs;
  std::vector<StateVec> collapsed;
  std::vector<Correction> corrections;
  for (int j = 0; j < 2; ++j) {
    for (Sign sg : {Sign::plus, Sign::minus}) {
      const double sv = sg == Sign::plus ? 1.0 : -1.0;
      Eigen::VectorXcd b = Eigen::VectorXcd::Zero(4);
      b[0 * 2 + j] = kInvSqrt2;          // |0 j>
      b[1 * 2 + (1 - j)] = sv * kInvSqrt2;  // +- |1, 1-j>
      const StateVec bra(std::move(b));
      StateVec phi = project_sender(bra, psi, 3);
      probs.push_back(phi.squared_norm());
      collapsed.push_back(std::move(phi));
      corrections.push_back(
          {correction_from_branches(project_sender(bra, psi0, 3), project_sender(bra, psi1, 3)),
           false});
    }
  }
  return assemble_outcomes(probs, collapsed, corrections, alpha, beta, 3);
}

std::string outcomes_to_json(const std::vector<TeleportOutcome>& outcomes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TeleportOutcome& o : outcomes) {
    arr.push_back({{"j", o.j},
                   {"sign", std::string(1, sign_char(o.sign))},
                   {"p", o.probability},
                   {"fidelity", o.fidelity},
                   {"vanished", o.vanished}});
  }
  return arr.dump();
}

}  // namespace qtel
