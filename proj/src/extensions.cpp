#include "qtel/extensions.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "qtel/protocol.hpp"
#include "qtel/rng.hpp"

namespace qtel {

namespace {

constexpr double kVanishTol = 1e-30;

void require_qutrit_channel(const SchmidtChannel& ch, const char* who) {
  if (ch.n() != 2) throw std::invalid_argument(std::string(who) + ": channel must have n = 2");
}

inline Eigen::Index idx33(int i1, int i2) { return static_cast<Eigen::Index>(i1) * 3 + i2; }

Complex omega_pow(int k) {
  const double a = 2.0 * std::numbers::pi * (((k % 3) + 3) % 3) / 3.0;
  return {std::cos(a), std::sin(a)};
}

// Collapse of a 3(x)3(x)3 total state onto a sender-side bra, receiver kept.
StateVec collapse3(const StateVec& bra, const StateVec& psi) {
  return project_sender(bra, psi, 3);
}

StateVec total_state3(const SchmidtChannel& ch, const StateVec& input) {
  return tensor(input, ch.state());
}

/// Outcome corrections for the nine-outcome scheme, built from the three
/// probe inputs (1,0,0), (0,1,0), (0,0,1). The first two branches are mapped
/// to |0>, |1>; the gamma-probe, orthonormalized against them, fixes the
/// remaining column (standard-basis completion when it degenerates). This is
/// the unique smooth family that reduces to the standard nine-outcome qutrit
/// corrections at the maximally entangled point.
std::vector<Operator> imperfect_corrections(const SchmidtChannel& ch,
                                            const std::vector<StateVec>& basis) {
  std::vector<Operator> out;
  out.reserve(basis.size());
  const StateVec psi0 = total_state3(ch, StateVec{1.0, 0.0, 0.0});
  const StateVec psi1 = total_state3(ch, StateVec{0.0, 1.0, 0.0});
  const StateVec psi2 = total_state3(ch, StateVec{0.0, 0.0, 1.0});
  for (const StateVec& b : basis) {
    const StateVec v0 = collapse3(b, psi0);
    const StateVec v1 = collapse3(b, psi1);
    const StateVec v2 = collapse3(b, psi2);
    std::vector<StateVec> seeds{v0.normalized(), v1.normalized()};
    Eigen::VectorXcd r = v2.amplitudes();
    for (const StateVec& sdv : seeds) r -= sdv.amplitudes().dot(r) * sdv.amplitudes();
    if (r.norm() >= kResidualTol) seeds.emplace_back(r / r.norm());
    const std::vector<StateVec> ext = complete_orthonormal(seeds, 3);
    Eigen::Matrix3cd u;
    for (int k = 0; k < 3; ++k) u.row(k) = ext[static_cast<std::size_t>(k)].amplitudes().adjoint();
    out.emplace_back(Operator(u));
  }
  return out;
}

}  // namespace

std::vector<StateVec> imperfect_basis(const SchmidtChannel& ch) {
  require_qutrit_channel(ch, "imperfect_basis");
  const CascadeParams p = cascade_params(ch);
  const double c = p.c[0], s = p.s[0];
  const double norm = 1.0 / std::sqrt(3.0);
  std::vector<StateVec> out;
  out.reserve(9);
  for (int block = 0; block < 3; ++block) {
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
      const Complex w1 = omega_pow(j), w2 = omega_pow(2 * j);
      switch (block) {
        case 0:
          v[idx33(0, 0)] += 1.0;
          v[idx33(1, 1)] += w1 * c;
          v[idx33(0, 2)] += -w1 * s;
          v[idx33(2, 2)] += w2;
          break;
        case 1:
          v[idx33(1, 0)] += 1.0;
          v[idx33(2, 1)] += w1;
          v[idx33(0, 2)] += w2 * c;
          v[idx33(1, 1)] += w2 * s;
          break;
        default:
          v[idx33(2, 0)] += 1.0;
          v[idx33(0, 1)] += w1;
          v[idx33(1, 2)] += w2;
          break;
      }
      out.emplace_back(v * norm);
    }
  }
  return out;
}

double imperfect_average_fidelity_closed(const SchmidtChannel& ch) {
  require_qutrit_channel(ch, "imperfect_average_fidelity_closed");
  const double a0 = ch.coeff(0), a1 = ch.coeff(1);
  const double a1sq = a1 * a1;
  return 7.0 / 3.0 + 2.5 * a1sq + a0 * a1 - 5.0 / (3.0 * (1.0 - a1sq));
}

std::vector<double> imperfect_outcome_fidelities(const SchmidtChannel& ch,
                                                 const QutritInput& input) {
  require_qutrit_channel(ch, "imperfect_outcome_fidelities");
  const std::vector<StateVec> basis = imperfect_basis(ch);
  const std::vector<Operator> corrections = imperfect_corrections(ch, basis);
  const StateVec in{input.a0, input.a1, input.a2};
  const StateVec psi = total_state3(ch, in);
  std::vector<double> out(basis.size(), 1.0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const StateVec phi = collapse3(basis[k], psi);
    const double p = phi.squared_norm();
    if (p < kVanishTol) continue;  // unreachable outcome, fidelity vacuous
    out[k] = fidelity(in, corrections[k].apply(phi.normalized()));
  }
  return out;
}

namespace {

McEstimate mc_mean(int samples, const std::function<double(RngStream&)>& one_sample,
                   std::uint64_t seed) {
  RngStream rng(seed);
  double sum = 0.0, sumsq = 0.0;
  for (int it = 0; it < samples; ++it) {
    const double v = one_sample(rng);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sumsq / samples - mean * mean);
  return {mean, samples > 1 ? std::sqrt(var / (samples - 1)) : 0.0};
}

}  // namespace

McEstimate imperfect_teleport_mc_detailed(const SchmidtChannel& ch, int samples,
                                          std::uint64_t seed) {
  require_qutrit_channel(ch, "imperfect_teleport_mc");
  if (samples < 1) throw std::invalid_argument("imperfect_teleport_mc: samples < 1");
  const std::vector<StateVec> basis = imperfect_basis(ch);
  const std::vector<Operator> corrections = imperfect_corrections(ch, basis);
  return mc_mean(
      samples,
      [&](RngStream& rng) {
        const StateVec input = rng.haar_state(3);
        const StateVec psi = total_state3(ch, input);
        double fsum = 0.0;  // sum_k P_k * F_k = sum_k |<input|U_k phi_k>|^2
        for (std::size_t k = 0; k < basis.size(); ++k) {
          const StateVec phi = collapse3(basis[k], psi);
          if (phi.squared_norm() < kVanishTol) continue;
          const Eigen::Vector3cd outv = corrections[k].entries() * phi.amplitudes();
          fsum += std::norm(input.amplitudes().dot(outv));
        }
        return fsum;
      },
      seed);
}

double imperfect_teleport_mc(const SchmidtChannel& ch, int samples, std::uint64_t seed) {
  return imperfect_teleport_mc_detailed(ch, samples, seed).mean;
}

Eigen::Matrix3cd apply_phase_noise(const Eigen::Matrix3cd& rho, const NoiseSpec& noise) {
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9 ||
      (rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("apply_phase_noise: malformed density operator");
  Eigen::Matrix3cd out = rho;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      if (j != k) out(j, k) *= (1.0 - noise.q[static_cast<std::size_t>(j)]) *
                               (1.0 - noise.q[static_cast<std::size_t>(k)]);
  return out;
}

Eigen::Matrix3cd apply_phase_noise(const StateVec& state, const NoiseSpec& noise) {
  if (state.dim() != 3) throw std::invalid_argument("apply_phase_noise: state must be a qutrit");
  if (!state.is_normalized())
    throw std::invalid_argument("apply_phase_noise: state is not normalized");
  const Eigen::Vector3cd v = state.amplitudes();
  return apply_phase_noise(Eigen::Matrix3cd(v * v.adjoint()), noise);
}

double noise_response(const SchmidtChannel& ch, int j) {
  require_qutrit_channel(ch, "noise_response");
  if (j < 0 || j > 2) throw std::invalid_argument("noise_response: ket index out of range");
  const double x = ch.coeff(0) * ch.coeff(0);
  if (j == 0) return (1.0 + 2.0 * x - 7.0 * x * x) / (3.0 * (1.0 + x));
  return 2.0 * x * (3.0 - 5.0 * x) / (3.0 * (1.0 + x));
}

double standard_noise_response(int j) {
  if (j < 0 || j > 2) throw std::invalid_argument("standard_noise_response: ket index out of range");
  return j == 2 ? 0.0 : 1.0 / 3.0;
}

int response_probe_ket(int j) {
  if (j < 0 || j > 2) throw std::invalid_argument("response_probe_ket: label out of range");
  constexpr std::array<int, 3> kMap{1, 0, 2};
  return kMap[static_cast<std::size_t>(j)];
}

namespace {

NoiseSpec to_physical(const NoiseSpec& labeled) {
  std::array<double, 3> q{};
  for (int l = 0; l < 3; ++l)
    q[static_cast<std::size_t>(response_probe_ket(l))] = labeled.q[static_cast<std::size_t>(l)];
  return NoiseSpec(q);
}

double noisy_fidelity_over_outcomes(const std::vector<double>& probs,
                                    const std::vector<StateVec>& collapsed,
                                    const NoiseSpec& physical) {
  double acc = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] < kVanishTol) continue;
    const StateVec phi = collapsed[k].normalized();
    const Eigen::Matrix3cd rho = apply_phase_noise(phi, physical);
    acc += probs[k] *
           (phi.amplitudes().adjoint() * rho * phi.amplitudes())(0, 0).real();
  }
  return acc;
}

}  // namespace

McEstimate noise_fidelity_mc_detailed(const SchmidtChannel& ch, const NoiseSpec& noise,
                                      int samples, std::uint64_t seed) {
  require_qutrit_channel(ch, "noise_fidelity_mc");
  if (samples < 1) throw std::invalid_argument("noise_fidelity_mc: samples < 1");
  const NoiseSpec physical = to_physical(noise);
  const std::vector<double> probs = outcome_probabilities(ch);
  return mc_mean(
      samples,
      [&](RngStream& rng) {
        const StateVec q = rng.haar_state(2);
        return noisy_fidelity_over_outcomes(probs, collapsed_states(ch, q[0], q[1]), physical);
      },
      seed);
}

double noise_fidelity_mc(const SchmidtChannel& ch, const NoiseSpec& noise, int samples,
                         std::uint64_t seed) {
  return noise_fidelity_mc_detailed(ch, noise, samples, seed).mean;
}

McEstimate standard_noise_fidelity_mc_detailed(const NoiseSpec& noise, int samples,
                                               std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("standard_noise_fidelity_mc: samples < 1");
  const NoiseSpec physical = to_physical(noise);
  return mc_mean(
      samples,
      [&](RngStream& rng) {
        const StateVec q = rng.haar_state(2);
        double f = 0.0;
        for (const TeleportOutcome& o : standard_bell_teleport(q[0], q[1])) {
          const Eigen::Matrix3cd rho = apply_phase_noise(o.collapsed, physical);
          f += o.probability *
               (o.collapsed.amplitudes().adjoint() * rho * o.collapsed.amplitudes())(0, 0).real();
        }
        return f;
      },
      seed);
}

double standard_noise_fidelity_mc(const NoiseSpec& noise, int samples, std::uint64_t seed) {
  return standard_noise_fidelity_mc_detailed(noise, samples, seed).mean;
}

}  // namespace qtel
