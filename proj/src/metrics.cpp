#include "qtel/metrics.hpp"

#include <cmath>

#include <json.hpp>

#include "qtel/protocol.hpp"

namespace qtel {

namespace {

double h2(double p) {
  double e = 0.0;
  if (p > 0.0) e -= p * std::log2(p);
  if (p < 1.0) e -= (1.0 - p) * std::log2(1.0 - p);
  return e;
}

// H(t): entropy of the reduced eigenvalue pair (1 +- sqrt(1-t))/2.
double h_of_t(double t) {
  const double r = std::sqrt(std::max(0.0, 1.0 - t));
  return h2(0.5 * (1.0 - r));
}

ResourceReport report_from_parts(double entropy, std::span<const double> probs,
                                 std::span<const double> concurrences) {
  double e12 = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    e12 += probs[i] * h_of_t(concurrences[i] * concurrences[i]);
  return ResourceReport{entropy, e12, shannon_bits(probs),
                        std::vector<double>(concurrences.begin(), concurrences.end())};
}

}  // namespace

std::string ResourceReport::to_json() const {
  nlohmann::json j{{"channel_entropy", channel_entropy},
                   {"measurement_entanglement", measurement_entanglement},
                   {"classical_bits", classical_bits},
                   {"concurrences", concurrences}};
  return j.dump();
}

double concurrence_oracle(const StateVec& state) {
  if (state.dim() % 2 != 0)
    throw std::invalid_argument("concurrence_oracle: odd dimension, expected qubit(x)qudit");
  const int d = state.dim() / 2;
  const Eigen::VectorXcd& v = state.amplitudes();
  Eigen::Matrix2cd rho;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      rho(i, j) = v.segment(static_cast<Eigen::Index>(i) * d, d)
                      .dot(v.segment(static_cast<Eigen::Index>(j) * d, d));
  // dot() conjugates its first argument, so rho(i,j) = sum_k v_ik* v_jk = (rho_A^T)(i,j);
  // the purity is transpose-invariant.
  const double purity = (rho * rho).trace().real();
  return std::sqrt(std::min(1.0, std::max(0.0, 2.0 * (1.0 - purity))));
}

std::vector<double> basis_concurrences_closed(const SchmidtChannel& ch) {
  const int n = ch.n();
  const CascadeParams p = cascade_params(ch);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * (n + 1)));
  for (int j = 0; j < n; ++j) {
    double c4 = 1.0;
    for (int k = j + 1; k <= n - 2; ++k) c4 *= std::pow(p.c[static_cast<std::size_t>(k)], 4);
    const double sj = p.s[static_cast<std::size_t>(j)];
    const double cj = std::sqrt(std::max(0.0, 1.0 - sj * sj * sj * sj * c4));
    out.push_back(cj);
    out.push_back(cj);
  }
  double cp = 1.0, cp2 = 1.0;
  for (int k = 0; k <= n - 2; ++k) {
    cp *= p.c[static_cast<std::size_t>(k)];
    cp2 *= p.c[static_cast<std::size_t>(k)] * p.c[static_cast<std::size_t>(k)];
  }
  const double cn = cp * std::sqrt(std::max(0.0, 2.0 - cp2));
  out.push_back(cn);
  out.push_back(cn);
  return out;
}

double entropy_from_concurrence(double concurrence) {
  if (!(concurrence >= -kNormTol && concurrence <= 1.0 + kNormTol))
    throw std::invalid_argument("entropy_from_concurrence: concurrence outside [0,1]");
  const double c = std::min(1.0, std::max(0.0, concurrence));
  return h_of_t(c * c);
}

double measurement_entanglement(const SchmidtChannel& ch) {
  const std::vector<double> probs = outcome_probabilities(ch);
  const std::vector<double> conc = basis_concurrences_closed(ch);
  double e12 = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    e12 += probs[i] * h_of_t(conc[i] * conc[i]);
  return e12;
}

double shannon_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

double classical_bits(const SchmidtChannel& ch) {
  const std::vector<double> probs = outcome_probabilities(ch);
  return shannon_bits(probs);
}

ResourceReport resource_report(const SchmidtChannel& ch) {
  const std::vector<double> probs = outcome_probabilities(ch);
  const std::vector<double> conc = basis_concurrences_closed(ch);
  return report_from_parts(channel_entropy(ch), probs, conc);
}

ResourceReport case1_metrics(int n, double x) {
  if (n < 2) throw std::invalid_argument("case1_metrics: n < 2");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("case1_metrics: x outside [0,1]");
  const double denom = 2.0 + (n - 1) * x * x;
  const double c_shared = 0.5 * std::sqrt(3.0 + 2.0 * x * x - x * x * x * x);
  std::vector<double> probs(static_cast<std::size_t>(2 * (n + 1)));
  std::vector<double> conc(static_cast<std::size_t>(2 * (n + 1)), 1.0);
  for (int j = 0; j <= n; ++j) {
    double pj, cj;
    if (j <= n - 3) {
      pj = x * x / (2.0 * denom);
      cj = 1.0;
    } else if (j == n - 2 || j == n) {
      pj = (1.0 + x * x) / (4.0 * denom);
      cj = c_shared;
    } else {  // j == n - 1
      pj = 1.0 / (2.0 * denom);
      cj = 1.0;
    }
    probs[static_cast<std::size_t>(2 * j)] = pj;
    probs[static_cast<std::size_t>(2 * j + 1)] = pj;
    conc[static_cast<std::size_t>(2 * j)] = cj;
    conc[static_cast<std::size_t>(2 * j + 1)] = cj;
  }
  return report_from_parts(channel_entropy(case1_channel(n, x)), probs, conc);
}

ResourceReport case2_metrics(int n, double y) {
  if (n < 3) throw std::invalid_argument("case2_metrics: n < 3");
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("case2_metrics: y outside [0,1]");
  const double denom = 2.0 + y * y;
  std::vector<double> probs(static_cast<std::size_t>(2 * (n + 1)), 0.0);
  std::vector<double> conc(static_cast<std::size_t>(2 * (n + 1)), 1.0);
  for (int j = 0; j <= n; ++j) {
    double pj = 0.0, cj = 1.0;
    if (j == n - 3) {
      pj = (1.0 + y * y) / (8.0 * denom);
      cj = std::sqrt(1.0 - (1.0 + y * y) * (1.0 + y * y) / 16.0);
    } else if (j == n - 2) {
      pj = (1.0 + y * y) / (4.0 * denom);
      cj = 0.5 * std::sqrt(3.0 + 2.0 * y * y - y * y * y * y);
    } else if (j == n - 1) {
      pj = 1.0 / (2.0 * denom);
      cj = 1.0;
    } else if (j == n) {
      pj = (1.0 + y * y) / (8.0 * denom);
      cj = 0.25 * std::sqrt(7.0 + 6.0 * y * y - y * y * y * y);
    }
    probs[static_cast<std::size_t>(2 * j)] = pj;
    probs[static_cast<std::size_t>(2 * j + 1)] = pj;
    conc[static_cast<std::size_t>(2 * j)] = cj;
    conc[static_cast<std::size_t>(2 * j + 1)] = cj;
  }
  return report_from_parts(channel_entropy(case2_channel(n, y)), probs, conc);
}

double min_single_measurement_entanglement(int n) {
  if (n < 3) throw std::invalid_argument("min_single_measurement_entanglement: n < 3");
  return h_of_t(std::pow(2.0, -(n - 3)) - std::pow(2.0, -(2 * n - 4)));
}

}  // namespace qtel
