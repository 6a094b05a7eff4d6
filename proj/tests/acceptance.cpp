// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any line fails.
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qtel/channel.hpp"
#include "qtel/extensions.hpp"
#include "qtel/metrics.hpp"
#include "qtel/protocol.hpp"
#include "qtel/rng.hpp"

using namespace qtel;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail = "") {
  std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << what;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

SchmidtChannel staircase_channel(int n, double ratio) {
  std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
  a[static_cast<std::size_t>(n)] = 1.0;
  a[static_cast<std::size_t>(n) - 1] = 1.0;
  for (int k = n - 2; k >= 2; --k) a[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k) + 1] * ratio;
  double sum = 0.0;
  for (double v : a) sum += v * v;
  for (double& v : a) v /= std::sqrt(sum);
  return SchmidtChannel::from_coeffs(std::move(a));
}

std::string run_cli(const std::string& args, int* exit_code = nullptr) {
  const std::string cmd = std::string(QTEL_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  if (exit_code) *exit_code = WEXITSTATUS(status);
  return out;
}

// ---- 1. perfect teleportation across dimensions -------------------------
void criterion1() {
  double min_fidelity = 1.0, worst_sum_dev = 0.0;
  RngStream rng(10101);
  for (int n = 2; n <= 6; ++n) {
    for (int c = 0; c < 100; ++c) {
      auto ch = sample_random_channel(n, static_cast<std::uint64_t>(100000 + 1000 * n + c));
      auto corrections = bob_corrections(ch);
      auto probs = outcome_probabilities(ch);
      for (int k = 0; k < 50; ++k) {
        StateVec q = rng.haar_state(2);
        auto collapsed = collapsed_states(ch, q[0], q[1]);
        double sum = 0.0;
        for (std::size_t idx = 0; idx < collapsed.size(); ++idx) {
          sum += probs[idx];
          if (corrections[idx].vanished) continue;
          StateVec out = corrections[idx].op.apply(collapsed[idx].normalized());
          Eigen::VectorXcd target = Eigen::VectorXcd::Zero(ch.dim());
          target[0] = q[0];
          target[1] = q[1];
          min_fidelity = std::min(min_fidelity, fidelity(StateVec(std::move(target)), out));
        }
        worst_sum_dev = std::max(worst_sum_dev, std::abs(sum - 1.0));
      }
    }
  }
  std::ostringstream d;
  d << "min fidelity " << min_fidelity << ", max |sum P - 1| " << worst_sum_dev;
  report(1, min_fidelity >= 1.0 - 1e-9 && worst_sum_dev <= 1e-10,
         "perfect teleportation, n in {2..6}, 100 channels x 50 Haar qubits", d.str());
}

// ---- 2. qutrit probabilities vs printed pattern and oracle ---------------
void criterion2() {
  double worst_pattern = 0.0, worst_oracle = 0.0;
  RngStream rng(555);
  for (int c = 0; c < 50; ++c) {
    auto ch = sample_random_channel(2, static_cast<std::uint64_t>(7000 + c));
    const double a0 = ch.coeff(0), a1 = ch.coeff(1);
    const double p02 = (a0 * a0 + a1 * a1) / 4.0, p1 = a1 * a1 / 2.0;
    auto probs = outcome_probabilities(ch);
    const std::array<double, 6> expect{p02, p02, p1, p1, p02, p02};
    for (std::size_t i = 0; i < 6; ++i)
      worst_pattern = std::max(worst_pattern, std::abs(probs[i] - expect[i]));

    StateVec q = rng.haar_state(2);
    auto basis = build_basis_closed_form(ch);
    StateVec psi = tensor(q, ch.state());
    for (int idx = 0; idx < basis.size(); ++idx) {
      double po = project_sender(basis[idx], psi, 3).squared_norm();
      worst_oracle = std::max(worst_oracle, std::abs(po - probs[static_cast<std::size_t>(idx)]));
    }
  }
  std::ostringstream d;
  d << "max pattern dev " << worst_pattern << ", max oracle dev " << worst_oracle;
  report(2, worst_pattern <= 1e-12 && worst_oracle <= 1e-12,
         "qutrit outcome probabilities, 50 random channels", d.str());
}

// ---- 3. basis equivalence and Gram ---------------------------------------
void criterion3() {
  double worst_eq = 0.0, worst_gram = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (int c = 0; c < 40; ++c) {
      auto ch = sample_random_channel(n, static_cast<std::uint64_t>(3000 + 100 * n + c));
      auto bc = build_basis_cascade(ch);
      auto bf = build_basis_closed_form(ch);
      for (int i = 0; i < bc.size(); ++i) {
        worst_eq = std::max(worst_eq,
                            (bc[i].amplitudes() - bf[i].amplitudes()).cwiseAbs().maxCoeff());
        for (int j = 0; j <= i; ++j) {
          Complex g = bf[j].amplitudes().dot(bf[i].amplitudes());
          worst_gram = std::max(worst_gram, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
      }
    }
  }
  std::ostringstream d;
  d << "max |cascade - closed| " << worst_eq << ", max Gram dev " << worst_gram;
  report(3, worst_eq <= 1e-12 && worst_gram <= 1e-10,
         "cascade and closed-form bases agree on 200 random channels", d.str());
}

// ---- 4. concurrence closed forms ------------------------------------------
void criterion4() {
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (int c = 0; c < 40; ++c) {
      auto ch = sample_random_channel(n, static_cast<std::uint64_t>(3000 + 100 * n + c));
      auto basis = build_basis_closed_form(ch);
      auto closed = basis_concurrences_closed(ch);
      for (int i = 0; i < basis.size(); ++i)
        worst = std::max(worst,
                         std::abs(closed[static_cast<std::size_t>(i)] - concurrence_oracle(basis[i])));
    }
  }
  // printed family formulas along their curves; the Case II comparison stays
  // on y > 0, since y = 0 is the limit measurement (a different basis on the
  // same vertex channel, handled by case2_metrics)
  double worst_family = 0.0;
  for (int n : {3, 4, 5, 6}) {
    for (int i = 0; i <= 20; ++i) {
      const double x = i / 20.0;
      auto c1 = basis_concurrences_closed(case1_channel(n, x));
      const double s1 = 0.5 * std::sqrt(3.0 + 2.0 * x * x - x * x * x * x);
      worst_family = std::max(worst_family, std::abs(c1[static_cast<std::size_t>(2 * (n - 2))] - s1));
      worst_family = std::max(worst_family, std::abs(c1[static_cast<std::size_t>(2 * n)] - s1));

      const double y = (i + 1) / 21.0;
      auto c2 = basis_concurrences_closed(case2_channel(n, y));
      worst_family = std::max(
          worst_family,
          std::abs(c2[static_cast<std::size_t>(2 * (n - 3))] -
                   std::sqrt(1.0 - std::pow(1.0 + y * y, 2) / 16.0)));
      worst_family = std::max(worst_family,
                              std::abs(c2[static_cast<std::size_t>(2 * (n - 2))] -
                                       0.5 * std::sqrt(3.0 + 2.0 * y * y - std::pow(y, 4))));
      worst_family =
          std::max(worst_family, std::abs(c2[static_cast<std::size_t>(2 * n)] -
                                          0.25 * std::sqrt(7.0 + 6.0 * y * y - std::pow(y, 4))));
    }
  }
  std::ostringstream d;
  d << "max |closed - oracle| " << worst << ", max family-formula dev " << worst_family;
  report(4, worst <= 1e-10 && worst_family <= 1e-10, "closed-form concurrences match the oracle",
         d.str());
}

// ---- 5. resource minima ---------------------------------------------------
void criterion5() {
  const double e12_case1 = measurement_entanglement(case1_channel(2, 1e-8));
  bool ok = std::abs(e12_case1 - 0.9056) <= 1e-3;
  double worst_case2 = 0.0;
  for (int n = 3; n <= 6; ++n)
    worst_case2 =
        std::max(worst_case2, std::abs(measurement_entanglement(case2_channel(n, 1e-8)) - 0.8901));
  ok = ok && worst_case2 <= 1e-3;
  double worst_h = 0.0;
  for (int n = 2; n <= 6; ++n)
    worst_h = std::max(worst_h, std::abs(classical_bits(case1_channel(n, 1e-8)) - 2.5));
  ok = ok && worst_h <= 1e-3;
  std::ostringstream d;
  d << "E12(caseI,n=2) " << e12_case1 << ", max |E12(caseII) - 0.8901| " << worst_case2
    << ", max |H12 - 2.5| " << worst_h;
  report(5, ok, "resource minima 0.9056 / 0.8901 / 2.5", d.str());
}

// ---- 6. limit probability of the top outcome pair -------------------------
void criterion6() {
  double worst = 0.0;
  for (int n = 3; n <= 6; ++n) {
    auto probs = outcome_probabilities(staircase_channel(n, 1e-6));
    const double sum_top = probs[probs.size() - 1] + probs[probs.size() - 2];
    worst = std::max(worst, std::abs(sum_top - std::pow(2.0, -(n - 1))));
  }
  std::ostringstream d;
  d << "max |P_n+ + P_n- - 2^-(n-1)| " << worst;
  report(6, worst <= 1e-4, "staircase-limit success probability, n in {3..6}", d.str());
}

// ---- 7. envelope and monotone curves --------------------------------------
void criterion7() {
  bool ok = true;
  double min_entropy = 1e9, max_e12 = -1e9;
  for (int n : {2, 4, 6}) {
    for (int c = 0; c < 10000; ++c) {
      auto ch = sample_random_channel(n, static_cast<std::uint64_t>(40000 + 10000 * n + c));
      min_entropy = std::min(min_entropy, channel_entropy(ch));
      max_e12 = std::max(max_e12, measurement_entanglement(ch));
    }
  }
  ok = ok && min_entropy >= 1.0 - 1e-9 && max_e12 <= 1.0 + 1e-9;

  // largest monotonicity violation of one quantity along a curve
  auto worst_drop = [](const std::function<double(double)>& f) {
    double prev = -1e9, drop = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double v = f(i / 99.0);
      if (i > 0) drop = std::max(drop, prev - v);
      prev = v;
    }
    return drop;
  };
  double drop_e12 = 0.0, drop_h12 = 0.0, drop_entropy = 0.0;
  for (int n : {2, 4, 6}) {
    drop_entropy = std::max(drop_entropy, worst_drop([n](double x) { return case1_metrics(n, x).channel_entropy; }));
    drop_e12 = std::max(drop_e12, worst_drop([n](double x) { return case1_metrics(n, x).measurement_entanglement; }));
    drop_h12 = std::max(drop_h12, worst_drop([n](double x) { return case1_metrics(n, x).classical_bits; }));
  }
  for (int n : {3, 4, 6}) {
    drop_entropy = std::max(drop_entropy, worst_drop([n](double y) { return case2_metrics(n, y).channel_entropy; }));
    drop_e12 = std::max(drop_e12, worst_drop([n](double y) { return case2_metrics(n, y).measurement_entanglement; }));
    drop_h12 = std::max(drop_h12, worst_drop([n](double y) { return case2_metrics(n, y).classical_bits; }));
  }
  const bool mono = drop_entropy <= 1e-9 && drop_e12 <= 1e-9 && drop_h12 <= 1e-9;
  std::ostringstream d;
  d << "min entropy " << min_entropy << ", max E12 " << max_e12 << "; largest monotonicity drops:"
    << " entropy " << drop_entropy << ", H12 " << drop_h12 << ", E12 " << drop_e12;
  if (drop_e12 > 1e-9)
    d << " (the Case II measurement-entanglement curve peaks near y ~ 0.97 and falls by ~3.5e-4"
         " into y = 1; confirmed against the projection/purity oracle, so the strict"
         " nondecreasing property cannot hold at tolerance 1e-9)";
  report(7, ok && mono, "figure envelope over 30000 random channels + monotone curves", d.str());
}

// ---- 8. nine-outcome scheme fidelity --------------------------------------
void criterion8() {
  auto chan = [](double a0) {
    const double a1 = std::sqrt((1.0 - a0 * a0) / 2.0);
    return SchmidtChannel::from_coeffs({a0, a1, a1});
  };
  const double f0 = imperfect_average_fidelity_closed(chan(0.0));
  const double f1 = imperfect_average_fidelity_closed(chan(1.0 / std::sqrt(3.0)));
  const bool endpoints_ok = std::abs(f0 - 0.25) <= 1e-12 && std::abs(f1 - 1.0) <= 1e-12;

  const std::array<double, 5> grid{0.0, 0.15, 0.3, 0.45, 1.0 / std::sqrt(3.0)};
  double worst = 0.0;
  std::ostringstream rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto ch = chan(grid[i]);
    const double mc = imperfect_teleport_mc(ch, 100000, 808 + static_cast<std::uint64_t>(i));
    const double closed = imperfect_average_fidelity_closed(ch);
    worst = std::max(worst, std::abs(mc - closed));
    rows << (i ? " " : "") << "a0=" << grid[i] << ":mc=" << mc << ",closed=" << closed;
  }
  const bool mc_ok = worst <= 5e-3;
  std::ostringstream d;
  d << "endpoints " << (endpoints_ok ? "ok" : "bad") << "; max |mc - closed| " << worst << "; "
    << rows.str();
  if (!mc_ok)
    d << " (the simulated average cannot reach the reference curve: any correction that is"
         " perfect on the a2 = 0 subspace bounds the Haar average below by 5/12 at a0 = 0,"
         " where the curve claims 1/4; the sampler instead matches the independently derived"
         " mean 1 + a1^2/2 + a0*a1 - 1/(3(1-a1^2)) to ~4e-4)";
  report(8, endpoints_ok && mc_ok, "nine-outcome average fidelity: closed endpoints + MC match",
         d.str());
}

// ---- 9. noise responses ----------------------------------------------------
void criterion9() {
  const double q = 0.05;
  const int samples = 100000;
  bool ok = true;
  std::ostringstream d;
  const std::array<double, 4> grid{0.0, 0.1, 0.2, 1.0 / 3.0};
  for (double x : grid) {
    const double a0 = std::sqrt(x);
    const double a1 = std::sqrt((1.0 - x) / 2.0);
    auto ch = SchmidtChannel::from_coeffs({a0, a1, a1});
    for (int label : {0, 1}) {
      std::array<double, 3> qv{0.0, 0.0, 0.0};
      qv[static_cast<std::size_t>(label)] = q;
      const double f =
          noise_fidelity_mc(ch, NoiseSpec(qv), samples,
                            9000 + static_cast<std::uint64_t>(1000 * x) + static_cast<std::uint64_t>(label));
      const double fitted = (1.0 - f) / q;
      const double expect = noise_response(ch, label);
      // 3 sigma with a conservative per-sample fidelity variance bound of 1/4
      const double sigma = 3.0 * 0.5 / (q * std::sqrt(static_cast<double>(samples)));
      if (std::abs(fitted - expect) > sigma) ok = false;
      d << "f" << label << "(" << x << ")=" << fitted << "/" << expect << " ";
    }
  }
  const double f_cross = noise_response(SchmidtChannel::from_coeffs(
                                            {std::sqrt(1.0 / 7.0), std::sqrt(3.0 / 7.0),
                                             std::sqrt(3.0 / 7.0)}),
                                        0);
  const bool cross_ok = std::abs(f_cross - 1.0 / 3.0) <= 1e-12;

  bool std_ok = true;
  for (int label : {0, 1, 2}) {
    std::array<double, 3> qv{0.0, 0.0, 0.0};
    qv[static_cast<std::size_t>(label)] = q;
    const double f = standard_noise_fidelity_mc(NoiseSpec(qv), samples,
                                                9500 + static_cast<std::uint64_t>(label));
    const double fitted = (1.0 - f) / q;
    const double sigma = 3.0 * 0.5 / (q * std::sqrt(static_cast<double>(samples)));
    if (std::abs(fitted - standard_noise_response(label)) > sigma) std_ok = false;
    d << "std_f" << label << "=" << fitted << " ";
  }
  report(9, ok && cross_ok && std_ok, "dephasing responses vs closed forms (3 sigma)", d.str());
}

// ---- 10. CSV determinism ----------------------------------------------------
void criterion10() {
  bool ok = true;
  const std::array<std::string, 4> cmds{
      "teleport --coeffs 0,0.70710678,0.70710678 --qubit 0.6,0.8",
      "sweep --n 4 --family random --samples 200 --seed 42",
      "noise --grid 0,0.2 --samples 2000 --seed 42",
      "imperfect --grid 0.1,0.5 --samples 2000 --seed 42"};
  for (const auto& c : cmds) {
    int e1 = 0, e2 = 0;
    const std::string a = run_cli(c, &e1);
    const std::string b = run_cli(c, &e2);
    if (e1 != 0 || e2 != 0 || a.empty() || a != b) ok = false;
  }
  report(10, ok, "identical seeds give byte-identical output for every subcommand");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
