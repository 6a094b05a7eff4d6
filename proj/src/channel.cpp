#include "qtel/channel.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qtel/rng.hpp"

namespace qtel {

SchmidtChannel SchmidtChannel::from_coeffs(std::vector<double> coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 2) throw std::invalid_argument("SchmidtChannel: n < 2 (need at least three coefficients)");
  for (double a : coeffs)
    if (a < 0.0 || !std::isfinite(a))
      throw std::invalid_argument("SchmidtChannel: negative or non-finite coefficient");
  for (int i = 0; i + 1 <= n; ++i)
    if (coeffs[i] > coeffs[i + 1] + 1e-12)
      throw std::invalid_argument("SchmidtChannel: not ascending");
  if (std::abs(coeffs[n - 1] - coeffs[n]) > 1e-12)
    throw std::invalid_argument("SchmidtChannel: top two Schmidt coefficients are not equal");

  double sum = 0.0;
  for (double a : coeffs) sum += a * a;
  if (std::abs(sum - 1.0) > 1e-6)
    throw std::invalid_argument("SchmidtChannel: squared coefficients do not sum to 1");
  const double scale = 1.0 / std::sqrt(sum);
  for (double& a : coeffs) a *= scale;

  if (coeffs[n] <= 0.0)
    throw std::invalid_argument("SchmidtChannel: largest coefficient must be positive");
  return SchmidtChannel(std::move(coeffs));
}

StateVec SchmidtChannel::state() const {
  const int d = dim();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) v[static_cast<Eigen::Index>(i) * d + i] = coeffs_[i];
  return StateVec(std::move(v));
}

std::string SchmidtChannel::to_json() const {
  nlohmann::json j;
  j["n"] = n();
  j["coeffs"] = coeffs_;
  return j.dump();
}

SchmidtChannel SchmidtChannel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<double> coeffs = j.at("coeffs").get<std::vector<double>>();
  if (j.contains("n") && j.at("n").get<int>() + 1 != static_cast<int>(coeffs.size()))
    throw std::invalid_argument("SchmidtChannel: n does not match coefficient count");
  return from_coeffs(std::move(coeffs));
}

SchmidtChannel vertex_channel(int n, int tau) {
  if (n < 2) throw std::invalid_argument("vertex_channel: n < 2");
  if (tau < 0 || tau > n - 1) throw std::invalid_argument("vertex_channel: tau out of range");
  std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
  const double v = 1.0 / std::sqrt(static_cast<double>(n + 1 - tau));
  for (int i = tau; i <= n; ++i) a[static_cast<std::size_t>(i)] = v;
  return SchmidtChannel::from_coeffs(std::move(a));
}

SchmidtChannel case1_channel(int n, double x) {
  if (n < 2) throw std::invalid_argument("case1_channel: n < 2");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("case1_channel: x outside [0,1]");
  const double an = 1.0 / std::sqrt(2.0 + (n - 1) * x * x);
  std::vector<double> a(static_cast<std::size_t>(n) + 1, x * an);
  a[static_cast<std::size_t>(n) - 1] = an;
  a[static_cast<std::size_t>(n)] = an;
  return SchmidtChannel::from_coeffs(std::move(a));
}

SchmidtChannel case2_channel(int n, double y) {
  if (n < 3) throw std::invalid_argument("case2_channel: n < 3");
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("case2_channel: y outside [0,1]");
  const double an = 1.0 / std::sqrt(2.0 + y * y);
  std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
  a[static_cast<std::size_t>(n) - 2] = y * an;
  a[static_cast<std::size_t>(n) - 1] = an;
  a[static_cast<std::size_t>(n)] = an;
  return SchmidtChannel::from_coeffs(std::move(a));
}

SchmidtChannel sample_random_channel(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample_random_channel: n < 2");
  RngStream rng(seed);
  std::vector<double> q(static_cast<std::size_t>(n) + 1);
  double sum = 0.0;
  for (double& v : q) {
    v = -std::log1p(-rng.uniform());  // Exp(1); normalized Exp draws are flat Dirichlet
    sum += v;
  }
  for (double& v : q) v /= sum;
  std::sort(q.begin(), q.end());
  const double top = 0.5 * (q[q.size() - 2] + q[q.size() - 1]);
  q[q.size() - 2] = top;
  q[q.size() - 1] = top;
  std::vector<double> a(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) a[i] = std::sqrt(q[i]);
  return SchmidtChannel::from_coeffs(std::move(a));
}

double channel_entropy(const SchmidtChannel& ch) {
  double e = 0.0;
  for (double a : ch.coeffs()) {
    const double q = a * a;
    if (q > 0.0) e -= q * std::log2(q);
  }
  return e;
}

}  // namespace qtel
