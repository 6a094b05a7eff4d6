// Experiment runner: single teleportation runs, channel-family sweeps,
// noise-response scans and nine-outcome fidelity curves, as CSV/JSON.
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtel/channel.hpp"
#include "qtel/extensions.hpp"
#include "qtel/metrics.hpp"
#include "qtel/protocol.hpp"
#include "qtel/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIoError = 3;
constexpr const char* kCrlf = "\r\n";  // RFC 4180 line convention

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw std::invalid_argument("malformed number: '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// "re,im,re,im" (full complex pair) or "a,b" (real amplitudes).
std::pair<qtel::Complex, qtel::Complex> parse_qubit(const std::string& text) {
  const std::vector<double> v = parse_reals(text);
  if (v.size() == 2) return {{v[0], 0.0}, {v[1], 0.0}};
  if (v.size() == 4) return {{v[0], v[1]}, {v[2], v[3]}};
  throw std::invalid_argument("--qubit expects 'a,b' or 're,im,re,im'");
}

class OutputTarget {
public:
  explicit OutputTarget(const std::string& path) : path_(path) {
    if (path_ != "-") {
      file_.open(path_, std::ios::binary);
      if (!file_) throw std::ios_base::failure("cannot open output path: " + path_);
    }
  }
  std::ostream& stream() { return path_ == "-" ? std::cout : file_; }
  void finish() {
    stream().flush();
    if (path_ != "-" && !file_) throw std::ios_base::failure("write failed: " + path_);
  }

private:
  std::string path_;
  std::ofstream file_;
};

int run_teleport_cmd(const std::string& coeffs, const std::string& qubit, const std::string& out) {
  const auto ch = qtel::SchmidtChannel::from_coeffs(parse_reals(coeffs));
  const auto [alpha, beta] = parse_qubit(qubit);
  const double z = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (z == 0.0) throw std::invalid_argument("input qubit must be nonzero");
  const auto outcomes = qtel::run_teleportation(ch, alpha / z, beta / z);
  const auto report = qtel::resource_report(ch);

  nlohmann::json j;
  j["channel"] = nlohmann::json::parse(ch.to_json());
  j["outcomes"] = nlohmann::json::parse(qtel::outcomes_to_json(outcomes));
  j["report"] = nlohmann::json::parse(report.to_json());
  OutputTarget target(out);
  target.stream() << j.dump(2) << "\n";
  target.finish();
  return kExitOk;
}

int run_sweep_cmd(int n, const std::string& family, const std::optional<std::string>& grid,
                  int samples, std::uint64_t seed, const std::string& out) {
  struct Row {
    std::string param;
    qtel::ResourceReport report;
  };
  std::vector<Row> rows;
  if (family == "random") {
    if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
    for (int i = 0; i < samples; ++i) {
      qtel::RngStream mix(seed, static_cast<std::uint64_t>(i));
      const auto ch = qtel::sample_random_channel(n, mix.next_u64());
      rows.push_back({std::to_string(i), qtel::resource_report(ch)});
    }
  } else {
    if (!grid) throw std::invalid_argument("--grid is required for family " + family);
    for (double p : parse_reals(*grid)) {
      qtel::SchmidtChannel ch = [&] {
        if (family == "case1") return qtel::case1_channel(n, p);
        if (family == "case2") return qtel::case2_channel(n, p);
        if (family == "vertex") return qtel::vertex_channel(n, static_cast<int>(std::lround(p)));
        throw std::invalid_argument("unknown family: " + family);
      }();
      rows.push_back({fmt17(p), qtel::resource_report(ch)});
    }
  }

  OutputTarget target(out);
  std::ostream& os = target.stream();
  os << "n,family,param,channel_entropy,measurement_entanglement,classical_bits" << kCrlf;
  for (const Row& r : rows)
    os << n << ',' << family << ',' << r.param << ',' << fmt17(r.report.channel_entropy) << ','
       << fmt17(r.report.measurement_entanglement) << ',' << fmt17(r.report.classical_bits)
       << kCrlf;
  target.finish();
  return kExitOk;
}

int run_noise_cmd(const std::string& grid, const std::string& qgrid, int samples,
                  std::uint64_t seed, const std::string& out) {
  const std::vector<double> a0sq_grid = parse_reals(grid);
  const std::vector<double> qs = parse_reals(qgrid);
  for (double x : a0sq_grid)
    if (!(x >= 0.0 && x <= 1.0 / 3.0 + 1e-12))
      throw std::invalid_argument("a0^2 grid value outside [0, 1/3]");
  for (double q : qs)
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("q grid value outside (0, 1]");

  struct Fit {
    double slope, stderr_;
  };
  // Least-squares slope of (1 - <F>) vs q through the origin; the response is
  // exactly linear in q, so a single q value already fixes it.
  auto fit_label = [&](const qtel::SchmidtChannel& ch, int label, std::uint64_t s) -> Fit {
    double num = 0.0, den = 0.0, var = 0.0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      std::array<double, 3> qv{0.0, 0.0, 0.0};
      qv[static_cast<std::size_t>(label)] = qs[i];
      qtel::RngStream mix(s, static_cast<std::uint64_t>(i));
      const double f = qtel::noise_fidelity_mc(ch, qtel::NoiseSpec(qv), samples, mix.next_u64());
      num += qs[i] * (1.0 - f);
      den += qs[i] * qs[i];
      var += qs[i] * qs[i] * 0.25 / samples;  // conservative per-point variance bound
    }
    return {num / den, std::sqrt(var) / den};
  };

  OutputTarget target(out);
  std::ostream& os = target.stream();
  os << "a0_sq,f0_closed,f1_closed,f0_fitted,f1_fitted,mc_stderr,baseline" << kCrlf;
  for (std::size_t gi = 0; gi < a0sq_grid.size(); ++gi) {
    const double x = a0sq_grid[gi];
    const double a0 = std::sqrt(x);
    const double a1 = std::sqrt((1.0 - x) / 2.0);
    const auto ch = qtel::SchmidtChannel::from_coeffs({a0, a1, a1});
    qtel::RngStream mix(seed, static_cast<std::uint64_t>(gi));
    const Fit f0 = fit_label(ch, 0, mix.next_u64());
    const Fit f1 = fit_label(ch, 1, mix.next_u64());
    os << fmt17(x) << ',' << fmt17(qtel::noise_response(ch, 0)) << ','
       << fmt17(qtel::noise_response(ch, 1)) << ',' << fmt17(f0.slope) << ',' << fmt17(f1.slope)
       << ',' << fmt17(std::max(f0.stderr_, f1.stderr_)) << ',' << fmt17(1.0 / 3.0) << kCrlf;
  }
  target.finish();
  return kExitOk;
}

int run_imperfect_cmd(const std::string& grid, int samples, std::uint64_t seed,
                      const std::string& out) {
  const std::vector<double> a0_grid = parse_reals(grid);
  for (double a0 : a0_grid)
    if (!(a0 >= 0.0 && a0 <= 1.0 / std::sqrt(3.0) + 1e-12))
      throw std::invalid_argument("a0 grid value outside [0, 1/sqrt(3)]");

  OutputTarget target(out);
  std::ostream& os = target.stream();
  os << "a0,F_closed,F_mc,stderr" << kCrlf;
  for (std::size_t gi = 0; gi < a0_grid.size(); ++gi) {
    const double a0 = std::min(a0_grid[gi], 1.0 / std::sqrt(3.0));
    const double a1 = std::sqrt((1.0 - a0 * a0) / 2.0);
    const auto ch = qtel::SchmidtChannel::from_coeffs({a0, a1, a1});
    qtel::RngStream mix(seed, static_cast<std::uint64_t>(gi));
    const double fmc = qtel::imperfect_teleport_mc(ch, samples, mix.next_u64());
    os << fmt17(a0_grid[gi]) << ',' << fmt17(qtel::imperfect_average_fidelity_closed(ch)) << ','
       << fmt17(fmc) << ',' << fmt17(0.5 / std::sqrt(static_cast<double>(samples))) << kCrlf;
  }
  target.finish();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"teleportation-through-partially-entangled-channels experiment runner"};
  app.require_subcommand(1);

  std::string coeffs, qubit = "1,0", grid, qgrid = "0.05", family = "case1";
  std::string out = "-";
  int n = 2;
  int samples = 100000;
  std::uint64_t seed = 42;
  std::optional<std::string> sweep_grid;

  CLI::App* teleport = app.add_subcommand("teleport", "run one teleportation, emit JSON");
  teleport->add_option("--coeffs", coeffs, "channel Schmidt coefficients, ascending")->required();
  teleport->add_option("--qubit", qubit, "input qubit 'a,b' or 're,im,re,im'");
  teleport->add_option("--out", out, "output path or '-'");

  CLI::App* sweep = app.add_subcommand("sweep", "channel-family sweep, emit CSV");
  sweep->add_option("--n", n, "channel parameter n = d-1")->required();
  sweep->add_option("--family", family, "case1|case2|random|vertex")->required();
  sweep->add_option("--grid", sweep_grid, "comma list of family parameters");
  sweep->add_option("--samples", samples, "sample count for family=random");
  sweep->add_option("--seed", seed, "RNG seed");
  sweep->add_option("--out", out, "output path or '-'");

  CLI::App* noise = app.add_subcommand("noise", "dephasing response scan, emit CSV");
  noise->add_option("--grid", grid, "comma list of a0^2 values in [0, 1/3]")->required();
  noise->add_option("--qgrid", qgrid, "comma list of dephasing strengths");
  noise->add_option("--samples", samples, "Monte Carlo samples per point");
  noise->add_option("--seed", seed, "RNG seed");
  noise->add_option("--out", out, "output path or '-'");

  CLI::App* imperfect = app.add_subcommand("imperfect", "nine-outcome fidelity curve, emit CSV");
  imperfect->add_option("--grid", grid, "comma list of a0 values in [0, 1/sqrt(3)]")->required();
  imperfect->add_option("--samples", samples, "Monte Carlo samples per point");
  imperfect->add_option("--seed", seed, "RNG seed");
  imperfect->add_option("--out", out, "output path or '-'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (teleport->parsed()) return run_teleport_cmd(coeffs, qubit, out);
    if (sweep->parsed()) return run_sweep_cmd(n, family, sweep_grid, samples, seed, out);
    if (noise->parsed()) return run_noise_cmd(grid, qgrid, samples, seed, out);
    return run_imperfect_cmd(grid, samples, seed, out);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}
