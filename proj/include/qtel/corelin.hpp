#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qtel {

using Complex = std::complex<double>;

// Project-wide tolerances. Double precision leaves ample headroom for
// cascades of at most n products at the dimensions used here (d <= ~10).
inline constexpr double kNormTol = 1e-12;      // state normalization
inline constexpr double kOrthoTol = 1e-10;     // orthonormality / unitarity
inline constexpr double kFidelityTol = 1e-9;   // fidelity assertions
inline constexpr double kResidualTol = 1e-8;   // Gram-Schmidt residual cutoff

/// Dense complex state vector. Index convention: in composite systems the
/// first factor is the most significant index (subsystem 1 varies slowest).
class StateVec {
public:
  explicit StateVec(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw std::invalid_argument("StateVec: empty amplitude list");
  }
  StateVec(std::initializer_list<Complex> amps)
      : StateVec(Eigen::Map<const Eigen::VectorXcd>(std::data(amps),
                                                    static_cast<Eigen::Index>(amps.size()))) {}

  static StateVec zero(int dim) { return StateVec(Eigen::VectorXcd::Zero(dim)); }
  static StateVec basis(int dim, int k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[k] = 1.0;
    return StateVec(std::move(v));
  }

  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_[i]; }

  double squared_norm() const { return amps_.squaredNorm(); }
  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = kNormTol) const {
    return std::abs(squared_norm() - 1.0) <= tol;
  }
  StateVec normalized() const {
    double nn = norm();
    if (nn == 0.0) throw std::invalid_argument("StateVec: cannot normalize zero vector");
    return StateVec(amps_ / nn);
  }

private:
  Eigen::VectorXcd amps_;
};

/// Dense complex square operator.
class Operator {
public:
  explicit Operator(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
      throw std::invalid_argument("Operator: entries must be a nonempty square matrix");
  }

  static Operator identity(int dim) { return Operator(Eigen::MatrixXcd::Identity(dim, dim)); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& entries() const { return m_; }

  bool is_unitary(double tol = kOrthoTol) const {
    Eigen::MatrixXcd d = m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(dim(), dim());
    return d.cwiseAbs().maxCoeff() <= tol;
  }

  StateVec apply(const StateVec& v) const {
    if (v.dim() != dim()) throw std::invalid_argument("Operator::apply: dimension mismatch");
    return StateVec(m_ * v.amplitudes());
  }

private:
  Eigen::MatrixXcd m_;
};

/// Kronecker product; first factor is the most significant index.
StateVec tensor(const StateVec& a, const StateVec& b);

/// Partial inner product <bra|psi> over subsystems 1(x)2, leaving subsystem 3.
/// psi lives on 1(x)2(x)3 with bra.dim * dim3 == psi.dim. The result is
/// UNNORMALIZED; its squared norm is the outcome probability.
StateVec project_sender(const StateVec& bra, const StateVec& psi, int dim3);

/// Squared overlap |<a|b>|^2 of two normalized states.
double fidelity(const StateVec& a, const StateVec& b);

/// Extends mutually orthonormal seed vectors to a full orthonormal basis of
/// C^dim by Gram-Schmidt over the standard basis in index order, skipping
/// candidates whose residual norm falls below kResidualTol.
std::vector<StateVec> complete_orthonormal(const std::vector<StateVec>& seeds, int dim);

}  // namespace qtel
