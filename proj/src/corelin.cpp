#include "qtel/corelin.hpp"

namespace qtel {

StateVec tensor(const StateVec& a, const StateVec& b) {
  const int da = a.dim(), db = b.dim();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(da) * db);
  for (int i = 0; i < da; ++i)
    out.segment(static_cast<Eigen::Index>(i) * db, db) = a[i] * b.amplitudes();
  return StateVec(std::move(out));
}

StateVec project_sender(const StateVec& bra, const StateVec& psi, int dim3) {
  if (dim3 < 1) throw std::invalid_argument("project_sender: dim3 must be positive");
  if (static_cast<long>(bra.dim()) * dim3 != psi.dim())
    throw std::invalid_argument("project_sender: bra.dim * dim3 != psi.dim");
  if (!bra.is_normalized())
    throw std::invalid_argument("project_sender: bra is not normalized");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim3);
  for (int i = 0; i < bra.dim(); ++i)
    out += std::conj(bra[i]) * psi.amplitudes().segment(static_cast<Eigen::Index>(i) * dim3, dim3);
  return StateVec(std::move(out));
}

double fidelity(const StateVec& a, const StateVec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  if (!a.is_normalized() || !b.is_normalized())
    throw std::invalid_argument("fidelity: inputs must be normalized");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

std::vector<StateVec> complete_orthonormal(const std::vector<StateVec>& seeds, int dim) {
  if (dim < 1) throw std::invalid_argument("complete_orthonormal: dim must be positive");
  if (static_cast<int>(seeds.size()) > dim)
    throw std::invalid_argument("complete_orthonormal: more seeds than dimensions");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (seeds[i].dim() != dim)
      throw std::invalid_argument("complete_orthonormal: seed dimension mismatch");
    for (std::size_t j = 0; j <= i; ++j) {
      Complex g = seeds[j].amplitudes().dot(seeds[i].amplitudes());
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - want) > kOrthoTol)
        throw std::invalid_argument("complete_orthonormal: seed vectors are not orthonormal");
    }
  }

  std::vector<StateVec> basis = seeds;
  for (int k = 0; k < dim && static_cast<int>(basis.size()) < dim; ++k) {
    Eigen::VectorXcd cand = Eigen::VectorXcd::Zero(dim);
    cand[k] = 1.0;
    for (const StateVec& b : basis)
      cand -= b.amplitudes().dot(cand) * b.amplitudes();
    double nn = cand.norm();
    if (nn >= kResidualTol) basis.emplace_back(cand / nn);
  }
  if (static_cast<int>(basis.size()) != dim)
    throw std::logic_error("complete_orthonormal: failed to span the space");
  return basis;
}

}  // namespace qtel
