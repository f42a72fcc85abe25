#include "nilhsp/qsim_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "nilhsp/errors.hpp"
#include "nilhsp/group_alg.hpp"

namespace nilhsp {

namespace {

constexpr std::size_t kMaxDensityGroup = 64;

void require_group_register(const PureState& psi, const Group& g) {
  const Register& r = psi.registers().front();
  if (r.kind != RegisterKind::group || r.dim != g.order()) {
    throw std::invalid_argument("first register is not a group register of dimension " + std::to_string(g.order()));
  }
}

/// Conditional states are unchanged by right multiplication with L exactly
/// when the purified subgroup contains L.
template <typename Overlap>
void require_inside_hidden(const Subgroup& l, Overlap overlap) {
  const Group& g = l.group();
  for (Elem x = 0; x < g.order(); ++x) {
    for (Elem w : l.generators()) {
      if (std::abs(overlap(x, g.mul(x, w)) - 1.0) > 1e-6) {
        throw std::invalid_argument("pushed subgroup is not contained in the purified subgroup");
      }
    }
  }
}

}  // namespace

PureState::PureState(std::vector<Register> registers, std::vector<Complex> amplitudes)
    : registers_(std::move(registers)), amplitudes_(std::move(amplitudes)) {
  if (registers_.empty()) throw std::invalid_argument("state without registers");
  std::size_t total = 1;
  for (const Register& r : registers_) {
    if (r.dim == 0) throw std::invalid_argument("zero-dimensional register");
    if (total > kMaxAmplitudes / r.dim) throw BudgetExceeded("state exceeds 2^22 amplitudes");
    total *= r.dim;
  }
  if (total != amplitudes_.size()) throw std::invalid_argument("amplitude count does not match registers");
  double norm = 0;
  for (const Complex& a : amplitudes_) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kSingleStepTolerance) {
    throw VerificationFailure("state norm deviates from 1 by " + std::to_string(std::abs(norm - 1.0)));
  }
}

ComplexMatrix PureState::reduced_first() const {
  const std::size_t d = registers_.front().dim;
  if (d > 4096) throw BudgetExceeded("reduced state above dimension 4096");
  const std::size_t rest = rest_dim();
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> psi(
      amplitudes_.data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rest));
  return psi * psi.adjoint();
}

ComplexMatrix PureState::conditional_gram() const {
  const std::size_t d = registers_.front().dim;
  const ComplexMatrix rho = reduced_first();
  // gram(x, x') = d * sum_r conj(psi(x,r)) psi(x',r) = d * rho(x', x).
  return static_cast<double>(d) * rho.transpose();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("density matrix must be square");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kSingleStepTolerance) {
    throw VerificationFailure("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0)) > kSingleStepTolerance) throw VerificationFailure("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) throw VerificationFailure("density matrix has a negative eigenvalue");
}

ComplexMatrix GramPurification::density() const {
  return gram.transpose() / static_cast<double>(group->order());
}

GramPurification gram_of(const PureState& psi, GroupPtr group) {
  require_group_register(psi, *group);
  return {std::move(group), psi.conditional_gram()};
}

std::vector<Elem> coset_representatives(const Subgroup& h, CosetChoice choice) {
  const Group& g = h.group();
  std::vector<bool> seen(g.order());
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    Elem pick = x;
    for (Elem y : h.elements()) {
      const Elem xy = g.mul(x, y);
      seen[xy] = true;
      pick = std::max(pick, xy);
    }
    reps.push_back(choice == CosetChoice::least ? x : pick);
  }
  return reps;
}

std::vector<std::size_t> coset_index(const Subgroup& h) {
  const Group& g = h.group();
  const std::size_t unset = g.order();
  std::vector<std::size_t> index(g.order(), unset);
  std::size_t next = 0;
  for (Elem x = 0; x < g.order(); ++x) {
    if (index[x] != unset) continue;
    for (Elem y : h.elements()) index[g.mul(x, y)] = next;
    ++next;
  }
  return index;
}

DensityMatrix subgroup_state(const Subgroup& h, CosetChoice choice) {
  const Group& g = h.group();
  if (g.order() > kMaxDensityGroup) throw BudgetExceeded("subgroup state is limited to |G| <= 64");
  const auto n = static_cast<Eigen::Index>(g.order());
  const auto reps = coset_representatives(h, choice);
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(h.order()));
  for (Elem a : reps) {
    Eigen::VectorXcd coset = Eigen::VectorXcd::Zero(n);
    for (Elem y : h.elements()) coset(g.mul(a, y)) = amp;
    rho += coset * coset.adjoint();
  }
  rho /= static_cast<double>(reps.size());
  return DensityMatrix(std::move(rho));
}

ComplexMatrix subgroup_density(const Subgroup& h) {
  const auto idx = coset_index(h);
  const auto n = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  const double v = 1.0 / static_cast<double>(n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      if (idx[x] == idx[y]) rho(x, y) = v;
    }
  }
  return rho;
}

PureState standard_purification(const Subgroup& h) {
  const auto idx = coset_index(h);
  const std::size_t n = idx.size();
  const std::size_t cosets = n / h.order();
  std::vector<Complex> amps(n * cosets);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t x = 0; x < n; ++x) amps[x * cosets + idx[x]] = amp;
  return PureState({{RegisterKind::group, n}, {RegisterKind::purifier, cosets}}, std::move(amps));
}

GramPurification standard_gram(const Subgroup& h) {
  const auto idx = coset_index(h);
  const auto n = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix gram = ComplexMatrix::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      if (idx[x] == idx[y]) gram(x, y) = 1.0;
    }
  }
  return {h.parent(), std::move(gram)};
}

double purification_error(const PureState& psi, const Subgroup& h) {
  require_group_register(psi, h.group());
  return (psi.reduced_first() - subgroup_density(h)).cwiseAbs().maxCoeff();
}

double purification_error(const GramPurification& gram, const Subgroup& h) {
  if (gram.group != h.parent()) throw std::invalid_argument("Gram purification over a different group");
  return (gram.density() - subgroup_density(h)).cwiseAbs().maxCoeff();
}

bool is_purification(const PureState& psi, const Subgroup& h, double tol) {
  return purification_error(psi, h) <= tol;
}

double coset_gram_error(const GramPurification& gram, const Subgroup& h) {
  const auto idx = coset_index(h);
  double worst = 0;
  for (Eigen::Index x = 0; x < gram.gram.rows(); ++x) {
    for (Eigen::Index y = 0; y < gram.gram.cols(); ++y) {
      const double want = idx[x] == idx[y] ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gram.gram(x, y) - want));
    }
  }
  return worst;
}

Restricted restrict_conversion(const PureState& psi, const Subgroup& l) {
  require_group_register(psi, l.group());
  const CosetTransversal t(l);
  SubgroupEmbedding e = embed(l);
  const auto& reps = t.representatives();
  const std::size_t rest = psi.rest_dim();
  const std::size_t nl = l.order(), nr = reps.size();
  std::vector<Complex> amps(psi.size());
  for (std::size_t li = 0; li < nl; ++li) {
    for (std::size_t a = 0; a < nr; ++a) {
      const Elem x = l.group().mul(reps[a], e.to_parent[li]);
      for (std::size_t r = 0; r < rest; ++r) amps[(li * nr + a) * rest + r] = psi.amplitude(x, r);
    }
  }
  std::vector<Register> regs{{RegisterKind::group, nl}, {RegisterKind::purifier, nr}};
  regs.insert(regs.end(), psi.registers().begin() + 1, psi.registers().end());
  return {PureState(std::move(regs), std::move(amps)), std::move(e)};
}

RestrictedGram restrict_conversion(const GramPurification& gram, const Subgroup& l) {
  if (gram.group != l.parent()) throw std::invalid_argument("Gram purification over a different group");
  const Group& g = l.group();
  const CosetTransversal t(l);
  SubgroupEmbedding e = embed(l);
  const auto& reps = t.representatives();
  const auto nl = static_cast<Eigen::Index>(l.order());
  ComplexMatrix out = ComplexMatrix::Zero(nl, nl);
  for (Eigen::Index i = 0; i < nl; ++i) {
    for (Eigen::Index j = 0; j < nl; ++j) {
      Complex s = 0;
      for (Elem a : reps) s += gram.gram(g.mul(a, e.to_parent[i]), g.mul(a, e.to_parent[j]));
      out(i, j) = s / static_cast<double>(reps.size());
    }
  }
  return {{e.group, std::move(out)}, std::move(e)};
}

Pushed push_conversion(const PureState& psi, const Subgroup& l) {
  require_group_register(psi, l.group());
  {
    const std::size_t rest = psi.rest_dim();
    const double dim = static_cast<double>(l.group().order());
    require_inside_hidden(l, [&](Elem x, Elem y) {
      Complex s = 0;
      for (std::size_t r = 0; r < rest; ++r) s += std::conj(psi.amplitude(x, r)) * psi.amplitude(y, r);
      return s * dim;
    });
  }
  const CosetTransversal t(l);
  QuotientMap q = make_quotient(t);
  const std::size_t rest = psi.rest_dim();
  const std::size_t nq = q.quotient->order(), nl = l.order();
  std::vector<Complex> amps(psi.size());
  for (std::size_t a = 0; a < nq; ++a) {
    for (std::size_t b = 0; b < nl; ++b) {
      const Elem x = l.group().mul(q.lift[a], l.elements()[b]);
      for (std::size_t r = 0; r < rest; ++r) amps[(a * nl + b) * rest + r] = psi.amplitude(x, r);
    }
  }
  std::vector<Register> regs{{RegisterKind::group, nq}, {RegisterKind::purifier, nl}};
  regs.insert(regs.end(), psi.registers().begin() + 1, psi.registers().end());
  return {PureState(std::move(regs), std::move(amps)), std::move(q)};
}

PushedGram push_conversion(const GramPurification& gram, const Subgroup& l) {
  if (gram.group != l.parent()) throw std::invalid_argument("Gram purification over a different group");
  require_inside_hidden(l, [&](Elem x, Elem y) { return gram.gram(x, y); });
  const Group& g = l.group();
  const CosetTransversal t(l);
  QuotientMap q = make_quotient(t);
  const auto nq = static_cast<Eigen::Index>(q.quotient->order());
  ComplexMatrix out = ComplexMatrix::Zero(nq, nq);
  for (Eigen::Index a = 0; a < nq; ++a) {
    for (Eigen::Index c = 0; c < nq; ++c) {
      Complex s = 0;
      for (Elem b : l.elements()) s += gram.gram(g.mul(q.lift[a], b), g.mul(q.lift[c], b));
      out(a, c) = s / static_cast<double>(l.order());
    }
  }
  return {{q.quotient, std::move(out)}, std::move(q)};
}

}  // namespace nilhsp
