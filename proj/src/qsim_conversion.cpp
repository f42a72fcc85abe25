#include "nilhsp/qsim_conversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "nilhsp/errors.hpp"
#include "nilhsp/group_alg.hpp"

namespace nilhsp {

namespace {

void require_central(const Subgroup& l) {
  const Group& g = l.group();
  for (Elem z : l.generators()) {
    for (Elem s : g.generators()) {
      if (g.mul(z, s) != g.mul(s, z)) throw std::invalid_argument("L is not central");
    }
  }
}

ElementaryAbelianBasis checked_basis(const Subgroup& l, const ZeroSumSelector& selector) {
  require_central(l);
  ElementaryAbelianBasis basis(l);
  if (basis.modulus() != selector.modulus() || basis.rank() != selector.rank()) {
    throw std::invalid_argument("selector does not match L = Z_p^n");
  }
  return basis;
}

}  // namespace

ConversionResult main_conversion(std::span<const GramPurification> copies, const Subgroup& l,
                                 const ZeroSumSelector& selector, Execution exec) {
  const std::size_t s = selector.length();
  if (copies.size() != s) throw std::invalid_argument("main conversion needs exactly S copies");
  for (const auto& c : copies) {
    if (c.group != l.parent()) throw std::invalid_argument("copy is over a different group");
  }
  const ElementaryAbelianBasis basis = checked_basis(l, selector);
  const Group& g = l.group();
  const std::size_t ng = g.order(), nl = basis.size();
  const std::size_t sequences = [&] {
    std::size_t t = 1;
    for (std::size_t j = 0; j < s; ++j) t *= nl;
    return t;
  }();

  // overlap[j][y * ng + k] = T_j(y, k).
  std::vector<std::vector<Complex>> overlap(s, std::vector<Complex>(nl * ng));
  const double scale = 1.0 / (static_cast<double>(ng) * static_cast<double>(nl) * static_cast<double>(nl));
  detail::for_each_index(s * nl, exec, [&](std::size_t task) {
    const std::size_t j = task / nl, y = task % nl;
    const ComplexMatrix& gram = copies[j].gram;
    for (Elem k = 0; k < ng; ++k) {
      Complex sum = 0;
      for (std::size_t z = 0; z < nl; ++z) {
        const Elem z_inv = g.inv(basis.element(z));
        const std::uint32_t pz = basis.pairing(y, z);
        const Elem kz = g.mul(k, z_inv);
        for (std::size_t zp = 0; zp < nl; ++zp) {
          const Complex phase = basis.root(basis.pairing(y, zp) + basis.modulus().value() - pz);
          const Elem shift = g.mul(basis.element(zp), kz);
          for (Elem xp = 0; xp < ng; ++xp) sum += phase * gram(g.mul(xp, shift), xp);
        }
      }
      overlap[j][y * ng + k] = sum * scale;
    }
  });

  // relative[k] = Gram_X(x, x') for any x'^-1 x = k.
  std::vector<Complex> relative(ng);
  detail::for_each_index(ng, exec, [&](std::size_t k) {
    Complex total = 0;
    std::vector<std::size_t> ys(s);
    for (std::size_t seq = 0; seq < sequences; ++seq) {
      std::size_t rest = seq;
      for (std::size_t j = s; j-- > 0;) {
        ys[j] = rest % nl;
        rest /= nl;
      }
      const std::uint32_t chosen = selector.select(seq);
      Complex term = 1;
      for (std::size_t j = 0; j < s; ++j) {
        const Elem shift = (chosen >> j & 1) ? static_cast<Elem>(k) : g.identity();
        term *= overlap[j][ys[j] * ng + shift];
      }
      total += term;
    }
    relative[k] = total;
  });

  ComplexMatrix gram_x(static_cast<Eigen::Index>(ng), static_cast<Eigen::Index>(ng));
  for (Elem x = 0; x < ng; ++x) {
    for (Elem xp = 0; xp < ng; ++xp) gram_x(x, xp) = relative[g.mul(g.inv(xp), x)];
  }
  GramPurification before{l.parent(), std::move(gram_x)};
  PushedGram pushed = push_conversion(before, l);
  ConversionResult out{std::move(before), std::move(pushed.gram), std::move(pushed.quotient), s, s * basis.rank()};
  return out;
}

DenseConversionResult main_conversion_dense(std::span<const PureState> copies, const Subgroup& l,
                                            const ZeroSumSelector& selector) {
  const std::size_t s = selector.length();
  if (copies.size() != s) throw std::invalid_argument("main conversion needs exactly S copies");
  const ElementaryAbelianBasis basis = checked_basis(l, selector);
  const Group& g = l.group();
  const std::size_t ng = g.order(), nl = basis.size();
  const ComplexMatrix v = fourier_isometry(basis);

  // Per copy: amplitudes over (u, y, r) after the Fourier step.
  std::vector<std::vector<Complex>> expanded(s);
  std::vector<std::size_t> rest(s), width(s);
  std::size_t total = ng;
  for (std::size_t j = 0; j < s; ++j) {
    const PureState& psi = copies[j];
    if (psi.registers().front().dim != ng) throw std::invalid_argument("copy is over a different group");
    rest[j] = psi.rest_dim();
    width[j] = ng * nl * rest[j];
    if (total > kMaxAmplitudes / width[j]) throw BudgetExceeded("dense conversion exceeds 2^22 amplitudes");
    total *= width[j];
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> in(
        psi.amplitudes().data(), static_cast<Eigen::Index>(ng), static_cast<Eigen::Index>(rest[j]));
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out = v * in;
    expanded[j].assign(out.data(), out.data() + out.size());
  }

  std::vector<Complex> amps(total);
  const double fresh = 1.0 / std::sqrt(static_cast<double>(ng));
  const std::size_t block = total / ng;
  std::vector<std::size_t> idx(s), ys(s);
  for (Elem x = 0; x < ng; ++x) {
    for (std::size_t b = 0; b < block; ++b) {
      std::size_t r = b;
      for (std::size_t j = s; j-- > 0;) {
        idx[j] = r % width[j];
        r /= width[j];
        ys[j] = idx[j] / rest[j] % nl;
      }
      const std::uint32_t chosen = selector.select(ys);
      // The target |u'> came from |u' x> on selected copies.
      Complex a = fresh;
      for (std::size_t j = 0; j < s; ++j) {
        std::size_t src = idx[j];
        if (chosen >> j & 1) {
          const std::size_t u = idx[j] / (nl * rest[j]);
          const std::size_t tail = idx[j] % (nl * rest[j]);
          src = g.mul(static_cast<Elem>(u), x) * nl * rest[j] + tail;
        }
        a *= expanded[j][src];
      }
      amps[x * block + b] = a;
    }
  }
  std::vector<Register> regs{{RegisterKind::group, ng}};
  for (std::size_t j = 0; j < s; ++j) {
    regs.push_back({RegisterKind::purifier, ng});
    regs.push_back({RegisterKind::label, nl});
    regs.insert(regs.end(), copies[j].registers().begin() + 1, copies[j].registers().end());
  }
  PureState before(std::move(regs), std::move(amps));
  Pushed pushed = push_conversion(before, l);
  return {std::move(before), std::move(pushed)};
}

double phase_cancellation_error(const GramPurification& before_push, const Subgroup& l) {
  const Elem one = l.group().identity();
  double worst = 0;
  for (Elem w : l.elements()) worst = std::max(worst, std::abs(Complex(1.0) - before_push.gram(w, one)));
  return worst;
}

double phase_cancellation_error(const PureState& before_push, const Subgroup& l) {
  const Elem one = l.group().identity();
  const double scale = std::sqrt(static_cast<double>(before_push.registers().front().dim));
  double worst = 0;
  for (Elem w : l.elements()) {
    for (std::size_t r = 0; r < before_push.rest_dim(); ++r) {
      worst = std::max(worst, scale * std::abs(before_push.amplitude(w, r) - before_push.amplitude(one, r)));
    }
  }
  return worst;
}

IterationResult iterate_conversion(const Subgroup& h, Execution exec) {
  const GroupPtr& g = h.parent();
  const CentralSeries lcs = lower_central_series(g);
  GramPurification gram = standard_gram(h);
  std::vector<Elem> project(g->order());
  for (Elem x = 0; x < g->order(); ++x) project[x] = x;
  GroupPtr current = g;
  std::vector<IterationStep> steps;
  std::size_t total_copies = 1;
  auto image = [&](std::initializer_list<const Subgroup*> parts) {
    std::vector<Elem> gens;
    for (const Subgroup* part : parts) {
      for (Elem x : part->generators()) gens.push_back(project[x]);
    }
    return generated(current, gens);
  };
  for (std::size_t i = lcs.nilpotency_class(); i-- > 1;) {
    const Subgroup& term = lcs.terms[i];
    const Subgroup l = image({&term});
    const ElementaryAbelianBasis basis(l);
    const ZeroSumSelector selector = ZeroSumSelector::davenport(basis.modulus(), basis.rank());
    const std::vector<GramPurification> copies(selector.length(), gram);
    ConversionResult conv = main_conversion(copies, l, selector, exec);
    const Subgroup before_target = image({&h, &term});
    IterationStep step;
    step.group_order = current->order();
    step.l_order = l.order();
    step.copies = selector.length();
    step.phase_error = phase_cancellation_error(conv.before_push, l);
    step.purification_error = purification_error(conv.gram, project_subgroup(conv.quotient, before_target));
    steps.push_back(step);
    for (Elem& x : project) x = conv.quotient.project[x];
    current = conv.quotient.quotient;
    gram = std::move(conv.gram);
    total_copies *= selector.length();
  }
  const Subgroup& derived = lcs.terms.size() > 1 ? lcs.terms[1] : lcs.terms[0];
  Subgroup target = image({&h, &derived});
  return {std::move(gram), std::move(project), std::move(target), std::move(steps), total_copies};
}

std::vector<double> element_distribution(const GramPurification& gram) {
  const ComplexMatrix rho = gram.density();
  std::vector<double> out(static_cast<std::size_t>(rho.rows()));
  for (Eigen::Index i = 0; i < rho.rows(); ++i) out[static_cast<std::size_t>(i)] = rho(i, i).real();
  return out;
}

std::vector<double> fourier_distribution(const GramPurification& gram, const ElementaryAbelianBasis& basis) {
  if (basis.subgroup().parent() != gram.group || !basis.subgroup().is_whole()) {
    throw std::invalid_argument("character basis must cover the whole group of the purification");
  }
  const ComplexMatrix rho = gram.density();
  const auto n = rho.rows();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> out(basis.size());
  for (std::size_t y = 0; y < basis.size(); ++y) {
    Eigen::VectorXcd chi(n);
    for (Eigen::Index a = 0; a < n; ++a) chi(a) = norm * basis.root(basis.pairing(y, basis.label(static_cast<Elem>(a))));
    out[y] = (chi.adjoint() * rho * chi)(0, 0).real();
  }
  return out;
}

std::vector<double> exact_fourier_distribution(const Subgroup& k, const ElementaryAbelianBasis& basis) {
  const double mass = static_cast<double>(k.order()) / static_cast<double>(basis.size());
  std::vector<double> out(basis.size());
  for (std::size_t y = 0; y < basis.size(); ++y) {
    bool kills = true;
    for (Elem x : k.generators()) kills = kills && basis.pairing(y, basis.label(x)) == 0;
    out[y] = kills ? mass : 0.0;
  }
  return out;
}

Subgroup annihilator_of_support(const std::vector<double>& distribution, const ElementaryAbelianBasis& basis,
                                double threshold) {
  std::vector<Elem> members;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    bool killed = true;
    for (std::size_t y = 0; y < distribution.size() && killed; ++y) {
      if (distribution[y] > threshold) killed = basis.pairing(y, a) == 0;
    }
    if (killed) members.push_back(basis.element(a));
  }
  return generated(basis.subgroup().parent(), members);
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("distributions of different sizes");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / 2;
}

// ---------------------------------------------------------------------------
// Verification suite

bool CheckResult::passed() const noexcept {
  if (cases == 0) return true;
  return expect_large ? worst_error > tolerance : worst_error <= tolerance;
}

namespace {

class Checks {
 public:
  void record(const std::string& name, double error, double tol, bool expect_large = false) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, results_.size()).first;
      CheckResult r;
      r.name = name;
      r.tolerance = tol;
      r.expect_large = expect_large;
      r.worst_error = expect_large ? std::numeric_limits<double>::infinity() : 0.0;
      results_.push_back(r);
    }
    CheckResult& r = results_[it->second];
    ++r.cases;
    r.worst_error = expect_large ? std::min(r.worst_error, error) : std::max(r.worst_error, error);
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<CheckResult> results_;
};

bool is_central_elementary(const Subgroup& l) {
  if (l.is_trivial()) return false;
  try {
    ElementaryAbelianBasis b(l);
  } catch (const std::invalid_argument&) {
    return false;
  }
  const Group& g = l.group();
  for (Elem z : l.generators()) {
    for (Elem s : g.generators()) {
      if (g.mul(z, s) != g.mul(s, z)) return false;
    }
  }
  return true;
}

bool is_elementary(const Subgroup& l) {
  if (l.is_trivial()) return false;
  try {
    ElementaryAbelianBasis b(l);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::size_t dense_conversion_size(const Subgroup& h, const Subgroup& l, std::size_t copies) {
  const std::size_t ng = h.group().order();
  const std::size_t per_copy = ng * l.order() * (ng / h.order());
  std::size_t total = ng;
  for (std::size_t j = 0; j < copies; ++j) {
    if (total > kMaxAmplitudes / per_copy) return kMaxAmplitudes + 1;
    total *= per_copy;
  }
  return total;
}

}  // namespace

std::vector<CheckResult> verify_simulator(const GroupPtr& g, const VerifyOptions& options) {
  Checks checks;
  const std::vector<Subgroup> every = all_subgroups(g);
  const std::vector<Subgroup>& hidden = options.hidden.empty() ? every : options.hidden;
  const bool nilpotent = is_nilpotent(g);

  std::vector<Subgroup> targets;
  if (g->order() <= options.all_restrictions_up_to) {
    targets = every;
  } else if (nilpotent) {
    for (const auto& t : lower_central_series(g).terms) targets.push_back(t);
    for (const auto& t : chief_series(g).terms) {
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
  }
  std::vector<Subgroup> central;
  std::vector<Subgroup> noncentral;
  for (const auto& l : every) {
    if (is_central_elementary(l)) central.push_back(l);
    else if (is_elementary(l) && noncentral.size() < 4) noncentral.push_back(l);
  }

  for (std::size_t hi = 0; hi < hidden.size(); ++hi) {
    const Subgroup& h = hidden[hi];
    const double index = static_cast<double>(g->order() / h.order());
    if (g->order() <= 64) {
      const DensityMatrix rho = subgroup_state(h);
      const ComplexMatrix& m = rho.matrix();
      checks.record("subgroup-state-projector", (m * m - m / index).cwiseAbs().maxCoeff(), kSingleStepTolerance);
      checks.record("transversal-independence",
                    (m - subgroup_state(h, CosetChoice::greatest).matrix()).cwiseAbs().maxCoeff(),
                    kSingleStepTolerance);
      checks.record("subgroup-state-formula", (m - subgroup_density(h)).cwiseAbs().maxCoeff(), kSingleStepTolerance);
    }
    const PureState psi = standard_purification(h);
    checks.record("standard-purification", purification_error(psi, h), kSingleStepTolerance);
    checks.record("coset-gram", coset_gram_error(gram_of(psi, g), h), kSingleStepTolerance);
    {
      std::vector<Complex> amps = psi.amplitudes();
      const std::size_t cosets = psi.rest_dim();
      for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= std::polar(1.0, 0.7 * static_cast<double>(i % cosets));
      checks.record("coset-phase-invariance", purification_error(PureState(psi.registers(), std::move(amps)), h),
                    kSingleStepTolerance);
    }
    const std::size_t others = every.size() <= 32 ? every.size() : 8;
    for (std::size_t o = 1; o <= others && o < every.size(); ++o) {
      const Subgroup& other = every[(hi + o) % every.size()];
      if (other == h) continue;
      checks.record("wrong-subgroup-rejected", purification_error(psi, other), kSingleStepTolerance, true);
    }
    if (!nilpotent) continue;

    for (const Subgroup& l : targets) {
      const Restricted r = restrict_conversion(psi, l);
      const Subgroup inner = restrict_to(r.embedding, intersect(h, l));
      checks.record("restriction", purification_error(r.state, inner), kSingleStepTolerance);
      const RestrictedGram rg = restrict_conversion(gram_of(psi, g), l);
      checks.record("restriction-gram-agreement",
                    (rg.gram.gram - r.state.conditional_gram()).cwiseAbs().maxCoeff(), kSingleStepTolerance);
      if (h.contains(l) && is_normal(l)) {
        const Pushed p = push_conversion(psi, l);
        const Subgroup image = project_subgroup(p.quotient, h);
        checks.record("pushing", purification_error(p.state, image), kSingleStepTolerance);
        const PushedGram pg = push_conversion(gram_of(psi, g), l);
        checks.record("pushing-gram-agreement", (pg.gram.gram - p.state.conditional_gram()).cwiseAbs().maxCoeff(),
                      kSingleStepTolerance);
      }
    }
  }

  for (const Subgroup& l : central) {
    const ElementaryAbelianBasis basis(l);
    checks.record("fourier-isometry", fourier_isometry_error(basis), kSingleStepTolerance);
    checks.record("left-commutation", left_commutation_error(basis), kSingleStepTolerance);
    checks.record("right-commutation-central", right_commutation_error(basis), kSingleStepTolerance);
    checks.record("eigen-phase", eigen_phase_error(basis), kSingleStepTolerance);
    checks.record("trivial-label", trivial_label_error(basis), kSingleStepTolerance);
  }
  for (const Subgroup& l : noncentral) {
    checks.record("right-commutation-noncentral-detected", right_commutation_error(ElementaryAbelianBasis(l)),
                  kSingleStepTolerance, true);
  }

  std::size_t conversions = 0;
  for (const Subgroup& l : central) {
    const ElementaryAbelianBasis basis(l);
    const ZeroSumSelector selector = ZeroSumSelector::davenport(basis.modulus(), basis.rank());
    for (const Subgroup& h : hidden) {
      if (conversions >= options.max_conversions) break;
      ++conversions;
      const GramPurification start = standard_gram(h);
      const std::vector<GramPurification> copies(selector.length(), start);
      const ConversionResult conv = main_conversion(copies, l, selector, options.exec);
      const Subgroup hl = join(h, l);
      checks.record("main-conversion", purification_error(conv.gram, project_subgroup(conv.quotient, hl)),
                    kCompositeTolerance);
      checks.record("main-conversion-before-push", purification_error(conv.before_push, hl), kCompositeTolerance);
      checks.record("phase-cancellation", phase_cancellation_error(conv.before_push, l), kSingleStepTolerance);
      if (dense_conversion_size(h, l, selector.length()) <= kMaxAmplitudes) {
        const std::vector<PureState> dense_copies(selector.length(), standard_purification(h));
        const DenseConversionResult dense = main_conversion_dense(dense_copies, l, selector);
        checks.record("dense-conversion", purification_error(dense.pushed.state, project_subgroup(dense.pushed.quotient, hl)),
                      kCompositeTolerance);
        checks.record("dense-gram-agreement",
                      (dense.pushed.state.conditional_gram() - conv.gram.gram).cwiseAbs().maxCoeff(), kCompositeTolerance);
        checks.record("dense-phase-cancellation", phase_cancellation_error(dense.before_push, l), kSingleStepTolerance);
      }
    }
  }

  if (nilpotent && prime_factors(g->order()).size() == 1) {
    const Subgroup derived = derived_subgroup(Subgroup::whole(g));
    bool semi_elementary = derived.is_whole() ||
                           is_elementary_abelian_quotient(Subgroup::whole(g), derived);
    if (semi_elementary) {
      for (const Subgroup& h : hidden) {
        const IterationResult it = iterate_conversion(h, options.exec);
        checks.record("iterate-conversion", purification_error(it.gram, it.target), kCompositeTolerance);
        const ElementaryAbelianBasis basis(Subgroup::whole(it.gram.group));
        const auto measured = fourier_distribution(it.gram, basis);
        checks.record("iterate-fourier-tv", total_variation(measured, exact_fourier_distribution(it.target, basis)),
                      kCompositeTolerance);
        checks.record("iterate-recovery", annihilator_of_support(measured, basis) == it.target ? 0.0 : 1.0, 0.0);
      }
    }
  }
  return checks.take();
}

}  // namespace nilhsp
