#include "nilhsp/transversal.hpp"

#include <algorithm>
#include <stdexcept>

#include "nilhsp/errors.hpp"
#include "nilhsp/group_alg.hpp"

namespace nilhsp {

CosetTransversal::CosetTransversal(const Subgroup& l) : l_(l) {
  const GroupPtr& g = l.parent();
  const ChiefSeries chief = chief_series(g);
  for (const Subgroup& k : chief.terms) {
    Subgroup m = join(k, l);
    if (!chain_.empty() && chain_.back().order() == m.order()) continue;
    chain_.push_back(std::move(m));
  }
  if (chain_.back() != l) throw VerificationFailure("refined chain does not end at L");
  for (std::size_t i = 1; i < chain_.size(); ++i) {
    const Subgroup& upper = chain_[i - 1];
    const Subgroup& lower = chain_[i];
    auto it = std::find_if(upper.elements().begin(), upper.elements().end(), [&](Elem x) { return !lower.contains(x); });
    steps_.push_back(*it);
    primes_.push_back(static_cast<std::uint32_t>(upper.order() / lower.order()));
  }
  const std::size_t n = g->order();
  alpha_.resize(n);
  beta_.resize(n);
  for (Elem x = 0; x < n; ++x) {
    const auto gammas = digits(x);
    Elem a = g->identity();
    for (std::size_t i = 0; i < gammas.size(); ++i) a = g->mul(a, g->pow(steps_[i], gammas[i]));
    alpha_[x] = a;
    beta_[x] = g->mul(g->inv(a), x);
    if (!l_.contains(beta_[x])) throw VerificationFailure("beta(x) left L");
  }
  reps_ = alpha_;
  std::sort(reps_.begin(), reps_.end());
  reps_.erase(std::unique(reps_.begin(), reps_.end()), reps_.end());
  if (reps_.size() * l_.order() != n) throw VerificationFailure("transversal has the wrong size");
}

std::vector<std::uint32_t> CosetTransversal::digits(Elem x) const {
  const Group& g = group();
  g.check(x);
  std::vector<std::uint32_t> out;
  Elem y = x;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Elem step_inv = g.inv(steps_[i]);
    std::uint32_t gamma = 0;
    while (!chain_[i + 1].contains(y)) {
      y = g.mul(step_inv, y);
      if (++gamma >= primes_[i]) throw VerificationFailure("discrete logarithm search failed");
    }
    out.push_back(gamma);
  }
  return out;
}

QuotientMap make_quotient(const CosetTransversal& t) {
  const Subgroup& n = t.subgroup();
  if (!is_normal(n)) throw std::invalid_argument("quotient by a subgroup that is not normal");
  const GroupPtr& parent = n.parent();
  std::vector<Code> gens;
  for (Elem s : parent->generators()) gens.push_back({static_cast<std::int32_t>(t.alpha(s))});
  std::vector<Elem> alpha(parent->order());
  for (Elem x = 0; x < parent->order(); ++x) alpha[x] = t.alpha(x);
  auto product = [parent, alpha](const Code& a, const Code& b) {
    return Code{static_cast<std::int32_t>(alpha[parent->mul(a[0], b[0])])};
  };
  QuotientMap q;
  q.quotient = Group::from_codes(parent->name() + "/" + std::to_string(n.order()),
                                 {static_cast<std::int32_t>(parent->identity())}, std::move(gens), product);
  q.lift.resize(q.quotient->order());
  for (Elem c = 0; c < q.quotient->order(); ++c) q.lift[c] = static_cast<Elem>(q.quotient->code(c)[0]);
  q.project.resize(parent->order());
  for (Elem x = 0; x < parent->order(); ++x) q.project[x] = *q.quotient->find({static_cast<std::int32_t>(alpha[x])});
  if (q.quotient->order() * n.order() != parent->order()) throw VerificationFailure("quotient has the wrong order");
  return q;
}

SubgroupEmbedding embed(const Subgroup& s) {
  const GroupPtr& parent = s.parent();
  std::vector<Code> gens;
  for (Elem x : s.generators()) gens.push_back({static_cast<std::int32_t>(x)});
  auto product = [parent](const Code& a, const Code& b) {
    return Code{static_cast<std::int32_t>(parent->mul(a[0], b[0]))};
  };
  SubgroupEmbedding e;
  e.group = Group::from_codes(parent->name() + "|" + std::to_string(s.order()),
                              {static_cast<std::int32_t>(parent->identity())}, std::move(gens), product);
  e.to_parent.resize(e.group->order());
  e.from_parent.assign(parent->order(), kNotInSubgroup);
  for (Elem c = 0; c < e.group->order(); ++c) {
    e.to_parent[c] = static_cast<Elem>(e.group->code(c)[0]);
    e.from_parent[e.to_parent[c]] = c;
  }
  return e;
}

Subgroup restrict_to(const SubgroupEmbedding& e, const Subgroup& h) {
  std::vector<Elem> gens;
  for (Elem x : h.generators()) {
    if (e.from_parent.at(x) == kNotInSubgroup) throw std::invalid_argument("subgroup is not inside the embedded one");
    gens.push_back(e.from_parent[x]);
  }
  return Subgroup(e.group, std::move(gens));
}

Subgroup project_subgroup(const QuotientMap& q, const Subgroup& h) {
  std::vector<Elem> gens;
  for (Elem x : h.generators()) gens.push_back(q.project.at(x));
  return generated(q.quotient, gens);
}

}  // namespace nilhsp
