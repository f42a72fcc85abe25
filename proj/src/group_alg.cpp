#include "nilhsp/group_alg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "nilhsp/errors.hpp"
#include "nilhsp/zpvec.hpp"

namespace nilhsp {

bool normalizes(const Subgroup& by, const Subgroup& sub) {
  const Group& g = sub.group();
  for (Elem x : by.generators()) {
    for (Elem n : sub.generators()) {
      if (!sub.contains(g.conjugate(x, n))) return false;
    }
  }
  return true;
}

bool is_normal(const Subgroup& sub) { return normalizes(Subgroup::whole(sub.parent()), sub); }

bool is_normal_in(const Subgroup& sub, const Subgroup& ambient) {
  return ambient.contains(sub) && normalizes(ambient, sub);
}

Subgroup normal_closure(const Subgroup& sub, const Subgroup& ambient) {
  Subgroup current = sub;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Elem x : ambient.generators()) {
      for (Elem n : std::vector<Elem>(current.generators().begin(), current.generators().end())) {
        const Elem c = current.group().conjugate(x, n);
        if (current.contains(c)) continue;
        current = adjoin(current, c);
        grew = true;
      }
    }
  }
  return current;
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& n) {
  if (!normalizes(a, n)) throw std::invalid_argument("commutator subgroup needs N normalized by A");
  const Group& g = a.group();
  std::vector<Elem> comms;
  for (Elem x : a.generators()) {
    for (Elem y : n.generators()) comms.push_back(g.commutator(x, y));
  }
  // Generator commutators generate [A, N] up to normal closure in <A, N>.
  return normal_closure(generated(a.parent(), comms), join(a, n));
}

Subgroup derived_subgroup(const Subgroup& k) { return commutator_subgroup(k, k); }

CentralSeries lower_central_series(const GroupPtr& g) {
  CentralSeries series;
  series.terms.push_back(Subgroup::whole(g));
  const Subgroup whole = series.terms.front();
  while (!series.terms.back().is_trivial()) {
    Subgroup next = commutator_subgroup(whole, series.terms.back());
    if (next.order() == series.terms.back().order()) {
      throw NotNilpotent(g->name() + " is not nilpotent: lower central series stalls at order " +
                         std::to_string(next.order()));
    }
    series.terms.push_back(std::move(next));
  }
  return series;
}

std::size_t nilpotency_class(const GroupPtr& g) { return lower_central_series(g).nilpotency_class(); }

bool is_nilpotent(const GroupPtr& g) {
  try {
    lower_central_series(g);
    return true;
  } catch (const NotNilpotent&) {
    return false;
  }
}

ChiefSeries chief_series(const GroupPtr& g) {
  const CentralSeries lcs = lower_central_series(g);
  ChiefSeries out;
  out.terms.push_back(lcs.terms.front());
  // Walk each central factor G_i / G_{i+1} from the bottom: every subgroup
  // between G_{i+1} and G_i is normal in G because the factor is central.
  for (std::size_t i = 0; i + 1 < lcs.terms.size(); ++i) {
    const Subgroup& upper = lcs.terms[i];
    std::vector<Subgroup> ladder{lcs.terms[i + 1]};
    while (ladder.back().order() != upper.order()) {
      const Subgroup& cur = ladder.back();
      for (Elem x : upper.elements()) {
        if (cur.contains(x)) continue;
        const std::uint64_t o = g->element_order(x);
        // Prime order modulo cur: x^q in cur for a prime q.
        bool found = false;
        for (std::uint64_t q : prime_factors(o)) {
          if (!cur.contains(g->pow(x, q))) continue;
          ladder.push_back(adjoin(cur, x));
          found = true;
          break;
        }
        if (found) break;
      }
    }
    for (std::size_t j = ladder.size() - 1; j-- > 0;) out.terms.push_back(ladder[j]);
  }
  for (std::size_t i = 1; i < out.terms.size(); ++i) {
    const std::size_t index = out.terms[i - 1].order() / out.terms[i].order();
    if (!is_prime(index) || !is_normal(out.terms[i])) throw VerificationFailure("chief series step is not prime normal");
    out.primes.push_back(static_cast<std::uint32_t>(index));
  }
  return out;
}

Subgroup sylow(const Subgroup& k, std::uint32_t p) {
  if (!is_prime(p) || k.order() % p != 0) {
    throw std::invalid_argument(std::to_string(p) + " does not divide the order " + std::to_string(k.order()));
  }
  const Group& g = k.group();
  std::vector<Elem> gens;
  for (Elem x : k.generators()) {
    std::uint64_t o = g.element_order(x);
    while (o % p == 0) o /= p;
    gens.push_back(g.pow(x, o));
  }
  Subgroup out = generated(k.parent(), gens);
  std::uint64_t part = 1;
  for (std::uint64_t m = k.order(); m % p == 0; m /= p) part *= p;
  if (out.order() != part) throw NotNilpotent("Sylow subgroup from generator powers has the wrong order");
  return out;
}

Subgroup sylow(const GroupPtr& g, std::uint32_t p) { return sylow(Subgroup::whole(g), p); }

Subgroup normalizer(const Subgroup& ambient, const Subgroup& h) {
  std::vector<Elem> members;
  for (Elem x : ambient.elements()) {
    bool ok = true;
    for (Elem n : h.generators()) {
      if (!h.contains(h.group().conjugate(x, n))) {
        ok = false;
        break;
      }
    }
    if (ok) members.push_back(x);
  }
  return generated(ambient.parent(), members);
}

Subgroup center(const GroupPtr& g) {
  std::vector<Elem> members;
  for (Elem x = 0; x < g->order(); ++x) {
    bool central = true;
    for (Elem s : g->generators()) central = central && g->mul(x, s) == g->mul(s, x);
    if (central) members.push_back(x);
  }
  return generated(g, members);
}

bool is_elementary_abelian_quotient(const Subgroup& k, const Subgroup& b, std::uint32_t p) {
  const Group& g = k.group();
  for (Elem x : k.generators()) {
    if (!b.contains(g.pow(x, p))) return false;
    for (Elem y : k.generators()) {
      if (!b.contains(g.commutator(x, y))) return false;
    }
  }
  return true;
}

bool is_elementary_abelian_quotient(const Subgroup& k, const Subgroup& b) {
  const std::size_t index = k.order() / b.order();
  if (index == 1) return true;
  const auto primes = prime_factors(index);
  if (primes.size() != 1) return false;
  return is_elementary_abelian_quotient(k, b, static_cast<std::uint32_t>(primes.front()));
}

Subgroup elementary_quotient_reducer(const Subgroup& k, const Subgroup& b, std::uint32_t p) {
  if (!is_normal_in(b, k)) throw std::invalid_argument("reducer needs B normal in K");
  const Group& g = k.group();
  Subgroup l = b;
  for (Elem x : k.generators()) {
    // Least a >= 1 with x^(p^a) in B; adjoin x^(p^(a-1)).
    Elem prev = x;
    Elem cur = g.pow(x, p);
    while (!b.contains(cur)) {
      prev = cur;
      cur = g.pow(cur, p);
    }
    l = adjoin(l, prev);
  }
  // The generator powers need not reach every order-p coset when the
  // generating set is not a basis of K/B.
  for (Elem x : k.elements()) {
    if (!l.contains(x) && b.contains(g.pow(x, p))) l = adjoin(l, x);
  }
  return l;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  if (g->order() > 4096) throw BudgetExceeded("subgroup lattice enumeration is limited to order 4096");
  std::map<std::vector<Elem>, std::size_t> seen;
  std::vector<Subgroup> found;
  auto record = [&](Subgroup s) {
    std::vector<Elem> key(s.elements().begin(), s.elements().end());
    if (seen.emplace(std::move(key), found.size()).second) found.push_back(std::move(s));
  };
  // Cyclic subgroups first; every subgroup is a join of cyclic ones.
  std::vector<Elem> cyclic_gens;
  {
    for (Elem x = 0; x < g->order(); ++x) {
      Subgroup c(g, {x});
      std::vector<Elem> key(c.elements().begin(), c.elements().end());
      if (seen.count(key)) continue;
      cyclic_gens.push_back(x);
      record(std::move(c));
    }
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Elem x : cyclic_gens) {
      if (found[i].contains(x)) continue;
      record(adjoin(found[i], x));
    }
  }
  std::vector<Subgroup> out;
  std::vector<std::pair<std::vector<Elem>, std::size_t>> order_key;
  for (const auto& [elems, idx] : seen) order_key.emplace_back(elems, idx);
  std::stable_sort(order_key.begin(), order_key.end(),
                   [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
  for (const auto& [elems, idx] : order_key) out.push_back(found[idx]);
  return out;
}

}  // namespace nilhsp
