#include "nilhsp/group.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "nilhsp/errors.hpp"

namespace nilhsp {

namespace {

constexpr std::size_t kFullTableLimit = 1024;

}  // namespace

std::size_t CodeHash::operator()(const Code& c) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (std::int32_t x : c) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

GroupPtr Group::from_table(std::string name, std::vector<std::vector<Elem>> table, std::vector<Elem> generators) {
  const std::size_t k = table.size();
  if (k == 0) throw std::invalid_argument("empty multiplication table");
  if (k > kMaxOrder) throw BudgetExceeded("table order exceeds enumeration cap");
  std::shared_ptr<Group> g(new Group());
  g->name_ = std::move(name);
  g->order_ = k;
  g->table_.resize(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    if (table[a].size() != k) throw std::invalid_argument("table row " + std::to_string(a) + " has wrong length");
    std::vector<bool> seen(k);
    for (std::size_t b = 0; b < k; ++b) {
      const Elem v = table[a][b];
      if (v >= k) throw std::invalid_argument("table entry out of range");
      if (seen[v]) throw std::invalid_argument("table row " + std::to_string(a) + " repeats an entry");
      seen[v] = true;
      g->table_[a * k + b] = v;
    }
  }
  std::optional<Elem> e;
  for (Elem a = 0; a < k && !e; ++a) {
    bool left = true, right = true;
    for (Elem b = 0; b < k; ++b) {
      left = left && table[a][b] == b;
      right = right && table[b][a] == b;
    }
    if (left && right) e = a;
  }
  if (!e) throw std::invalid_argument("table has no two-sided identity");
  g->identity_ = *e;
  for (Elem x : generators) {
    if (x >= k) throw std::invalid_argument("generator out of range");
  }
  g->generators_ = std::move(generators);
  // Light's test: (a b) s = a (b s) for all a, b and generators s suffices
  // once the generators generate.
  for (Elem s : g->generators_) {
    for (Elem a = 0; a < k; ++a) {
      for (Elem b = 0; b < k; ++b) {
        if (table[table[a][b]][s] != table[a][table[b][s]]) throw std::invalid_argument("table is not associative");
      }
    }
  }
  if (closure(*g, g->generators_).size() != k) throw std::invalid_argument("generators do not generate the table");
  g->inverse_.resize(k);
  for (Elem a = 0; a < k; ++a) {
    for (Elem b = 0; b < k; ++b) {
      if (table[a][b] == *e) {
        if (table[b][a] != *e) throw std::invalid_argument("left and right inverses differ");
        g->inverse_[a] = b;
        break;
      }
    }
  }
  return g;
}

GroupPtr Group::from_codes(std::string name, Code identity, std::vector<Code> generators, CodeProduct product) {
  std::shared_ptr<Group> g(new Group());
  g->name_ = std::move(name);
  g->product_ = std::move(product);
  g->codes_.push_back(identity);
  g->index_.emplace(std::move(identity), 0);
  for (std::size_t head = 0; head < g->codes_.size(); ++head) {
    for (const Code& s : generators) {
      Code next = g->product_(g->codes_[head], s);
      if (g->index_.count(next)) continue;
      if (g->codes_.size() >= kMaxOrder) throw BudgetExceeded("group order exceeds enumeration cap");
      g->index_.emplace(next, static_cast<Elem>(g->codes_.size()));
      g->codes_.push_back(std::move(next));
    }
  }
  g->order_ = g->codes_.size();
  g->identity_ = 0;
  for (const Code& s : generators) g->generators_.push_back(g->index_.at(s));
  if (g->order_ <= kFullTableLimit) {
    const std::size_t k = g->order_;
    g->table_.resize(k * k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        auto it = g->index_.find(g->product_(g->codes_[a], g->codes_[b]));
        if (it == g->index_.end()) throw std::invalid_argument("code product leaves the enumerated set");
        g->table_[a * k + b] = it->second;
      }
    }
  }
  g->finish_inverses();
  return g;
}

void Group::finish_inverses() {
  inverse_.assign(order_, identity_);
  std::vector<bool> done(order_);
  for (Elem a = 0; a < order_; ++a) {
    if (done[a]) continue;
    // Walk the cyclic subgroup of a; a^k and a^(m-k) are mutual inverses.
    std::vector<Elem> powers{identity_};
    for (Elem x = a; x != identity_; x = mul(x, a)) powers.push_back(x);
    const std::size_t m = powers.size();
    for (std::size_t k = 0; k < m; ++k) {
      inverse_[powers[k]] = powers[(m - k) % m];
      done[powers[k]] = true;
    }
  }
}

void Group::check(Elem a) const {
  if (a >= order_) throw std::out_of_range("element id " + std::to_string(a) + " not in " + name_);
}

Elem Group::mul(Elem a, Elem b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
  check(a);
  check(b);
  return index_.at(product_(codes_[a], codes_[b]));
}

Elem Group::inv(Elem a) const {
  check(a);
  return inverse_[a];
}

Elem Group::pow(Elem a, std::uint64_t e) const {
  Elem result = identity_, base = a;
  for (; e > 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

std::uint64_t Group::element_order(Elem a) const {
  check(a);
  std::uint64_t m = order_;
  for (std::uint64_t q : prime_factors(order_)) {
    while (m % q == 0 && pow(a, m / q) == identity_) m /= q;
  }
  return m;
}

const Code& Group::code(Elem a) const {
  if (codes_.empty()) throw std::logic_error(name_ + " has no element codes");
  check(a);
  return codes_[a];
}

std::optional<Elem> Group::find(const Code& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Group::label(Elem a) const {
  check(a);
  if (codes_.empty()) return std::to_string(a);
  std::string out = "(";
  for (std::size_t i = 0; i < codes_[a].size(); ++i) {
    if (i) out += ',';
    out += std::to_string(codes_[a][i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

std::vector<Elem> closure(const Group& g, std::span<const Elem> generators) {
  if (g.order() > kMaxOrder) throw BudgetExceeded("closure over a group above the enumeration cap");
  for (Elem s : generators) g.check(s);
  std::vector<bool> seen(g.order());
  std::vector<Elem> out{g.identity()};
  seen[g.identity()] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Elem s : generators) {
      const Elem next = g.mul(out[head], s);
      if (seen[next]) continue;
      seen[next] = true;
      out.push_back(next);
    }
  }
  return out;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Elem> generators)
    : parent_(std::move(parent)), generators_(std::move(generators)) {
  if (!parent_) throw std::invalid_argument("subgroup without a parent group");
  elements_ = closure(*parent_, generators_);
  std::sort(elements_.begin(), elements_.end());
  member_.assign(parent_->order(), false);
  for (Elem a : elements_) member_[a] = true;
  if (parent_->order() % elements_.size() != 0) throw VerificationFailure("subgroup order does not divide group order");
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<Elem> gens(parent->generators().begin(), parent->generators().end());
  return Subgroup(std::move(parent), std::move(gens));
}

bool Subgroup::contains(const Subgroup& other) const {
  if (other.parent_ != parent_) throw std::invalid_argument("subgroups of different groups");
  if (other.order() > order()) return false;
  return std::all_of(other.elements_.begin(), other.elements_.end(), [&](Elem a) { return member_[a]; });
}

bool operator==(const Subgroup& a, const Subgroup& b) {
  return a.parent_ == b.parent_ && a.elements_ == b.elements_;
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (a.parent() != b.parent()) throw std::invalid_argument("join of subgroups of different groups");
  std::vector<Elem> gens(a.generators().begin(), a.generators().end());
  bool grew = false;
  for (Elem x : b.generators()) {
    if (a.contains(x)) continue;
    gens.push_back(x);
    grew = true;
  }
  if (!grew) return a;
  return generated(a.parent(), gens);
}

Subgroup adjoin(const Subgroup& a, Elem x) {
  if (a.contains(x)) return a;
  std::vector<Elem> gens(a.generators().begin(), a.generators().end());
  gens.push_back(x);
  return Subgroup(a.parent(), std::move(gens));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (a.parent() != b.parent()) throw std::invalid_argument("intersection of subgroups of different groups");
  std::vector<Elem> common;
  for (Elem x : a.elements()) {
    if (b.contains(x)) common.push_back(x);
  }
  return generated(a.parent(), common);
}

Subgroup product(const Subgroup& a, const Subgroup& b) {
  const Subgroup j = join(a, b);
  if (j.order() * intersect(a, b).order() != a.order() * b.order()) {
    throw std::invalid_argument("product set of these subgroups is not a subgroup");
  }
  return j;
}

Subgroup generated(GroupPtr parent, std::span<const Elem> candidates) {
  Subgroup current = Subgroup::trivial(parent);
  for (Elem x : candidates) {
    if (!current.contains(x)) current = adjoin(current, x);
  }
  return current;
}

std::string describe(const Subgroup& s) {
  std::ostringstream out;
  out << '<';
  for (std::size_t i = 0; i < s.generators().size(); ++i) {
    if (i) out << ", ";
    out << s.group().label(s.generators()[i]);
  }
  out << "> order " << s.order();
  return out.str();
}

}  // namespace nilhsp
