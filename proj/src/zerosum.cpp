#include "nilhsp/zerosum.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "nilhsp/errors.hpp"

namespace nilhsp {

// ---------------------------------------------------------------------------
// Signed subsets

SignedSubset::SignedSubset(std::vector<SignedEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const SignedEntry& a, const SignedEntry& b) { return a.index < b.index; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].sign != 1 && entries_[i].sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    if (i > 0 && entries_[i - 1].index == entries_[i].index) {
      throw std::invalid_argument("index " + std::to_string(entries_[i].index) + " appears twice");
    }
  }
}

int SignedSubset::sign_of(Index index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const SignedEntry& e, Index i) { return e.index < i; });
  return it != entries_.end() && it->index == index ? it->sign : 0;
}

bool SignedSubset::disjoint_from(const SignedSubset& other) const {
  auto a = entries_.begin(), b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->index == b->index) return false;
    if (a->index < b->index) ++a;
    else ++b;
  }
  return true;
}

ZpVec signed_sum(const VecSequence& seq, const SignedSubset& subset) {
  const PrimeModulus p = seq.modulus();
  std::vector<Residue> acc(seq.dim(), 0);
  for (const SignedEntry& e : subset.entries()) {
    if (e.index >= seq.size()) throw std::out_of_range("signed subset index outside sequence");
    auto r = seq.row(e.index);
    if (e.sign > 0) {
      for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = p.add(acc[c], r[c]);
    } else {
      for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = p.sub(acc[c], r[c]);
    }
  }
  return ZpVec(p, std::move(acc));
}

SignedSubsetSum::SignedSubsetSum(const VecSequence& seq, SignedSubset subset)
    : subset_(std::move(subset)), value_(signed_sum(seq, subset_)) {}

SignedSubsetSum::SignedSubsetSum(const VecSequence& seq, SignedSubset subset, const ZpVec& claimed)
    : SignedSubsetSum(seq, std::move(subset)) {
  if (value_ != claimed) throw VerificationFailure("signed subset sum disagrees with its claimed value");
}

StandardRelation::StandardRelation(const VecSequence& seq, std::vector<SignedSubsetSum> parts)
    : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("standard relation needs a coefficient bound >= 1");
  const PrimeModulus p = seq.modulus();
  std::vector<Index> all;
  std::vector<Residue> total(seq.dim(), 0);
  bool any = false;
  for (std::size_t c = 0; c < parts_.size(); ++c) {
    const auto& part = parts_[c];
    if (part.value().dim() != seq.dim()) throw std::invalid_argument("part dimension mismatch");
    any = any || !part.subset().empty();
    for (const auto& e : part.subset().entries()) all.push_back(e.index);
    const Residue coef = p.reduce(c + 1);
    for (std::size_t k = 0; k < total.size(); ++k) total[k] = p.add(total[k], p.mul(coef, part.value()[k]));
  }
  if (!any) throw VerificationFailure("standard relation with all parts empty");
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw VerificationFailure("standard relation parts are not disjoint");
  }
  for (Residue r : total) {
    if (r != 0) throw VerificationFailure("standard relation does not sum to zero");
  }
}

ZeroSumCertificate::ZeroSumCertificate(std::vector<Index> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw std::invalid_argument("empty certificate");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw std::invalid_argument("certificate indices must be distinct");
  }
}

ZpVec certificate_sum(const VecSequence& seq, const ZeroSumCertificate& cert) {
  const PrimeModulus p = seq.modulus();
  std::vector<Residue> acc(seq.dim(), 0);
  for (Index i : cert.indices()) {
    if (i >= seq.size()) throw std::out_of_range("certificate index outside sequence");
    auto r = seq.row(i);
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = p.add(acc[c], r[c]);
  }
  return ZpVec(p, std::move(acc));
}

bool verify_certificate(const VecSequence& seq, const ZeroSumCertificate& cert) {
  auto idx = cert.indices();
  if (idx.empty()) return false;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= seq.size()) return false;
    if (i > 0 && idx[i - 1] >= idx[i]) return false;
  }
  return certificate_sum(seq, cert).is_zero();
}

bool verify_signed_zero(const VecSequence& seq, const SignedSubset& subset) {
  if (subset.empty()) return false;
  for (const auto& e : subset.entries()) {
    if (e.index >= seq.size()) return false;
  }
  return signed_sum(seq, subset).is_zero();
}

// ---------------------------------------------------------------------------
// Elimination and standard form

LinearRelation linear_relation(const VecSequence& seq) {
  const PrimeModulus p = seq.modulus();
  const std::uint32_t q = p.value();
  const std::size_t n = seq.dim();
  const std::size_t count = n + 1;
  if (seq.size() < count) throw SequenceTooShort(count, seq.size());
  // Division-free remainder for 32-bit operands (Lemire's fastmod).
  const std::uint64_t magic = ~std::uint64_t{0} / q + 1;
  auto mod = [q, magic](std::uint32_t x) {
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(magic * x) * q) >> 64);
  };

  // Each row holds the reduced vector followed by its combination of inputs.
  const std::size_t width = n + count;
  std::vector<std::uint32_t> rows(count * width, 0);
  std::vector<std::size_t> pivots;
  pivots.reserve(n);
  for (std::size_t j = 0; j < count; ++j) {
    std::uint32_t* row = rows.data() + j * width;
    auto r = seq.row(j);
    std::copy(r.begin(), r.end(), row);
    row[n + j] = 1;
    for (std::size_t b = 0; b < pivots.size(); ++b) {
      const std::uint32_t c = row[pivots[b]];
      if (c == 0) continue;
      const std::uint32_t neg = q - c;
      const std::uint32_t* br = rows.data() + b * width;
      for (std::size_t k = 0; k < width; ++k) row[k] = mod(row[k] + neg * br[k]);
    }
    std::size_t pivot = 0;
    while (pivot < n && row[pivot] == 0) ++pivot;
    if (pivot == n) {
      LinearRelation rel;
      std::uint32_t norm = 0;
      for (std::size_t k = 0; k < count; ++k) {
        const std::uint32_t c = row[n + k];
        if (c == 0) continue;
        if (norm == 0) norm = p.inverse(static_cast<Residue>(c));
        rel.push_back({static_cast<Index>(k), static_cast<Residue>(norm * c % q)});
      }
      return rel;
    }
    const std::uint32_t inv = p.inverse(static_cast<Residue>(row[pivot]));
    for (std::size_t k = 0; k < width; ++k) row[k] = mod(row[k] * inv);
    pivots.push_back(pivot);
  }
  // n+1 vectors in an n-dimensional space are always dependent.
  throw VerificationFailure("elimination found no dependency among n+1 vectors");
}

StandardRelation to_standard(const LinearRelation& relation, const VecSequence& seq) {
  const PrimeModulus p = seq.modulus();
  if (p.value() == 2) throw std::invalid_argument("standard relations need an odd prime");
  const std::uint32_t half = (p.value() - 1) / 2;
  std::vector<std::vector<SignedEntry>> buckets(half);
  for (const RelationTerm& t : relation) {
    if (t.coefficient == 0 || t.coefficient >= p.value()) throw std::invalid_argument("bad relation coefficient");
    if (t.coefficient <= half) buckets[t.coefficient - 1].push_back({t.index, +1});
    else buckets[p.value() - t.coefficient - 1].push_back({t.index, -1});
  }
  std::vector<SignedSubsetSum> parts;
  parts.reserve(half);
  for (auto& b : buckets) parts.emplace_back(seq, SignedSubset(std::move(b)));
  return StandardRelation(seq, std::move(parts));
}

// ---------------------------------------------------------------------------
// Halving

namespace {

std::size_t narrow_count(WideCount value) {
  if (value > std::numeric_limits<std::uint32_t>::max()) throw BudgetExceeded("sequence length exceeds 2^32");
  return static_cast<std::size_t>(value);
}

SignedSubset shifted(const SignedSubset& s, Index offset) {
  std::vector<SignedEntry> out(s.entries().begin(), s.entries().end());
  for (auto& e : out) e.index += offset;
  return SignedSubset(std::move(out));
}

std::vector<SignedSubsetSum> empty_parts(const VecSequence& seq, std::size_t count) {
  std::vector<SignedSubsetSum> parts;
  parts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) parts.emplace_back(seq, SignedSubset{});
  return parts;
}

void accumulate(std::vector<Residue>& acc, const ZpVec& v, int sign, PrimeModulus p) {
  for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = sign > 0 ? p.add(acc[c], v[c]) : p.sub(acc[c], v[c]);
}

}  // namespace

HalveResult halve(const StandardSolver& inner, const VecSequence& seq, const HalveOptions& options) {
  const std::uint32_t d = inner.bound;
  if (d < 2) throw std::invalid_argument("halving needs a coefficient bound of at least 2");
  const std::uint32_t low = d / 2;
  const std::uint32_t high = d - low;
  const PrimeModulus p = seq.modulus();
  const std::size_t m = seq.dim();
  const std::size_t block = narrow_count(inner.length(m));
  const std::size_t blocks = narrow_count(inner.length(std::uint64_t{high} * m));
  if (seq.size() != block * blocks) {
    throw std::invalid_argument("halve needs exactly " + std::to_string(block * blocks) + " vectors, got " +
                                std::to_string(seq.size()));
  }

  // Inner relations, one per consecutive block, stored in block order.
  std::vector<std::optional<StandardRelation>> inner_rel(blocks);
  detail::for_each_index(blocks, options.exec, [&](std::size_t k) {
    inner_rel[k].emplace(inner.solve(seq.slice(k * block, block)));
    if (inner_rel[k]->bound() != d) throw VerificationFailure("inner solver returned the wrong bound");
  });

  if (options.inner_zero_shortcut) {
    for (std::size_t k = 0; k < blocks; ++k) {
      for (const auto& part : inner_rel[k]->parts()) {
        if (part.subset().empty() || !part.value().is_zero()) continue;
        auto parts = empty_parts(seq, low);
        parts[0] = SignedSubsetSum(seq, shifted(part.subset(), static_cast<Index>(k * block)), part.value());
        return {StandardRelation(seq, std::move(parts)), HalveBranch::inner_zero_part};
      }
    }
  }

  // u_k: concatenation of the values of parts low+1..d of block k.
  VecSequence upper(p, std::size_t{high} * m);
  upper.reserve(blocks);
  for (std::size_t k = 0; k < blocks; ++k) {
    std::vector<ZpVec> pieces;
    for (std::uint32_t j = low + 1; j <= d; ++j) pieces.push_back(inner_rel[k]->part(j).value());
    upper.push_back(concat(pieces));
  }
  const StandardRelation outer = inner.solve(upper);
  if (outer.bound() != d) throw VerificationFailure("inner solver returned the wrong bound");

  // w_ij joins the j-th parts of the blocks according to outer part i.
  std::vector<std::optional<SignedSubsetSum>> w(std::size_t{d} * d);
  auto w_at = [&](std::uint32_t i, std::uint32_t j) -> const SignedSubsetSum& { return *w[(i - 1) * d + (j - 1)]; };
  for (std::uint32_t i = 1; i <= d; ++i) {
    for (std::uint32_t j = 1; j <= d; ++j) {
      std::vector<SignedEntry> entries;
      std::vector<Residue> claimed(m, 0);
      for (const SignedEntry& outer_e : outer.part(i).subset().entries()) {
        const auto& u = inner_rel[outer_e.index]->part(j);
        const Index offset = static_cast<Index>(outer_e.index * block);
        for (const SignedEntry& e : u.subset().entries()) {
          entries.push_back({e.index + offset, static_cast<std::int8_t>(e.sign * outer_e.sign)});
        }
        accumulate(claimed, u.value(), outer_e.sign, p);
      }
      w[(i - 1) * d + (j - 1)].emplace(seq, SignedSubset(std::move(entries)), ZpVec(p, std::move(claimed)));
    }
  }

  // Column relations (j > low) minus row relations (i > low):
  // coefficient i for i <= low < j, -j for j <= low < i, i-j for i, j > low.
  auto coefficient = [&](std::uint32_t i, std::uint32_t j) -> int {
    if (i <= low && j > low) return static_cast<int>(i);
    if (i > low && j <= low) return -static_cast<int>(j);
    if (i > low && j > low) return static_cast<int>(i) - static_cast<int>(j);
    return 0;
  };
  std::vector<std::vector<SignedEntry>> joined(low);
  std::vector<std::vector<Residue>> joined_value(low, std::vector<Residue>(m, 0));
  bool any = false;
  for (std::uint32_t i = 1; i <= d; ++i) {
    for (std::uint32_t j = 1; j <= d; ++j) {
      const int c = coefficient(i, j);
      if (c == 0) continue;
      const auto& wij = w_at(i, j);
      if (wij.subset().empty()) continue;
      any = true;
      const int sign = c > 0 ? 1 : -1;
      const std::size_t slot = static_cast<std::size_t>(c > 0 ? c : -c) - 1;
      for (const SignedEntry& e : wij.subset().entries()) {
        joined[slot].push_back({e.index, static_cast<std::int8_t>(e.sign * sign)});
      }
      accumulate(joined_value[slot], wij.value(), sign, p);
    }
  }
  if (any) {
    std::vector<SignedSubsetSum> parts;
    for (std::uint32_t c = 0; c < low; ++c) {
      parts.emplace_back(seq, SignedSubset(std::move(joined[c])), ZpVec(p, std::move(joined_value[c])));
    }
    return {StandardRelation(seq, std::move(parts)), HalveBranch::combined};
  }

  // Every off-diagonal w_ij with max(i, j) > low is empty. A non-empty w_ii
  // with i > low is alone in its column relation, so it sums to zero.
  for (std::uint32_t i = low + 1; i <= d; ++i) {
    if (w_at(i, i).subset().empty()) continue;
    auto parts = empty_parts(seq, low);
    parts[0] = w_at(i, i);
    return {StandardRelation(seq, std::move(parts)), HalveBranch::diagonal_part};
  }

  // Remaining: the rows i <= low give sum_{j <= low} j w_ij = 0; join over i.
  std::vector<SignedSubsetSum> parts;
  for (std::uint32_t j = 1; j <= low; ++j) {
    std::vector<SignedEntry> entries;
    std::vector<Residue> value(m, 0);
    for (std::uint32_t i = 1; i <= low; ++i) {
      const auto& wij = w_at(i, j);
      entries.insert(entries.end(), wij.subset().entries().begin(), wij.subset().entries().end());
      accumulate(value, wij.value(), 1, p);
    }
    parts.emplace_back(seq, SignedSubset(std::move(entries)), ZpVec(p, std::move(value)));
  }
  return {StandardRelation(seq, std::move(parts)), HalveBranch::lower_block};
}

StandardSolver base_solver(PrimeModulus p) {
  if (p.value() == 2) throw std::invalid_argument("standard relations need an odd prime");
  StandardSolver s;
  s.bound = (p.value() - 1) / 2;
  s.length = [](std::uint64_t dim) { return WideCount{dim} + 1; };
  s.solve = [](const VecSequence& seq) { return to_standard(linear_relation(seq), seq); };
  return s;
}

StandardSolver halving_solver(StandardSolver inner, HalveOptions options) {
  StandardSolver s;
  s.bound = inner.bound / 2;
  const std::uint64_t widen = (inner.bound + 1) / 2;
  s.length = [len = inner.length, widen](std::uint64_t dim) { return len(dim) * len(widen * dim); };
  s.solve = [inner = std::move(inner), options](const VecSequence& seq) {
    return halve(inner, seq, options).relation;
  };
  return s;
}

StandardSolver signed_solver(PrimeModulus p, Execution exec) {
  const LengthSchedule schedule(p);
  StandardSolver s = base_solver(p);
  for (std::size_t level = 0; level < schedule.levels(); ++level) {
    s = halving_solver(std::move(s), HalveOptions{true, exec});
  }
  return s;
}

SignedSubset find_signed_zero(const VecSequence& seq, Execution exec) {
  const PrimeModulus p = seq.modulus();
  if (p.value() == 2) throw std::invalid_argument("find_signed_zero needs an odd prime");
  const std::size_t need = narrow_count(required_signed_length(p, seq.dim()));
  if (seq.size() < need) throw SequenceTooShort(need, seq.size());
  const StandardSolver solver = signed_solver(p, exec);
  const VecSequence prefix = seq.size() == need ? seq : seq.prefix(need);
  SignedSubset result = solver.solve(prefix).part(1).subset();
  if (!verify_signed_zero(seq, result)) throw VerificationFailure("signed solver output does not sum to zero");
  return result;
}

// ---------------------------------------------------------------------------
// Collision doubling

namespace {

struct CollisionNode {
  std::vector<std::vector<Index>> sets;  // pairwise disjoint, common sum
  ZpVec sum;
};

}  // namespace

ZeroSumCertificate double_collisions(const VecSequence& seq, Execution exec) {
  const PrimeModulus p = seq.modulus();
  if (p.value() == 2) throw std::invalid_argument("double_collisions needs an odd prime");
  const std::size_t width = narrow_count(required_signed_length(p, seq.dim()));
  const std::size_t need = narrow_count(required_length(p, seq.dim()));
  if (seq.size() < need) throw SequenceTooShort(need, seq.size());
  const unsigned levels = collision_levels(p);

  std::vector<std::optional<CollisionNode>> nodes(need / width);
  {
    const StandardSolver solver = signed_solver(p, nodes.size() == 1 ? exec : Execution::serial);
    detail::for_each_index(nodes.size(), exec, [&](std::size_t b) {
      const Index offset = static_cast<Index>(b * width);
      const VecSequence blk = seq.slice(b * width, width);
      const SignedSubsetSum found = solver.solve(blk).part(1);
      std::vector<Index> plus, minus;
      for (const auto& e : found.subset().entries()) (e.sign > 0 ? plus : minus).push_back(e.index + offset);
      std::vector<Residue> sum(seq.dim(), 0);
      for (Index i : plus) accumulate(sum, seq.at(i), 1, p);
      nodes[b].emplace(CollisionNode{{std::move(plus), std::move(minus)}, ZpVec(p, std::move(sum))});
    });
  }

  for (unsigned level = 1; level < levels; ++level) {
    std::vector<std::optional<CollisionNode>> next(nodes.size() / width);
    const StandardSolver solver = signed_solver(p, next.size() == 1 ? exec : Execution::serial);
    detail::for_each_index(next.size(), exec, [&](std::size_t b) {
      VecSequence sums(p, seq.dim());
      sums.reserve(width);
      for (std::size_t i = 0; i < width; ++i) sums.push_back(nodes[b * width + i]->sum);
      const SignedSubset found = solver.solve(sums).part(1).subset();
      const std::size_t old_sets = nodes[b * width]->sets.size();
      CollisionNode merged{std::vector<std::vector<Index>>(2 * old_sets), ZpVec::zero(p, seq.dim())};
      std::vector<Residue> sum(seq.dim(), 0);
      // Children cover increasing index ranges, so concatenation keeps sets sorted.
      for (const auto& e : found.entries()) {
        const CollisionNode& child = *nodes[b * width + e.index];
        const std::size_t base = e.sign > 0 ? 0 : old_sets;
        for (std::size_t s = 0; s < old_sets; ++s) {
          auto& dst = merged.sets[base + s];
          dst.insert(dst.end(), child.sets[s].begin(), child.sets[s].end());
        }
        if (e.sign > 0) accumulate(sum, child.sum, 1, p);
      }
      merged.sum = ZpVec(p, std::move(sum));
      next[b].emplace(std::move(merged));
    });
    nodes = std::move(next);
  }

  const CollisionNode& top = *nodes.front();
  for (const auto& set : top.sets) {
    std::vector<Residue> sum(seq.dim(), 0);
    for (Index i : set) accumulate(sum, seq.at(i), 1, p);
    if (ZpVec(p, std::move(sum)) != top.sum) throw VerificationFailure("collision sets disagree on their common sum");
  }

  std::vector<Index> chosen;
  auto empty_set = std::find_if(top.sets.begin(), top.sets.end(), [](const auto& s) { return s.empty(); });
  if (empty_set != top.sets.end()) {
    // Common sum is zero; any non-empty set is a certificate.
    auto nonempty = std::find_if(top.sets.begin(), top.sets.end(), [](const auto& s) { return !s.empty(); });
    chosen = *nonempty;
  } else {
    for (std::uint32_t s = 0; s < p.value(); ++s) chosen.insert(chosen.end(), top.sets[s].begin(), top.sets[s].end());
  }
  ZeroSumCertificate cert(std::move(chosen));
  if (!verify_certificate(seq, cert)) throw VerificationFailure("collision doubling produced a non-zero sum");
  return cert;
}

ZeroSumCertificate find_zero_sum(const VecSequence& seq, Execution exec) {
  const PrimeModulus p = seq.modulus();
  const WideCount need_wide = required_length(p, seq.dim());
  if (WideCount{seq.size()} < need_wide) {
    throw SequenceTooShort(need_wide > std::numeric_limits<std::uint64_t>::max()
                               ? std::numeric_limits<std::uint64_t>::max()
                               : static_cast<std::uint64_t>(need_wide),
                           seq.size());
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto r = seq.row(i);
    if (std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; })) {
      return ZeroSumCertificate({static_cast<Index>(i)});
    }
  }
  if (p.value() == 2) {
    std::vector<Index> indices;
    for (const RelationTerm& t : linear_relation(seq)) indices.push_back(t.index);
    ZeroSumCertificate cert(std::move(indices));
    if (!verify_certificate(seq, cert)) throw VerificationFailure("GF(2) relation is not a zero sum");
    return cert;
  }
  return double_collisions(seq, exec);
}

// ---------------------------------------------------------------------------
// Brute force oracle

std::optional<ZeroSumCertificate> brute_force_zero_sum(const VecSequence& seq, std::optional<std::size_t> max_size) {
  constexpr std::size_t kBudget = 24;
  const std::size_t len = seq.size();
  if (len > kBudget) throw BudgetExceeded("brute force is limited to 24 vectors");
  const PrimeModulus p = seq.modulus();
  const std::size_t limit = std::min(len, max_size.value_or(len));
  std::vector<Residue> acc(seq.dim());
  for (std::size_t k = 1; k <= limit; ++k) {
    std::vector<Index> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<Index>(i);
    while (true) {
      std::fill(acc.begin(), acc.end(), 0);
      for (Index i : pick) {
        auto r = seq.row(i);
        for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = p.add(acc[c], r[c]);
      }
      if (std::all_of(acc.begin(), acc.end(), [](Residue x) { return x == 0; })) return ZeroSumCertificate(pick);
      // Next combination in lexicographic order.
      std::size_t pos = k;
      while (pos > 0 && pick[pos - 1] == len - k + pos - 1) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t i = pos; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace nilhsp
