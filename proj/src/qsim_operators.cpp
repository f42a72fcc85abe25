#include "nilhsp/qsim_operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nilhsp/errors.hpp"

namespace nilhsp {

namespace {

PrimeModulus exponent_prime(const Subgroup& l) {
  if (l.is_trivial()) throw std::invalid_argument("trivial subgroup has no elementary abelian basis");
  const Group& g = l.group();
  const auto primes = prime_factors(l.order());
  if (primes.size() != 1) throw std::invalid_argument("subgroup is not a p-group");
  const auto p = static_cast<std::uint32_t>(primes.front());
  for (Elem x : l.elements()) {
    if (g.pow(x, p) != g.identity()) throw std::invalid_argument("subgroup does not have exponent p");
    for (Elem s : l.generators()) {
      if (g.mul(x, s) != g.mul(s, x)) throw std::invalid_argument("subgroup is not abelian");
    }
  }
  return PrimeModulus(p);
}

// Permutation matrix of x -> g x (left) or x -> x g (right).
ComplexMatrix translation(const Group& g, Elem by, bool left) {
  const auto n = static_cast<Eigen::Index>(g.order());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Elem x = 0; x < g.order(); ++x) m(left ? g.mul(by, x) : g.mul(x, by), x) = 1.0;
  return m;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

ElementaryAbelianBasis::ElementaryAbelianBasis(const Subgroup& l) : l_(l), p_(exponent_prime(l)) {
  const Group& g = l.group();
  Subgroup span = Subgroup::trivial(l.parent());
  for (Elem x : l.elements()) {
    if (span.contains(x)) continue;
    basis_.push_back(x);
    span = adjoin(span, x);
  }
  const std::size_t p = p_.value();
  elements_.assign(l.order(), g.identity());
  label_of_.assign(g.order(), l.order());
  for (std::size_t label = 0; label < l.order(); ++label) {
    Elem x = g.identity();
    std::size_t rest = label;
    for (std::size_t i = basis_.size(); i-- > 0;) {
      x = g.mul(g.pow(basis_[i], rest % p), x);
      rest /= p;
    }
    elements_[label] = x;
    if (label_of_[x] != l.order()) throw VerificationFailure("basis coordinates are not unique");
    label_of_[x] = label;
  }
  roots_.resize(p);
  for (std::size_t k = 0; k < p; ++k) {
    roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p));
  }
}

std::size_t ElementaryAbelianBasis::label(Elem x) const {
  if (x >= label_of_.size() || label_of_[x] == elements_.size()) throw std::invalid_argument("element outside L");
  return label_of_[x];
}

std::vector<Residue> ElementaryAbelianBasis::coords(std::size_t label) const {
  std::vector<Residue> out(rank());
  for (std::size_t i = rank(); i-- > 0;) {
    out[i] = static_cast<Residue>(label % p_.value());
    label /= p_.value();
  }
  return out;
}

std::uint32_t ElementaryAbelianBasis::pairing(std::size_t y, std::size_t z) const {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    s = (s + static_cast<std::uint32_t>((y % p_.value()) * (z % p_.value()))) % p_.value();
    y /= p_.value();
    z /= p_.value();
  }
  return s;
}

std::size_t ElementaryAbelianBasis::difference(std::size_t y, std::size_t z) const {
  std::size_t out = 0, scale = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    out += p_.sub(static_cast<Residue>(y % p_.value()), static_cast<Residue>(z % p_.value())) * scale;
    y /= p_.value();
    z /= p_.value();
    scale *= p_.value();
  }
  return out;
}

Complex ElementaryAbelianBasis::root(std::uint32_t k) const { return roots_[k % p_.value()]; }

ComplexMatrix p_operator(const ElementaryAbelianBasis& basis, std::size_t y) {
  const Group& g = basis.subgroup().group();
  const auto n = static_cast<Eigen::Index>(g.order());
  const double norm = 1.0 / std::sqrt(static_cast<double>(basis.size()));
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Elem x = 0; x < g.order(); ++x) {
    for (std::size_t z = 0; z < basis.size(); ++z) {
      m(g.mul(x, basis.element(z)), x) += basis.root(basis.pairing(y, z)) * norm;
    }
  }
  return m;
}

ComplexMatrix fourier_isometry(const ElementaryAbelianBasis& basis) {
  const Group& g = basis.subgroup().group();
  const auto n = static_cast<Eigen::Index>(g.order());
  const auto nl = static_cast<Eigen::Index>(basis.size());
  const double norm = 1.0 / std::sqrt(static_cast<double>(basis.size()));
  ComplexMatrix v = ComplexMatrix::Zero(n * nl, n);
  for (Eigen::Index y = 0; y < nl; ++y) {
    const ComplexMatrix p = p_operator(basis, static_cast<std::size_t>(y));
    for (Eigen::Index u = 0; u < n; ++u) v.row(u * nl + y) = norm * p.row(u);
  }
  return v;
}

double fourier_isometry_error(const ElementaryAbelianBasis& basis) {
  const ComplexMatrix v = fourier_isometry(basis);
  return max_abs(v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols()));
}

double left_commutation_error(const ElementaryAbelianBasis& basis) {
  const Group& g = basis.subgroup().group();
  double worst = 0;
  for (std::size_t y = 0; y < basis.size(); ++y) {
    const ComplexMatrix p = p_operator(basis, y);
    for (Elem x = 0; x < g.order(); ++x) {
      const ComplexMatrix t = translation(g, x, true);
      worst = std::max(worst, max_abs(t * p - p * t));
    }
  }
  return worst;
}

double right_commutation_error(const ElementaryAbelianBasis& basis) {
  const Group& g = basis.subgroup().group();
  double worst = 0;
  for (std::size_t y = 0; y < basis.size(); ++y) {
    const ComplexMatrix p = p_operator(basis, y);
    for (Elem x = 0; x < g.order(); ++x) {
      const ComplexMatrix t = translation(g, x, false);
      worst = std::max(worst, max_abs(t * p - p * t));
    }
  }
  return worst;
}

double eigen_phase_error(const ElementaryAbelianBasis& basis) {
  const Group& g = basis.subgroup().group();
  double worst = 0;
  for (std::size_t y = 0; y < basis.size(); ++y) {
    const ComplexMatrix p = p_operator(basis, y);
    for (std::size_t w = 0; w < basis.size(); ++w) {
      const Complex phase = std::conj(basis.root(basis.pairing(y, w)));
      const ComplexMatrix expected = phase * p;
      worst = std::max(worst, max_abs(translation(g, basis.element(w), false) * p - expected));
      worst = std::max(worst, max_abs(translation(g, basis.element(w), true) * p - expected));
    }
  }
  return worst;
}

double trivial_label_error(const ElementaryAbelianBasis& basis) {
  const Group& g = basis.subgroup().group();
  const ComplexMatrix p = p_operator(basis, 0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(basis.size()));
  double worst = 0;
  for (Elem x = 0; x < g.order(); ++x) {
    Eigen::VectorXcd coset = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g.order()));
    for (Elem z : basis.subgroup().elements()) coset(g.mul(x, z)) = amp;
    worst = std::max(worst, (p.col(x) - coset).cwiseAbs().maxCoeff());
  }
  return worst;
}

ZeroSumSelector::ZeroSumSelector(PrimeModulus p, std::size_t rank, std::size_t length)
    : p_(p), rank_(rank), length_(length), labels_(1) {
  if (rank == 0 || length == 0 || length > 20) throw std::invalid_argument("selector needs rank >= 1 and 1 <= S <= 20");
  for (std::size_t i = 0; i < rank; ++i) labels_ *= p.value();
  std::size_t total = 1;
  for (std::size_t j = 0; j < length; ++j) {
    if (total > (std::size_t{1} << 20) / labels_) throw BudgetExceeded("selector table exceeds 2^20 sequences");
    total *= labels_;
  }
  // Candidate subsets by size, then lexicographically by index list.
  std::vector<std::uint32_t> order;
  for (std::size_t k = 1; k <= length; ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      std::uint32_t mask = 0;
      for (std::size_t i : pick) mask |= std::uint32_t{1} << i;
      order.push_back(mask);
      std::size_t pos = k;
      while (pos > 0 && pick[pos - 1] == length - k + pos - 1) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t i = pos; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
  }
  std::vector<std::vector<Residue>> coords(labels_, std::vector<Residue>(rank));
  for (std::size_t y = 0; y < labels_; ++y) {
    std::size_t rest = y;
    for (std::size_t i = rank; i-- > 0;) {
      coords[y][i] = static_cast<Residue>(rest % p.value());
      rest /= p.value();
    }
  }
  table_.resize(total);
  std::vector<std::size_t> ys(length);
  std::vector<Residue> acc(rank);
  for (std::size_t s = 0; s < total; ++s) {
    std::size_t rest = s;
    for (std::size_t j = length; j-- > 0;) {
      ys[j] = rest % labels_;
      rest /= labels_;
    }
    std::uint32_t chosen = 0;
    for (std::uint32_t mask : order) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t j = 0; j < length; ++j) {
        if (!(mask >> j & 1)) continue;
        for (std::size_t i = 0; i < rank; ++i) acc[i] = p.add(acc[i], coords[ys[j]][i]);
      }
      if (std::all_of(acc.begin(), acc.end(), [](Residue r) { return r == 0; })) {
        chosen = mask;
        break;
      }
    }
    if (chosen == 0) throw VerificationFailure("selector is not total: sequence " + std::to_string(s) + " has no zero sum");
    table_[s] = chosen;
  }
}

ZeroSumSelector ZeroSumSelector::davenport(PrimeModulus p, std::size_t rank) {
  return ZeroSumSelector(p, rank, 1 + rank * (p.value() - 1));
}

std::uint32_t ZeroSumSelector::select(std::span<const std::size_t> ys) const {
  if (ys.size() != length_) throw std::invalid_argument("selector input has the wrong length");
  std::size_t s = 0;
  for (std::size_t y : ys) {
    if (y >= labels_) throw std::invalid_argument("label out of range");
    s = s * labels_ + y;
  }
  return table_[s];
}

}  // namespace nilhsp
