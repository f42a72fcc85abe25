#ifndef NILHSP_ZPVEC_HPP
#define NILHSP_ZPVEC_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace nilhsp {

using Residue = std::uint16_t;

/// A prime 2 <= p < 2^16, checked at construction.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint32_t p);

  std::uint32_t value() const noexcept { return p_; }
  Residue reduce(std::uint64_t x) const noexcept { return static_cast<Residue>(x % p_); }
  Residue add(Residue a, Residue b) const noexcept { return reduce(std::uint32_t{a} + b); }
  Residue sub(Residue a, Residue b) const noexcept { return reduce(std::uint32_t{a} + p_ - b); }
  Residue mul(Residue a, Residue b) const noexcept { return reduce(std::uint32_t{a} * b); }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : static_cast<Residue>(p_ - a); }
  /// Multiplicative inverse of a nonzero residue.
  Residue inverse(Residue a) const;

  friend bool operator==(PrimeModulus, PrimeModulus) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// A vector of Z_p^n with n >= 1.
class ZpVec {
 public:
  ZpVec(PrimeModulus p, std::vector<Residue> coords);
  static ZpVec zero(PrimeModulus p, std::size_t n);

  PrimeModulus modulus() const noexcept { return p_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const Residue> coords() const noexcept { return coords_; }
  Residue operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const noexcept;

  friend bool operator==(const ZpVec&, const ZpVec&) = default;

 private:
  PrimeModulus p_;
  std::vector<Residue> coords_;
};

ZpVec add(const ZpVec& a, const ZpVec& b);
ZpVec negate(const ZpVec& a);
ZpVec scale(const ZpVec& a, Residue c);
/// Concatenation in argument order; rejects an empty list and mixed moduli.
ZpVec concat(std::span<const ZpVec> parts);

/// Ordered sequence of vectors sharing (p, n), stored row-major.
/// Length zero is allowed.
class VecSequence {
 public:
  VecSequence(PrimeModulus p, std::size_t n);
  VecSequence(PrimeModulus p, std::size_t n, std::vector<Residue> flat);

  PrimeModulus modulus() const noexcept { return p_; }
  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size() / n_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const Residue> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  ZpVec at(std::size_t i) const;
  std::span<const Residue> data() const noexcept { return data_; }

  void push_back(const ZpVec& v);
  void push_back(std::span<const Residue> coords);
  void reserve(std::size_t count) { data_.reserve(count * n_); }

  /// Items [first, first + count) as a new sequence.
  VecSequence slice(std::size_t first, std::size_t count) const;
  VecSequence prefix(std::size_t count) const { return slice(0, count); }

  friend bool operator==(const VecSequence&, const VecSequence&) = default;

 private:
  PrimeModulus p_;
  std::size_t n_;
  std::vector<Residue> data_;
};

/// Text format: a "p n" header line, then one line of n residues per vector.
/// Blank lines are skipped.
VecSequence read_sequence(std::istream& in);
void write_sequence(const VecSequence& seq, std::ostream& out);

}  // namespace nilhsp

#endif
