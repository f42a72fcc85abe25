#include "nilhsp/zpvec.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nilhsp/errors.hpp"

namespace nilhsp {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint32_t p) : p_(p) {
  if (p >= (1u << 16) || !is_prime(p)) {
    throw std::invalid_argument("modulus must be a prime below 65536, got " + std::to_string(p));
  }
}

Residue PrimeModulus::inverse(Residue a) const {
  if (a % p_ == 0) throw std::domain_error("zero has no inverse");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p_;
  for (std::uint32_t e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
  }
  return static_cast<Residue>(result);
}

ZpVec::ZpVec(PrimeModulus p, std::vector<Residue> coords) : p_(p), coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("zero-length vector");
  for (Residue c : coords_) {
    if (c >= p_.value()) throw std::invalid_argument("residue out of range");
  }
}

ZpVec ZpVec::zero(PrimeModulus p, std::size_t n) { return ZpVec(p, std::vector<Residue>(n, 0)); }

bool ZpVec::is_zero() const noexcept {
  for (Residue c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

namespace {

void require_same_shape(const ZpVec& a, const ZpVec& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("modulus mismatch");
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
}

}  // namespace

ZpVec add(const ZpVec& a, const ZpVec& b) {
  require_same_shape(a, b);
  const PrimeModulus p = a.modulus();
  std::vector<Residue> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.add(a[i], b[i]);
  return ZpVec(p, std::move(out));
}

ZpVec negate(const ZpVec& a) {
  const PrimeModulus p = a.modulus();
  std::vector<Residue> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.neg(a[i]);
  return ZpVec(p, std::move(out));
}

ZpVec scale(const ZpVec& a, Residue c) {
  const PrimeModulus p = a.modulus();
  if (c >= p.value()) throw std::invalid_argument("scalar out of range");
  std::vector<Residue> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.mul(a[i], c);
  return ZpVec(p, std::move(out));
}

ZpVec concat(std::span<const ZpVec> parts) {
  if (parts.empty()) throw std::invalid_argument("concatenation of no vectors has dimension 0");
  const PrimeModulus p = parts.front().modulus();
  std::vector<Residue> out;
  for (const ZpVec& v : parts) {
    if (v.modulus() != p) throw std::invalid_argument("modulus mismatch");
    out.insert(out.end(), v.coords().begin(), v.coords().end());
  }
  return ZpVec(p, std::move(out));
}

VecSequence::VecSequence(PrimeModulus p, std::size_t n) : p_(p), n_(n) {
  if (n == 0) throw std::invalid_argument("zero-length vectors are not allowed");
}

VecSequence::VecSequence(PrimeModulus p, std::size_t n, std::vector<Residue> flat)
    : p_(p), n_(n), data_(std::move(flat)) {
  if (n == 0) throw std::invalid_argument("zero-length vectors are not allowed");
  if (data_.size() % n != 0) throw std::invalid_argument("flat data is not a whole number of rows");
  for (Residue c : data_) {
    if (c >= p.value()) throw std::invalid_argument("residue out of range");
  }
}

ZpVec VecSequence::at(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("sequence index");
  auto r = row(i);
  return ZpVec(p_, std::vector<Residue>(r.begin(), r.end()));
}

void VecSequence::push_back(const ZpVec& v) {
  if (v.modulus() != p_) throw std::invalid_argument("modulus mismatch");
  push_back(v.coords());
}

void VecSequence::push_back(std::span<const Residue> coords) {
  if (coords.size() != n_) throw std::invalid_argument("dimension mismatch");
  for (Residue c : coords) {
    if (c >= p_.value()) throw std::invalid_argument("residue out of range");
  }
  data_.insert(data_.end(), coords.begin(), coords.end());
}

VecSequence VecSequence::slice(std::size_t first, std::size_t count) const {
  if (first + count > size()) throw std::out_of_range("slice exceeds sequence");
  VecSequence out(p_, n_);
  out.data_.assign(data_.begin() + static_cast<std::ptrdiff_t>(first * n_),
                   data_.begin() + static_cast<std::ptrdiff_t>((first + count) * n_));
  return out;
}

namespace {

// Splits on single spaces; an empty field (double space, leading or trailing
// space) is a format error.
std::vector<std::uint64_t> parse_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = line.find(' ', pos);
    std::string_view field = line.substr(pos, end == std::string_view::npos ? line.npos : end - pos);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected base-10 integer, got '" +
                       std::string(field) + "'");
    }
    out.push_back(value);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace

VecSequence read_sequence(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next_line()) throw ParseError("missing header line");
  auto header = parse_fields(line, line_no);
  if (header.size() != 2) throw ParseError("header must be 'p n'");
  if (header[0] >= (1u << 16) || !is_prime(header[0])) throw ParseError("header p is not a prime below 65536");
  if (header[1] == 0) throw ParseError("header n must be at least 1");
  const PrimeModulus p(static_cast<std::uint32_t>(header[0]));
  const std::size_t n = header[1];
  VecSequence seq(p, n);
  std::vector<Residue> row(n);
  while (next_line()) {
    if (line.empty()) continue;
    auto fields = parse_fields(line, line_no);
    if (fields.size() != n) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                       " residues, got " + std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (fields[i] >= p.value()) {
        throw ParseError("line " + std::to_string(line_no) + ": residue " + std::to_string(fields[i]) +
                         " out of range for p=" + std::to_string(p.value()));
      }
      row[i] = static_cast<Residue>(fields[i]);
    }
    seq.push_back(row);
  }
  return seq;
}

void write_sequence(const VecSequence& seq, std::ostream& out) {
  out << seq.modulus().value() << ' ' << seq.dim() << '\n';
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto r = seq.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out << ' ';
      out << r[j];
    }
    out << '\n';
  }
}

}  // namespace nilhsp
