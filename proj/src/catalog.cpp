#include "nilhsp/catalog.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nilhsp/errors.hpp"
#include "nilhsp/zpvec.hpp"

namespace nilhsp {

namespace {

std::int32_t mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return static_cast<std::int32_t>(r < 0 ? r + m : r);
}

void require_prime(std::uint32_t p) {
  if (!is_prime(p) || p > 1000) throw std::invalid_argument("expected a prime below 1000, got " + std::to_string(p));
}

}  // namespace

GroupPtr make_heisenberg(std::uint32_t p) {
  require_prime(p);
  const std::int64_t m = p;
  auto product = [m](const Code& x, const Code& y) {
    return Code{mod(x[0] + y[0], m), mod(x[1] + y[1], m), mod(x[2] + y[2] + std::int64_t{x[0]} * y[1], m)};
  };
  return Group::from_codes("heisenberg:" + std::to_string(p), {0, 0, 0}, {{1, 0, 0}, {0, 1, 0}}, product);
}

GroupPtr make_unitriangular4(std::uint32_t p) {
  require_prime(p);
  const std::int64_t m = p;
  // Entries: 0=e12 1=e13 2=e14 3=e23 4=e24 5=e34.
  auto product = [m](const Code& a, const Code& b) {
    return Code{mod(a[0] + b[0], m),
                mod(a[1] + std::int64_t{a[0]} * b[3] + b[1], m),
                mod(a[2] + std::int64_t{a[0]} * b[4] + std::int64_t{a[1]} * b[5] + b[2], m),
                mod(a[3] + b[3], m),
                mod(a[4] + std::int64_t{a[3]} * b[5] + b[4], m),
                mod(a[5] + b[5], m)};
  };
  return Group::from_codes("ut4:" + std::to_string(p), Code(6, 0),
                           {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1}}, product);
}

GroupPtr make_dihedral(std::uint32_t order) {
  if (order < 4 || order % 2 != 0) throw std::invalid_argument("dihedral order must be even and at least 4");
  const std::int64_t n = order / 2;
  auto product = [n](const Code& x, const Code& y) {
    return Code{mod(x[0] + (x[1] ? -y[0] : y[0]), n), (x[1] + y[1]) % 2};
  };
  return Group::from_codes("dihedral:" + std::to_string(order), {0, 0}, {{1, 0}, {0, 1}}, product);
}

GroupPtr make_abelian(const std::vector<std::uint32_t>& cycles) {
  if (cycles.empty()) throw std::invalid_argument("abelian group needs at least one cycle");
  std::string name = "abelian:";
  std::vector<Code> gens;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (cycles[i] < 2) throw std::invalid_argument("cycle orders must be at least 2");
    if (i) name += ',';
    name += std::to_string(cycles[i]);
    Code g(cycles.size(), 0);
    g[i] = 1;
    gens.push_back(std::move(g));
  }
  auto product = [cycles](const Code& x, const Code& y) {
    Code out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = mod(std::int64_t{x[i]} + y[i], cycles[i]);
    return out;
  };
  return Group::from_codes(name, Code(cycles.size(), 0), std::move(gens), product);
}

GroupPtr make_quaternion8() {
  // Unit k in {1,i,j,k} with sign; id = 2*unit + (negative ? 1 : 0).
  static constexpr int kUnitProduct[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<Elem>> table(8, std::vector<Elem>(8));
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      int sign = kSign[ua][ub] * (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1);
      table[a][b] = static_cast<Elem>(2 * kUnitProduct[ua][ub] + (sign < 0 ? 1 : 0));
    }
  }
  return Group::from_table("q8", std::move(table), {2, 4});
}

GroupPtr from_permutations(std::string name, const std::vector<std::vector<std::int32_t>>& generators) {
  if (generators.empty()) throw std::invalid_argument("permutation group needs a generator");
  const std::size_t degree = generators.front().size();
  for (const auto& g : generators) {
    if (g.size() != degree) throw std::invalid_argument("permutations of different degrees");
    std::vector<bool> seen(degree);
    for (std::int32_t x : g) {
      if (x < 0 || static_cast<std::size_t>(x) >= degree || seen[x]) throw std::invalid_argument("not a permutation");
      seen[x] = true;
    }
  }
  Code identity(degree);
  for (std::size_t i = 0; i < degree; ++i) identity[i] = static_cast<std::int32_t>(i);
  auto product = [](const Code& a, const Code& b) {
    Code out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
    return out;
  };
  return Group::from_codes(std::move(name), std::move(identity),
                           std::vector<Code>(generators.begin(), generators.end()), product);
}

GroupPtr make_symmetric(std::uint32_t n) {
  if (n < 2 || n > 8) throw std::invalid_argument("symmetric degree must be in 2..8");
  std::vector<std::int32_t> swap(n), cycle(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    swap[i] = static_cast<std::int32_t>(i);
    cycle[i] = static_cast<std::int32_t>((i + 1) % n);
  }
  std::swap(swap[0], swap[1]);
  return from_permutations("symmetric:" + std::to_string(n), {swap, cycle});
}

GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2) {
  std::vector<Code> gens;
  for (Elem a : g1->generators()) gens.push_back({static_cast<std::int32_t>(a), static_cast<std::int32_t>(g2->identity())});
  for (Elem b : g2->generators()) gens.push_back({static_cast<std::int32_t>(g1->identity()), static_cast<std::int32_t>(b)});
  auto product = [g1, g2](const Code& x, const Code& y) {
    return Code{static_cast<std::int32_t>(g1->mul(x[0], y[0])), static_cast<std::int32_t>(g2->mul(x[1], y[1]))};
  };
  return Group::from_codes(g1->name() + "x" + g2->name(),
                           {static_cast<std::int32_t>(g1->identity()), static_cast<std::int32_t>(g2->identity())},
                           std::move(gens), product);
}

GroupPtr as_table(const GroupPtr& g) {
  const std::size_t k = g->order();
  std::vector<std::vector<Elem>> table(k, std::vector<Elem>(k));
  for (Elem a = 0; a < k; ++a) {
    for (Elem b = 0; b < k; ++b) table[a][b] = g->mul(a, b);
  }
  return Group::from_table(g->name(), std::move(table), {g->generators().begin(), g->generators().end()});
}

namespace {

std::uint64_t parse_uint(const std::string& token, const std::string& what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("expected a non-negative integer for " + what + ", got '" + token + "'");
  }
  return v;
}

}  // namespace

GroupPtr read_table(std::istream& in, std::string name) {
  std::string word;
  if (!(in >> word) || word != "order") throw ParseError("table must start with 'order k'");
  if (!(in >> word)) throw ParseError("missing table order");
  const std::uint64_t k = parse_uint(word, "table order");
  if (k == 0 || k > 4096) throw ParseError("table order must be in 1..4096");
  std::vector<std::vector<Elem>> table(k, std::vector<Elem>(k));
  for (std::uint64_t a = 0; a < k; ++a) {
    for (std::uint64_t b = 0; b < k; ++b) {
      if (!(in >> word)) throw ParseError("table ends early");
      const std::uint64_t v = parse_uint(word, "table entry");
      if (v >= k) throw ParseError("table entry " + word + " out of range");
      table[a][b] = static_cast<Elem>(v);
    }
  }
  if (!(in >> word) || word != "generators") throw ParseError("expected 'generators' after the table");
  std::vector<Elem> gens;
  while (in >> word) {
    const std::uint64_t v = parse_uint(word, "generator");
    if (v >= k) throw ParseError("generator " + word + " out of range");
    gens.push_back(static_cast<Elem>(v));
  }
  try {
    return Group::from_table(std::move(name), std::move(table), std::move(gens));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("not a group table: ") + e.what());
  }
}

void write_table(const Group& g, std::ostream& out) {
  out << "order " << g.order() << '\n';
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
  out << "generators";
  for (Elem s : g.generators()) out << ' ' << s;
  out << '\n';
}

namespace {

std::uint32_t parse_small(const std::string& token, const std::string& what) {
  const std::uint64_t v = parse_uint(token, what);
  if (v > 100000) throw ParseError(what + " too large");
  return static_cast<std::uint32_t>(v);
}

// "p^e" or "m".
std::uint32_t parse_cycle(const std::string& token) {
  const auto caret = token.find('^');
  if (caret == std::string::npos) return parse_small(token, "cycle order");
  const std::uint32_t base = parse_small(token.substr(0, caret), "cycle base");
  const std::uint32_t exp = parse_small(token.substr(caret + 1), "cycle exponent");
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    v *= base;
    if (v > kMaxOrder) throw ParseError("cycle order too large");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

GroupPtr parse_group_name(const std::string& name) {
  if (name == "d8") return make_dihedral(8);
  if (name == "d16") return make_dihedral(16);
  if (name == "q8") return make_quaternion8();
  if (name == "s3") return as_table(make_symmetric(3));
  const auto colon = name.find(':');
  if (colon == std::string::npos) throw ParseError("unknown group '" + name + "'");
  const std::string kind = name.substr(0, colon);
  const std::string arg = name.substr(colon + 1);
  try {
    if (kind == "heisenberg") return make_heisenberg(parse_small(arg, "p"));
    if (kind == "ut4") return make_unitriangular4(parse_small(arg, "p"));
    if (kind == "dihedral") return make_dihedral(parse_small(arg, "order"));
    if (kind == "symmetric") return make_symmetric(parse_small(arg, "degree"));
    if (kind == "abelian") {
      std::vector<std::uint32_t> cycles;
      std::stringstream ss(arg);
      std::string tok;
      while (std::getline(ss, tok, ',')) cycles.push_back(parse_cycle(tok));
      return make_abelian(cycles);
    }
    if (kind == "table") {
      std::ifstream in(arg);
      if (!in) throw ParseError("cannot open table file '" + arg + "'");
      return read_table(in, name);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError("bad group '" + name + "': " + e.what());
  }
  throw ParseError("unknown group '" + name + "'");
}

}  // namespace nilhsp
