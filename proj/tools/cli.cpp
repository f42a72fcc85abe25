#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilhsp/catalog.hpp"
#include "nilhsp/errors.hpp"
#include "nilhsp/group_alg.hpp"
#include "nilhsp/hsp.hpp"
#include "nilhsp/qsim_conversion.hpp"
#include "nilhsp/random_source.hpp"
#include "nilhsp/zerosum.hpp"

namespace nilhsp::cli {

namespace {

using Json = nlohmann::ordered_json;

// Sequences longer than this are refused by the bench and random generators.
constexpr std::uint64_t kMaxGeneratedVectors = std::uint64_t{1} << 22;

std::string render(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += render(v[i]);
    }
    return s.empty() ? "-" : s;
  }
  return v.dump();
}

class Emitter {
 public:
  Emitter(std::ostream& out, const std::string& format) : out_(out), json_(format == "json") {}

  void emit(const Json& record) {
    if (json_) {
      out_ << record.dump() << '\n';
      return;
    }
    bool first = true;
    for (const auto& [key, value] : record.items()) {
      out_ << (first ? "" : " ") << key << '=' << render(value);
      first = false;
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  bool json_;
};

void add_format(CLI::App* cmd, std::string& format, std::vector<std::string> choices = {"text", "json"}) {
  cmd->add_option("--format", format, "Output rendering")->check(CLI::IsMember(std::move(choices)));
}

Execution parse_exec(const std::string& s) { return s == "serial" ? Execution::serial : Execution::parallel; }

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw ParseError("not a number list: '" + text + "'");
    }
    if (used != item.size()) throw ParseError("not a number list: '" + text + "'");
    out.push_back(v);
  }
  return out;
}

Subgroup parse_subgroup(const GroupPtr& g, const std::string& text) {
  std::vector<Elem> gens;
  for (std::uint64_t v : parse_list(text)) {
    if (v >= g->order()) throw ParseError("element id " + std::to_string(v) + " outside " + g->name());
    gens.push_back(static_cast<Elem>(v));
  }
  return generated(g, gens);
}

Json ids(std::span<const Elem> elems) {
  Json a = Json::array();
  for (Elem x : elems) a.push_back(x);
  return a;
}

Json residues(const ZpVec& v) {
  Json a = Json::array();
  for (Residue r : v.coords()) a.push_back(r);
  return a;
}

std::string wide(WideCount v) { return to_decimal(v); }

// ---------------------------------------------------------------------------

struct ZerosumArgs {
  std::uint32_t p = 0;
  std::uint64_t n = 0;
  std::string input;
  std::size_t random = 0;
  std::uint64_t seed = 0;
  bool signed_only = false;
  std::string exec = "parallel";
  std::string format = "text";
};

int cmd_zerosum(const ZerosumArgs& a, std::ostream& out) {
  VecSequence seq(PrimeModulus(2), 1);
  if (!a.input.empty()) {
    std::ifstream in(a.input);
    if (!in) throw ParseError("cannot open " + a.input);
    seq = read_sequence(in);
    if ((a.p && a.p != seq.modulus().value()) || (a.n && a.n != seq.dim())) {
      throw ParseError("--p/--n disagree with the header of " + a.input);
    }
  } else if (a.random > 0) {
    if (a.p == 0 || a.n == 0) throw std::invalid_argument("--random needs --p and --n");
    if (a.random > kMaxGeneratedVectors) throw BudgetExceeded("--random above 2^22 vectors");
    RandomSource rng(a.seed);
    seq = rng.sequence(PrimeModulus(a.p), a.n, a.random);
  } else {
    throw std::invalid_argument("give --input or --random");
  }
  const PrimeModulus p = seq.modulus();
  Emitter emit(out, a.format);
  const Execution exec = parse_exec(a.exec);
  Json rec;
  rec["p"] = p.value();
  rec["n"] = seq.dim();
  rec["length"] = seq.size();
  if (a.signed_only) {
    if (p.value() == 2) throw std::invalid_argument("--signed-only needs an odd prime");
    const SignedSubset s = find_signed_zero(seq, exec);
    const bool ok = verify_signed_zero(seq, s);
    Json idx = Json::array(), signs = Json::array();
    for (const SignedEntry& e : s.entries()) {
      idx.push_back(e.index);
      signs.push_back(e.sign > 0 ? "+" : "-");
    }
    rec["indices"] = idx;
    rec["signs"] = signs;
    rec["size"] = s.size();
    rec["sum"] = residues(signed_sum(seq, s));
    rec["verified"] = ok;
    emit.emit(rec);
    return ok ? kExitOk : kExitVerification;
  }
  const ZeroSumCertificate cert = find_zero_sum(seq, exec);
  const bool ok = verify_certificate(seq, cert);
  rec["indices"] = ids(cert.indices());
  rec["size"] = cert.size();
  rec["sum"] = residues(certificate_sum(seq, cert));
  rec["verified"] = ok;
  emit.emit(rec);
  return ok ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------

struct LengthsArgs {
  std::string primes = "2,3,5,7,11,13";
  std::uint64_t n_min = 1;
  std::uint64_t n_max = 8;
  std::string format = "table";
};

int cmd_lengths(const LengthsArgs& a, std::ostream& out) {
  const auto primes = parse_list(a.primes);
  if (a.n_min < 1 || a.n_max > 64 || a.n_min > a.n_max) throw std::invalid_argument("n range must lie in [1, 64]");
  for (std::uint64_t p : primes) {
    if (p > 13 || !is_prime(p)) throw std::invalid_argument("primes must be at most 13");
  }
  const bool table = a.format == "table";
  Emitter emit(out, a.format);
  if (table) out << std::setw(3) << "p" << std::setw(4) << "n" << std::setw(7) << "olson" << std::setw(22) << "signed"
                 << std::setw(42) << "required" << '\n';
  for (std::uint64_t pv : primes) {
    const PrimeModulus p(static_cast<std::uint32_t>(pv));
    for (std::uint64_t n = a.n_min; n <= a.n_max; ++n) {
      std::string sgn, req;
      try {
        sgn = wide(required_signed_length(p, n));
        req = wide(required_length(p, n));
      } catch (const std::overflow_error&) {
        if (sgn.empty()) sgn = "overflow";
        req = "overflow";
      }
      if (table) {
        out << std::setw(3) << pv << std::setw(4) << n << std::setw(7) << davenport_constant(p, n) << std::setw(22)
            << sgn << std::setw(42) << req << '\n';
      } else {
        Json rec;
        rec["p"] = pv;
        rec["n"] = n;
        rec["olson"] = davenport_constant(p, n);
        rec["signed"] = sgn;
        rec["required"] = req;
        emit.emit(rec);
      }
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string primes = "3";
  std::string dims = "8,16,32";
  std::size_t trials = 3;
  std::uint64_t seed = 1;
  std::string exec = "parallel";
  std::string format = "text";
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  Emitter emit(out, a.format);
  bool all_ok = true;
  for (std::uint64_t p : parse_list(a.primes)) {
    for (std::uint64_t n : parse_list(a.dims)) {
      const BenchRecord r = bench_point(static_cast<std::uint32_t>(p), n, a.trials, a.seed, parse_exec(a.exec));
      Json rec;
      rec["p"] = r.p;
      rec["n"] = r.n;
      rec["length"] = r.length;
      rec["trials"] = r.trials;
      rec["seconds"] = r.seconds;
      rec["certificate_size"] = r.certificate_size;
      rec["verified"] = r.verified;
      emit.emit(rec);
      out.flush();
      all_ok = all_ok && r.verified;
    }
  }
  return all_ok ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------

struct GroupArgs {
  std::string group;
  std::string subgroup;
  std::uint32_t prime = 0;
  std::string format = "text";
};

int cmd_group(const std::string& what, const GroupArgs& a, std::ostream& out) {
  const GroupPtr g = parse_group_name(a.group);
  Emitter emit(out, a.format);
  if (what == "lcs") {
    const CentralSeries s = lower_central_series(g);
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
      emit.emit(Json{{"term", i}, {"order", s.terms[i].order()}, {"generators", ids(s.terms[i].generators())}});
    }
    emit.emit(Json{{"group", g->name()}, {"order", g->order()}, {"class", s.nilpotency_class()}});
  } else if (what == "chief") {
    const ChiefSeries s = chief_series(g);
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
      Json rec{{"term", i}, {"order", s.terms[i].order()}};
      rec["prime"] = i == 0 ? Json("-") : Json(s.primes[i - 1]);
      rec["generators"] = ids(s.terms[i].generators());
      emit.emit(rec);
    }
    emit.emit(Json{{"group", g->name()}, {"order", g->order()}, {"length", s.primes.size()}});
  } else if (what == "sylow") {
    if (!is_nilpotent(g)) throw NotNilpotent(g->name() + " is not nilpotent");
    std::vector<std::uint64_t> primes = prime_factors(g->order());
    if (a.prime) primes = {a.prime};
    for (std::uint64_t p : primes) {
      const Subgroup s = sylow(g, static_cast<std::uint32_t>(p));
      emit.emit(Json{{"prime", p}, {"order", s.order()}, {"generators", ids(s.generators())}});
    }
  } else {
    const Subgroup h = parse_subgroup(g, a.subgroup);
    const Subgroup n = normalizer(Subgroup::whole(g), h);
    emit.emit(Json{{"subgroup_order", h.order()},
                   {"normalizer_order", n.order()},
                   {"generators", ids(n.generators())},
                   {"strict", n.order() > h.order()}});
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct HspArgs {
  std::string group;
  std::string hidden;
  std::string format = "text";
};

int cmd_hsp_demo(const HspArgs& a, std::ostream& out) {
  const GroupPtr g = parse_group_name(a.group);
  const Subgroup hidden = parse_subgroup(g, a.hidden);
  const HiddenSubgroupInstance instance(g, hidden);
  ReductionTrace trace;
  const Subgroup found = solve_hsp(g, instance.oracle_factory(), &trace);
  Emitter emit(out, a.format);
  for (const SylowTrace& s : trace.sylows) {
    for (const TraceStep& st : s.steps) {
      emit.emit(Json{{"prime", s.prime},
                     {"outer", st.outer},
                     {"inner", st.inner},
                     {"k_order", st.k_order},
                     {"h0_order", st.h0_order},
                     {"step", to_string(st.kind)},
                     {"result_order", st.result_order},
                     {"elementary", st.elementary}});
    }
    emit.emit(Json{{"prime", s.prime},
                   {"sylow_order", s.sylow_order},
                   {"calls", s.calls},
                   {"bound", s.call_bound()},
                   {"within_bound", s.calls <= s.call_bound()}});
  }
  const bool match = instance.matches(found);
  emit.emit(Json{{"group", g->name()},
                 {"hidden_order", hidden.order()},
                 {"recovered_order", found.order()},
                 {"recovered", ids(found.generators())},
                 {"match", match},
                 {"calls", trace.total_calls()},
                 {"within_bounds", trace.within_bounds()}});
  return match && trace.within_bounds() ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------

struct QsimArgs {
  std::string group;
  std::string subgroup;
  bool all = false;
  std::size_t max_conversions = 64;
  std::string exec = "parallel";
  std::string format = "text";
};

int cmd_qsim_verify(const QsimArgs& a, std::ostream& out) {
  const GroupPtr g = parse_group_name(a.group);
  VerifyOptions options;
  options.max_conversions = a.max_conversions;
  options.exec = parse_exec(a.exec);
  if (!a.subgroup.empty()) {
    options.hidden.push_back(parse_subgroup(g, a.subgroup));
  } else if (!a.all) {
    options.hidden.push_back(Subgroup::trivial(g));
    options.hidden.push_back(Subgroup::whole(g));
    if (is_nilpotent(g)) {
      for (const Subgroup& t : chief_series(g).terms) {
        if (std::find(options.hidden.begin(), options.hidden.end(), t) == options.hidden.end()) {
          options.hidden.push_back(t);
        }
      }
    }
  }
  const auto results = verify_simulator(g, options);
  Emitter emit(out, a.format);
  std::size_t failed = 0;
  for (const CheckResult& r : results) {
    std::ostringstream err, tol;
    err << std::setprecision(3) << r.worst_error;
    tol << std::setprecision(3) << r.tolerance;
    emit.emit(Json{{"check", r.name},
                   {"cases", r.cases},
                   {r.expect_large ? "min_error" : "max_error", err.str()},
                   {"tolerance", tol.str()},
                   {"status", r.passed() ? "pass" : "FAIL"}});
    failed += r.passed() ? 0 : 1;
  }
  emit.emit(Json{{"group", g->name()}, {"checks", results.size()}, {"failed", failed}});
  return failed == 0 ? kExitOk : kExitVerification;
}

}  // namespace

BenchRecord bench_point(std::uint32_t pv, std::uint64_t n, std::size_t trials, std::uint64_t seed, Execution exec) {
  const PrimeModulus p(pv);
  const WideCount len = required_length(p, n);
  if (len > kMaxGeneratedVectors) throw BudgetExceeded("bench point needs " + to_decimal(len) + " vectors");
  if (trials == 0) throw std::invalid_argument("--trials must be positive");
  BenchRecord r;
  r.p = pv;
  r.n = n;
  r.length = static_cast<std::uint64_t>(len);
  r.trials = trials;
  r.verified = true;
  RandomSource rng(seed);
  std::vector<double> times;
  for (std::size_t t = 0; t < trials; ++t) {
    const VecSequence seq = rng.sequence(p, n, r.length);
    const auto start = std::chrono::steady_clock::now();
    const ZeroSumCertificate cert = find_zero_sum(seq, exec);
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    if (t == 0) r.certificate_size = cert.size();
    r.verified = r.verified && verify_certificate(seq, cert);
  }
  std::sort(times.begin(), times.end());
  r.seconds = times[times.size() / 2];
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-sum finders, nilpotent hidden subgroup reduction and subgroup-state simulator", "nilhsp"};
  app.require_subcommand(1);

  ZerosumArgs za;
  auto* zerosum = app.add_subcommand("zerosum", "Find a zero-sum subsequence");
  zerosum->add_option("--p", za.p, "Prime modulus");
  zerosum->add_option("--n", za.n, "Dimension");
  zerosum->add_option("--input", za.input, "Sequence file ('p n' header, one vector per line)");
  zerosum->add_option("--random", za.random, "Generate this many uniform vectors");
  zerosum->add_option("--seed", za.seed, "Seed for --random");
  zerosum->add_flag("--signed-only", za.signed_only, "Stop at a signed zero sum");
  zerosum->add_option("--exec", za.exec, "Kernel")->check(CLI::IsMember({"serial", "parallel"}));
  add_format(zerosum, za.format);

  LengthsArgs la;
  auto* lengths = app.add_subcommand("lengths", "Required lengths against the Davenport constant");
  lengths->add_option("--p", la.primes, "Comma-separated primes, each at most 13");
  lengths->add_option("--n-min", la.n_min, "Smallest dimension");
  lengths->add_option("--n-max", la.n_max, "Largest dimension, at most 64");
  add_format(lengths, la.format, {"table", "records", "json"});

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time find_zero_sum over a (p, n) grid");
  bench->add_option("--p", ba.primes, "Comma-separated primes");
  bench->add_option("--n", ba.dims, "Comma-separated dimensions");
  bench->add_option("--trials", ba.trials, "Trials per point (median reported)");
  bench->add_option("--seed", ba.seed, "Seed");
  bench->add_option("--exec", ba.exec, "Kernel")->check(CLI::IsMember({"serial", "parallel"}));
  add_format(bench, ba.format);

  GroupArgs ga;
  auto* group = app.add_subcommand("group", "Structure of a named group");
  group->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> group_cmds;
  for (const char* name : {"lcs", "chief", "sylow", "normalizer"}) {
    auto* c = group->add_subcommand(name, std::string("Print the ") +
                                              (std::string(name) == "lcs" ? "lower central series" : name));
    c->add_option("--group", ga.group, "Group name, e.g. heisenberg:3, d8, table:path")->required();
    if (std::string(name) == "sylow") c->add_option("--p", ga.prime, "Only this prime");
    if (std::string(name) == "normalizer") c->add_option("--subgroup", ga.subgroup, "Generator ids")->required();
    add_format(c, ga.format);
    group_cmds.emplace_back(name, c);
  }

  HspArgs ha;
  auto* hsp = app.add_subcommand("hsp", "Hidden subgroup reduction");
  hsp->require_subcommand(1);
  auto* demo = hsp->add_subcommand("demo", "Recover a hidden subgroup through simulated HSMC queries");
  demo->add_option("--group", ha.group, "Group name")->required();
  demo->add_option("--hidden", ha.hidden, "Generator ids of the hidden subgroup")->required();
  add_format(demo, ha.format);

  QsimArgs qa;
  auto* qsim = app.add_subcommand("qsim", "Subgroup-state simulator");
  qsim->require_subcommand(1);
  auto* verify = qsim->add_subcommand("verify", "Run the simulator identities on a group");
  verify->add_option("--group", qa.group, "Group name")->required();
  verify->add_option("--subgroup", qa.subgroup, "Generator ids of one hidden subgroup");
  verify->add_flag("--all", qa.all, "Use every subgroup as the hidden one");
  verify->add_option("--max-conversions", qa.max_conversions, "Cap on (H, L) main conversions");
  verify->add_option("--exec", qa.exec, "Kernel")->check(CLI::IsMember({"serial", "parallel"}));
  add_format(verify, qa.format);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*zerosum) return cmd_zerosum(za, out);
    if (*lengths) return cmd_lengths(la, out);
    if (*bench) return cmd_bench(ba, out);
    if (*group) {
      for (const auto& [name, c] : group_cmds) {
        if (*c) return cmd_group(name, ga, out);
      }
    }
    if (*demo) return cmd_hsp_demo(ha, out);
    if (*verify) return cmd_qsim_verify(qa, out);
  } catch (const SequenceTooShort& e) {
    err << "error: " << e.what() << '\n' << "required=" << e.required() << " actual=" << e.actual() << '\n';
    return kExitTooShort;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

}  // namespace nilhsp::cli
