#pragma once

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "census.hpp"
#include "detperm.hpp"
#include "digraph.hpp"
#include "errors.hpp"
#include "hopf.hpp"
#include "identities.hpp"
#include "oracle.hpp"

// Command implementations behind tools/cyclehopf.cpp. They write to the given
// streams and return the process exit code.

namespace cyclehopf::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kParseFailure = 1,
  kCapExceeded = 2,
  kMismatch = 3,
};

enum class Method { Conv, ConvDetDPerm, ConvPermDDet, Brute, HopfLog, HopfDynkin };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Conv: return "conv";
    case Method::ConvDetDPerm: return "conv-dperm";
    case Method::ConvPermDDet: return "conv-ddet";
    case Method::Brute: return "brute";
    case Method::HopfLog: return "hopf-log";
    case Method::HopfDynkin: return "hopf-dynkin";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
  for (Method m : {Method::Conv, Method::ConvDetDPerm, Method::ConvPermDDet, Method::Brute, Method::HopfLog,
                   Method::HopfDynkin})
    if (s == method_name(m)) return m;
  return std::nullopt;
}

/// Result of one census run. Counts are exact and serialized as decimal strings.
struct RunReport {
  std::size_t n = 0;
  std::size_t edges = 0;
  std::string method;
  std::map<std::size_t, BigInt> counts;
  std::optional<BigInt> hamiltonian;
  long long elapsed_ms = 0;
  std::optional<bool> verified;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline json to_json(const RunReport& r) {
  json counts = json::object();
  for (const auto& [len, c] : r.counts) counts[std::to_string(len)] = c.str();
  json j;
  j["n"] = r.n;
  j["edges"] = r.edges;
  j["method"] = r.method;
  j["counts"] = std::move(counts);
  j["hamiltonian"] = r.hamiltonian ? json(r.hamiltonian->str()) : json(nullptr);
  j["elapsed_ms"] = r.elapsed_ms;
  j["verified"] = r.verified ? json(*r.verified) : json(nullptr);
  return j;
}

inline RunReport report_from_json(const json& j) {
  RunReport r;
  r.n = j.at("n").get<std::size_t>();
  r.edges = j.at("edges").get<std::size_t>();
  r.method = j.at("method").get<std::string>();
  for (const auto& [len, c] : j.at("counts").items()) r.counts.emplace(std::stoull(len), BigInt(c.get<std::string>()));
  if (!j.at("hamiltonian").is_null()) r.hamiltonian = BigInt(j.at("hamiltonian").get<std::string>());
  r.elapsed_ms = j.at("elapsed_ms").get<long long>();
  if (!j.at("verified").is_null()) r.verified = j.at("verified").get<bool>();
  return r;
}

inline std::string to_tsv(const RunReport& r) {
  std::ostringstream os;
  os << "# n=" << r.n << " edges=" << r.edges << " method=" << r.method << " elapsed_ms=" << r.elapsed_ms
     << " verified=" << (r.verified ? (*r.verified ? "true" : "false") : "null") << '\n';
  os << "length\tcount\n";
  for (const auto& [len, c] : r.counts) os << len << '\t' << c << '\n';
  if (r.hamiltonian) os << "hamiltonian\t" << *r.hamiltonian << '\n';
  return os.str();
}

struct MethodOptions {
  std::optional<std::size_t> max_length;
  std::size_t threads = 1;
  std::size_t size_cap = size_cap_from_env();
  std::size_t budget = kDefaultHikeBudget;
  bool hamiltonian = false;
};

struct MethodResult {
  CycleCensus census;
  std::optional<BigInt> hamiltonian;
};

inline MethodResult run_method(const Digraph& g, Method m, const MethodOptions& o) {
  const std::size_t cap = std::min(o.max_length.value_or(g.order()), g.order());
  MethodResult r;
  switch (m) {
    case Method::Conv:
    case Method::ConvDetDPerm:
    case Method::ConvPermDDet: {
      TableOptions topts;
      topts.size_cap = o.size_cap;
      topts.threads = o.threads;
      const MinorTables t = build_minor_tables(g, topts);
      if (m == Method::Conv) {
        CensusOptions copts;
        copts.max_length = cap;
        copts.threads = o.threads;
        r.census = cycle_census_conv(g, t, copts);
      } else {
        const auto variant = m == Method::ConvDetDPerm ? CensusVariant::DetTimesDPerm : CensusVariant::PermTimesDDet;
        r.census = census_from_derivative(census_derivative(t, variant, cap, o.threads));
      }
      if (o.hamiltonian) r.hamiltonian = hamiltonian_count(g, t);
      return r;
    }
    case Method::Brute: {
      const CycleCensus full = brute_force_census(g, o.budget);
      r.census = full.truncated(cap);
      if (o.hamiltonian) r.hamiltonian = full.at(g.order());
      return r;
    }
    case Method::HopfLog:
    case Method::HopfDynkin: {
      const HikeUniverse u = HikeUniverse::of(g, o.budget);
      const HikeSeries pi = m == Method::HopfLog ? eulerian_idempotent(u) : dynkin_idempotent(u);
      const CycleCensus full = census_of_prime_series(pi, g.order());
      r.census = full.truncated(cap);
      if (o.hamiltonian) r.hamiltonian = full.at(g.order());
      return r;
    }
  }
  throw std::logic_error("unknown method");
}

inline Digraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_edge_list(in);
}

struct CensusArgs {
  std::string file;
  Method method = Method::Conv;
  bool hamiltonian = false;
  std::optional<std::size_t> max_length;
  std::string format = "json";
  std::size_t threads = default_thread_count();
  bool verify = false;
  std::size_t size_cap = size_cap_from_env();
  std::size_t budget = kDefaultHikeBudget;
};

inline long long millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const IdentityViolation& e) {
    err << "identity violated: " << e.what() << '\n';
    return kMismatch;
  }
}

inline int cmd_census(const CensusArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Digraph g = read_graph_file(a.file);
    MethodOptions o;
    o.max_length = a.max_length;
    o.threads = a.threads;
    o.size_cap = a.size_cap;
    o.budget = a.budget;
    o.hamiltonian = a.hamiltonian;

    const auto start = std::chrono::steady_clock::now();
    const MethodResult res = run_method(g, a.method, o);

    RunReport rep;
    rep.n = g.order();
    rep.edges = g.edge_count();
    rep.method = method_name(a.method);
    rep.counts = res.census.nonzero();
    rep.hamiltonian = res.hamiltonian;

    if (a.verify) {
      MethodOptions vo = o;
      vo.hamiltonian = true;
      bool agree = true;
      std::optional<MethodResult> reference;
      for (Method m : {Method::Conv, Method::Brute}) {
        const MethodResult other = m == a.method ? res : run_method(g, m, vo);
        if (other.census != res.census) {
          err << "verification: " << method_name(m) << " census " << other.census.str() << " differs from "
              << res.census.str() << '\n';
          agree = false;
        }
        if (res.hamiltonian && other.hamiltonian && *other.hamiltonian != *res.hamiltonian) {
          err << "verification: " << method_name(m) << " hamiltonian " << *other.hamiltonian << " differs\n";
          agree = false;
        }
      }
      rep.verified = agree;
    }
    rep.elapsed_ms = millis_since(start);

    if (a.format == "tsv") out << to_tsv(rep);
    else out << to_json(rep).dump() << '\n';
    return rep.verified.value_or(true) ? kOk : kMismatch;
  });
}

struct CheckArgs {
  std::string file;
  std::size_t hopf_budget = 50'000;
  std::size_t threads = default_thread_count();
  std::size_t size_cap = size_cap_from_env();
};

/// Runs every identity on the graph; the Hopf-algebra tier is skipped when the
/// hike universe exceeds `hopf_budget`.
inline int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Digraph g = read_graph_file(a.file);
    TableOptions topts;
    topts.size_cap = a.size_cap;
    topts.threads = a.threads;
    const MinorTables t = build_minor_tables(g, topts);

    CycleCensus census(g.order());
    std::vector<IdentityResult> results = integer_identities(g, t, a.threads, &census);

    std::optional<HikeUniverse> universe;
    try {
      universe = HikeUniverse::of(g, a.hopf_budget);
    } catch (const CapExceeded& e) {
      out << "skipped hopf suite: " << e.what() << '\n';
    }
    if (universe) {
      auto more = hopf_identities(g, t, *universe, census);
      results.insert(results.end(), more.begin(), more.end());
    }

    const IdentityResult* first_failure = nullptr;
    for (const auto& r : results) {
      if (r.ok()) {
        out << "ok    " << r.name << '\n';
      } else {
        out << "FAIL  " << r.name << ": " << r.failure << '\n';
        if (!first_failure) first_failure = &r;
      }
    }
    if (first_failure) {
      err << "first failing identity: " << first_failure->name << '\n';
      return kMismatch;
    }
    return kOk;
  });
}

struct BenchArgs {
  std::string dir;
  std::vector<Method> methods = {Method::Conv, Method::ConvDetDPerm, Method::ConvPermDDet,
                                 Method::Brute, Method::HopfLog,     Method::HopfDynkin};
  std::optional<long long> timeout_ms;
  std::size_t threads = default_thread_count();
  std::size_t size_cap = size_cap_from_env();
  std::size_t budget = kDefaultHikeBudget;
};

namespace detail {

struct Timed {
  std::string cell;                    // elapsed ms, or a status word
  std::optional<std::string> census;   // canonical census text when the run succeeded
};

inline Timed run_in_process(const Digraph& g, Method m, const MethodOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const MethodResult r = run_method(g, m, o);
    return {std::to_string(millis_since(start)), r.census.str()};
  } catch (const CapExceeded&) {
    return {"skipped(budget)", std::nullopt};
  } catch (const IdentityViolation&) {
    return {"error(identity)", std::nullopt};
  }
}

// Runs the method in a child process so it can be killed at the deadline.
inline Timed run_with_timeout(const Digraph& g, Method m, const MethodOptions& o, long long timeout_ms) {
  int fds[2];
  if (pipe(fds) != 0) return run_in_process(g, m, o);
  std::cout.flush();
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    return run_in_process(g, m, o);
  }
  if (pid == 0) {
    close(fds[0]);
    const Timed t = run_in_process(g, m, o);
    const std::string msg = t.cell + "\n" + t.census.value_or("") + "\n";
    ssize_t ignored = write(fds[1], msg.data(), msg.size());
    (void)ignored;
    close(fds[1]);
    _exit(0);
  }
  close(fds[1]);
  std::string buf;
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  bool timed_out = false;
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd p{fds[0], POLLIN, 0};
    const int ready = poll(&p, 1, static_cast<int>(left.count()));
    if (ready == 0) continue;
    if (ready < 0) break;
    char chunk[4096];
    const ssize_t got = read(fds[0], chunk, sizeof chunk);
    if (got <= 0) break;
    buf.append(chunk, static_cast<std::size_t>(got));
  }
  close(fds[0]);
  if (timed_out) kill(pid, SIGKILL);
  int status = 0;
  waitpid(pid, &status, 0);
  if (timed_out) return {"timeout", std::nullopt};

  const auto nl = buf.find('\n');
  if (nl == std::string::npos) return {"error", std::nullopt};
  Timed t{buf.substr(0, nl), std::nullopt};
  std::string census = buf.substr(nl + 1);
  if (!census.empty() && census.back() == '\n') census.pop_back();
  if (!census.empty()) t.census = census;
  return t;
}

}  // namespace detail

/// One TSV row per graph file: timings per method and whether all successful
/// methods produced the same census.
inline int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(a.dir, ec)) {
    err << "not a directory: " << a.dir << '\n';
    return kParseFailure;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  out << "graph\tn\tedges\tstatus";
  for (Method m : a.methods) out << '\t' << method_name(m) << "_ms";
  out << "\tagree\n";

  bool any_disagreement = false;
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    Digraph g;
    try {
      g = read_graph_file(path.string());
    } catch (const ParseError& e) {
      out << name << "\t-\t-\terror(parse)";
      for (std::size_t i = 0; i < a.methods.size(); ++i) out << "\t-";
      out << "\t-\n";
      continue;
    }
    out << name << '\t' << g.order() << '\t' << g.edge_count();
    if (g.order() > a.size_cap) {
      out << "\tskipped(cap)";
      for (std::size_t i = 0; i < a.methods.size(); ++i) out << "\t-";
      out << "\tskipped(cap)\n";
      continue;
    }

    MethodOptions o;
    o.threads = a.threads;
    o.size_cap = a.size_cap;
    o.budget = a.budget;
    std::vector<detail::Timed> cells;
    for (Method m : a.methods) {
      cells.push_back(a.timeout_ms ? detail::run_with_timeout(g, m, o, *a.timeout_ms)
                                   : detail::run_in_process(g, m, o));
    }
    std::optional<std::string> reference;
    bool agree = true;
    for (const auto& c : cells) {
      if (!c.census) continue;
      if (!reference) reference = c.census;
      else if (*reference != *c.census) agree = false;
    }
    out << "\tok";
    for (const auto& c : cells) out << '\t' << c.cell;
    out << '\t' << (reference ? (agree ? "yes" : "no") : "-") << '\n';
    if (!agree) any_disagreement = true;
  }
  return any_disagreement ? kMismatch : kOk;
}

}  // namespace cyclehopf::cli
