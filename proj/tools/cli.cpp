#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trapspace/analysis.hpp"
#include "trapspace/dynamics.hpp"
#include "trapspace/encoding.hpp"
#include "trapspace/error.hpp"
#include "trapspace/network_format.hpp"
#include "trapspace/primes.hpp"
#include "trapspace/randgen.hpp"
#include "trapspace/solver.hpp"

namespace trapspace::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxListedStates = 64;

struct GlobalFlags {
  bool json = false;
  double timeout_s = 600.0;
  std::size_t limit = 100000;
  std::size_t support_cap = kDefaultSupportCap;
  std::optional<std::size_t> stg_cap;

  SolverOptions solver() const {
    SolverOptions o;
    o.limit = limit;
    o.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000.0));
    o.support_cap = support_cap;
    return o;
  }

  DynamicsCaps caps() const {
    DynamicsCaps c;
    if (stg_cap) c.sync = c.async = *stg_cap;
    c.support = support_cap;
    return c;
  }
};

BooleanNetwork load(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return parse_network(buffer.str());
  }
  return read_network(path);
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

Json space_json(const Subspace& p, const BooleanNetwork& net) {
  Json j = Json::object();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.is_fixed(i)) j[net.name(i)] = p.value(i) ? 1 : 0;
  }
  return j;
}

Json literals_json(std::span<const Literal> literals, const BooleanNetwork& net) {
  Json j = Json::object();
  for (const Literal& l : literals) j[net.name(l.variable)] = l.value ? 1 : 0;
  return j;
}

Json stats_json(const SolveStats& s) {
  return Json{{"arcs", s.arc_count},
              {"iterations", s.iterations},
              {"nodes", s.nodes},
              {"elapsed_ms", s.elapsed_ms}};
}

std::string join_names(const BooleanNetwork& net, std::span<const std::size_t> vars) {
  std::string s;
  for (std::size_t v : vars) {
    if (!s.empty()) s += ' ';
    s += net.name(v);
  }
  return s;
}

// Reports an incomplete enumeration on `err`; the caller's exit code.
int finish(SolveStatus status, std::ostream& err) {
  if (status == SolveStatus::kComplete) return kExitOk;
  err << "warning: enumeration " << to_string(status) << "; results are partial\n";
  return kExitResource;
}

int print_report(const TrapSpaceReport& r, const BooleanNetwork& net, bool json,
                 std::ostream& out, std::ostream& err) {
  if (json) {
    Json spaces = Json::array();
    Json witnesses = Json::array();
    for (const Subspace& p : r.spaces) spaces.push_back(space_json(p, net));
    for (const ArcSetSolution& w : r.witnesses) witnesses.push_back(w.arcs);
    Json j{{"mode", std::string(to_string(r.kind))},
           {"spaces", spaces},
           {"witnesses", witnesses},
           {"stats", stats_json(r.stats)},
           {"status", std::string(to_string(r.status))}};
    out << j.dump(2) << '\n';
  } else {
    for (const Subspace& p : r.spaces) out << p.to_string() << '\n';
  }
  return finish(r.status, err);
}

UpdateRule parse_rule(const std::string& s) {
  return s == "sync" ? UpdateRule::kSynchronous : UpdateRule::kAsynchronous;
}

// ---------------------------------------------------------------------------

struct BenchRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t arcs = 0;
  std::size_t min_count = 0;
  std::size_t max_count = 0;
  double min_fixed = 0.0;
  double max_fixed = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
  std::string status;
};

double mean_fixed(const std::vector<Subspace>& spaces) {
  if (spaces.empty()) return 0.0;
  double total = 0.0;
  for (const Subspace& p : spaces) total += static_cast<double>(p.fixed_count());
  return total / static_cast<double>(spaces.size());
}

BenchRow bench_one(std::size_t n, std::uint64_t seed, double k, std::size_t degree_cap,
                   const SolverOptions& options) {
  const BooleanNetwork net = generate(GeneratorConfig{n, k, seed, degree_cap});
  const PrimeImplicantGraph graph = build_graph(net, options.support_cap);
  const TrapSpaceReport lo = min_trap_spaces(graph, options);
  const TrapSpaceReport hi = max_trap_spaces(graph, options);
  BenchRow row;
  row.n = n;
  row.seed = seed;
  row.arcs = graph.size();
  row.min_count = lo.spaces.size();
  row.max_count = hi.spaces.size();
  row.min_fixed = mean_fixed(lo.spaces);
  row.max_fixed = mean_fixed(hi.spaces);
  row.min_ms = lo.stats.elapsed_ms;
  row.max_ms = hi.stats.elapsed_ms;
  row.status = !lo.complete() ? std::string(to_string(lo.status))
                              : std::string(to_string(hi.status));
  return row;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal and maximal trap spaces of Boolean networks", "trapspace"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--timeout", g.timeout_s, "Solver time limit in seconds")
      ->check(CLI::PositiveNumber);
  app.add_option("--limit", g.limit, "Maximum number of solutions per enumeration")
      ->check(CLI::PositiveNumber);
  app.add_option("--support-cap", g.support_cap,
                 "Largest function support tabulated exactly")
      ->check(CLI::Range(1, 24));
  app.add_option("--stg-cap", g.stg_cap,
                 "Largest n for explicit state transition graphs (both rules)")
      ->check(CLI::Range(1, 30));

  std::string file;
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("network", file, "Network file ('-' for stdin)")->required();
  };

  CLI::App* primes = app.add_subcommand("primes", "List the prime implicant graph");
  add_file(primes);

  std::string ts_mode = "min";
  CLI::App* trapspaces = app.add_subcommand("trapspaces", "Enumerate trap spaces");
  add_file(trapspaces);
  trapspaces->add_option("--mode", ts_mode, "min, max or all")
      ->check(CLI::IsMember({"min", "max", "all"}));

  CLI::App* steady = app.add_subcommand("steady", "Enumerate steady states");
  add_file(steady);

  std::string update = "async";
  CLI::App* attractors_cmd =
      app.add_subcommand("attractors", "Attractors of the state transition graph");
  add_file(attractors_cmd);
  attractors_cmd->add_option("--update", update, "sync or async")
      ->check(CLI::IsMember({"sync", "async"}));

  std::string space;
  bool unchecked = false;
  std::string output;
  CLI::App* reduce_cmd =
      app.add_subcommand("reduce", "Divide out the variables fixed by a trap space");
  add_file(reduce_cmd);
  reduce_cmd->add_option("--space", space, "Subspace pattern such as 1---")->required();
  reduce_cmd->add_flag("--unchecked", unchecked, "Skip the trap space check");
  reduce_cmd->add_option("-o,--output", output, "Output file");

  CLI::App* bound = app.add_subcommand("bound", "Lower bound on cyclic attractors");
  add_file(bound);

  CLI::App* commitment =
      app.add_subcommand("commitment", "Attractors inside each maximal trap space (CSV)");
  add_file(commitment);

  CLI::App* audit = app.add_subcommand(
      "audit", "Attractors per minimal trap space and attractors outside all of them");
  add_file(audit);
  audit->add_option("--update", update, "sync or async")
      ->check(CLI::IsMember({"sync", "async"}));

  CLI::App* check = app.add_subcommand(
      "check", "Compare solver results with exhaustive enumeration (exit 4 on mismatch)");
  add_file(check);

  GeneratorConfig gen;
  CLI::App* random = app.add_subcommand("random", "Write a random N-K network");
  random->add_option("--n", gen.n, "Number of variables")->required()
      ->check(CLI::PositiveNumber);
  random->add_option("--k", gen.k, "Mean in-degree")->check(CLI::NonNegativeNumber);
  random->add_option("--seed", gen.seed, "Generator seed");
  random->add_option("--degree-cap", gen.degree_cap, "Maximum in-degree")
      ->check(CLI::Range(1, 16));
  random->add_option("-o,--output", output, "Output file");

  std::vector<std::size_t> bench_n{10, 20, 30};
  std::size_t repetitions = 5;
  std::size_t jobs = 1;
  CLI::App* bench = app.add_subcommand(
      "bench", "Random-network benchmark loop; CSV with one row per network");
  bench->add_option("--n", bench_n, "Network sizes")->expected(1, -1);
  bench->add_option("--repetitions", repetitions, "Networks per size")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", gen.seed, "Seed of the first network per size");
  bench->add_option("--k", gen.k, "Mean in-degree")->check(CLI::NonNegativeNumber);
  bench->add_option("--degree-cap", gen.degree_cap, "Maximum in-degree")
      ->check(CLI::Range(1, 16));
  bench->add_option("--jobs", jobs, "Parallel workers")->check(CLI::Range(1, 256));

  std::string format = "asp";
  std::string enc_mode = "max";
  CLI::App* encode = app.add_subcommand("encode", "Emit an ASP or ILP encoding");
  add_file(encode);
  encode->add_option("--format", format, "asp or ilp")
      ->check(CLI::IsMember({"asp", "ilp"}));
  encode->add_option("--mode", enc_mode,
                     "Arc-set extremum: max (yields minimal trap spaces) or min "
                     "(non-empty, yields maximal trap spaces)")
      ->check(CLI::IsMember({"min", "max"}));
  encode->add_option("-o,--output", output, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (!app.get_subcommands().empty()) {
      err << app.get_subcommands().front()->help();
    } else {
      err << app.help();
    }
    return kExitUsage;
  }

  try {
    const SolverOptions options = g.solver();
    const DynamicsCaps caps = g.caps();

    if (primes->parsed()) {
      const BooleanNetwork net = load(file);
      const PrimeImplicantGraph graph = build_graph(net, g.support_cap);
      if (g.json) {
        Json arcs = Json::array();
        for (const HyperArc& a : graph.arcs()) {
          arcs.push_back(Json{{"id", a.id},
                              {"tail", literals_json(a.tail, net)},
                              {"head", literals_json(std::span(&a.head, 1), net)}});
        }
        out << Json{{"count", graph.size()}, {"arcs", arcs}}.dump(2) << '\n';
      } else {
        for (const HyperArc& a : graph.arcs()) out << format_arc(a, net) << '\n';
      }
      return kExitOk;
    }

    if (trapspaces->parsed()) {
      const BooleanNetwork net = load(file);
      const PrimeImplicantGraph graph = build_graph(net, g.support_cap);
      const TrapSpaceReport r = ts_mode == "min"   ? min_trap_spaces(graph, options)
                                : ts_mode == "max" ? max_trap_spaces(graph, options)
                                                   : all_trap_spaces(graph, options);
      return print_report(r, net, g.json, out, err);
    }

    if (steady->parsed()) {
      const BooleanNetwork net = load(file);
      return print_report(steady_states(net, options), net, g.json, out, err);
    }

    if (attractors_cmd->parsed()) {
      const BooleanNetwork net = load(file);
      const UpdateRule rule = parse_rule(update);
      const auto found = attractors(build_stg(net, rule, caps));
      Json list = Json::array();
      for (const auto& a : found) {
        const Subspace span = smallest_enclosing_subspace(net.size(), a);
        if (g.json) {
          Json states = Json::array();
          for (StateCode x : a) states.push_back(state_to_string(net.size(), x));
          list.push_back(Json{{"size", a.size()},
                              {"span", span.to_string()},
                              {"states", states}});
          continue;
        }
        out << a.size() << ' ' << span.to_string();
        const std::size_t shown = std::min(a.size(), kMaxListedStates);
        for (std::size_t i = 0; i < shown; ++i) {
          out << (i == 0 ? ' ' : ',') << state_to_string(net.size(), a[i]);
        }
        if (shown < a.size()) out << ",...";
        out << '\n';
      }
      if (g.json) {
        out << Json{{"update", update}, {"attractors", list}}.dump(2) << '\n';
      }
      return kExitOk;
    }

    if (reduce_cmd->parsed()) {
      const BooleanNetwork net = load(file);
      const Subspace p = Subspace::parse(space);
      const ReducedNetwork r = reduce(net, p, !unchecked, g.support_cap);
      if (g.json) {
        Json functions = Json::object();
        for (std::size_t i = 0; i < r.network.size(); ++i) {
          functions[r.network.name(i)] =
              to_string(r.network.function(i), r.network.variables());
        }
        emit(output,
             Json{{"space", p.to_string()}, {"functions", functions}}.dump(2) + "\n", out);
      } else {
        emit(output, format_network(r.network), out);
      }
      return kExitOk;
    }

    if (bound->parsed()) {
      const BooleanNetwork net = load(file);
      const CyclicAttractorBound b = cyclic_attractor_lower_bound(net, options);
      if (g.json) {
        Json witnesses = Json::array();
        for (const CyclicWitness& w : b.witnesses) {
          Json free = Json::array();
          for (std::size_t v : w.free_variables) free.push_back(net.name(v));
          witnesses.push_back(Json{{"space", space_json(w.space, net)}, {"free", free}});
        }
        out << Json{{"lower_bound", b.count},
                    {"witnesses", witnesses},
                    {"status", std::string(to_string(b.status))}}
                   .dump(2)
            << '\n';
      } else {
        out << "cyclic attractors >= " << b.count << '\n';
        for (const CyclicWitness& w : b.witnesses) {
          out << w.space.to_string() << " free: " << join_names(net, w.free_variables)
              << '\n';
        }
      }
      return finish(b.status, err);
    }

    if (commitment->parsed()) {
      const BooleanNetwork net = load(file);
      const CommitmentTable t = commitment_table(net, options, caps);
      if (g.json) {
        auto row = [](const std::optional<std::vector<std::size_t>>& r) {
          return r ? Json(*r) : Json(nullptr);
        };
        Json columns = Json::array();
        for (const Subspace& p : t.columns) columns.push_back(p.to_string());
        out << Json{{"columns", columns},
                    {"steady", t.steady},
                    {"sync_cyclic", row(t.sync_cyclic)},
                    {"async_cyclic", row(t.async_cyclic)},
                    {"status", std::string(to_string(t.status))}}
                   .dump(2)
            << '\n';
      } else {
        out << to_csv(t);
      }
      return finish(t.status, err);
    }

    if (audit->parsed()) {
      const BooleanNetwork net = load(file);
      const AttractorAudit a = attractor_trapspace_audit(net, parse_rule(update), options, caps);
      if (g.json) {
        Json minimal = Json::array();
        for (const auto& e : a.minimal) {
          Json inside = Json::array();
          for (std::size_t k : e.attractors) {
            inside.push_back(Json{{"size", a.attractors[k].size()},
                                  {"span", a.enclosing[k].to_string()},
                                  {"spans_space", a.enclosing[k] == e.space}});
          }
          minimal.push_back(Json{{"space", e.space.to_string()}, {"attractors", inside}});
        }
        Json outside = Json::array();
        for (std::size_t k : a.outside) outside.push_back(a.enclosing[k].to_string());
        out << Json{{"update", update},
                    {"minimal", minimal},
                    {"outside", outside},
                    {"one_spanning_attractor_each", a.one_spanning_attractor_each()}}
                   .dump(2)
            << '\n';
      } else {
        for (const auto& e : a.minimal) {
          std::size_t spanning = 0;
          for (std::size_t k : e.attractors) spanning += a.enclosing[k] == e.space ? 1 : 0;
          out << e.space.to_string() << " attractors: " << e.attractors.size()
              << " spanning: " << spanning << '\n';
        }
        out << "outside minimal trap spaces: " << a.outside.size() << '\n';
        for (std::size_t k : a.outside) {
          out << "  " << a.attractors[k].size() << ' ' << a.enclosing[k].to_string() << '\n';
        }
      }
      return finish(a.status, err);
    }

    if (check->parsed()) {
      const BooleanNetwork net = load(file);
      const PrimeImplicantGraph graph = build_graph(net, g.support_cap);
      struct Case {
        const char* name;
        TrapSpaceReport report;
        std::vector<Subspace> oracle;
      };
      std::vector<Case> cases;
      cases.push_back({"min", min_trap_spaces(graph, options),
                       brute_force_trap_spaces(net, TrapSpaceSelection::kMinimal, caps)});
      cases.push_back({"max", max_trap_spaces(graph, options),
                       brute_force_trap_spaces(net, TrapSpaceSelection::kMaximal, caps)});
      cases.push_back({"all", all_trap_spaces(graph, options),
                       brute_force_trap_spaces(net, TrapSpaceSelection::kAll, caps)});
      std::vector<Subspace> fixed;
      for (const Subspace& p : cases.back().oracle) {
        if (p.is_state()) fixed.push_back(p);
      }
      cases.push_back({"steady", steady_states(graph, options), fixed});
      bool ok = true;
      for (const Case& c : cases) {
        if (!c.report.complete()) return finish(c.report.status, err);
        if (c.report.spaces != c.oracle) {
          ok = false;
          out << "MISMATCH " << c.name << ": solver " << c.report.spaces.size()
              << " spaces, exhaustive " << c.oracle.size() << '\n';
        }
      }
      if (!ok) return kExitMismatch;
      out << "OK\n";
      return kExitOk;
    }

    if (random->parsed()) {
      emit(output, format_network(generate(gen)), out);
      return kExitOk;
    }

    if (bench->parsed()) {
      struct Task {
        std::size_t n;
        std::uint64_t seed;
      };
      std::vector<Task> tasks;
      for (std::size_t n : bench_n) {
        for (std::size_t r = 0; r < repetitions; ++r) tasks.push_back({n, gen.seed + r});
      }
      std::vector<BenchRow> rows(tasks.size());
      std::vector<std::string> failures(tasks.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
          try {
            rows[i] = bench_one(tasks[i].n, tasks[i].seed, gen.k, gen.degree_cap, options);
          } catch (const std::exception& e) {
            failures[i] = e.what();
          }
        }
      };
      std::vector<std::thread> pool;
      for (std::size_t j = 1; j < std::min(jobs, tasks.size()); ++j) pool.emplace_back(worker);
      worker();
      for (std::thread& t : pool) t.join();

      out << "# in-degree ~ Poisson(k) clamped to [1, min(degree_cap, n)]; k=" << gen.k
          << " degree_cap=" << gen.degree_cap << '\n';
      out << "n,seed,arcs,min_count,max_count,min_mean_fixed,max_mean_fixed,min_ms,max_ms,"
             "status\n";
      out << std::fixed;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!failures[i].empty()) {
          out << tasks[i].n << ',' << tasks[i].seed << ",,,,,,,,error: " << failures[i]
              << '\n';
          continue;
        }
        const BenchRow& r = rows[i];
        out << r.n << ',' << r.seed << ',' << r.arcs << ',' << r.min_count << ','
            << r.max_count << ',' << std::setprecision(3) << r.min_fixed << ','
            << r.max_fixed << ',' << r.min_ms << ',' << r.max_ms << ',' << r.status
            << '\n';
      }
      return kExitOk;
    }

    if (encode->parsed()) {
      const BooleanNetwork net = load(file);
      const PrimeImplicantGraph graph = build_graph(net, g.support_cap);
      const ArcSetExtremum sense =
          enc_mode == "min" ? ArcSetExtremum::kMinimal : ArcSetExtremum::kMaximal;
      emit(output, format == "asp" ? emit_asp(graph, sense) : emit_ilp(graph, sense), out);
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResource;
  }
  return kExitUsage;
}

}  // namespace trapspace::cli
