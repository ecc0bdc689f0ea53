#pragma once

// Command-line front end. run_cli() is the whole program; main() only
// forwards to it so tests can drive every subcommand in-process.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "roundpack/roundpack.hpp"

namespace roundpack::cli {

enum Exit { kOk = 0, kInvalid = 1, kParse = 2, kPrecondition = 3 };

struct SolveOutcome {
  Problem problem = Problem::Ufp;
  SapPacking packing;  // height_of empty for UFP
  std::vector<std::pair<std::string, std::string>> report;
};

inline Problem parse_problem(const std::string& s) {
  if (s == "ufp") return Problem::Ufp;
  if (s == "sap") return Problem::Sap;
  throw ParseError("problem must be ufp or sap, got '" + s + "'");
}

inline std::string fmt_ratio(int rounds, Amount r) {
  if (r <= 0) return "-";
  std::ostringstream o;
  o << std::fixed << std::setprecision(3) << static_cast<double>(rounds) / static_cast<double>(r);
  return o.str();
}

// SAP heights for unit-style UFP rounds; rounds that do not convert are
// split by ufp_round_to_sap.
inline SapPacking ufp_rounds_to_sap(const Instance& inst, const UfpPacking& u) {
  SapPacking out{std::vector<int>(inst.jobs.size(), -1), std::vector<Amount>(inst.jobs.size(), -1), 0};
  std::vector<std::vector<int>> members(static_cast<std::size_t>(u.rounds));
  for (std::size_t j = 0; j < u.round_of.size(); ++j) members[static_cast<std::size_t>(u.round_of[j])].push_back(static_cast<int>(j));
  for (const auto& ids : members) {
    for (const auto& round : ufp_round_to_sap(inst, ids)) {
      for (const auto& [id, h] : round) {
        out.round_of[static_cast<std::size_t>(id)] = out.rounds;
        out.height_of[static_cast<std::size_t>(id)] = h;
      }
      ++out.rounds;
    }
  }
  return out;
}

inline SolveOutcome solve_path(const Instance& inst, Problem problem, const std::string& algo, double eps, std::uint64_t seed) {
  SolveOutcome out;
  out.problem = problem;
  const bool sap = problem == Problem::Sap;
  UniformOptions uopt;
  uopt.eps = eps;
  auto& rep = out.report;
  if (algo == "uniform") {
    const UniformResult r = solve_uniform(inst, problem, uopt);
    out.packing = r.packing;
    rep.push_back({"case", r.case_taken});
    rep.push_back({"subcase", to_string(r.subcase)});
    rep.push_back({"fallback", r.fallback ? "1" : "0"});
    rep.push_back({"large_rounds", std::to_string(r.large_rounds)});
    rep.push_back({"small_rounds", std::to_string(r.small_rounds)});
  } else if (algo == "nba") {
    if (sap) {
      const NbaSapResult r = nba_sap(inst, uopt);
      out.packing = r.packing;
      std::string levels;
      for (const auto& [lvl, k] : r.level_rounds) levels += (levels.empty() ? "" : ";") + std::to_string(lvl) + ":" + std::to_string(k);
      rep.push_back({"level_rounds", levels.empty() ? "-" : levels});
    } else {
      const NbaUfpResult r = nba_ufp(inst);
      out.packing = {r.packing.round_of, {}, r.packing.rounds};
      rep.push_back({"sparse_rounds", std::to_string(r.small_sparse_rounds)});
      rep.push_back({"dense_rounds", std::to_string(r.small_dense_rounds)});
      rep.push_back({"large_rounds", std::to_string(r.large_rounds)});
    }
  } else if (algo == "general") {
    const GeneralResult r = solve_general(inst, problem, seed, uopt);
    out.packing = r.packing;
    rep.push_back({"omega", std::to_string(r.diag.omega)});
    rep.push_back({"groups", std::to_string(r.diag.groups)});
    rep.push_back({"colors", std::to_string(r.diag.colors)});
    rep.push_back({"large_rounds", std::to_string(r.diag.large_rounds)});
    rep.push_back({"small_rounds", std::to_string(r.diag.small_rounds)});
    rep.push_back({"small_nba", r.diag.small_nba ? "1" : "0"});
  } else if (algo == "unit") {
    const UfpPacking u = pack_unit(inst);
    out.packing = sap ? ufp_rounds_to_sap(inst, u) : SapPacking{u.round_of, {}, u.rounds};
  } else if (algo == "oracle") {
    if (sap) out.packing = exact_sap(inst).packing;
    else {
      const ExactUfp e = exact_ufp(inst);
      out.packing = {e.packing.round_of, {}, e.packing.rounds};
    }
  } else {
    throw ParseError("unknown algorithm '" + algo + "'");
  }
  return out;
}

inline Verdict verify_outcome(const Instance& inst, const SolveOutcome& o) {
  return o.problem == Problem::Sap ? verify_sap(inst, o.packing) : verify_ufp(inst, o.packing.as_ufp());
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << '\n';
    return kPrecondition;
  } catch (const TooLarge& e) {
    err << "too large: " << e.what() << '\n';
    return kPrecondition;
  } catch (const InternalBoundViolated& e) {
    err << "internal bound violated: " << e.what() << '\n';
    return kInvalid;
  }
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_instance(in);
}

inline TreeInstance load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_tree(in);
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  return f;
}

struct SolveArgs {
  std::string path, problem = "ufp", algo = "general", out, report;
  double eps = 0.5;
  std::uint64_t seed = 1;
};

inline int cmd_solve(const SolveArgs& a, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> rep;
  SapPacking packing;
  Problem problem = parse_problem(a.problem);
  if (a.algo == "tree") {
    if (problem != Problem::Ufp) throw PreconditionError("tree solver supports --problem=ufp only");
    const TreeInstance t = load_tree(a.path);
    const TreeSolveResult r = solve_tree(t);
    if (auto bad = verify_tree_ufp(t, r.packing)) throw InternalBoundViolated("tree packing invalid: " + bad->describe());
    packing = {r.packing.round_of, {}, r.packing.rounds};
    Amount L = 0;
    for (Amount l : tree_profile(t).loads) L = std::max(L, l);
    rep = {{"rounds", std::to_string(r.packing.rounds)}, {"r", std::to_string(r.r)}, {"L", std::to_string(L)},
           {"algo", "tree"},    {"problem", "ufp"},      {"uniform", r.uniform ? "1" : "0"},
           {"medium_rounds", std::to_string(r.medium_rounds)}, {"big_rounds", std::to_string(r.big_rounds)},
           {"small_rounds", std::to_string(r.small_rounds)},   {"spilled", std::to_string(r.spilled)}};
  } else {
    const Instance inst = load_instance(a.path);
    const SolveOutcome o = solve_path(inst, problem, a.algo, a.eps, a.seed);
    if (auto bad = verify_outcome(inst, o)) throw InternalBoundViolated("packing invalid: " + bad->describe());
    packing = o.packing;
    const LoadProfile prof = compute_profile(inst);
    rep = {{"rounds", std::to_string(o.packing.rounds)}, {"r", std::to_string(prof.max_congestion)},
           {"L", std::to_string(prof.max_load)},          {"algo", a.algo}, {"problem", to_string(problem)}};
    rep.insert(rep.end(), o.report.begin(), o.report.end());
  }
  std::ostringstream text;
  for (const auto& [k, v] : rep) text << k << '=' << v << '\n';
  out << text.str();
  if (!a.report.empty()) open_out(a.report) << text.str();
  if (!a.out.empty()) {
    std::ofstream f = open_out(a.out);
    std::vector<std::string> comments;
    for (const auto& [k, v] : rep) comments.push_back(k + '=' + v);
    write_packing(f, problem, packing, comments);
  }
  return kOk;
}

inline int cmd_verify(const std::string& inst_path, const std::string& pack_path, bool tree, std::ostream& out) {
  std::ifstream pin(pack_path);
  if (!pin) throw ParseError("cannot open '" + pack_path + "'");
  Verdict v;
  try {
    if (tree) {
      const TreeInstance t = load_tree(inst_path);
      const PackingFile pf = read_packing(pin, t.n());
      if (pf.problem != Problem::Ufp) throw ParseError("tree packings must be UFP");
      v = verify_tree_ufp(t, pf.ufp());
    } else {
      const Instance inst = load_instance(inst_path);
      const PackingFile pf = read_packing(pin, inst.n());
      v = pf.problem == Problem::Sap ? verify_sap(inst, pf.packing) : verify_ufp(inst, pf.ufp());
    }
  } catch (const UnassignedJob& e) {
    out << "invalid: " << e.what() << '\n';
    return kInvalid;
  }
  if (v) {
    out << "invalid: " << v->describe() << '\n';
    return kInvalid;
  }
  out << "valid\n";
  return kOk;
}

struct GenerateArgs {
  std::string kind = "random", out, sidecar;
  std::uint64_t seed = 1;
  RandomSpec random;
  TreeSpec tree;
  int q = 1;
};

inline int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  std::ostringstream text;
  if (a.kind == "random") {
    write_instance(text, random_instance(a.random, a.seed));
  } else if (a.kind == "tree") {
    Rng rng(a.seed);
    write_tree(text, random_tree(a.tree, rng));
  } else if (a.kind == "gadget") {
    const Gadget g = build_gadget(gen_2b3dm(a.q, a.seed));
    text << "# gadget q=" << a.q << " gamma=" << g.ints.gamma << " dummies=" << g.dummies
         << (g.dummies_clamped ? " (clamped)" : "") << '\n';
    write_instance(text, g.instance);
    std::string side = a.sidecar;
    if (side.empty() && !a.out.empty()) side = a.out + ".roles";
    if (!side.empty()) {
      std::ofstream f = open_out(side);
      write_gadget_sidecar(f, g);
    }
  } else {
    throw ParseError("unknown kind '" + a.kind + "'");
  }
  if (a.out.empty()) out << text.str();
  else open_out(a.out) << text.str();
  return kOk;
}

struct BenchArgs {
  std::string dir, algos = "uniform,nba,general,unit,oracle", problems = "ufp,sap", out;
  double eps = 0.5;
  std::uint64_t seed = 1;
  bool timing = false;
  int jobs = 1;
};

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline const char* kBenchHeader = "instance,algo,problem,n,m,L,r,rounds,ratio,wall_ms";

// One CSV row per (instance, problem, algo). Inapplicable combinations
// report NA with the reason code in the rounds column.
inline int cmd_bench(const BenchArgs& a, std::ostream& out) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(a.dir)) throw ParseError("corpus directory '" + a.dir + "' not found");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<std::string> algos = split_list(a.algos);
  std::vector<Problem> problems;
  for (const auto& p : split_list(a.problems)) problems.push_back(parse_problem(p));
  for (const auto& al : algos)
    if (al != "uniform" && al != "nba" && al != "general" && al != "unit" && al != "oracle")
      throw ParseError("unknown algorithm '" + al + "'");

  std::vector<Instance> insts;
  for (const auto& f : files) insts.push_back(load_instance(f.string()));

  struct Task {
    std::size_t file;
    Problem problem;
    std::string algo;
  };
  std::vector<Task> tasks;
  for (std::size_t f = 0; f < files.size(); ++f)
    for (Problem p : problems)
      for (const auto& al : algos) tasks.push_back({f, p, al});
  std::vector<std::string> rows(tasks.size());
  std::atomic<bool> any_invalid{false};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < tasks.size();) {
      const Task& t = tasks[k];
      const Instance& inst = insts[t.file];
      const LoadProfile prof = compute_profile(inst);
      std::string rounds = "NA", ratio = "-", wall = "-";
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const SolveOutcome o = solve_path(inst, t.problem, t.algo, a.eps, a.seed);
        if (verify_outcome(inst, o)) {
          rounds = "INVALID";
          any_invalid = true;
        } else {
          rounds = std::to_string(o.packing.rounds);
          ratio = fmt_ratio(o.packing.rounds, prof.max_congestion);
        }
      } catch (const TooLarge&) {
        rounds = "NA:too_large";
      } catch (const PreconditionError&) {
        rounds = "NA:precondition";
      } catch (const InternalBoundViolated&) {
        rounds = "INVALID";
        any_invalid = true;
      }
      if (a.timing) {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream o;
        o << std::fixed << std::setprecision(3) << ms;
        wall = o.str();
      }
      std::ostringstream row;
      row << files[t.file].filename().string() << ',' << t.algo << ',' << to_string(t.problem) << ',' << inst.n() << ','
          << inst.m << ',' << prof.max_load << ',' << prof.max_congestion << ',' << rounds << ',' << ratio << ',' << wall;
      rows[k] = row.str();
    }
  };
  const int threads = std::max(1, a.jobs);
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << kBenchHeader << '\n';
  for (const auto& r : rows) csv << r << '\n';
  if (a.out.empty()) out << csv.str();
  else open_out(a.out) << csv.str();
  return any_invalid ? kInvalid : kOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Round-UFP / Round-SAP solver, verifier, generator and bench runner", "roundpack"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Pack an instance into rounds");
  solve->add_option("instance", sa.path, "Instance file")->required();
  solve->add_option("--problem", sa.problem, "ufp or sap")->check(CLI::IsMember({"ufp", "sap"}));
  solve->add_option("--algo", sa.algo, "uniform, nba, general, tree, unit or oracle")
      ->check(CLI::IsMember({"uniform", "nba", "general", "tree", "unit", "oracle"}));
  solve->add_option("--eps", sa.eps, "Accuracy parameter of the uniform pipeline")->check(CLI::Range(1e-9, 0.999999));
  solve->add_option("--seed", sa.seed, "Random seed");
  solve->add_option("--out", sa.out, "Write the packing here");
  solve->add_option("--report", sa.report, "Also write the report here");

  std::string vi, vp;
  bool vtree = false;
  auto* verify = app.add_subcommand("verify", "Check a packing against an instance");
  verify->add_option("instance", vi, "Instance file")->required();
  verify->add_option("packing", vp, "Packing file")->required();
  verify->add_flag("--tree", vtree, "Instance is in tree format");

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Emit a random, tree or hardness-gadget instance");
  gen->add_option("--kind", ga.kind, "random, tree or gadget")->check(CLI::IsMember({"random", "tree", "gadget"}));
  gen->add_option("--seed", ga.seed, "Random seed");
  gen->add_option("--out", ga.out, "Output file (default stdout)");
  gen->add_option("--sidecar", ga.sidecar, "Gadget role file (default <out>.roles)");
  gen->add_option("--n", ga.random.n, "Job count")->check(CLI::NonNegativeNumber);
  gen->add_option("--m", ga.random.m, "Edge count (random)")->check(CLI::PositiveNumber);
  gen->add_option("--cmin", ga.random.cmin, "Smallest capacity")->check(CLI::PositiveNumber);
  gen->add_option("--cmax", ga.random.cmax, "Largest capacity")->check(CLI::PositiveNumber);
  gen->add_option("--dmin", ga.random.dmin, "Smallest demand")->check(CLI::PositiveNumber);
  gen->add_option("--dmax", ga.random.dmax, "Largest demand")->check(CLI::PositiveNumber);
  gen->add_option("--max-span", ga.random.max_span, "Longest job span (0 = any)")->check(CLI::NonNegativeNumber);
  gen->add_flag("--uniform", ga.random.uniform, "Equal capacities");
  gen->add_flag("--nba", ga.random.nba, "Demands at most the smallest capacity");
  gen->add_option("--vertices", ga.tree.N, "Tree vertex count")->check(CLI::PositiveNumber);
  gen->add_flag("--small", ga.tree.small, "Tree jobs with 5d <= bottleneck");
  gen->add_option("--q", ga.q, "Gadget size")->check(CLI::Range(1, 16));

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run algorithms over a corpus directory and emit CSV");
  bench->add_option("corpus", ba.dir, "Directory of instance files")->required();
  bench->add_option("--algos", ba.algos, "Comma-separated algorithms");
  bench->add_option("--problems", ba.problems, "Comma-separated problems");
  bench->add_option("--eps", ba.eps, "Accuracy parameter")->check(CLI::Range(1e-9, 0.999999));
  bench->add_option("--seed", ba.seed, "Random seed");
  bench->add_option("--out", ba.out, "CSV file (default stdout)");
  bench->add_flag("--timing", ba.timing, "Fill wall_ms (output no longer reproducible)");
  bench->add_option("--jobs", ba.jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kParse;
  }

  return guarded(err, [&] {
    if (*solve) return cmd_solve(sa, out);
    if (*verify) return cmd_verify(vi, vp, vtree, out);
    if (*gen) {
      ga.tree.n = ga.random.n;
      ga.tree.cmin = ga.random.cmin;
      ga.tree.cmax = ga.random.cmax;
      ga.tree.dmax = ga.random.dmax;
      ga.tree.uniform = ga.random.uniform;
      ga.tree.nba = ga.random.nba;
      return cmd_generate(ga, out);
    }
    return cmd_bench(ba, out);
  });
}

}  // namespace roundpack::cli
