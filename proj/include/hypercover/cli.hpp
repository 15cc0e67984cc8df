#pragma once

// Command-line front end: verify | construct | reduce | witness | search | end-to-end.
// Exit codes: 0 pass, 1 predicate failure, 2 input or usage error, 3 internal-consistency error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hypercover/constructions.hpp"
#include "hypercover/io.hpp"

namespace hypercover::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2, kInternalError = 3 };

inline unsigned default_threads() {
  if (const char* env = std::getenv("HYPERCOVER_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return static_cast<unsigned>(t);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

class Reporter {
 public:
  Reporter(std::string name, Json args) : start_(std::chrono::steady_clock::now()) {
    report_["command"] = Json{{"name", std::move(name)}, {"args", std::move(args)}};
  }

  Json& operator[](const char* key) { return report_[key]; }

  int finish(std::ostream& out, int code) {
    const auto us =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start_).count();
    if (!report_.contains("verdict"))
      report_["verdict"] = code == kPass ? "pass" : code == kFail ? "fail" : code == kInputError ? "input-error" : "internal-error";
    report_["exit_code"] = std::to_string(code);
    report_["timing"] = Json{{"elapsed_us", std::to_string(us)}};
    out << report_.dump(2) << '\n';
    return code;
  }

 private:
  Json report_;
  std::chrono::steady_clock::time_point start_;
};

struct Input {
  std::string bytes;
  FamilyFile file;
};

inline Input load_family(const std::string& path, std::optional<int> dim) {
  Input in;
  in.bytes = slurp(path);
  std::istringstream ss(in.bytes);
  in.file = read_family(ss, dim);
  return in;
}

}  // namespace detail

struct Options {
  std::string file;
  std::string predicate;
  std::string name;
  std::string mode;
  std::string out;
  std::string trace;
  std::optional<int> n;
  std::optional<int> box;
  bool oracle = false;
  unsigned threads = 1;
};

inline int cmd_verify(const Options& o, std::ostream& out) {
  detail::Reporter rep("verify", Json{{"file", o.file}, {"predicate", o.predicate}});
  const auto in = detail::load_family(o.file, o.n);
  const Family& f = in.file.family;
  rep["input_digest"] = digest(in.bytes);
  Json result{{"predicate", o.predicate},
              {"n", num(f.dim())},
              {"planes", num(f.size())},
              {"duplicates_collapsed", num(in.file.duplicates)},
              {"max_abs_coefficient", num(max_abs_coefficient(f))}};
  bool ok = false;
  Json witness = nullptr;
  if (o.predicate == "cover") {
    const auto c = is_cover(f);
    ok = c.ok;
    if (c.uncovered) witness = Json{{"uncovered_vertex", to_json(*c.uncovered)}};
  } else if (o.predicate == "skew") {
    const auto c = is_skew_cover(f);
    ok = c.ok;
    if (!ok) {
      witness = Json::object();
      if (c.uncovered) witness["uncovered_vertex"] = to_json(*c.uncovered);
      if (c.non_skew_plane) witness["non_skew_plane"] = num(*c.non_skew_plane + 1);
    }
  } else if (o.predicate == "nondegenerate") {
    const auto idx = incidence(f);
    const auto c = is_nondegenerate_cover(f, idx);
    ok = c.ok;
    if (c.violation) witness = to_json(*c.violation);
    std::uint32_t lo = idx.counts.front(), hi = lo;
    for (auto x : idx.counts) lo = std::min(lo, x), hi = std::max(hi, x);
    result["incidence_min"] = num(lo);
    result["incidence_max"] = num(hi);
    result["lower_bound_ceil_n_over_2"] = num((f.dim() + 1) / 2);
  } else if (o.predicate == "slicing") {
    const auto c = is_slicing_family(f);
    ok = c.ok;
    if (c.unsliced) witness = Json{{"unsliced_edge", to_json(*c.unsliced)}};
  } else {
    throw InputError("unknown predicate \"" + o.predicate + "\" (expected cover, skew, nondegenerate or slicing)");
  }
  result["holds"] = ok;
  rep["result"] = result;
  rep["witness"] = witness;
  return rep.finish(out, ok ? kPass : kFail);
}

inline int cmd_construct(const Options& o, std::ostream& out) {
  const Family f = construct(o.name, o.n.value_or(0));
  const std::string text = family_to_string(f);
  if (o.out.empty()) {
    out << text;
    return kPass;
  }
  detail::write_file(o.out, text);
  detail::Reporter rep("construct", Json{{"name", o.name}, {"n", num(*o.n)}, {"out", o.out}});
  rep["input_digest"] = digest(o.name + ":" + std::to_string(*o.n));
  rep["result"] = Json{{"planes", num(f.size())}, {"n", num(f.dim())}};
  return rep.finish(out, kPass);
}

inline int cmd_reduce(const Options& o, std::ostream& out) {
  detail::Reporter rep("reduce", Json{{"file", o.file}, {"C", num(o.box.value_or(0))}});
  const auto in = detail::load_family(o.file, o.n);
  const Family& f = in.file.family;
  rep["input_digest"] = digest(in.bytes);
  ReductionResult red{Family(f.dim()), {}, 0};
  try {
    red = reduce_slicing_to_cover(f, o.box.value_or(0));
  } catch (const NotSlicingError& e) {
    rep["witness"] = Json{{"unsliced_edge", to_json(e.edge)}};
    rep["error"] = e.what();
    return rep.finish(out, kFail);
  } catch (const InputError& e) {
    rep["error"] = e.what();
    return rep.finish(out, kInputError);
  }
  const std::size_t checked = check_slicing_inequalities(f, *o.box);
  const auto nd = is_nondegenerate_cover(red.cover);
  const bool size_ok = red.cover.size() <= red.size_bound;
  const bool bound_ok = static_cast<std::size_t>((f.dim() + 1) / 2) <= red.size_bound;
  Json result = to_json(red, f);
  result["edge_inequalities_checked"] = num(checked);
  result["output_nondegenerate"] = nd.ok;
  result["size_within_bound"] = size_ok;
  result["ceil_n_over_2_le_2C_times_size"] = bound_ok;
  rep["result"] = result;
  if (!o.out.empty()) detail::write_file(o.out, family_to_string(red.cover));
  if (!nd.ok || !size_ok || !bound_ok) {
    rep["verdict"] = "internal-error";
    return rep.finish(out, kInternalError);
  }
  return rep.finish(out, kPass);
}

inline int cmd_witness(const Options& o, std::ostream& out, std::ostream& err) {
  detail::Reporter rep("witness", Json{{"file", o.file}});
  const auto in = detail::load_family(o.file, o.n);
  rep["input_digest"] = digest(in.bytes);
  try {
    const auto r = run_pipeline(in.file.family);
    rep["result"] = to_json(r);
    const std::string trace = format_trace(r);
    if (o.trace.empty()) err << trace;
    else detail::write_file(o.trace, trace);
    return rep.finish(out, kPass);
  } catch (const PreconditionViolation& e) {
    rep["witness"] = to_json(e.violation);
    rep["error"] = e.what();
    return rep.finish(out, kFail);
  }
}

inline int cmd_search(const Options& o, std::ostream& out) {
  const SearchMode mode = parse_search_mode(o.mode);
  if (!o.n) throw InputError("search requires --n");
  Json args{{"mode", o.mode}, {"n", num(*o.n)}, {"C", o.box ? Json(num(*o.box)) : Json(nullptr)}, {"oracle", o.oracle}};
  detail::Reporter rep("search", args);
  rep["input_digest"] = digest(args.dump());
  SearchOptions so;
  so.threads = o.threads;
  const SearchProblem p = build_problem(*o.n, mode, o.box, so);
  const SearchResult r = solve(p, so);
  rep["result"] = to_json(r);
  int code = kPass;
  if (o.oracle) {
    const auto oc = oracle_check(p, r);
    rep["oracle"] = Json{{"ran", oc.ran},
                         {"agrees", oc.agrees},
                         {"oracle_minimum", oc.oracle_minimum ? Json(num(*oc.oracle_minimum)) : Json(nullptr)},
                         {"note", oc.note}};
    if (oc.ran && !oc.agrees) code = kInternalError;
  }
  if (!o.out.empty()) detail::write_file(o.out, family_to_string(r.optimal));
  return rep.finish(out, code);
}

inline int cmd_end_to_end(const Options& o, std::ostream& out, std::ostream& err) {
  detail::Reporter rep("end-to-end", Json{{"file", o.file}, {"C", num(o.box.value_or(0))}});
  const auto in = detail::load_family(o.file, o.n);
  const Family& f = in.file.family;
  rep["input_digest"] = digest(in.bytes);
  const int box = o.box.value_or(0);

  ReductionResult red{Family(f.dim()), {}, 0};
  try {
    red = reduce_slicing_to_cover(f, box);
  } catch (const NotSlicingError& e) {
    rep["stage"] = "reduce";
    rep["witness"] = Json{{"unsliced_edge", to_json(e.edge)}};
    rep["error"] = e.what();
    return rep.finish(out, kFail);
  } catch (const InputError& e) {
    rep["stage"] = "reduce";
    rep["error"] = e.what();
    return rep.finish(out, kInputError);
  }
  WitnessReport w;
  try {
    w = run_pipeline(red.cover);
  } catch (const PreconditionViolation& e) {
    rep["stage"] = "witness";
    rep["witness"] = to_json(e.violation);
    rep["error"] = e.what();
    return rep.finish(out, kInternalError);
  }
  const std::size_t two_c = 2 * static_cast<std::size_t>(box);
  const Rational ratio(static_cast<long long>(red.cover.size()), static_cast<long long>(two_c));
  const Rational lower(static_cast<long long>(w.lower_bound), static_cast<long long>(two_c));
  const bool chain_ok = Rational(static_cast<long long>(f.size())) >= ratio && ratio >= lower;
  rep["reduction"] = to_json(red, f);
  rep["witness_report"] = to_json(w);
  rep["chain"] = Json{{"family_size", num(f.size())},
                      {"reduced_size", num(red.cover.size())},
                      {"reduced_size_over_2C", format_fraction(ratio)},
                      {"ceil_n_over_2", num(w.lower_bound)},
                      {"lower_bound", format_fraction(lower)},
                      {"holds", chain_ok}};
  if (o.trace.empty()) err << format_trace(w);
  else detail::write_file(o.trace, format_trace(w));
  if (!chain_ok) {
    rep["stage"] = "chain";
    return rep.finish(out, kInternalError);
  }
  return rep.finish(out, kPass);
}

/// Parses argv and runs one subcommand. Reports go to `out`, traces and diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperplane covers, skew covers, nondegenerate covers and edge slicing of {0,1}^n"};
  app.require_subcommand(1);
  Options o;
  o.threads = default_threads();
  app.add_option("--threads", o.threads, "worker threads for search (env HYPERCOVER_THREADS)")
      ->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "check a predicate on a family file");
  verify->add_option("file,--file", o.file, "JSON-lines family")->required();
  verify->add_option("--predicate,-p", o.predicate, "cover | skew | nondegenerate | slicing")->required();
  verify->add_option("--n", o.n, "dimension (needed only for an empty file)");

  auto* cons = app.add_subcommand("construct", "emit a named construction");
  cons->add_option("name,--name", o.name, "trivial | tight | sum-layers | axis-slicing")->required();
  cons->add_option("n,--n", o.n, "dimension")->required();
  cons->add_option("--out,-o", o.out, "output file (default stdout)");

  auto* reduce = app.add_subcommand("reduce", "turn a box-C slicing family into a nondegenerate cover");
  reduce->add_option("file,--file", o.file)->required();
  reduce->add_option("--C", o.box, "coefficient bound")->required();
  reduce->add_option("--out,-o", o.out, "write the produced family here");
  reduce->add_option("--n", o.n);

  auto* witness = app.add_subcommand("witness", "run the lower-bound pipeline on a nondegenerate cover");
  witness->add_option("file,--file", o.file)->required();
  witness->add_option("--trace", o.trace, "human-readable trace file (default stderr)");
  witness->add_option("--n", o.n);

  auto* search = app.add_subcommand("search", "exact minimum cover / slicing search");
  search->add_option("--mode", o.mode, "plain-cover | punctured-cover | skew-cover | nondegenerate-cover | edge-slicing")
      ->required();
  search->add_option("--n", o.n)->required();
  search->add_option("--C", o.box, "coefficient bound for box modes");
  search->add_option("--out,-o", o.out, "write the optimal family here");
  search->add_flag("--oracle", o.oracle, "cross-check with exhaustive subset search");
  search->add_option("--threads", o.threads)->check(CLI::PositiveNumber);

  auto* e2e = app.add_subcommand("end-to-end", "reduce a slicing family, then certify it with the witness pipeline");
  e2e->add_option("file,--file", o.file)->required();
  e2e->add_option("--C", o.box)->required();
  e2e->add_option("--trace", o.trace);
  e2e->add_option("--n", o.n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*verify) return cmd_verify(o, out);
    if (*cons) return cmd_construct(o, out);
    if (*reduce) return cmd_reduce(o, out);
    if (*witness) return cmd_witness(o, out, err);
    if (*search) return cmd_search(o, out);
    if (*e2e) return cmd_end_to_end(o, out, err);
  } catch (const InternalConsistencyError& e) {
    err << "internal-consistency error: " << e.what() << "\n";
    return kInternalError;
  } catch (const NotSlicingError& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace hypercover::cli
