// qfid: check QCTL fidelity formulas on quantum Markov chains, bracket minimum
// fidelities and export the SMT-LIB2 queries.
//
// Exit codes: 0 all true (or bracket complete), 1 some state false,
// 2 some verdict unknown, 3 input/solver/usage error, 4 internal failure.
// A solver that crashes or is missing is an error even though the verdicts it
// leaves behind are reported as unknown.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qfid/engine.hpp"
#include "qfid/error.hpp"
#include "qfid/report.hpp"

namespace fs = std::filesystem;
using qfid::report::Json;

namespace {

constexpr int kExitError = 3;
constexpr int kExitInternal = 4;

struct Common {
  std::string model_flag;
  std::vector<std::string> positional;
  std::vector<std::string> states;
  std::string solver = "z3 -in";
  double timeout = 120;
  bool exact = false;
  std::string json_path;
  std::string cache_dir;
};

struct Inputs {
  std::string model_path;
  std::string formula_text;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qfid::Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw qfid::Error("cannot write " + path);
  out << text;
  if (!out.flush()) throw qfid::Error("write failed: " + path);
}

// The model comes from --model or the first positional; the formula is the
// remaining positional, read from disk when it names a .qctl file.
Inputs resolve_inputs(const Common& c) {
  std::vector<std::string> rest = c.positional;
  Inputs in;
  if (!c.model_flag.empty()) {
    in.model_path = c.model_flag;
  } else {
    if (rest.empty()) throw qfid::Error("no model given");
    in.model_path = rest.front();
    rest.erase(rest.begin());
  }
  if (rest.size() != 1) throw qfid::Error("expected exactly one formula argument");
  in.formula_text = rest.front();
  if (fs::path(in.formula_text).extension() == ".qctl" && fs::is_regular_file(in.formula_text))
    in.formula_text = read_file(in.formula_text);
  return in;
}

qfid::EngineOptions engine_options(const Common& c) {
  qfid::EngineOptions opts;
  opts.fidelity.solver.command = c.solver;
  opts.fidelity.solver.timeout_seconds = c.timeout;
  if (!c.cache_dir.empty()) {
    fs::create_directories(c.cache_dir);
    opts.cache_dir = c.cache_dir;
  }
  return opts;
}

// A state is named, or given by its 0-based index.
std::size_t resolve_state(const qfid::QmcModel& m, const std::string& s) {
  for (std::size_t i = 0; i < m.n(); ++i)
    if (m.states[i] == s) return i;
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
    std::size_t i = std::stoul(s);
    if (i < m.n()) return i;
  }
  throw qfid::ValidationError("unknown state '" + s + "'");
}

std::vector<std::size_t> resolve_states(const qfid::QmcModel& m, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  if (names.empty())
    for (std::size_t i = 0; i < m.n(); ++i) out.push_back(i);
  for (const auto& n : names) out.push_back(resolve_state(m, n));
  return out;
}

// Formulas may be given with or without the surrounding brackets.
qfid::PathPtr parse_path_arg(std::string text) {
  auto first = text.find_first_not_of(" \t\r\n");
  auto last = text.find_last_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[' && text[last] == ']')
    text = text.substr(first + 1, last - first - 1);
  return qfid::parse_path_formula(text);
}

Json matrices_json(const qfid::Engine& e) {
  Json out = Json::array();
  for (const auto& s : e.synthesized()) {
    Json j;
    j["state"] = e.model().states[s.state];
    j["path"] = s.path;
    j["matrix"] = qfid::report::matrix_json(s.matrix);
    out.push_back(j);
  }
  return out;
}

Json timings_json(const qfid::Engine& e, double total, double solver) {
  Json j;
  j["total_seconds"] = total;
  j["solver_seconds"] = solver;
  auto st = e.stats();
  j["syntheses"] = st.syntheses;
  j["disk_hits"] = st.disk_hits;
  j["memo_hits"] = st.memo_hits;
  return j;
}

void emit_json(const Common& c, const Json& j) {
  if (c.json_path.empty()) return;
  if (c.json_path == "-")
    std::cout << j.dump(2) << "\n";
  else
    write_file(c.json_path, j.dump(2) + "\n");
}

// Human-readable text goes to stdout unless the JSON report does.
std::ostream& human(const Common& c) {
  static std::ostringstream sink;
  if (c.json_path == "-") {
    sink.str("");
    return sink;
  }
  return std::cout;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_check(const Common& c) {
  auto t0 = std::chrono::steady_clock::now();
  Inputs in = resolve_inputs(c);
  qfid::StatePtr f = qfid::parse_formula(in.formula_text);
  qfid::Engine e(qfid::load_model(in.model_path), engine_options(c));
  std::vector<std::size_t> states = resolve_states(e.model(), c.states);

  Json results = Json::array();
  bool any_false = false, any_unknown = false;
  std::ostream& out = human(c);
  out << "formula: " << qfid::to_string(*f) << "\n";
  for (std::size_t s : states) {
    qfid::Truth t = e.holds(s, *f);
    any_false = any_false || t == qfid::Truth::False;
    any_unknown = any_unknown || t == qfid::Truth::Unknown;
    out << e.model().states[s] << ": " << qfid::to_string(t) << "\n";
    results.push_back({{"state", e.model().states[s]}, {"truth", qfid::to_string(t)}});
  }

  Json decisions = Json::array();
  double solver_seconds = 0;
  for (const auto& r : e.records()) {
    solver_seconds += r.verdict.solver_seconds;
    decisions.push_back(qfid::report::record_json(e.model(), r));
    out << "  " << r.formula << " at " << e.model().states[r.state] << ": " << qfid::to_string(r.verdict.truth);
    if (r.verdict.numeric_upper) out << " (numeric upper bound on Fid: " << *r.verdict.numeric_upper << ")";
    if (!r.verdict.note.empty()) out << " [" << r.verdict.note << "]";
    out << "\n";
  }
  int rc = any_false ? 1 : any_unknown ? 2 : 0;
  for (const auto& r : e.records())
    for (const auto& q : r.verdict.queries)
      if (!q.error.empty() && rc != kExitError) {
        std::cerr << "qfid: error: solver failed: " << q.error << "\n";
        rc = kExitError;
      }

  Json j = qfid::report::header("check", in.model_path, e);
  j["formula"] = qfid::to_string(*f);
  j["results"] = results;
  j["fidelity_decisions"] = decisions;
  if (c.exact) j["matrices"] = matrices_json(e);
  j["timings"] = timings_json(e, seconds_since(t0), solver_seconds);
  j["exit_code"] = rc;
  emit_json(c, j);
  return rc;
}

int cmd_bound(const Common& c, const std::string& precision_text) {
  auto t0 = std::chrono::steady_clock::now();
  Inputs in = resolve_inputs(c);
  qfid::PathPtr p = parse_path_arg(in.formula_text);
  qfid::Rational precision = qfid::parse_rational(precision_text);
  if (precision <= 0) throw qfid::Error("precision must be positive");
  qfid::Engine e(qfid::load_model(in.model_path), engine_options(c));
  std::vector<std::size_t> states = resolve_states(e.model(), c.states);

  Json bounds = Json::array();
  bool complete = true, solver_failed = false;
  double solver_seconds = 0;
  std::ostream& out = human(c);
  out << "path formula: " << qfid::to_string(*p) << "\n";
  for (std::size_t s : states) {
    qfid::FidelityBracket b = e.bound(s, *p, precision);
    solver_seconds += b.solver_seconds;
    Json jb = qfid::report::bracket_json(b);
    const std::string& name = e.model().states[s];
    if (b.lo == b.hi)
      out << name << ": Fid = " << qfid::to_string(b.lo);
    else
      out << name << ": Fid in (" << qfid::to_string(b.lo) << ", " << qfid::to_string(b.hi) << "]  ~ ("
          << b.lo.get_d() << ", " << b.hi.get_d() << "]";
    if (!b.solver_error.empty()) {
      solver_failed = true;
      std::cerr << "qfid: error: solver failed: " << b.solver_error << "\n";
    }
    if (!b.complete) {
      complete = false;
      double upper = qfid::numeric_min(e.sovm(s, *p), e.options().fidelity.numeric).fidelity;
      jb["numeric_upper"] = upper;
      out << "  incomplete, numeric upper bound " << upper;
      if (!b.note.empty()) out << " [" << b.note << "]";
    }
    out << "\n";
    Json entry;
    entry["state"] = name;
    entry.update(jb);
    bounds.push_back(entry);
  }
  int rc = solver_failed ? kExitError : complete ? 0 : 2;

  Json j = qfid::report::header("bound", in.model_path, e);
  j["path_formula"] = qfid::to_string(*p);
  j["precision"] = qfid::to_string(precision);
  j["bounds"] = bounds;
  if (c.exact) j["matrices"] = matrices_json(e);
  j["timings"] = timings_json(e, seconds_since(t0), solver_seconds);
  j["exit_code"] = rc;
  emit_json(c, j);
  return rc;
}

// out.smt2 -> out.ge.smt2
std::string sibling(const std::string& path, const std::string& tag) {
  fs::path p(path);
  fs::path name = p.stem();
  name += "." + tag;
  name += p.extension();
  return (p.parent_path() / name).string();
}

int cmd_export(const Common& c, const std::string& out_path, std::string matrix_path) {
  auto t0 = std::chrono::steady_clock::now();
  Inputs in = resolve_inputs(c);
  qfid::StatePtr f = qfid::parse_formula(in.formula_text);
  if (f->kind != qfid::StateFormula::Kind::Fidelity)
    throw qfid::Error("export expects a fidelity formula F~tau [ phi ]");
  if (c.states.size() != 1) throw qfid::Error("export needs exactly one --state");
  qfid::Engine e(qfid::load_model(in.model_path), engine_options(c));
  std::size_t s = resolve_state(e.model(), c.states.front());

  qfid::Mat m = e.sovm(s, *f->path);
  std::vector<qfid::PolySentence> sentences = qfid::fidelity_sentences(m, f->cmp, f->tau);
  if (matrix_path.empty()) matrix_path = out_path + ".matrix";

  Json files = Json::array();
  std::ostream& out = human(c);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::string path = i == 0 ? out_path : sibling(out_path, "ge");
    write_file(path, qfid::emit_smt(sentences[i], e.options().fidelity.emit));
    files.push_back({{"kind", "script"},
                     {"path", path},
                     {"quantifier", sentences[i].quantifier == qfid::Quantifier::Exists ? "exists" : "forall"},
                     {"relation", qfid::to_string(sentences[i].rel)}});
    out << "wrote " << path << "\n";
  }
  write_file(matrix_path, qfid::serialize_matrix(m));
  files.push_back({{"kind", "matrix"}, {"path", matrix_path}});
  out << "wrote " << matrix_path << "\n";

  Json j = qfid::report::header("export", in.model_path, e);
  j["formula"] = qfid::to_string(*f);
  j["state"] = e.model().states[s];
  j["files"] = files;
  if (c.exact) j["matrices"] = matrices_json(e);
  j["timings"] = timings_json(e, seconds_since(t0), 0);
  j["exit_code"] = 0;
  emit_json(c, j);
  return 0;
}

void add_common(CLI::App* sub, Common& c, const char* formula_help) {
  sub->add_option("args", c.positional, std::string("MODEL then ") + formula_help)->required();
  sub->add_option("--model", c.model_flag, "Model file (.qmc); replaces the first positional");
  sub->add_option("--state", c.states, "State name or 0-based index; repeatable")->allow_extra_args(false);
  sub->add_option("--solver", c.solver, "SMT-LIB2 solver command reading the script on stdin")
      ->capture_default_str();
  sub->add_option("--timeout", c.timeout, "Per-query solver timeout in seconds")->capture_default_str();
  sub->add_flag("--exact", c.exact, "Include exact SOVM matrices in the JSON report");
  sub->add_option("--json", c.json_path, "Write the JSON report to PATH ('-' for stdout)");
  sub->add_option("--cache", c.cache_dir, "Directory caching synthesised SOVM matrices");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qfid: exact fidelity model checking for quantum Markov chains"};
  app.require_subcommand(1);

  Common c;
  std::string precision = "1/1000";
  std::string out_path, matrix_path;

  CLI::App* check = app.add_subcommand("check", "Decide a state formula at the given states (default: all)");
  add_common(check, c, "FORMULA (text or .qctl file)");
  CLI::App* bound = app.add_subcommand("bound", "Bracket the minimum fidelity of a path formula by bisection");
  add_common(bound, c, "PATH-FORMULA");
  bound->add_option("--precision", precision, "Bracket width p/q")->capture_default_str();
  CLI::App* exp = app.add_subcommand("export", "Write the SMT-LIB2 script(s) and matrix dump for F~tau [phi]");
  add_common(exp, c, "FORMULA");
  exp->add_option("--out", out_path, "SMT-LIB2 output path")->required();
  exp->add_option("--matrix", matrix_path, "Matrix dump path (default: OUT.matrix)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (check->parsed()) return cmd_check(c);
    if (bound->parsed()) return cmd_bound(c, precision);
    return cmd_export(c, out_path, matrix_path);
  } catch (const qfid::Error& err) {
    std::cerr << "qfid: error: " << err.what() << "\n";
    return kExitError;
  } catch (const std::exception& err) {
    std::cerr << "qfid: internal error: " << err.what() << "\n";
    return kExitInternal;
  }
}
