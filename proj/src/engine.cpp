#include "qfid/engine.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qfid/error.hpp"
#include "qfid/expr.hpp"

namespace qfid {

namespace fs = std::filesystem;

namespace {

constexpr const char* kCacheMagic = "qfid-sovm 1";

}  // namespace

std::string serialize_matrix(const Mat& m) {
  std::ostringstream out;
  out << m.rows() << " " << m.cols() << "\n";
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out << m(r, c).to_string() << "\n";
  return out.str();
}

Mat deserialize_matrix(const std::string& text, const FieldPtr& field) {
  std::istringstream in(text);
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw ParseError("matrix dump: missing dimensions", 1, 1);
  std::string line;
  std::getline(in, line);
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (!std::getline(in, line)) throw ParseError("matrix dump: truncated", static_cast<int>(2 + r * cols + c), 1);
      m(r, c) = parse_scalar(line, field);
    }
  return m;
}

Engine::Engine(QmcModel m, EngineOptions opts) : m_(std::move(m)), opts_(std::move(opts)), hash_(model_hash(m_)) {}

std::vector<bool> Engine::members(const StateFormula& f) { return check(f).members(); }

SatSet Engine::check(const StateFormula& f) {
  std::lock_guard lock(mu_);
  return sat(m_, f, [this](std::size_t s, const StateFormula& fq) { return decide(s, fq).truth; });
}

Truth Engine::holds(std::size_t s, const StateFormula& f) {
  if (s >= m_.n()) throw Error("state index out of range");
  switch (f.kind) {
    case StateFormula::Kind::True: return Truth::True;
    case StateFormula::Kind::Atom: return m_.has_label(s, f.atom) ? Truth::True : Truth::False;
    case StateFormula::Kind::Not: return truth_not(holds(s, *f.lhs));
    case StateFormula::Kind::And: {
      Truth a = holds(s, *f.lhs);
      return a == Truth::False ? a : truth_and(a, holds(s, *f.rhs));
    }
    case StateFormula::Kind::Fidelity: return decide(s, f).truth;
  }
  return Truth::Unknown;
}

Verdict Engine::decide(std::size_t s, const StateFormula& fq) {
  if (fq.kind != StateFormula::Kind::Fidelity) throw Error("decide expects a fidelity formula");
  std::lock_guard lock(mu_);
  auto key = std::make_pair(s, to_string(fq));
  if (auto it = verdicts_.find(key); it != verdicts_.end()) {
    ++stats_.memo_hits;
    return it->second;
  }
  Verdict v;
  try {
    Mat m = sovm(s, *fq.path);
    v = decide_sovm(m, fq.cmp, fq.tau, opts_.fidelity);
  } catch (const SolverError& e) {
    // A nested fidelity subformula stayed undecided.
    v.truth = Truth::Unknown;
    v.note = e.what();
  }
  verdicts_.emplace(key, v);
  records_.push_back({s, key.second, v});
  return v;
}

Mat Engine::sovm(std::size_t s, const PathFormula& p) {
  if (s >= m_.n()) throw Error("state index out of range");
  std::lock_guard lock(mu_);
  const std::string text = to_string(p);
  auto key = std::make_pair(s, text);
  if (auto it = sovms_.find(key); it != sovms_.end()) {
    ++stats_.memo_hits;
    return it->second;
  }
  const std::string disk_key = sha256_hex(hash_ + "\n" + text + "\n" + m_.states[s]);
  if (auto cached = load_cached(disk_key, text, s)) {
    ++stats_.disk_hits;
    sovms_.emplace(key, *cached);
    return *cached;
  }

  Mat out;
  if (p.kind == PathFormula::Kind::Next) {
    out = delta_next(m_, s, members(*p.lhs));
  } else {
    const std::string until_key = to_string(*p.lhs) + "\n" + to_string(*p.rhs);
    auto it = until_.find(until_key);
    if (it == until_.end()) it = until_.emplace(until_key, build_M2_M3(m_, members(*p.lhs), members(*p.rhs))).first;
    std::optional<unsigned long> k;
    if (p.kind == PathFormula::Kind::BoundedUntil) k = p.bound;
    out = delta_until(m_, s, it->second, k);
  }
  ++stats_.syntheses;
  sovms_.emplace(key, out);
  store_cached(disk_key, text, s, out);
  return out;
}

FidelityBracket Engine::bound(std::size_t s, const PathFormula& p, const Rational& precision) {
  Mat m = sovm(s, p);
  return min_fidelity_bracket_sovm(m, precision, opts_.fidelity);
}

std::vector<Engine::Synthesized> Engine::synthesized() const {
  std::lock_guard lock(mu_);
  std::vector<Synthesized> out;
  for (const auto& [key, m] : sovms_) out.push_back({key.first, key.second, m});
  return out;
}

std::vector<FidelityRecord> Engine::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

EngineStats Engine::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

std::optional<Mat> Engine::load_cached(const std::string& key, const std::string& path_text, std::size_t s) const {
  if (!opts_.cache_dir) return std::nullopt;
  std::ifstream in(fs::path(*opts_.cache_dir) / (key + ".sovm"));
  if (!in) return std::nullopt;
  std::string magic, model, path, state;
  if (!std::getline(in, magic) || magic != kCacheMagic) return std::nullopt;
  if (!std::getline(in, model) || model != "model " + hash_) return std::nullopt;
  if (!std::getline(in, path) || path != "path " + path_text) return std::nullopt;
  if (!std::getline(in, state) || state != "state " + m_.states[s]) return std::nullopt;
  std::stringstream rest;
  rest << in.rdbuf();
  try {
    return deserialize_matrix(rest.str(), m_.field);
  } catch (const Error&) {
    return std::nullopt;  // a damaged entry is simply recomputed
  }
}

void Engine::store_cached(const std::string& key, const std::string& path_text, std::size_t s, const Mat& m) const {
  if (!opts_.cache_dir) return;
  fs::path dir(*opts_.cache_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  fs::path final_path = dir / (key + ".sovm");
  fs::path tmp = dir / (key + ".sovm.tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << kCacheMagic << "\nmodel " << hash_ << "\npath " << path_text << "\nstate " << m_.states[s] << "\n"
        << serialize_matrix(m);
  }
  fs::rename(tmp, final_path, ec);
}

Verdict decide(const QmcModel& m, std::size_t s, const StateFormula& fq, const FidelityConfig& cfg) {
  Engine e(m, {cfg, std::nullopt});
  return e.decide(s, fq);
}

FidelityBracket min_fidelity_bracket(const QmcModel& m, std::size_t s, const PathFormula& p,
                                     const Rational& precision, const FidelityConfig& cfg) {
  Engine e(m, {cfg, std::nullopt});
  return e.bound(s, p, precision);
}

}  // namespace qfid
