#include "qfid/model.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "qfid/error.hpp"
#include "qfid/expr.hpp"
#include "qfid/lexer.hpp"

namespace qfid {

std::size_t QmcModel::index_of(std::string_view state) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == state) return i;
  throw ValidationError("unknown state '" + std::string(state) + "'");
}

bool QmcModel::has_transition(std::size_t s, std::size_t t) const {
  auto it = q.find({s, t});
  return it != q.end() && !it->second.is_zero_list();
}

SuperOp QmcModel::transition(std::size_t s, std::size_t t) const {
  auto it = q.find({s, t});
  return it == q.end() ? SuperOp::zero(d) : it->second;
}

std::string ValidationReport::to_string(const QmcModel& m) const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (const auto& v : violations) {
    out << "completeness violated at state " << m.states[v.state] << "; residual sum E^dagger E - I =\n"
        << v.residual.to_string();
  }
  return out.str();
}

ValidationReport validate(const QmcModel& m) {
  ValidationReport report;
  for (std::size_t s = 0; s < m.n(); ++s) {
    Mat acc = -Mat::identity(m.d);
    for (std::size_t t = 0; t < m.n(); ++t) {
      auto it = m.q.find({s, t});
      if (it == m.q.end()) continue;
      for (const auto& e : it->second.kraus()) {
        if (e.rows() != m.d || e.cols() != m.d) throw ValidationError("Kraus operator of wrong shape");
        acc += e.adjoint() * e;
      }
    }
    if (!acc.is_zero()) report.violations.push_back({s, std::move(acc)});
  }
  return report;
}

namespace {

Mat parse_matrix(Lexer& lex, const QmcModel& m) {
  const Token start = lex.peek();
  lex.expect_symbol("[");
  std::vector<std::vector<FieldScalar>> rows;
  do {
    lex.expect_symbol("[");
    std::vector<FieldScalar> row;
    do {
      row.push_back(parse_scalar_expr(lex, m.field));
    } while (lex.accept_symbol(","));
    lex.expect_symbol("]");
    rows.push_back(std::move(row));
  } while (lex.accept_symbol(","));
  lex.expect_symbol("]");
  if (rows.size() != m.d)
    lex.fail_at(start, "Kraus matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(m.d));
  for (const auto& r : rows)
    if (r.size() != m.d)
      lex.fail_at(start, "Kraus matrix row has " + std::to_string(r.size()) + " entries, expected " +
                             std::to_string(m.d));
  return Mat::from_rows(rows);
}

void end_of_statement(Lexer& lex) {
  if (lex.peek().kind == TokKind::End) return;
  if (lex.peek().kind != TokKind::Newline && !lex.is_symbol(";")) lex.fail("expected end of line");
  lex.next();
}

}  // namespace

QmcModel parse_model(std::string_view text, const ParseOptions& opts) {
  Lexer lex(text, true);
  QmcModel m;
  bool have_states = false;
  auto state_ref = [&](const Token& tok) {
    for (std::size_t i = 0; i < m.states.size(); ++i)
      if (m.states[i] == tok.text) return i;
    lex.fail_at(tok, "unknown state '" + tok.text + "'");
  };
  while (true) {
    lex.skip_newlines();
    while (lex.accept_symbol(";")) lex.skip_newlines();
    if (lex.at_end()) break;
    Token kw = lex.peek();
    if (kw.kind != TokKind::Ident) lex.fail("expected a declaration");
    lex.next();
    if (kw.text == "dimension") {
      if (m.d != 0) lex.fail_at(kw, "dimension declared twice");
      if (lex.peek().kind != TokKind::Number || lex.peek().text.find('.') != std::string::npos)
        lex.fail("expected a positive integer dimension");
      m.d = std::stoul(lex.next().text);
      if (m.d == 0) lex.fail_at(kw, "dimension must be positive");
    } else if (kw.text == "field") {
      if (m.field) lex.fail_at(kw, "field declared twice");
      if (!m.q.empty()) lex.fail_at(kw, "field must be declared before transitions");
      lex.expect_ident("minpoly");
      UPoly f = parse_upoly_expr(lex, "z");
      lex.expect_ident("in");
      lex.expect_symbol("(");
      Rational lo = parse_rational_expr(lex);
      lex.expect_symbol(",");
      Rational hi = parse_rational_expr(lex);
      lex.expect_symbol(")");
      try {
        m.field = NumberField::make(f, lo, hi);
      } catch (const ArithmeticError& e) {
        lex.fail_at(kw, std::string("invalid field: ") + e.what());
      }
    } else if (kw.text == "states") {
      if (have_states) lex.fail_at(kw, "states declared twice");
      have_states = true;
      while (lex.peek().kind == TokKind::Ident) {
        Token s = lex.next();
        for (const auto& existing : m.states)
          if (existing == s.text) lex.fail_at(s, "duplicate state '" + s.text + "'");
        m.states.push_back(s.text);
      }
      if (m.states.empty()) lex.fail_at(kw, "no states declared");
      m.labels.assign(m.states.size(), {});
    } else if (kw.text == "label") {
      if (!have_states) lex.fail_at(kw, "label before states");
      Token s = lex.next();
      if (s.kind != TokKind::Ident) lex.fail_at(s, "expected a state name");
      std::size_t idx = state_ref(s);
      while (lex.peek().kind == TokKind::Ident) m.labels[idx].insert(lex.next().text);
    } else if (kw.text == "trans") {
      if (!have_states || m.d == 0) lex.fail_at(kw, "trans before dimension and states");
      Token s = lex.next();
      if (s.kind != TokKind::Ident) lex.fail_at(s, "expected a source state");
      Token t = lex.next();
      if (t.kind != TokKind::Ident) lex.fail_at(t, "expected a target state");
      auto key = std::make_pair(state_ref(s), state_ref(t));
      auto [it, inserted] = m.q.try_emplace(key, SuperOp::zero(m.d));
      lex.skip_newlines();
      lex.expect_symbol("{");
      while (true) {
        lex.skip_newlines();
        while (lex.accept_symbol(";")) lex.skip_newlines();
        if (lex.accept_symbol("}")) break;
        lex.expect_ident("kraus");
        it->second.add(parse_matrix(lex, m));
        if (!lex.is_symbol("}")) end_of_statement(lex);
      }
    } else {
      lex.fail_at(kw, "unknown declaration '" + kw.text + "'");
    }
    end_of_statement(lex);
  }
  if (m.d == 0) throw ValidationError("missing dimension declaration");
  if (!have_states) throw ValidationError("missing states declaration");
  if (opts.validate) {
    ValidationReport r = validate(m);
    if (!r.ok()) throw ValidationError(r.to_string(m));
  }
  return m;
}

QmcModel load_model(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), opts);
}

std::string print_model(const QmcModel& m) {
  std::ostringstream out;
  out << "dimension " << m.d << "\n";
  if (m.field) out << m.field->declaration() << "\n";
  out << "states";
  for (const auto& s : m.states) out << " " << s;
  out << "\n";
  for (std::size_t i = 0; i < m.n(); ++i) {
    if (m.labels[i].empty()) continue;
    out << "label " << m.states[i];
    for (const auto& ap : m.labels[i]) out << " " << ap;
    out << "\n";
  }
  for (const auto& [key, op] : m.q) {
    out << "trans " << m.states[key.first] << " " << m.states[key.second] << " {\n";
    for (const auto& e : op.kraus()) {
      out << "  kraus [";
      for (std::size_t r = 0; r < e.rows(); ++r) {
        out << (r ? ", [" : "[");
        for (std::size_t c = 0; c < e.cols(); ++c) out << (c ? ", " : "") << e(r, c).to_string();
        out << "]";
      }
      out << "]\n";
    }
    out << "}\n";
  }
  return out.str();
}

std::string sha256_hex(std::string_view text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

std::string model_hash(const QmcModel& m) { return sha256_hex(print_model(m)); }

SuperOp combined_F(const QmcModel& m) {
  const std::size_t n = m.n();
  SuperOp f(n * m.d, n * m.d);
  for (const auto& [key, op] : m.q) {
    Mat ts = Mat::unit(n, key.second, key.first);
    for (const auto& e : op.kraus()) f.add(kron(ts, e));
  }
  return f;
}

SuperOp cylinder_measure(const QmcModel& m, const std::vector<std::size_t>& path) {
  if (path.empty()) throw ValidationError("empty path");
  SuperOp acc = SuperOp::identity(m.d);
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (!m.has_transition(path[k - 1], path[k]))
      throw ValidationError("no transition " + m.states[path[k - 1]] + " -> " + m.states[path[k]]);
    acc = compose(m.q.at({path[k - 1], path[k]}), acc);
  }
  return acc;
}

Mat cq_state(const std::vector<Mat>& blocks) { return direct_sum(blocks); }

Mat cq_block(const Mat& g, std::size_t d, std::size_t s) { return g.block(s * d, s * d, d, d); }

}  // namespace qfid
