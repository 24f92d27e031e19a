#include "qfid/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <memory>
#include <sstream>
#include <vector>

#include "qfid/error.hpp"
#include "qfid/poly.hpp"

namespace qfid {

const char* to_string(SolverAnswer a) {
  switch (a) {
    case SolverAnswer::Sat: return "sat";
    case SolverAnswer::Unsat: return "unsat";
    case SolverAnswer::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// Minimal S-expressions for reading models back.
struct Sexp {
  std::string atom;
  std::vector<Sexp> list;
  bool is_list = false;
};

class SexpReader {
 public:
  explicit SexpReader(const std::string& text) : t_(text) {}

  bool at_end() {
    skip();
    return pos_ >= t_.size();
  }

  Sexp read() {
    skip();
    if (pos_ >= t_.size()) throw SolverError("unexpected end of solver output");
    Sexp s;
    if (t_[pos_] == '(') {
      ++pos_;
      s.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= t_.size()) throw SolverError("unbalanced solver output");
        if (t_[pos_] == ')') {
          ++pos_;
          break;
        }
        s.list.push_back(read());
      }
      return s;
    }
    if (t_[pos_] == ')') throw SolverError("unbalanced solver output");
    if (t_[pos_] == '"' || t_[pos_] == '|') {
      char close = t_[pos_];
      std::size_t end = t_.find(close, pos_ + 1);
      if (end == std::string::npos) end = t_.size() - 1;
      s.atom = t_.substr(pos_, end + 1 - pos_);
      pos_ = end + 1;
      return s;
    }
    std::size_t start = pos_;
    while (pos_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[pos_])) && t_[pos_] != '(' &&
           t_[pos_] != ')')
      ++pos_;
    s.atom = t_.substr(start, pos_ - start);
    return s;
  }

 private:
  void skip() {
    while (pos_ < t_.size()) {
      if (std::isspace(static_cast<unsigned char>(t_[pos_]))) {
        ++pos_;
      } else if (t_[pos_] == ';') {
        while (pos_ < t_.size() && t_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  const std::string& t_;
  std::size_t pos_ = 0;
};

bool is_number(const std::string& a) {
  if (a.empty()) return false;
  for (char c : a)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != '/') return false;
  return true;
}

// Polynomial in the single symbol of a root-obj.
UPoly eval_poly(const Sexp& e) {
  if (!e.is_list) {
    if (is_number(e.atom)) return UPoly(parse_rational(e.atom));
    return UPoly::variable();
  }
  if (e.list.empty() || e.list[0].is_list) throw SolverError("malformed polynomial");
  const std::string& op = e.list[0].atom;
  if (op == "+" || op == "*") {
    UPoly acc(Rational(op == "+" ? 0 : 1));
    for (std::size_t k = 1; k < e.list.size(); ++k) acc = op == "+" ? acc + eval_poly(e.list[k]) : acc * eval_poly(e.list[k]);
    return acc;
  }
  if (op == "-") {
    if (e.list.size() == 2) return -eval_poly(e.list[1]);
    UPoly acc = eval_poly(e.list[1]);
    for (std::size_t k = 2; k < e.list.size(); ++k) acc -= eval_poly(e.list[k]);
    return acc;
  }
  if (op == "^" && e.list.size() == 3) {
    UPoly base = eval_poly(e.list[1]);
    long n = std::stol(e.list[2].atom);
    UPoly acc(Rational(1));
    for (long k = 0; k < n; ++k) acc *= base;
    return acc;
  }
  if (op == "/" && e.list.size() == 3) {
    UPoly den = eval_poly(e.list[2]);
    if (den.degree() != 0) throw SolverError("non-constant divisor in polynomial");
    return eval_poly(e.list[1]) * UPoly(1 / den.coeff(0));
  }
  throw SolverError("unsupported polynomial operator " + op);
}

// k-th smallest real root (1-based) of p, by Sturm bisection.
double kth_root(const UPoly& p_in, long k) {
  UPoly p = squarefree_part(p_in);
  if (p.degree() < 1) throw SolverError("root-obj of a constant polynomial");
  Rational b = root_bound(p), a = -b;
  if (k < 1 || k > count_real_roots(p, a, b)) throw SolverError("root-obj index out of range");
  for (int it = 0; it < 80; ++it) {
    Rational mid = (a + b) / 2;
    for (int nudge = 1; sgn(p.eval(mid)) == 0; ++nudge) mid += (b - a) / (1000 * nudge + 7);
    int c = count_real_roots(p, a, mid);
    if (k <= c) {
      b = mid;
    } else {
      k -= c;
      a = mid;
    }
  }
  return to_double((a + b) / 2);
}

double eval_value(const Sexp& e) {
  if (!e.is_list) {
    if (!is_number(e.atom)) throw SolverError("non-numeric model value " + e.atom);
    return to_double(parse_rational(e.atom));
  }
  if (e.list.empty() || e.list[0].is_list) throw SolverError("malformed model value");
  const std::string& op = e.list[0].atom;
  if (op == "root-obj" && e.list.size() == 3) return kth_root(eval_poly(e.list[1]), std::stol(e.list[2].atom));
  if (op == "-") {
    if (e.list.size() == 2) return -eval_value(e.list[1]);
    double acc = eval_value(e.list[1]);
    for (std::size_t k = 2; k < e.list.size(); ++k) acc -= eval_value(e.list[k]);
    return acc;
  }
  if (op == "+" || op == "*") {
    double acc = op == "+" ? 0 : 1;
    for (std::size_t k = 1; k < e.list.size(); ++k) acc = op == "+" ? acc + eval_value(e.list[k]) : acc * eval_value(e.list[k]);
    return acc;
  }
  if (op == "/" && e.list.size() == 3) return eval_value(e.list[1]) / eval_value(e.list[2]);
  throw SolverError("unsupported model value operator " + op);
}

void collect_defines(const Sexp& e, std::map<std::string, double>& out) {
  if (!e.is_list) return;
  if (e.list.size() == 5 && !e.list[0].is_list && e.list[0].atom == "define-fun" && e.list[2].is_list &&
      e.list[2].list.empty()) {
    if (!e.list[3].is_list && e.list[3].atom == "Real") out[e.list[1].atom] = eval_value(e.list[4]);
    return;
  }
  for (const auto& c : e.list) collect_defines(c, out);
}

void ignore_sigpipe() {
  static bool done = false;
  if (!done) {
    signal(SIGPIPE, SIG_IGN);
    done = true;
  }
}

}  // namespace

std::optional<std::map<std::string, double>> parse_model_values(const std::string& text) {
  try {
    SexpReader reader(text);
    std::map<std::string, double> out;
    while (!reader.at_end()) collect_defines(reader.read(), out);
    if (out.empty()) return std::nullopt;
    return out;
  } catch (const Error&) {
    return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

SolverResult run_solver(const std::string& script, const SolverConfig& cfg) {
  ignore_sigpipe();
  std::string input = script;
  if (cfg.request_model) input += "(get-model)\n";
  input += "(exit)\n";

  int to_child[2], from_child[2];
  if (pipe(to_child) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno));
  if (pipe(from_child) != 0) {
    close(to_child[0]);
    close(to_child[1]);
    throw SolverError(std::string("pipe: ") + std::strerror(errno));
  }
  const auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) throw SolverError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    setpgid(0, 0);
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    dup2(from_child[1], STDERR_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    execl("/bin/sh", "sh", "-c", cfg.command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(to_child[0]);
  close(from_child[1]);
  int wfd = to_child[1], rfd = from_child[0];
  fcntl(wfd, F_SETFL, fcntl(wfd, F_GETFL) | O_NONBLOCK);

  SolverResult res;
  std::size_t written = 0;
  const auto deadline = start + std::chrono::duration<double>(cfg.timeout_seconds);
  char buf[4096];
  for (;;) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      res.timed_out = true;
      break;
    }
    int wait_ms = static_cast<int>(std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count()) + 1;
    pollfd fds[2];
    int nfds = 0;
    fds[nfds++] = {rfd, POLLIN, 0};
    if (wfd >= 0) fds[nfds++] = {wfd, POLLOUT, 0};
    int rc = poll(fds, nfds, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (wfd >= 0 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      ssize_t n = write(wfd, input.data() + written, input.size() - written);
      if (n > 0) written += static_cast<std::size_t>(n);
      if (n < 0 && errno != EAGAIN) written = input.size();
      if (written >= input.size()) {
        close(wfd);
        wfd = -1;
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      ssize_t n = read(rfd, buf, sizeof buf);
      if (n > 0) {
        res.output.append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EAGAIN) {
        break;
      }
    }
  }
  if (wfd >= 0) close(wfd);
  close(rfd);
  if (res.timed_out) kill(-pid, SIGKILL);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (res.timed_out) {
    res.answer = SolverAnswer::Unknown;
    return res;
  }

  std::istringstream lines(res.output);
  std::string first;
  while (first.empty() && lines >> first) {
  }
  if (first == "sat") {
    res.answer = SolverAnswer::Sat;
    if (cfg.request_model) res.model = parse_model_values(res.output.substr(res.output.find("sat") + 3));
  } else if (first == "unsat") {
    res.answer = SolverAnswer::Unsat;
  } else if (first == "unknown") {
    res.answer = SolverAnswer::Unknown;
  } else {
    std::string snippet = res.output.substr(0, 400);
    if (WIFEXITED(status) && WEXITSTATUS(status) == 127) snippet = "command not found: " + cfg.command;
    throw SolverError("solver did not answer sat/unsat/unknown: " + snippet);
  }
  return res;
}

}  // namespace qfid
