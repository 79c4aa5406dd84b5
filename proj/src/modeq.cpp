#include "isogeny2/modeq.hpp"

#include <fstream>
#include <sstream>

namespace isogeny2 {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int64_t to_i64(const std::string& s, int line) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) parse_fail(line, "bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(line, "bad integer '" + s + "'");
  }
}

BigInt to_big(const std::string& s, int line) {
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) parse_fail(line, "bad coefficient '" + s + "'");
  for (size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') parse_fail(line, "bad coefficient '" + s + "'");
  BigInt v(s.substr(i));
  return s[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

ModularEquationSet parse_modeq(const std::string& text) {
  ModularEquationSet M;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  enum { Kind, Vars, Header, Terms } state = Kind;
  size_t pending = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    auto w = split_ws(raw);
    if (w.empty()) continue;

    switch (state) {
      case Kind:
        if (w[0] != "kind") parse_fail(lineno, "expected 'kind'");
        if (w.size() == 3 && w[1] == "siegel") {
          M.kind = ModeqKind::Siegel;
          M.ell = static_cast<int>(to_i64(w[2], lineno));
          if (M.ell < 2) parse_fail(lineno, "ell must be at least 2");
        } else if (w.size() == 4 && w[1] == "hilbert_q5") {
          M.kind = ModeqKind::HilbertQ5;
          M.norm = to_i64(w[2], lineno);
          M.trace = to_i64(w[3], lineno);
        } else {
          parse_fail(lineno, "unknown kind line");
        }
        state = Vars;
        break;
      case Vars: {
        if (w.size() != 2 || w[0] != "vars") parse_fail(lineno, "expected 'vars <n>'");
        M.nvars = static_cast<int>(to_i64(w[1], lineno));
        int want = M.kind == ModeqKind::Siegel ? 3 : 2;
        if (M.nvars != want) {
          throw Error(Errc::WrongArity, "line " + std::to_string(lineno) + ": " +
                                            std::to_string(M.nvars) + " variables, expected " +
                                            std::to_string(want));
        }
        state = Header;
        break;
      }
      case Header: {
        if (w.size() != 3 || w[0] != "poly") parse_fail(lineno, "expected 'poly <i> <num_terms>'");
        int64_t idx = to_i64(w[1], lineno), n = to_i64(w[2], lineno);
        if (idx != static_cast<int64_t>(M.polys.size()) + 1) parse_fail(lineno, "polynomials out of order");
        if (n < 0) parse_fail(lineno, "negative term count");
        M.polys.emplace_back();
        pending = static_cast<size_t>(n);
        state = pending ? Terms : Header;
        break;
      }
      case Terms: {
        size_t want = 2 * M.nvars + 1;
        if (w.size() != want) {
          throw Error(Errc::WrongArity, "line " + std::to_string(lineno) + ": " +
                                            std::to_string(w.size() - 1) + " exponents, expected " +
                                            std::to_string(want - 1));
        }
        ModeqTerm t;
        for (size_t k = 0; k + 1 < w.size(); ++k) {
          int64_t e = to_i64(w[k], lineno);
          if (e < 0) parse_fail(lineno, "negative exponent");
          t.exps.push_back(static_cast<uint32_t>(e));
        }
        t.coeff = to_big(w.back(), lineno);
        M.polys.back().terms.push_back(std::move(t));
        if (--pending == 0) state = Header;
        break;
      }
    }
  }
  if (state == Kind || state == Vars) parse_fail(lineno, "truncated header");
  if (state == Terms) parse_fail(lineno, "missing terms");
  if (static_cast<int>(M.polys.size()) != M.nvars) {
    throw Error(Errc::WrongArity, std::to_string(M.polys.size()) + " polynomials, expected " +
                                      std::to_string(M.nvars));
  }
  return M;
}

ModularEquationSet load_modeq(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::InvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_modeq(ss.str());
}

ModeqEvaluation evaluate_and_differentiate(const ModularEquationSet& M, const FieldPtr& F,
                                           const std::vector<Fe>& left,
                                           const std::vector<Fe>& right) {
  const int n = M.nvars;
  if (static_cast<int>(left.size()) != n || static_cast<int>(right.size()) != n) {
    throw Error(Errc::WrongArity, "invariant tuple size does not match the equation set");
  }
  std::vector<Fe> pt(left);
  pt.insert(pt.end(), right.begin(), right.end());

  // Power tables per variable.
  std::vector<std::vector<Fe>> pw(2 * n);
  for (const auto& P : M.polys)
    for (const auto& t : P.terms)
      for (int k = 0; k < 2 * n; ++k)
        while (pw[k].size() <= t.exps[k]) {
          pw[k].push_back(pw[k].empty() ? F->one() : F->mul(pw[k].back(), pt[k]));
        }

  ModeqEvaluation out{std::vector<Fe>(M.polys.size()), Mat(F, n, n), Mat(F, n, n)};
  for (size_t i = 0; i < M.polys.size(); ++i) {
    bool nonzero = false;
    std::vector<Fe> grad(2 * n);
    for (const auto& t : M.polys[i].terms) {
      Fe c = F->from_bigint(t.coeff);
      if (F->is_zero(c)) continue;
      nonzero = true;
      Fe mono = c;
      for (int k = 0; k < 2 * n; ++k) mono = F->mul(mono, pw[k][t.exps[k]]);
      out.values[i] = F->add(out.values[i], mono);
      for (int k = 0; k < 2 * n; ++k) {
        if (t.exps[k] == 0) continue;
        Fe d = F->mul(c, F->from_u64(t.exps[k]));
        for (int l = 0; l < 2 * n; ++l) d = F->mul(d, pw[l][t.exps[l] - (l == k ? 1 : 0)]);
        grad[k] = F->add(grad[k], d);
      }
    }
    if (!nonzero) {
      throw Error(Errc::InvalidArgument,
                  "polynomial " + std::to_string(i + 1) + " vanishes mod " + std::to_string(F->p()));
    }
    for (int k = 0; k < n; ++k) {
      out.DL.at(static_cast<int>(i), k) = grad[k];
      out.DR.at(static_cast<int>(i), k) = grad[n + k];
    }
  }
  return out;
}

}  // namespace isogeny2
