#include "isogeny2/pipeline.hpp"

#include <chrono>
#include <future>
#include <regex>

#include "isogeny2/jacobian_oracle.hpp"
#include "isogeny2/modeq.hpp"
#include "isogeny2/rm_q5.hpp"
#include "isogeny2/tangent.hpp"

namespace isogeny2 {

using nlohmann::json;

const char* genericity_hint(Errc e) {
  switch (e) {
    case Errc::SingularCurve: return "the curve must be smooth (I10 != 0)";
    case Errc::ZeroI4: return "I4 = 0 is outside the generic locus";
    case Errc::SingularMatrix: return "derivative matrices of the modular equations must be invertible (generic isogeny)";
    case Errc::SingularJacobian: return "the Gundlach chart must be a local isomorphism";
    case Errc::InconsistentChainRule: return "the curve is not Hilbert-normalized (not tangent to the Humbert surface)";
    case Errc::NonDiagonalSolution: return "the curves are not Hilbert-normalized compatibly";
    case Errc::EqualRoots: return "the base point is not of generic type, or the tangent matrix is wrong";
    case Errc::NonInvertibleLeading: return "the characteristic must exceed the precision";
    case Errc::CandidateRejected: return "the series are not rational fractions of the prescribed degree";
    case Errc::NotAPerfectSquare: return "s and p do not come from an isogeny";
    case Errc::SignMismatch: return "q or r disagrees with the lift";
    case Errc::NoGenericPoint: return "no base point of generic type";
    case Errc::NotOnHumbert: return "the invariants do not lie on the Humbert surface";
    case Errc::DegenerateGundlach: return "degenerate Gundlach invariants";
    default: return "";
  }
}

// ------------------------------------------------------------ parsing

namespace {

std::vector<int64_t> parse_poly_in_a(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(Errc::ParseError, "empty matrix entry");
  std::vector<int64_t> out(2, 0);
  static const std::regex term(R"(([+-]?)(\d*)(\*?a)?)");
  size_t pos = 0;
  while (pos < s.size()) {
    std::smatch mt;
    std::string rest = s.substr(pos);
    if (!std::regex_search(rest, mt, term, std::regex_constants::match_continuous) ||
        mt.length(0) == 0 || (mt[2].length() == 0 && !mt[3].matched)) {
      throw Error(Errc::ParseError, "bad matrix entry '" + text + "'");
    }
    int64_t v = mt[2].length() ? std::stoll(mt[2].str()) : 1;
    if (mt[1] == "-") v = -v;
    out[mt[3].matched ? 1 : 0] += v;
    pos += static_cast<size_t>(mt.length(0));
  }
  if (out[1] == 0) out.resize(1);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int64_t> parse_ints(const std::string& s) {
  std::vector<int64_t> out;
  for (auto& t : split(s, ',')) {
    try {
      out.push_back(std::stoll(t));
    } catch (const std::logic_error&) {
      throw Error(Errc::ParseError, "bad integer list '" + s + "'");
    }
  }
  return out;
}

}  // namespace

TangentSpec parse_tangent_spec(const std::string& text) {
  auto rows = split(text, ';');
  if (rows.size() != 2) throw Error(Errc::ParseError, "tangent matrix needs two rows separated by ';'");
  TangentSpec t;
  for (int i = 0; i < 2; ++i) {
    auto cols = split(rows[i], ',');
    if (cols.size() != 2) throw Error(Errc::ParseError, "tangent matrix rows need two entries");
    for (int j = 0; j < 2; ++j) t.entries[i][j] = parse_poly_in_a(cols[j]);
  }
  return t;
}

std::pair<int64_t, int64_t> parse_minpoly(const std::string& text) {
  auto v = parse_ints(text);
  if (v.size() != 2) throw Error(Errc::ParseError, "minimal polynomial needs 'b,c'");
  return {v[0], v[1]};
}

PathKind parse_path(const std::string& s) {
  if (s == "siegel") return PathKind::Siegel;
  if (s == "hilbert-q5" || s == "hilbert_q5") return PathKind::HilbertQ5;
  if (s == "endo" || s == "endomorphism") return PathKind::Endomorphism;
  throw Error(Errc::ParseError, "unknown path '" + s + "'");
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  try {
    c.p = j.at("p").get<uint64_t>();
    c.path = parse_path(j.value("path", std::string("siegel")));
    auto vec = [&](const char* k, std::optional<std::vector<int64_t>>& out) {
      if (j.contains(k)) out = j.at(k).get<std::vector<int64_t>>();
    };
    vec("j", c.j);
    vec("jprime", c.jp);
    vec("g", c.g);
    vec("gprime", c.gp);
    vec("C", c.C);
    vec("Cprime", c.Cp);
    c.ell = j.value("ell", 0);
    c.beta_norm = j.value("beta_norm", int64_t{0});
    c.beta_trace = j.value("beta_trace", int64_t{0});
    c.m = j.value("m", 0);
    c.modeq_path = j.value("modeq", std::string());
    if (j.contains("tangent")) c.tangent = parse_tangent_spec(j.at("tangent").get<std::string>());
    if (j.contains("tangent_field")) {
      if (!c.tangent) throw Error(Errc::ParseError, "tangent_field without tangent");
      const auto& f = j.at("tangent_field");
      c.tangent->minpoly = f.is_string() ? parse_minpoly(f.get<std::string>())
                                         : std::make_pair(f.at(0).get<int64_t>(), f.at(1).get<int64_t>());
    }
    if (j.contains("sqrt5")) c.sqrt5 = j.at("sqrt5").get<int64_t>();
    if (j.contains("precision")) c.precision = j.at("precision").get<size_t>();
    if (j.contains("base_u")) c.base_u = j.at("base_u").get<int64_t>();
    c.seed = j.value("seed", uint64_t{1});
    c.oracle_points = j.value("oracle_points", 20);
    c.timings = j.value("timings", true);
    c.parallel = j.value("parallel", true);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return c;
}

// ------------------------------------------------------------ JSON output

namespace {

json fe_json(const Field& F, const Fe& x) {
  if (F.in_prime_field(x)) return x.c[0];
  return F.coeffs(x);
}

json poly_json(const Poly& P) {
  json a = json::array();
  for (const Fe& c : P.coeffs()) a.push_back(fe_json(*P.field(), c));
  return a;
}

json frac_json(const RationalFraction& f) { return {{"num", poly_json(f.num())}, {"den", poly_json(f.den())}}; }

json field_json(const Field& F) { return {{"p", F.p()}, {"degree", F.degree()}, {"tower", F.tower()}}; }

json curve_json(const CurveModel& C) {
  json a = json::array();
  for (const Fe& c : C.sextic().a) a.push_back(fe_json(*C.field(), c));
  return a;
}

json mat_json(const Mat& M) {
  json a = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < M.cols(); ++j) r.push_back(fe_json(*M.field(), M.at(i, j)));
    a.push_back(r);
  }
  return a;
}

json error_json(const Error& e) {
  json o = {{"code", errc_name(e.code())}, {"message", e.what()}};
  if (*genericity_hint(e.code())) o["condition"] = genericity_hint(e.code());
  return o;
}

using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

std::array<Fe, 3> triple(const FieldPtr& F, const std::vector<int64_t>& v) {
  if (v.size() != 3) throw Error(Errc::WrongArity, "Igusa invariants need three values");
  return {F->from_int(v[0]), F->from_int(v[1]), F->from_int(v[2])};
}

GundlachPoint pair_g(const FieldPtr& F, const std::vector<int64_t>& v) {
  if (v.size() != 2) throw Error(Errc::WrongArity, "Gundlach invariants need two values");
  return {F->from_int(v[0]), F->from_int(v[1])};
}

CurveModel curve_from(const FieldPtr& F, const std::vector<int64_t>& a) {
  if (a.size() < 6 || a.size() > 7) throw Error(Errc::WrongArity, "a sextic needs 6 or 7 coefficients");
  return CurveModel::from_ints(F, a);
}

struct Curves {
  CurveModel C, Cp;
  std::optional<GundlachPoint> g, gp;
};

Curves build_curves(const RunConfig& cfg, const FieldPtr& F, std::mt19937_64& rng) {
  Curves cv;
  if (cfg.path == PathKind::Endomorphism) {
    if (cfg.C) {
      cv.C = curve_from(F, *cfg.C);
    } else if (cfg.j) {
      cv.C = mestre_reconstruct(F, triple(F, *cfg.j), rng);
    } else {
      for (;;) {
        std::vector<Fe> a(7);
        for (auto& x : a) x = F->random(rng);
        try {
          cv.C = CurveModel(BinaryForm{F, a});
          break;
        } catch (const Error&) {
        }
      }
    }
    cv.Cp = cv.C;
    return cv;
  }
  if (cfg.C && cfg.Cp) {
    cv.C = curve_from(F, *cfg.C);
    cv.Cp = curve_from(F, *cfg.Cp);
    return cv;
  }
  if (cfg.path == PathKind::Siegel) {
    if (!cfg.j || !cfg.jp) throw Error(Errc::InvalidArgument, "Siegel path needs curves or j and j'");
    cv.C = mestre_reconstruct(F, triple(F, *cfg.j), rng);
    cv.Cp = mestre_reconstruct(F, triple(F, *cfg.jp), rng);
    return cv;
  }
  if (!cfg.g || !cfg.gp) throw Error(Errc::InvalidArgument, "Hilbert path needs curves or g and g'");
  cv.g = pair_g(F, *cfg.g);
  cv.gp = pair_g(F, *cfg.gp);
  cv.C = hilb_curve_reconstruct(F, *cv.g, rng);
  cv.Cp = hilb_curve_reconstruct(cv.C.field(), *cv.gp, rng);
  cv.C = cv.C.lift(cv.Cp.field());
  return cv;
}

struct Candidate {
  Mat dphi;
  std::string tag;
};

Mat tangent_from_spec(const TangentSpec& t, const FieldPtr& Kc) {
  FieldPtr K = Kc;
  if (t.minpoly) K = Field::extend(Kc, Kc->from_int(t.minpoly->first), Kc->from_int(t.minpoly->second));
  Mat M(K, 2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto& e = t.entries[i][j];
      if (e.size() > 1 && !t.minpoly) throw Error(Errc::ParseError, "entry uses 'a' but no field was given");
      Fe v = K->from_int(e[0]);
      if (e.size() > 1) v = K->add(v, K->mul(K->from_int(e[1]), K->gen()));
      M.at(i, j) = v;
    }
  return M;
}

std::vector<Candidate> tangent_candidates(const RunConfig& cfg, const Curves& cv, json& info) {
  const FieldPtr& K = cv.C.field();
  if (cfg.tangent) return {{tangent_from_spec(*cfg.tangent, K), "supplied"}};
  if (cfg.path == PathKind::Endomorphism) {
    return {{Mat::identity(K, 2).scale(K->from_int(cfg.m)), "endomorphism"}};
  }
  if (cfg.modeq_path.empty()) throw Error(Errc::InvalidArgument, "need a modular equation file or a tangent matrix");
  ModularEquationSet M = load_modeq(cfg.modeq_path);
  if (cfg.path == PathKind::Siegel) {
    if (M.kind != ModeqKind::Siegel || M.ell != cfg.ell) {
      throw Error(Errc::InvalidArgument, "modular equation file does not match the Siegel level");
    }
    auto j = igusa_invariants(cv.C.sextic()), jp = igusa_invariants(cv.Cp.sextic());
    auto ev = evaluate_and_differentiate(M, K, {j.begin(), j.end()}, {jp.begin(), jp.end()});
    bool on = std::all_of(ev.values.begin(), ev.values.end(), [&](const Fe& x) { return K->is_zero(x); });
    info["modeq_values_zero"] = on;
    if (!on) throw Error(Errc::InvalidArgument, "invariants are not on the modular correspondence");
    Mat D = deformation_matrix_siegel(ev.DL, ev.DR, dtau_j_matrix(cv.C.sextic()),
                                      dtau_j_matrix(cv.Cp.sextic()));
    info["deformation_matrix"] = mat_json(D);
    auto dphi = sym2_extract(D, K->inv(K->from_int(cfg.ell)));
    if (!dphi) throw Error(Errc::NonGenericInvariants, "ell times the deformation matrix is not a symmetric square");
    return {{*dphi, "siegel"}};
  }
  if (M.kind != ModeqKind::HilbertQ5 || M.norm != cfg.beta_norm || M.trace != cfg.beta_trace) {
    throw Error(Errc::InvalidArgument, "modular equation file does not match beta");
  }
  Fe s5 = cfg.sqrt5 ? K->from_int(*cfg.sqrt5) : sqrt5(K);
  if (K->sqr(s5) != K->from_int(5)) throw Error(Errc::InvalidArgument, "sqrt5 is not a square root of 5");
  GundlachPoint g = cv.g ? *cv.g : igusa_to_gundlach(K, igusa_invariants(cv.C.sextic()));
  GundlachPoint gp = cv.gp ? *cv.gp : igusa_to_gundlach(K, igusa_invariants(cv.Cp.sextic()));
  Mat dC = dtG_matrix(cv.C, s5, g), dCp = dtG_matrix(cv.Cp, s5, gp);
  info["dtg_C"] = mat_json(dC);
  info["dtg_Cprime"] = mat_json(dCp);
  auto ev = evaluate_and_differentiate(M, K, {g.g1, g.g2}, {gp.g1, gp.g2});
  bool on = std::all_of(ev.values.begin(), ev.values.end(), [&](const Fe& x) { return K->is_zero(x); });
  info["modeq_values_zero"] = on;
  if (!on) throw Error(Errc::InvalidArgument, "invariants are not on the modular correspondence");
  auto [b, bb] = beta_pair(K, cfg.beta_norm, cfg.beta_trace, s5);
  info["beta"] = fe_json(*K, b);
  std::vector<Candidate> out;
  for (auto& c : tangent_candidates_hilbert(ev.DL, ev.DR, dC, dCp, b, bb)) out.push_back({c.dphi, c.tag});
  return out;
}

DegreeBounds bounds_for(const RunConfig& cfg) {
  switch (cfg.path) {
    case PathKind::Siegel:
      if (cfg.ell < 2) throw Error(Errc::InvalidArgument, "ell must be given");
      return degree_bounds_siegel(cfg.ell);
    case PathKind::HilbertQ5:
      if (cfg.beta_trace <= 0) throw Error(Errc::InvalidArgument, "beta trace must be given");
      return degree_bounds_hilbert(cfg.beta_trace);
    case PathKind::Endomorphism:
      if (cfg.m < 2) throw Error(Errc::InvalidArgument, "m must be at least 2");
      return degree_bounds_endomorphism(cfg.m);
  }
  return {};
}

json process_candidate(const RunConfig& cfg, const Curves& cv, const Candidate& cand,
                       uint64_t seed) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(seed);
  json out = {{"tag", cand.tag}, {"dphi", mat_json(cand.dphi)}};
  try {
    DegreeBounds bounds = bounds_for(cfg);
    FieldPtr Kc = cand.dphi.field();
    CurveModel C = cv.C.lift(Kc), Cp = cv.Cp.lift(Kc);
    Mat dphi = cand.dphi;

    std::optional<Fe> want;
    if (cfg.base_u) {
      want = Kc->from_int(*cfg.base_u);
      if (!Kc->is_zero(C.eval(*want))) throw Error(Errc::InvalidArgument, "base_u must be a Weierstrass point");
    }
    BasePoint bp = find_base_point(C, dphi, Cp, rng, true, want);
    if (want && (!bp.weierstrass || bp.P.u != *want)) {
      throw Error(Errc::NoGenericPoint, "the requested base point is not of generic type");
    }
    if (bp.weierstrass) {
      // Standard form: the base point goes to (0, 0) with E'(0) = 1.
      const FieldPtr& L = bp.field;
      CurveModel CL = C.lift(L);
      Gl2Result g = gl2_transform(CL, weierstrass_to_origin(CL, bp.P.u));
      out["standard_form"] = curve_json(g.curve);
      out["tangent_factor"] = mat_json(g.tangent_factor);
      C = g.curve;
      Cp = Cp.lift(L);
      dphi = dphi.lift(L) * g.tangent_factor;
      bp = find_base_point(C, dphi, Cp, rng, true, Fe{});
      if (!bp.weierstrass || !bp.field->is_zero(bp.P.u)) {
        throw Error(Errc::NoGenericPoint, "standard form lost its Weierstrass base point");
      }
    }
    const FieldPtr& L = bp.field;
    C = C.lift(L);
    Cp = Cp.lift(L);
    out["field"] = field_json(*L);
    out["base_point"] = {{"u", fe_json(*L, bp.P.u)}, {"v", fe_json(*L, bp.P.v)}};
    out["chart"] = bp.weierstrass ? "weierstrass" : "generic";

    size_t nu = required_precision(bounds, bp.weierstrass ? ChartKind::Weierstrass : ChartKind::Generic);
    if (cfg.precision) {
      if (*cfg.precision < nu) {
        throw Error(Errc::PrecisionTooLow, "precision override " + std::to_string(*cfg.precision) +
                                                " is below the required " + std::to_string(nu));
      }
      nu = *cfg.precision;
    }
    out["precision"] = nu;

    auto t1 = Clock::now();
    LiftProblem pb = make_lift_problem(C, Cp, dphi, bp, nu);
    LocalLift lift = solve_lift(pb);
    LiftResiduals res = lift_residuals(pb, lift);
    double t_lift = ms_since(t1);
    bool res_ok = res.ode1 >= nu - 1 && res.ode2 >= nu - 1 && res.curve1 >= nu && res.curve2 >= nu;
    json resid = {{"ode", {res.ode1, res.ode2}}, {"curve", {res.curve1, res.curve2}}, {"ok", res_ok}};
    if (!res_ok) throw Error(Errc::ResidualNonzero, "lift does not satisfy the system to full precision");

    t1 = Clock::now();
    SPResult sp = reconstruct_sp(pb, lift, bounds);
    QRResult qr = deduce_qr(pb, lift, sp, C);
    double t_rec = ms_since(t1);
    out["s"] = frac_json(sp.s.even);
    out["s_odd"] = frac_json(sp.s.odd);
    out["p"] = frac_json(sp.p.even);
    out["p_odd"] = frac_json(sp.p.odd);
    out["q_even"] = frac_json(qr.q.even);
    out["q_odd"] = frac_json(qr.q.odd);
    out["r_even"] = frac_json(qr.r.even);
    out["r_odd"] = frac_json(qr.r.odd);

    t1 = Clock::now();
    RationalRepresentation rep{sp.s, sp.p, qr.q, qr.r, bp.P, C, Cp};
    VerificationReport vr = verify_rational_rep(rep, dphi, bounds, nu, rng);
    json ver = {{"rr1", vr.rr1},           {"rr2", vr.rr2},
                {"second_chart", vr.second_chart}, {"degrees", vr.degrees},
                {"points", vr.points},     {"points_checked", vr.points_checked},
                {"residuals", resid}};
    bool ok = vr.ok();
    if (!vr.detail.empty()) ver["detail"] = vr.detail;
    if (cfg.path == PathKind::Endomorphism && !cfg.tangent) {
      JacobianOracle J(C, rng);
      int checked = 0, agreed = 0;
      const Field& F = *L;
      for (int k = 0; k < 100 * cfg.oracle_points && checked < cfg.oracle_points; ++k) {
        Fe u = F.random(rng);
        auto v = F.sqrt(C.eval(u));
        if (!v || F.is_zero(*v)) continue;
        auto a = eval_rep(rep, u, *v);
        if (!a) continue;
        try {
          auto o = oracle_rational_rep(J, bp.P, cfg.m, {u, *v, false});
          ++checked;
          agreed += o == *a;
        } catch (const Error& e) {
          if (e.code() != Errc::NonGenericPosition) throw;
        }
      }
      ver["oracle"] = {{"checked", checked}, {"agreed", agreed}};
      ok = ok && checked > 0 && agreed == checked;
    }
    out["verification"] = ver;
    out["status"] = ok ? "accepted" : "rejected";
    if (!ok) out["reason"] = "verification failed";
    if (cfg.timings) {
      out["timings_ms"] = {{"lift", t_lift}, {"reconstruct", t_rec}, {"verify", ms_since(t1)},
                           {"total", ms_since(t0)}};
    }
  } catch (const Error& e) {
    out["status"] = "rejected";
    out["reason"] = error_json(e);
    if (cfg.timings) out["timings_ms"] = {{"total", ms_since(t0)}};
  }
  return out;
}

}  // namespace

json run(const RunConfig& cfg) {
  auto t0 = Clock::now();
  if (!is_prime_u64(cfg.p) || cfg.p <= 5) throw Error(Errc::InvalidArgument, "p must be a prime > 5");
  if (cfg.tangent && !cfg.modeq_path.empty()) {
    throw Error(Errc::InvalidArgument, "give either a modular equation file or a tangent matrix, not both");
  }
  FieldPtr F = Field::prime(cfg.p);
  std::mt19937_64 rng(cfg.seed);
  json out;
  out["field"] = field_json(*F);

  auto t1 = Clock::now();
  Curves cv = build_curves(cfg, F, rng);
  double t_curves = ms_since(t1);
  out["curves"] = {{"C", curve_json(cv.C)}, {"Cprime", curve_json(cv.Cp)}};
  out["curves_field"] = field_json(*cv.C.field());
  {
    auto j = igusa_invariants(cv.C.sextic()), jp = igusa_invariants(cv.Cp.sextic());
    const Field& K = *cv.C.field();
    out["invariants"] = {{"j", {fe_json(K, j[0]), fe_json(K, j[1]), fe_json(K, j[2])}},
                         {"jprime", {fe_json(K, jp[0]), fe_json(K, jp[1]), fe_json(K, jp[2])}}};
  }

  t1 = Clock::now();
  json tinfo = json::object();
  std::vector<Candidate> cands;
  try {
    cands = tangent_candidates(cfg, cv, tinfo);
  } catch (const Error& e) {
    tinfo["error"] = error_json(e);
  }
  double t_tangent = ms_since(t1);
  out["tangent"] = tinfo;

  std::vector<json> results(cands.size());
  auto seed_of = [&](size_t i) { return cfg.seed + 0x9e3779b97f4a7c15ULL * (i + 1); };
  if (cfg.parallel && cands.size() > 1) {
    std::vector<std::future<json>> fut;
    for (size_t i = 0; i < cands.size(); ++i) {
      fut.push_back(std::async(std::launch::async, process_candidate, std::cref(cfg), std::cref(cv),
                               std::cref(cands[i]), seed_of(i)));
    }
    for (size_t i = 0; i < cands.size(); ++i) results[i] = fut[i].get();
  } else {
    for (size_t i = 0; i < cands.size(); ++i) results[i] = process_candidate(cfg, cv, cands[i], seed_of(i));
  }
  out["candidates"] = results;
  int accepted = 0;
  out["base_point"] = nullptr;
  for (const auto& r : results) {
    if (r["status"] == "accepted") {
      if (!accepted) out["base_point"] = r["base_point"];
      ++accepted;
    }
  }
  out["accepted"] = accepted;
  if (cfg.timings) {
    json per = json::array();
    for (const auto& r : results) per.push_back(r.contains("timings_ms") ? r["timings_ms"]["total"] : json(nullptr));
    out["timings_ms"] = {{"curves", t_curves}, {"tangent", t_tangent}, {"candidates", per},
                         {"total", ms_since(t0)}};
  }
  return out;
}

}  // namespace isogeny2
