#pragma once

// End-to-end computation: curves, tangent candidates, lift, reconstruction
// and verification, reported as JSON.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isogeny2/reconstruct.hpp"

namespace isogeny2 {

enum class PathKind { Siegel, HilbertQ5, Endomorphism };

// 2x2 matrix whose entries are polynomials in a generator `a` of
// F_p[a]/(a^2 + b a + c); without a minpoly the entries are integers.
struct TangentSpec {
  std::optional<std::pair<int64_t, int64_t>> minpoly;  // (b, c)
  std::array<std::array<std::vector<int64_t>, 2>, 2> entries;
};

// "53481+50651a, 0; 0, 5538+11076a"; entries are sums of signed integer
// terms, optionally followed by `a` or `*a`.
TangentSpec parse_tangent_spec(const std::string& text);
// "b,c" for a^2 + b a + c.
std::pair<int64_t, int64_t> parse_minpoly(const std::string& text);

struct RunConfig {
  uint64_t p = 0;
  PathKind path = PathKind::Siegel;
  std::optional<std::vector<int64_t>> j, jp;   // Igusa triples
  std::optional<std::vector<int64_t>> g, gp;   // Gundlach pairs
  std::optional<std::vector<int64_t>> C, Cp;   // sextic coefficients a0..a6
  int ell = 0;
  int64_t beta_norm = 0, beta_trace = 0;
  int m = 0;
  std::string modeq_path;
  std::optional<TangentSpec> tangent;
  std::optional<int64_t> sqrt5;
  std::optional<size_t> precision;
  std::optional<int64_t> base_u;  // prefer the base point with this u
  uint64_t seed = 1;
  int oracle_points = 20;
  bool timings = true;
  bool parallel = true;
};

PathKind parse_path(const std::string& s);
RunConfig config_from_json(const nlohmann::json& j);

// Throws Error on invalid configurations; per-candidate failures are
// reported inside the output.
nlohmann::json run(const RunConfig& cfg);

// Genericity condition behind an error code, for reports.
const char* genericity_hint(Errc e);

}  // namespace isogeny2
