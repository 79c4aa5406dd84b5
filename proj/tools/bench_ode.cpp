// Times the divide-and-conquer and naive solvers for z theta' + (A + k) theta = B.

#include <chrono>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "isogeny2/solver.hpp"

using namespace isogeny2;

int main(int argc, char** argv) {
  CLI::App app{"ODE solver benchmark"};
  uint64_t p = 1000003;
  std::vector<size_t> sizes = {1024, 2048, 4096, 8192};
  uint64_t seed = 1;
  app.add_option("--p", p, "prime");
  app.add_option("--nu", sizes, "precisions");
  app.add_option("--seed", seed, "RNG seed");
  CLI11_PARSE(app, argc, argv);

  FieldPtr F = Field::prime(p);
  std::mt19937_64 rng(seed);
  auto rnd = [&](size_t n) {
    Series s(F, n);
    for (size_t i = 0; i < n; ++i) s[i] = F->random(rng);
    return s;
  };
  std::cout << "nu\tnaive_ms\tdac_ms\tspeedup\tequal\n";
  for (size_t nu : sizes) {
    SeriesMat A = {{{rnd(nu), rnd(nu)}, {rnd(nu), rnd(nu)}}};
    SeriesVec B = {rnd(nu), rnd(nu)};
    auto t0 = std::chrono::steady_clock::now();
    SeriesVec a = naive_ode_solve(A, B, 1, nu);
    auto t1 = std::chrono::steady_clock::now();
    SeriesVec b = dac_ode_solve(A, B, 1, nu);
    auto t2 = std::chrono::steady_clock::now();
    double tn = std::chrono::duration<double, std::milli>(t1 - t0).count();
    double td = std::chrono::duration<double, std::milli>(t2 - t1).count();
    bool eq = a[0].coeffs() == b[0].coeffs() && a[1].coeffs() == b[1].coeffs();
    std::cout << nu << '\t' << tn << '\t' << td << '\t' << tn / td << '\t' << (eq ? "yes" : "no") << '\n';
  }
}
