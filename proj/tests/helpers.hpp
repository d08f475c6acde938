#pragma once

// shared test utilities: an independently tabulated octonion product oracle,
// random element/word generators, and scratch-file helpers for the CLI tests

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "naqm/naqm.hpp"

namespace testutil {

using namespace naqm;

// Octonion product oracle, tabulated here from the seven quaternionic triples
// (1,2,3) (1,4,5) (1,7,6) (2,4,6) (2,5,7) (3,4,7) (3,6,5): e_a e_b = e_c etc.
// Kept separate from the library construction so table bugs cannot cancel.
struct OctOracle {
  int sign[8][8] = {};
  int idx[8][8] = {};

  OctOracle() {
    for (int k = 0; k < 8; ++k) {
      sign[0][k] = sign[k][0] = 1;
      idx[0][k] = idx[k][0] = k;
    }
    for (int k = 1; k < 8; ++k) {
      sign[k][k] = -1;
      idx[k][k] = 0;
    }
    const int tri[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                           {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
    for (const auto& t : tri) {
      const int a = t[0], b = t[1], c = t[2];
      auto put = [&](int i, int j, int k) {
        sign[i][j] = 1;
        idx[i][j] = k;
        sign[j][i] = -1;
        idx[j][i] = k;
      };
      put(a, b, c);
      put(b, c, a);
      put(c, a, b);
    }
  }

  // product of basis elements as a coefficient vector
  Vec<Complex> product(int i, int j) const {
    Vec<Complex> v(8, Complex(0, 0));
    v[static_cast<size_t>(idx[i][j])] = Complex(sign[i][j], 0);
    return v;
  }
};

inline const OctOracle& oct_oracle() {
  static const OctOracle o;
  return o;
}

inline Element<Complex> random_element(const AlgebraPtr<Complex>& alg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec<Complex> v;
  for (int k = 0; k < alg->n; ++k) v.emplace_back(u(rng), u(rng));
  return {alg, v};
}

inline Element<ExactComplex> random_element_exact(const AlgebraPtr<ExactComplex>& alg,
                                                  std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(-6, 6);
  Vec<ExactComplex> v;
  for (int k = 0; k < alg->n; ++k)
    v.push_back(ExactComplex{Rational(u(rng), 3), Rational(u(rng), 2)});
  return {alg, v};
}

struct ScratchDir {
  std::filesystem::path dir;
  ScratchDir() {
    dir = std::filesystem::temp_directory_path() /
          ("naqm_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(dir);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
  }
  std::string file(const std::string& name, const std::string& content) const {
    auto p = dir / name;
    std::ofstream f(p, std::ios::binary);
    f << content;
    f.close();
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace testutil
