#pragma once

// Randomized suites for the wedge-operator identities, the block-determinant
// lemmas and det_k. Each suite reports its worst normalized residual against
// a fixed threshold.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "combinat.hpp"
#include "detk.hpp"
#include "exterior.hpp"
#include "opdet.hpp"
#include "oracles.hpp"

namespace koszul {

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  double worst = 0.0;     // normalized residual (or, for probes, the minimum)
  double threshold = 0.0; // pass iff worst <= threshold (>= for probes)
  bool lower_bound = false;
  bool pass = false;
};

struct IdentityConfig {
  std::uint64_t seed = 20240601;
  int max_m = 4;
  int max_d = 6;
  std::size_t instances = 100;
  std::size_t detk_instances = 200;
};

class IdentityRunner {
public:
  explicit IdentityRunner(const IdentityConfig &cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg.max_d < 3 || cfg.max_m < 2)
      detail::invalid("identities: need max_d >= 3 and max_m >= 2");
  }

  std::vector<SuiteResult> run_all() {
    return {qid(),         anticommute(), range_in_kernel(), chain_gram(),
            lemma1(),      lemma2(),      lemma2_full_rank_probe(),
            detk_eigen(),  detk_cauchy_binet()};
  }

  SuiteResult qid() {
    SuiteResult r{"qid", cfg_.instances, 0.0, 1e-10};
    for (std::size_t t = 0; t < cfg_.instances; ++t) {
      const int d = uniform(2, cfg_.max_d);
      const int n = uniform(0, d - 2);
      const CVector a = random_vector(d);
      r.worst = std::max(r.worst, verify_qid(a, n) / a.squaredNorm());
    }
    return finish(r);
  }

  SuiteResult anticommute() {
    SuiteResult r{"anticommute", cfg_.instances, 0.0, 1e-12};
    for (std::size_t t = 0; t < cfg_.instances; ++t) {
      const int d = uniform(2, cfg_.max_d);
      const int n = uniform(0, d - 2);
      const CVector a = random_vector(d), b = random_vector(d);
      r.worst = std::max(r.worst,
                         verify_anticommute(a, b, n) / (a.norm() * b.norm()));
    }
    return finish(r);
  }

  /// Q*^(n+1) Q*^(n) must vanish exactly.
  SuiteResult range_in_kernel() {
    SuiteResult r{"range_in_kernel", cfg_.instances, 0.0, 0.0};
    for (std::size_t t = 0; t < cfg_.instances; ++t) {
      const int d = uniform(2, cfg_.max_d);
      const int n = uniform(0, d - 2);
      const CVector a = random_vector(d);
      const CMatrix prod =
          q_star_matrix(a, n + 1).matrix * q_star_matrix(a, n).matrix;
      r.worst = std::max(r.worst, prod.cwiseAbs().maxCoeff());
    }
    return finish(r);
  }

  /// |chain_row(rows)|^2 against det(A A*).
  SuiteResult chain_gram() {
    SuiteResult r{"chain_gram", cfg_.instances, 0.0, 1e-8};
    for (std::size_t t = 0; t < cfg_.instances; ++t) {
      const int d = uniform(1, cfg_.max_d);
      const int k = uniform(1, std::min(4, d));
      std::vector<CVector> rows;
      for (int i = 0; i < k; ++i)
        rows.push_back(random_vector(d));
      const double lhs = chain_row(rows).squaredNorm();
      const double gram = oracle::gram_determinant(rows);
      r.worst = std::max(r.worst, std::abs(lhs - gram) / gram);
    }
    return finish(r);
  }

  SuiteResult lemma1() {
    SuiteResult r{"lemma1", cfg_.instances, 0.0, 1e-9};
    for (std::size_t t = 0; t < cfg_.instances; ++t) {
      const int p = uniform(1, 3);
      const int d = uniform(std::max(3, p), cfg_.max_d);
      std::vector<cd> h;
      std::vector<CVector> rows;
      for (int i = 0; i <= p; ++i) {
        h.push_back(random_complex());
        rows.push_back(random_vector(d));
      }
      r.worst = std::max(r.worst, lemma1_check(h, rows));
    }
    return finish(r);
  }

  SuiteResult lemma2() {
    SuiteResult r{"lemma2", cfg_.instances, 0.0, 1e-8};
    for (std::size_t t = 0; t < cfg_.instances; ++t) {
      const int p = uniform(1, 2);
      const int m = uniform(p + 1, std::max(p + 1, cfg_.max_m));
      const int d = uniform(p, cfg_.max_d);
      const CMatrix f = random_matrix(m, p) * random_matrix(p, d);
      const auto tuples = enumerate_tuples(m, p + 1);
      const auto &pi = tuples[static_cast<std::size_t>(
          uniform(0, static_cast<int>(tuples.size()) - 1))];
      r.worst = std::max(r.worst, lemma2_check(f, random_vector(d), pi));
    }
    return finish(r);
  }

  /// Full-rank data must make the same block determinant visibly nonzero.
  SuiteResult lemma2_full_rank_probe() {
    SuiteResult r{"lemma2_full_rank_probe", cfg_.instances, 0.0, 1e-3, true};
    bool first = true;
    for (std::size_t t = 0; t < cfg_.instances; ++t) {
      const int p = uniform(1, 2);
      const int m = p + 1;
      const int d = uniform(p + 1, cfg_.max_d);
      const CMatrix f = random_matrix(m, d);
      const auto pi = enumerate_tuples(m, p + 1).front();
      const double v = lemma2_det(f, random_vector(d), pi).norm();
      r.worst = first ? v : std::min(r.worst, v);
      first = false;
    }
    return finish(r);
  }

  SuiteResult detk_eigen() {
    SuiteResult r{"detk_eigenvalues", cfg_.detk_instances, 0.0, 1e-8};
    for (std::size_t t = 0; t < cfg_.detk_instances; ++t) {
      const int m = uniform(1, 6);
      const CMatrix raw = random_matrix(m, m);
      const HermitianMatrix b(raw);
      for (int k = 1; k <= m; ++k) {
        const double expect = oracle::detk_by_eigenvalues(b.matrix(), k);
        const double scale = std::max(oracle::detk_scale(b.matrix(), k), 1e-300);
        r.worst = std::max(r.worst, std::abs(det_k(b, k) - cd(expect)) / scale);
      }
    }
    return finish(r);
  }

  SuiteResult detk_cauchy_binet() {
    SuiteResult r{"detk_cauchy_binet", cfg_.detk_instances, 0.0, 1e-10};
    for (std::size_t t = 0; t < cfg_.detk_instances; ++t) {
      const int m = uniform(1, std::min(4, cfg_.max_m));
      const int d = uniform(1, cfg_.max_d);
      const CMatrix f = random_matrix(m, d);
      for (int k = 1; k <= m; ++k) {
        const double expect = oracle::detk_cauchy_binet(f, k);
        const double got = det_k_gram(f, k);
        const double scale =
            expect > 0.0 ? expect : std::pow(f.squaredNorm(), k);
        r.worst = std::max(r.worst, std::abs(got - expect) / scale);
      }
    }
    return finish(r);
  }

private:
  static SuiteResult finish(SuiteResult r) {
    r.pass = r.lower_bound ? r.worst > r.threshold : r.worst <= r.threshold;
    return r;
  }

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  cd random_complex() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng_), u(rng_)};
  }
  CVector random_vector(int n) {
    CVector v(n);
    for (int i = 0; i < n; ++i)
      v(i) = random_complex();
    return v;
  }
  CMatrix random_matrix(int r, int c) {
    CMatrix a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        a(i, j) = random_complex();
    return a;
  }

  IdentityConfig cfg_;
  std::mt19937_64 rng_;
};

} // namespace koszul
