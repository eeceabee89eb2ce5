#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "casimir/common.hpp"

namespace casimir {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Gauss-Legendre nodes/weights on (-1,1) by Newton iteration on P_n.
inline QuadRule compute_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi-style initial guess, then Newton.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace detail

//! Gauss-Legendre rule on (-1,1), memoized per node count.
inline const QuadRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, QuadRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_legendre(n)).first;
  return it->second;
}

//! Gauss-Legendre rule mapped to (0,1).
inline QuadRule gauss_legendre_01(int n) {
  const QuadRule& gl = gauss_legendre(n);
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = 0.5 * (gl.nodes[i] + 1.0);
    r.weights[i] = 0.5 * gl.weights[i];
  }
  return r;
}

// Open rule for integrals over (1, inf) via x = 1 + t/(1-t).  Weights carry
// the Jacobian dx/dt = 1/(1-t)^2; no node lands on the x = 1 endpoint.
struct HalfLineRule {
  std::vector<double> x;
  std::vector<double> w;

  explicit HalfLineRule(int n) {
    QuadRule r = gauss_legendre_01(n);
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      double t = r.nodes[i];
      double om = 1.0 - t;
      x[i] = 1.0 + t / om;
      w[i] = r.weights[i] / (om * om);
    }
  }
};

// Rule for (0, inf) via xi = scale * u/(1-u); scale sets the node cluster.
struct FrequencyRule {
  std::vector<double> xi;
  std::vector<double> w;

  FrequencyRule(int n, double scale) {
    QuadRule r = gauss_legendre_01(n);
    xi.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      double u = r.nodes[i];
      double om = 1.0 - u;
      xi[i] = scale * u / om;
      w[i] = r.weights[i] * scale / (om * om);
    }
  }
};

}  // namespace casimir
