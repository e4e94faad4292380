#include "dpf/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace dpf {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal Jacobi
// matrix, weights the squared first components of the eigenvectors.
QuadratureRule golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag) {
  const int m = static_cast<int>(diag.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), m);
  Eigen::VectorXd e(std::max(m - 1, 0));
  for (int i = 0; i + 1 < m; ++i) e[i] = offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("quadrature: tridiagonal eigensolver failed");
  }
  QuadratureRule rule;
  rule.order = m;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = solver.eigenvalues()[i];
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = v * v;
    total += rule.weights[i];
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

QuadratureRule build_jacobi(double a, double b, int m) {
  // Monic Jacobi recurrence on [-1, 1] for (1-x)^alpha (1+x)^beta, mapped to
  // u = (1+x)/2 so that the weight becomes u^(a-1) (1-u)^(b-1).
  const double alpha = b - 1.0;
  const double beta = a - 1.0;
  const double ab = alpha + beta;
  std::vector<double> diag(m), off(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) {
    double ak;
    if (k == 0) {
      ak = (beta - alpha) / (ab + 2.0);
    } else {
      const double s = 2.0 * k + ab;
      ak = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    diag[k] = 0.5 * (1.0 + ak);
  }
  for (int k = 1; k < m; ++k) {
    double bk;
    if (k == 1) {
      bk = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      bk = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off[k - 1] = 0.5 * std::sqrt(bk);
  }
  QuadratureRule rule = golub_welsch(diag, off);
  rule.a = a;
  rule.b = b;
  for (double& u : rule.nodes) u = std::clamp(u, 0.0, 1.0);
  return rule;
}

QuadratureRule build_laguerre(int m) {
  std::vector<double> diag(m), off(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) diag[k] = 2.0 * k + 1.0;
  for (int k = 1; k < m; ++k) off[k - 1] = k;
  return golub_welsch(diag, off);
}

using RuleKey = std::tuple<double, double, int>;

struct RuleCache {
  std::shared_mutex mutex;
  std::map<RuleKey, std::shared_ptr<const QuadratureRule>> rules;
};

RuleCache& cache() {
  static RuleCache c;
  return c;
}

template <class Build>
std::shared_ptr<const QuadratureRule> cached(const RuleKey& key, Build&& build) {
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    if (auto it = c.rules.find(key); it != c.rules.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(build());
  std::unique_lock lock(c.mutex);
  return c.rules.emplace(key, std::move(rule)).first->second;
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980627960, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double kronrod = kWgk[10] * f(c);
  double gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {lo, hi, kronrod * h, std::fabs((kronrod - gauss) * h)};
}

}  // namespace

std::shared_ptr<const QuadratureRule> jacobi_rule(double a, double b, int m) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("jacobi_rule: a and b must be positive");
  if (m < 1) throw std::invalid_argument("jacobi_rule: order must be at least 1");
  return cached({a, b, m}, [&] { return build_jacobi(a, b, m); });
}

std::shared_ptr<const QuadratureRule> laguerre_rule(int m) {
  if (m < 1) throw std::invalid_argument("laguerre_rule: order must be at least 1");
  // Negative shape slot keeps Laguerre keys disjoint from Jacobi keys.
  return cached({-1.0, -1.0, m}, [&] { return build_laguerre(m); });
}

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol, double rel_tol, int max_intervals) {
  if (lo == hi) return 0.0;
  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, lo, hi);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  int count = 1;
  while (error > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (count >= max_intervals) {
      throw std::runtime_error("integrate_adaptive: tolerance not reached");
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    Segment left = gauss_kronrod(f, worst.lo, mid);
    Segment right = gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum to shed the drift of incremental updates.
  total = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    heap.pop();
  }
  return total;
}

}  // namespace dpf
