#pragma once

#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace susydelta {

/// Bisection on a bracket with f(lo), f(hi) of opposite sign (or one of them zero).
double bisect(const std::function<double(double)>& f, double lo, double hi, double rel_tol = 1e-12);

struct ScanOptions {
  int samples = 10000;
  double rel_tol = 1e-12;
  double merge_tol = 1e-9;
  int threads = 1;
};

/// Sign-change scan of f on [lo, hi] with uniform samples, each bracket refined by bisection.
/// Non-finite samples are skipped and split the bracket. Roots are sorted and merged.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               const ScanOptions& opt = {});

/// Sorts and merges values closer than tol (relative to max(1, |x|)).
std::vector<double> merge_sorted(std::vector<double> xs, double tol);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod 7/15 on [a, b] to absolute tolerance abs_tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-13, int max_depth = 40);

/// Neville table for samples f(h_i) with an error expansion in odd powers of h,
/// h_i decreasing geometrically. Returns the last diagonal entry.
double richardson_odd(std::span<const double> h, std::span<const double> values);

/// Adds multiples of period so that consecutive entries differ by at most period/2.
std::vector<double> unwrap(std::span<const double> phases, double period);

/// Evaluates f(0..n-1) into a vector with static chunking over up to `threads` workers.
/// Output order does not depend on the worker count.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int threads, F&& f) {
  std::vector<T> out(n);
  std::size_t workers = threads > 1 ? static_cast<std::size_t>(threads) : 1;
  if (workers > n) workers = n == 0 ? 1 : n;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace susydelta
