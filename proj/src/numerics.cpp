#include "susydelta/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace susydelta {

double bisect(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("bisect: bracket has no sign change");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi)) || mid == lo || mid == hi) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> merge_sorted(std::vector<double> xs, double tol) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (!out.empty() && std::abs(x - out.back()) <= tol * std::max(1.0, std::abs(x))) continue;
    out.push_back(x);
  }
  return out;
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               const ScanOptions& opt) {
  std::vector<double> roots;
  if (!(hi > lo) || opt.samples < 2) return roots;
  const std::size_t n = static_cast<std::size_t>(opt.samples);
  auto xs = parallel_map<double>(n, 1, [&](std::size_t i) {
    return i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  });
  auto fs = parallel_map<double>(n, opt.threads, [&](std::size_t i) { return f(xs[i]); });

  // each bracket is independent; refine in parallel, collect in order
  std::vector<std::size_t> brackets;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(fs[i])) continue;
    if (fs[i] == 0.0) roots.push_back(xs[i]);
    if (i + 1 < n && std::isfinite(fs[i + 1]) && fs[i] != 0.0 && fs[i + 1] != 0.0 &&
        (fs[i] > 0) != (fs[i + 1] > 0))
      brackets.push_back(i);
  }
  auto refined = parallel_map<double>(brackets.size(), opt.threads, [&](std::size_t b) {
    std::size_t i = brackets[b];
    double r = bisect(f, xs[i], xs[i + 1], opt.rel_tol);
    // a sign change through a pole leaves a large residual at the "root"
    double fr = f(r);
    if (!std::isfinite(fr) || std::abs(fr) > std::max(std::abs(fs[i]), std::abs(fs[i + 1])))
      return std::numeric_limits<double>::quiet_NaN();
    return r;
  });
  for (double r : refined)
    if (std::isfinite(r)) roots.push_back(r);
  return merge_sorted(std::move(roots), opt.merge_tol);
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

QuadratureResult gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    double s = f(c - dx) + f(c + dx);
    resk += kWgk[j] * s;
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  return {resk * h, std::abs((resk - resg) * h), 15};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
           QuadratureResult& acc) {
  QuadratureResult r = gk15(f, a, b);
  acc.evaluations += r.evaluations;
  if (r.error <= tol || depth <= 0) {
    acc.value += r.value;
    acc.error += r.error;
    return;
  }
  double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth - 1, acc);
  adapt(f, m, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_depth) {
  QuadratureResult acc;
  if (a == b) return acc;
  adapt(f, a, b, abs_tol, max_depth, acc);
  return acc;
}

double richardson_odd(std::span<const double> h, std::span<const double> values) {
  if (h.size() != values.size() || h.empty()) throw std::invalid_argument("richardson_odd: size mismatch");
  std::vector<std::vector<double>> t(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    t[i].push_back(values[i]);
    for (std::size_t j = 1; j <= i; ++j) {
      double r = std::pow(h[i - 1] / h[i], static_cast<double>(2 * j - 1));
      t[i].push_back(t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) / (r - 1.0));
    }
  }
  return t.back().back();
}

std::vector<double> unwrap(std::span<const double> phases, double period) {
  std::vector<double> out(phases.begin(), phases.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    double d = out[i] - out[i - 1];
    out[i] -= period * std::round(d / period);
  }
  return out;
}

}  // namespace susydelta
