#include "treeshift/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

namespace treeshift {

// ── strongly connected components (Tarjan, iterative) ──────────────────────

SccDecomposition scc_decompose(const IntMatrix& m) {
  const int n = m.size();
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m.at(i, j) > 0) adjacency[static_cast<std::size_t>(i)].push_back(j);

  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;  // reverse topological as found
  int next_index = 0;

  // Explicit DFS frames: (vertex, next child position).
  struct Frame {
    int v;
    std::size_t child;
  };
  std::vector<Frame> frames;

  for (int start = 0; start < n; ++start) {
    if (index[static_cast<std::size_t>(start)] != -1) continue;
    frames.push_back({start, 0});
    index[static_cast<std::size_t>(start)] = lowlink[static_cast<std::size_t>(start)] = next_index++;
    stack.push_back(start);
    on_stack[static_cast<std::size_t>(start)] = true;

    while (!frames.empty()) {
      Frame& frame = frames.back();
      const int v = frame.v;
      if (frame.child < adjacency[static_cast<std::size_t>(v)].size()) {
        const int w = adjacency[static_cast<std::size_t>(v)][frame.child++];
        if (index[static_cast<std::size_t>(w)] == -1) {
          index[static_cast<std::size_t>(w)] = lowlink[static_cast<std::size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          lowlink[static_cast<std::size_t>(v)] =
              std::min(lowlink[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
        }
      } else {
        if (lowlink[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
          std::vector<int> component;
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            component.push_back(w);
            if (w == v) break;
          }
          std::sort(component.begin(), component.end());
          components.push_back(std::move(component));
        }
        frames.pop_back();
        if (!frames.empty()) {
          const int parent = frames.back().v;
          lowlink[static_cast<std::size_t>(parent)] =
              std::min(lowlink[static_cast<std::size_t>(parent)], lowlink[static_cast<std::size_t>(v)]);
        }
      }
    }
  }

  // Tarjan emits sinks first; reverse to topological order.
  std::reverse(components.begin(), components.end());

  SccDecomposition out;
  out.components = std::move(components);
  out.component_of.assign(static_cast<std::size_t>(n), -1);
  out.nontrivial.assign(out.components.size(), false);
  for (std::size_t c = 0; c < out.components.size(); ++c) {
    for (int v : out.components[c]) out.component_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    const auto& comp = out.components[c];
    if (comp.size() >= 2) {
      out.nontrivial[c] = true;
    } else {
      const int v = comp.front();
      out.nontrivial[c] = m.at(v, v) > 0;
    }
  }
  return out;
}

// ── spectral radius ────────────────────────────────────────────────────────

double component_spectral_radius(const IntMatrix& m, const std::vector<int>& component,
                                 const SpectralOptions& options) {
  if (component.size() == 1) {
    const int v = component.front();
    if (m.at(v, v) <= 0)
      throw_domain("component spectral radius needs a nontrivial component");
    return static_cast<double>(m.at(v, v));
  }

  const IntMatrix block = m.principal_submatrix(component);
  const int s = block.size();

  // Power iteration on I + block: the shift makes periodic components
  // primitive, so the iteration converges and the Rayleigh quotient tends to
  // 1 + ρ(block).
  std::vector<double> v(static_cast<std::size_t>(s), 1.0 / std::sqrt(static_cast<double>(s)));
  std::vector<double> w(static_cast<std::size_t>(s), 0.0);
  double rayleigh = 0.0;
  double previous = -1.0;
  int stable = 0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (int i = 0; i < s; ++i) {
      double acc = v[static_cast<std::size_t>(i)];  // the +I part
      for (int j = 0; j < s; ++j)
        acc += static_cast<double>(block.at(i, j)) * v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = acc;
    }
    // v is L2-normalized, so the Rayleigh quotient is just v·w.
    rayleigh = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
    double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    if (norm == 0.0) throw_domain("power iteration collapsed to the zero vector");
    for (double& x : w) x /= norm;
    std::swap(v, w);

    if (std::abs(rayleigh - previous) <= options.tolerance * std::max(1.0, std::abs(rayleigh))) {
      if (++stable >= 4) return std::max(0.0, rayleigh - 1.0);
    } else {
      stable = 0;
    }
    previous = rayleigh;
  }
  throw_domain("power iteration did not converge within " +
               std::to_string(options.max_iterations) + " iterations");
}

double spectral_radius(const IntMatrix& m, const SpectralOptions& options) {
  const auto scc = scc_decompose(m);
  double rho = 0.0;
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.nontrivial[c]) continue;
    rho = std::max(rho, component_spectral_radius(m, scc.components[c], options));
  }
  return rho;
}

// ── characteristic polynomial ──────────────────────────────────────────────

namespace {

using ZMat = std::vector<mpz_class>;  // n×n row-major

ZMat zmat_from(const IntMatrix& m) {
  const int n = m.size();
  ZMat z(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      z[static_cast<std::size_t>(i * n + j)] = m.at(i, j);
  return z;
}

ZMat zmul(const ZMat& a, const ZMat& b, int n) {
  ZMat c(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), mpz_class(0));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      const mpz_class& ail = a[static_cast<std::size_t>(i * n + l)];
      if (ail == 0) continue;
      for (int j = 0; j < n; ++j)
        c[static_cast<std::size_t>(i * n + j)] += ail * b[static_cast<std::size_t>(l * n + j)];
    }
  return c;
}

ZMat zpow(ZMat base, int exponent, int n) {
  ZMat result(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), mpz_class(0));
  for (int i = 0; i < n; ++i) result[static_cast<std::size_t>(i * n + i)] = 1;
  while (exponent > 0) {
    if (exponent & 1) result = zmul(result, base, n);
    exponent >>= 1;
    if (exponent > 0) base = zmul(base, base, n);
  }
  return result;
}

// Faddeev–LeVerrier: exact integer coefficients of det(xI − A), monic,
// descending powers.  The per-step division by j is exact by construction.
std::vector<mpz_class> char_poly_z(const ZMat& a, int n) {
  std::vector<mpz_class> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n) + 1);
  coeffs.emplace_back(1);

  ZMat acc(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), mpz_class(0));
  for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i * n + i)] = 1;  // identity

  for (int j = 1; j <= n; ++j) {
    acc = zmul(a, acc, n);
    mpz_class trace = 0;
    for (int i = 0; i < n; ++i) trace += acc[static_cast<std::size_t>(i * n + i)];
    mpz_class c;
    mpz_class num = -trace;
    mpz_class den = j;
    mpz_divexact(c.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i * n + i)] += c;
    coeffs.push_back(std::move(c));
  }
  return coeffs;
}

}  // namespace

std::vector<mpz_class> char_poly(const IntMatrix& m) {
  if (m.size() > kCharPolyDimensionCap)
    throw_budget("characteristic polynomial capped at dimension " +
                 std::to_string(kCharPolyDimensionCap) + " (got " + std::to_string(m.size()) + ")");
  return char_poly_z(zmat_from(m), m.size());
}

double poly_eval(const std::vector<mpz_class>& poly, double x) {
  double acc = 0.0;
  for (const auto& c : poly) acc = acc * x + c.get_d();
  return acc;
}

namespace {

// Exact polynomial arithmetic over ℚ, coefficients leading-first.  Only used
// to strip repeated roots below; degrees are ≤ the char-poly cap, so the
// coefficient growth of plain Euclid is affordable.
using QPoly = std::vector<mpq_class>;

QPoly q_trim(QPoly p) {
  std::size_t lead = 0;
  while (lead < p.size() && p[lead] == 0) ++lead;
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(lead));
  return p;
}

QPoly q_derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  const std::size_t degree = p.size() - 1;
  QPoly d(degree);
  for (std::size_t i = 0; i < degree; ++i)
    d[i] = p[i] * mpq_class(static_cast<unsigned long>(degree - i));
  return d;
}

QPoly q_mod(QPoly a, const QPoly& b) {
  a = q_trim(std::move(a));
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class factor = a[0] / b[0];
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= factor * b[i];
    a = q_trim(std::move(a));
  }
  return a;
}

QPoly q_gcd(QPoly a, QPoly b) {
  a = q_trim(std::move(a));
  b = q_trim(std::move(b));
  while (!b.empty()) {
    QPoly r = q_mod(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const mpq_class lead = a[0];
    for (auto& c : a) c /= lead;
  }
  return a;
}

// Exact quotient a / b (the division below is known to be remainder-free).
QPoly q_div(QPoly a, const QPoly& b) {
  a = q_trim(std::move(a));
  QPoly quotient;
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class factor = a[0] / b[0];
    quotient.push_back(factor);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= factor * b[i];
    a.erase(a.begin());  // the leading term cancelled exactly
  }
  return quotient;
}

// p / gcd(p, p′): same real roots, all simple.  The sign-change scan in
// largest_real_root cannot bracket a root of even multiplicity (the curve
// touches zero without crossing — e.g. the char poly of a matrix whose top
// eigenvalue is shared by two disjoint components), so isolation always runs
// on the square-free part.
std::vector<mpz_class> square_free_part(const std::vector<mpz_class>& poly) {
  QPoly p;
  for (const auto& c : poly) p.emplace_back(c);
  p = q_trim(std::move(p));
  if (p.size() <= 2) return poly;  // degree ≤ 1 is already square-free

  const QPoly g = q_gcd(p, q_derivative(p));
  if (g.size() <= 1) return poly;  // constant gcd: no repeated roots

  const QPoly q = q_div(p, g);
  mpz_class denominators = 1;
  for (const auto& c : q)
    mpz_lcm(denominators.get_mpz_t(), denominators.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> result;
  result.reserve(q.size());
  for (const auto& c : q) result.push_back(mpz_class(c.get_num() * (denominators / c.get_den())));
  return result;
}

}  // namespace

std::optional<double> largest_real_root(const std::vector<mpz_class>& raw_poly, double hint) {
  if (raw_poly.size() < 2) return std::nullopt;
  const std::vector<mpz_class> poly = square_free_part(raw_poly);
  double hi = hint;
  int expand = 0;
  while (poly_eval(poly, hi) <= 0.0 && expand++ < 64) hi = hi * 2.0 + 1.0;
  if (poly_eval(poly, hi) <= 0.0) return std::nullopt;

  for (int steps : {2048, 65536}) {
    const double h = hi / static_cast<double>(steps);
    double bracket_lo = -1.0;
    for (int s = 1; s <= steps; ++s) {
      const double x = hi - static_cast<double>(s) * h;
      if (poly_eval(poly, x) <= 0.0) {
        bracket_lo = x;
        break;
      }
    }
    if (bracket_lo < 0.0) continue;  // no sign change at this resolution
    double lo = bracket_lo;
    double up = bracket_lo + h;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + up);
      if (poly_eval(poly, mid) > 0.0)
        up = mid;
      else
        lo = mid;
      if (up - lo <= 1e-15 * std::max(1.0, up)) break;
    }
    return 0.5 * (lo + up);
  }
  return std::nullopt;
}

// ── period ─────────────────────────────────────────────────────────────────

int component_period(const IntMatrix& m, const std::vector<int>& component) {
  if (component.empty()) throw_domain("period of an empty component");
  if (component.size() == 1) {
    const int v = component.front();
    if (m.at(v, v) <= 0) throw_domain("period of a trivial component is undefined");
    return 1;
  }
  const int n = m.size();
  std::vector<int> level(static_cast<std::size_t>(n), -1);
  std::vector<bool> inside(static_cast<std::size_t>(n), false);
  for (int v : component) inside[static_cast<std::size_t>(v)] = true;

  std::vector<int> queue{component.front()};
  level[static_cast<std::size_t>(component.front())] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int v : component) {
      if (m.at(u, v) > 0 && level[static_cast<std::size_t>(v)] == -1) {
        level[static_cast<std::size_t>(v)] = level[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }

  // gcd of (level[u] + 1 − level[v]) over internal edges; any cycle's edge
  // contributions telescope to its length, so the gcd is the period.
  long long g = 0;
  for (int u : component)
    for (int v : component)
      if (m.at(u, v) > 0)
        g = std::gcd(g, static_cast<long long>(level[static_cast<std::size_t>(u)]) + 1 -
                            static_cast<long long>(level[static_cast<std::size_t>(v)]));
  if (g == 0) throw_domain("period of a trivial component is undefined");
  return static_cast<int>(g < 0 ? -g : g);
}

int period(const IntMatrix& m) {
  const auto scc = scc_decompose(m);
  if (scc.components.size() != 1 || !scc.nontrivial[0])
    throw_domain("period(matrix) requires an irreducible matrix with at least one edge; "
                 "use component_period for reducible matrices");
  return component_period(m, scc.components[0]);
}

// ── Perron classification ──────────────────────────────────────────────────

std::string to_string(PerronVerdict verdict) {
  switch (verdict) {
    case PerronVerdict::Perron: return "perron";
    case PerronVerdict::PerronPower: return "perron-power";
    case PerronVerdict::Zero: return "zero";
    case PerronVerdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

// Double-precision view of an integer polynomial; empty when coefficients
// exceed double range (caller falls back to undetermined).
std::optional<std::vector<double>> poly_to_double(const std::vector<mpz_class>& poly) {
  std::vector<double> out;
  out.reserve(poly.size());
  for (const auto& c : poly) {
    const double d = c.get_d();
    if (!std::isfinite(d)) return std::nullopt;
    out.push_back(d);
  }
  return out;
}

double poly_eval_d(const std::vector<double>& poly, double x) {
  double acc = 0.0;
  for (double c : poly) acc = acc * x + c;
  return acc;
}

// Backward-error scale of evaluating at |x| = r: Σ |c_i| r^(deg−i).
double poly_scale(const std::vector<double>& poly, double r) {
  double acc = 0.0;
  for (double c : poly) acc = acc * r + std::abs(c);
  return acc;
}

// Synthetic division by (x − r); quotient only (remainder is the caller's
// responsibility to have checked ≈ 0).
std::vector<double> deflate(const std::vector<double>& poly, double r) {
  std::vector<double> q;
  q.reserve(poly.size() - 1);
  double b = 0.0;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    b = poly[i] + r * b;
    q.push_back(b);
  }
  return q;
}

// Number of roots strictly inside |z| = radius by the argument principle:
// the winding number of p around the circle.  Sample count escalates until
// consecutive turns stay below π/2 (no aliasing) and the total is close to an
// integer.  nullopt means a root sits (numerically) on the contour.
std::optional<int> roots_inside(const std::vector<double>& poly, double radius) {
  const double scale = poly_scale(poly, radius);
  if (scale == 0.0) return std::nullopt;
  for (int samples = 256; samples <= (1 << 16); samples *= 4) {
    double total = 0.0;
    bool aliased = false;
    std::complex<double> prev;
    {
      std::complex<double> z(radius, 0.0);
      std::complex<double> w(0.0, 0.0);
      for (double c : poly) w = w * z + c;
      prev = w;
    }
    if (std::abs(prev) < 1e-12 * scale) return std::nullopt;
    std::complex<double> first = prev;
    for (int jj = 1; jj <= samples; ++jj) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(jj) / static_cast<double>(samples);
      const std::complex<double> z = std::polar(radius, theta);
      std::complex<double> w(0.0, 0.0);
      for (double c : poly) w = w * z + c;
      if (jj < samples && std::abs(w) < 1e-12 * scale) return std::nullopt;
      const std::complex<double> target = (jj == samples) ? first : w;
      const double darg = std::arg(target / prev);
      if (std::abs(darg) > std::numbers::pi / 2.0) {
        aliased = true;
        break;
      }
      total += darg;
      prev = target;
    }
    if (aliased) continue;
    const double turns = total / (2.0 * std::numbers::pi);
    const int rounded = static_cast<int>(std::llround(turns));
    if (std::abs(turns - static_cast<double>(rounded)) < 0.25) return rounded;
  }
  return std::nullopt;
}

// Max modulus over the roots of a (monic-leading) double polynomial, via
// bisection on the root count inside circles.
double max_root_modulus(const std::vector<double>& poly) {
  const int degree = static_cast<int>(poly.size()) - 1;
  if (degree <= 0) return 0.0;
  double cauchy = 0.0;
  for (std::size_t i = 1; i < poly.size(); ++i)
    cauchy = std::max(cauchy, std::abs(poly[i] / poly[0]));
  double lo = 0.0;
  double hi = 1.0 + cauchy;
  for (int iter = 0; iter < 120 && hi - lo > 1e-11 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    const auto count = roots_inside(poly, mid);
    if (!count) return mid;  // a root sits on this circle: that is the modulus
    if (*count >= degree)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Removes every numerically detected copy of `root`, returning the quotient
// and the number of copies removed.
std::pair<std::vector<double>, int> deflate_all(std::vector<double> poly, double root) {
  int copies = 0;
  while (poly.size() >= 2) {
    const double value = poly_eval_d(poly, root);
    const double scale = poly_scale(poly, std::abs(root));
    if (scale == 0.0 || std::abs(value) > 1e-8 * scale) break;
    poly = deflate(poly, root);
    ++copies;
  }
  return {std::move(poly), copies};
}

}  // namespace

PerronAnalysis perron_analysis(const IntMatrix& m, double dominance_tol) {
  PerronAnalysis analysis;
  const auto scc = scc_decompose(m);

  double rho = 0.0;
  int dominant = -1;
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.nontrivial[c]) continue;
    const double r = component_spectral_radius(m, scc.components[c]);
    if (r > rho + 1e-12) {
      rho = r;
      dominant = static_cast<int>(c);
    } else if (dominant == -1) {
      rho = std::max(rho, r);
      dominant = static_cast<int>(c);
    }
  }
  analysis.rho = rho;

  if (m.size() <= kCharPolyDimensionCap) analysis.characteristic = char_poly(m);

  if (dominant == -1) {
    // No cycle at all: nilpotent, ρ = 0.
    analysis.verdict = PerronVerdict::Zero;
    analysis.notes.push_back("nilpotent: the digraph has no cycle");
    return analysis;
  }

  analysis.dominant_component = scc.components[static_cast<std::size_t>(dominant)];
  analysis.period = component_period(m, analysis.dominant_component);

  if (analysis.characteristic.empty()) {
    analysis.verdict = PerronVerdict::Undetermined;
    analysis.notes.push_back("dimension exceeds the characteristic-polynomial cap; "
                             "dominance not checked");
    return analysis;
  }

  // Dominance target and polynomial: ρ against char_poly(M) for aperiodic
  // dominants; ρ^p against char_poly(M^p | dominant) for periodic ones (the
  // p cyclic-class copies of ρ^p there are expected, not violations).
  double target = rho;
  std::vector<mpz_class> dominance_poly = analysis.characteristic;
  if (analysis.period > 1) {
    const IntMatrix block = m.principal_submatrix(analysis.dominant_component);
    const ZMat bp = zpow(zmat_from(block), analysis.period, block.size());
    dominance_poly = char_poly_z(bp, block.size());
    target = std::pow(rho, analysis.period);
  }

  const auto as_double = poly_to_double(dominance_poly);
  if (!as_double) {
    analysis.verdict = PerronVerdict::Undetermined;
    analysis.notes.push_back("characteristic coefficients exceed double range; dominance not checked");
    return analysis;
  }

  auto [rest, copies] = deflate_all(*as_double, target);
  if (copies == 0) {
    analysis.verdict = PerronVerdict::Undetermined;
    analysis.notes.push_back("dominant root not numerically detected in the characteristic "
                             "polynomial; dominance not checked");
    return analysis;
  }
  analysis.second_modulus = max_root_modulus(rest);

  const bool dominated = analysis.second_modulus < target - dominance_tol;
  const bool near_tie = std::abs(analysis.second_modulus - target) <= dominance_tol;

  if (analysis.period == 1) {
    if (rho > 1.0 + dominance_tol && dominated) {
      analysis.verdict = PerronVerdict::Perron;
    } else if (near_tie) {
      analysis.verdict = PerronVerdict::Undetermined;
      analysis.notes.push_back("dominance within tolerance of a tie");
    } else {
      analysis.verdict = PerronVerdict::Undetermined;
      if (rho <= 1.0 + dominance_tol)
        analysis.notes.push_back("aperiodic with spectral radius <= 1");
    }
  } else {
    if (dominated) {
      analysis.verdict = PerronVerdict::PerronPower;
      if (target <= 1.0 + dominance_tol) {
        analysis.degenerate_power_bound = true;
        analysis.notes.push_back("degenerate bound: rho^period <= 1");
      }
    } else if (near_tie) {
      analysis.verdict = PerronVerdict::Undetermined;
      analysis.notes.push_back("dominance within tolerance of a tie");
    } else {
      analysis.verdict = PerronVerdict::Undetermined;
    }
  }
  return analysis;
}

}  // namespace treeshift
