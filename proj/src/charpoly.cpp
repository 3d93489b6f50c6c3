#include "ratiolim/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "ratiolim/error.hpp"

namespace ratiolim {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// ---- exact polynomial arithmetic over Q(i) -------------------------------

void trim(ExactPolynomial& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree_of(const ExactPolynomial& p) { return static_cast<int>(p.size()) - 1; }

ExactPolynomial derivative(const ExactPolynomial& p) {
  ExactPolynomial d;
  for (std::size_t j = 1; j < p.size(); ++j) d.push_back(p[j] * ExactComplex(static_cast<long>(j)));
  trim(d);
  return d;
}

ExactPolynomial make_monic(ExactPolynomial p) {
  trim(p);
  if (p.empty()) return p;
  const ExactComplex lead = p.back();
  for (ExactComplex& c : p) c /= lead;
  return p;
}

// Returns quotient; `rem` receives the remainder.  Divisor must be nonzero.
ExactPolynomial divide(ExactPolynomial num, const ExactPolynomial& den, ExactPolynomial* rem) {
  const int dn = degree_of(den);
  trim(num);
  if (degree_of(num) < dn) {
    if (rem) *rem = num;
    return {};
  }
  ExactPolynomial quot(static_cast<std::size_t>(degree_of(num) - dn + 1));
  const ExactComplex lead = den.back();
  for (int k = degree_of(num); k >= dn; --k) {
    const ExactComplex q = num[static_cast<std::size_t>(k)] / lead;
    quot[static_cast<std::size_t>(k - dn)] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= dn; ++j) num[static_cast<std::size_t>(k - dn + j)] -= q * den[static_cast<std::size_t>(j)];
  }
  num.resize(static_cast<std::size_t>(std::max(dn, 0)));
  trim(num);
  if (rem) *rem = std::move(num);
  trim(quot);
  return quot;
}

ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ExactPolynomial r;
    divide(a, b, &r);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a));
}

ExactPolynomial subtract(ExactPolynomial a, const ExactPolynomial& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) a[j] -= b[j];
  trim(a);
  return a;
}

ExactComplex evaluate_exact(const ExactPolynomial& p, const ExactComplex& z) {
  ExactComplex acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// ---- root finding helpers -------------------------------------------------

std::size_t find_set(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

double abs_sum(std::span<const Complex> c, double r) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * r + std::abs(*it);
  return s;
}

using LComplex = std::complex<long double>;

// Value of the m-th derivative of p at z, in extended precision.
LComplex derivative_at(std::span<const Complex> coeffs, int m, LComplex z) {
  LComplex acc{};
  const int n = static_cast<int>(coeffs.size()) - 1;
  for (int j = n; j >= m; --j) {
    long double falling = 1.0L;
    for (int t = 0; t < m; ++t) falling *= static_cast<long double>(j - t);
    acc = acc * z + LComplex(coeffs[static_cast<std::size_t>(j)]) * falling;
  }
  return acc;
}

// Newton on p^(m-1), which has a simple root where p has an m-fold root.
Complex polish(std::span<const Complex> coeffs, Complex start, int multiplicity, double max_move) {
  LComplex z(start);
  const int m = multiplicity - 1;
  long double best = std::abs(derivative_at(coeffs, m, z));
  for (int step = 0; step < 4 && best > 0.0L; ++step) {
    const LComplex f = derivative_at(coeffs, m, z);
    const LComplex df = derivative_at(coeffs, m + 1, z);
    if (df == LComplex{}) break;
    const LComplex next = z - f / df;
    const long double value = std::abs(derivative_at(coeffs, m, next));
    if (!(value < best) || std::abs(next - LComplex(start)) > max_move) break;
    best = value;
    z = next;
  }
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

std::vector<Rational> convergents(double x, double tol) {
  std::vector<Rational> out;
  if (!std::isfinite(x)) return out;
  const Rational target = rational_from_double(x);
  mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  Rational rest = target;
  for (int iter = 0; iter < 40; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    const mpz_class h = a * h_prev + h_prev2;
    const mpz_class k = a * k_prev + k_prev2;
    if (k > 1000000) break;
    Rational q(h, k);
    q.canonicalize();
    if (std::abs(Rational(q - target).get_d()) <= tol) out.push_back(q);
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const Rational frac = rest - Rational(a);
    if (sgn(frac) == 0) break;
    rest = 1 / frac;
  }
  return out;
}

}  // namespace

// ---- MonicPolynomial ------------------------------------------------------

MonicPolynomial MonicPolynomial::from_recurrence(const Recurrence& rec) {
  const int n = rec.order();
  MonicPolynomial p;
  p.coeffs_.assign(static_cast<std::size_t>(n + 1), Complex{});
  p.coeffs_[static_cast<std::size_t>(n)] = 1.0;
  for (int i = 1; i <= n; ++i) p.coeffs_[static_cast<std::size_t>(n - i)] = -rec.weight(i);
  if (rec.is_exact()) {
    ExactPolynomial exact(static_cast<std::size_t>(n + 1));
    exact[static_cast<std::size_t>(n)] = ExactComplex(1);
    for (int i = 1; i <= n; ++i) exact[static_cast<std::size_t>(n - i)] = -rec.exact_weight(i);
    p.exact_ = std::move(exact);
  }
  return p;
}

MonicPolynomial MonicPolynomial::from_coefficients(std::vector<Complex> ascending) {
  if (ascending.size() < 2 || ascending.back() != Complex(1.0)) {
    throw Error(ErrorCode::invalid_argument, "monic polynomial of degree >= 1 expected");
  }
  MonicPolynomial p;
  p.coeffs_ = std::move(ascending);
  return p;
}

MonicPolynomial MonicPolynomial::from_coefficients(ExactPolynomial ascending) {
  if (ascending.size() < 2 || !(ascending.back() == ExactComplex(1))) {
    throw Error(ErrorCode::invalid_argument, "monic polynomial of degree >= 1 expected");
  }
  MonicPolynomial p;
  for (const ExactComplex& c : ascending) p.coeffs_.push_back(c.to_complex());
  p.exact_ = std::move(ascending);
  return p;
}

const ExactPolynomial& MonicPolynomial::exact_coefficients() const {
  if (!exact_) throw Error(ErrorCode::invalid_argument, "polynomial has no exact coefficients");
  return *exact_;
}

Complex MonicPolynomial::evaluate(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<Complex, Complex> MonicPolynomial::evaluate_with_derivative(Complex z) const {
  Complex p{};
  Complex dp{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

double MonicPolynomial::evaluation_error_bound(Complex z) const {
  return 4.0 * static_cast<double>(degree() + 1) * kEps * abs_sum(coeffs_, std::abs(z));
}

int RootSet::total_multiplicity() const {
  int total = 0;
  for (const Root& r : roots) total += r.multiplicity;
  return total;
}

// ---- find_roots -------------------------------------------------------------

RootSet find_roots(const MonicPolynomial& poly, const RootOptions& opts) {
  const int n = poly.degree();
  const auto coeffs = poly.coefficients();
  if (n < 1) throw Error(ErrorCode::invalid_argument, "degree must be positive");

  double cauchy = 0.0;
  for (int j = 0; j < n; ++j) cauchy = std::max(cauchy, std::abs(coeffs[static_cast<std::size_t>(j)]));
  const double radius = 1.0 + cauchy;

  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / n + 0.4;
    z[static_cast<std::size_t>(i)] = std::polar(radius, angle);
  }

  std::vector<bool> done(z.size(), false);
  int iter = 0;
  bool all_done = false;
  for (; iter < opts.max_iterations && !all_done; ++iter) {
    all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const auto [p, dp] = poly.evaluate_with_derivative(z[i]);
      if (std::abs(p) <= poly.evaluation_error_bound(z[i])) {
        done[i] = true;
        continue;
      }
      all_done = false;
      Complex repulsion{};
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      Complex step;
      if (dp == Complex{}) {
        step = std::polar(1e-8 * (1.0 + std::abs(z[i])), 0.7 + static_cast<double>(i));
      } else {
        const Complex newton = p / dp;
        step = newton / (1.0 - newton * repulsion);
      }
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        step = std::polar(1e-8 * (1.0 + std::abs(z[i])), 1.3 + static_cast<double>(i));
      }
      z[i] -= step;
      if (std::abs(step) <= 1e-14 * std::abs(z[i])) done[i] = true;
    }
  }

  // Clusters: plain distance below the base radius, or overlapping inclusion
  // discs n * |p(z_i)| / |prod_{j != i} (z_i - z_j)|.
  double max_modulus = 0.0;
  for (const Complex& v : z) max_modulus = std::max(max_modulus, std::abs(v));
  const double base_radius = opts.cluster_scale * (1.0 + max_modulus);

  std::vector<double> disc(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double resid = std::abs(poly.evaluate(z[i])) + poly.evaluation_error_bound(z[i]);
    double prod = 1.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j != i) prod *= std::abs(z[i] - z[j]);
    }
    disc[i] = prod > 0.0 ? static_cast<double>(n) * resid / prod : std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> parent(z.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double d = std::abs(z[i] - z[j]);
      if (d <= base_radius || d <= disc[i] + disc[j]) parent[find_set(parent, i)] = find_set(parent, j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < z.size(); ++i) clusters[find_set(parent, i)].push_back(i);

  const bool real_coeffs = std::all_of(coeffs.begin(), coeffs.end(), [](Complex c) { return c.imag() == 0.0; });

  RootSet out;
  out.iterations = iter;
  out.cluster_radius = base_radius;
  for (const auto& [key, members] : clusters) {
    Complex centroid{};
    for (std::size_t i : members) centroid += z[i];
    centroid /= static_cast<double>(members.size());
    double spread = 0.0;
    for (std::size_t i : members) spread = std::max(spread, std::abs(z[i] - centroid));
    const int m = static_cast<int>(members.size());
    Complex value = polish(coeffs, centroid, m, std::max(spread, base_radius));
    if (real_coeffs && std::abs(value.imag()) <= 1e-14 * (1.0 + std::abs(value))) value = {value.real(), 0.0};
    spread = 0.0;
    for (std::size_t i : members) spread = std::max(spread, std::abs(z[i] - value));
    out.cluster_radius = std::max(out.cluster_radius, spread);
    out.roots.push_back({value, m});
  }

  for (const Root& r : out.roots) {
    const double scale = abs_sum(coeffs, std::abs(r.value));
    const double rel = std::abs(poly.evaluate(r.value)) / scale;
    out.residual_bound = std::max(out.residual_bound, rel);
  }
  if (out.residual_bound > opts.residual_tol) {
    throw Error(ErrorCode::no_convergence, "root iteration did not converge after " + std::to_string(iter) +
                                               " iterations; best relative residual " +
                                               std::to_string(out.residual_bound));
  }

  std::stable_sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
    const double ma = std::abs(a.value);
    const double mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    return std::arg(a.value) > std::arg(b.value);
  });
  return out;
}

// ---- exact structure -------------------------------------------------------

std::vector<SquareFreeFactor> square_free_decomposition(const ExactPolynomial& input) {
  ExactPolynomial f = make_monic(input);
  std::vector<SquareFreeFactor> out;
  if (degree_of(f) < 1) return out;
  // Yun's algorithm (characteristic zero).
  const ExactPolynomial df = derivative(f);
  const ExactPolynomial a0 = gcd(f, df);
  ExactPolynomial b = divide(f, a0, nullptr);
  ExactPolynomial c = divide(df, a0, nullptr);
  ExactPolynomial d = subtract(c, derivative(b));
  for (int i = 1; degree_of(b) > 0; ++i) {
    ExactPolynomial a = gcd(b, d);
    if (degree_of(a) > 0) out.push_back({a, i});
    b = divide(b, a, nullptr);
    c = divide(d, a, nullptr);
    d = subtract(c, derivative(b));
  }
  return out;
}

std::vector<std::pair<int, int>> exact_multiplicity_structure(const MonicPolynomial& poly) {
  std::vector<std::pair<int, int>> out;
  for (const SquareFreeFactor& f : square_free_decomposition(poly.exact_coefficients())) {
    out.emplace_back(degree_of(f.factor), f.multiplicity);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::vector<std::pair<int, int>> multiplicity_profile(const RootSet& roots) {
  std::map<int, int> counts;
  for (const Root& r : roots.roots) ++counts[r.multiplicity];
  std::vector<std::pair<int, int>> out(counts.rbegin(), counts.rend());
  return out;
}

std::vector<std::pair<int, int>> multiplicity_profile(const std::vector<std::pair<int, int>>& structure) {
  std::map<int, int> counts;
  for (const auto& [degree, mult] : structure) counts[mult] += degree;
  std::vector<std::pair<int, int>> out(counts.rbegin(), counts.rend());
  return out;
}

std::optional<ExactComplex> exact_root_near(const MonicPolynomial& poly, Complex approx) {
  if (!poly.is_exact()) return std::nullopt;
  const double tol = 1e-7 * (1.0 + std::abs(approx));
  std::vector<Rational> re = convergents(approx.real(), tol);
  std::vector<Rational> im = convergents(approx.imag(), tol);
  if (std::abs(approx.imag()) <= tol) im.insert(im.begin(), Rational(0));
  for (const Rational& r : re) {
    for (const Rational& i : im) {
      const ExactComplex candidate(r, i);
      if (evaluate_exact(poly.exact_coefficients(), candidate).is_zero()) return candidate;
    }
  }
  return std::nullopt;
}

// ---- dominance --------------------------------------------------------------

namespace {

struct Verdict {
  std::vector<Root> members;
  bool simple = false;
  std::optional<Complex> lambda0;
  std::optional<int> nu;
};

Verdict verdict_for_band(const RootSet& roots, double max_modulus, double band) {
  Verdict v;
  for (const Root& r : roots.roots) {
    if (std::abs(r.value) >= (1.0 - band) * max_modulus) v.members.push_back(r);
  }
  int best = 0;
  for (const Root& r : v.members) best = std::max(best, r.multiplicity);
  int count = 0;
  for (const Root& r : v.members) {
    if (r.multiplicity == best) {
      ++count;
      v.lambda0 = r.value;
    }
  }
  v.simple = count == 1;
  if (v.simple) {
    v.nu = best;
  } else {
    v.lambda0.reset();
  }
  return v;
}

}  // namespace

DominanceReport classify_dominance(const RootSet& roots, const DominanceOptions& opts) {
  DominanceReport report;
  report.tie_tolerance = opts.tie_tol;
  for (const Root& r : roots.roots) report.max_modulus = std::max(report.max_modulus, std::abs(r.value));

  const Verdict strict = verdict_for_band(roots, report.max_modulus, opts.tie_tol);
  const Verdict loose = verdict_for_band(roots, report.max_modulus, std::max(opts.near_tie_tol, opts.tie_tol));
  report.max_modulus_roots = strict.members;
  report.near_tie = strict.simple != loose.simple || strict.lambda0 != loose.lambda0;
  if (!report.near_tie) {
    report.is_asymptotically_simple = strict.simple;
    report.lambda0 = strict.lambda0;
    report.nu = strict.nu;
  }
  return report;
}

}  // namespace ratiolim
