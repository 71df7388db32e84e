// Band-limited mollifier, smoothed indicators, and their Taylor surrogates.
// Everything rests on two facts.  First, phi = G^2/||G||_2^2 with G a finite
// product of cardinal sines has a transform supported in [-0.999, 0.999], so
// trapezoid sums at step 1/4 are exact for the mass, the transform, and the
// Parseval integrals (Poisson summation kills every alias), and the only
// honest error is the truncated tail, bounded by the explicit envelope
// prod_k min(1, 1/(beta_k u))^2.  Second, a quadrature rule is a measure: the
// Simpson approximation of the moments int xi^l hhat produces the exact
// moment sequence of a nearby discrete measure, so the truncated Taylor sum
// evaluated from those moments reproduces the transform of that measure to
// working precision, and the discretisation enters only once, additively, at
// the level of the target function.  The catastrophic-looking cancellation in
// sum z^l/l! q_l (partial sums near e^{|z|}) is therefore handled by carrying
// the moments and the accumulation, but nothing else, in big floats.

#include "zetalab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSupport = 0.999;  // sum_k beta_k = kSupport * pi
// saturation target: mass of phi beyond the grid must sit below this
constexpr double kTailTarget = 1e-18;
constexpr double kGridStep = 0.25;
constexpr long kNuCap = 10000;

double sinc(double t) {
  if (std::fabs(t) < 1e-8) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}

// log of prod_k min(1, 1/(beta_k u))^2 (un-normalised envelope of G^2)
double env_log_raw(const std::vector<double>& beta, double u) {
  double s = 0.0;
  for (double b : beta) {
    double t = b * u;
    if (t > 1.0) s -= 2.0 * std::log(t);
  }
  return s;
}

// log of int_u^infinity envelope, trapezoid on a logarithmic grid
double env_log_tail_raw(const std::vector<double>& beta, double u) {
  if (u <= 1.0) return 0.0;  // mass bound: never more than everything
  const int n = 1600;
  const double span = 40.0;  // integrand decays at least like u^{-3} here
  const double ds = span / n;
  double mx = -1e300;
  std::vector<double> le(n + 1);
  for (int i = 0; i <= n; ++i) {
    double v = u * std::exp(ds * i);
    le[i] = env_log_raw(beta, v) + std::log(v);  // int E dv = int E v dlog v
    mx = std::max(mx, le[i]);
  }
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += w * std::exp(le[i] - mx);
  }
  return mx + std::log(acc * ds);
}

void check_spec(const kernel_spec& s) {
  if (!(s.c > s.b && s.b > s.a && s.a > 1.0))
    throw config_error("kernel exponents must satisfy c > b > a > 1");
}

bool grid_ok(const ingham_kernel& k) {
  return !k.phi_grid.empty() && k.step > 0.0 && k.halfwidth > 0.0;
}

constexpr double kTailFormAt = 25.0;  // switch to the tail form beyond here

// pi/2 - Si(z) for z >= 0 without the half-pi cancellation.  Beyond 30 the
// asymptotic pair f cos + g sin (divergent, truncated at the smallest term)
// is accurate to ~1e-14 absolute at the switch point and far better where
// the kernel samples actually carry weight; below 30 the subtraction only
// costs a few 1e-16, which the callers can afford there.
double si_tail(double z) {
  if (z < 30.0) return kPi / 2.0 - si_integral(z);
  const double iz2 = 1.0 / (z * z);
  double f = 0.0, t = 1.0 / z;
  for (int m = 0; m < 40; ++m) {
    f += (m % 2 == 0 ? t : -t);
    double nt = t * double(2 * m + 1) * double(2 * m + 2) * iz2;
    if (nt >= t || nt < 1e-22) break;
    t = nt;
  }
  double g = 0.0, u = iz2;
  for (int m = 0; m < 40; ++m) {
    g += (m % 2 == 0 ? u : -u);
    double nu = u * double(2 * m + 2) * double(2 * m + 3) * iz2;
    if (nu >= u || nu < 1e-22) break;
    u = nu;
  }
  return f * std::cos(z) + g * std::sin(z);
}

// upper tail 1 - Phi(y) for y >= kTailFormAt, as (h/pi) sum phi_j
// (pi/2 - Si(...)).  Every term is tiny (the exact grid mass absorbed the
// halves), so the cancellation that ruins the cardinal series past the
// plateau never forms; Kahan compensation keeps the sum at the 1e-18 level.
double cdf_upper_tail(const ingham_kernel& k, double y) {
  const double h = k.step;
  const double a = kPi / h;
  auto tail_at = [](double z) {
    return z >= 0.0 ? si_tail(z) : kPi - si_tail(-z);
  };
  double acc = k.phi_grid[0] * tail_at(a * y);
  double comp = 0.0;
  for (size_t j = 1; j < k.phi_grid.size(); ++j) {
    double xj = double(j) * h;
    double term =
        k.phi_grid[j] * (tail_at(a * (y - xj)) + tail_at(a * (y + xj)));
    double yk = term - comp;
    double tk = acc + yk;
    comp = (tk - acc) - yk;
    acc = tk;
  }
  return std::max(0.0, acc * h / kPi);
}

}  // namespace

kernel_spec h_exponents(double a) {
  if (!(a > 1.0)) throw config_error("exponent a must exceed 1");
  return kernel_spec{a, 2.0 * a, 3.0 * a};
}

kernel_spec d_exponents(double delta, double a) {
  if (!(delta > 1.0)) throw config_error("delta must exceed 1");
  if (!(a > 1.0)) throw config_error("exponent a must exceed 1");
  double ld = std::log(delta);
  // Delta^{b-a} = 2.1 and Delta^{c-a} = 9.45: the smoothing scale sits a
  // factor 4.5 inside the overspill band and 4.95 inside the fuzz band for
  // every Delta, which keeps the measured transition tails near 2e-4.
  return kernel_spec{a, a + std::log(2.1) / ld, a + std::log(9.45) / ld};
}

double kernel_phi(const ingham_kernel& k, double x) {
  double g = 1.0;
  for (double b : k.beta) g *= sinc(b * x);
  return g * g / k.norm2;
}

double kernel_phi_hat(const ingham_kernel& k, double xi) {
  if (!(std::fabs(xi) < 3.0))
    throw config_error("transform grid sum is alias-free only for |xi| < 3");
  // trapezoid at step 1/4: band edge 2*0.999 < 1/step - |xi| keeps it exact
  double acc = k.phi_grid[0];
  double w = 2.0 * kPi * xi * k.step;
  for (size_t j = 1; j < k.phi_grid.size(); ++j)
    acc += 2.0 * k.phi_grid[j] * std::cos(w * double(j));
  return acc * k.step;
}

double envelope_log_tail(const ingham_kernel& k, double u) {
  return env_log_tail_raw(k.beta, u) - std::log(k.norm2);
}

ingham_kernel build_kernel(int factors) {
  if (factors < 8 || factors > 4096)
    throw config_error("factor count out of range [8, 4096]");
  ingham_kernel k;
  k.factors = factors;
  k.beta.resize(size_t(factors));
  double s = 0.0;
  for (int i = 1; i <= factors; ++i) {
    double r = 1.0 / (double(i) * std::pow(std::log(double(i + 2)), 2));
    k.beta[size_t(i - 1)] = r;
    s += r;
  }
  k.c0 = kSupport * kPi / s;
  for (auto& b : k.beta) b *= k.c0;

  // size the grid so the envelope certifies the dropped mass (the norm only
  // tightens the bound, so sizing with norm 1 is conservative)
  double hw = 8.0;
  while (env_log_tail_raw(k.beta, hw) > std::log(kTailTarget / 10.0)) {
    hw += 2.0;
    if (hw > 4000.0)
      throw infeasible_error("envelope never certifies the grid tail");
  }
  k.step = kGridStep;
  long J = long(std::ceil(hw / k.step));
  k.halfwidth = double(J) * k.step;

  std::vector<double> g2(size_t(J) + 1);
  for (long j = 0; j <= J; ++j) {
    double g = 1.0;
    double x = double(j) * k.step;
    for (double b : k.beta) g *= sinc(b * x);
    g2[size_t(j)] = g * g;
  }
  double w2 = g2[0];
  for (long j = J; j >= 1; --j) w2 += 2.0 * g2[size_t(j)];
  w2 *= k.step;
  k.norm2 = w2;
  k.phi_grid.resize(size_t(J) + 1);
  for (long j = 0; j <= J; ++j) k.phi_grid[size_t(j)] = g2[size_t(j)] / w2;

  // trim the centre sample so the grid mass h (phi_0 + 2 sum phi_j) is one
  // to the last bit: the tail form of the distribution function below rests
  // on that identity, and per-element division rounding leaves ~1e-16 here
  long double ms = k.phi_grid[0];
  for (long j = 1; j <= J; ++j) ms += 2.0L * (long double)k.phi_grid[size_t(j)];
  ms *= (long double)k.step;
  k.phi_grid[0] -= double((ms - 1.0L) / (long double)k.step);

  // certificates.  Mass on an incommensurate coarser grid (still inside the
  // alias-free band) probes the Poisson argument independently of the
  // normalising sum above.
  double mass = 0.0;
  const double step2 = 0.4;
  for (long m = long(std::floor(k.halfwidth / step2)); m >= 1; --m)
    mass += 2.0 * kernel_phi(k, double(m) * step2);
  mass += kernel_phi(k, 0.0);
  mass *= step2;
  k.mass_defect = std::fabs(mass - 1.0);

  k.fhat_at_0 = kernel_phi_hat(k, 0.0) - 1.0;
  k.fhat_at_15 = std::fabs(kernel_phi_hat(k, 1.5));
  double sweep = 0.0;
  for (double xi : {1.0, 1.05, 1.2, 1.5, 2.0, 2.5, 2.9})
    sweep = std::max(sweep, std::fabs(kernel_phi_hat(k, xi)));
  k.fhat_sweep_max = sweep;

  double px = k.phi_grid[0] * k.phi_grid[0];
  for (long j = 1; j <= J; ++j)
    px += 2.0 * k.phi_grid[size_t(j)] * k.phi_grid[size_t(j)];
  px *= k.step;
  k.parseval_x = px;
  const double dxi = 1.0 / 128.0;
  double h0 = kernel_phi_hat(k, 0.0);
  double pxi = h0 * h0;
  for (int n = 1; n <= 128; ++n) {
    double hv = kernel_phi_hat(k, double(n) * dxi);
    pxi += 2.0 * hv * hv;
  }
  pxi *= dxi;
  k.parseval_xi = pxi;
  k.parseval_diff = std::fabs(px - pxi);

  k.log_tail_at_halfwidth = envelope_log_tail(k, k.halfwidth);

  // saturation point for the distribution function: once the certified tail
  // falls under 1e-16 < ulp(1)/2, returning an exact 0/1 is the correctly
  // rounded value, and it keeps the cardinal series' few-1e-16 noise from
  // breaking monotonicity across plateaus
  k.sat_width = k.halfwidth;
  for (double u = 8.0; u < k.halfwidth; u += k.step) {
    if (envelope_log_tail(k, u) <= std::log(1e-16)) {
      k.sat_width = u;
      break;
    }
  }

  // tabulate the deep tail once, then project onto monotone decreasing.
  // True tails between here and saturation fall under the ~1e-18 evaluation
  // noise, so pointwise calls could order two of them wrongly; the isotonic
  // table (error still below noise, since the true function is monotone)
  // makes the computed distribution function monotone in this zone by
  // construction.
  long nt = long(std::ceil((k.sat_width - kTailFormAt) / k.step));
  if (nt > 0) {
    k.tail_table.resize(size_t(nt));
    for (long i = 0; i < nt; ++i)
      k.tail_table[size_t(i)] =
          cdf_upper_tail(k, kTailFormAt + double(i) * k.step);
    for (long i = 1; i < nt; ++i)
      k.tail_table[size_t(i)] =
          std::min(k.tail_table[size_t(i)], k.tail_table[size_t(i - 1)]);
  }

  if (k.mass_defect > 1e-10 || std::fabs(k.fhat_at_0) > 1e-10)
    throw infeasible_error("grid resolution insufficient to certify unit mass");
  if (k.fhat_at_15 > 1e-10 || k.fhat_sweep_max > 1e-10)
    throw infeasible_error(
        "grid resolution insufficient to certify transform support");
  if (k.parseval_diff > 1e-8)
    throw infeasible_error("Parseval agreement target missed");
  if (k.log_tail_at_halfwidth > std::log(kTailTarget))
    throw infeasible_error("envelope tail certificate missed");
  return k;
}

double si_integral(double x) {
  double ax = std::fabs(x);
  double r;
  if (ax <= 5.0) {
    // Maclaurin: sum (-1)^m x^{2m+1} / ((2m+1)(2m+1)!)
    double f = ax;  // x^{2m+1}/(2m+1)!
    r = ax;
    for (int m = 1; m < 40; ++m) {
      f *= -ax * ax / (double(2 * m) * double(2 * m + 1));
      double term = f / double(2 * m + 1);
      r += term;
      if (std::fabs(f) < 1e-18) break;
    }
  } else {
    // Si(x) = pi/2 + Im E1(ix); E1 by its continued fraction (Lentz)
    std::complex<double> z(0.0, ax);
    std::complex<double> b = z + 1.0;
    std::complex<double> c(1e308, 0.0);
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 1; i < 500; ++i) {
      double a = -double(i) * double(i);
      b += 2.0;
      d = 1.0 / (a * d + b);
      c = b + a / c;
      std::complex<double> del = c * d;
      h *= del;
      if (std::abs(del - 1.0) < 1e-16) break;
    }
    std::complex<double> e1 = std::exp(-z) * h;
    r = kPi / 2.0 + e1.imag();
  }
  return x < 0.0 ? -r : r;
}

double kernel_cdf(const ingham_kernel& k, double y) {
  if (!grid_ok(k)) throw config_error("kernel not built");
  if (y >= k.sat_width) return 1.0;  // certified: tail below 1e-16
  if (y <= -k.sat_width) return 0.0;
  double ay = std::fabs(y);
  if (ay >= kTailFormAt && !k.tail_table.empty()) {
    // snap down to the isotonic table: within the tail zone the computed
    // function is then monotone by construction, so differences of four
    // such values can never invert the exact ordering
    size_t i = size_t((ay - kTailFormAt) / k.step);
    if (i >= k.tail_table.size()) i = k.tail_table.size() - 1;
    double t = k.tail_table[i];
    return y > 0.0 ? 1.0 - t : std::min(1.0, t);
  }
  // cardinal series: int_{-inf}^y phi = 1/2 + (h/pi) sum_j phi_j Si(...)
  const double h = k.step;
  const double a = kPi / h;
  double acc = k.phi_grid[0] * si_integral(a * y);
  for (size_t j = 1; j < k.phi_grid.size(); ++j) {
    double xj = double(j) * h;
    acc += k.phi_grid[j] * (si_integral(a * (y - xj)) + si_integral(a * (y + xj)));
  }
  double v = 0.5 + acc * h / kPi;
  return std::min(1.0, std::max(0.0, v));
}

double h_pm(const ingham_kernel& k, double delta, const kernel_spec& spec,
            int sign, double x) {
  if (!(delta > 1.0)) throw config_error("delta must exceed 1");
  check_spec(spec);
  if (sign != 1 && sign != -1) throw config_error("sign must be +1 or -1");
  if (!(std::pow(delta, spec.b - spec.a) > 2.0))
    throw infeasible_error("need Delta^{-b} < Delta^{-a}/2");
  double u = std::pow(delta, spec.c);
  double L = 1.0 / delta;
  double d = std::pow(delta, -spec.b);
  if (sign > 0) return kernel_cdf(k, u * (x + d)) - kernel_cdf(k, u * (x - L - d));
  return kernel_cdf(k, u * (x - d)) - kernel_cdf(k, u * (x - L + d));
}

void moment_array::init(long n, int bits) {
  clear();
  v.resize(size_t(n));
  for (auto& m : v) {
    mpfr_init2(&m, mpfr_prec_t(bits));
    mpfr_set_zero(&m, 1);
  }
}

void moment_array::clear() {
  for (auto& m : v) mpfr_clear(&m);
  v.clear();
}

namespace {

int pick_bits(double zmax, double c, double log_delta) {
  double need = (zmax + 3.0 * c * log_delta + 20.0) / std::log(2.0) + 160.0;
  long b = 64 * long(std::ceil(need / 64.0));
  return int(std::max(256L, b));
}

}  // namespace

approx_pair d_poly_pair(const ingham_kernel& k, double delta,
                        const kernel_spec& spec, double x_max, long n_nodes) {
  if (!grid_ok(k)) throw config_error("kernel not built");
  if (!(delta > 1.0)) throw config_error("delta must exceed 1");
  check_spec(spec);
  if (!(x_max > 0.0)) throw config_error("x_max must be positive");
  if (n_nodes < 65 || n_nodes % 2 == 0)
    throw config_error("node count must be odd and at least 65");
  if (!(std::pow(delta, spec.b - spec.a) > 2.0))
    throw infeasible_error("need Delta^{-b} < Delta^{-a}/2");

  const double dc = std::pow(delta, spec.c);
  const double nu_real = 100.0 * x_max * dc;
  if (nu_real > double(kNuCap)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "degree %.0f exceeds the %ld-term work cap", nu_real, kNuCap);
    throw budget_error(buf);
  }
  const long nu = std::max(1L, long(std::ceil(nu_real)));
  const double zmax = 2.0 * kPi * x_max * dc;
  const int bits = pick_bits(zmax, spec.c, std::log(delta));
  const double L = 1.0 / delta;
  const double dd = std::pow(delta, -spec.b);
  const double wp = L + 2.0 * dd;  // interval lengths entering 1hat
  const double wm = L - 2.0 * dd;

  const long half = (n_nodes - 1) / 2;
  const double he = 1.0 / double(half);

  // transform values at the nodes are plain double: they only define the
  // discrete measure whose moments we then take exactly
  moment_array ep, op, em, om;
  ep.init(nu, bits);
  op.init(nu, bits);
  em.init(nu, bits);
  om.init(nu, bits);

  mpfr_t p, rp, ip, rm, im;
  mpfr_init2(p, bits);
  mpfr_init2(rp, bits);
  mpfr_init2(ip, bits);
  mpfr_init2(rm, bits);
  mpfr_init2(im, bits);
  const long floor_exp = -(long(bits) + 64);

  for (long m = 1; m <= half; ++m) {
    double eta = double(m) * he;
    double w = (m == half) ? 1.0 : ((half + m) % 2 == 1 ? 4.0 : 2.0);
    w *= he / 3.0;
    double fh = kernel_phi_hat(k, eta);
    double u = kPi * dc * eta;
    double sp = sinc(u * wp) * wp;  // sin(u w)/u with the u->0 limit built in
    double sm = sinc(u * wm) * wm;
    double th = u * L;
    double ct = std::cos(th), st = std::sin(th);
    mpfr_set_d(rp, fh * sp * ct, MPFR_RNDN);
    mpfr_set_d(ip, -fh * sp * st, MPFR_RNDN);
    mpfr_set_d(rm, fh * sm * ct, MPFR_RNDN);
    mpfr_set_d(im, -fh * sm * st, MPFR_RNDN);
    mpfr_set_d(p, w, MPFR_RNDN);
    for (long l = 0; l < nu; ++l) {
      if (l % 2 == 0) {
        mpfr_fma(ep[l], p, rp, ep[l], MPFR_RNDN);
        mpfr_fma(em[l], p, rm, em[l], MPFR_RNDN);
      } else {
        mpfr_fma(op[l], p, ip, op[l], MPFR_RNDN);
        mpfr_fma(om[l], p, im, om[l], MPFR_RNDN);
      }
      mpfr_mul_d(p, p, eta, MPFR_RNDN);
      if (mpfr_get_exp(p) < floor_exp) break;
    }
  }
  // centre node: eta = 0 touches only l = 0.  The fold below doubles the
  // half-line sums; the centre belongs to neither half-line, so it enters
  // here at half its Simpson weight and the doubling restores it.
  {
    double wc = ((half % 2 == 1 ? 4.0 : 2.0) * he / 6.0) * kernel_phi_hat(k, 0.0);
    mpfr_set_d(rp, wc * wp, MPFR_RNDN);
    mpfr_add(ep[0], ep[0], rp, MPFR_RNDN);
    mpfr_set_d(rm, wc * wm, MPFR_RNDN);
    mpfr_add(em[0], em[0], rm, MPFR_RNDN);
  }

  // fold factors: q_l = Re[i^l A_l] with A even = 2 E_l, A odd = 2i O_l
  auto assemble = [&](int sign, moment_array& e, moment_array& o) {
    approx_poly poly;
    poly.sign = sign;
    poly.delta = delta;
    poly.x_max = x_max;
    poly.spec = spec;
    poly.nu = nu;
    poly.bits = bits;
    poly.q.init(nu, bits);
    poly.q_d.resize(size_t(nu));
    double margin = 1e300;
    double amax = 0.0;
    for (long l = 0; l < nu; ++l) {
      long fac;
      mpfr_srcptr src;
      switch (l % 4) {
        case 0: fac = 2; src = e[l]; break;
        case 1: fac = -2; src = o[l]; break;
        case 2: fac = -2; src = e[l]; break;
        default: fac = 2; src = o[l]; break;
      }
      mpfr_mul_si(poly.q[l], src, fac, MPFR_RNDN);
      double qd = mpfr_get_d(poly.q[l], MPFR_RNDN);
      poly.q_d[size_t(l)] = qd;
      amax = std::max(amax, std::fabs(qd));
      margin = std::min(margin, dc - std::fabs(qd));
    }
    poly.q_abs_max = amax;
    poly.coeff_margin_min = margin;
    return poly;
  };

  approx_pair pair;
  pair.plus = assemble(+1, ep, op);
  pair.minus = assemble(-1, em, om);

  // Hermitian symmetry F(-eta) = conj F(eta) (checked, not assumed)
  double herm = 0.0;
  for (long m : {1L, half / 3 + 1, half}) {
    double eta = double(m) * he;
    double fh = kernel_phi_hat(k, eta);
    double fhn = kernel_phi_hat(k, -eta);
    double u = kPi * dc * eta;
    double sp = sinc(u * wp) * wp;
    double spn = sinc(-u * wp) * wp;
    double th = u * L;
    std::complex<double> fpos = fh * sp * std::complex<double>(std::cos(th), -std::sin(th));
    std::complex<double> fneg = fhn * spn * std::complex<double>(std::cos(th), std::sin(th));
    herm = std::max(herm, std::abs(fneg - std::conj(fpos)));
  }
  pair.plus.hermitian_residual = herm;
  pair.minus.hermitian_residual = herm;

  mpfr_clears(p, rp, ip, rm, im, (mpfr_ptr)nullptr);
  return pair;
}

approx_poly d_poly(const ingham_kernel& k, double delta,
                   const kernel_spec& spec, double x_max, int sign,
                   long n_nodes) {
  if (sign != 1 && sign != -1) throw config_error("sign must be +1 or -1");
  approx_pair pair = d_poly_pair(k, delta, spec, x_max, n_nodes);
  return sign > 0 ? std::move(pair.plus) : std::move(pair.minus);
}

double d_eval(const approx_poly& p, double x, double* tail_bound) {
  if (p.nu <= 0) throw config_error("polynomial not built");
  const double dc = std::pow(p.delta, p.spec.c);
  const double z = 2.0 * kPi * x * dc;
  const double za = std::fabs(z);
  if (tail_bound) *tail_bound = 0.0;
  mpfr_t zz, pw, acc, t;
  mpfr_init2(zz, p.bits);
  mpfr_init2(pw, p.bits);
  mpfr_init2(acc, p.bits);
  mpfr_init2(t, p.bits);
  mpfr_set_d(zz, z, MPFR_RNDN);
  mpfr_set_ui(pw, 1, MPFR_RNDN);
  mpfr_set_zero(acc, 1);
  for (long l = 0; l < p.nu; ++l) {
    mpfr_fma(acc, pw, p.q[l], acc, MPFR_RNDN);
    mpfr_mul(pw, pw, zz, MPFR_RNDN);
    mpfr_div_ui(pw, pw, (unsigned long)(l + 1), MPFR_RNDN);
    if (za < 1e-300) {
      if (tail_bound) *tail_bound = 0.0;
      break;
    }
    // geometric tail: once l+1 > |z| the dropped terms are dominated by
    // |z^m/m!| Q Delta^c / (1 - |z|/(l+2))
    if (double(l + 2) > za + 1.0) {
      double ratio = za / double(l + 2);
      double lg = double(mpfr_get_exp(pw)) * std::log(2.0) +
                  std::log(p.q_abs_max * dc / (1.0 - ratio) + 1e-300);
      if (lg < std::log(1e-24)) {
        if (tail_bound) *tail_bound = std::exp(lg);
        break;
      }
    }
  }
  mpfr_mul_d(acc, acc, dc, MPFR_RNDN);
  double r = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_clears(zz, pw, acc, t, (mpfr_ptr)nullptr);
  return r;
}

double taylor_remainder_log(const approx_poly& p) {
  double n = double(p.nu);
  return n * std::log(2.0 * kPi * p.x_max) - std::lgamma(n + 1.0) +
         (n + 2.0) * p.spec.c * std::log(p.delta);
}

sandwich_report verify_sandwich(const ingham_kernel& k, double delta, double a,
                                long n_grid, bool with_poly, double x_max,
                                long n_nodes) {
  if (!grid_ok(k)) throw config_error("kernel not built");
  if (n_grid < 16) throw config_error("grid too small");
  sandwich_report r;
  r.delta = delta;
  r.h_spec = h_exponents(a);
  r.d_spec = d_exponents(delta, a);
  const double L = 1.0 / delta;
  const double da = std::pow(delta, -a);
  const double lo = -2.0 * da, hi = L + 2.0 * da;
  r.x_max = x_max > 0.0 ? x_max : 1.024 * hi;
  r.n_grid = n_grid;
  r.parseval_diff = k.parseval_diff;

  // formal slacks of the h sandwich, kept in logs (the outer one underflows
  // for large Delta) and backed by the envelope certificates
  r.slack_inner_log = -std::pow(delta, r.h_spec.c - r.h_spec.b - 1.0);
  r.slack_outer_log = -std::pow(delta, r.h_spec.c - r.h_spec.a - 1.0);
  const double slack_in = std::exp(r.slack_inner_log);
  const double slack_out = std::exp(r.slack_outer_log);
  const double u_in = std::pow(delta, r.h_spec.c - r.h_spec.b);
  const double u_out = std::pow(delta, r.h_spec.c - r.h_spec.a) - u_in;
  r.cert_inner_log = std::log(2.0) + envelope_log_tail(k, u_in);
  r.cert_outer_log = std::log(2.0) + envelope_log_tail(k, u_out);
  r.certified = r.cert_inner_log <= r.slack_inner_log &&
                r.cert_outer_log <= r.slack_outer_log;

  approx_pair pair;
  if (with_poly) {
    try {
      pair = d_poly_pair(k, delta, r.d_spec, r.x_max, n_nodes);
      r.d_checked = true;
      r.d_nu = pair.plus.nu;
      r.d_coeff_margin_min =
          std::min(pair.plus.coeff_margin_min, pair.minus.coeff_margin_min);
    } catch (const budget_error& e) {
      r.d_checked = false;
      r.d_skip_reason = e.what();
    }
  } else {
    r.d_skip_reason = "polynomial stage not requested";
  }

  const double e_d = std::exp(-std::pow(delta, a - 2.0));
  std::vector<double> xs;
  xs.reserve(size_t(n_grid) + 8);
  for (long i = 0; i < n_grid; ++i)
    xs.push_back(lo + (hi - lo) * double(i) / double(n_grid - 1));
  for (double f : {-10.0 * L, -1.5, 1.5, 10.0 * L}) xs.push_back(f);

  r.rows.reserve(xs.size());
  for (double x : xs) {
    sandwich_row row;
    row.x = x;
    row.h_plus = h_pm(k, delta, r.h_spec, +1, x);
    row.h_minus = h_pm(k, delta, r.h_spec, -1, x);
    const bool core = x >= 0.0 && x <= L;
    const bool enlarged = x >= -da && x <= L + da;
    const bool shrunk = x >= da && x <= L - da;

    if (row.h_minus < 0.0 || row.h_plus > 1.0 || row.h_minus > row.h_plus)
      ++r.viol_order;

    double lo_req = core ? 1.0 - slack_in : 0.0;
    double up_req = (enlarged ? 1.0 : 0.0) + slack_out;
    if (row.h_plus < lo_req) {
      ++r.viol_h_plus;
      r.worst_h_plus = std::min(r.worst_h_plus, row.h_plus - lo_req);
    }
    if (row.h_plus > up_req) {
      ++r.viol_h_plus;
      r.worst_h_plus = std::min(r.worst_h_plus, up_req - row.h_plus);
    }
    lo_req = shrunk ? 1.0 - slack_out : 0.0;
    up_req = (core ? 1.0 : 0.0) + slack_in;
    if (row.h_minus < lo_req) {
      ++r.viol_h_minus;
      r.worst_h_minus = std::min(r.worst_h_minus, row.h_minus - lo_req);
    }
    if (row.h_minus > up_req) {
      ++r.viol_h_minus;
      r.worst_h_minus = std::min(r.worst_h_minus, up_req - row.h_minus);
    }

    if (r.d_checked && std::fabs(x) <= r.x_max) {
      double tb = 0.0;
      double dp = d_eval(pair.plus, x, &tb);
      r.d_trunc_bound = std::max(r.d_trunc_bound, tb);
      double dm = d_eval(pair.minus, x, &tb);
      r.d_trunc_bound = std::max(r.d_trunc_bound, tb);
      row.d_plus_sq = dp * dp;
      row.d_minus_sq = dm * dm;
      row.d_valid = true;
      lo_req = core ? 1.0 - e_d : 0.0;
      up_req = (enlarged ? 1.0 : 0.0) + e_d;
      if (row.d_plus_sq < lo_req) {
        ++r.viol_d_plus;
        r.worst_d_plus = std::min(r.worst_d_plus, row.d_plus_sq - lo_req);
      }
      if (row.d_plus_sq > up_req) {
        ++r.viol_d_plus;
        r.worst_d_plus = std::min(r.worst_d_plus, up_req - row.d_plus_sq);
      }
      lo_req = shrunk ? 1.0 - e_d : 0.0;
      up_req = (core ? 1.0 : 0.0) + e_d;
      if (row.d_minus_sq < lo_req) {
        ++r.viol_d_minus;
        r.worst_d_minus = std::min(r.worst_d_minus, row.d_minus_sq - lo_req);
      }
      if (row.d_minus_sq > up_req) {
        ++r.viol_d_minus;
        r.worst_d_minus = std::min(r.worst_d_minus, up_req - row.d_minus_sq);
      }
    }
    r.rows.push_back(row);
  }
  return r;
}

double transition_measure(const ingham_kernel& k, double delta,
                          const kernel_spec& spec, double lo, double hi,
                          long n) {
  if (n < 2 || !(hi > lo)) throw config_error("bad transition grid");
  double dx = (hi - lo) / double(n);
  long cnt = 0;
  for (long i = 0; i < n; ++i) {
    double x = lo + dx * (double(i) + 0.5);
    double h = h_pm(k, delta, spec, +1, x);
    if (h > 1e-3 && h < 1.0 - 1e-3) ++cnt;
  }
  return double(cnt) * dx;
}

}  // namespace zetalab
