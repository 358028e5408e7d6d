#include "leibniz/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leibniz/brackets.hpp"

namespace leibniz {

OdeSystem::OdeSystem(Chart chart, std::vector<Poly> rhs, std::string provenance)
    : chart_(std::move(chart)), rhs_(std::move(rhs)), provenance_(std::move(provenance)) {
  if (rhs_.size() != chart_.dim())
    throw DimensionMismatch("ode system needs " + std::to_string(chart_.dim()) + " right-hand sides");
  for (const auto& r : rhs_)
    if (r.chart() != chart_) throw ChartMismatch("ode right-hand side on a different chart");
}

OdeSystem::OdeSystem(const VectorFieldPoly& field, std::string provenance)
    : OdeSystem(field.chart(), field.components(), std::move(provenance)) {}

OdeSystem OdeSystem::bind_params(const std::map<std::string, Rational>& values) const {
  std::vector<Poly> bound;
  for (const auto& r : rhs_) bound.push_back(r.bind_params(values));
  std::vector<std::string> remaining;
  for (const auto& p : chart_.param_names())
    if (!values.count(p)) remaining.push_back(p);
  return OdeSystem(chart_.with_params(remaining), std::move(bound), provenance_);
}

OdeSystem operator+(const OdeSystem& a, const OdeSystem& b) {
  if (a.chart_ != b.chart_) throw ChartMismatch("sum of ode systems on different charts");
  std::vector<Poly> r = a.rhs_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.rhs_[i];
  return OdeSystem(a.chart_, std::move(r), a.provenance_ + " + " + b.provenance_);
}

OdeSystem rhs_from_bracket(const TensorField2& b, const Poly& h) {
  return OdeSystem(hamiltonian_vf(b, h), "bracket field of h");
}

OdeSystem rhs_from_pair(const MetriplecticPair& pair, const Poly& h1, const Poly& h2) {
  return OdeSystem(almost_leibniz_vf(pair, h1, h2), "almost Leibniz field of (h1, h2)");
}

OdeSystem rhs_from_algebroid(const AlgebroidStructure& a, const Poly& h) {
  const Chart& dual = a.dual_chart();
  if (h.chart() != dual) throw ChartMismatch("hamiltonian must live on the dual chart " + dual.describe());
  const std::size_t n = a.n(), m = a.m();
  std::vector<Poly> dx, dxi, xi;
  for (std::size_t i = 0; i < n; ++i) dx.push_back(h.diff(i));
  for (std::size_t p = 0; p < m; ++p) {
    dxi.push_back(h.diff(n + p));
    xi.push_back(Poly::variable(dual, n + p));
  }
  std::vector<Poly> rhs(n + m, Poly(dual));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < m; ++p)
      if (!a.rho2(i, p).is_zero() && !dxi[p].is_zero()) rhs[i] -= a.rho2(i, p).rechart(dual) * dxi[p];
  for (std::size_t p = 0; p < m; ++p) {
    Poly& r = rhs[n + p];
    for (std::size_t q = 0; q < m; ++q) {
      if (dxi[q].is_zero()) continue;
      for (std::size_t d = 0; d < m; ++d)
        if (!a.c(p, q, d).is_zero()) r += a.c(p, q, d).rechart(dual) * xi[d] * dxi[q];
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!a.rho1(i, p).is_zero() && !dx[i].is_zero()) r += a.rho1(i, p).rechart(dual) * dx[i];
  }
  return OdeSystem(dual, std::move(rhs), "algebroid field of h");
}

OdeSystem rhs_metriplectic_algebroid(const AlgebroidStructure& a1, const AlgebroidStructure& a2, const Poly& h1,
                                     const Poly& h2) {
  if (a1.n() != a2.n() || a1.m() != a2.m())
    throw DimensionMismatch("metriplectic algebroid: structures have different (n, m)");
  if (a1.dual_chart() != a2.dual_chart()) throw ChartMismatch("metriplectic algebroid: structures on different charts");
  OdeSystem s = rhs_from_algebroid(a1, h1) + rhs_from_algebroid(a2, h2);
  return OdeSystem(s.chart(), s.rhs(), "almost metriplectic algebroid field of (h1, h2)");
}

Poly symbolic_rate(const OdeSystem& sys, const Poly& f) {
  if (f.chart() != sys.chart()) throw ChartMismatch("observable on a different chart than the system");
  Poly r(sys.chart());
  for (std::size_t mu = 0; mu < sys.dim(); ++mu) r += sys.rhs()[mu] * f.diff(mu);
  return r;
}

namespace {

void require_parameter_free(const Poly& p) {
  for (std::size_t k = p.chart().dim(); k < p.chart().num_vars(); ++k)
    if (p.depends_on(k))
      throw ParameterError("parameter '" + p.chart().var_name(k) + "' must be bound before numeric evaluation");
}

double eval_term(double coeff, const Exponents& e, std::span<const double> x) {
  double m = coeff;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (e[i] > 0)
      for (int k = 0; k < e[i]; ++k) m *= x[i];
    else
      for (int k = 0; k < -e[i]; ++k) m /= x[i];
  }
  return m;
}

} // namespace

CompiledSystem::CompiledSystem(const OdeSystem& sys) : dim_(sys.dim()) {
  for (const auto& p : sys.rhs()) {
    require_parameter_free(p);
    std::vector<Term> terms;
    for (const auto& [e, c] : p.terms()) {
      Term t{c.get_d(), {}};
      for (std::size_t i = 0; i < dim_; ++i)
        if (e[i] != 0) t.factors.push_back({i, e[i]});
      terms.push_back(std::move(t));
    }
    rhs_.push_back(std::move(terms));
  }
}

void CompiledSystem::eval(std::span<const double> x, std::span<double> out) const {
  for (std::size_t k = 0; k < dim_; ++k) {
    double acc = 0.0;
    for (const auto& t : rhs_[k]) {
      double m = t.coeff;
      for (const auto& f : t.factors) {
        const double v = x[f.var];
        if (f.exponent > 0)
          for (int j = 0; j < f.exponent; ++j) m *= v;
        else
          for (int j = 0; j < -f.exponent; ++j) m /= v;
      }
      acc += m;
    }
    out[k] = acc;
  }
}

double eval_compiled(const Poly& p, std::span<const double> x) {
  require_parameter_free(p);
  if (x.size() != p.chart().dim()) throw DimensionMismatch("observable evaluated at a point of the wrong dimension");
  double acc = 0.0;
  for (const auto& [e, c] : p.terms()) acc += eval_term(c.get_d(), e, x);
  return acc;
}

const char* to_string(Method m) { return m == Method::rk4_fixed ? "rk4" : "rk45"; }

void IntegratorConfig::validate() const {
  auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!pos(step)) throw ParameterError("integrator step must be positive");
  if (!pos(t_end)) throw ParameterError("t_end must be positive");
  if (method == Method::rk45_adaptive && (!pos(abs_tol) || !pos(rel_tol)))
    throw ParameterError("tolerances must be positive");
  if (max_steps == 0) throw ParameterError("max_steps must be positive");
}

namespace {

using State = std::vector<double>;

bool finite(const State& s) {
  return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
}

void axpy_into(State& out, const State& x, double h, std::initializer_list<std::pair<double, const State*>> ks) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    for (const auto& [c, k] : ks) acc += c * (*k)[i];
    out[i] = x[i] + h * acc;
  }
}

// Dormand-Prince 5(4) tableau
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

} // namespace

Trajectory integrate(const OdeSystem& sys, std::span<const double> x0, const IntegratorConfig& cfg) {
  cfg.validate();
  const std::size_t d = sys.dim();
  if (x0.size() != d)
    throw DimensionMismatch("initial condition has " + std::to_string(x0.size()) + " entries, system needs " +
                            std::to_string(d));
  const CompiledSystem f(sys);
  Trajectory traj;
  for (std::size_t i = 0; i < d; ++i) traj.names.push_back(sys.chart().var_name(i));
  State x(x0.begin(), x0.end());
  if (!finite(x)) throw ParameterError("initial condition is not finite");
  traj.times.push_back(0.0);
  traj.states.push_back(x);

  State k1(d), k2(d), k3(d), k4(d), k5(d), k6(d), k7(d), tmp(d), xn(d);

  if (cfg.method == Method::rk4_fixed) {
    const double ratio = cfg.t_end / cfg.step;
    const auto steps = static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12)));
    if (steps > cfg.max_steps)
      throw IntegrationError("rk4 would need " + std::to_string(steps) + " steps, more than max_steps", traj, 0.0);
    const double h = cfg.t_end / static_cast<double>(steps);
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    for (std::size_t s = 0; s < steps; ++s) {
      f.eval(x, k1);
      axpy_into(tmp, x, h / 2, {{1.0, &k1}});
      f.eval(tmp, k2);
      axpy_into(tmp, x, h / 2, {{1.0, &k2}});
      f.eval(tmp, k3);
      axpy_into(tmp, x, h, {{1.0, &k3}});
      f.eval(tmp, k4);
      axpy_into(xn, x, h / 6, {{1.0, &k1}, {2.0, &k2}, {2.0, &k3}, {1.0, &k4}});
      const double t = s + 1 == steps ? cfg.t_end : h * static_cast<double>(s + 1);
      if (!finite(xn))
        throw IntegrationError("non-finite state at t = " + std::to_string(t), traj, t);
      x.swap(xn);
      traj.times.push_back(t);
      traj.states.push_back(x);
      ++traj.accepted_steps;
    }
    return traj;
  }

  double t = 0.0, h = std::min(cfg.step, cfg.t_end);
  f.eval(x, k1);
  std::size_t attempts = 0;
  while (t < cfg.t_end) {
    if (++attempts > cfg.max_steps)
      throw IntegrationError("max_steps exceeded at t = " + std::to_string(t), traj, t);
    bool last = false;
    if (t + h >= cfg.t_end * (1.0 - 1e-14)) {
      h = cfg.t_end - t;
      last = true;
    }
    axpy_into(tmp, x, h, {{a21, &k1}});
    f.eval(tmp, k2);
    axpy_into(tmp, x, h, {{a31, &k1}, {a32, &k2}});
    f.eval(tmp, k3);
    axpy_into(tmp, x, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    f.eval(tmp, k4);
    axpy_into(tmp, x, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    f.eval(tmp, k5);
    axpy_into(tmp, x, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    f.eval(tmp, k6);
    axpy_into(xn, x, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    f.eval(xn, k7);

    double err = 0.0;
    bool ok = finite(xn) && finite(k7);
    if (ok)
      for (std::size_t i = 0; i < d; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(x[i]), std::abs(xn[i]));
        err = std::max(err, std::abs(ei) / sc);
      }
    if (!ok || !std::isfinite(err)) err = std::numeric_limits<double>::infinity();

    if (err <= 1.0) {
      t = last ? cfg.t_end : t + h;
      x.swap(xn);
      k1.swap(k7); // first-same-as-last
      traj.times.push_back(t);
      traj.states.push_back(x);
      ++traj.accepted_steps;
    } else {
      ++traj.rejected_steps;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw IntegrationError("step size underflow (solution blow-up) at t = " + std::to_string(t), traj, t);
  }
  return traj;
}

std::string ObservableSeries::verdict() const {
  if (nonincreasing && nondecreasing) return "constant";
  if (nonincreasing) return "nonincreasing";
  if (nondecreasing) return "nondecreasing";
  return "neither";
}

ObservationReport observe(const OdeSystem& sys, const Trajectory& traj, const std::vector<Poly>& observables,
                          double monotonicity_tol) {
  ObservationReport report;
  for (const auto& obs : observables) {
    if (obs.chart() != sys.chart()) throw ChartMismatch("observable on a different chart than the system");
    ObservableSeries s;
    s.label = obs.to_string();
    s.values.reserve(traj.size());
    for (const auto& x : traj.states) s.values.push_back(eval_compiled(obs, x));
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      s.max_drift = std::max(s.max_drift, std::abs(s.values[k] - s.values.front()));
      if (k == 0) continue;
      const double step = s.values[k] - s.values[k - 1];
      if (step > monotonicity_tol) s.nonincreasing = false;
      if (step < -monotonicity_tol) s.nondecreasing = false;
    }
    report.series.push_back(std::move(s));
  }
  return report;
}

} // namespace leibniz
