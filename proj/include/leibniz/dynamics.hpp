#ifndef LEIBNIZ_DYNAMICS_HPP
#define LEIBNIZ_DYNAMICS_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "leibniz/algebroid.hpp"
#include "leibniz/tensor.hpp"

namespace leibniz {

/// Polynomial ODE x' = rhs(x) on a chart, one right-hand side per coordinate.
class OdeSystem {
public:
  OdeSystem(Chart chart, std::vector<Poly> rhs, std::string provenance);
  OdeSystem(const VectorFieldPoly& field, std::string provenance);

  const Chart& chart() const { return chart_; }
  const std::vector<Poly>& rhs() const { return rhs_; }
  const std::string& provenance() const { return provenance_; }
  std::size_t dim() const { return chart_.dim(); }

  OdeSystem bind_params(const std::map<std::string, Rational>& values) const;

  /// Componentwise sum of two systems on the same chart.
  friend OdeSystem operator+(const OdeSystem& a, const OdeSystem& b);

private:
  Chart chart_;
  std::vector<Poly> rhs_;
  std::string provenance_;
};

/// x' = [x, h] for the bracket of B.
OdeSystem rhs_from_bracket(const TensorField2& b, const Poly& h);
/// x' = [x, (h1, h2)] for the almost Leibniz bracket of (P, g).
OdeSystem rhs_from_pair(const MetriplecticPair& pair, const Poly& h1, const Poly& h2);
/// Algebroid dynamics read directly off the structure functions:
///   xi_a' = C_{ab}^d xi_d dh/dxi_b + rho1^i_a dh/dx^i,  x^i' = -rho2^i_a dh/dxi_a.
OdeSystem rhs_from_algebroid(const AlgebroidStructure& a, const Poly& h);
/// Lambda1-part with h1 plus Lambda2-part with h2.
OdeSystem rhs_metriplectic_algebroid(const AlgebroidStructure& a1, const AlgebroidStructure& a2, const Poly& h1,
                                     const Poly& h2);

/// Time derivative of f along the flow, sum_mu rhs_mu d_mu f.
Poly symbolic_rate(const OdeSystem& sys, const Poly& f);

/// Polynomial right-hand side flattened to doubles for fast evaluation.
class CompiledSystem {
public:
  explicit CompiledSystem(const OdeSystem& sys);
  std::size_t dim() const { return dim_; }
  void eval(std::span<const double> x, std::span<double> out) const;

private:
  struct Factor {
    std::size_t var;
    int exponent;
  };
  struct Term {
    double coeff;
    std::vector<Factor> factors;
  };
  std::size_t dim_;
  std::vector<std::vector<Term>> rhs_;
};

/// Scalar polynomial compiled the same way (observables).
double eval_compiled(const Poly& p, std::span<const double> x);

enum class Method { rk4_fixed, rk45_adaptive };
const char* to_string(Method m);

struct IntegratorConfig {
  Method method = Method::rk45_adaptive;
  double step = 1e-2;     // fixed step, or initial step for the adaptive method
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double t_end = 20.0;
  std::size_t max_steps = 10'000'000;

  /// Throws ParameterError on nonpositive or non-finite settings.
  void validate() const;
};

struct Trajectory {
  std::vector<std::string> names;
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  std::size_t size() const { return times.size(); }
  const std::vector<double>& final_state() const { return states.back(); }
};

/// Raised when integration cannot finish; `partial` ends at the last finite state.
class IntegrationError : public Error {
public:
  IntegrationError(const std::string& what, Trajectory partial_traj, double when)
      : Error(what), partial(std::move(partial_traj)), time(when) {}
  Trajectory partial;
  double time;
};

/// rk4_fixed: ceil(t_end/step) classical RK4 steps of equal size t_end/N.
/// rk45_adaptive: Dormand-Prince 5(4), error norm max_i |err_i| / (abs_tol + rel_tol |x_i|),
/// step factor 0.9 err^(-1/5) clamped to [0.2, 5]. Deterministic.
Trajectory integrate(const OdeSystem& sys, std::span<const double> x0, const IntegratorConfig& cfg);

struct ObservableSeries {
  std::string label;
  std::vector<double> values;
  double max_drift = 0.0; // max |value - value_0|
  bool nonincreasing = true;
  bool nondecreasing = true;

  /// "constant", "nonincreasing", "nondecreasing" or "neither".
  std::string verdict() const;
};

struct ObservationReport {
  std::vector<ObservableSeries> series;
};

/// Evaluates each observable along the trajectory. Monotonicity is judged
/// per step with the given tolerance.
ObservationReport observe(const OdeSystem& sys, const Trajectory& traj, const std::vector<Poly>& observables,
                          double monotonicity_tol = 1e-12);

} // namespace leibniz

#endif
