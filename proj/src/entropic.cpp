#include "eot/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace eot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared log-sum-exp pass over all (i, k, l) of
// (f_k + g_l - lambda_i C_i[k,l]) / eps. Returns log Z and, on request, the
// softmax plans P_i (summing to one over all entries of all slabs).
double log_partition(const DualState& s, const RegularizedProblem& p,
                     std::vector<Matrix>* plans) {
  const double eps = p.epsilon;
  const int N = p.costs();
  const Index n = p.rows();
  const Index m = p.cols();

  double peak = -kInf;
  for (int i = 0; i < N; ++i) {
    const Matrix& C = p.family[i];
    const double li = s.lambda[i];
    for (Index k = 0; k < n; ++k) {
      for (Index l = 0; l < m; ++l) {
        peak = std::max(peak, (s.f[k] + s.g[l] - li * C(k, l)) / eps);
      }
    }
  }
  double total = 0.0;
  if (plans) {
    plans->assign(static_cast<size_t>(N), Matrix(n, m));
  }
  for (int i = 0; i < N; ++i) {
    const Matrix& C = p.family[i];
    const double li = s.lambda[i];
    for (Index k = 0; k < n; ++k) {
      for (Index l = 0; l < m; ++l) {
        const double e =
            std::exp((s.f[k] + s.g[l] - li * C(k, l)) / eps - peak);
        total += e;
        if (plans) {
          (*plans)[static_cast<size_t>(i)](k, l) = e;
        }
      }
    }
  }
  if (plans) {
    for (Matrix& P : *plans) {
      P /= total;
    }
  }
  return peak + std::log(total);
}

void check_state(const DualState& s, const RegularizedProblem& p) {
  if (s.lambda.size() != p.costs() || s.f.size() != p.rows() ||
      s.g.size() != p.cols()) {
    throw DimensionError("dual state shape does not match the problem");
  }
}

double l1_marginal_residual(const std::vector<Matrix>& plans, const Vector& a,
                            const Vector& b) {
  Vector row = Vector::Zero(a.size());
  Vector col = Vector::Zero(b.size());
  for (const Matrix& P : plans) {
    row += P.rowwise().sum();
    col += P.colwise().sum().transpose();
  }
  return (row - a).cwiseAbs().sum() + (col - b).cwiseAbs().sum();
}

double max_per_cost(const std::vector<Matrix>& plans, const CostFamily& fam,
                    Vector* per_cost) {
  Vector v(fam.count());
  for (int i = 0; i < fam.count(); ++i) {
    v[i] = (plans[static_cast<size_t>(i)].array() * fam[i].array()).sum();
  }
  const double top = v.maxCoeff();
  if (per_cost) *per_cost = std::move(v);
  return top;
}

// eps * sum_i H(P_i) with H(P) = sum P (log P - 1) and 0 log 0 = 0. This is
// the (negative) entropy bonus of the regularized objective: the smoothed
// value max_i <P_i, C_i> + eps * sum_i H(P_i) sits below the unregularized
// optimum and rises to it as eps -> 0.
double entropy_term(const std::vector<Matrix>& plans, double eps) {
  double h = 0.0;
  for (const Matrix& P : plans) {
    for (Index k = 0; k < P.rows(); ++k) {
      for (Index l = 0; l < P.cols(); ++l) {
        const double x = P(k, l);
        if (x > 0.0) {
          h += x * (std::log(x) - 1.0);
        }
      }
    }
  }
  return eps * h;
}

// One full evaluation of a dual state: objective, plans, marginal residual.
struct Evaluation {
  double value = 0.0;
  double residual = 0.0;
  std::vector<Matrix> plans;
};

Evaluation evaluate(const DualState& s, const RegularizedProblem& p, int iter) {
  Evaluation ev;
  const double log_z = log_partition(s, p, &ev.plans);
  ev.value = s.f.dot(p.a) + s.g.dot(p.b) - p.epsilon * (log_z + 1.0);
  ev.residual = l1_marginal_residual(ev.plans, p.a, p.b);
  if (!std::isfinite(ev.value)) {
    throw NumericalFailure("non-finite dual value at iteration " +
                           std::to_string(iter));
  }
  return ev;
}

SolveReport finish_report(const DualState& state,
                          const RegularizedProblem& prob,
                          const Evaluation& ev, int iterations, bool converged,
                          std::vector<TraceRow> trace) {
  SolveReport rep;
  rep.state = state;
  rep.dual_value = ev.value;
  rep.marginal_residual = ev.residual;
  rep.reg_primal_value = max_per_cost(ev.plans, prob.family, nullptr) +
                         entropy_term(ev.plans, prob.epsilon);
  std::vector<Matrix> rounded =
      round_to_feasible(ev.plans, prob.a, prob.b, &prob.family);
  rep.primal_value = max_per_cost(rounded, prob.family, &rep.per_cost_values);
  rep.lambda_final = state.lambda;
  rep.iterations = iterations;
  rep.converged = converged;
  rep.trace = std::move(trace);
  return rep;
}

// Relative change of the dual value over a trailing 10-iteration window.
class ValueWindow {
 public:
  void push(double v) {
    values_.push_back(v);
    if (values_.size() > 11) {
      values_.erase(values_.begin());
    }
  }
  bool settled(double rel_tol) const {
    if (values_.size() < 11) {
      return false;
    }
    const double lo = *std::min_element(values_.begin(), values_.end());
    const double hi = *std::max_element(values_.begin(), values_.end());
    return (hi - lo) <= rel_tol * std::max(1.0, std::abs(hi));
  }

 private:
  std::vector<double> values_;
};

void check_options(const SolveOptions& opts) {
  if (opts.max_iter <= 0 || opts.tol <= 0.0 || opts.value_tol <= 0.0) {
    throw InvalidParameter("solver options must be positive");
  }
}

// Row log-sum-exp for the scaling step:
// r_k = log sum_{l,i} exp((g_l - lambda_i C_i[k,l]) / eps).
Vector row_lse(const DualState& s, const RegularizedProblem& p) {
  const double eps = p.epsilon;
  Vector peak = Vector::Constant(p.rows(), -kInf);
  for (int i = 0; i < p.costs(); ++i) {
    const Matrix& C = p.family[i];
    for (Index k = 0; k < p.rows(); ++k) {
      for (Index l = 0; l < p.cols(); ++l) {
        peak[k] = std::max(peak[k], (s.g[l] - s.lambda[i] * C(k, l)) / eps);
      }
    }
  }
  Vector acc = Vector::Zero(p.rows());
  for (int i = 0; i < p.costs(); ++i) {
    const Matrix& C = p.family[i];
    for (Index k = 0; k < p.rows(); ++k) {
      for (Index l = 0; l < p.cols(); ++l) {
        acc[k] += std::exp((s.g[l] - s.lambda[i] * C(k, l)) / eps - peak[k]);
      }
    }
  }
  return peak + acc.array().log().matrix();
}

Vector col_lse(const DualState& s, const RegularizedProblem& p) {
  const double eps = p.epsilon;
  Vector peak = Vector::Constant(p.cols(), -kInf);
  for (int i = 0; i < p.costs(); ++i) {
    const Matrix& C = p.family[i];
    for (Index k = 0; k < p.rows(); ++k) {
      for (Index l = 0; l < p.cols(); ++l) {
        peak[l] = std::max(peak[l], (s.f[k] - s.lambda[i] * C(k, l)) / eps);
      }
    }
  }
  Vector acc = Vector::Zero(p.cols());
  for (int i = 0; i < p.costs(); ++i) {
    const Matrix& C = p.family[i];
    for (Index k = 0; k < p.rows(); ++k) {
      for (Index l = 0; l < p.cols(); ++l) {
        acc[l] += std::exp((s.f[k] - s.lambda[i] * C(k, l)) / eps - peak[l]);
      }
    }
  }
  return peak + acc.array().log().matrix();
}

DualState initial_state(const RegularizedProblem& prob) {
  DualState s;
  s.lambda = Vector::Constant(prob.costs(), 1.0 / prob.costs());
  s.f = Vector::Zero(prob.rows());
  s.g = Vector::Zero(prob.cols());
  return s;
}

}  // namespace

RegularizedProblem::RegularizedProblem(Vector a_in, Vector b_in,
                                       CostFamily family_in, double epsilon_in)
    : a(std::move(a_in)),
      b(std::move(b_in)),
      family(std::move(family_in)),
      epsilon(epsilon_in) {
  if (epsilon <= 0.0) {
    throw InvalidParameter("regularization must be strictly positive");
  }
  if (a.size() != family.rows() || b.size() != family.cols()) {
    throw DimensionError("marginal lengths do not match the cost shape");
  }
}

double objective_value(const DualState& state, const RegularizedProblem& prob) {
  check_state(state, prob);
  const double log_z = log_partition(state, prob, nullptr);
  return state.f.dot(prob.a) + state.g.dot(prob.b) -
         prob.epsilon * (log_z + 1.0);
}

Gradient objective_gradient(const DualState& state,
                            const RegularizedProblem& prob) {
  check_state(state, prob);
  std::vector<Matrix> plans;
  log_partition(state, prob, &plans);

  Gradient grad;
  grad.lambda = Vector::Zero(prob.costs());
  for (int i = 0; i < prob.costs(); ++i) {
    grad.lambda[i] =
        (plans[static_cast<size_t>(i)].array() * prob.family[i].array()).sum();
  }
  Vector row = Vector::Zero(prob.rows());
  Vector col = Vector::Zero(prob.cols());
  for (const Matrix& P : plans) {
    row += P.rowwise().sum();
    col += P.colwise().sum().transpose();
  }
  grad.f = prob.a - row;
  grad.g = prob.b - col;
  return grad;
}

double lipschitz_constant(const CostFamily& family, double epsilon) {
  if (epsilon <= 0.0) {
    throw InvalidParameter("regularization must be strictly positive");
  }
  const double cmax = family.max_abs_entry();
  return std::max(cmax * cmax, 2.0 * family.count()) / epsilon;
}

Vector simplex_project(const Vector& v) {
  const Index n = v.size();
  if (n == 0) {
    throw InvalidParameter("cannot project an empty vector");
  }
  for (Index i = 0; i < n; ++i) {
    if (!std::isfinite(v[i])) {
      throw InvalidParameter("projection input must be finite");
    }
  }
  std::vector<double> u(v.data(), v.data() + n);
  std::stable_sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0;
  double tau = 0.0;
  for (Index k = 0; k < n; ++k) {
    cum += u[static_cast<size_t>(k)];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (u[static_cast<size_t>(k)] - t > 0.0) {
      tau = t;
    }
  }
  return (v.array() - tau).cwiseMax(0.0);
}

std::vector<Matrix> recover_primal(const DualState& state,
                                   const RegularizedProblem& prob) {
  check_state(state, prob);
  std::vector<Matrix> plans;
  log_partition(state, prob, &plans);
  return plans;
}

std::vector<Matrix> round_to_feasible(const std::vector<Matrix>& couplings,
                                      const Vector& a, const Vector& b,
                                      const CostFamily* family) {
  if (couplings.empty()) {
    throw InvalidParameter("no couplings to round");
  }
  const Index n = a.size();
  const Index m = b.size();
  for (const Matrix& P : couplings) {
    if (P.rows() != n || P.cols() != m) {
      throw DimensionError("coupling shape does not match the marginals");
    }
    if ((P.array() < 0.0).any()) {
      throw InvalidParameter("couplings must be entrywise nonnegative");
    }
  }
  std::vector<Matrix> out = couplings;

  Vector row = Vector::Zero(n);
  for (const Matrix& P : out) row += P.rowwise().sum();
  for (Index k = 0; k < n; ++k) {
    if (row[k] <= 0.0 && a[k] > 0.0) {
      throw DegeneratePlan(
          "total plan has an empty row with positive target mass");
    }
  }
  for (Index k = 0; k < n; ++k) {
    const double scale = row[k] > 0.0 ? std::min(1.0, a[k] / row[k]) : 1.0;
    if (scale < 1.0) {
      for (Matrix& P : out) P.row(k) *= scale;
    }
  }

  Vector col = Vector::Zero(m);
  for (const Matrix& P : out) col += P.colwise().sum().transpose();
  for (Index l = 0; l < m; ++l) {
    if (col[l] <= 0.0 && b[l] > 0.0) {
      throw DegeneratePlan(
          "total plan has an empty column with positive target mass");
    }
  }
  for (Index l = 0; l < m; ++l) {
    const double scale = col[l] > 0.0 ? std::min(1.0, b[l] / col[l]) : 1.0;
    if (scale < 1.0) {
      for (Matrix& P : out) P.col(l) *= scale;
    }
  }

  // After trimming, both marginals sit componentwise below target and both
  // deficits carry the same mass, so a rank-one nonnegative correction
  // closes them exactly. It lands on the cheapest slab so the max per-cost
  // value moves as little as possible.
  Vector err_a = a;
  Vector err_b = b;
  for (const Matrix& P : out) {
    err_a -= P.rowwise().sum();
    err_b -= P.colwise().sum().transpose();
  }
  err_a = err_a.cwiseMax(0.0);
  err_b = err_b.cwiseMax(0.0);
  const double deficit = err_a.sum();
  if (deficit > 0.0) {
    size_t target = 0;
    if (family) {
      double best = kInf;
      for (int i = 0; i < family->count(); ++i) {
        const double v =
            (out[static_cast<size_t>(i)].array() * (*family)[i].array()).sum();
        if (v < best) {
          best = v;
          target = static_cast<size_t>(i);
        }
      }
    }
    out[target] += (err_a / deficit) * err_b.transpose();
  }
  return out;
}

SolveReport pam_solve(const RegularizedProblem& prob, const SolveOptions& opts) {
  check_options(opts);
  const double eps = prob.epsilon;
  const int N = prob.costs();
  // Smoothness constant of the lambda block alone.
  const double cmax = prob.family.max_abs_entry();
  const double l_lambda = cmax * cmax / eps;

  DualState s = initial_state(prob);
  std::vector<TraceRow> trace;
  ValueWindow window;
  bool converged = false;
  int it = 1;
  Evaluation ev;
  for (;; ++it) {
    // Exact block maximization in f then g. The scaling constants of the
    // plain algorithm become additive shifts that keep the implied total
    // mass at one, which is what the log a / log b terms provide.
    s.f = eps * (prob.a.array().log().matrix() - row_lse(s, prob));
    s.g = eps * (prob.b.array().log().matrix() - col_lse(s, prob));

    ev = evaluate(s, prob, it);
    window.push(ev.value);
    if (opts.trace_every > 0 &&
        (it % opts.trace_every == 0 || it == 1 || it == opts.max_iter)) {
      trace.push_back({it, ev.value, ev.residual});
    }
    if (ev.residual <= opts.tol && window.settled(opts.value_tol)) {
      converged = true;
      break;
    }
    if (it >= opts.max_iter) {
      break;
    }

    // One projected gradient ascent step on lambda using the plans already
    // at hand (they are the softmax at the current state).
    if (N > 1 && l_lambda > 0.0) {
      Vector grad_lambda(N);
      for (int i = 0; i < N; ++i) {
        grad_lambda[i] =
            (ev.plans[static_cast<size_t>(i)].array() * prob.family[i].array())
                .sum();
      }
      s.lambda = simplex_project(s.lambda + grad_lambda / l_lambda);
    }
  }
  return finish_report(s, prob, ev, it, converged, std::move(trace));
}

SolveReport apga_solve(const RegularizedProblem& prob, const SolveOptions& opts) {
  check_options(opts);
  const double L = lipschitz_constant(prob.family, prob.epsilon);

  DualState cur = initial_state(prob);
  DualState prev = cur;
  std::vector<TraceRow> trace;
  ValueWindow window;
  bool converged = false;
  int it = 1;
  Evaluation ev;
  for (;; ++it) {
    const double momentum =
        static_cast<double>(it - 2) / static_cast<double>(it + 1);
    DualState y;
    y.lambda = cur.lambda + momentum * (cur.lambda - prev.lambda);
    y.f = cur.f + momentum * (cur.f - prev.f);
    y.g = cur.g + momentum * (cur.g - prev.g);

    Gradient grad = objective_gradient(y, prob);
    DualState next;
    next.lambda = simplex_project(y.lambda + grad.lambda / L);
    next.f = y.f + grad.f / L;
    next.g = y.g + grad.g / L;
    prev = std::move(cur);
    cur = std::move(next);

    ev = evaluate(cur, prob, it);
    window.push(ev.value);
    if (opts.trace_every > 0 &&
        (it % opts.trace_every == 0 || it == 1 || it == opts.max_iter)) {
      trace.push_back({it, ev.value, ev.residual});
    }
    if (ev.residual <= opts.tol && window.settled(opts.value_tol)) {
      converged = true;
      break;
    }
    if (it >= opts.max_iter) {
      break;
    }
  }
  return finish_report(cur, prob, ev, it, converged, std::move(trace));
}

SolveReport sinkhorn_baseline(const Vector& a, const Vector& b,
                              const Matrix& cost, double epsilon,
                              const SolveOptions& opts) {
  RegularizedProblem prob(a, b, CostFamily({cost}), epsilon);
  check_options(opts);
  const double eps = prob.epsilon;

  DualState s = initial_state(prob);
  std::vector<TraceRow> trace;
  ValueWindow window;
  bool converged = false;
  int it = 1;
  Evaluation ev;
  for (;; ++it) {
    s.f = eps * (prob.a.array().log().matrix() - row_lse(s, prob));
    s.g = eps * (prob.b.array().log().matrix() - col_lse(s, prob));
    ev = evaluate(s, prob, it);
    window.push(ev.value);
    if (opts.trace_every > 0 &&
        (it % opts.trace_every == 0 || it == 1 || it == opts.max_iter)) {
      trace.push_back({it, ev.value, ev.residual});
    }
    if (ev.residual <= opts.tol && window.settled(opts.value_tol)) {
      converged = true;
      break;
    }
    if (it >= opts.max_iter) {
      break;
    }
  }
  return finish_report(s, prob, ev, it, converged, std::move(trace));
}

}  // namespace eot
