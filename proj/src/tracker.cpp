#include "sing/tracker.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "sing/errors.hpp"
#include "sing/rng.hpp"

namespace sing {

namespace {

// ---------------------------------------------------------------------------
// Compiled evaluation. Polynomials are flattened into coefficient/exponent
// arrays and evaluated from a per-point power table, so that one table
// serves the whole system and its Jacobian at each step.
// ---------------------------------------------------------------------------

struct CompiledPoly {
  std::vector<Complex> coeffs;
  std::vector<int> exps;  // flat, nvars entries per term
  double coeff_l1 = 0.0;
  int degree = 0;

  void compile(const MultiPoly& p) {
    coeffs.clear();
    exps.clear();
    coeff_l1 = 0.0;
    degree = p.total_degree();
    for (const auto& [e, c] : p.terms()) {
      coeffs.push_back(c);
      exps.insert(exps.end(), e.begin(), e.end());
      coeff_l1 += std::abs(c);
    }
  }

  // pow holds x_j^k at pow[j*stride + k].
  Complex eval(const std::vector<Complex>& pow, int stride, int nvars) const {
    Complex sum(0.0);
    const int* e = exps.data();
    for (std::size_t k = 0; k < coeffs.size(); ++k, e += nvars) {
      Complex t = coeffs[k];
      for (int j = 0; j < nvars; ++j)
        if (e[j]) t *= pow[j * stride + e[j]];
      sum += t;
    }
    return sum;
  }
};

struct Workspace {
  std::vector<Complex> pow;
  Eigen::VectorXcd fval, gval, ht, rhs, k1, k2, k3, k4, xtmp, dx;
  Eigen::MatrixXcd jac;

  void init(int n, int stride) {
    pow.assign(std::size_t(n) * stride, Complex(0.0));
    fval.resize(n);
    gval.resize(n);
    ht.resize(n);
    rhs.resize(n);
    k1.resize(n);
    k2.resize(n);
    k3.resize(n);
    k4.resize(n);
    xtmp.resize(n);
    dx.resize(n);
    jac.resize(n, n);
  }
};

class CompiledSystem {
 public:
  explicit CompiledSystem(const SquareSystem& sys) : n_(sys.nvars) {
    eqs_.resize(n_);
    jac_.resize(std::size_t(n_) * n_);
    max_exp_ = 1;
    for (int i = 0; i < n_; ++i) {
      eqs_[i].compile(sys.equations[i]);
      max_exp_ = std::max(max_exp_, eqs_[i].degree);
      for (int j = 0; j < n_; ++j)
        jac_[std::size_t(i) * n_ + j].compile(derivative(sys.equations[i], j));
    }
    for (int d : sys.declared_degrees) max_exp_ = std::max(max_exp_, d);
    stride_ = max_exp_ + 1;
  }

  int n() const { return n_; }
  int stride() const { return stride_; }
  const CompiledPoly& eq(int i) const { return eqs_[i]; }

  void power_table(const Eigen::VectorXcd& x, Workspace& ws) const {
    for (int j = 0; j < n_; ++j) {
      Complex p(1.0);
      ws.pow[std::size_t(j) * stride_] = p;
      for (int k = 1; k < stride_; ++k) {
        p *= x[j];
        ws.pow[std::size_t(j) * stride_ + k] = p;
      }
    }
  }

  void eval(const Eigen::VectorXcd& x, Workspace& ws,
            Eigen::VectorXcd& out) const {
    power_table(x, ws);
    for (int i = 0; i < n_; ++i) out[i] = eqs_[i].eval(ws.pow, stride_, n_);
  }

  void eval_with_jacobian(const Eigen::VectorXcd& x, Workspace& ws,
                          Eigen::VectorXcd& out, Eigen::MatrixXcd& J) const {
    power_table(x, ws);
    for (int i = 0; i < n_; ++i) {
      out[i] = eqs_[i].eval(ws.pow, stride_, n_);
      for (int j = 0; j < n_; ++j)
        J(i, j) = jac_[std::size_t(i) * n_ + j].eval(ws.pow, stride_, n_);
    }
  }

  double residual_scale(int i, double xmax) const {
    const double base = std::max(1.0, xmax);
    double s = std::max(eqs_[i].coeff_l1, 1e-30);
    for (int k = 0; k < eqs_[i].degree; ++k) s *= base;
    return s;
  }

  // Magnitude the gradient row of equation i could reach at |x| = xmax.
  double row_gradient_scale(int i, double xmax) const {
    const double base = std::max(1.0, xmax);
    double s = 0.0;
    for (int j = 0; j < n_; ++j) {
      const CompiledPoly& e = jac_[std::size_t(i) * n_ + j];
      double t = e.coeff_l1;
      for (int k = 0; k < e.degree; ++k) t *= base;
      s = std::max(s, t);
    }
    return s;
  }

  double relative_residual(const Eigen::VectorXcd& vals,
                           const Eigen::VectorXcd& x) const {
    const double xmax = x.cwiseAbs().maxCoeff();
    double r = 0.0;
    for (int i = 0; i < n_; ++i)
      r = std::max(r, std::abs(vals[i]) / residual_scale(i, xmax));
    return r;
  }

 private:
  int n_;
  int max_exp_;
  int stride_;
  std::vector<CompiledPoly> eqs_;
  std::vector<CompiledPoly> jac_;
};

// ---------------------------------------------------------------------------
// Homotopy H(x,t) = gamma*t*G(x) + (1-t)*F(x), start system G_k = x_k^D_k - 1.
// ---------------------------------------------------------------------------

struct Homotopy {
  const CompiledSystem& target;
  const std::vector<int>& degrees;
  Complex gamma;

  // reads the power table already built for x
  void eval_g(Workspace& ws, Eigen::VectorXcd& g) const {
    for (int k = 0; k < target.n(); ++k)
      g[k] = ws.pow[std::size_t(k) * target.stride() + degrees[k]] - 1.0;
  }

  // H and dH/dx at (x,t); also leaves F(x), G(x) in the workspace.
  void eval(const Eigen::VectorXcd& x, double t, Workspace& ws,
            Eigen::VectorXcd& h, Eigen::MatrixXcd& hx) const {
    target.eval_with_jacobian(x, ws, ws.fval, ws.jac);
    eval_g(ws, ws.gval);
    const Complex gt = gamma * t;
    const double omt = 1.0 - t;
    hx = omt * ws.jac;
    for (int k = 0; k < target.n(); ++k) {
      h[k] = gt * ws.gval[k] + omt * ws.fval[k];
      // dG_k/dx_k = D_k x_k^(D_k-1)
      hx(k, k) += gt * double(degrees[k]) *
                  ws.pow[std::size_t(k) * target.stride() + degrees[k] - 1];
    }
  }

  // dH/dt = gamma*G(x) - F(x), with F,G already in the workspace.
  void eval_ht(Workspace& ws, Eigen::VectorXcd& ht) const {
    for (int k = 0; k < target.n(); ++k)
      ht[k] = gamma * ws.gval[k] - ws.fval[k];
  }
};

enum class PathOutcome { Converged, Diverged, Singular, Failed };

struct PathResult {
  PathOutcome outcome = PathOutcome::Failed;
  Eigen::VectorXcd point;
  double residual = 0.0;
  double condition = 0.0;
};

bool finite(const Eigen::VectorXcd& v) {
  for (int i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
      return false;
  return true;
}

// Newton refinement against the compiled target system.
//
// The regular-vs-singular verdict is geometric for n >= 2: the singular
// value ratio of the row-equilibrated endpoint Jacobian (rank deficiency at
// the root means a multiple point or a positive-dimensional component).
// Newton step contraction cannot be trusted there: at a regular root of a
// system with condition k the step noise floor is about k*eps, and once
// iterates reach it the step ratios look stagnant. For n == 1 the Jacobian
// ratio is vacuous (a 1x1 matrix) and the verdict falls back to step
// contraction, which cleanly separates simple roots (at least one strongly
// quadratic step) from multiple roots (steady contraction by (m-1)/m).
RefineResult refine_impl(const CompiledSystem& sys, const Eigen::VectorXcd& x0,
                         double tol, int max_iter, Workspace& ws) {
  RefineResult best;
  best.point = x0;
  Eigen::VectorXcd x = x0;
  sys.eval(x, ws, ws.fval);
  best.residual = sys.relative_residual(ws.fval, x);

  const int n = sys.n();
  double prev_step = -1.0;
  double contraction = 1.0;
  for (int it = 0; it < max_iter; ++it) {
    sys.eval_with_jacobian(x, ws, ws.fval, ws.jac);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(ws.jac);
    ws.dx = lu.solve(-ws.fval);
    if (!finite(ws.dx)) break;
    x += ws.dx;
    if (!finite(x)) break;
    const double step = ws.dx.cwiseAbs().maxCoeff();
    const double xscale = std::max(1.0, x.cwiseAbs().maxCoeff());
    sys.eval(x, ws, ws.fval);
    const double res = sys.relative_residual(ws.fval, x);
    if (prev_step > 0.0)
      contraction = std::min(contraction, step / prev_step);
    else if (step < 1e-14 * xscale)
      contraction = 0.0;  // started on the root
    if (res <= best.residual) {
      best.point = x;
      best.residual = res;
    }
    if (step < 1e-14 * xscale) break;
    prev_step = step;
  }
  best.last_step_ratio = contraction;

  const bool residual_ok = best.residual < tol;
  if (n == 1) {
    best.converged = residual_ok && contraction < 0.1;
    best.condition = 1.0;
    return best;
  }

  sys.eval_with_jacobian(best.point, ws, ws.fval, ws.jac);
  const double xmax = best.point.cwiseAbs().maxCoeff();
  bool degenerate_row = false;
  for (int i = 0; i < n; ++i) {
    const double rn = ws.jac.row(i).norm();
    // a gradient that vanished against its own coefficient scale marks a
    // multiple point regardless of what the normalized spectrum says
    if (rn < 1e-10 * std::max(sys.row_gradient_scale(i, xmax), 1e-30)) {
      degenerate_row = true;
      break;
    }
    ws.jac.row(i) /= rn;
  }
  double sigma_ratio = 0.0;
  if (!degenerate_row) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ws.jac);
    const auto& sv = svd.singularValues();
    if (sv[0] > 0.0) sigma_ratio = sv[n - 1] / sv[0];
  }
  best.condition = sigma_ratio > 0.0 ? 1.0 / sigma_ratio : 1.0 / 0.0;
  best.converged = residual_ok && sigma_ratio >= 1e-8;
  return best;
}

PathResult track_one(const Homotopy& hom, long long path_index,
                     const TrackSettings& st, Workspace& ws) {
  const CompiledSystem& sys = hom.target;
  const int n = sys.n();

  // start root: digits of path_index in mixed radix over the degrees
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  Eigen::VectorXcd x(n);
  long long rem = path_index;
  for (int k = 0; k < n; ++k) {
    const int dk = hom.degrees[k];
    const int m = int(rem % dk);
    rem /= dk;
    const double ang = kTwoPi * double(m) / double(dk);
    x[k] = Complex(std::cos(ang), std::sin(ang));
  }

  double t = 1.0;
  double h = st.step_initial;
  int streak = 0;
  Eigen::VectorXcd hval(n), xc(n);
  Eigen::MatrixXcd hx(n, n);

  PathResult out;
  for (int step = 0; step < st.max_path_steps && t > st.t_final; ++step) {
    if (x.cwiseAbs().maxCoeff() > st.infinity_threshold) {
      out.outcome = PathOutcome::Diverged;
      out.point = x;
      return out;
    }
    if (t < st.endgame_start) h = std::min(h, t / 10.0);
    h = std::min(h, t - st.t_final * 0.5);

    // 4th-order predictor on H_x dx/dt = -H_t
    auto davidenko = [&](const Eigen::VectorXcd& xx, double tt,
                         Eigen::VectorXcd& k) -> bool {
      hom.eval(xx, tt, ws, hval, hx);
      hom.eval_ht(ws, ws.ht);
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(hx);
      k = lu.solve(-ws.ht);
      return finite(k);
    };

    bool ok = davidenko(x, t, ws.k1);
    if (ok) ok = davidenko(x - 0.5 * h * ws.k1, t - 0.5 * h, ws.k2);
    if (ok) ok = davidenko(x - 0.5 * h * ws.k2, t - 0.5 * h, ws.k3);
    if (ok) ok = davidenko(x - h * ws.k3, t - h, ws.k4);
    if (ok) {
      xc = x - (h / 6.0) * (ws.k1 + 2.0 * ws.k2 + 2.0 * ws.k3 + ws.k4);
      ok = finite(xc);
    }

    // Newton corrector at t-h
    if (ok) {
      const double tn = t - h;
      const Eigen::VectorXcd prediction = xc;
      bool corrected = false;
      for (int it = 0; it < st.max_corrector_iters; ++it) {
        hom.eval(xc, tn, ws, hval, hx);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(hx);
        ws.dx = lu.solve(-hval);
        if (!finite(ws.dx)) break;
        xc += ws.dx;
        if (!finite(xc)) break;
        if (ws.dx.cwiseAbs().maxCoeff() <
            st.corrector_tol * std::max(1.0, xc.cwiseAbs().maxCoeff())) {
          corrected = true;
          break;
        }
      }
      // anti-jump guard: a correction displacement comparable to the whole
      // predicted advance means the step straddled a close path encounter
      if (corrected) {
        const double advance = (prediction - x).norm();
        const double displacement = (xc - prediction).norm();
        if (displacement > 0.5 * advance &&
            displacement > 10.0 * st.corrector_tol *
                               std::max(1.0, xc.cwiseAbs().maxCoeff()))
          corrected = false;
      }
      ok = corrected;
    }

    if (ok) {
      x = xc;
      t -= h;
      if (++streak >= 5) {
        h = std::min(2.0 * h, st.step_max);
        streak = 0;
      }
    } else {
      h *= 0.5;
      streak = 0;
      if (h < st.step_min) break;  // stalled; classify whatever we reached
    }
  }

  if (!finite(x) || x.cwiseAbs().maxCoeff() > st.infinity_threshold) {
    out.outcome = PathOutcome::Diverged;
    out.point = x;
    return out;
  }

  const double accept_tol =
      std::min(10.0 * st.corrector_tol, st.polish_residual);
  RefineResult ref = refine_impl(sys, x, accept_tol, st.refine_max_iters, ws);
  out.point = ref.point;
  out.residual = ref.residual;
  out.condition = ref.condition;
  if (ref.converged)
    out.outcome = PathOutcome::Converged;
  else if (ref.residual < st.singular_residual_tol)
    out.outcome = PathOutcome::Singular;
  else
    out.outcome = PathOutcome::Failed;
  return out;
}

// Canonical total order on complex vectors (componentwise re, then im).
bool point_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (int i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.size() < b.size();
}

}  // namespace

void TrackSettings::validate() const {
  if (!(step_min < step_max) || step_initial <= 0.0)
    throw InputError("TrackSettings: step sizes inconsistent");
  if (corrector_tol <= 0.0 || dedup_radius <= 0.0 || t_final <= 0.0 ||
      polish_residual <= 0.0)
    throw InputError("TrackSettings: tolerances must be positive");
  if (max_corrector_iters < 1 || max_path_steps < 1 || parallelism < 1)
    throw InputError("TrackSettings: iteration counts must be positive");
}

SquareSystem make_square_system(std::vector<MultiPoly> equations) {
  if (equations.empty()) throw InputError("square system: no equations");
  const int n = int(equations.size());
  for (const auto& e : equations) {
    if (e.nvars() != n)
      throw InputError("square system: equations/unknowns mismatch");
    if (e.is_zero())
      throw InputError("square system: identically zero equation");
  }
  SquareSystem sys;
  sys.nvars = n;
  for (const auto& e : equations) sys.declared_degrees.push_back(e.total_degree());
  sys.equations = std::move(equations);
  return sys;
}

long long bezout_number(const SquareSystem& sys) {
  long long b = 1;
  for (int d : sys.declared_degrees) {
    if (d <= 0) return 0;  // constant equation: inconsistent, no paths
    if (b > (1LL << 40) / std::max(d, 1))
      throw SolverError("Bezout number exceeds the supported path budget");
    b *= d;
  }
  return b;
}

double relative_residual(const SquareSystem& sys, const Eigen::VectorXcd& x) {
  CompiledSystem cs(sys);
  Workspace ws;
  ws.init(cs.n(), cs.stride());
  Eigen::VectorXcd v(cs.n());
  cs.eval(x, ws, v);
  return cs.relative_residual(v, x);
}

RefineResult newton_refine(const SquareSystem& sys, const Eigen::VectorXcd& x0,
                           double tol, int max_iter) {
  if (x0.size() != sys.nvars)
    throw InputError("newton_refine: point dimension mismatch");
  CompiledSystem cs(sys);
  Workspace ws;
  ws.init(cs.n(), cs.stride());
  return refine_impl(cs, x0, tol, max_iter, ws);
}

std::vector<std::vector<int>> dedupe(const std::vector<Eigen::VectorXcd>& pts,
                                     double radius) {
  if (radius <= 0.0) throw InputError("dedupe: radius must be positive");
  const int n = int(pts.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if ((pts[i] - pts[j]).norm() <= radius) {
        const int ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  std::vector<std::vector<int>> clusters;
  std::vector<int> root_to_cluster(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_to_cluster[r] < 0) {
      root_to_cluster[r] = int(clusters.size());
      clusters.emplace_back();
    }
    clusters[root_to_cluster[r]].push_back(i);
  }
  std::sort(clusters.begin(), clusters.end(),
            [&](const std::vector<int>& a, const std::vector<int>& b) {
              if (point_less(pts[a[0]], pts[b[0]])) return true;
              if (point_less(pts[b[0]], pts[a[0]])) return false;
              return a[0] < b[0];
            });
  return clusters;
}

SolutionSet solve(const SquareSystem& sys, const TrackSettings& settings) {
  settings.validate();
  const long long total = bezout_number(sys);
  SolutionSet out;
  out.total_paths = total;
  if (total == 0) return out;  // inconsistent constant equation upstream

  CompiledSystem cs(sys);
  Homotopy hom{cs, sys.declared_degrees,
               Rng(derive_seed(settings.seed, seed_tag::kGamma)).unit_complex()};

  std::vector<PathResult> results(static_cast<std::size_t>(total));
  auto run_paths = [&](const std::vector<long long>& which,
                       const TrackSettings& st) {
    std::atomic<std::size_t> next{0};
    const int nthreads = int(std::min<std::size_t>(
        std::size_t(std::max(st.parallelism, 1)), which.size()));
    auto worker = [&]() {
      Workspace ws;
      ws.init(cs.n(), cs.stride());
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= which.size()) return;
        const long long i = which[k];
        results[std::size_t(i)] = track_one(hom, i, st, ws);
      }
    };
    if (nthreads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(nthreads);
      for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
  };

  std::vector<long long> all_paths(static_cast<std::size_t>(total));
  for (long long i = 0; i < total; ++i) all_paths[std::size_t(i)] = i;
  run_paths(all_paths, settings);

  // Path-jump recovery: converged endpoints sharing a cluster flag paths
  // that crossed at a close encounter; re-track them with finer steps.
  TrackSettings fine = settings;
  for (int round = 0; round < settings.retrack_rounds; ++round) {
    std::vector<Eigen::VectorXcd> pts;
    std::vector<long long> owner;
    for (long long i = 0; i < total; ++i)
      if (results[std::size_t(i)].outcome == PathOutcome::Converged) {
        pts.push_back(results[std::size_t(i)].point);
        owner.push_back(i);
      }
    std::vector<long long> suspects;
    for (const auto& cluster : dedupe(pts, settings.dedup_radius))
      if (cluster.size() > 1)
        for (int idx : cluster) suspects.push_back(owner[std::size_t(idx)]);
    if (suspects.empty()) break;
    std::sort(suspects.begin(), suspects.end());
    fine.step_max = fine.step_max / 4.0;
    fine.step_initial = std::min(fine.step_initial, fine.step_max);
    fine.step_min = std::min(fine.step_min, fine.step_max / 1e8);
    run_paths(suspects, fine);
  }

  std::vector<Eigen::VectorXcd> converged_pts;
  std::vector<double> converged_res, converged_cond;
  std::vector<Eigen::VectorXcd> singular_pts;
  for (const auto& r : results) {
    switch (r.outcome) {
      case PathOutcome::Converged:
        converged_pts.push_back(r.point);
        converged_res.push_back(r.residual);
        converged_cond.push_back(r.condition);
        out.path_stats.converged++;
        break;
      case PathOutcome::Diverged:
        out.path_stats.diverged_to_infinity++;
        break;
      case PathOutcome::Singular:
        singular_pts.push_back(r.point);
        out.path_stats.singular_endpoint++;
        break;
      case PathOutcome::Failed:
        out.path_stats.failed++;
        break;
    }
  }
  if (total > 0 && out.path_stats.failed == total)
    throw SolverError("homotopy: every path failed (" + std::to_string(total) +
                      " paths)");

  for (const auto& cluster : dedupe(converged_pts, settings.dedup_radius)) {
    int best = cluster[0];
    for (int idx : cluster)
      if (converged_res[idx] < converged_res[best]) best = idx;
    Solution s;
    s.point = converged_pts[best];
    s.residual = converged_res[best];
    s.condition = converged_cond[best];
    s.cluster_size = int(cluster.size());
    out.solutions.push_back(std::move(s));
  }
  for (const auto& cluster : dedupe(singular_pts, settings.dedup_radius))
    out.singular_points.push_back(singular_pts[cluster[0]]);
  return out;
}

}  // namespace sing
