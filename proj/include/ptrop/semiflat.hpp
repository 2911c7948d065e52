#pragma once

#include "ptrop/expr.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace ptrop {

using DVec = std::vector<double>;
using DMat = std::vector<std::vector<double>>;

// Convex potential on an axis-aligned box, sampled on a regular grid. The
// evaluator is either an expression tree (file-backed potentials) or an
// opaque closure (Legendre transforms).
struct Potential {
  size_t dim = 0;
  std::vector<std::pair<double, double>> box;
  size_t grid = 16;
  std::function<double(const DVec&)> f;
  ExprPtr expr;  // set when the potential came from an expression

  double spacing(size_t axis) const { return (box[axis].second - box[axis].first) / double(grid); }
  double span() const {
    double s = 0;
    for (auto& [lo, hi] : box) s = std::max(s, hi - lo);
    return s;
  }
  DVec center() const {
    DVec c(dim);
    for (size_t i = 0; i < dim; ++i) c[i] = 0.5 * (box[i].first + box[i].second);
    return c;
  }
};

inline Potential make_potential(size_t dim, std::vector<std::pair<double, double>> box,
                                size_t grid, ExprPtr e) {
  Potential p;
  p.dim = dim;
  p.box = std::move(box);
  p.grid = grid;
  p.expr = e;
  p.f = [e](const DVec& y) { return e->eval(y); };
  return p;
}

// "dim=<n> box=<lo..hi,lo..hi,...> grid=<r>" + one prefix expression line
inline Potential read_potential_text(std::istream& in) {
  std::string header, exprline;
  PTROP_CHECK(bool(std::getline(in, header)), "empty potential file");
  PTROP_CHECK(bool(std::getline(in, exprline)), "potential file missing expression line");
  size_t n = 0, r = 0;
  char boxbuf[256] = {0};
  if (sscanf(header.c_str(), "dim=%zu box=%255s grid=%zu", &n, boxbuf, &r) != 3)
    throw error("bad potential header: " + header);
  std::vector<std::pair<double, double>> box;
  std::string bs(boxbuf);
  std::istringstream iss(bs);
  std::string part;
  while (std::getline(iss, part, ',')) {
    auto pos = part.find("..");
    PTROP_CHECK(pos != std::string::npos, "bad box range: " + part);
    box.push_back({std::stod(part.substr(0, pos)), std::stod(part.substr(pos + 2))});
  }
  PTROP_CHECK(box.size() == n, "box dimension mismatch");
  return make_potential(n, std::move(box), r, parse_expr(exprline));
}

// ---------------------------------------------------------------------------
// finite differences (second-order central stencils; `refine` adds one
// Richardson step, giving fourth order)

inline DVec fd_gradient(const Potential& p, const DVec& y, double h, int refine = 0) {
  auto stencil = [&](double step) {
    DVec g(p.dim);
    DVec yy = y;
    for (size_t i = 0; i < p.dim; ++i) {
      yy[i] = y[i] + step;
      double fp = p.f(yy);
      yy[i] = y[i] - step;
      double fm = p.f(yy);
      yy[i] = y[i];
      g[i] = (fp - fm) / (2 * step);
    }
    return g;
  };
  DVec g = stencil(h);
  if (refine) {
    DVec g2 = stencil(h / 2);
    for (size_t i = 0; i < p.dim; ++i) g[i] = (4 * g2[i] - g[i]) / 3;
  }
  return g;
}

inline DMat fd_hessian(const Potential& p, const DVec& y, double h, int refine = 0) {
  auto stencil = [&](double step) {
    DMat m(p.dim, DVec(p.dim));
    DVec yy = y;
    double f0 = p.f(y);
    for (size_t i = 0; i < p.dim; ++i) {
      yy[i] = y[i] + step;
      double fp = p.f(yy);
      yy[i] = y[i] - step;
      double fm = p.f(yy);
      yy[i] = y[i];
      m[i][i] = (fp - 2 * f0 + fm) / (step * step);
      for (size_t j = i + 1; j < p.dim; ++j) {
        yy[i] = y[i] + step; yy[j] = y[j] + step;
        double fpp = p.f(yy);
        yy[j] = y[j] - step;
        double fpm = p.f(yy);
        yy[i] = y[i] - step;
        double fmm = p.f(yy);
        yy[j] = y[j] + step;
        double fmp = p.f(yy);
        yy[i] = y[i]; yy[j] = y[j];
        m[i][j] = m[j][i] = (fpp - fpm - fmp + fmm) / (4 * step * step);
      }
    }
    return m;
  };
  DMat m = stencil(h);
  if (refine) {
    DMat m2 = stencil(h / 2);
    for (size_t i = 0; i < p.dim; ++i)
      for (size_t j = 0; j < p.dim; ++j) m[i][j] = (4 * m2[i][j] - m[i][j]) / 3;
  }
  return m;
}

inline double det_d(DMat m) {
  size_t n = m.size();
  double d = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    for (size_t i = k + 1; i < n; ++i)
      if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
    if (m[piv][k] == 0) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      d = -d;
    }
    d *= m[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      double f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

inline DMat inverse_d(DMat m) {
  size_t n = m.size();
  DMat inv(n, DVec(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    for (size_t i = k + 1; i < n; ++i)
      if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
    PTROP_CHECK(m[piv][k] != 0, "singular matrix");
    std::swap(m[piv], m[k]);
    std::swap(inv[piv], inv[k]);
    double d = m[k][k];
    for (size_t j = 0; j < n; ++j) {
      m[k][j] /= d;
      inv[k][j] /= d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      double f = m[i][k];
      for (size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

inline DVec solve_d(DMat m, DVec b) {
  DMat inv = inverse_d(std::move(m));
  size_t n = b.size();
  DVec x(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) x[i] += inv[i][j] * b[j];
  return x;
}

// positive definiteness via Cholesky
inline bool is_positive_definite(DMat m) {
  size_t n = m.size();
  for (size_t k = 0; k < n; ++k) {
    for (size_t j = 0; j < k; ++j) m[k][k] -= m[k][j] * m[k][j];
    if (m[k][k] <= 0) return false;
    m[k][k] = std::sqrt(m[k][k]);
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = 0; j < k; ++j) m[i][k] -= m[i][j] * m[k][j];
      m[i][k] /= m[k][k];
    }
  }
  return true;
}

// interior sample points of the grid
inline std::vector<DVec> interior_grid_points(const Potential& p) {
  std::vector<DVec> pts;
  std::vector<size_t> idx(p.dim, 1);
  if (p.grid < 2) return pts;
  while (true) {
    DVec y(p.dim);
    for (size_t i = 0; i < p.dim; ++i)
      y[i] = p.box[i].first + double(idx[i]) * p.spacing(i);
    pts.push_back(y);
    size_t i = 0;
    while (i < p.dim) {
      if (idx[i] < p.grid - 1) {
        ++idx[i];
        break;
      }
      idx[i] = 1;
      ++i;
    }
    if (i == p.dim) break;
  }
  return pts;
}

inline std::vector<DVec> all_grid_points(const Potential& p) {
  std::vector<DVec> pts;
  std::vector<size_t> idx(p.dim, 0);
  while (true) {
    DVec y(p.dim);
    for (size_t i = 0; i < p.dim; ++i)
      y[i] = p.box[i].first + double(idx[i]) * p.spacing(i);
    pts.push_back(y);
    size_t i = 0;
    while (i < p.dim) {
      if (idx[i] < p.grid) {
        ++idx[i];
        break;
      }
      idx[i] = 0;
      ++i;
    }
    if (i == p.dim) break;
  }
  return pts;
}

// Hessian positive definite at every interior sample point.
inline bool validate_convexity(const Potential& p) {
  for (const auto& y : interior_grid_points(p))
    if (!is_positive_definite(fd_hessian(p, y, p.spacing(0)))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// gradient inversion by damped Newton with Armijo backtracking

struct NewtonSettings {
  double tol = 1e-12;
  int max_iter = 100;
  double armijo = 0.25;
};

namespace detail {
[[noreturn]] inline void newton_failure(const DVec& target) {
  std::ostringstream os;
  os << "Newton failed to converge at (";
  for (size_t i = 0; i < target.size(); ++i) os << (i ? "," : "") << target[i];
  os << ")";
  throw error(os.str());
}
}  // namespace detail

inline DVec invert_gradient(const Potential& p, const DVec& target, NewtonSettings ns = {}) {
  DVec y = p.center();
  double h = p.spacing(0);
  auto objective = [&](const DVec& z) {
    double s = p.f(z);
    for (size_t i = 0; i < p.dim; ++i) s -= target[i] * z[i];
    return s;
  };
  for (int it = 0; it < ns.max_iter; ++it) {
    DVec g = fd_gradient(p, y, h, 1);
    for (size_t i = 0; i < p.dim; ++i) g[i] -= target[i];
    double gn = 0;
    for (double v : g) gn = std::max(gn, std::fabs(v));
    if (gn <= ns.tol) return y;
    DMat H = fd_hessian(p, y, h, 1);
    DVec d;
    try {
      d = solve_d(H, g);
    } catch (const error&) {
      detail::newton_failure(target);  // Hessian broke down along the way
    }
    for (auto& v : d) v = -v;
    double tscale = 1;
    for (double v : target) tscale = std::max(tscale, std::fabs(v));
    if (gn <= 1e-6 * tscale) {
      // endgame: the objective decrease is below machine precision there, so
      // the line search cannot see it; plain Newton steps are safe this close
      for (size_t i = 0; i < p.dim; ++i) y[i] += d[i];
      continue;
    }
    double slope = 0;
    for (size_t i = 0; i < p.dim; ++i) slope += g[i] * d[i];
    double t = 1.0, f0 = objective(y);
    DVec ynew(p.dim);
    for (int bs = 0; bs < 60; ++bs) {
      for (size_t i = 0; i < p.dim; ++i) ynew[i] = y[i] + t * d[i];
      if (objective(ynew) <= f0 + ns.armijo * t * slope) break;
      t /= 2;
    }
    y = ynew;
  }
  detail::newton_failure(target);
}

// ---------------------------------------------------------------------------
// the smooth Legendre transform

inline Potential legendre_transform(const Potential& p) {
  // domain: bounding box of the gradient image over the sample grid
  std::vector<std::pair<double, double>> box(p.dim,
      {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
  double h = p.spacing(0);
  for (const auto& y : all_grid_points(p)) {
    DVec g = fd_gradient(p, y, h, 1);
    for (size_t i = 0; i < p.dim; ++i) {
      box[i].first = std::min(box[i].first, g[i]);
      box[i].second = std::max(box[i].second, g[i]);
    }
  }
  Potential q;
  q.dim = p.dim;
  q.box = std::move(box);
  q.grid = p.grid;
  Potential base = p;  // value copy captured by the closure
  NewtonSettings ns;
  // a closure-backed base is itself solved to 1e-12; differencing it leaves
  // about 1e-11 of noise in its gradient, so the nested solve cannot ask for
  // more than 1e-9
  if (!base.expr) ns.tol = 1e-9;
  q.f = [base, ns](const DVec& yv) {
    DVec y = invert_gradient(base, yv, ns);
    double s = -base.f(y);
    for (size_t i = 0; i < y.size(); ++i) s += yv[i] * y[i];
    return s;
  };
  return q;
}

// max over interior grid points of |det Hess K - mean det|
inline double monge_ampere_residual(const Potential& p) {
  auto pts = interior_grid_points(p);
  PTROP_CHECK(!pts.empty(), "grid too coarse");
  std::vector<double> dets;
  for (const auto& y : pts) dets.push_back(det_d(fd_hessian(p, y, p.spacing(0))));
  double mean = 0;
  for (double d : dets) mean += d;
  mean /= double(dets.size());
  double worst = 0;
  for (double d : dets) worst = std::max(worst, std::fabs(d - mean));
  return worst;
}

// Deterministic subsample: evaluating the transform is a Newton solve per
// point, so dense grids are strided down to at most `cap` points.
inline std::vector<DVec> sample_interior(const Potential& p, size_t cap) {
  auto pts = interior_grid_points(p);
  if (pts.size() <= cap) return pts;
  std::vector<DVec> out;
  size_t stride = (pts.size() + cap - 1) / cap;
  for (size_t i = 0; i < pts.size(); i += stride) out.push_back(pts[i]);
  return out;
}

struct DualityReport {
  double hessian_deviation = 0;   // max ||Hess K*(grad K(y)) - (Hess K(y))^-1||_inf
  double gradient_deviation = 0;  // max ||grad K*(grad K(y)) - y||_inf
};

// Checks the Hessian-metric identities of the Legendre transform on the
// sampled interior points. Derivatives of the transform are taken by finite
// differences of its value function, never through the solver's intermediate
// solution.
inline DualityReport hessian_duality_check(const Potential& p, size_t cap = 256) {
  Potential q = legendre_transform(p);
  double h = p.spacing(0);
  double span = std::max(q.span(), 1e-6);
  double hg = 1e-4 * span;
  double hh = 4e-3 * span;
  DualityReport rep;
  for (const auto& y : sample_interior(p, cap)) {
    DVec yv = fd_gradient(p, y, h, 1);
    DMat Hq = fd_hessian(q, yv, hh);
    DMat Hp_inv = inverse_d(fd_hessian(p, y, h, 1));
    for (size_t i = 0; i < p.dim; ++i)
      for (size_t j = 0; j < p.dim; ++j)
        rep.hessian_deviation = std::max(rep.hessian_deviation, std::fabs(Hq[i][j] - Hp_inv[i][j]));
    DVec gq = fd_gradient(q, yv, hg);
    for (size_t i = 0; i < p.dim; ++i)
      rep.gradient_deviation = std::max(rep.gradient_deviation, std::fabs(gq[i] - y[i]));
  }
  return rep;
}

// max over interior sample points of |K**(y) - K(y)|
inline double legendre_involution_error(const Potential& p, size_t cap = 64) {
  Potential q = legendre_transform(p);
  Potential qq = legendre_transform(q);
  double worst = 0;
  for (const auto& y : sample_interior(p, cap))
    worst = std::max(worst, std::fabs(qq.f(y) - p.f(y)));
  return worst;
}

}  // namespace ptrop
