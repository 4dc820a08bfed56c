#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mapgeo/common.hpp"
#include "mapgeo/geometry.hpp"

namespace mapgeo {

struct Rect {
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = -1.0;
  double ymax = 1.0;
};

enum class RingBranch { Minus, Plus };

/// Angle field ω of a pseudo-plane, ω(u) ∈ (0, 4π].
class OmegaField {
 public:
  enum class Kind { Constant, RadialRing, Lifted, Grid, Function };
  using Fn = std::function<double(double, double)>;

  static OmegaField constant(double eta) {
    if (!(eta > 0.0 && eta <= 2.0 * kTwoPi)) fail(ErrorCode::BadParameters, "constant omega outside (0, 4pi]");
    OmegaField f(Kind::Constant);
    f.eta_ = eta;
    return f;
  }

  /// ω = 2(π ∓ ρ₀/(θ₀ρ)), defined for ρ ≥ ρ₀/(|θ₀|π).
  static OmegaField radial_ring(double rho0, double theta0, RingBranch branch) {
    if (!(rho0 > 0.0) || theta0 == 0.0 || !std::isfinite(theta0)) {
      fail(ErrorCode::BadParameters, "ring needs rho0 > 0 and theta0 != 0");
    }
    OmegaField f(Kind::RadialRing);
    f.rho0_ = rho0;
    f.theta0_ = theta0;
    f.branch_ = branch;
    return f;
  }

  /// ω(x,y) = 2(π − ϑ) with ϑ the elevation of (x, y, z(x,y)) above XOY.
  static OmegaField lifted(Fn height, std::string name = "z") {
    OmegaField f(Kind::Lifted);
    f.fn_ = std::move(height);
    f.name_ = std::move(name);
    return f;
  }

  /// Samples on a regular (nx × ny) lattice over `domain`, row-major in y.
  static OmegaField grid(Rect domain, std::size_t nx, std::size_t ny, std::vector<double> values) {
    if (nx < 2 || ny < 2 || values.size() != nx * ny) fail(ErrorCode::BadParameters, "grid needs nx, ny >= 2 and nx*ny values");
    if (!(domain.xmax > domain.xmin) || !(domain.ymax > domain.ymin)) fail(ErrorCode::BadParameters, "grid domain is empty");
    for (double v : values) {
      if (!(v > 0.0 && v <= 2.0 * kTwoPi)) fail(ErrorCode::BadParameters, "grid value outside (0, 4pi]");
    }
    OmegaField f(Kind::Grid);
    f.domain_ = domain;
    f.nx_ = nx;
    f.ny_ = ny;
    f.values_ = std::move(values);
    return f;
  }

  /// Any ω given directly as a function of (x, y).
  static OmegaField function(Fn omega, std::string name = "omega") {
    OmegaField f(Kind::Function);
    f.fn_ = std::move(omega);
    f.name_ = std::move(name);
    return f;
  }

  Kind kind() const { return kind_; }
  double rho0() const { return rho0_; }
  double theta0() const { return theta0_; }
  RingBranch branch() const { return branch_; }
  const std::string& name() const { return name_; }

  double ring_rho_min() const { return rho0_ / (std::abs(theta0_) * kPi); }

  double operator()(double x, double y) const { return eval(x, y); }
  double operator()(Point2 p) const { return eval(p.x, p.y); }

  double eval(double x, double y) const {
    double w = 0.0;
    switch (kind_) {
      case Kind::Constant:
        return eta_;
      case Kind::RadialRing: {
        const double rho = std::hypot(x, y);
        if (rho < ring_rho_min()) fail(ErrorCode::OutOfDomain, "ring field evaluated inside rho_min");
        const double k = rho0_ / (theta0_ * rho);
        w = branch_ == RingBranch::Minus ? 2.0 * (kPi - k) : 2.0 * (kPi + k);
        break;
      }
      case Kind::Lifted: {
        const double z = fn_(x, y);
        if (!std::isfinite(z)) fail(ErrorCode::NonFinite, "height is not finite");
        const double r = std::hypot(x, y);
        if (r == 0.0) {
          if (z != 0.0) fail(ErrorCode::OriginUndefined, "elevation angle undefined at the origin");
          return kTwoPi;
        }
        return 2.0 * (kPi - std::atan2(z, r));
      }
      case Kind::Grid:
        w = bilinear(x, y);
        break;
      case Kind::Function:
        w = fn_(x, y);
        if (!std::isfinite(w)) fail(ErrorCode::NonFinite, "omega is not finite");
        break;
    }
    if (!(w > 0.0 && w <= 2.0 * kTwoPi)) fail(ErrorCode::OutOfDomain, "omega leaves (0, 4pi]");
    return w;
  }

 private:
  explicit OmegaField(Kind k) : kind_(k) {}

  double bilinear(double x, double y) const {
    const Rect& d = domain_;
    if (x < d.xmin || x > d.xmax || y < d.ymin || y > d.ymax) fail(ErrorCode::OutOfDomain, "outside grid");
    const double gx = (x - d.xmin) / (d.xmax - d.xmin) * static_cast<double>(nx_ - 1);
    const double gy = (y - d.ymin) / (d.ymax - d.ymin) * static_cast<double>(ny_ - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(gx), nx_ - 2);
    const std::size_t j = std::min(static_cast<std::size_t>(gy), ny_ - 2);
    const double tx = gx - static_cast<double>(i);
    const double ty = gy - static_cast<double>(j);
    auto at = [&](std::size_t a, std::size_t b) { return values_[b * nx_ + a]; };
    return (1 - tx) * (1 - ty) * at(i, j) + tx * (1 - ty) * at(i + 1, j) +
           (1 - tx) * ty * at(i, j + 1) + tx * ty * at(i + 1, j + 1);
  }

  Kind kind_;
  double eta_ = kTwoPi;
  double rho0_ = 1.0;
  double theta0_ = 1.0;
  RingBranch branch_ = RingBranch::Minus;
  Fn fn_;
  std::string name_;
  Rect domain_;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<double> values_;
};

inline OmegaField lift_omega(OmegaField::Fn height, std::string name = "z") {
  return OmegaField::lifted(std::move(height), std::move(name));
}

inline OmegaField limiting_ring_field(double rho0, double theta0, RingBranch branch) {
  return OmegaField::radial_ring(rho0, theta0, branch);
}

inline PointClass classify_point_p(const OmegaField& field, Point2 p, double tol = kTolAngle) {
  return classify_against(field(p), kTwoPi, tol);
}

/// C_P¹ all euclidean, C_P² all elliptic, C_P³ all hyperbolic, C_P⁴ mixed.
enum class FieldClass { CP1, CP2, CP3, CP4 };

inline std::string_view to_string(FieldClass c) {
  switch (c) {
    case FieldClass::CP1: return "C_P1";
    case FieldClass::CP2: return "C_P2";
    case FieldClass::CP3: return "C_P3";
    case FieldClass::CP4: return "C_P4";
  }
  return "?";
}

struct FieldCensus {
  FieldClass cls = FieldClass::CP1;
  std::size_t elliptic = 0;
  std::size_t euclidean = 0;
  std::size_t hyperbolic = 0;
  std::size_t skipped = 0;  // lattice points outside the field's domain
};

/// Classifies on a samples × samples lattice over `r`. Lattice points where
/// the field is undefined are skipped.
inline FieldCensus classify_field_detail(const OmegaField& field, Rect r, std::size_t samples) {
  if (samples < 4) fail(ErrorCode::InvalidArgument, "classify_field needs samples >= 4");
  FieldCensus c;
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t j = 0; j < samples; ++j) {
      const double x = r.xmin + (r.xmax - r.xmin) * static_cast<double>(i) / static_cast<double>(samples - 1);
      const double y = r.ymin + (r.ymax - r.ymin) * static_cast<double>(j) / static_cast<double>(samples - 1);
      try {
        switch (classify_point_p(field, {x, y})) {
          case PointClass::Elliptic: ++c.elliptic; break;
          case PointClass::Euclidean: ++c.euclidean; break;
          case PointClass::Hyperbolic: ++c.hyperbolic; break;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OutOfDomain && e.code() != ErrorCode::OriginUndefined) throw;
        ++c.skipped;
      }
    }
  }
  const int kinds = (c.elliptic > 0) + (c.euclidean > 0) + (c.hyperbolic > 0);
  if (kinds >= 2) c.cls = FieldClass::CP4;
  else if (c.elliptic > 0) c.cls = FieldClass::CP2;
  else if (c.hyperbolic > 0) c.cls = FieldClass::CP3;
  else c.cls = FieldClass::CP1;
  return c;
}

inline FieldClass classify_field(const OmegaField& field, Rect r, std::size_t samples = 32) {
  return classify_field_detail(field, r, samples).cls;
}

/// True iff every sample on segment ab is euclidean.
inline bool straightness_check(const OmegaField& field, Point2 a, Point2 b, std::size_t samples = 64,
                               double tol = kTolAngle) {
  const std::size_t n = std::max<std::size_t>(samples, 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    if (std::abs(field(a + t * (b - a)) - kTwoPi) >= tol) return false;
  }
  return true;
}

/// Bisection between an elliptic and a hyperbolic point for a point where
/// ω = 2π.
inline Point2 intermediate_euclidean(const OmegaField& field, Point2 p, Point2 q, std::size_t max_iter = 200,
                                     double tol = kTolAngle) {
  const PointClass cp = classify_point_p(field, p, tol);
  const PointClass cq = classify_point_p(field, q, tol);
  const bool ok = (cp == PointClass::Elliptic && cq == PointClass::Hyperbolic) ||
                  (cp == PointClass::Hyperbolic && cq == PointClass::Elliptic);
  if (!ok) fail(ErrorCode::PreconditionFailed, "endpoints must be one elliptic and one hyperbolic point");
  double lo = 0.0, hi = 1.0;
  const double glo = field(p) - kTwoPi;
  for (std::size_t it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Point2 m = p + mid * (q - p);
    const double g = field(m) - kTwoPi;
    if (std::abs(g) < tol) return m;
    if ((g < 0.0) == (glo < 0.0)) lo = mid;
    else hi = mid;
  }
  fail(ErrorCode::NoConvergence, "no euclidean point found; omega is discontinuous on the segment");
}

struct CurveSample {
  Point2 p;
  int sign = 0;
};

namespace detail {

template <typename OmegaAt>
double curve_residual_impl(const std::vector<CurveSample>& s, OmegaAt omega_at) {
  if (s.size() < 3) fail(ErrorCode::InvalidArgument, "curve residual needs >= 3 samples");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double dx = s[i + 1].p.x - s[i - 1].p.x;
    const double scale = std::max({1.0, std::abs(s[i + 1].p.x), std::abs(s[i - 1].p.x)});
    if (std::abs(dx) <= 1e-14 * scale) fail(ErrorCode::VerticalTangent, "vertical tangent at sample " + std::to_string(i));
    const double slope = (s[i + 1].p.y - s[i - 1].p.y) / dx;
    const double lhs = (kPi - omega_at(i) / 2.0) * (1.0 + slope * slope);
    worst = std::max(worst, std::abs(lhs - static_cast<double>(s[i].sign)));
  }
  return worst;
}

}  // namespace detail

/// max |(π − ω/2)(1 + y′²) − sign| over interior samples, y′ by central
/// differences.
inline double curve_residual(const OmegaField& field, const std::vector<CurveSample>& s) {
  return detail::curve_residual_impl(s, [&](std::size_t i) { return field(s[i].p); });
}

/// Same, with ω given per sample.
inline double curve_residual(const std::vector<double>& omega, const std::vector<CurveSample>& s) {
  if (omega.size() != s.size()) fail(ErrorCode::InvalidArgument, "one omega value per sample");
  return detail::curve_residual_impl(s, [&](std::size_t i) { return omega[i]; });
}

struct PolarSample {
  double rho = 0.0;
  double theta = 0.0;
  int sign = 0;
};

/// max |(π − ω/2) − sign·Δθ/Δρ| over consecutive sample pairs; ω is taken
/// at the pair midpoint.
inline double polar_curve_residual(const OmegaField& field, const std::vector<PolarSample>& s) {
  if (s.size() < 2) fail(ErrorCode::InvalidArgument, "polar residual needs >= 2 samples");
  double dir = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double drho = s[i + 1].rho - s[i].rho;
    if (drho == 0.0 || (dir != 0.0 && (drho > 0.0) != (dir > 0.0))) {
      fail(ErrorCode::NonMonotoneRho, "rho must be strictly monotone");
    }
    dir = drho;
    const double rho = 0.5 * (s[i].rho + s[i + 1].rho);
    const double th = 0.5 * (s[i].theta + s[i + 1].theta);
    const double w = field(rho * std::cos(th), rho * std::sin(th));
    const double dtheta = (s[i + 1].theta - s[i].theta) / drho;
    worst = std::max(worst, std::abs((kPi - w / 2.0) - static_cast<double>(s[i].sign) * dtheta));
  }
  return worst;
}

/// max |ϑ − (π − η/2)| over lifted points, ϑ = atan2(z, √(x²+y²)).
inline double cone_check(double eta, const std::vector<std::array<double, 3>>& pts) {
  const double target = kPi - eta / 2.0;
  double worst = 0.0;
  for (const auto& p : pts) {
    const double r = std::hypot(p[0], p[1]);
    worst = std::max(worst, std::abs(std::atan2(p[2], r) - target));
  }
  return worst;
}

/// ω(x, y(x)) = 2(π − sign/(1 + f²)).
inline std::vector<double> omega_from_ode(const std::function<double(double, double)>& slope,
                                          const std::vector<Point2>& curve, int sign) {
  std::vector<double> out;
  out.reserve(curve.size());
  for (const auto& p : curve) {
    const double f = slope(p.x, p.y);
    out.push_back(2.0 * (kPi - static_cast<double>(sign) / (1.0 + f * f)));
  }
  return out;
}

struct ClosedCurve {
  double s = 0.0;  // perimeter
  double r = 0.0;  // radius
};

/// Constant ω = η < 2π closes a circle: r = 2/(2π − η), s = 2πr.
inline ClosedCurve closed_curve_params(double eta) {
  if (eta >= kTwoPi) fail(ErrorCode::NotElliptic, "closed curves need eta < 2pi");
  if (!(eta > 0.0)) fail(ErrorCode::BadParameters, "eta must be positive");
  const double r = 2.0 / (kTwoPi - eta);
  return {kTwoPi * r, r};
}

enum class SpiralKind { EllipticIn, EllipticOut, HyperbolicIn, HyperbolicOut };

/// sᵢη < 2(sᵢ − 2i)π for elliptic in / hyperbolic out, ">" for the other two.
inline bool check_spiral_condition(double eta, const std::vector<double>& s, SpiralKind kind) {
  if (s.empty()) fail(ErrorCode::EmptySequence, "spiral sequence is empty");
  const bool less = kind == SpiralKind::EllipticIn || kind == SpiralKind::HyperbolicOut;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!(s[k] > 0.0)) fail(ErrorCode::InvalidArgument, "spiral sequence must be positive");
    const double i = static_cast<double>(k + 1);
    const double lhs = s[k] * eta;
    const double rhs = 2.0 * (s[k] - 2.0 * i) * kPi;
    if (less ? !(lhs < rhs) : !(lhs > rhs)) return false;
  }
  return true;
}

enum class SingularType { Knot, CriticalKnot, DegenerateKnot, Saddle, Focal, Central };
enum class Stability { Stable, Unstable, Neutral };

inline std::string_view to_string(SingularType t) {
  switch (t) {
    case SingularType::Knot: return "knot";
    case SingularType::CriticalKnot: return "critical knot";
    case SingularType::DegenerateKnot: return "degenerate knot";
    case SingularType::Saddle: return "saddle";
    case SingularType::Focal: return "focal";
    case SingularType::Central: return "central";
  }
  return "?";
}

inline std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Neutral: return "neutral";
  }
  return "?";
}

struct SingularClass {
  SingularType type = SingularType::Knot;
  Stability stability = Stability::Neutral;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Linearization by the eigenvalues of the Jacobian.
inline SingularClass classify_singular(const Matrix2& J, double tol = 1e-12) {
  for (const auto& row : J)
    for (double v : row)
      if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "Jacobian is not finite");
  const double a = J[0][0], b = J[0][1], c = J[1][0], d = J[1][1];
  const double tr = a + d;
  const double det = a * d - b * c;
  const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  const double eps = tol * scale * scale;
  const double disc = tr * tr - 4.0 * det;

  auto stability_of = [&](double re1, double re2) {
    const double t = tol * scale;
    if (re1 < -t && re2 < -t) return Stability::Stable;
    if (re1 > t || re2 > t) return Stability::Unstable;
    return Stability::Neutral;
  };

  SingularClass out;
  if (disc > eps) {
    const double sq = std::sqrt(disc);
    const double l1 = 0.5 * (tr - sq), l2 = 0.5 * (tr + sq);
    out.stability = stability_of(l1, l2);
    if (std::abs(det) <= eps) out.type = SingularType::DegenerateKnot;
    else out.type = det < 0.0 ? SingularType::Saddle : SingularType::Knot;
  } else if (disc < -eps) {
    out.stability = stability_of(tr / 2.0, tr / 2.0);
    out.type = std::abs(tr) <= tol * scale ? SingularType::Central : SingularType::Focal;
  } else {
    const double l = tr / 2.0;
    out.stability = stability_of(l, l);
    const bool scalar = std::abs(b) <= tol * scale && std::abs(c) <= tol * scale &&
                        std::abs(a - d) <= tol * scale;
    out.type = scalar ? SingularType::CriticalKnot : SingularType::DegenerateKnot;
  }
  return out;
}

using VectorField = std::function<Vec2(Point2)>;

/// Classifies the singular point p of (P, Q) via a central-difference Jacobian.
inline SingularClass classify_singular_at(const VectorField& field, Point2 p, double h = 1e-6,
                                          double tol = 1e-9) {
  const Vec2 v = field(p);
  if (std::hypot(v.x, v.y) > tol) fail(ErrorCode::NotSingular, "P and Q do not vanish at the point");
  const Vec2 dx = (1.0 / (2.0 * h)) * (field({p.x + h, p.y}) - field({p.x - h, p.y}));
  const Vec2 dy = (1.0 / (2.0 * h)) * (field({p.x, p.y + h}) - field({p.x, p.y - h}));
  return classify_singular(Matrix2{{{dx.x, dy.x}, {dx.y, dy.y}}}, 1e-7);
}

/// Cells whose corner values of ω spread by more than `jump`. Corners where
/// the field is undefined mark the cell as suspect too.
inline std::vector<Point2> detect_omega_discontinuity(const OmegaField& field, Rect r, std::size_t nx,
                                                      std::size_t ny, double jump = kPi / 2.0) {
  if (nx < 2 || ny < 2) fail(ErrorCode::InvalidArgument, "grid must be at least 2x2");
  auto X = [&](std::size_t i) { return r.xmin + (r.xmax - r.xmin) * static_cast<double>(i) / static_cast<double>(nx - 1); };
  auto Y = [&](std::size_t j) { return r.ymin + (r.ymax - r.ymin) * static_cast<double>(j) / static_cast<double>(ny - 1); };
  std::vector<std::optional<double>> w(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      try {
        w[j * nx + i] = field(X(i), Y(j));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OutOfDomain && e.code() != ErrorCode::OriginUndefined) throw;
      }
    }
  }
  std::vector<Point2> out;
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const std::array<std::optional<double>, 4> c = {w[j * nx + i], w[j * nx + i + 1], w[(j + 1) * nx + i],
                                                      w[(j + 1) * nx + i + 1]};
      const bool missing = std::any_of(c.begin(), c.end(), [](const auto& v) { return !v; });
      const bool all_missing = std::all_of(c.begin(), c.end(), [](const auto& v) { return !v; });
      bool flag = missing && !all_missing;
      if (!missing) {
        double lo = *c[0], hi = *c[0];
        for (const auto& v : c) { lo = std::min(lo, *v); hi = std::max(hi, *v); }
        flag = hi - lo > jump;
      }
      if (flag) out.push_back({0.5 * (X(i) + X(i + 1)), 0.5 * (Y(j) + Y(j + 1))});
    }
  }
  return out;
}

enum class OrbitStatus { Horizon, DomainExit, Stagnation };

inline std::string_view to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Horizon: return "horizon";
    case OrbitStatus::DomainExit: return "domain-exit";
    case OrbitStatus::Stagnation: return "stagnation";
  }
  return "?";
}

struct Orbit {
  std::vector<double> t;
  std::vector<Point2> points;
  double step = 0.0;
  OrbitStatus status = OrbitStatus::Horizon;
};

/// Classical fixed-step RK4 for dx/dt = P, dy/dt = Q.
inline Orbit integrate_ode(const VectorField& field, Point2 start, double step, double horizon,
                           std::optional<Rect> domain = std::nullopt) {
  if (!(step > 0.0) || !(horizon >= 0.0)) fail(ErrorCode::InvalidArgument, "step must be positive");
  Orbit orb;
  orb.step = step;
  auto eval = [&](Point2 p) {
    const Vec2 v = field(p);
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) fail(ErrorCode::NonFinite, "vector field is not finite");
    return v;
  };
  auto inside = [&](Point2 p) {
    return !domain || (p.x >= domain->xmin && p.x <= domain->xmax && p.y >= domain->ymin && p.y <= domain->ymax);
  };
  Point2 p = start;
  double t = 0.0;
  orb.t.push_back(t);
  orb.points.push_back(p);
  const auto steps = static_cast<std::size_t>(std::llround(std::ceil(horizon / step - 1e-9)));
  for (std::size_t k = 0; k < steps; ++k) {
    const double h = std::min(step, horizon - t);
    const Vec2 k1 = eval(p);
    if (std::hypot(k1.x, k1.y) < 1e-12) {
      orb.status = OrbitStatus::Stagnation;
      return orb;
    }
    const Vec2 k2 = eval(p + (h / 2.0) * k1);
    const Vec2 k3 = eval(p + (h / 2.0) * k2);
    const Vec2 k4 = eval(p + h * k3);
    p = p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = static_cast<double>(k + 1) * step;
    if (k + 1 == steps) t = horizon;
    orb.t.push_back(t);
    orb.points.push_back(p);
    if (!inside(p)) {
      orb.status = OrbitStatus::DomainExit;
      return orb;
    }
  }
  orb.status = OrbitStatus::Horizon;
  return orb;
}

/// Integral curve of dy/dx = f(x, y), i.e. P = 1, Q = f.
inline Orbit integrate_slope(const std::function<double(double, double)>& slope, Point2 start, double step,
                             double length, std::optional<Rect> domain = std::nullopt) {
  return integrate_ode([&](Point2 p) { return Vec2{1.0, slope(p.x, p.y)}; }, start, step, length, domain);
}

/// Companion flow of the ring field: dρ/dt = −s·ρ·ln(ρ/ρ₀), dφ/dt = 1, with
/// s = +1 (attracting) for the minus branch and −1 for the plus branch.
inline VectorField ring_companion_field(double rho0, RingBranch branch) {
  if (!(rho0 > 0.0)) fail(ErrorCode::BadParameters, "rho0 must be positive");
  const double s = branch == RingBranch::Minus ? 1.0 : -1.0;
  return [rho0, s](Point2 p) {
    const double rho = std::hypot(p.x, p.y);
    if (rho == 0.0) return Vec2{0.0, 0.0};
    const double g = -s * std::log(rho / rho0);
    return Vec2{g * p.x - p.y, g * p.y + p.x};
  };
}

/// Orbits of the companion flow for a ring field.
inline Orbit ring_orbit(const OmegaField& ring, double start_radius, double step, double horizon) {
  if (ring.kind() != OmegaField::Kind::RadialRing) fail(ErrorCode::BadParameters, "not a ring field");
  return integrate_ode(ring_companion_field(ring.rho0(), ring.branch()), {start_radius, 0.0}, step, horizon);
}

}  // namespace mapgeo
