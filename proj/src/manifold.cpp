#include "specdpp/manifold.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "specdpp/errors.hpp"

namespace specdpp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Nearest-representative difference y - x in (-pi, pi].
double angle_difference(double x, double y) {
  double d = std::remainder(y - x, kTwoPi);
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

void check_dimension(const ManifoldModel& model, std::size_t n) {
  if (n != static_cast<std::size_t>(model.dimension())) {
    throw DomainError("tangent vector has " + std::to_string(n) + " components, manifold " +
                      model.name() + " has dimension " + std::to_string(model.dimension()));
  }
}

}  // namespace

ManifoldModel ManifoldModel::circle() { return {ManifoldKind::Circle, 1}; }

ManifoldModel ManifoldModel::flat_torus(int m) {
  if (m < 1 || m > 3) throw DomainError("flat torus dimension must be in 1..3");
  return {ManifoldKind::FlatTorus, m};
}

ManifoldModel ManifoldModel::sphere2() { return {ManifoldKind::Sphere2, 2}; }

ManifoldModel ManifoldModel::parse(std::string_view text) {
  if (text == "circle") return circle();
  if (text == "sphere2") return sphere2();
  if (text == "torus") return flat_torus(1);
  if (text.starts_with("torus:") && text.size() == 7) {
    const char c = text[6];
    if (c >= '1' && c <= '3') return flat_torus(c - '0');
  }
  throw DomainError("unknown manifold '" + std::string(text) +
                    "' (expected circle, torus:m with m in 1..3, or sphere2)");
}

double ManifoldModel::total_volume() const {
  switch (kind_) {
    case ManifoldKind::Circle:
      return kTwoPi;
    case ManifoldKind::FlatTorus:
      return std::pow(kTwoPi, dim_);
    case ManifoldKind::Sphere2:
      return 4.0 * std::numbers::pi;
  }
  return 0.0;
}

double ManifoldModel::injectivity_radius() const { return std::numbers::pi; }

std::string ManifoldModel::name() const {
  switch (kind_) {
    case ManifoldKind::Circle:
      return "circle";
    case ManifoldKind::FlatTorus:
      return "torus:" + std::to_string(dim_);
    case ManifoldKind::Sphere2:
      return "sphere2";
  }
  return {};
}

double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

ManifoldPoint make_point(const ManifoldModel& model, std::span<const double> coords) {
  if (coords.size() != static_cast<std::size_t>(model.coordinate_count())) {
    throw DomainError("point for " + model.name() + " needs " +
                      std::to_string(model.coordinate_count()) + " coordinates");
  }
  ManifoldPoint p;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) throw DomainError("non-finite point coordinate");
    p.coords[i] = coords[i];
  }
  if (model.kind() == ManifoldKind::Sphere2) {
    const double n = norm(p.coords);
    if (n < 1e-12) throw DomainError("sphere point must be a non-zero 3-vector");
    for (double& c : p.coords) c /= n;
  } else {
    for (std::size_t i = 0; i < coords.size(); ++i) p.coords[i] = wrap_angle(p.coords[i]);
  }
  return p;
}

void validate_point(const ManifoldModel& model, const ManifoldPoint& x) {
  if (model.kind() == ManifoldKind::Sphere2) {
    if (std::abs(norm(x.coords) - 1.0) > 1e-12) throw DomainError("sphere point is not unit");
    return;
  }
  for (int i = 0; i < model.dimension(); ++i) {
    if (!(x.coords[i] >= 0.0 && x.coords[i] < kTwoPi)) {
      throw DomainError("angle outside [0, 2pi)");
    }
  }
}

std::vector<Vec3> orthonormal_frame(const ManifoldModel& model, const ManifoldPoint& p) {
  if (model.kind() != ManifoldKind::Sphere2) return {};
  const Vec3& x = p.coords;
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(x[i]) < std::abs(x[axis])) axis = i;
  }
  Vec3 e1{};
  e1[axis] = 1.0;
  const double a = dot(e1, x);
  for (int i = 0; i < 3; ++i) e1[i] -= a * x[i];
  const double n = norm(e1);
  for (double& c : e1) c /= n;
  return {e1, cross(x, e1)};
}

ManifoldPoint exp_map(const ManifoldModel& model, const TangentVector& v) {
  check_dimension(model, v.components.size());
  ManifoldPoint out = v.base;
  if (model.kind() != ManifoldKind::Sphere2) {
    for (int i = 0; i < model.dimension(); ++i) {
      out.coords[i] = wrap_angle(v.base.coords[i] + v.components[i]);
    }
    return out;
  }
  const auto frame = orthonormal_frame(model, v.base);
  Vec3 w{};
  for (int i = 0; i < 3; ++i) w[i] = v.components[0] * frame[0][i] + v.components[1] * frame[1][i];
  const double t = norm(w);
  if (t == 0.0) return out;
  const double c = std::cos(t);
  const double s = std::sin(t) / t;
  for (int i = 0; i < 3; ++i) out.coords[i] = c * v.base.coords[i] + s * w[i];
  const double n = norm(out.coords);
  for (double& x : out.coords) x /= n;
  return out;
}

TangentVector log_map(const ManifoldModel& model, const ManifoldPoint& p, const ManifoldPoint& x) {
  const double inj = model.injectivity_radius();
  TangentVector v{p, std::vector<double>(model.dimension(), 0.0)};
  if (model.kind() != ManifoldKind::Sphere2) {
    double sq = 0.0;
    for (int i = 0; i < model.dimension(); ++i) {
      v.components[i] = angle_difference(p.coords[i], x.coords[i]);
      sq += v.components[i] * v.components[i];
    }
    if (std::sqrt(sq) >= inj) throw DomainError("log_map: point on or beyond the cut locus");
    return v;
  }
  const double c = dot(p.coords, x.coords);
  Vec3 w{};
  for (int i = 0; i < 3; ++i) w[i] = x.coords[i] - c * p.coords[i];
  const double s = norm(w);
  const double t = std::atan2(norm(cross(p.coords, x.coords)), c);
  if (t >= inj || (s == 0.0 && c < 0.0)) {
    throw DomainError("log_map: point on or beyond the cut locus");
  }
  if (s == 0.0 || t == 0.0) return v;
  const auto frame = orthonormal_frame(model, p);
  v.components[0] = t * dot(w, frame[0]) / s;
  v.components[1] = t * dot(w, frame[1]) / s;
  return v;
}

double distance(const ManifoldModel& model, const ManifoldPoint& x, const ManifoldPoint& y) {
  if (model.kind() == ManifoldKind::Sphere2) {
    // atan2 form keeps full relative precision for nearly coincident points,
    // where arccos of the inner product loses half the digits.
    return std::atan2(norm(cross(x.coords, y.coords)), dot(x.coords, y.coords));
  }
  double sq = 0.0;
  for (int i = 0; i < model.dimension(); ++i) {
    const double d = angle_difference(x.coords[i], y.coords[i]);
    sq += d * d;
  }
  return std::sqrt(sq);
}

ManifoldPoint uniform_sample(const ManifoldModel& model, RandomStream& rng) {
  ManifoldPoint p;
  if (model.kind() != ManifoldKind::Sphere2) {
    for (int i = 0; i < model.dimension(); ++i) p.coords[i] = wrap_angle(kTwoPi * rng.uniform());
    return p;
  }
  for (;;) {
    for (double& c : p.coords) c = rng.normal();
    const double n = norm(p.coords);
    if (n > 1e-8) {
      for (double& c : p.coords) c /= n;
      return p;
    }
  }
}

}  // namespace specdpp
