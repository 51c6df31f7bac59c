#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specdpp/random.hpp"

namespace specdpp {

using Vec3 = std::array<double, 3>;

enum class ManifoldKind { Circle, FlatTorus, Sphere2 };

/// One of the closed model manifolds: the circle R/2piZ, the flat torus
/// (R/2piZ)^m with m in 1..3, and the round unit sphere in R^3.
class ManifoldModel {
 public:
  static ManifoldModel circle();
  static ManifoldModel flat_torus(int m);
  static ManifoldModel sphere2();
  /// "circle", "torus:m" (or "torus" for m = 1), "sphere2".
  static ManifoldModel parse(std::string_view text);

  ManifoldKind kind() const { return kind_; }
  int dimension() const { return dim_; }
  /// Number of stored coordinates per point (3 for the embedded sphere).
  int coordinate_count() const { return kind_ == ManifoldKind::Sphere2 ? 3 : dim_; }
  double total_volume() const;
  double injectivity_radius() const;
  std::string name() const;

  bool operator==(const ManifoldModel&) const = default;

 private:
  ManifoldModel(ManifoldKind kind, int dim) : kind_(kind), dim_(dim) {}
  ManifoldKind kind_;
  int dim_;
};

/// Angles in [0, 2pi) for the circle and torus, a unit 3-vector for the
/// sphere. Unused trailing coordinates are zero.
struct ManifoldPoint {
  Vec3 coords{};

  std::span<const double> view(const ManifoldModel& model) const {
    return {coords.data(), static_cast<std::size_t>(model.coordinate_count())};
  }
};

/// Components in the orthonormal frame returned by orthonormal_frame(base).
struct TangentVector {
  ManifoldPoint base;
  std::vector<double> components;
};

double wrap_angle(double theta);  // to [0, 2pi)

/// Builds a valid point from raw coordinates: angles are wrapped, sphere
/// coordinates normalised. Throws DomainError on wrong arity or a zero vector.
ManifoldPoint make_point(const ManifoldModel& model, std::span<const double> coords);

/// Throws DomainError if x is not a valid point of the model.
void validate_point(const ManifoldModel& model, const ManifoldPoint& x);

/// Orthonormal frame of T_pM embedded in R^3 (sphere only; empty otherwise,
/// where the coordinate frame is used). Gram-Schmidt of the least-aligned
/// coordinate axis against p, lowest axis index on ties; e2 = p x e1.
std::vector<Vec3> orthonormal_frame(const ManifoldModel& model, const ManifoldPoint& p);

ManifoldPoint exp_map(const ManifoldModel& model, const TangentVector& v);
/// Inverse of exp_map. Throws DomainError when d(p, x) >= injectivity radius.
TangentVector log_map(const ManifoldModel& model, const ManifoldPoint& p,
                      const ManifoldPoint& x);
double distance(const ManifoldModel& model, const ManifoldPoint& x, const ManifoldPoint& y);

/// Draw from the normalised Riemannian volume.
ManifoldPoint uniform_sample(const ManifoldModel& model, RandomStream& rng);

}  // namespace specdpp
