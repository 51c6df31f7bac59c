#include "specdpp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "specdpp/errors.hpp"

namespace specdpp {
namespace {

// Largest integer n with n <= lambda^2, rounding up when lambda^2 lands a
// hair below an integer (lambda = sqrt(l(l+1)) and friends).
std::int64_t cutoff_sq(double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("spectral cutoff must be non-negative");
  const double s = lambda * lambda;
  auto n = static_cast<std::int64_t>(std::floor(s));
  if (static_cast<double>(n + 1) - s <= 1e-12 * std::max(1.0, s)) ++n;
  return n;
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

int sphere_max_degree(std::int64_t bound) {
  int l = static_cast<int>(isqrt(bound));
  while (static_cast<std::int64_t>(l) * (l + 1) > bound) --l;
  return l;
}

// Number of k in Z^dims with |k|^2 <= budget.
std::int64_t lattice_count(int dims, std::int64_t budget) {
  if (budget < 0) return 0;
  if (dims == 1) return 2 * isqrt(budget) + 1;
  const std::int64_t r = isqrt(budget);
  std::int64_t total = 0;
  for (std::int64_t k = -r; k <= r; ++k) total += lattice_count(dims - 1, budget - k * k);
  return total;
}

bool is_representative(const std::array<int, 3>& k, int dims) {
  for (int i = 0; i < dims; ++i) {
    if (k[i] != 0) return k[i] > 0;
  }
  return false;
}

void sphere_legendre(int max_l, double z, double s, std::vector<double>& p) {
  const auto idx = [](int l, int m) { return l * (l + 1) / 2 + m; };
  p.assign(static_cast<std::size_t>((max_l + 1) * (max_l + 2) / 2), 0.0);
  p[0] = 0.5 / std::sqrt(std::numbers::pi);
  for (int m = 1; m <= max_l; ++m) {
    p[idx(m, m)] = p[idx(m - 1, m - 1)] * std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
  }
  for (int m = 0; m < max_l; ++m) {
    p[idx(m + 1, m)] = z * std::sqrt(2.0 * m + 3.0) * p[idx(m, m)];
  }
  for (int m = 0; m <= max_l; ++m) {
    const double mm = static_cast<double>(m) * m;
    for (int l = m + 2; l <= max_l; ++l) {
      const double ll = static_cast<double>(l) * l;
      const double lm1 = static_cast<double>(l - 1) * (l - 1);
      const double a = std::sqrt((4.0 * ll - 1.0) / (ll - mm));
      const double b = std::sqrt((lm1 - mm) / (4.0 * lm1 - 1.0));
      p[idx(l, m)] = a * (z * p[idx(l - 1, m)] - b * p[idx(l - 2, m)]);
    }
  }
}

}  // namespace

bool within_cutoff(std::int64_t eigenvalue_sq, double lambda) {
  return eigenvalue_sq <= cutoff_sq(lambda);
}

SpectralBasis::SpectralBasis(const ManifoldModel& model, double cutoff_lambda)
    : model_(model), cutoff_(cutoff_lambda) {
  const std::int64_t bound = cutoff_sq(cutoff_lambda);
  switch (model.kind()) {
    case ManifoldKind::Circle:
    case ManifoldKind::FlatTorus: {
      const int dims = model.dimension();
      const int r = static_cast<int>(isqrt(bound));
      entries_.push_back({0, {}, Branch::Constant});
      std::array<int, 3> k{};
      // Odometer over the box [-r, r]^dims.
      for (int i = 0; i < dims; ++i) k[i] = -r;
      for (;;) {
        std::int64_t sq = 0;
        for (int i = 0; i < dims; ++i) sq += static_cast<std::int64_t>(k[i]) * k[i];
        if (sq <= bound && is_representative(k, dims)) {
          entries_.push_back({sq, k, Branch::Cos});
          entries_.push_back({sq, k, Branch::Sin});
        }
        int i = dims - 1;
        while (i >= 0 && k[i] == r) k[i--] = -r;
        if (i < 0) break;
        ++k[i];
      }
      std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.eigenvalue_sq, a.index, a.branch) <
               std::tie(b.eigenvalue_sq, b.index, b.branch);
      });
      break;
    }
    case ManifoldKind::Sphere2: {
      max_degree_ = sphere_max_degree(bound);
      for (int l = 0; l <= max_degree_; ++l) {
        for (int j = -l; j <= l; ++j) {
          const Branch br = j < 0 ? Branch::Sin : (j == 0 ? Branch::Constant : Branch::Cos);
          entries_.push_back({static_cast<std::int64_t>(l) * (l + 1), {l, j, 0}, br});
        }
      }
      break;
    }
  }
}

void SpectralBasis::evaluate(const ManifoldPoint& x, std::span<double> out) const {
  if (out.size() != entries_.size()) throw DomainError("eval_basis: output size mismatch");
  switch (model_.kind()) {
    case ManifoldKind::Circle:
    case ManifoldKind::FlatTorus: {
      const int dims = model_.dimension();
      const double c0 = 1.0 / std::sqrt(model_.total_volume());
      const double c1 = std::numbers::sqrt2 * c0;
      for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.branch == Branch::Constant) {
          out[i] = c0;
          continue;
        }
        double phase = 0.0;
        for (int d = 0; d < dims; ++d) phase += e.index[d] * x.coords[d];
        out[i] = c1 * (e.branch == Branch::Cos ? std::cos(phase) : std::sin(phase));
      }
      return;
    }
    case ManifoldKind::Sphere2: {
      thread_local std::vector<double> legendre;
      const int max_l = max_degree_;
      const double z = x.coords[2];
      const double s = std::hypot(x.coords[0], x.coords[1]);
      sphere_legendre(max_l, z, s, legendre);
      const double cphi = s > 0.0 ? x.coords[0] / s : 1.0;
      const double sphi = s > 0.0 ? x.coords[1] / s : 0.0;
      double cm = 1.0;
      double sm = 0.0;
      for (int m = 0; m <= max_l; ++m) {
        for (int l = m; l <= max_l; ++l) {
          const double p = legendre[l * (l + 1) / 2 + m];
          const std::size_t centre = static_cast<std::size_t>(l) * l + l;
          if (m == 0) {
            out[centre] = p;
          } else {
            out[centre + m] = std::numbers::sqrt2 * p * cm;
            out[centre - m] = std::numbers::sqrt2 * p * sm;
          }
        }
        const double cn = cm * cphi - sm * sphi;
        sm = sm * cphi + cm * sphi;
        cm = cn;
      }
      return;
    }
  }
}

SpectralBasis build_basis(const ManifoldModel& model, double lambda) { return {model, lambda}; }

std::vector<double> eval_basis(const SpectralBasis& basis, const ManifoldPoint& x) {
  validate_point(basis.model(), x);
  std::vector<double> out(basis.size());
  basis.evaluate(x, out);
  return out;
}

std::int64_t count(const ManifoldModel& model, double lambda) {
  const std::int64_t bound = cutoff_sq(lambda);
  switch (model.kind()) {
    case ManifoldKind::Circle:
    case ManifoldKind::FlatTorus:
      return lattice_count(model.dimension(), bound);
    case ManifoldKind::Sphere2: {
      const std::int64_t l = sphere_max_degree(bound);
      return (l + 1) * (l + 1);
    }
  }
  return 0;
}

}  // namespace specdpp
