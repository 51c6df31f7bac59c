#include "specdpp/csv.hpp"

#include <algorithm>
#include <cstdio>

namespace specdpp {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_points_csv(std::ostream& os, std::span<const PointConfiguration> configs) {
  std::size_t arity = 1;
  for (const auto& c : configs) {
    for (std::size_t i = 0; i < c.size(); ++i) arity = std::max(arity, c.coords(i).size());
  }
  os << "replica,index,space";
  for (std::size_t k = 1; k <= arity; ++k) os << ",c" << k;
  os << '\n';
  for (const auto& c : configs) {
    const char* space = c.space == Space::Manifold ? "manifold" : "chart";
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto x = c.coords(i);
      os << c.replica << ',' << i << ',' << space;
      for (std::size_t k = 0; k < arity; ++k) {
        os << ',';
        if (k < x.size()) os << format_number(x[k]);
      }
      os << '\n';
    }
  }
}

void write_kernel_csv(std::ostream& os, const KernelTable& table) {
  const int m = table.dimension;
  for (int k = 1; k <= m; ++k) os << 'u' << k << ',';
  for (int k = 1; k <= m; ++k) os << 'v' << k << ',';
  os << "value\n";
  for (std::size_t i = 0; i < table.u.size(); ++i) {
    for (std::size_t j = 0; j < table.v.size(); ++j) {
      for (double x : table.u[i]) os << format_number(x) << ',';
      for (double x : table.v[j]) os << format_number(x) << ',';
      os << format_number(table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))
         << '\n';
    }
  }
}

void write_weyl_csv(std::ostream& os, const WeylResult& result) {
  os << "lambda,count,leading,ratio,residual\n";
  for (const auto& row : result.rows) {
    os << format_number(row.lambda) << ',' << row.count << ',' << format_number(row.leading) << ','
       << format_number(row.ratio) << ',' << format_number(row.residual) << '\n';
  }
}

}  // namespace specdpp
