#pragma once

#include <ostream>
#include <span>
#include <string>

#include "specdpp/analysis.hpp"
#include "specdpp/kernel.hpp"
#include "specdpp/sampler.hpp"

namespace specdpp {

/// Decimal with 17 significant digits (round-trips every double).
std::string format_number(double x);

/// `replica,index,space,c1,...,ck` with k the largest coordinate arity;
/// shorter rows leave trailing fields empty.
void write_points_csv(std::ostream& os, std::span<const PointConfiguration> configs);

/// `u1..um,v1..vm,value`, one row per (u_i, v_j) in row-major order.
void write_kernel_csv(std::ostream& os, const KernelTable& table);

/// `lambda,count,leading,ratio,residual`.
void write_weyl_csv(std::ostream& os, const WeylResult& result);

}  // namespace specdpp
