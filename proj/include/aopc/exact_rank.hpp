#pragma once

#include <span>

#include "aopc/model.hpp"

namespace aopc::exact {

/// Affine dimension of a finite point set (rank of the differences to the
/// first point), computed in exact rational arithmetic. Point coordinates are
/// converted from double without rounding. A single point has dimension 0.
int affineDimension(std::span<const ModelPoint> points);

}  // namespace aopc::exact
