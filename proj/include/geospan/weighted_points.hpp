#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "geospan/common.hpp"

namespace geospan {

/// A point in R^d carrying a non-negative additive weight.
struct WeightedPoint {
  std::vector<double> coords;
  double weight = 0.0;
};

/// A weighted point set with a shared ambient dimension. Point identity is
/// positional: coincident points with equal weights are still distinct
/// vertices of every graph built on the set.
struct PointSet {
  std::size_t dim = 0;
  std::vector<WeightedPoint> points;

  std::size_t size() const { return points.size(); }
  const WeightedPoint& operator[](std::size_t i) const { return points[i]; }

  void validate() const;  // throws std::invalid_argument on violation
};

double euclidean(const WeightedPoint& p, const WeightedPoint& q);

/// Additively weighted distance w(p) + |pq| + w(q) for distinct points.
/// Callers owning index identity map the same-index case to 0 themselves
/// (see PointSet::dw).
double dw_distance(const WeightedPoint& p, const WeightedPoint& q);

/// The metric d_w over a point set: 0 on the diagonal, dw_distance off it.
double dw(const PointSet& s, std::size_t i, std::size_t j);

// ---- JSON interchange:  {"dim": d, "points": [{"coords": [...], "weight": w}]}

PointSet point_set_from_json(const std::string& text);
std::string point_set_to_json(const PointSet& s);
PointSet load_point_set(const std::string& path);
void save_point_set(const PointSet& s, const std::string& path);

// ---- Deterministic fixture generators (all randomness flows from `seed`).

PointSet gen_weighted_points(std::size_t n, std::size_t dim, double coord_hi,
                             double weight_hi, std::uint64_t seed);

/// n points in the closed unit disk, every weight exactly 1.
PointSet gen_lowerbound_disk(std::size_t n, std::uint64_t seed);

}  // namespace geospan
