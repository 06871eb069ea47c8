#include "geospan/weighted_points.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace geospan {

void PointSet::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].coords.size() != dim)
      throw std::invalid_argument("point " + std::to_string(i) +
                                  ": dimension mismatch with point set");
    if (!(points[i].weight >= 0.0))
      throw std::invalid_argument("point " + std::to_string(i) +
                                  ": negative weight");
  }
}

double euclidean(const WeightedPoint& p, const WeightedPoint& q) {
  if (p.coords.size() != q.coords.size())
    throw std::invalid_argument("euclidean: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < p.coords.size(); ++k) {
    const double d = p.coords[k] - q.coords[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double dw_distance(const WeightedPoint& p, const WeightedPoint& q) {
  // summed as |pq| + (w(p)+w(q)) so the result is bitwise symmetric
  return euclidean(p, q) + (p.weight + q.weight);
}

double dw(const PointSet& s, std::size_t i, std::size_t j) {
  if (i == j) return 0.0;
  return dw_distance(s.points[i], s.points[j]);
}

PointSet point_set_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PointSet s;
  s.dim = j.at("dim").get<std::size_t>();
  for (const auto& jp : j.at("points")) {
    WeightedPoint p;
    p.coords = jp.at("coords").get<std::vector<double>>();
    p.weight = jp.at("weight").get<double>();
    s.points.push_back(std::move(p));
  }
  s.validate();
  return s;
}

std::string point_set_to_json(const PointSet& s) {
  nlohmann::json j;
  j["dim"] = s.dim;
  j["points"] = nlohmann::json::array();
  for (const auto& p : s.points)
    j["points"].push_back({{"coords", p.coords}, {"weight", p.weight}});
  return j.dump(2) + "\n";
}

PointSet load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open point set file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return point_set_from_json(ss.str());
}

void save_point_set(const PointSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write point set file: " + path);
  out << point_set_to_json(s);
}

PointSet gen_weighted_points(std::size_t n, std::size_t dim, double coord_hi,
                             double weight_hi, std::uint64_t seed) {
  Rng rng(seed);
  PointSet s;
  s.dim = dim;
  s.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    WeightedPoint p;
    p.coords.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) p.coords[k] = rng.uniform(0.0, coord_hi);
    p.weight = rng.uniform(0.0, weight_hi);
    s.points.push_back(std::move(p));
  }
  return s;
}

PointSet gen_lowerbound_disk(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  PointSet s;
  s.dim = 2;
  s.points.reserve(n);
  while (s.points.size() < n) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    if (x * x + y * y > 1.0) continue;
    s.points.push_back(WeightedPoint{{x, y}, 1.0});
  }
  return s;
}

}  // namespace geospan
