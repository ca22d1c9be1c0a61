#pragma once

#include <Eigen/Core>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgeom {

/// A coordinate chart: a dimension plus diagnostic coordinate names.
/// Charts compare by identity; fields built over distinct Chart objects
/// never mix, even if the dimensions agree.
class Chart {
 public:
  Chart() = default;

  explicit Chart(int dim, std::vector<std::string> coord_names = {}) {
    if (dim < 1) throw std::invalid_argument("Chart: dim must be >= 1");
    if (coord_names.empty()) {
      coord_names.reserve(dim);
      for (int i = 0; i < dim; ++i) coord_names.push_back("q" + std::to_string(i));
    }
    if (static_cast<int>(coord_names.size()) != dim)
      throw std::invalid_argument("Chart: coord_names must have dim entries");
    data_ = std::make_shared<Data>(Data{dim, std::move(coord_names)});
  }

  int dim() const { return data_->dim; }
  const std::vector<std::string>& coord_names() const { return data_->names; }
  bool valid() const { return static_cast<bool>(data_); }

  friend bool operator==(const Chart& a, const Chart& b) { return a.data_ == b.data_; }
  friend bool operator!=(const Chart& a, const Chart& b) { return a.data_ != b.data_; }

 private:
  struct Data {
    int dim;
    std::vector<std::string> names;
  };
  std::shared_ptr<const Data> data_;
};

/// A point of a chart.
struct Point {
  Chart chart;
  Eigen::VectorXd coords;

  int dim() const { return chart.dim(); }
};

inline Point make_point(const Chart& chart, Eigen::VectorXd coords) {
  if (coords.size() != chart.dim())
    throw std::invalid_argument("make_point: coordinate count does not match chart dim");
  return Point{chart, std::move(coords)};
}

inline void require_same_chart(const Chart& a, const Chart& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": chart mismatch");
}

}  // namespace fgeom
