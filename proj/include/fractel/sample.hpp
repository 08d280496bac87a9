#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fractel {

// count x dim draws, row-major.
struct SampleBatch {
  double t = 0.0;
  std::size_t dim = 1;
  std::uint64_t seed = 0;
  std::vector<double> values;

  std::size_t count() const { return dim == 0 ? 0 : values.size() / dim; }
  double at(std::size_t i, std::size_t j = 0) const { return values[i * dim + j]; }
  const double* row(std::size_t i) const { return values.data() + i * dim; }
  std::vector<double> column(std::size_t j) const;
};

struct PlanarSample {
  double x = 0.0;
  double y = 0.0;
  bool on_boundary = false;  // no direction change happened before t
  bool defect = false;       // odd-event sampler only: no odd number of events
};

struct PlanarBatch {
  double t = 0.0;
  std::uint64_t seed = 0;
  std::vector<PlanarSample> samples;

  std::size_t count() const { return samples.size(); }
  // Radii of the samples, optionally skipping flagged ones.
  std::vector<double> radii(bool skip_boundary = false, bool skip_defect = false) const;
};

inline std::vector<double> SampleBatch::column(std::size_t j) const {
  std::vector<double> out(count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i, j);
  return out;
}

}  // namespace fractel
