#pragma once

#include <cstddef>
#include <vector>

#include "twwc/pmf.hpp"

namespace twwc {

// Dense row-major tensor of nonnegative reals; the last axis varies fastest.
// Small and unclever on purpose: every alphabet here is desk-scale.
struct NdTensor {
  std::vector<std::size_t> dims;
  Vec data;

  NdTensor() = default;
  NdTensor(std::vector<std::size_t> dims_, Vec data_);

  std::size_t rank() const { return dims.size(); }
  std::size_t size() const { return data.size(); }
  double sum() const;

  // Sum out every axis not listed in keep_axes; result axes follow the order
  // given in keep_axes (which may permute).
  NdTensor marginal(const std::vector<std::size_t>& keep_axes) const;

  // Views for rank-2 / rank-1 results.
  JointPmf as_joint2() const;
  Pmf as_pmf() const;
};

}  // namespace twwc
