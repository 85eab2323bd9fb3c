#include "twwc/tensor.hpp"

#include <algorithm>
#include <numeric>

#include "twwc/errors.hpp"

namespace twwc {

NdTensor::NdTensor(std::vector<std::size_t> dims_, Vec data_)
    : dims(std::move(dims_)), data(std::move(data_)) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  if (n != data.size()) throw ValidationError("tensor: data length does not match dims");
}

double NdTensor::sum() const { return std::accumulate(data.begin(), data.end(), 0.0); }

NdTensor NdTensor::marginal(const std::vector<std::size_t>& keep_axes) const {
  for (std::size_t ax : keep_axes)
    if (ax >= dims.size()) throw ValidationError("marginal: axis out of range");
  std::vector<std::size_t> out_dims;
  out_dims.reserve(keep_axes.size());
  for (std::size_t ax : keep_axes) out_dims.push_back(dims[ax]);
  std::size_t out_total = 1;
  for (std::size_t d : out_dims) out_total *= d;
  NdTensor out;
  out.dims = out_dims;
  out.data.assign(out_total, 0.0);

  // Row-major strides of the source.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];
  std::vector<std::size_t> out_stride(keep_axes.size(), 1);
  for (std::size_t i = keep_axes.size(); i-- > 1;) out_stride[i - 1] = out_stride[i] * out_dims[i];

  std::vector<std::size_t> idx(dims.size(), 0);
  const std::size_t total = data.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      idx[i] = rem / stride[i];
      rem %= stride[i];
    }
    std::size_t out_flat = 0;
    for (std::size_t i = 0; i < keep_axes.size(); ++i) out_flat += idx[keep_axes[i]] * out_stride[i];
    out.data[out_flat] += data[flat];
  }
  return out;
}

JointPmf NdTensor::as_joint2() const {
  if (dims.size() != 2) throw ValidationError("as_joint2: tensor rank must be 2");
  return JointPmf(dims[0], dims[1], data);
}

Pmf NdTensor::as_pmf() const {
  if (dims.size() != 1) throw ValidationError("as_pmf: tensor rank must be 1");
  return Pmf(data);
}

}  // namespace twwc
