#pragma once

#include <span>
#include <vector>

namespace sharpwt {

// out[i] = sum_j kernel[i - j + n - 1] * f[j] for a kernel tabulated on offsets -(n-1)..(n-1).
std::vector<double> convolve_offsets(std::span<const double> f, std::span<const double> kernel);
std::vector<double> convolve_offsets_direct(std::span<const double> f, std::span<const double> kernel);
std::vector<double> convolve_offsets_fft(std::span<const double> f, std::span<const double> kernel);

}  // namespace sharpwt
