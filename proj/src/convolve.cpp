#include "sharpwt/convolve.hpp"

#include <fftw3.h>

#include <complex>
#include <memory>

#include "sharpwt/error.hpp"

namespace sharpwt {

namespace {

constexpr std::size_t kDirectLimit = 4096;

void check_sizes(std::span<const double> f, std::span<const double> kernel) {
  require(!f.empty() && kernel.size() == 2 * f.size() - 1, "kernel must cover offsets -(n-1)..(n-1)");
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
  if (!p) throw std::bad_alloc();
  return std::unique_ptr<T[], FftwFree>(p);
}

}  // namespace

std::vector<double> convolve_offsets_direct(std::span<const double> f, std::span<const double> kernel) {
  check_sizes(f, kernel);
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    long double s = 0.0L;
    const double* k = kernel.data() + i + n - 1;
    for (std::size_t j = 0; j < n; ++j) s += static_cast<long double>(k[-static_cast<std::ptrdiff_t>(j)]) * f[j];
    out[i] = static_cast<double>(s);
  }
  return out;
}

std::vector<double> convolve_offsets_fft(std::span<const double> f, std::span<const double> kernel) {
  check_sizes(f, kernel);
  const std::size_t n = f.size();
  std::size_t m = 1;
  while (m < 3 * n) m *= 2;
  const std::size_t half = m / 2 + 1;

  auto a = fftw_buffer<double>(m), b = fftw_buffer<double>(m);
  auto fa = fftw_buffer<fftw_complex>(half), fb = fftw_buffer<fftw_complex>(half);
  // ESTIMATE keeps plan choice, and therefore rounding, independent of timing.
  fftw_plan pa = fftw_plan_dft_r2c_1d(static_cast<int>(m), a.get(), fa.get(), FFTW_ESTIMATE);
  fftw_plan pb = fftw_plan_dft_r2c_1d(static_cast<int>(m), b.get(), fb.get(), FFTW_ESTIMATE);
  fftw_plan back = fftw_plan_dft_c2r_1d(static_cast<int>(m), fa.get(), a.get(), FFTW_ESTIMATE);

  std::fill(a.get(), a.get() + m, 0.0);
  std::fill(b.get(), b.get() + m, 0.0);
  std::copy(f.begin(), f.end(), a.get());
  std::copy(kernel.begin(), kernel.end(), b.get());
  fftw_execute(pa);
  fftw_execute(pb);
  for (std::size_t k = 0; k < half; ++k) {
    const std::complex<double> x(fa[k][0], fa[k][1]), y(fb[k][0], fb[k][1]);
    const auto z = x * y;
    fa[k][0] = z.real();
    fa[k][1] = z.imag();
  }
  fftw_execute(back);
  fftw_destroy_plan(pa);
  fftw_destroy_plan(pb);
  fftw_destroy_plan(back);

  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i + n - 1] * scale;
  return out;
}

std::vector<double> convolve_offsets(std::span<const double> f, std::span<const double> kernel) {
  return f.size() <= kDirectLimit ? convolve_offsets_direct(f, kernel) : convolve_offsets_fft(f, kernel);
}

}  // namespace sharpwt
