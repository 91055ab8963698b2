#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rotoblur {

/// Normalized, symmetric 1D Gaussian taps; weights.size() == 2 * radius + 1.
struct Kernel1D {
  int radius = 0;
  std::vector<double> weights{1.0};

  double at(int offset) const { return weights[static_cast<std::size_t>(offset + radius)]; }
};

/// Row-major interleaved image with values in [0, 1].
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(int width, int height, int channels, double fill = 0.0);
  ImageBuffer(int width, int height, int channels, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }

  double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<double> data_;
};

inline constexpr double kDefaultTruncation = 3.0;
/// Sigmas are specified against this many output rows.
inline constexpr int kReferenceRows = 1080;

/// radius = ceil(truncation * sigma); sigma below 1e-6 gives the identity.
Kernel1D make_kernel(double sigma_px, double truncation = kDefaultTruncation);

/// Separable horizontal-then-vertical convolution with clamp-to-edge borders.
ImageBuffer blur(const ImageBuffer& img, const Kernel1D& kernel);

/// Direct convolution with the full 2D kernel. O(r^2) per pixel; test oracle.
ImageBuffer blur_reference_2d(const ImageBuffer& img, double sigma_px,
                              double truncation = kDefaultTruncation);

/// Linear rescale of a sigma given at kReferenceRows to `rows`.
double scale_sigma_to_height(double sigma_ref_px, int rows);

}  // namespace rotoblur
