#include "rotoblur/gaussian_blur.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rotoblur/error.hpp"

namespace rotoblur {

namespace {

constexpr double kIdentitySigma = 1e-6;

void check_sigma(double sigma_px) {
  if (!std::isfinite(sigma_px)) throw Error(ErrorCode::kNonFiniteSigma, "sigma is not finite");
  if (sigma_px < 0.0) throw Error(ErrorCode::kNegativeSigma, "sigma must be >= 0");
}

void check_image(const ImageBuffer& img) {
  if (img.empty()) throw Error(ErrorCode::kEmptyImage, "image has no pixels");
}

int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

void clamp_unit(ImageBuffer& img) {
  for (double& v : img.data()) v = std::clamp(v, 0.0, 1.0);
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, int channels, double fill)
    : width_(width),
      height_(height),
      channels_(channels),
      data_(static_cast<std::size_t>(std::max(width, 0)) * static_cast<std::size_t>(std::max(height, 0)) *
                static_cast<std::size_t>(std::max(channels, 0)),
            fill) {
  if (width < 0 || height < 0 || (channels != 1 && channels != 3)) {
    throw Error(ErrorCode::kImageFormat, "bad image dimensions or channel count");
  }
}

ImageBuffer::ImageBuffer(int width, int height, int channels, std::vector<double> data)
    : ImageBuffer(width, height, channels) {
  if (data.size() != data_.size()) {
    throw Error(ErrorCode::kImageFormat, "pixel data does not match dimensions");
  }
  data_ = std::move(data);
}

Kernel1D make_kernel(double sigma_px, double truncation) {
  check_sigma(sigma_px);
  if (!std::isfinite(truncation) || truncation <= 0.0) {
    throw Error(ErrorCode::kInvalidConfig, "truncation must be positive");
  }
  if (sigma_px < kIdentitySigma) return Kernel1D{};

  Kernel1D k;
  k.radius = static_cast<int>(std::ceil(truncation * sigma_px));
  k.weights.assign(static_cast<std::size_t>(2 * k.radius + 1), 0.0);
  const double denom = 2.0 * sigma_px * sigma_px;
  double sum = 0.0;
  for (int i = 0; i <= 2 * k.radius; ++i) {
    const double x = static_cast<double>(i - k.radius);
    k.weights[static_cast<std::size_t>(i)] = std::exp(-x * x / denom);
  }
  // Pairwise from the tails so both halves accumulate identically.
  for (int i = 0; i < k.radius; ++i) sum += 2.0 * k.weights[static_cast<std::size_t>(i)];
  sum += k.weights[static_cast<std::size_t>(k.radius)];
  for (double& w : k.weights) w /= sum;
  return k;
}

ImageBuffer blur(const ImageBuffer& img, const Kernel1D& kernel) {
  check_image(img);
  if (kernel.radius == 0) return img;

  const int w = img.width();
  const int h = img.height();
  const int ch = img.channels();
  const int r = kernel.radius;

  const auto row_len = static_cast<std::size_t>(w) * static_cast<std::size_t>(ch);
  const double* k = kernel.weights.data() + r;  // k[j] for j in [-r, r]

  ImageBuffer tmp(w, h, ch);
  for (int y = 0; y < h; ++y) {
    const double* in = img.data().data() + static_cast<std::size_t>(y) * row_len;
    double* o = tmp.data().data() + static_cast<std::size_t>(y) * row_len;
    for (int x = 0; x < w; ++x) {
      const bool interior = x - r >= 0 && x + r < w;
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        if (interior) {
          const double* p = in + static_cast<std::size_t>(x) * ch + c;
          for (int j = -r; j <= r; ++j) acc += k[j] * p[j * ch];
        } else {
          for (int j = -r; j <= r; ++j) acc += k[j] * in[static_cast<std::size_t>(clamp_index(x + j, w)) * ch + c];
        }
        o[static_cast<std::size_t>(x) * ch + c] = acc;
      }
    }
  }

  // Vertical pass accumulates whole rows; per-pixel summation order matches the
  // horizontal pass (j ascending).
  ImageBuffer out(w, h, ch);
  const std::span<const double> src = std::as_const(tmp).data();
  const std::span<double> dst = out.data();
  for (int y = 0; y < h; ++y) {
    double* o = dst.data() + static_cast<std::size_t>(y) * row_len;
    for (int j = -r; j <= r; ++j) {
      const double kj = k[j];
      const double* s = src.data() + static_cast<std::size_t>(clamp_index(y + j, h)) * row_len;
      for (std::size_t i = 0; i < row_len; ++i) o[i] += kj * s[i];
    }
  }
  clamp_unit(out);
  return out;
}

ImageBuffer blur_reference_2d(const ImageBuffer& img, double sigma_px, double truncation) {
  check_image(img);
  check_sigma(sigma_px);
  if (sigma_px < kIdentitySigma) return img;

  // Unnormalized 2D Gaussian normalized over its own support, not built from Kernel1D.
  const int r = static_cast<int>(std::ceil(truncation * sigma_px));
  const int side = 2 * r + 1;
  std::vector<double> k2(static_cast<std::size_t>(side * side));
  double sum = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double v = std::exp(-static_cast<double>(dx * dx + dy * dy) / (2.0 * sigma_px * sigma_px));
      k2[static_cast<std::size_t>((dy + r) * side + (dx + r))] = v;
      sum += v;
    }
  }
  for (double& v : k2) v /= sum;

  const int w = img.width();
  const int h = img.height();
  ImageBuffer out(w, h, img.channels());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        double acc = 0.0;
        for (int dy = -r; dy <= r; ++dy) {
          const int sy = clamp_index(y + dy, h);
          for (int dx = -r; dx <= r; ++dx) {
            acc += k2[static_cast<std::size_t>((dy + r) * side + (dx + r))] *
                   img.at(clamp_index(x + dx, w), sy, c);
          }
        }
        out.at(x, y, c) = acc;
      }
    }
  }
  clamp_unit(out);
  return out;
}

double scale_sigma_to_height(double sigma_ref_px, int rows) {
  check_sigma(sigma_ref_px);
  return sigma_ref_px * static_cast<double>(rows) / static_cast<double>(kReferenceRows);
}

}  // namespace rotoblur
