#pragma once

#include <string>
#include <string_view>

#include "rotoblur/gaussian_blur.hpp"

namespace rotoblur {

/// Decodes binary PGM (P5, 1 channel) or PPM (P6, 3 channels), maxval 255.
ImageBuffer decode_pnm(std::string_view bytes);

/// Encodes as P5 or P6 depending on channel count. Samples are clamped to
/// [0, 1] and quantized with round-half-away-from-zero.
std::string encode_pnm(const ImageBuffer& img);

ImageBuffer read_pnm(const std::string& path);
void write_pnm(const std::string& path, const ImageBuffer& img);

}  // namespace rotoblur
