#include "rotoblur/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <vector>

#include "rotoblur/error.hpp"

namespace rotoblur {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int read_int() {
    skip_space_and_comments();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) throw Error(ErrorCode::kImageFormat, "header value too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw Error(ErrorCode::kImageFormat, "expected integer in header");
    return static_cast<int>(value);
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

ImageBuffer decode_pnm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw Error(ErrorCode::kImageFormat, "expected P5 or P6 magic");
  }
  const int channels = bytes[1] == '5' ? 1 : 3;
  HeaderReader reader(bytes);
  reader.advance(2);
  const int width = reader.read_int();
  const int height = reader.read_int();
  const int maxval = reader.read_int();
  if (maxval != 255) throw Error(ErrorCode::kImageFormat, "only maxval 255 is supported");
  if (width == 0 || height == 0) throw Error(ErrorCode::kEmptyImage, "image has no pixels");
  if (reader.pos() >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[reader.pos()]))) {
    throw Error(ErrorCode::kImageFormat, "missing whitespace after maxval");
  }
  reader.advance(1);

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                            static_cast<std::size_t>(channels);
  if (bytes.size() - reader.pos() < count) {
    throw Error(ErrorCode::kImageFormat, "truncated pixel data");
  }
  std::vector<double> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = static_cast<unsigned char>(bytes[reader.pos() + i]) / 255.0;
  }
  return ImageBuffer(width, height, channels, std::move(data));
}

std::string encode_pnm(const ImageBuffer& img) {
  if (img.empty()) throw Error(ErrorCode::kEmptyImage, "image has no pixels");
  std::string out = img.channels() == 1 ? "P5\n" : "P6\n";
  out += std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  out.reserve(out.size() + img.data().size());
  for (double v : img.data()) {
    const long q = std::lround(std::clamp(v, 0.0, 1.0) * 255.0);
    out.push_back(static_cast<char>(static_cast<unsigned char>(q)));
  }
  return out;
}

ImageBuffer read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return decode_pnm(bytes);
}

void write_pnm(const std::string& path, const ImageBuffer& img) {
  const std::string bytes = encode_pnm(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace rotoblur
