#pragma once

#include <png.h>

#include <array>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "texlbp/image.hpp"
#include "texlbp/mask.hpp"

namespace texlbp {

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline bool is_png(const std::vector<std::uint8_t>& bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

// Binary PPM (P6), maxval 255.
inline RgbImage decode_ppm(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  std::size_t pos = 2;
  auto next_token = [&]() -> long {
    for (;;) {
      while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw ImageIoError("unsupported format: bad PPM header in " + name);
    }
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos++] - '0');
      if (v > (1L << 24)) throw ImageIoError("unsupported format: PPM dimension too large");
    }
    return v;
  };
  const long w = next_token();
  const long h = next_token();
  const long maxval = next_token();
  if (w == 0 || h == 0) throw ImageIoError("zero-dimension image: " + name);
  if (maxval != 255) throw ImageIoError("unsupported format: PPM maxval must be 255");
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw ImageIoError("unsupported format: bad PPM header in " + name);
  }
  ++pos;
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() - pos < 3 * n) throw ImageIoError("truncated PPM data in " + name);
  RgbImage img(static_cast<int>(w), static_cast<int>(h));
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) img.plane(c).data()[i] = bytes[pos + 3 * i + static_cast<std::size_t>(c)];
  }
  return img;
}

struct PngReadState {
  const std::vector<std::uint8_t>* bytes;
  std::size_t pos;
};

inline void png_read_from_memory(png_structp png, png_bytep out, png_size_t len) {
  auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (st->bytes->size() - st->pos < len) png_error(png, "truncated PNG");
  std::copy_n(st->bytes->data() + st->pos, len, out);
  st->pos += len;
}

// 8-bit PNG of any colour type; gray replicates into R, G, B and alpha is
// dropped without compositing.
inline RgbImage decode_png(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw ImageIoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw ImageIoError("libpng initialisation failed");
  }
  PngReadState state{&bytes, 0};
  std::string error;
  RgbImage img;
  std::vector<std::uint8_t> buffer;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError("unsupported format: corrupt PNG " + name);
  }
  png_set_read_fn(png, &state, png_read_from_memory);
  png_read_info(png, info);
  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int type = png_get_color_type(png, info);
  if (w == 0 || h == 0) error = "zero-dimension image: " + name;
  else if (depth == 16) error = "unsupported format: 16-bit PNG " + name;
  if (!error.empty()) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError(error);
  }
  if (type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (type == PNG_COLOR_TYPE_GRAY || type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (type & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  if (stride != static_cast<std::size_t>(w) * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError("unsupported format: unexpected PNG layout " + name);
  }
  buffer.resize(stride * h);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = buffer.data() + y * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  img = RgbImage(static_cast<int>(w), static_cast<int>(h));
  const std::size_t n = static_cast<std::size_t>(w) * h;
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) img.plane(c).data()[i] = buffer[3 * i + static_cast<std::size_t>(c)];
  }
  return img;
}

inline void write_bytes(const std::filesystem::path& path, const std::string& header,
                        const std::vector<std::uint8_t>& payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError("cannot write " + path.string());
  out << header;
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) throw ImageIoError("write failed: " + path.string());
}

inline std::vector<std::uint8_t> interleave(const RgbImage& image) {
  const std::size_t n = static_cast<std::size_t>(image.width()) * image.height();
  std::vector<std::uint8_t> px(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) px[3 * i + static_cast<std::size_t>(c)] = image.plane(c).data()[i];
  }
  return px;
}

}  // namespace detail

// PNG or binary PPM (P6, maxval 255), detected from the file signature.
inline RgbImage load_image(const std::filesystem::path& path) {
  const auto bytes = detail::read_file(path);
  if (detail::is_png(bytes)) return detail::decode_png(bytes, path.string());
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
    return detail::decode_ppm(bytes, path.string());
  }
  throw ImageIoError("unsupported format: " + path.string());
}

inline void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
  detail::write_bytes(path,
                      "P6\n" + std::to_string(image.width()) + " " +
                          std::to_string(image.height()) + "\n255\n",
                      detail::interleave(image));
}

inline void write_pgm(const std::filesystem::path& path, const GrayPlane& plane) {
  detail::write_bytes(path,
                      "P5\n" + std::to_string(plane.width()) + " " +
                          std::to_string(plane.height()) + "\n255\n",
                      plane.data());
}

// 255 = selected, 0 = not selected.
inline void write_pgm(const std::filesystem::path& path, const SignificanceMask& mask) {
  GrayPlane p(mask.width, mask.height);
  for (std::size_t i = 0; i < mask.selected.size(); ++i) p.data()[i] = mask.selected[i] ? 255 : 0;
  write_pgm(path, p);
}

inline void write_png(const std::filesystem::path& path, const RgbImage& image) {
  png_image desc{};
  desc.version = PNG_IMAGE_VERSION;
  desc.width = static_cast<png_uint_32>(image.width());
  desc.height = static_cast<png_uint_32>(image.height());
  desc.format = PNG_FORMAT_RGB;
  const auto px = detail::interleave(image);
  if (!png_image_write_to_file(&desc, path.string().c_str(), 0, px.data(), 0, nullptr)) {
    const std::string msg = desc.message;
    png_image_free(&desc);
    throw ImageIoError("PNG write failed for " + path.string() + ": " + msg);
  }
}

}  // namespace texlbp
