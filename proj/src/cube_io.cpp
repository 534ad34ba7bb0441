#include "sci/cube_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sci {

namespace {

constexpr std::size_t kHeaderBytes = 32;

void write_le32(std::ostream& out, std::uint32_t bits) {
  char b[4] = {static_cast<char>(bits & 0xff), static_cast<char>((bits >> 8) & 0xff),
               static_cast<char>((bits >> 16) & 0xff), static_cast<char>((bits >> 24) & 0xff)};
  out.write(b, 4);
}

void write_le64(std::ostream& out, std::uint64_t bits) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(b, 8);
}

std::uint32_t read_le32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
         (std::uint32_t(b[3]) << 24);
}

std::uint64_t read_le64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t(b[i]) << (8 * i);
  return bits;
}

void save_values(const std::vector<double>& values, int nx, int ny, int nb,
                 const std::string& path, CubeDType dtype) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");

  char header[kHeaderBytes];
  const char* tag = dtype == CubeDType::f32 ? "f32" : "f64";
  int len = std::snprintf(header, sizeof(header), "SCICUBE %d %d %d %s", nx, ny, nb, tag);
  if (len < 0 || len > int(kHeaderBytes) - 2)
    throw IoError("cube dimensions too large for SCICUBE header");
  std::memset(header + len, ' ', kHeaderBytes - 1 - len);
  header[kHeaderBytes - 1] = '\n';
  out.write(header, kHeaderBytes);

  if (dtype == CubeDType::f32) {
    for (double v : values) {
      float f = static_cast<float>(v);
      std::uint32_t bits;
      std::memcpy(&bits, &f, 4);
      write_le32(out, bits);
    }
  } else {
    for (double v : values) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, 8);
      write_le64(out, bits);
    }
  }
  if (!out) throw IoError("write failed for " + path);
}

struct RawCube {
  int nx, ny, nb;
  std::vector<double> values;
};

RawCube load_values(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);

  char header[kHeaderBytes];
  in.read(header, kHeaderBytes);
  if (!in || header[kHeaderBytes - 1] != '\n')
    throw IoError(path + ": malformed SCICUBE header");

  std::istringstream hs(std::string(header, kHeaderBytes - 1));
  std::string magic, tag;
  long nx = 0, ny = 0, nb = 0;
  hs >> magic >> nx >> ny >> nb >> tag;
  if (magic != "SCICUBE" || nx < 1 || ny < 1 || nb < 1)
    throw IoError(path + ": malformed SCICUBE header");
  if (tag != "f32" && tag != "f64")
    throw IoError(path + ": unknown dtype '" + tag + "'");

  RawCube raw{static_cast<int>(nx), static_cast<int>(ny), static_cast<int>(nb), {}};
  const std::size_t count = std::size_t(nx) * ny * nb;
  raw.values.resize(count);
  if (tag == "f32") {
    for (std::size_t i = 0; i < count; ++i) {
      std::uint32_t bits = read_le32(in);
      float f;
      std::memcpy(&f, &bits, 4);
      raw.values[i] = f;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t bits = read_le64(in);
      double d;
      std::memcpy(&d, &bits, 8);
      raw.values[i] = d;
    }
  }
  if (!in) throw IoError(path + ": payload shorter than header dimensions");
  char extra;
  if (in.read(&extra, 1)) throw IoError(path + ": payload longer than header dimensions");
  for (double v : raw.values)
    if (!std::isfinite(v)) throw IoError(path + ": non-finite values in payload");
  return raw;
}

}  // namespace

void save_cube(const FrameCube& cube, const std::string& path, CubeDType dtype) {
  validate_cube(cube);
  save_values(cube.values, cube.nx, cube.ny, cube.nb, path, dtype);
}

FrameCube load_cube(const std::string& path) {
  RawCube raw = load_values(path);
  return devectorize(raw.values, raw.nx, raw.ny, raw.nb);
}

void save_measurement(const Measurement& meas, const std::string& path, CubeDType dtype) {
  save_values(meas.values, meas.nx, meas.ny, 1, path, dtype);
}

Measurement load_measurement(const std::string& path) {
  RawCube raw = load_values(path);
  if (raw.nb != 1) throw IoError(path + ": measurement file must have B = 1");
  Measurement meas(raw.nx, raw.ny);
  meas.values = std::move(raw.values);
  return meas;
}

namespace {

std::vector<std::uint8_t> frame_to_8bit(const FrameCube& cube, int frame) {
  if (frame < 0 || frame >= cube.nb) throw std::invalid_argument("frame index out of range");
  const double scale = cube.peak > 0 ? 255.0 / cube.peak : 1.0;
  std::vector<std::uint8_t> bytes(cube.frame_size());
  for (int i = 0; i < cube.nx; ++i)
    for (int j = 0; j < cube.ny; ++j) {
      double v = std::lround(cube.at(i, j, frame) * scale);
      bytes[std::size_t(i) * cube.ny + j] =
          static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
    }
  return bytes;
}

struct Image {
  int rows = 0, cols = 0;
  int maxval = 255;
  std::vector<double> pixels;
};

Image load_png(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw IoError("cannot open " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw IoError("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw IoError(path + ": PNG decode error");
  }

  png_init_io(png, fp);
  png_read_info(png, info);
  const int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw IoError(path + ": only grayscale PNG is supported");
  }
  if (depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
    depth = 8;
  }
  png_read_update_info(png, info);

  Image img;
  img.rows = static_cast<int>(png_get_image_height(png, info));
  img.cols = static_cast<int>(png_get_image_width(png, info));
  img.maxval = depth == 16 ? 65535 : 255;
  img.pixels.resize(std::size_t(img.rows) * img.cols);

  std::vector<std::uint8_t> row(png_get_rowbytes(png, info));
  for (int i = 0; i < img.rows; ++i) {
    png_read_row(png, row.data(), nullptr);
    for (int j = 0; j < img.cols; ++j) {
      // PNG 16-bit samples are big-endian
      double v = depth == 16 ? double((row[2 * j] << 8) | row[2 * j + 1]) : double(row[j]);
      img.pixels[std::size_t(i) * img.cols + j] = v;
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return img;
}

Image load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw IoError(path + ": expected binary PGM (P5)");

  auto next_int = [&in, &path]() {
    // skip whitespace and '#' comment lines
    int c;
    while ((c = in.peek()) != EOF) {
      if (c == '#') {
        std::string line;
        std::getline(in, line);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    long v = -1;
    in >> v;
    if (!in || v < 0) throw IoError(path + ": malformed PGM header");
    return v;
  };

  Image img;
  img.cols = static_cast<int>(next_int());
  img.rows = static_cast<int>(next_int());
  img.maxval = static_cast<int>(next_int());
  if (img.maxval < 1 || img.maxval > 65535)
    throw IoError(path + ": bad PGM maxval");
  in.get();  // single whitespace after maxval

  img.pixels.resize(std::size_t(img.rows) * img.cols);
  const bool wide = img.maxval > 255;
  std::vector<std::uint8_t> raw(img.pixels.size() * (wide ? 2 : 1));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!in) throw IoError(path + ": truncated PGM payload");
  for (std::size_t p = 0; p < img.pixels.size(); ++p)
    img.pixels[p] = wide ? double((raw[2 * p] << 8) | raw[2 * p + 1]) : double(raw[p]);
  return img;
}

}  // namespace

void save_frame_png(const FrameCube& cube, int frame, const std::string& path) {
  std::vector<std::uint8_t> bytes = frame_to_8bit(cube, frame);

  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw IoError("cannot open " + path + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw IoError("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw IoError(path + ": PNG encode error");
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, cube.ny, cube.nx, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int i = 0; i < cube.nx; ++i)
    png_write_row(png, bytes.data() + std::size_t(i) * cube.ny);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

void save_frame_pgm(const FrameCube& cube, int frame, const std::string& path) {
  std::vector<std::uint8_t> bytes = frame_to_8bit(cube, frame);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "P5\n" << cube.ny << " " << cube.nx << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path);
}

FrameCube load_image_sequence(const std::vector<std::string>& paths) {
  if (paths.empty()) throw std::invalid_argument("empty image sequence");

  FrameCube cube;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    std::ifstream probe(paths[k], std::ios::binary);
    if (!probe) throw IoError("cannot open " + paths[k]);
    char m0 = 0, m1 = 0;
    probe.get(m0).get(m1);
    probe.close();

    Image img;
    if (m0 == 'P' && m1 == '5')
      img = load_pgm(paths[k]);
    else
      img = load_png(paths[k]);

    if (k == 0) {
      cube = FrameCube(img.rows, img.cols, static_cast<int>(paths.size()),
                       static_cast<double>(img.maxval));
    } else if (img.rows != cube.nx || img.cols != cube.ny) {
      throw IoError(paths[k] + ": frame size differs from first frame");
    }
    std::copy(img.pixels.begin(), img.pixels.end(),
              cube.values.begin() + static_cast<std::ptrdiff_t>(k * cube.frame_size()));
  }
  return cube;
}

}  // namespace sci
