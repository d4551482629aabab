#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <memory>

#include "edgemc/error.hpp"
#include "edgemc/volume.hpp"

namespace edgemc {

namespace fs = std::filesystem;
using nlohmann::json;

std::size_t value_width(ValueKind kind) {
  switch (kind) {
    case ValueKind::U8: return 1;
    case ValueKind::U16: return 2;
    case ValueKind::F32: return 4;
  }
  return 0;
}

std::string to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::U8: return "u8";
    case ValueKind::U16: return "u16";
    case ValueKind::F32: return "f32";
  }
  return "?";
}

ValueKind parse_value_kind(const std::string& s) {
  if (s == "u8") return ValueKind::U8;
  if (s == "u16") return ValueKind::U16;
  if (s == "f32") return ValueKind::F32;
  throw DataError("unknown value type '" + s + "' (expected u8, u16 or f32)");
}

std::string to_string(Endian e) { return e == Endian::Little ? "little" : "big"; }

Endian parse_endian(const std::string& s) {
  if (s == "little") return Endian::Little;
  if (s == "big") return Endian::Big;
  throw DataError("unknown endianness '" + s + "'");
}

namespace {

constexpr bool kHostLittle = std::endian::native == std::endian::little;

std::vector<char> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw DataError("failed reading '" + path.string() + "'");
  return bytes;
}

// Decodes `count` values starting at `src` and appends them to `out`.
void decode(const char* src, std::size_t count, ValueKind kind, Endian endian, std::vector<float>& out) {
  const bool swap = (endian == Endian::Little) != kHostLittle;
  const std::size_t w = value_width(kind);
  for (std::size_t n = 0; n < count; ++n) {
    unsigned char b[4];
    std::memcpy(b, src + n * w, w);
    if (swap) std::reverse(b, b + w);
    switch (kind) {
      case ValueKind::U8: out.push_back(static_cast<float>(b[0])); break;
      case ValueKind::U16: {
        std::uint16_t v;
        std::memcpy(&v, b, 2);
        out.push_back(static_cast<float>(v));
        break;
      }
      case ValueKind::F32: {
        float v;
        std::memcpy(&v, b, 4);
        out.push_back(v);
        break;
      }
    }
  }
}

void encode(float value, ValueKind kind, Endian endian, std::string& out) {
  unsigned char b[4];
  std::size_t w = value_width(kind);
  switch (kind) {
    case ValueKind::U8: {
      if (!(value >= 0.0f && value <= 255.0f && std::floor(value) == value)) {
        throw DataError("value " + std::to_string(value) + " not representable as u8");
      }
      b[0] = static_cast<unsigned char>(value);
      break;
    }
    case ValueKind::U16: {
      if (!(value >= 0.0f && value <= 65535.0f && std::floor(value) == value)) {
        throw DataError("value " + std::to_string(value) + " not representable as u16");
      }
      const auto v = static_cast<std::uint16_t>(value);
      std::memcpy(b, &v, 2);
      break;
    }
    case ValueKind::F32: std::memcpy(b, &value, 4); break;
  }
  if ((endian == Endian::Little) != kHostLittle) std::reverse(b, b + w);
  out.append(reinterpret_cast<const char*>(b), w);
}

Dims dims_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw DataError("descriptor 'dims' must be [nx, ny, nz]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

}  // namespace

Volume load_raw(const fs::path& path, Dims dims, ValueKind kind, Endian endian, Spacing spacing) {
  if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0) throw DataError("raw dims must be positive");
  const std::vector<char> bytes = read_bytes(path);
  const std::size_t expected = dims.count() * value_width(kind);
  if (bytes.size() != expected) {
    throw DataError("size mismatch for '" + path.string() + "': " + std::to_string(bytes.size()) + " bytes, expected " +
                    std::to_string(expected));
  }
  std::vector<float> values;
  values.reserve(dims.count());
  decode(bytes.data(), dims.count(), kind, endian, values);
  return Volume(dims, std::move(values), spacing);
}

void write_raw(const Volume& v, const fs::path& path, ValueKind kind, Endian endian) {
  std::string buffer;
  buffer.reserve(v.values().size() * value_width(kind));
  for (float value : v.values()) encode(value, kind, endian, buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

RawDescriptor read_descriptor(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open descriptor '" + path.string() + "'");
  json j;
  try {
    in >> j;
    RawDescriptor d;
    d.data = j.at("data").get<std::string>();
    d.dims = dims_from_json(j.at("dims"));
    d.kind = parse_value_kind(j.value("type", std::string("u8")));
    d.endian = parse_endian(j.value("endian", std::string("little")));
    if (j.contains("spacing")) {
      const auto& s = j["spacing"];
      if (!s.is_array() || s.size() != 3) throw DataError("descriptor 'spacing' must be [sx, sy, sz]");
      d.spacing = {s[0].get<double>(), s[1].get<double>(), s[2].get<double>()};
    }
    return d;
  } catch (const json::exception& e) {
    throw DataError("malformed descriptor '" + path.string() + "': " + e.what());
  }
}

void write_descriptor(const RawDescriptor& d, const fs::path& path) {
  json j;
  j["data"] = d.data.string();
  j["dims"] = {d.dims.nx, d.dims.ny, d.dims.nz};
  j["type"] = to_string(d.kind);
  j["endian"] = to_string(d.endian);
  j["spacing"] = {d.spacing.sx, d.spacing.sy, d.spacing.sz};
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write descriptor '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

Volume load_described(const fs::path& descriptor_path) {
  const RawDescriptor d = read_descriptor(descriptor_path);
  const fs::path data = d.data.is_absolute() ? d.data : descriptor_path.parent_path() / d.data;
  return load_raw(data, d.dims, d.kind, d.endian, d.spacing);
}

fs::path save_described(const Volume& v, const fs::path& stem, ValueKind kind, Endian endian) {
  fs::path raw = stem;
  raw += ".raw";
  fs::path desc = stem;
  desc += ".json";
  write_raw(v, raw, kind, endian);
  write_descriptor({raw.filename(), v.dims(), kind, endian, v.spacing()}, desc);
  return desc;
}

namespace {

struct PngImage {
  int width = 0;
  int height = 0;
  std::vector<float> values;
};

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

// libpng prints to stderr by default; keep the text for the exception instead.
thread_local std::string png_message;

[[noreturn]] void png_quiet_error(png_structp png, png_const_charp msg) {
  png_message = msg;
  png_longjmp(png, 1);
}

void png_quiet_warning(png_structp, png_const_charp) {}

PngImage read_png_gray(const fs::path& path) {
  std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.string().c_str(), "rb"));
  if (!file) throw DataError("cannot open '" + path.string() + "'");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_quiet_error, png_quiet_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("libpng initialisation failed");
  }
  PngImage image;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("invalid PNG '" + path.string() + "': " + png_message);
  }
  png_init_io(png, file.get());
  png_read_info(png, info);
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY || (depth != 8 && depth != 16)) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("'" + path.string() + "' is not an 8/16-bit grayscale PNG");
  }
  if (depth == 16 && kHostLittle) png_set_swap(png);
  image.width = static_cast<int>(png_get_image_width(png, info));
  image.height = static_cast<int>(png_get_image_height(png, info));
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  std::vector<unsigned char> row(row_bytes);
  image.values.reserve(static_cast<std::size_t>(image.width) * image.height);
  for (int y = 0; y < image.height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (int x = 0; x < image.width; ++x) {
      if (depth == 8) {
        image.values.push_back(static_cast<float>(row[x]));
      } else {
        std::uint16_t v;
        std::memcpy(&v, row.data() + 2 * x, 2);
        image.values.push_back(static_cast<float>(v));
      }
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

}  // namespace

Volume load_slices(std::span<const fs::path> paths, Spacing spacing) {
  if (paths.size() < 2) throw DataError("need at least 2 slices, got " + std::to_string(paths.size()));
  std::vector<float> values;
  int width = -1;
  int height = -1;
  for (const auto& p : paths) {
    PngImage img = read_png_gray(p);
    if (width < 0) {
      width = img.width;
      height = img.height;
    } else if (img.width != width || img.height != height) {
      throw DataError("slice '" + p.string() + "' is " + std::to_string(img.width) + "x" +
                      std::to_string(img.height) + ", expected " + std::to_string(width) + "x" +
                      std::to_string(height));
    }
    values.insert(values.end(), img.values.begin(), img.values.end());
  }
  return Volume({width, height, static_cast<int>(paths.size())}, std::move(values), spacing);
}

Volume load_raw_slices(std::span<const fs::path> paths, int width, int height, ValueKind kind, Endian endian,
                       Spacing spacing) {
  if (paths.size() < 2) throw DataError("need at least 2 slices, got " + std::to_string(paths.size()));
  const std::size_t plane = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<float> values;
  values.reserve(plane * paths.size());
  for (const auto& p : paths) {
    const std::vector<char> bytes = read_bytes(p);
    if (bytes.size() != plane * value_width(kind)) {
      throw DataError("slice '" + p.string() + "' has " + std::to_string(bytes.size()) + " bytes, expected " +
                      std::to_string(plane * value_width(kind)));
    }
    decode(bytes.data(), plane, kind, endian, values);
  }
  return Volume({width, height, static_cast<int>(paths.size())}, std::move(values), spacing);
}

void write_png_slice(const Volume& v, int z, const fs::path& path, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw DataError("PNG bit depth must be 8 or 16");
  std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.string().c_str(), "wb"));
  if (!file) throw DataError("cannot write '" + path.string() + "'");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_quiet_error, png_quiet_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw DataError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw DataError("failed writing PNG '" + path.string() + "': " + png_message);
  }
  const Dims d = v.dims();
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(d.nx), static_cast<png_uint_32>(d.ny), bit_depth,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16 && kHostLittle) png_set_swap(png);
  const int bytes = bit_depth / 8;
  std::vector<unsigned char> row(static_cast<std::size_t>(d.nx) * bytes);
  for (int y = 0; y < d.ny; ++y) {
    for (int x = 0; x < d.nx; ++x) {
      const float value = v.at(x, y, z);
      if (bit_depth == 8) {
        row[x] = static_cast<unsigned char>(std::clamp(value, 0.0f, 255.0f));
      } else {
        const auto s = static_cast<std::uint16_t>(std::clamp(value, 0.0f, 65535.0f));
        std::memcpy(row.data() + 2 * x, &s, 2);
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace edgemc
