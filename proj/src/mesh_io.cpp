#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "edgemc/error.hpp"
#include "edgemc/mesh.hpp"

namespace edgemc {

namespace fs = std::filesystem;

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void append_triple(std::string& out, const char* tag, Vec3 p) {
  out += tag;
  out += ' ';
  append_number(out, p.x);
  out += ' ';
  append_number(out, p.y);
  out += ' ';
  append_number(out, p.z);
  out += '\n';
}

double parse_double(std::string_view token, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw DataError("OBJ line " + std::to_string(line) + ": bad number '" + std::string(token) + "'");
  }
  return v;
}

long parse_index(std::string_view token, std::size_t line) {
  const auto slash = token.find('/');
  const std::string_view head = token.substr(0, slash);
  long v = 0;
  const auto res = std::from_chars(head.data(), head.data() + head.size(), v);
  if (res.ec != std::errc() || res.ptr != head.data() + head.size() || v == 0) {
    throw DataError("OBJ line " + std::to_string(line) + ": bad face index '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

void put_u32(std::string& out, std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
  out.append(reinterpret_cast<const char*>(&v), 4);
}

void put_f32(std::string& out, double d) {
  const auto f = static_cast<float>(d);
  std::uint32_t bits;
  std::memcpy(&bits, &f, 4);
  put_u32(out, bits);
}

}  // namespace

std::string to_obj(const TriangleMesh& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 48 + mesh.triangles.size() * 24);
  for (const Vec3& v : mesh.vertices) append_triple(out, "v", v);
  const bool with_normals = !mesh.normals.empty();
  for (const Vec3& n : mesh.normals) append_triple(out, "vn", n);
  for (const auto& tri : mesh.triangles) {
    out += 'f';
    for (auto idx : tri) {
      const std::string i = std::to_string(idx + 1);
      out += ' ';
      out += i;
      if (with_normals) {
        out += "//";
        out += i;
      }
    }
    out += '\n';
  }
  return out;
}

void write_obj(const TriangleMesh& mesh, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  const std::string text = to_obj(mesh);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

TriangleMesh parse_obj(const std::string& text) {
  TriangleMesh mesh;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    const std::string_view tag = tokens[0];
    if (tag == "v" || tag == "vn") {
      if (tokens.size() < 4) throw DataError("OBJ line " + std::to_string(line_no) + ": expected 3 coordinates");
      const Vec3 p{parse_double(tokens[1], line_no), parse_double(tokens[2], line_no),
                   parse_double(tokens[3], line_no)};
      (tag == "v" ? mesh.vertices : mesh.normals).push_back(p);
    } else if (tag == "f") {
      if (tokens.size() < 4) throw DataError("OBJ line " + std::to_string(line_no) + ": face needs 3 vertices");
      std::vector<std::uint32_t> poly;
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        long idx = parse_index(tokens[t], line_no);
        if (idx < 0) idx += static_cast<long>(mesh.vertices.size()) + 1;
        if (idx < 1 || static_cast<std::size_t>(idx) > mesh.vertices.size()) {
          throw DataError("OBJ line " + std::to_string(line_no) + ": vertex index out of range");
        }
        poly.push_back(static_cast<std::uint32_t>(idx - 1));
      }
      for (std::size_t t = 1; t + 1 < poly.size(); ++t) mesh.triangles.push_back({poly[0], poly[t], poly[t + 1]});
    } else if (tag == "vt" || tag == "o" || tag == "g" || tag == "s" || tag == "usemtl" || tag == "mtllib") {
      continue;
    } else {
      throw DataError("OBJ line " + std::to_string(line_no) + ": unsupported record '" + std::string(tag) + "'");
    }
  }
  if (!mesh.normals.empty() && mesh.normals.size() != mesh.vertices.size()) mesh.normals.clear();
  return mesh;
}

TriangleMesh read_obj(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_obj(buffer.str());
}

void write_stl_binary(const TriangleMesh& mesh, const fs::path& path) {
  std::string out(80, '\0');
  const char header[] = "edgemc binary STL";
  std::memcpy(out.data(), header, sizeof header - 1);
  put_u32(out, static_cast<std::uint32_t>(mesh.triangles.size()));
  for (const auto& tri : mesh.triangles) {
    const Vec3 a = mesh.vertices[tri[0]];
    const Vec3 b = mesh.vertices[tri[1]];
    const Vec3 c = mesh.vertices[tri[2]];
    const Vec3 n = normalized(cross(b - a, c - a));
    for (const Vec3& p : {n, a, b, c}) {
      put_f32(out, p.x);
      put_f32(out, p.y);
      put_f32(out, p.z);
    }
    out.append(2, '\0');
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot write '" + path.string() + "'");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw DataError("failed writing '" + path.string() + "'");
}

}  // namespace edgemc
