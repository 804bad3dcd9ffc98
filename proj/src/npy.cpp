#include <cstring>
#include <fstream>

#include "rufst/io.hpp"

namespace rufst {

namespace {

constexpr char kMagic[7] = "\x93NUMPY";

std::string shape_string(const std::vector<std::int64_t>& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    s += std::to_string(shape[i]);
    if (shape.size() == 1 || i + 1 < shape.size()) s += ",";
    if (i + 1 < shape.size()) s += " ";
  }
  s += ")";
  return s;
}

void write_header(std::ofstream& out, const std::string& descr,
                  const std::vector<std::int64_t>& shape) {
  std::string dict = "{'descr': '" + descr + "', 'fortran_order': False, 'shape': " +
                     shape_string(shape) + ", }";
  // total header (magic + version + len + dict + padding) must be a multiple
  // of 64, terminated by '\n'
  const std::size_t base = 6 + 2 + 2;
  std::size_t total = base + dict.size() + 1;
  const std::size_t padded = (total + 63) / 64 * 64;
  dict.append(padded - total, ' ');
  dict += '\n';
  out.write(kMagic, 6);
  const unsigned char version[2] = {1, 0};
  out.write(reinterpret_cast<const char*>(version), 2);
  const std::uint16_t hlen = static_cast<std::uint16_t>(dict.size());
  out.write(reinterpret_cast<const char*>(&hlen), 2);
  out.write(dict.data(), static_cast<std::streamsize>(dict.size()));
}

std::int64_t element_count(const std::vector<std::int64_t>& shape) {
  std::int64_t n = 1;
  for (std::int64_t s : shape) n *= s;
  return n;
}

}  // namespace

void npy_write_real(const std::filesystem::path& path, const std::vector<std::int64_t>& shape,
                    const std::vector<double>& data) {
  if (element_count(shape) != static_cast<std::int64_t>(data.size())) {
    throw IoError("npy_write: shape does not match data size");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("npy_write: cannot open " + path.string());
  write_header(out, "<f8", shape);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!out) throw IoError("npy_write: write failed for " + path.string());
}

void npy_write_complex(const std::filesystem::path& path, const std::vector<std::int64_t>& shape,
                       const std::vector<cplx>& data) {
  if (element_count(shape) != static_cast<std::int64_t>(data.size())) {
    throw IoError("npy_write: shape does not match data size");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("npy_write: cannot open " + path.string());
  write_header(out, "<c16", shape);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(cplx)));
  if (!out) throw IoError("npy_write: write failed for " + path.string());
}

namespace {

std::string dict_value(const std::string& dict, const std::string& key) {
  const std::size_t kpos = dict.find("'" + key + "'");
  if (kpos == std::string::npos) throw IoError("npy_read: header missing key " + key);
  std::size_t pos = dict.find(':', kpos);
  if (pos == std::string::npos) throw IoError("npy_read: malformed header");
  ++pos;
  while (pos < dict.size() && dict[pos] == ' ') ++pos;
  std::size_t end;
  if (dict[pos] == '\'') {
    end = dict.find('\'', pos + 1);
    return dict.substr(pos + 1, end - pos - 1);
  }
  if (dict[pos] == '(') {
    end = dict.find(')', pos);
    return dict.substr(pos, end - pos + 1);
  }
  end = dict.find_first_of(",}", pos);
  return dict.substr(pos, end - pos);
}

}  // namespace

NpyArray npy_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("npy_read: cannot open " + path.string());
  char magic[6];
  in.read(magic, 6);
  if (!in || std::memcmp(magic, kMagic, 6) != 0) {
    throw IoError("npy_read: " + path.string() + " is not an NPY file (bad magic)");
  }
  unsigned char version[2];
  in.read(reinterpret_cast<char*>(version), 2);
  if (!in || version[0] != 1) {
    throw IoError("npy_read: unsupported NPY version in " + path.string());
  }
  std::uint16_t hlen = 0;
  in.read(reinterpret_cast<char*>(&hlen), 2);
  std::string dict(hlen, '\0');
  in.read(dict.data(), hlen);
  if (!in) throw IoError("npy_read: truncated header in " + path.string());

  const std::string descr = dict_value(dict, "descr");
  const std::string order = dict_value(dict, "fortran_order");
  if (order.find("False") == std::string::npos) {
    throw IoError("npy_read: only C-order arrays are supported");
  }
  NpyArray arr;
  if (descr == "<c16") {
    arr.is_complex = true;
  } else if (descr != "<f8") {
    throw IoError("npy_read: unsupported dtype '" + descr + "' (need <f8 or <c16)");
  }

  std::string shape = dict_value(dict, "shape");
  std::size_t pos = 1;  // skip '('
  while (pos < shape.size()) {
    while (pos < shape.size() && (shape[pos] == ' ' || shape[pos] == ',')) ++pos;
    if (pos >= shape.size() || shape[pos] == ')') break;
    std::size_t used = 0;
    arr.shape.push_back(std::stoll(shape.substr(pos), &used));
    pos += used;
  }
  if (arr.shape.empty() || arr.shape.size() > 3) {
    throw IoError("npy_read: need a 1-, 2- or 3-dimensional array");
  }

  const std::int64_t n = element_count(arr.shape);
  if (arr.is_complex) {
    arr.complex_data.resize(static_cast<std::size_t>(n));
    in.read(reinterpret_cast<char*>(arr.complex_data.data()),
            static_cast<std::streamsize>(n * sizeof(cplx)));
  } else {
    arr.real_data.resize(static_cast<std::size_t>(n));
    in.read(reinterpret_cast<char*>(arr.real_data.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
  }
  if (!in) throw IoError("npy_read: truncated payload in " + path.string());
  return arr;
}

GridArray load_grid(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".pgm") {
    const RealArray img = pgm_read(path);
    GridArray out(img.n1, img.n2, Domain::Space);
    for (std::size_t i = 0; i < img.v.size(); ++i) out.v[i] = img.v[i];
    return out;
  }
  if (ext != ".npy") {
    throw IoError("load_grid: unsupported input extension '" + ext + "' (need .npy or .pgm)");
  }
  const NpyArray arr = npy_read(path);
  if (arr.shape.size() != 2) throw IoError("load_grid: need a 2-D array");
  GridArray out(static_cast<int>(arr.shape[0]), static_cast<int>(arr.shape[1]), Domain::Space);
  if (arr.is_complex) {
    out.v = arr.complex_data;
  } else {
    for (std::size_t i = 0; i < arr.real_data.size(); ++i) out.v[i] = arr.real_data[i];
  }
  return out;
}

}  // namespace rufst
