#include <fstream>

#include "rufst/io.hpp"

namespace rufst {

void pgm_write(const std::filesystem::path& path, const RealArray& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("pgm_write: cannot open " + path.string());
  out << "P5\n" << image.n2 << " " << image.n1 << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(image.n2));
  for (int i1 = 0; i1 < image.n1; ++i1) {
    for (int i2 = 0; i2 < image.n2; ++i2) {
      double v = image.at(i1, i2);
      v = std::min(1.0, std::max(0.0, v));
      row[static_cast<std::size_t>(i2)] = static_cast<unsigned char>(v * 255.0 + 0.5);
    }
    out.write(reinterpret_cast<const char*>(row.data()), image.n2);
  }
  if (!out) throw IoError("pgm_write: write failed for " + path.string());
}

namespace {

int read_pnm_token(std::istream& in) {
  // skips whitespace and '#' comment lines
  while (in) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = -1;
  in >> value;
  return value;
}

}  // namespace

RealArray pgm_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("pgm_read: cannot open " + path.string());
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') {
    throw IoError("pgm_read: " + path.string() + " is not a binary PGM (P5) file");
  }
  const int width = read_pnm_token(in);
  const int height = read_pnm_token(in);
  const int maxval = read_pnm_token(in);
  if (width <= 0 || height <= 0) throw IoError("pgm_read: bad dimensions");
  if (maxval != 255) throw IoError("pgm_read: only 8-bit PGM (maxval 255) is supported");
  in.get();  // single whitespace after maxval

  RealArray img(height, width);
  std::vector<unsigned char> row(static_cast<std::size_t>(width));
  for (int i1 = 0; i1 < height; ++i1) {
    in.read(reinterpret_cast<char*>(row.data()), width);
    if (!in) throw IoError("pgm_read: truncated pixel data");
    for (int i2 = 0; i2 < width; ++i2) {
      img.at(i1, i2) = static_cast<double>(row[static_cast<std::size_t>(i2)]) / 255.0;
    }
  }
  return img;
}

}  // namespace rufst
