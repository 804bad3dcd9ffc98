#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rufst/grid.hpp"

namespace rufst {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// NPY v1.0, little-endian, C-order. Readers accept '<f8' and '<c16' payloads
// with 1-, 2- or 3-dimensional shapes.
void npy_write_real(const std::filesystem::path& path, const std::vector<std::int64_t>& shape,
                    const std::vector<double>& data);
void npy_write_complex(const std::filesystem::path& path, const std::vector<std::int64_t>& shape,
                       const std::vector<cplx>& data);

struct NpyArray {
  std::vector<std::int64_t> shape;
  bool is_complex = false;
  std::vector<double> real_data;  // filled when !is_complex
  std::vector<cplx> complex_data; // filled when is_complex
};

NpyArray npy_read(const std::filesystem::path& path);

// Binary PGM (P5), 8-bit.
void pgm_write(const std::filesystem::path& path, const RealArray& image);  // values in [0,1]
RealArray pgm_read(const std::filesystem::path& path);                      // scaled to [0,1]

/// Loads a space-domain grid from .npy (f8 or c16) or .pgm (scaled to [0,1]).
GridArray load_grid(const std::filesystem::path& path);

}  // namespace rufst
