#pragma once

#include <filesystem>
#include <string>

#include "cma/fields.hpp"

namespace cma {

// Binary layout (all integers little-endian uint32, values little-endian
// IEEE-754 float64):
//
//   offset 0   8 bytes   magic "CMAFIELD"
//   offset 8   uint32    format version (1)
//   offset 12  uint32    n (complex dimension)
//   offset 16  uint32    m (points per real axis)
//   offset 20  uint32    L (name length in bytes)
//   offset 24  L bytes   field name, UTF-8, not terminated
//   then       m^{2n} float64 values, row-major over (x1, y1[, x2, y2]),
//              x1 slowest; sample (i1, j1, ...) sits at x1 = i1/m, y1 = j1/m.
//
// Text layout: two header lines followed by one value per line in %.17g:
//
//   # cma-field 1
//   # n <n> m <m> name <name>

struct NamedField {
  std::string name;
  ScalarField field;
};

void write_field_binary(const std::filesystem::path& path, const ScalarField& f,
                        const std::string& name);
NamedField read_field_binary(const std::filesystem::path& path);

void write_field_text(const std::filesystem::path& path, const ScalarField& f,
                      const std::string& name);
NamedField read_field_text(const std::filesystem::path& path);

}  // namespace cma
