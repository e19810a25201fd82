#include "cma/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cma/errors.hpp"

namespace cma {
namespace {

constexpr char kMagic[8] = {'C', 'M', 'A', 'F', 'I', 'E', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    std::memcpy(&v, bytes, sizeof(T));
  }
  return v;
}

template <class T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw Error(ErrorCode::IoError, "truncated field file");
  return to_little(v);
}

}  // namespace

void write_field_binary(const std::filesystem::path& path, const ScalarField& f,
                        const std::string& name) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().n()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().m()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
  out.write(name.data(), static_cast<std::streamsize>(name.size()));
  for (double v : f.values()) put<double>(out, v);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

NamedField read_field_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw Error(ErrorCode::IoError, "bad magic in " + path.string());
  if (get<std::uint32_t>(in) != kVersion) throw Error(ErrorCode::IoError, "unsupported version");
  const int n = static_cast<int>(get<std::uint32_t>(in));
  const int m = static_cast<int>(get<std::uint32_t>(in));
  const std::uint32_t len = get<std::uint32_t>(in);
  std::string name(len, '\0');
  in.read(name.data(), len);
  GridPtr grid = make_grid(n, m);
  std::vector<double> values(grid->size());
  for (double& v : values) v = get<double>(in);
  return {std::move(name), ScalarField(grid, std::move(values))};
}

void write_field_text(const std::filesystem::path& path, const ScalarField& f,
                      const std::string& name) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::fprintf(out, "# cma-field 1\n# n %d m %d name %s\n", f.grid().n(), f.grid().m(), name.c_str());
  for (double v : f.values()) std::fprintf(out, "%.17g\n", v);
  std::fclose(out);
}

NamedField read_field_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "# cma-field 1") throw Error(ErrorCode::IoError, "bad text field header");
  std::getline(in, line);
  std::istringstream header(line);
  std::string hash, kn, km, kname, name;
  int n = 0, m = 0;
  header >> hash >> kn >> n >> km >> m >> kname;
  std::getline(header >> std::ws, name);
  if (hash != "#" || kn != "n" || km != "m" || kname != "name")
    throw Error(ErrorCode::IoError, "bad text field header");
  GridPtr grid = make_grid(n, m);
  std::vector<double> values(grid->size());
  for (double& v : values)
    if (!(in >> v)) throw Error(ErrorCode::IoError, "truncated text field");
  return {std::move(name), ScalarField(grid, std::move(values))};
}

}  // namespace cma
