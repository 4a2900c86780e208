#include "sdlab/serialization.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sdlab/errors.hpp"

namespace sdlab {
namespace detail {

static_assert(std::endian::native == std::endian::little, "binary records assume a little-endian host");

void write_u32(std::ostream& os, std::uint32_t x) {
  char buf[4];
  std::memcpy(buf, &x, 4);
  os.write(buf, 4);
}

std::uint32_t read_u32(std::istream& is) {
  char buf[4];
  if (!is.read(buf, 4)) throw InvalidArgument("truncated binary record");
  std::uint32_t x;
  std::memcpy(&x, buf, 4);
  return x;
}

void write_f64(std::ostream& os, double x) {
  char buf[8];
  std::memcpy(buf, &x, 8);
  os.write(buf, 8);
}

double read_f64(std::istream& is) {
  char buf[8];
  if (!is.read(buf, 8)) throw InvalidArgument("truncated binary record");
  double x;
  std::memcpy(&x, buf, 8);
  return x;
}

}  // namespace detail

namespace {

constexpr char kMagic[4] = {'S', 'D', 'L', 'B'};
constexpr std::uint32_t kVersion = 1;

std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_impl(std::ostream& os, const TorusGrid& grid, const std::vector<Complex>& data,
                std::uint32_t kind, RecordFormat format) {
  if (format == RecordFormat::Binary) {
    os.write(kMagic, 4);
    detail::write_u32(os, kVersion);
    detail::write_u32(os, static_cast<std::uint32_t>(grid.dim()));
    detail::write_u32(os, static_cast<std::uint32_t>(grid.modes_per_axis()));
    detail::write_u32(os, kind);
    for (const auto& z : data) {
      detail::write_f64(os, z.real());
      detail::write_f64(os, z.imag());
    }
    return;
  }
  os << "n,M,kind\n"
     << grid.dim() << ',' << grid.modes_per_axis() << ',' << (kind == 0 ? "field" : "spectrum") << '\n'
     << "re,im\n";
  for (const auto& z : data) os << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
}

double parse_double(const std::string& token) {
  // std::from_chars for double is available in libstdc++ 11.
  double x = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), x);
  if (res.ec != std::errc()) throw InvalidArgument("malformed number in record: " + token);
  return x;
}

}  // namespace

void write_record(std::ostream& os, const Field& field, RecordFormat format) {
  write_impl(os, field.grid, field.values, 0, format);
}

void write_record(std::ostream& os, const Spectrum& spectrum, RecordFormat format) {
  write_impl(os, spectrum.grid, spectrum.coeffs, 1, format);
}

Record read_record(std::istream& is, RecordFormat format) {
  int n = 0;
  int m = 0;
  std::uint32_t kind = 0;
  std::vector<Complex> data;

  if (format == RecordFormat::Binary) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw InvalidArgument("bad record magic");
    if (detail::read_u32(is) != kVersion) throw InvalidArgument("unsupported record version");
    n = static_cast<int>(detail::read_u32(is));
    m = static_cast<int>(detail::read_u32(is));
    kind = detail::read_u32(is);
    TorusGrid grid(n, m);
    data.resize(grid.point_count());
    for (auto& z : data) {
      const double re = detail::read_f64(is);
      z = Complex(re, detail::read_f64(is));
    }
  } else {
    std::string line;
    if (!std::getline(is, line) || line != "n,M,kind") throw InvalidArgument("missing record header");
    if (!std::getline(is, line)) throw InvalidArgument("missing record header values");
    std::istringstream hdr(line);
    std::string tok;
    std::getline(hdr, tok, ',');
    n = std::stoi(tok);
    std::getline(hdr, tok, ',');
    m = std::stoi(tok);
    std::getline(hdr, tok, ',');
    if (tok == "field") kind = 0;
    else if (tok == "spectrum") kind = 1;
    else throw InvalidArgument("unknown record kind: " + tok);
    if (!std::getline(is, line) || line != "re,im") throw InvalidArgument("missing column header");
    TorusGrid grid(n, m);
    data.reserve(grid.point_count());
    while (data.size() < grid.point_count() && std::getline(is, line)) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw InvalidArgument("malformed record line: " + line);
      data.emplace_back(parse_double(line.substr(0, comma)), parse_double(line.substr(comma + 1)));
    }
    if (data.size() != grid.point_count()) throw InvalidArgument("record shorter than its header declares");
  }

  TorusGrid grid(n, m);
  if (kind == 0) return Field(grid, std::move(data));
  if (kind == 1) return Spectrum(grid, std::move(data));
  throw InvalidArgument("unknown record kind");
}

}  // namespace sdlab
