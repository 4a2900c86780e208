#pragma once

// Flat record format for fields and spectra.
//
// CSV:    "n,M,kind" header line, one line with the values, a "re,im" line,
//         then one (re, im) pair per sample/mode in canonical order.
// Binary: magic "SDLB", u32 version, u32 n, u32 M, u32 kind (0 field, 1 spectrum),
//         followed by M^n (re, im) pairs of IEEE-754 doubles, little-endian.

#include <cstdint>
#include <iosfwd>
#include <variant>

#include "sdlab/torus_spectrum.hpp"

namespace sdlab {

enum class RecordFormat { Csv, Binary };

using Record = std::variant<Field, Spectrum>;

void write_record(std::ostream& os, const Field& field, RecordFormat format);
void write_record(std::ostream& os, const Spectrum& spectrum, RecordFormat format);
Record read_record(std::istream& is, RecordFormat format);

namespace detail {
void write_f64(std::ostream& os, double x);
double read_f64(std::istream& is);
void write_u32(std::ostream& os, std::uint32_t x);
std::uint32_t read_u32(std::istream& is);
}  // namespace detail

}  // namespace sdlab
