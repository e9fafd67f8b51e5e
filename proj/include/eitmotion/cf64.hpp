#pragma once
#include <string>

#include "json.hpp"

#include "eitmotion/field2d.hpp"

namespace eitmotion {

// On-disk container for a complex 2D field:
//   bytes 0..3   magic "CF64"
//   bytes 4..7   header length H, unsigned 32-bit little-endian
//   bytes 8..8+H JSON header, at least {nx, ny, dx, dy, unit}
//   then         nx*ny complex samples, row major, each (re, im) as
//                little-endian IEEE-754 doubles (16 bytes per sample)
// Any extra header keys ride along untouched, so a read/write cycle is
// byte-identical. Writes go to a temp file in the same directory followed
// by an atomic rename.

struct Cf64File {
    ComplexField2D field;
    std::string unit = "dimensionless";
    nlohmann::json extra = nlohmann::json::object(); // metadata passthrough
};

Cf64File read_cf64(const std::string& path);

void write_cf64(const std::string& path, const ComplexField2D& field,
                const std::string& unit = "dimensionless",
                const nlohmann::json& extra = nlohmann::json::object());

// 8-bit binary PGM of |field|, scaled so the global magnitude peak maps to
// 255. Lossy, intended only as a quick visual check of a CF64 file.
void write_pgm_magnitude(const std::string& path, const ComplexField2D& field);

} // namespace eitmotion
