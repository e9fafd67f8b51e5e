#include "eitmotion/cf64.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "eitmotion/errors.hpp"

namespace eitmotion {

namespace {

constexpr char kMagic[4] = {'C', 'F', '6', '4'};
constexpr uint32_t kMaxHeaderBytes = 1u << 20;

// all platforms this builds on are little-endian IEEE-754; the payload is
// memcpy'd through uint64 words so the assumption is at least localized here
static_assert(sizeof(double) == 8);
static_assert(sizeof(Complex) == 16);

void pack_f64(double v, unsigned char* out) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i)
        out[i] = static_cast<unsigned char>(bits >> (8 * i));
}

double unpack_f64(const unsigned char* in) {
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<uint64_t>(in[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

} // namespace

Cf64File read_cf64(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cf64: cannot open '" + path + "'");

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("cf64: '" + path + "' does not start with magic CF64");

    unsigned char len_bytes[4];
    in.read(reinterpret_cast<char*>(len_bytes), 4);
    if (!in)
        throw FormatError("cf64: '" + path + "' truncated in header length");
    const uint32_t hlen = static_cast<uint32_t>(len_bytes[0]) |
                          (static_cast<uint32_t>(len_bytes[1]) << 8) |
                          (static_cast<uint32_t>(len_bytes[2]) << 16) |
                          (static_cast<uint32_t>(len_bytes[3]) << 24);
    if (hlen == 0 || hlen > kMaxHeaderBytes)
        throw FormatError("cf64: '" + path + "' has implausible header length");

    std::string header(hlen, '\0');
    in.read(header.data(), hlen);
    if (!in)
        throw FormatError("cf64: '" + path + "' truncated in JSON header");

    nlohmann::json j = nlohmann::json::parse(header, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw FormatError("cf64: '" + path + "' header is not a JSON object");
    for (const char* key : {"nx", "ny", "dx", "dy", "unit"})
        if (!j.contains(key))
            throw FormatError(std::string("cf64: header missing key '") + key + "'");
    if (!j["nx"].is_number_integer() || !j["ny"].is_number_integer() ||
        !j["dx"].is_number() || !j["dy"].is_number() || !j["unit"].is_string())
        throw FormatError("cf64: header key has wrong type");

    Cf64File f;
    f.field.nx = j["nx"].get<int>();
    f.field.ny = j["ny"].get<int>();
    f.field.dx = j["dx"].get<double>();
    f.field.dy = j["dy"].get<double>();
    f.unit = j["unit"].get<std::string>();
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "nx" && it.key() != "ny" && it.key() != "dx" &&
            it.key() != "dy" && it.key() != "unit")
            f.extra[it.key()] = it.value();

    if (f.field.nx <= 0 || f.field.ny <= 0 ||
        static_cast<uint64_t>(f.field.nx) * static_cast<uint64_t>(f.field.ny) >
            (1ull << 28))
        throw FormatError("cf64: '" + path + "' has implausible dimensions");
    const uint64_t n = static_cast<uint64_t>(f.field.nx) * f.field.ny;

    std::vector<unsigned char> payload(16 * n);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
    if (static_cast<uint64_t>(in.gcount()) != payload.size())
        throw FormatError("cf64: '" + path + "' payload shorter than 16*nx*ny bytes");
    in.peek();
    if (!in.eof())
        throw FormatError("cf64: '" + path + "' has trailing bytes after payload");

    f.field.values.resize(n);
    for (uint64_t i = 0; i < n; ++i)
        f.field.values[i] = Complex(unpack_f64(&payload[16 * i]),
                                    unpack_f64(&payload[16 * i + 8]));
    return f;
}

void write_cf64(const std::string& path, const ComplexField2D& field,
                const std::string& unit, const nlohmann::json& extra) {
    if (field.nx <= 0 || field.ny <= 0 ||
        field.values.size() != static_cast<size_t>(field.nx) * field.ny)
        throw ValidationError("cf64: field dimensions do not match its sample count");

    nlohmann::json j = extra.is_null() ? nlohmann::json::object() : extra;
    if (!j.is_object())
        throw ValidationError("cf64: extra metadata must be a JSON object");
    j["nx"] = field.nx;
    j["ny"] = field.ny;
    j["dx"] = field.dx;
    j["dy"] = field.dy;
    j["unit"] = unit;
    const std::string header = j.dump(); // keys sorted, so byte-reproducible

    const std::filesystem::path target(path);
    const std::filesystem::path tmp =
        target.parent_path() /
        (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ValidationError("cf64: cannot create '" + tmp.string() + "'");
        out.write(kMagic, 4);
        const uint32_t hlen = static_cast<uint32_t>(header.size());
        unsigned char len_bytes[4] = {static_cast<unsigned char>(hlen),
                                      static_cast<unsigned char>(hlen >> 8),
                                      static_cast<unsigned char>(hlen >> 16),
                                      static_cast<unsigned char>(hlen >> 24)};
        out.write(reinterpret_cast<const char*>(len_bytes), 4);
        out.write(header.data(), static_cast<std::streamsize>(header.size()));
        std::vector<unsigned char> buf(16 * field.values.size());
        for (size_t i = 0; i < field.values.size(); ++i) {
            pack_f64(field.values[i].real(), &buf[16 * i]);
            pack_f64(field.values[i].imag(), &buf[16 * i + 8]);
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size()));
        if (!out)
            throw ValidationError("cf64: write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ValidationError("cf64: atomic rename to '" + path + "' failed: " +
                              ec.message());
    }
}

void write_pgm_magnitude(const std::string& path, const ComplexField2D& field) {
    if (field.nx <= 0 || field.ny <= 0 ||
        field.values.size() != static_cast<size_t>(field.nx) * field.ny)
        throw ValidationError("pgm: field dimensions do not match its sample count");
    double peak = 0.0;
    for (const Complex& v : field.values)
        peak = std::max(peak, std::abs(v));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ValidationError("pgm: cannot create '" + path + "'");
    out << "P5\n" << field.nx << " " << field.ny << "\n255\n";
    for (const Complex& v : field.values) {
        const double s = (peak > 0.0) ? std::abs(v) / peak : 0.0;
        out.put(static_cast<char>(static_cast<int>(255.0 * s + 0.5)));
    }
    if (!out)
        throw ValidationError("pgm: write to '" + path + "' failed");
}

} // namespace eitmotion
