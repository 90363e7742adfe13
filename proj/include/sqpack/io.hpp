#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sqpack/bounds.hpp"
#include "sqpack/geometry.hpp"

namespace sqpack {

inline constexpr int kCertificateSchemaVersion = 1;

class CertificateError : public std::runtime_error {
 public:
  enum class Kind { kMalformed, kTotalMismatch, kInvalidPacking };

  CertificateError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// JSON certificate: schema_version, n, squares [{x, y, s}], total, provenance.
// Rationals are written as "p/q" strings, or "p" when integral.
std::string serialize_certificate(const Packing& p);

// Structural parse only; the returned packing carries the file's total as
// its claimed total. Throws CertificateError(kMalformed).
Packing parse_certificate_unverified(std::string_view text);

// Full parse: structure, then total, then geometry.
Packing parse_certificate(std::string_view text);

// Throws CertificateError(kInvalidPacking) if `p` does not verify.
void write_certificate(const Packing& p, const std::filesystem::path& path);
Packing read_certificate(const std::filesystem::path& path);
Packing read_certificate_unverified(const std::filesystem::path& path);

// Deterministic SVG of the unit square and its squares (y grows upward).
std::string render_svg(const Packing& p);
void write_svg(const Packing& p, const std::filesystem::path& path);

enum class TableFormat { kTable, kCsv };

std::string ledger_table(const Ledger& ledger, TableFormat format);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace sqpack
