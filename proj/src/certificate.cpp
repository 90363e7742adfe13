#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sqpack/io.hpp"

namespace sqpack {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw CertificateError(CertificateError::Kind::kMalformed, "malformed certificate: " + what);
}

Rational rational_field(const ordered_json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) malformed(where + " is missing \"" + key + "\"");
  if (!it->is_string()) malformed(where + "." + key + " must be a \"p/q\" string");
  try {
    return Rational::parse(it->get<std::string>());
  } catch (const std::invalid_argument& e) {
    malformed(where + "." + key + ": " + e.what());
  }
}

}  // namespace

std::string serialize_certificate(const Packing& p) {
  ordered_json doc;
  doc["schema_version"] = kCertificateSchemaVersion;
  doc["n"] = p.size();
  ordered_json squares = ordered_json::array();
  for (const auto& sq : p.squares()) {
    squares.push_back({{"x", sq.x().str()}, {"y", sq.y().str()}, {"s", sq.side().str()}});
  }
  doc["squares"] = std::move(squares);
  doc["total"] = p.total().str();
  ordered_json provenance = ordered_json::array();
  for (const auto& record : p.provenance()) {
    ordered_json r;
    r["rule"] = record.rule;
    for (const auto& [key, value] : record.fields) r[key] = value;
    provenance.push_back(std::move(r));
  }
  doc["provenance"] = std::move(provenance);
  return doc.dump(2) + "\n";
}

Packing parse_certificate_unverified(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::parse_error& e) {
    malformed(std::string("not JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("top level must be an object");

  const auto version = doc.find("schema_version");
  if (version == doc.end() || !version->is_number_integer() ||
      version->get<int>() != kCertificateSchemaVersion) {
    malformed("unsupported or missing schema_version");
  }
  const auto squares_it = doc.find("squares");
  if (squares_it == doc.end() || !squares_it->is_array()) malformed("\"squares\" must be an array");

  std::vector<Square> squares;
  squares.reserve(squares_it->size());
  for (std::size_t i = 0; i < squares_it->size(); ++i) {
    const auto& entry = (*squares_it)[i];
    const std::string where = "squares[" + std::to_string(i) + "]";
    if (!entry.is_object()) malformed(where + " must be an object");
    Rational x = rational_field(entry, "x", where);
    Rational y = rational_field(entry, "y", where);
    Rational s = rational_field(entry, "s", where);
    if (s.sign() <= 0) malformed(where + " has non-positive side " + s.str());
    squares.emplace_back(std::move(x), std::move(y), std::move(s));
  }

  const auto n_it = doc.find("n");
  if (n_it == doc.end() || !n_it->is_number_unsigned() ||
      n_it->get<std::size_t>() != squares.size()) {
    malformed("\"n\" missing or different from the number of squares");
  }
  Rational total = rational_field(doc, "total", "certificate");

  std::vector<ProvenanceRecord> provenance;
  if (const auto prov = doc.find("provenance"); prov != doc.end()) {
    if (!prov->is_array()) malformed("\"provenance\" must be an array");
    for (const auto& r : *prov) {
      if (!r.is_object() || !r.contains("rule") || !r["rule"].is_string()) {
        malformed("provenance records need a string \"rule\"");
      }
      ProvenanceRecord record{r["rule"].get<std::string>(), {}};
      for (const auto& [key, value] : r.items()) {
        if (key == "rule") continue;
        record.fields.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
      }
      provenance.push_back(std::move(record));
    }
  }
  return Packing::with_claimed_total(std::move(squares), std::move(total), std::move(provenance));
}

Packing parse_certificate(std::string_view text) {
  Packing p = parse_certificate_unverified(text);
  const auto report = verify(p);
  if (report.total_mismatch) {
    throw CertificateError(CertificateError::Kind::kTotalMismatch,
                           "certificate total " + p.total().str() + " differs from sum of sides " +
                               report.recomputed_total.str());
  }
  if (!report.valid()) {
    throw CertificateError(CertificateError::Kind::kInvalidPacking,
                           "certificate packing is " + report.describe());
  }
  return p;
}

void write_certificate(const Packing& p, const std::filesystem::path& path) {
  const auto report = verify(p);
  if (!report.valid()) {
    throw CertificateError(CertificateError::Kind::kInvalidPacking,
                           "refusing to write a packing that is " + report.describe());
  }
  write_text_file(path, serialize_certificate(p));
}

Packing read_certificate(const std::filesystem::path& path) {
  return parse_certificate(read_text_file(path));
}

Packing read_certificate_unverified(const std::filesystem::path& path) {
  return parse_certificate_unverified(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace sqpack
