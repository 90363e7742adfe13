#include <cstdio>
#include <iomanip>
#include <sstream>

#include "sqpack/io.hpp"

namespace sqpack {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ledger_table(const Ledger& ledger, TableFormat format) {
  std::ostringstream os;
  const bool csv = format == TableFormat::kCsv;
  if (csv) {
    os << "kind,index,lb,ub,lb_decimal,ub_decimal,derivation\n";
  } else {
    os << std::left << std::setw(8) << "n" << std::setw(16) << "LB" << std::setw(12) << "LB~"
       << std::setw(14) << "UB" << std::setw(12) << "UB~"
       << "derivation\n";
  }

  for (std::int64_t n = 1; n <= ledger.max_n(); ++n) {
    const UpperBound ub = ledger.upper(n);
    const std::string ub_text = ub.str();
    const std::string ub_dec = fixed6(ub.as_surd().approx());
    std::string lb_text = "-";
    std::string lb_dec = "-";
    std::string tag = "-";
    if (ledger.has_lower(n)) {
      const LowerBound& lb = ledger.lower(n);
      lb_text = lb.value.str();
      lb_dec = lb.value.decimal(6);
      tag = lb.derivation.tag();
    }
    if (csv) {
      os << "f," << n << "," << lb_text << "," << ub_text << "," << lb_dec << "," << ub_dec << ","
         << csv_escape(tag) << "\n";
    } else {
      os << std::setw(8) << n << std::setw(16) << lb_text << std::setw(12) << lb_dec
         << std::setw(14) << ub_text << std::setw(12) << ub_dec << tag << "\n";
    }
  }

  if (!csv) {
    os << "\n" << std::setw(8) << "k" << std::setw(28) << "epsilon interval" << std::setw(12)
       << "lb~"
       << "ub~\n";
  }
  for (std::int64_t k = 1; k * k + 1 <= ledger.max_n(); ++k) {
    const EpsilonInterval e = epsilon_interval(ledger, k);
    if (csv) {
      os << "epsilon," << k << "," << e.lb.str() << "," << e.ub.str() << "," << e.lb.decimal(6)
         << "," << fixed6(e.ub.approx()) << ",\n";
    } else {
      os << std::setw(8) << k << std::setw(28) << e.str() << std::setw(12) << e.lb.decimal(6)
         << fixed6(e.ub.approx()) << "\n";
    }
  }
  return os.str();
}

}  // namespace sqpack
