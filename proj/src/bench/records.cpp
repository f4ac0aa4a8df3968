#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stlsq/bench.hpp"

namespace stlsq::bench {

namespace {

constexpr const char* kHeader = "method,param,error,iterations,wall_time_s";

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string s = "\"";
  for (char ch : field) {
    if (ch == '"') s += '"';
    s += ch;
  }
  return s + "\"";
}

// Splits one record; quoted fields may span lines, so it reads as needed.
bool read_record(std::istream& is, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false, any = false;
  for (int c; (c = is.get()) != EOF;) {
    any = true;
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (is.peek() == '"') {
          field += '"';
          is.get();
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (quoted) throw std::runtime_error("read_csv: unterminated quoted field");
  if (any) fields.push_back(std::move(field));
  return any;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
  std::istringstream ss(s);
  T v{};
  ss >> v;
  if (ss.fail() || !ss.eof()) throw std::runtime_error(std::string("read_csv: bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records) {
  os << kHeader << '\n';
  os << std::setprecision(17);
  for (const auto& r : records) {
    os << quote(r.method) << ',' << r.param << ',' << r.error << ',';
    if (r.iterations) os << *r.iterations;
    os << ',' << r.wall_time_s << '\n';
  }
}

std::vector<ConvergenceRecord> read_csv(std::istream& is) {
  std::vector<std::string> fields;
  if (!read_record(is, fields)) throw std::runtime_error("read_csv: empty input");
  std::string header;
  for (std::size_t i = 0; i < fields.size(); ++i) header += (i ? "," : "") + fields[i];
  if (header != kHeader) throw std::runtime_error("read_csv: unexpected header '" + header + "'");
  std::vector<ConvergenceRecord> out;
  while (read_record(is, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 5) throw std::runtime_error("read_csv: expected 5 fields");
    ConvergenceRecord r;
    r.method = fields[0];
    r.param = parse_number<std::size_t>(fields[1], "param");
    r.error = parse_number<double>(fields[2], "error");
    if (!fields[3].empty()) r.iterations = parse_number<std::size_t>(fields[3], "iterations");
    r.wall_time_s = parse_number<double>(fields[4], "wall_time_s");
    out.push_back(std::move(r));
  }
  return out;
}

double fit_order(const std::vector<ConvergenceRecord>& records, double floor,
                 std::size_t min_points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (!(r.error >= floor) || r.param == 0 || !std::isfinite(r.error)) continue;
    const double x = std::log(static_cast<double>(r.param));
    const double y = std::log(r.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < std::max<std::size_t>(min_points, 2))
    throw std::invalid_argument("fit_order: too few records above the floor");
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw std::invalid_argument("fit_order: all params equal");
  return -(dn * sxy - sx * sy) / denom;
}

}  // namespace stlsq::bench
