#include "sharp/io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <istream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sharp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string real(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_quotes) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (ch == '"') {
        in_quotes = false;
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  if (in_quotes) throw std::runtime_error("unterminated quote in CSV line");
  return cells;
}

double parse_real(const std::string& s) {
  if (s.empty()) return kNaN;
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::runtime_error("bad real '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::runtime_error("bad integer '" + s + "'");
  return v;
}

const char* method_name(MrsMethod m) {
  switch (m) {
    case MrsMethod::ClosedForm:
      return "closed_form";
    case MrsMethod::RootFind:
      return "root_find";
    case MrsMethod::Convention:
      return "convention";
  }
  return "";
}

nlohmann::json real_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    const bool has_ref = r.E_ref.kind != EValue::Kind::Unknown;
    out << quoted(r.weight) << ',' << format_p(r.p) << ',' << r.N << ',' << r.n << ','
        << real(r.a_n) << ',' << real(r.b_n) << ',' << real(r.M) << ',' << real(r.M_star) << ','
        << (has_ref ? real(r.E_ref.lo) : "") << ',' << (has_ref ? real(r.E_ref.hi) : "") << ','
        << (r.gap ? real(*r.gap) : "") << ',' << (r.certified ? "true" : "false") << ','
        << quoted(r.status) << '\n';
  }
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream ss;
  write_sweep_csv(ss, rows);
  return ss.str();
}

std::vector<SweepRow> parse_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSweepHeader) throw std::runtime_error("CSV header mismatch: '" + line + "'");
  std::vector<SweepRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c = split_csv_line(line);
    if (c.size() != 13) {
      throw std::runtime_error(fmt::format("line {}: expected 13 cells, got {}", line_no, c.size()));
    }
    try {
      SweepRow r;
      r.weight = c[0];
      r.p = parse_real(c[1]);
      r.N = parse_int(c[2]);
      r.n = parse_int(c[3]);
      r.a_n = parse_real(c[4]);
      r.b_n = parse_real(c[5]);
      r.M = parse_real(c[6]);
      r.M_star = parse_real(c[7]);
      r.E_ref.p = r.p;
      r.E_ref.N = r.N;
      if (!c[8].empty() || !c[9].empty()) {
        r.E_ref.lo = parse_real(c[8]);
        r.E_ref.hi = parse_real(c[9]);
        r.E_ref.kind = r.E_ref.lo == r.E_ref.hi ? EValue::Kind::Exact : EValue::Kind::Bounds;
      }
      if (!c[10].empty()) r.gap = parse_real(c[10]);
      if (c[11] != "true" && c[11] != "false") throw std::runtime_error("bad certified flag");
      r.certified = c[11] == "true";
      r.status = c[12];
      rows.push_back(std::move(r));
    } catch (const std::logic_error& e) {
      throw std::runtime_error(fmt::format("line {}: {}", line_no, e.what()));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return rows;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream ss(text);
  return parse_sweep_csv(ss);
}

void write_mrs_csv(std::ostream& out, const std::vector<MrsRow>& rows) {
  out << kMrsHeader << '\n';
  for (const auto& r : rows) {
    out << r.numbers.n << ',' << real(r.numbers.a_n) << ',' << real(r.numbers.b_n) << ','
        << real(r.ratio) << ',' << method_name(r.numbers.method) << '\n';
  }
}

std::string solve_json(const SharpConstantResult& r, int indent) {
  using nlohmann::json;
  const auto& q = r.query;
  json j;
  j["query"] = {{"weight", q.w.to_string()},
                {"p", format_p(q.p)},
                {"N", q.N},
                {"n", q.n},
                {"variant", q.variant == Variant::Restricted ? "restricted" : "full"}};
  j["value"] = real_json(r.value);
  j["unnormalized"] = real_json(r.unnormalized);
  j["a_n"] = real_json(r.a_n);
  j["b_n"] = real_json(r.b_n);
  j["domain"] = {real_json(r.domain.lo), real_json(r.domain.hi)};
  json coeffs = json::array();
  for (double v : r.extremal.coeffs()) coeffs.push_back(real_json(v));
  j["extremal_coeffs"] = coeffs;
  const auto& c = r.certificate;
  j["certificate"] = {{"method", c.method},
                      {"gram_residual", real_json(c.gram_residual)},
                      {"active_constraints", c.active_constraints},
                      {"duality_gap", real_json(c.duality_gap)},
                      {"objective_drift", real_json(c.objective_drift)},
                      {"window_change", real_json(c.window_change)},
                      {"iterations", c.iterations},
                      {"refinement_rounds", c.refinement_rounds}};
  j["certified"] = r.certified;
  return j.dump(indent);
}

}  // namespace sharp
