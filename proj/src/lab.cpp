#include "sharp/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sharp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same_real(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

SweepRow solve_row(const WeightSpec& w, double p, int N, int n, const SolveOptions& opt) {
  SweepRow row;
  row.weight = w.to_string();
  row.p = p;
  row.N = N;
  row.n = n;
  row.E_ref = reference_E(p, N);
  try {
    SharpConstantQuery q{w, p, N, n, Variant::FullInterval};
    const SharpConstantResult full = solve(q, opt);
    q.variant = Variant::Restricted;
    const SharpConstantResult restricted = solve(q, opt);
    row.a_n = restricted.a_n;
    row.b_n = restricted.b_n;
    row.M = full.value;
    row.M_star = restricted.value;
    row.certified = full.certified && restricted.certified;
    if (row.E_ref.exact()) row.gap = std::abs(row.M_star - row.E_ref.value()) / row.E_ref.value();
  } catch (const std::exception& e) {
    row.M = row.M_star = kNaN;
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    row.status = "error: " + msg;
  }
  return row;
}

}  // namespace

bool SweepRow::operator==(const SweepRow& o) const {
  return weight == o.weight && same_real(p, o.p) && N == o.N && n == o.n &&
         same_real(a_n, o.a_n) && same_real(b_n, o.b_n) && same_real(M, o.M) &&
         same_real(M_star, o.M_star) && E_ref.kind == o.E_ref.kind &&
         same_real(E_ref.lo, o.E_ref.lo) && same_real(E_ref.hi, o.E_ref.hi) &&
         gap.has_value() == o.gap.has_value() && (!gap || same_real(*gap, *o.gap)) &&
         certified == o.certified && status == o.status;
}

std::vector<SweepRow> sweep(const WeightSpec& w, double p, int N, const std::vector<int>& n_list,
                            const SolveOptions& opt, int threads) {
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < std::max(1, N)) throw std::invalid_argument("sweep: each n must be >= max(1, N)");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw std::invalid_argument("sweep: n list must increase");
  }
  std::vector<SweepRow> rows(n_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n_list.size(); i = next++) {
      rows[i] = solve_row(w, p, N, n_list[i], opt);
    }
  };
  const int count = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(1, n_list.size())));
  std::vector<std::jthread> pool;
  for (int t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

Report verify_invariants(const std::vector<SweepRow>& rows_in) {
  Report report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
    report.passed = report.passed && ok;
  };
  std::vector<SweepRow> rows;
  for (const auto& r : rows_in) {
    if (r.ok()) rows.push_back(r);
  }
  add("rows-solved", rows.size() == rows_in.size() && !rows.empty(),
      std::to_string(rows.size()) + " of " + std::to_string(rows_in.size()) + " rows solved");
  if (rows.empty()) return report;
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.n < b.n; });

  bool full_le = true, restricted_le = true, all_equal = true;
  for (const auto& r : rows) {
    const double slack = 1e-8 * std::max(1.0, std::max(std::abs(r.M), std::abs(r.M_star)));
    full_le = full_le && r.M <= r.M_star + slack;
    restricted_le = restricted_le && r.M_star <= r.M + slack;
    all_equal = all_equal && std::abs(r.M - r.M_star) <= slack;
  }
  report.observed_ordering = all_equal      ? "equal"
                             : full_le      ? "M<=M*"
                             : restricted_le ? "M*<=M"
                                             : "mixed";
  add("ordering M<=M*", full_le, "observed " + report.observed_ordering);
  add("ordering M*<=M (reported only)", true, restricted_le ? "holds" : "does not hold");

  std::vector<double> ms;
  for (const auto& r : rows) ms.push_back(r.M);
  const double mx = *std::max_element(ms.begin(), ms.end());
  const double med = median(ms);
  add("bounded", med > 0.0 && mx / med < 10.0,
      "max/median = " + std::to_string(med > 0.0 ? mx / med : 0.0));

  bool fields_ok = true;
  for (const auto& r : rows) fields_ok = fields_ok && (r.gap.has_value() == r.E_ref.exact());
  add("gap-filled-iff-exact", fields_ok, "");

  if (rows.front().E_ref.exact()) {
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      monotone = monotone && *rows[i].gap <= *rows[i - 1].gap + 1e-9;
    }
    add("gap-monotone", monotone, "gap at largest n = " + std::to_string(*rows.back().gap));
  }
  return report;
}

CoefficientDiagnostic coefficient_growth_diagnostic(const WeightSpec& w, double p,
                                                    const std::vector<int>& n_list, int k_max,
                                                    double eps, const SolveOptions& opt) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("coefficient diagnostic: eps in (0,1)");
  if (n_list.empty()) throw std::invalid_argument("coefficient diagnostic: empty n list");
  if (k_max < 0 || k_max > *std::min_element(n_list.begin(), n_list.end())) {
    throw std::invalid_argument("coefficient diagnostic: need 0 <= k_max <= min(n)");
  }
  CoefficientDiagnostic d;
  d.n_list = n_list;
  d.values.assign(k_max + 1, {});
  for (int k = 0; k <= k_max; ++k) {
    for (int n : n_list) {
      const SharpConstantQuery q{w, p, k, n, Variant::Restricted};
      d.values[k].push_back(std::pow(1.0 - eps, k) * solve(q, opt).value);
    }
    const auto& v = d.values[k];
    d.sup_per_k.push_back(*std::max_element(v.begin(), v.end()));
    const double med = median(v);
    const bool stable = std::isfinite(v.back()) && v.back() <= 2.0 * med && v.back() >= 0.5 * med;
    d.stable_per_k.push_back(stable);
    d.passed = d.passed && stable;
  }
  return d;
}

Extrapolation extrapolate_limit(const std::vector<double>& v, const std::vector<int>& n_list) {
  if (v.size() < 3 || v.size() != n_list.size()) {
    throw std::invalid_argument("extrapolate_limit: need >= 3 values with matching n");
  }
  Extrapolation out;
  const double lo = *std::min_element(v.begin(), v.end());
  const double hi = *std::max_element(v.begin(), v.end());
  if (hi - lo <= 1e-15 * std::max(1.0, std::abs(hi))) {
    out.estimate = v.back();
    out.spread = 0.0;
    out.beta = kNaN;
    return out;
  }
  auto aitken = [&](std::size_t end) {  // uses v[end-3], v[end-2], v[end-1]
    const double d1 = v[end - 2] - v[end - 3];
    const double d2 = v[end - 1] - v[end - 2];
    const double denom = d2 - d1;
    if (denom == 0.0) return v[end - 1];
    return v[end - 1] - d2 * d2 / denom;
  };
  out.estimate = aitken(v.size());
  out.spread = v.size() >= 4 ? std::abs(out.estimate - aitken(v.size() - 1))
                             : std::abs(out.estimate - v.back());

  // least squares of log|v - estimate| against log n
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = std::abs(v[i] - out.estimate);
    if (r == 0.0) continue;
    const double x = std::log(static_cast<double>(n_list[i])), y = std::log(r);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double den = m * sxx - sx * sx;
  out.beta = m >= 2 && den != 0.0 ? -(m * sxy - sx * sy) / den : kNaN;
  return out;
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "' in n list");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("bad n range '" + text + "'");
    const int a = to_int(parts[0]), b = to_int(parts[1]);
    const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
    if (step < 1 || a > b) throw std::invalid_argument("bad n range '" + text + "'");
    for (int n = a; n <= b; n += step) out.push_back(n);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(to_int(part));
  }
  if (out.empty()) throw std::invalid_argument("empty n list");
  return out;
}

double parse_p(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  const double p = std::stod(t, &pos);
  if (pos != t.size() || !(p > 0.0)) throw std::invalid_argument("p must be a positive real or 'inf'");
  return p;
}

std::string format_p(double p) {
  if (!std::isfinite(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

}  // namespace sharp
