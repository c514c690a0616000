#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sharp/lab.hpp"
#include "sharp/mrs.hpp"
#include "sharp/solvers.hpp"

namespace sharp {

inline constexpr std::string_view kSweepHeader =
    "weight,p,N,n,a_n,b_n,M,M_star,E_ref_lo,E_ref_hi,gap,certified,status";
inline constexpr std::string_view kMrsHeader = "n,a_n,b_n,ratio,method";

/// Reals are written with 17 significant digits; missing values are blank.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);
/// Throws std::runtime_error on a header mismatch or malformed line.
std::vector<SweepRow> parse_sweep_csv(std::istream& in);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

void write_mrs_csv(std::ostream& out, const std::vector<MrsRow>& rows);

/// {query, value, extremal_coeffs, certificate, certified}
std::string solve_json(const SharpConstantResult& r, int indent = 2);

}  // namespace sharp
