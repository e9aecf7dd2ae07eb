#pragma once

// JSON and CSV encodings of the library's values. Matrices are row-major
// nested arrays; numbers use the shortest decimal form that round-trips.
//
// System:  {"n", "m", "n_y", "A", "B", "C", "D", "pr_certified"}
// SLH:     {"S_re", "S_im", "K_re", "K_im", "R"}
// Report:  {"kept", "nu", "bound", "exact_error", "hankel",
//           "hurwitz_chain", "reduced"}

#include <string>
#include <string_view>

#include "qlmor/error.hpp"
#include "qlmor/lqss.hpp"
#include "qlmor/network.hpp"
#include "qlmor/reduction.hpp"
#include "qlmor/symplectic.hpp"

namespace qlmor::io {

std::string to_json(const QuadratureModel& G);
std::string to_json(const SlhParams& p);
std::string to_json(const PrReport& r);
std::string to_json(const GramianPair& gp);
std::string to_json(const WilliamsonResult& w);
std::string to_json(const QuasiBalancedRealization& qb);
std::string to_json(const TruncationReport& rep);
std::string to_json(const Error& e);
std::string matrix_to_json(const RealMatrix& M);

/// All parsers throw Error(ParseError) on malformed input; model parsing
/// additionally propagates DimensionMismatch. pr_certified is recomputed, not
/// trusted.
QuadratureModel system_from_json(std::string_view text);
SlhParams slh_from_json(std::string_view text);

/// A bare nested array, or an object with a "matrix" member.
RealMatrix matrix_from_json(std::string_view text);

/// Header omega_rad_s,mag_ch1,phase_ch1_rad,mag_ch2,phase_ch2_rad; values
/// printed with 17 significant digits.
std::string to_csv(const FrequencyResponse& fr);
FrequencyResponse response_from_csv(std::string_view text);

}  // namespace qlmor::io
