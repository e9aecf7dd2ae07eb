#include "qlmor/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace qlmor::io {

namespace {

using nlohmann::json;

json matrix_json(const RealMatrix& M) {
  json rows = json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json list_json(const std::vector<double>& v) { return json(v); }

json system_json(const QuadratureModel& G) {
  return json{{"n", G.n()},           {"m", G.m()},
              {"n_y", G.ny()},        {"A", matrix_json(G.A())},
              {"B", matrix_json(G.B())}, {"C", matrix_json(G.C())},
              {"D", matrix_json(G.D())}, {"pr_certified", G.pr_certified()}};
}

json pr_json(const PrReport& r) {
  return json{{"realizability", r.realizability},
              {"coupling", r.coupling},
              {"scattering", r.scattering},
              {"tol", r.tol},
              {"passed", r.passed()}};
}

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

// Accepts [] and [[]] for empty matrices; `cols` disambiguates zero rows.
RealMatrix matrix_from(const json& j, const char* name, Index rows = -1,
                       Index cols = -1) {
  if (!j.is_array()) parse_fail(std::string(name) + " is not an array");
  const Index r = static_cast<Index>(j.size());
  Index c = r > 0 ? -1 : (cols >= 0 ? cols : 0);
  RealMatrix M;
  for (Index i = 0; i < r; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array()) parse_fail(std::string(name) + " row is not an array");
    if (c < 0) {
      c = static_cast<Index>(row.size());
      M.resize(r, c);
    }
    if (static_cast<Index>(row.size()) != c)
      parse_fail(std::string(name) + " is ragged");
    for (Index k = 0; k < c; ++k) {
      const json& x = row[static_cast<std::size_t>(k)];
      if (!x.is_number()) parse_fail(std::string(name) + " has a non-numeric entry");
      M(i, k) = x.get<double>();
    }
  }
  if (r == 0) M.resize(0, c);
  if ((rows >= 0 && M.rows() != rows) || (cols >= 0 && M.cols() != cols && M.rows() > 0))
    parse_fail(std::string(name) + " has the wrong shape");
  return M;
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    parse_fail(std::string("missing member \"") + key + "\"");
  return j.at(key);
}

Index index_member(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_number_integer()) parse_fail(std::string(key) + " is not an integer");
  return v.get<Index>();
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_json(const QuadratureModel& G) { return system_json(G).dump(2); }

std::string to_json(const SlhParams& p) {
  return json{{"S_re", matrix_json(p.S.real())},
              {"S_im", matrix_json(p.S.imag())},
              {"K_re", matrix_json(p.K.real())},
              {"K_im", matrix_json(p.K.imag())},
              {"R", matrix_json(p.R)}}
      .dump(2);
}

std::string to_json(const PrReport& r) { return pr_json(r).dump(2); }

std::string to_json(const GramianPair& gp) {
  return json{{"P", matrix_json(gp.P)},
              {"Q", matrix_json(gp.Q)},
              {"sigmaP", list_json(gp.sigmaP)},
              {"sigmaQ", list_json(gp.sigmaQ)},
              {"hankel", list_json(gp.hankel)},
              {"classification", std::string(to_string(classify_codiagonalizability(gp)))}}
      .dump(2);
}

std::string to_json(const WilliamsonResult& w) {
  return json{{"T", matrix_json(w.transform.matrix())},
              {"symplectic_residual", w.transform.residual()},
              {"sigma", list_json(w.sigma)},
              {"Sigma", matrix_json(w.Sigma)}}
      .dump(2);
}

std::string to_json(const QuasiBalancedRealization& qb) {
  return json{{"T", matrix_json(qb.T.matrix())},
              {"SigmaP", list_json(paired_diagonal_values(qb.SigmaP))},
              {"SigmaQ", list_json(paired_diagonal_values(qb.SigmaQ))},
              {"sigma_b", list_json(qb.sigma_b)},
              {"distinct", list_json(qb.distinct)},
              {"multiplicity", qb.multiplicity},
              {"boundaries", qb.boundaries},
              {"system", system_json(qb.model)}}
      .dump(2);
}

std::string to_json(const TruncationReport& rep) {
  return json{{"kept", rep.kept},
              {"nu", rep.nu},
              {"bound", rep.bound},
              {"exact_error", rep.exact_error},
              {"hankel", list_json(rep.hankel)},
              {"hurwitz_chain", rep.hurwitz_chain},
              {"pr", pr_json(rep.pr)},
              {"reduced", system_json(rep.reduced)}}
      .dump(2);
}

std::string to_json(const Error& e) {
  return json{{"error", std::string(to_string(e.code()))}, {"message", e.detail()}}
      .dump();
}

std::string matrix_to_json(const RealMatrix& M) { return matrix_json(M).dump(); }

QuadratureModel system_from_json(std::string_view text) {
  const json j = parse(text);
  const Index n = index_member(j, "n");
  const Index m = index_member(j, "m");
  const Index ny = index_member(j, "n_y");
  if (n < 0 || m < 0 || ny < 0) parse_fail("negative dimension");
  return QuadratureModel(matrix_from(member(j, "A"), "A", 2 * n, 2 * n),
                         matrix_from(member(j, "B"), "B", 2 * n, 2 * m),
                         matrix_from(member(j, "C"), "C", ny, 2 * n),
                         matrix_from(member(j, "D"), "D", ny, 2 * m));
}

SlhParams slh_from_json(std::string_view text) {
  const json j = parse(text);
  const RealMatrix R = matrix_from(member(j, "R"), "R");
  const RealMatrix Sre = matrix_from(member(j, "S_re"), "S_re");
  const RealMatrix Sim = matrix_from(member(j, "S_im"), "S_im", Sre.rows(), Sre.cols());
  const RealMatrix Kre = matrix_from(member(j, "K_re"), "K_re", Sre.rows(), R.rows());
  const RealMatrix Kim = matrix_from(member(j, "K_im"), "K_im", Kre.rows(), Kre.cols());
  SlhParams p;
  p.S = Sre.cast<Complex>() + Complex(0.0, 1.0) * Sim.cast<Complex>();
  p.K = Kre.cast<Complex>() + Complex(0.0, 1.0) * Kim.cast<Complex>();
  p.R = R;
  p.validate();
  return p;
}

RealMatrix matrix_from_json(std::string_view text) {
  const json j = parse(text);
  if (j.is_object()) return matrix_from(member(j, "matrix"), "matrix");
  return matrix_from(j, "matrix");
}

std::string to_csv(const FrequencyResponse& fr) {
  std::ostringstream os;
  os << "omega_rad_s,mag_ch1,phase_ch1_rad,mag_ch2,phase_ch2_rad\n";
  for (std::size_t k = 0; k < fr.omega.size(); ++k)
    os << fmt17(fr.omega[k]) << ',' << fmt17(fr.mag1[k]) << ','
       << fmt17(fr.phase1[k]) << ',' << fmt17(fr.mag2[k]) << ','
       << fmt17(fr.phase2[k]) << '\n';
  return os.str();
}

FrequencyResponse response_from_csv(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line) ||
      line != "omega_rad_s,mag_ch1,phase_ch1_rad,mag_ch2,phase_ch2_rad")
    parse_fail("unexpected CSV header");
  FrequencyResponse fr;
  std::vector<double>* cols[] = {&fr.omega, &fr.mag1, &fr.phase1, &fr.mag2,
                                 &fr.phase2};
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const char* p = line.c_str();
    for (int c = 0; c < 5; ++c) {
      char* end = nullptr;
      const double x = std::strtod(p, &end);
      if (end == p) parse_fail("malformed CSV row: " + line);
      cols[c]->push_back(x);
      p = end;
      if (c < 4) {
        if (*p != ',') parse_fail("malformed CSV row: " + line);
        ++p;
      }
    }
    if (*p != '\0') parse_fail("trailing data in CSV row: " + line);
  }
  return fr;
}

}  // namespace qlmor::io
