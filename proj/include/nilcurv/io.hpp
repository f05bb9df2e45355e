#pragma once

// Serialization: matrix dumps (text tokens "re+im i" and JSON
// {n, re, im}), verification reports, bound reports and minimization
// reports. Exact rationals travel as "p/q" strings.

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilcurv/hodge.hpp"
#include "nilcurv/matrix.hpp"
#include "nilcurv/orbit.hpp"

namespace nilcurv {

using json = nlohmann::json;

// Matrices.

inline json matrix_to_json(const ComplexMatrix& a) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      re.push_back(a(i, j).real());
      im.push_back(a(i, j).imag());
    }
  }
  return json{{"n", a.rows()}, {"re", re}, {"im", im}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im")) {
    throw parse_error("matrix JSON needs fields n, re, im");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() <= 0) throw parse_error("matrix JSON: n must be a positive integer");
  const auto n = j["n"].get<Eigen::Index>();
  const auto& re = j["re"];
  const auto& im = j["im"];
  const auto count = static_cast<std::size_t>(n * n);
  if (!re.is_array() || !im.is_array() || re.size() != count || im.size() != count) {
    throw parse_error("matrix JSON: re and im must each hold n*n numbers");
  }
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto idx = static_cast<std::size_t>(i * n + k);
      if (!re[idx].is_number() || !im[idx].is_number()) throw parse_error("matrix JSON: non-numeric entry");
      a(i, k) = Complex(re[idx].get<double>(), im[idx].get<double>());
    }
  }
  if (!a.allFinite()) throw parse_error("matrix JSON: non-finite entry");
  return a;
}

/// One row per line, entries "re+im i" / "re-im i" at full precision.
inline std::string matrix_to_text(const ComplexMatrix& a) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Complex z = a(i, j);
      os << (j ? " " : "") << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
    }
    os << '\n';
  }
  return os.str();
}

inline Complex parse_complex_token(const std::string& token) {
  if (token.size() < 2 || token.back() != 'i') throw parse_error("matrix token '" + token + "' must end in 'i'");
  // The imaginary sign is the last '+' or '-' not part of an exponent and
  // not the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = token.size() - 1; k-- > 1;) {
    const char c = token[k];
    if ((c == '+' || c == '-') && token[k - 1] != 'e' && token[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) throw parse_error("matrix token '" + token + "' lacks an imaginary part");
  try {
    std::size_t used_re = 0;
    std::size_t used_im = 0;
    const std::string re_s = token.substr(0, split);
    const std::string im_s = token.substr(split, token.size() - 1 - split);
    const double re = std::stod(re_s, &used_re);
    const double im = std::stod(im_s, &used_im);
    if (used_re != re_s.size() || used_im != im_s.size()) throw parse_error("trailing characters");
    return {re, im};
  } catch (const std::exception&) {
    throw parse_error("malformed matrix token '" + token + "'");
  }
}

inline ComplexMatrix matrix_from_text(const std::string& text) {
  std::istringstream lines(text);
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tokens(line);
    std::vector<Complex> row;
    std::string token;
    while (tokens >> token) row.push_back(parse_complex_token(token));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw parse_error("empty matrix dump");
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) throw parse_error("matrix dump is not square");
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return a;
}

// Reports.

inline json ints_to_json(const std::vector<int>& v) { return json(v); }

inline json to_json(const VerificationReport& r) {
  return json{{"kind", r.spec_kind},
              {"spec", r.spec},
              {"seed", r.seed},
              {"samples", r.samples},
              {"bound", r.bound.to_string()},
              {"min_observed", r.min_observed},
              {"violations", r.violations},
              {"worst_margin", r.worst_margin},
              {"timing", {{"timestamp", r.timestamp}, {"elapsed_seconds", r.elapsed_seconds}}}};
}

inline double json_double(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

inline VerificationReport verification_report_from_json(const json& j) {
  try {
    VerificationReport r;
    r.spec_kind = j.at("kind").get<std::string>();
    r.spec = j.at("spec").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.samples = j.at("samples").get<std::size_t>();
    r.bound = Rational::parse(j.at("bound").get<std::string>());
    r.min_observed = json_double(j.at("min_observed"));
    r.violations = j.at("violations").get<std::size_t>();
    r.worst_margin = json_double(j.at("worst_margin"));
    r.timestamp = j.at("timing").at("timestamp").get<std::string>();
    r.elapsed_seconds = j.at("timing").at("elapsed_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw parse_error(std::string("verification report: ") + e.what());
  }
}

inline json to_json(const BoundReport& r) {
  return json{{"weight", r.hodge.weight()},
              {"hodge", r.hodge.numbers()},
              {"conjugate", r.conjugate.parts()},
              {"sharp_bound", r.sharp_bound.to_string()},
              {"general_bound", r.general_bound ? json(r.general_bound->to_string()) : json(nullptr)},
              {"group", r.domain.group_name()},
              {"isotropy", r.domain.isotropy},
              {"diagram", r.diagram}};
}

inline BoundReport bound_report_from_json(const json& j) {
  try {
    HodgeVector h(j.at("weight").get<int>(), j.at("hodge").get<std::vector<int>>());
    BoundReport r = make_bound_report(h);
    r.conjugate = Partition(j.at("conjugate").get<std::vector<int>>());
    r.sharp_bound = Rational::parse(j.at("sharp_bound").get<std::string>());
    r.general_bound = j.at("general_bound").is_null()
                          ? std::nullopt
                          : std::optional<Rational>(Rational::parse(j.at("general_bound").get<std::string>()));
    r.domain.isotropy = j.at("isotropy").get<std::vector<std::string>>();
    r.diagram = j.at("diagram").get<std::string>();
    if (r.domain.group_name() != j.at("group").get<std::string>()) throw parse_error("group does not match hodge numbers");
    return r;
  } catch (const json::exception& e) {
    throw parse_error(std::string("bound report: ") + e.what());
  }
}

inline json to_json(const MinimizeResult& r) {
  return json{{"jordan_type", r.jordan_type.parts()},
              {"target", r.target.to_string()},
              {"min_estimate", r.min_estimate},
              {"gap", r.min_estimate - r.target.to_double()},
              {"rigidity_residual", r.rigidity.residual},
              {"a_est", r.rigidity.a_est},
              {"gradient_norm", r.gradient_norm},
              {"iterations", r.iterations},
              {"runs", r.runs},
              {"converged", r.converged},
              {"argmin", matrix_to_json(r.argmin)}};
}

}  // namespace nilcurv
