#pragma once

// Command-line front end. run_cli() is the whole program minus main(), so
// tests drive it with in-memory streams.
//
//   nilcurv partition 6,4,2,1
//   nilcurv composition 2,4,2,4,3,2
//   nilcurv constant --partition 5,5,1
//   nilcurv verify --composition 1,3,3,1 --samples 1000 --seed 7 --out report.json
//   nilcurv minimize --partition 3,1 --conjugate-by random --seed 1
//   nilcurv bound 1,4,4,1
//   nilcurv batch hodge.csv --format json
//
// Exit codes: 0 success, 1 usage or input error, 2 verification failure,
// 3 numerical non-convergence.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nilcurv/combinatorics.hpp"
#include "nilcurv/hodge.hpp"
#include "nilcurv/io.hpp"
#include "nilcurv/nilmat.hpp"
#include "nilcurv/orbit.hpp"

namespace nilcurv::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kNotConverged = 3 };

enum class Format { Text, Json };

/// Row of a Hodge-number CSV batch: either a vector or a row-level error.
struct BatchRow {
  std::size_t line = 0;
  std::string input;
  std::optional<HodgeVector> hodge;
  std::string error;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline int parse_cell(const std::string& cell, std::size_t line) {
  if (cell.empty() || cell.size() > 9 || cell.find_first_not_of("0123456789") != std::string::npos) {
    throw parse_error("line " + std::to_string(line) + ": cell '" + cell + "' is not a nonnegative integer");
  }
  return std::stoi(cell);
}

}  // namespace detail

/// Parses "weight,h0,h1,...,hN" CSV. Structural problems (bad header,
/// non-integer cells, wrong cell count) throw parse_error; vectors that
/// parse but fail validation are returned as row errors.
inline std::vector<BatchRow> parse_hodge_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \r") == std::string::npos) continue;
    header = detail::split_csv_line(line);
    break;
  }
  if (header.empty()) throw parse_error("CSV: missing header");
  if (header[0] != "weight" || header.size() < 2) throw parse_error("CSV: header must start with 'weight,h0'");
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] != "h" + std::to_string(i - 1)) {
      throw parse_error("CSV: header column " + std::to_string(i + 1) + " must be 'h" + std::to_string(i - 1) + "'");
    }
  }
  const std::size_t max_numbers = header.size() - 1;

  std::vector<BatchRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \r") == std::string::npos) continue;
    auto cells = detail::split_csv_line(line);
    if (cells.size() > header.size()) throw parse_error("CSV line " + std::to_string(line_no) + ": too many cells");
    const int weight = detail::parse_cell(cells[0], line_no);
    const auto needed = static_cast<std::size_t>(weight) + 1;
    if (needed > max_numbers) {
      throw parse_error("CSV line " + std::to_string(line_no) + ": weight " + std::to_string(weight) +
                        " exceeds the header's columns");
    }
    if (cells.size() < needed + 1) throw parse_error("CSV line " + std::to_string(line_no) + ": missing Hodge numbers");
    std::vector<int> numbers;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      if (i <= needed) {
        numbers.push_back(detail::parse_cell(cells[i], line_no));
      } else if (!cells[i].empty()) {
        throw parse_error("CSV line " + std::to_string(line_no) + ": values beyond h" + std::to_string(weight));
      }
    }
    BatchRow row;
    row.line = line_no;
    row.input = nilcurv::detail::join(numbers);
    try {
      HodgeVector h(weight, std::move(numbers));
      require_palindromic(h, "batch");
      row.hodge = std::move(h);
    } catch (const domain_error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string format_value(double x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

/// Left-aligned cell of at least `width` characters, always followed by a
/// space so long entries stay separated.
inline std::string cell(const std::string& text, std::size_t width) {
  return text + std::string(text.size() < width ? width - text.size() : 1, ' ');
}

inline std::string bound_table_header() {
  return cell("hodge", 22) + cell("conjugate", 22) + cell("sharp", 12) + cell("general", 12) + cell("group", 12) +
         "isotropy\n";
}

inline std::string bound_table_row(const BoundReport& r) {
  return cell(r.hodge.to_string(), 22) + cell(r.conjugate.to_string(), 22) + cell(r.sharp_bound.to_string(), 12) +
         cell(r.general_bound ? r.general_bound->to_string() : "-", 12) + cell(r.domain.group_name(), 12) +
         r.domain.isotropy_name() + "\n";
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv);

 private:
  std::ostream& sink() { return file_ ? *file_ : out_; }

  void open_output() {
    if (!out_path_.empty()) {
      file_ = std::make_unique<std::ofstream>(out_path_);
      if (!*file_) throw parse_error("cannot open output file '" + out_path_ + "'");
    }
  }

  std::uint64_t effective_seed() const {
    if (seed_) return *seed_;
    if (const char* env = std::getenv("NILCURV_SEED")) {
      try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (used == std::string(env).size()) return v;
      } catch (const std::exception&) {
      }
      throw parse_error(std::string("NILCURV_SEED='") + env + "' is not an unsigned integer");
    }
    return 0;
  }

  int cmd_partition();
  int cmd_composition();
  int cmd_constant();
  int cmd_verify();
  int cmd_minimize();
  int cmd_bound();
  int emit_bounds(const std::vector<BatchRow>& rows);

  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_;

  // Shared flags.
  Format format_ = Format::Text;
  std::string out_path_;
  std::optional<std::uint64_t> seed_;
  std::size_t samples_ = 10000;
  std::optional<double> tol_;

  // Subcommand inputs.
  std::string positional_;
  std::vector<std::string> positionals_;
  std::string partition_;
  std::string composition_;
  std::string k_nilpotent_;
  std::optional<int> entropy_;
  std::string length_scale_;
  std::string matrix_path_;
  std::string conjugate_by_ = "none";
  std::string batch_path_;
  unsigned workers_ = 1;
  int max_iterations_ = MinimizeOptions{}.max_iterations;
  int restarts_ = MinimizeOptions{}.restarts;
};

inline int Runner::cmd_partition() {
  const Partition p = Partition::parse(positional_);
  const Partition conj = conjugate_partition(p);
  const std::optional<Rational> c = p.is_degenerate() ? std::nullopt : std::optional<Rational>(c_constant(p));
  const std::string diagram = young_diagram(p);
  if (format_ == Format::Json) {
    sink() << json{{"partition", p.parts()},
                   {"conjugate", conj.parts()},
                   {"c_constant", c ? json(c->to_string()) : json(nullptr)},
                   {"diagram", diagram}}
                  .dump()
           << '\n';
  } else {
    sink() << "partition: " << p.to_string() << '\n'
           << "conjugate: " << conj.to_string() << '\n'
           << "C: " << (c ? c->to_string() : "undefined (degenerate)") << '\n'
           << "diagram:\n"
           << diagram;
  }
  return kOk;
}

inline int Runner::cmd_composition() {
  const Composition r = Composition::parse(positional_);
  const auto set_partition = conjugate_set_partition(r);
  const Partition rt = conjugate_composition(r);
  const std::optional<Rational> c = rt.is_degenerate() ? std::nullopt : std::optional<Rational>(c_constant(rt));
  std::optional<Rational> d;
  try {
    d = d_constant(r);
  } catch (const degenerate_error&) {
  }
  const std::string diagram = generalized_young_diagram(r);
  if (format_ == Format::Json) {
    sink() << json{{"composition", r.entries()},
                   {"set_partition", set_partition},
                   {"conjugate", rt.parts()},
                   {"c_conjugate", c ? json(c->to_string()) : json(nullptr)},
                   {"d_constant", d ? json(d->to_string()) : json(nullptr)},
                   {"diagram", diagram}}
                  .dump()
           << '\n';
  } else {
    sink() << "composition: " << r.to_string() << '\n'
           << "diagram:\n"
           << diagram << "set partition: " << format_set_partition(set_partition) << '\n'
           << "conjugate: " << rt.to_string() << '\n'
           << "C_Rt: " << (c ? c->to_string() : "undefined (degenerate)") << '\n'
           << "D: " << (d ? d->to_string() : "undefined (degenerate)") << '\n';
  }
  return kOk;
}

inline int Runner::cmd_constant() {
  const int chosen = !partition_.empty() + !composition_.empty() + !k_nilpotent_.empty() + entropy_.has_value() +
                     !length_scale_.empty() + !positional_.empty();
  if (chosen != 1) throw CLI::ValidationError("constant", "give exactly one of PARTITION, --partition, --composition, "
                                                          "--k-nilpotent, --entropy, --length-scale");
  json j;
  std::string text;
  if (!partition_.empty() || !positional_.empty()) {
    const Partition p = Partition::parse(partition_.empty() ? positional_ : partition_);
    const Rational c = c_constant(p);
    j = {{"partition", p.parts()}, {"c_constant", c.to_string()}, {"value", c.to_double()}};
    text = "C: " + c.to_string() + "\n";
  } else if (!composition_.empty()) {
    const Composition r = Composition::parse(composition_);
    const Rational d = d_constant(r);
    const Partition rt = conjugate_composition(r);
    const std::optional<Rational> c = rt.is_degenerate() ? std::nullopt : std::optional<Rational>(c_constant(rt));
    j = {{"composition", r.entries()},
         {"d_constant", d.to_string()},
         {"conjugate", rt.parts()},
         {"c_conjugate", c ? json(c->to_string()) : json(nullptr)}};
    text = "D: " + d.to_string() + "\nC_Rt: " + (c ? c->to_string() : "undefined (degenerate)") + "\n";
  } else if (!k_nilpotent_.empty()) {
    const auto nk = nilcurv::detail::parse_int_list(k_nilpotent_, "--k-nilpotent");
    if (nk.size() != 2) throw parse_error("--k-nilpotent expects 'n,k'");
    const Rational b = k_nilpotent_bound(nk[0], nk[1]);
    j = {{"n", nk[0]}, {"k", nk[1]}, {"bound", b.to_string()}, {"value", b.to_double()}};
    text = "bound: " + b.to_string() + "\n";
  } else if (entropy_) {
    const Rational sq = entropy_lower_bound_squared(*entropy_);
    j = {{"n", *entropy_}, {"entropy_lower_bound_squared", sq.to_string()}, {"value", entropy_lower_bound(*entropy_)}};
    text = "entropy >= sqrt(" + sq.to_string() + ") = " + format_value(entropy_lower_bound(*entropy_)) + "\n";
  } else {
    const Partition p = Partition::parse(length_scale_);
    const Rational sq = length_scale_squared(p);
    j = {{"partition", p.parts()}, {"length_scale_squared", sq.to_string()}, {"value", length_scale(p)}};
    text = "length scale: sqrt(" + sq.to_string() + ") = " + format_value(length_scale(p)) + "\n";
  }
  if (format_ == Format::Json) {
    sink() << j.dump() << '\n';
  } else {
    sink() << text;
  }
  return kOk;
}

inline int Runner::cmd_verify() {
  if (partition_.empty() == composition_.empty()) {
    throw CLI::ValidationError("verify", "give exactly one of --partition or --composition");
  }
  const InequalitySpec spec = partition_.empty() ? InequalitySpec(Composition::parse(composition_))
                                                 : InequalitySpec(Partition::parse(partition_));
  VerifyOptions opts;
  opts.samples = samples_;
  opts.seed = effective_seed();
  opts.workers = workers_;
  if (tol_) opts.slack = *tol_;
  opts.progress = [this](std::size_t done, std::size_t total, double min_k) {
    err_ << "sample " << done << "/" << total << " min=" << format_value(min_k) << '\n';
  };
  const VerificationReport report = verify_inequality(spec, opts);
  if (format_ == Format::Json || !out_path_.empty()) {
    sink() << to_json(report).dump(2) << '\n';
  } else {
    sink() << report.spec_kind << ": " << report.spec << '\n'
           << "bound: " << report.bound.to_string() << '\n'
           << "samples: " << report.samples << '\n'
           << "seed: " << report.seed << '\n'
           << "min observed: " << format_value(report.min_observed) << '\n'
           << "worst margin: " << format_value(report.worst_margin) << '\n'
           << "violations: " << report.violations << '\n';
  }
  return report.violations == 0 ? kOk : kVerificationFailed;
}

inline int Runner::cmd_minimize() {
  if (partition_.empty() == matrix_path_.empty()) {
    throw CLI::ValidationError("minimize", "give exactly one of --partition or --matrix");
  }
  const std::uint64_t seed = effective_seed();
  ComplexMatrix a;
  if (!partition_.empty()) {
    const Partition p = Partition::parse(partition_);
    if (p.is_degenerate()) throw degenerate_error("minimize: (" + p.to_string() + ") gives the zero matrix");
    a = standard_nilpotent(p);
    if (conjugate_by_ == "random") {
      Rng rng = stream_for(seed, 1);
      a = conjugate_by(random_conjugator(a.rows(), rng), a);
    }
  } else {
    std::ifstream in(matrix_path_);
    if (!in) throw parse_error("cannot open matrix file '" + matrix_path_ + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw parse_error("matrix file '" + matrix_path_ + "': " + e.what());
    }
    a = matrix_from_json(j);
  }
  MinimizeOptions opts;
  opts.seed = seed;
  opts.max_iterations = max_iterations_;
  opts.restarts = restarts_;
  if (tol_) {
    if (!(*tol_ > 0.0)) throw CLI::ValidationError("--tol", "must be positive for minimize");
    opts.gradient_tolerance = *tol_;
  }
  const MinimizeResult r = minimize_k_over_orbit(a, opts);
  if (format_ == Format::Json) {
    sink() << to_json(r).dump() << '\n';
  } else {
    sink() << "jordan type: " << r.jordan_type.to_string() << '\n'
           << "min estimate: " << format_value(r.min_estimate) << '\n'
           << "target C: " << r.target.to_string() << " (" << format_value(r.target.to_double()) << ")\n"
           << "gap: " << format_value(r.min_estimate - r.target.to_double()) << '\n'
           << "rigidity residual: " << format_value(r.rigidity.residual) << '\n'
           << "a_est: " << format_value(r.rigidity.a_est) << '\n'
           << "iterations: " << r.iterations << '\n'
           << "converged: " << (r.converged ? "yes" : "no") << '\n';
  }
  return r.converged ? kOk : kNotConverged;
}

inline int Runner::emit_bounds(const std::vector<BatchRow>& rows) {
  if (format_ == Format::Text) sink() << bound_table_header();
  for (const BatchRow& row : rows) {
    std::string error = row.error;
    std::optional<BoundReport> report;
    if (row.hodge) {
      try {
        report = make_bound_report(*row.hodge);
      } catch (const domain_error& e) {
        error = e.what();
      }
    }
    if (report) {
      if (format_ == Format::Json) {
        sink() << to_json(*report).dump() << '\n';
      } else {
        sink() << bound_table_row(*report);
      }
    } else {
      if (format_ == Format::Json) {
        sink() << json{{"line", row.line}, {"input", row.input}, {"error", error}}.dump() << '\n';
      } else {
        sink() << cell(row.input, 22) << "error: " << error << '\n';
      }
    }
  }
  return kOk;
}

inline int Runner::cmd_bound() {
  if (!batch_path_.empty()) {
    if (!positionals_.empty()) throw CLI::ValidationError("bound", "give Hodge vectors or --batch, not both");
    std::ifstream in(batch_path_);
    if (!in) throw parse_error("cannot open batch file '" + batch_path_ + "'");
    return emit_bounds(parse_hodge_csv(in));
  }
  if (positionals_.empty()) throw CLI::ValidationError("bound", "give at least one Hodge vector or --batch FILE");
  std::vector<BatchRow> rows;
  for (std::size_t i = 0; i < positionals_.size(); ++i) {
    BatchRow row;
    row.line = i + 1;
    row.input = positionals_[i];
    try {
      HodgeVector h = HodgeVector::parse(positionals_[i]);
      require_palindromic(h, "bound");
      row.hodge = std::move(h);
    } catch (const parse_error&) {
      throw;
    } catch (const domain_error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  // A single vector with an error is a usage error rather than a batch row.
  if (rows.size() == 1 && !rows[0].hodge) throw domain_error(rows[0].error);
  if (rows.size() == 1) make_bound_report(*rows[0].hodge);
  return emit_bounds(rows);
}

inline int Runner::run(int argc, const char* const* argv) {
  CLI::App app{"Nilpotent orbit constants, Ness minima and Hodge curvature bounds", "nilcurv"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format_, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", out_path_, "Write output to this file");
    sub->add_option("--seed", seed_, "Random seed (fallback: NILCURV_SEED, then 0)");
    sub->add_option("--samples", samples_, "Sample count")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", tol_, "Tolerance override (verify: slack, may be negative)")->check(CLI::Number);
  };

  auto* partition = app.add_subcommand("partition", "Conjugate, C constant and Young diagram of a partition");
  partition->add_option("partition", positional_, "e.g. 6,4,2,1")->required();
  common(partition);

  auto* composition = app.add_subcommand("composition", "Generalized Young diagram, R^t, C_{R^t} and D_R");
  composition->add_option("composition", positional_, "e.g. 2,4,2,4,3,2")->required();
  common(composition);

  auto* constant = app.add_subcommand("constant", "Exact constants C, D, k-nilpotent bound, entropy, length scale");
  constant->add_option("value", positional_, "Partition for C");
  constant->add_option("--partition", partition_, "C_lambda");
  constant->add_option("--composition", composition_, "D_R and C_{R^t}");
  constant->add_option("--k-nilpotent", k_nilpotent_, "n,k: bound for k-nilpotent fields of rank n");
  constant->add_option("--entropy", entropy_, "Rank n: entropy floor sqrt(6/(n(n^2-1)))");
  constant->add_option("--length-scale", length_scale_, "Partition: stretch factor sqrt(2/C)");
  common(constant);

  auto* verify = app.add_subcommand("verify", "Monte Carlo check of K >= C over random samples");
  verify->add_option("--partition", partition_, "Check K >= C_lambda on conjugates of X^mu, mu <= lambda");
  verify->add_option("--composition", composition_, "Check K >= C_{R^t} on random type-R matrices");
  verify->add_option("--workers", workers_, "Worker threads")->check(CLI::PositiveNumber);
  common(verify);

  auto* minimize = app.add_subcommand("minimize", "Minimize K over an adjoint orbit");
  minimize->add_option("--partition", partition_, "Start at X^lambda");
  minimize->add_option("--conjugate-by", conjugate_by_, "none or random")->check(CLI::IsMember({"none", "random"}));
  minimize->add_option("--matrix", matrix_path_, "JSON matrix file {n, re, im}");
  minimize->add_option("--max-iterations", max_iterations_)->check(CLI::PositiveNumber);
  minimize->add_option("--restarts", restarts_)->check(CLI::PositiveNumber);
  common(minimize);

  auto* bound = app.add_subcommand("bound", "Curvature bounds for Hodge numbers (h^{k,0},...,h^{0,k})");
  bound->add_option("hodge", positionals_, "e.g. 1,4,4,1");
  bound->add_option("--batch", batch_path_, "CSV file with header weight,h0,h1,...");
  common(bound);

  auto* batch = app.add_subcommand("batch", "Curvature bounds for every row of a Hodge-number CSV");
  batch->add_option("file", batch_path_, "CSV file with header weight,h0,h1,...")->required();
  common(batch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out_ << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    open_output();
    if (partition->parsed()) return cmd_partition();
    if (composition->parsed()) return cmd_composition();
    if (constant->parsed()) return cmd_constant();
    if (verify->parsed()) return cmd_verify();
    if (minimize->parsed()) return cmd_minimize();
    if (bound->parsed() || batch->parsed()) return cmd_bound();
  } catch (const CLI::ValidationError& e) {
    err_ << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << '\n';
  }
  return kUsage;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return Runner(out, err).run(argc, argv);
}

}  // namespace nilcurv::cli
