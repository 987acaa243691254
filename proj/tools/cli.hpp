#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mellinium/strip.hpp"

namespace mellinium::cli {

/// One emitted evaluation. value is empty for skipped points and for
/// operations without a scalar result (strip inference).
struct ResultRecord {
  std::string operation;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::optional<Complex> alpha;
  std::optional<Complex> value;
  double error_estimate = 0.0;
  std::optional<FundamentalStrip> strip;
  std::string normalization = "none";
  bool skipped = false;

  bool operator==(const ResultRecord&) const = default;
};

/// %.17g: fixed, round-trip exact, locale independent.
std::string format_number(double v);

std::string to_json_line(const ResultRecord& r);
ResultRecord record_from_json(const std::string& line);
std::string csv_header();
std::string to_csv_row(const ResultRecord& r);

/// "re[,im]" or "re+imj" forms.
Complex parse_complex(const std::string& text);
/// "re_start:re_stop:count[,im]", endpoints included.
std::vector<Complex> parse_alpha_grid(const std::string& text);
/// Comma list; a token "a..b" expands to the integers a, a+1, ..., b.
std::vector<double> parse_list(const std::string& text);
/// First line d, then d rows of d complex entries "re+imj".
Eigen::MatrixXcd parse_matrix(const std::string& text);
Eigen::MatrixXcd read_matrix_file(const std::string& path);

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success, 1 usage or validation error, 2 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mellinium::cli
