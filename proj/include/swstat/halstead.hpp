#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "swstat/dataset.hpp"

namespace swstat::halstead {

enum class TokenClass { op, operand };

struct Token {
  std::string text;
  TokenClass cls = TokenClass::op;
  std::size_t line = 1;
};

/// Lexes C-family source. Comments, whitespace and preprocessor lines produce
/// no tokens; a string or character literal is a single operand token.
/// Throws InputError("line N: unterminated ...") for an unclosed block comment
/// or literal.
[[nodiscard]] std::vector<Token> tokenize(std::string_view source);

struct TokenCounts {
  std::size_t n1 = 0;  // distinct operators
  std::size_t n2 = 0;  // distinct operands
  std::size_t N1 = 0;  // total operators
  std::size_t N2 = 0;  // total operands

  bool operator==(const TokenCounts&) const = default;
};

/// Bracket pairs count as one operator occurrence ("()", "[]", "{}") per opener;
/// closers are not counted.
[[nodiscard]] TokenCounts halstead_counts(const std::vector<Token>& tokens);

struct HalsteadMeasures {
  std::size_t vocabulary = 0;
  std::size_t length = 0;
  double volume = 0.0;
  double difficulty = 0.0;
  double effort = 0.0;
};

/// Throws AnalysisError("degenerate counts") when there are no operands.
[[nodiscard]] HalsteadMeasures halstead_measures(const TokenCounts& counts);

/// Metric names emitted by extract_file, in emission order.
[[nodiscard]] const std::vector<std::string>& metric_names();

/// Seven halstead_* records for one file. Errors are prefixed with the entity.
[[nodiscard]] std::vector<Record> extract_file(std::string_view source, std::string_view version,
                                               std::string_view package,
                                               std::string_view entity);

}  // namespace swstat::halstead
