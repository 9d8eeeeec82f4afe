#include "swstat/halstead.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

#include "swstat/error.hpp"

namespace swstat::halstead {
namespace {

// Keywords count as operators, except those that denote values.
const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> kw = {
      "alignas", "alignof", "asm", "auto", "bool", "break", "case", "catch", "char",
      "char8_t", "char16_t", "char32_t", "class", "co_await", "co_return", "co_yield",
      "concept", "const", "consteval", "constexpr", "constinit", "const_cast", "continue",
      "decltype", "default", "delete", "do", "double", "dynamic_cast", "else", "enum",
      "explicit", "export", "extern", "float", "for", "friend", "goto", "if", "inline", "int",
      "long", "mutable", "namespace", "new", "noexcept", "operator", "private", "protected",
      "public", "register", "reinterpret_cast", "requires", "restrict", "return", "short",
      "signed", "sizeof", "static", "static_assert", "static_cast", "struct", "switch",
      "template", "thread_local", "throw", "try", "typedef", "typeid", "typename", "union",
      "unsigned", "using", "virtual", "void", "volatile", "wchar_t", "while", "_Alignas",
      "_Alignof", "_Atomic", "_Bool", "_Complex", "_Generic", "_Imaginary", "_Noreturn",
      "_Static_assert", "_Thread_local", "and", "and_eq", "bitand", "bitor", "compl", "not",
      "not_eq", "or", "or_eq", "xor", "xor_eq"};
  return kw;
}

// Longest first so that matching is maximal munch.
constexpr std::array<std::string_view, 49> kPunctuators = {
    "<=>", "<<=", ">>=", "->*", "...", "::", "->", ".*", "++", "--", "<<", ">>", "<=",
    ">=",  "==",  "!=",  "&&",  "||",  "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "##",  "+",   "-",   "*",   "/",   "%",  "=",  "<",  ">",  "!",  "~",  "&",  "|",
    "^",   "?",   ":",   ";",   ",",   ".",  "#",  "(",  "[",  "{"};

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}
bool is_ident_char(unsigned char c) { return is_ident_start(c) || std::isdigit(c); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) step();
    return std::move(tokens_);
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t count = 1) {
    for (std::size_t i = 0; i < count && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        line_start_ = true;
      }
    }
  }

  [[noreturn]] void fail(std::string_view what, std::size_t line) const {
    throw InputError("line " + std::to_string(line) + ": unterminated " + std::string(what));
  }

  void emit(std::size_t begin, TokenClass cls, std::size_t line) {
    tokens_.push_back({std::string(src_.substr(begin, pos_ - begin)), cls, line});
    line_start_ = false;
  }

  void step() {
    const char c = peek();
    if (c == '\n' || c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      advance();
      return;
    }
    if (c == '\\' && (peek(1) == '\n' || (peek(1) == '\r' && peek(2) == '\n'))) {
      advance(peek(1) == '\n' ? 2 : 3);
      return;
    }
    if (c == '/' && peek(1) == '/') {
      skip_line_comment();
      return;
    }
    if (c == '/' && peek(1) == '*') {
      skip_block_comment();
      return;
    }
    if (c == '#' && line_start_) {
      skip_directive();
      return;
    }
    if (c == '"' || c == '\'') {
      quoted(pos_);
      return;
    }
    if (is_ident_start(static_cast<unsigned char>(c))) {
      identifier();
      return;
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
      number();
      return;
    }
    punctuator();
  }

  void skip_line_comment() {
    // A backslash-newline continues a line comment.
    while (pos_ < src_.size()) {
      if (peek() == '\\' && peek(1) == '\n') {
        advance(2);
        continue;
      }
      if (peek() == '\n') return;
      advance();
    }
  }

  void skip_block_comment() {
    const std::size_t start_line = line_;
    const bool was_line_start = line_start_;
    advance(2);
    while (pos_ < src_.size()) {
      if (peek() == '*' && peek(1) == '/') {
        advance(2);
        // A comment alone does not end "start of line" for directive detection.
        if (line_ == start_line) line_start_ = was_line_start;
        return;
      }
      advance();
    }
    fail("block comment", start_line);
  }

  void skip_directive() {
    while (pos_ < src_.size()) {
      if (peek() == '\\' && peek(1) == '\n') {
        advance(2);
        continue;
      }
      if (peek() == '\\' && peek(1) == '\r' && peek(2) == '\n') {
        advance(3);
        continue;
      }
      if (peek() == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      if (peek() == '/' && peek(1) == '/') {
        skip_line_comment();
        continue;
      }
      if (peek() == '\n') return;
      advance();
    }
  }

  // Ordinary string or character literal; `begin` may precede an encoding prefix.
  void quoted(std::size_t begin) {
    const std::size_t start_line = line_;
    const char quote = peek();
    const std::string_view what = quote == '"' ? "string literal" : "character literal";
    advance();
    while (true) {
      if (pos_ >= src_.size() || peek() == '\n') fail(what, start_line);
      const char c = peek();
      if (c == '\\') {
        advance(2);
        continue;
      }
      advance();
      if (c == quote) break;
    }
    emit(begin, TokenClass::operand, start_line);
  }

  void raw_string(std::size_t begin) {
    const std::size_t start_line = line_;
    advance();  // opening quote
    const std::size_t delim_begin = pos_;
    while (pos_ < src_.size() && peek() != '(') {
      if (peek() == '\n' || peek() == '"' || pos_ - delim_begin > 16) fail("raw string literal", start_line);
      advance();
    }
    if (pos_ >= src_.size()) fail("raw string literal", start_line);
    const std::string closing =
        ")" + std::string(src_.substr(delim_begin, pos_ - delim_begin)) + "\"";
    const std::size_t end = src_.find(closing, pos_);
    if (end == std::string_view::npos) fail("raw string literal", start_line);
    advance(end + closing.size() - pos_);
    emit(begin, TokenClass::operand, start_line);
  }

  void identifier() {
    const std::size_t begin = pos_;
    const std::size_t line = line_;
    while (is_ident_char(static_cast<unsigned char>(peek()))) advance();
    const std::string_view word = src_.substr(begin, pos_ - begin);

    if (peek() == '"' && (word == "R" || word == "u8R" || word == "uR" || word == "UR" ||
                          word == "LR")) {
      raw_string(begin);
      return;
    }
    if ((peek() == '"' || peek() == '\'') &&
        (word == "u8" || word == "u" || word == "U" || word == "L")) {
      quoted(begin);
      return;
    }
    const bool value_word = word == "true" || word == "false" || word == "nullptr" || word == "this";
    const bool keyword = !value_word && keywords().contains(word);
    emit(begin, keyword ? TokenClass::op : TokenClass::operand, line);
  }

  // Preprocessing-number rule: digits, letters, '.', digit separators and
  // signs directly after an exponent letter.
  void number() {
    const std::size_t begin = pos_;
    const std::size_t line = line_;
    advance();
    while (pos_ < src_.size()) {
      const char c = peek();
      const char prev = src_[pos_ - 1];
      if ((c == '+' || c == '-') &&
          (prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P')) {
        advance();
      } else if (c == '\'' && is_ident_char(static_cast<unsigned char>(peek(1)))) {
        advance();
      } else if (is_ident_char(static_cast<unsigned char>(c)) || c == '.') {
        advance();
      } else {
        break;
      }
    }
    emit(begin, TokenClass::operand, line);
  }

  void punctuator() {
    const std::size_t begin = pos_;
    const std::size_t line = line_;
    const char c = peek();
    if (c == ')' || c == ']' || c == '}') {
      advance();
      emit(begin, TokenClass::op, line);
      return;
    }
    for (std::string_view p : kPunctuators) {
      if (src_.substr(pos_, p.size()) == p) {
        advance(p.size());
        emit(begin, TokenClass::op, line);
        return;
      }
    }
    // Stray characters ('@', '$', a lone backslash, ...) still form one token.
    advance();
    emit(begin, TokenClass::op, line);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  bool line_start_ = true;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

TokenCounts halstead_counts(const std::vector<Token>& tokens) {
  std::set<std::string_view> operators;
  std::set<std::string_view> operands;
  TokenCounts c;
  for (const auto& t : tokens) {
    if (t.cls == TokenClass::operand) {
      operands.insert(t.text);
      ++c.N2;
      continue;
    }
    std::string_view spelling = t.text;
    if (spelling == ")" || spelling == "]" || spelling == "}") continue;
    if (spelling == "(") spelling = "()";
    if (spelling == "[") spelling = "[]";
    if (spelling == "{") spelling = "{}";
    operators.insert(spelling);
    ++c.N1;
  }
  c.n1 = operators.size();
  c.n2 = operands.size();
  return c;
}

HalsteadMeasures halstead_measures(const TokenCounts& c) {
  HalsteadMeasures m;
  m.vocabulary = c.n1 + c.n2;
  m.length = c.N1 + c.N2;
  if (c.n2 == 0 || m.vocabulary == 0) throw AnalysisError("degenerate counts");
  m.volume = static_cast<double>(m.length) * std::log2(static_cast<double>(m.vocabulary));
  m.difficulty = (static_cast<double>(c.n1) / 2.0) *
                 (static_cast<double>(c.N2) / static_cast<double>(c.n2));
  m.effort = m.difficulty * m.volume;
  return m;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "halstead_n1",     "halstead_n2",         "halstead_N1",    "halstead_N2",
      "halstead_volume", "halstead_difficulty", "halstead_effort"};
  return names;
}

std::vector<Record> extract_file(std::string_view source, std::string_view version,
                                 std::string_view package, std::string_view entity) {
  const std::string where(entity);
  TokenCounts counts;
  HalsteadMeasures m;
  try {
    counts = halstead_counts(tokenize(source));
    m = halstead_measures(counts);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  } catch (const AnalysisError& e) {
    throw AnalysisError(where + ": " + e.what());
  }
  const std::array<double, 7> values = {
      static_cast<double>(counts.n1), static_cast<double>(counts.n2),
      static_cast<double>(counts.N1), static_cast<double>(counts.N2),
      m.volume,                       m.difficulty,
      m.effort};
  std::vector<Record> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({std::string(version), std::string(package), where, metric_names()[i], values[i]});
  }
  return out;
}

}  // namespace swstat::halstead
