#include "ratiolim/complex_literal.hpp"

#include <cctype>
#include <optional>

#include "ratiolim/error.hpp"

namespace ratiolim {

namespace {

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 3, "\xE2\x88\x92") == 0) {
      out.push_back('-');
      i += 2;
    } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      out.push_back(text[i]);
    }
  }
  return out;
}

class LiteralParser {
 public:
  LiteralParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  ExactComplex parse() {
    if (text_.empty()) fail("empty literal");
    const int first_sign = read_sign();
    std::optional<Rational> first = read_number();
    if (accept('i')) {
      expect_end();
      return {Rational(0), Rational(first_sign) * first.value_or(Rational(1))};
    }
    if (!first) fail("expected a number");
    Rational re = Rational(first_sign) * *first;
    if (at_end()) return {re, Rational(0)};

    if (peek() != '+' && peek() != '-') fail("expected '+' or '-' before the imaginary part");
    const int second_sign = read_sign();
    std::optional<Rational> second = read_number();
    if (!accept('i')) fail("expected 'i'");
    expect_end();
    return {re, Rational(second_sign) * second.value_or(Rational(1))};
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse_error, "parse error at position " + std::to_string(base_ + pos_) +
                                            ": " + what + " in '" + std::string(text_) + "'");
  }

  void expect_end() const {
    if (!at_end()) fail("unexpected trailing characters");
  }

  int read_sign() {
    if (accept('-')) return -1;
    accept('+');
    return 1;
  }

  std::optional<mpz_class> read_digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) return std::nullopt;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  std::optional<Rational> read_decimal() {
    const std::size_t start = pos_;
    std::optional<mpz_class> whole = read_digits();
    Rational value = whole ? Rational(*whole) : Rational(0);
    bool any = whole.has_value();
    if (accept('.')) {
      const std::size_t frac_start = pos_;
      std::optional<mpz_class> frac = read_digits();
      if (frac) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, pos_ - frac_start);
        value += Rational(*frac, scale);
        any = true;
      }
    }
    if (!any) {
      pos_ = start;
      return std::nullopt;
    }
    if (peek() == 'e' || peek() == 'E') {
      ++pos_;
      const int sign = read_sign();
      std::optional<mpz_class> exp = read_digits();
      if (!exp || !exp->fits_ulong_p() || exp->get_ui() > 4000) fail("bad exponent");
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, exp->get_ui());
      value = sign > 0 ? Rational(value * scale) : Rational(value / scale);
    }
    value.canonicalize();
    return value;
  }

  std::optional<Rational> read_number() {
    std::optional<Rational> num = read_decimal();
    if (!num) return std::nullopt;
    if (accept('/')) {
      std::optional<Rational> den = read_decimal();
      if (!den) fail("expected a denominator");
      if (sgn(*den) == 0) fail("zero denominator");
      *num /= *den;
    }
    return num;
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactComplex parse_complex_literal(std::string_view text) {
  const std::string norm = normalize(text);
  return LiteralParser(norm, 0).parse();
}

std::vector<ExactComplex> parse_complex_list(std::string_view text) {
  const std::string norm = normalize(text);
  std::vector<ExactComplex> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = norm.find(',', start);
    const std::size_t end = comma == std::string::npos ? norm.size() : comma;
    out.push_back(LiteralParser(std::string_view(norm).substr(start, end - start), start).parse());
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace ratiolim
