#include "tslab/ordinal.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "tslab/errors.hpp"

namespace tslab {
namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal run() {
    skip_space();
    if (text_.substr(pos_) == "w1") return Ordinal::omega1();
    std::vector<Ordinal::Term> terms;
    while (true) {
      skip_space();
      terms.push_back(term());
      skip_space();
      if (pos_ == text_.size()) break;
      expect('+');
    }
    // "0" alone denotes the empty ordinal; zero terms elsewhere are malformed.
    if (terms.size() == 1 && terms.front().coefficient == 0) return Ordinal();
    for (const auto& t : terms)
      if (t.coefficient == 0) fail("zero term inside a sum");
    return Ordinal(std::move(terms));
  }

 private:
  Ordinal::Term term() {
    if (peek() == 'w') {
      ++pos_;
      std::uint32_t exponent = 1;
      std::uint32_t coefficient = 1;
      skip_space();
      if (peek() == '^') {
        ++pos_;
        skip_space();
        if (peek() == 'w') fail("exponents >= w are not supported (range is below w^w)");
        exponent = natural();
        skip_space();
      }
      if (peek() == '*') {
        ++pos_;
        skip_space();
        coefficient = natural();
        if (coefficient == 0) fail("coefficient must be positive");
      }
      if (exponent == 0) return {0, coefficient};
      return {exponent, coefficient};
    }
    return {0, natural()};
  }

  std::uint32_t natural() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    std::uint32_t value = 0;
    auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{}) fail("number out of range");
    return value;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("malformed ordinal '" + std::string(text_) + "': " + why + " at position " +
                     std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal::Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coefficient == 0) throw InputError("ordinal term with zero coefficient");
    if (i > 0 && terms_[i].exponent >= terms_[i - 1].exponent)
      throw InputError("ordinal terms must have strictly decreasing exponents (Cantor normal form)");
  }
}

Ordinal Ordinal::finite(std::uint32_t n) {
  if (n == 0) return Ordinal();
  return Ordinal({{0, n}});
}

Ordinal Ordinal::omega1() {
  Ordinal o;
  o.omega1_ = true;
  return o;
}

Ordinal Ordinal::monomial(std::uint32_t exponent, std::uint32_t coefficient) {
  return Ordinal({{exponent, coefficient}});
}

Ordinal Ordinal::parse(std::string_view text) { return OrdinalParser(text).run(); }

std::string Ordinal::to_string() const {
  if (omega1_) return "w1";
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += '+';
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent > 1) out += '^' + std::to_string(t.exponent);
    if (t.coefficient > 1) out += '*' + std::to_string(t.coefficient);
  }
  return out;
}

std::uint32_t Ordinal::finite_value() const {
  if (!is_finite()) throw InputError("ordinal " + to_string() + " is not finite");
  return terms_.empty() ? 0 : terms_.front().coefficient;
}

Ordinal::Kind Ordinal::classify() const {
  if (omega1_) return Kind::omega1;
  if (terms_.empty()) return Kind::zero;
  return terms_.back().exponent == 0 ? Kind::successor : Kind::limit;
}

Ordinal Ordinal::predecessor() const {
  if (classify() != Kind::successor) throw InputError("ordinal " + to_string() + " is not a successor");
  Ordinal result = *this;
  if (--result.terms_.back().coefficient == 0) result.terms_.pop_back();
  return result;
}

Ordinal Ordinal::successor() const {
  if (omega1_) throw InputError("w1 has no successor in the supported range");
  Ordinal result = *this;
  if (!result.terms_.empty() && result.terms_.back().exponent == 0) {
    if (result.terms_.back().coefficient == std::numeric_limits<std::uint32_t>::max())
      throw InputError("coefficient overflow");
    ++result.terms_.back().coefficient;
  } else {
    result.terms_.push_back({0, 1});
  }
  return result;
}

Ordinal Ordinal::fundamental_sequence(std::uint32_t n) const {
  if (classify() != Kind::limit) throw InputError("ordinal " + to_string() + " is not a limit ordinal");
  if (n == 0) throw InputError("fundamental sequence index must be >= 1");
  // xi = gamma + w^m, peeling one copy of the last term.
  Ordinal result = *this;
  const std::uint32_t m = result.terms_.back().exponent;
  if (--result.terms_.back().coefficient == 0) result.terms_.pop_back();
  if (m == 1) {
    result.terms_.push_back({0, n});
  } else {
    result.terms_.push_back({m - 1, n});
    result.terms_.push_back({0, 1});
  }
  return result;
}

bool operator<(const Ordinal& a, const Ordinal& b) {
  if (a.omega1_ || b.omega1_) return !a.omega1_ && b.omega1_;
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.exponent != y.exponent) return x.exponent < y.exponent;
    if (x.coefficient != y.coefficient) return x.coefficient < y.coefficient;
  }
  return a.terms_.size() < b.terms_.size();
}

std::size_t Ordinal::hash() const {
  std::size_t h = omega1_ ? 0x9e3779b97f4a7c15ULL : 0x12345678ULL;
  for (const auto& t : terms_) {
    h ^= (static_cast<std::size_t>(t.exponent) << 32 ^ t.coefficient) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

std::string to_string(Ordinal::Kind kind) {
  switch (kind) {
    case Ordinal::Kind::zero: return "zero";
    case Ordinal::Kind::successor: return "successor";
    case Ordinal::Kind::limit: return "limit";
    case Ordinal::Kind::omega1: return "omega1";
  }
  return "?";
}

}  // namespace tslab
