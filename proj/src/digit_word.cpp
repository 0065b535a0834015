#include "betadim/digit_word.hpp"

#include <algorithm>
#include <stdexcept>

namespace betadim {

DigitWord::DigitWord(std::initializer_list<int> ds) {
  digits.reserve(ds.size());
  for (int d : ds) push_back(d);
}

void DigitWord::push_back(int d) {
  if (d < 0 || d > 255) throw std::invalid_argument("digit out of range");
  digits.push_back(static_cast<std::uint8_t>(d));
}

DigitWord DigitWord::prefix(std::size_t n) const {
  n = std::min(n, digits.size());
  return DigitWord(std::vector<std::uint8_t>(digits.begin(), digits.begin() + n));
}

DigitWord DigitWord::suffix_from(std::size_t k) const {
  k = std::min(k, digits.size());
  return DigitWord(std::vector<std::uint8_t>(digits.begin() + k, digits.end()));
}

std::string DigitWord::str() const {
  std::string s;
  s.reserve(digits.size());
  for (std::uint8_t d : digits) {
    if (d <= 9) {
      s.push_back(static_cast<char>('0' + d));
    } else {
      // digits above 9 are bracketed so the string stays parseable
      s.push_back('[');
      s += std::to_string(static_cast<int>(d));
      s.push_back(']');
    }
  }
  return s;
}

DigitWord DigitWord::parse(std::string_view s) {
  DigitWord w;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      w.push_back(c - '0');
      ++i;
    } else if (c == '[') {
      std::size_t j = s.find(']', i);
      if (j == std::string_view::npos)
        throw std::invalid_argument("unterminated digit bracket");
      int v = 0;
      for (std::size_t k = i + 1; k < j; ++k) {
        if (s[k] < '0' || s[k] > '9')
          throw std::invalid_argument("bad bracketed digit");
        v = v * 10 + (s[k] - '0');
      }
      w.push_back(v);
      i = j + 1;
    } else {
      throw std::invalid_argument("bad character in digit word");
    }
  }
  return w;
}

DigitWord DigitWord::zeros(std::size_t n) {
  return DigitWord(std::vector<std::uint8_t>(n, 0));
}

DigitWord DigitWord::repeat(const DigitWord& period, std::size_t n) {
  if (period.empty()) throw std::invalid_argument("empty period");
  DigitWord w;
  w.digits.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    w.digits.push_back(period.digits[i % period.size()]);
  return w;
}

int lex_compare(const DigitWord& u, const DigitWord& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("lex_compare: length mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.digits[i] != v.digits[i]) return u.digits[i] < v.digits[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace betadim
