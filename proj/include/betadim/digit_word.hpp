#pragma once
// Finite digit strings for beta-expansions, most significant digit first.
// Digits live in the alphabet {0, ..., ceil(beta)-1} of the system in use;
// bounds are enforced by the admissibility checks, not the container.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace betadim {

struct DigitWord {
  std::vector<uint8_t> digits;

  DigitWord() = default;
  DigitWord(std::initializer_list<int> ds);
  explicit DigitWord(std::vector<uint8_t> ds) : digits(std::move(ds)) {}

  std::size_t size() const { return digits.size(); }
  bool empty() const { return digits.empty(); }
  uint8_t operator[](std::size_t i) const { return digits[i]; }

  void push_back(int d);
  DigitWord prefix(std::size_t n) const;
  DigitWord suffix_from(std::size_t k) const;  // drop the first k digits

  // "110" <-> {1,1,0}; parse accepts digits 0-9 only (alphabets here are small)
  std::string str() const;
  static DigitWord parse(std::string_view s);

  static DigitWord zeros(std::size_t n);
  // first n digits of period repeated forever
  static DigitWord repeat(const DigitWord& period, std::size_t n);

  bool operator==(const DigitWord&) const = default;
};

// Lexicographic order on equal-length words: -1 (less), 0 (equal), +1 (greater).
// Throws std::invalid_argument on length mismatch; callers truncate first.
int lex_compare(const DigitWord& u, const DigitWord& v);

}  // namespace betadim
