#include "csl/rational.hpp"

#include <cctype>

namespace csl {

Rational parse_rational(const std::string& text) {
  auto bad = [&] { throw input_error("malformed rational: '" + text + "'"); };
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  std::size_t num_begin = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_begin) bad();
  Integer num(text.substr(num_begin, i - num_begin));
  Integer den = 1;
  if (i < text.size()) {
    if (text[i] != '/') bad();
    ++i;
    std::size_t den_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_begin || i != text.size()) bad();
    den = Integer(text.substr(den_begin, i - den_begin));
    if (den == 0) bad();
  }
  Rational q(num, den);
  return neg ? Rational(-q) : q;
}

}  // namespace csl
