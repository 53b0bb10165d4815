#include "scalar.hpp"

#include <sstream>

namespace invconn {

std::string Scalar::str() const {
  std::ostringstream os;
  if (exact_) {
    if (im_ == 0) {
      os << re_;
    } else if (re_ == 0) {
      os << im_ << "i";
    } else {
      os << re_ << (im_ > 0 ? "+" : "") << im_ << "i";
    }
  } else {
    if (fl_.imag() == 0.0) {
      os << fl_.real();
    } else {
      os << fl_.real() << (fl_.imag() >= 0 ? "+" : "") << fl_.imag() << "i";
    }
  }
  return os.str();
}

Rational parse_rational(const std::string& text) {
  // cpp_rational's own parser accepts "p/q" and "p" but also tolerates
  // whitespace oddly; validate the shape first for crisp diagnostics.
  auto bad = [&]() -> Rational {
    fail(ErrorKind::Parse, "invalid rational literal '" + text + "'");
  };
  if (text.empty()) return bad();
  std::size_t pos = 0;
  auto digits = [&](bool sign_ok) {
    if (sign_ok && pos < text.size() && (text[pos] == '+' || text[pos] == '-'))
      ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    return pos > start;
  };
  if (!digits(true)) return bad();
  if (pos != text.size()) {
    if (text[pos] != '/') return bad();
    ++pos;
    if (!digits(false) || pos != text.size()) return bad();
  }
  try {
    Rational r(text);
    return r;
  } catch (const std::exception&) {
    return bad();
  }
}

}  // namespace invconn
