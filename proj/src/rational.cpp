#include "ctrlsel/rational.hpp"

#include <cctype>

#include "ctrlsel/error.hpp"

namespace ctrlsel {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidSystem: return "InvalidSystem";
    case Errc::InfeasibleSystem: return "InfeasibleSystem";
    case Errc::ZeroMaxCost: return "ZeroMaxCost";
    case Errc::NonIntegralSolution: return "NonIntegralSolution";
    case Errc::CertificateFailure: return "CertificateFailure";
    case Errc::GroupingViolation: return "GroupingViolation";
    case Errc::TooLarge: return "TooLarge";
    case Errc::GenerationExhausted: return "GenerationExhausted";
    case Errc::Unbounded: return "Unbounded";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::string to_decimal(const Rational& q, int digits) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational scaled = abs(q) * scale;
  // round half away from zero
  mpz_class units = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string body = units.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (q < 0 && units != 0) body.insert(0, "-");
  return body;
}

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view num_digits = num;
  if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) {
    num_digits.remove_prefix(1);
  }
  if (!is_digits(num_digits) || !is_digits(den)) {
    throw Error(Errc::Parse, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(Errc::Parse, "zero denominator in '" + std::string(text) + "'");
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace ctrlsel
