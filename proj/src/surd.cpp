#include "qsm/surd.hpp"

#include <cctype>
#include <sstream>

namespace qsm {

Rational parse_rational(const std::string& text) {
  // grammar: RAT := "p" | "p/q", p signed decimal integer, q positive decimal integer
  auto bad = [&] { fail(Errc::parse_error, "malformed rational literal '" + text + "'"); };
  if (text.empty()) bad();
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') ++i;
  std::size_t num_begin = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_begin) bad();
  std::size_t sign_skip = (text[0] == '+') ? 1 : 0;
  std::string num = text.substr(sign_skip, i - sign_skip);
  std::string den = "1";
  if (i < text.size()) {
    if (text[i] != '/') bad();
    ++i;
    std::size_t den_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_begin || i != text.size()) bad();
    den = text.substr(den_begin);
  }
  mpz_class n(num), d(den);
  if (d == 0) bad();
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

Surd Surd::make(Rational q, Rational s2, Rational s3, Rational s6) {
  Surd v;
  v.q_ = std::move(q);
  v.s2_ = std::move(s2);
  v.s3_ = std::move(s3);
  v.s6_ = std::move(s6);
  return v;
}

Surd& Surd::operator+=(const Surd& o) {
  q_ += o.q_;
  s2_ += o.s2_;
  s3_ += o.s3_;
  s6_ += o.s6_;
  return *this;
}

Surd& Surd::operator-=(const Surd& o) {
  q_ -= o.q_;
  s2_ -= o.s2_;
  s3_ -= o.s3_;
  s6_ -= o.s6_;
  return *this;
}

Surd& Surd::operator*=(const Surd& o) {
  // basis products: sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3,
  // sqrt3*sqrt6 = 3*sqrt2, sqrt6^2 = 6
  Rational q = q_ * o.q_ + 2 * s2_ * o.s2_ + 3 * s3_ * o.s3_ + 6 * s6_ * o.s6_;
  Rational s2 = q_ * o.s2_ + s2_ * o.q_ + 3 * (s3_ * o.s6_ + s6_ * o.s3_);
  Rational s3 = q_ * o.s3_ + s3_ * o.q_ + 2 * (s2_ * o.s6_ + s6_ * o.s2_);
  Rational s6 = q_ * o.s6_ + s6_ * o.q_ + s2_ * o.s3_ + s3_ * o.s2_;
  q_ = std::move(q);
  s2_ = std::move(s2);
  s3_ = std::move(s3);
  s6_ = std::move(s6);
  return *this;
}

Surd Surd::inverse() const {
  if (is_zero()) fail(Errc::division_by_zero, "inverse of zero surd");
  // a * conj2(a) lands in Q(sqrt3); one more conjugate-multiply lands in Q.
  Surd c2 = conj_sqrt2();
  Surd b = *this * c2;
  Surd c3 = b.conj_sqrt3();
  Surd n = b * c3;
  // n = q^2 - 3 s3^2 of b, a nonzero rational (field norm factor)
  Rational inv_n = 1 / n.q_;
  Surd out = c2 * c3;
  out.q_ *= inv_n;
  out.s2_ *= inv_n;
  out.s3_ *= inv_n;
  out.s6_ *= inv_n;
  return out;
}

namespace {

// sqrt2/sqrt3/sqrt6 at 256-bit precision, computed once
const mpf_class& mpf_sqrt2() {
  static const mpf_class v = sqrt(mpf_class(2, 256));
  return v;
}
const mpf_class& mpf_sqrt3() {
  static const mpf_class v = sqrt(mpf_class(3, 256));
  return v;
}
const mpf_class& mpf_sqrt6() {
  static const mpf_class v = sqrt(mpf_class(6, 256));
  return v;
}

mpf_class surd_to_mpf(const Surd& a) {
  mpf_class acc(0, 256);
  acc += mpf_class(a.q(), 256);
  acc += mpf_class(a.s2(), 256) * mpf_sqrt2();
  acc += mpf_class(a.s3(), 256) * mpf_sqrt3();
  acc += mpf_class(a.s6(), 256) * mpf_sqrt6();
  return acc;
}

void append_part(std::ostringstream& out, bool& first, const Rational& c, const char* radical) {
  if (c == 0) return;
  Rational a = c;
  if (first) {
    if (a < 0) {
      out << "-";
      a = -a;
    }
  } else {
    out << (a < 0 ? " - " : " + ");
    if (a < 0) a = -a;
  }
  if (!radical) {
    out << format_rational(a);
  } else if (a == 1) {
    out << radical;
  } else {
    out << format_rational(a) << "*" << radical;
  }
  first = false;
}

}  // namespace

double Surd::to_double() const { return surd_to_mpf(*this).get_d(); }

int Surd::sign() const {
  if (is_zero()) return 0;
  return sgn(surd_to_mpf(*this)) >= 0 ? 1 : -1;
}

std::string Surd::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  append_part(out, first, q_, nullptr);
  append_part(out, first, s2_, "sqrt2");
  append_part(out, first, s3_, "sqrt3");
  append_part(out, first, s6_, "sqrt6");
  return out.str();
}

std::optional<Surd> sqrt_if_exact(const Surd& a) {
  if (a.is_zero()) return Surd(0);
  if (a.sign() < 0) fail(Errc::negative_input, "square root of negative value " + a.str());
  if (!a.is_rational()) return std::nullopt;
  const Rational& r = a.q();
  if (auto c = rational_sqrt(r)) return Surd(*c);
  if (auto c = rational_sqrt(r / 2)) return Surd::make(0, *c, 0, 0);
  if (auto c = rational_sqrt(r / 3)) return Surd::make(0, 0, *c, 0);
  if (auto c = rational_sqrt(r / 6)) return Surd::make(0, 0, 0, *c);
  return std::nullopt;
}

}  // namespace qsm
