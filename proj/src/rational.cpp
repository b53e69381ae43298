// Copyright 2026 The anfcq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "anfcq/rational.hpp"

#include <cctype>

namespace anfcq {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, 1) / mpq_class(den, 1);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  auto fail = [&]() { return RationalParseError("not an exact rational: '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail();
    mpz_class d{std::string(den), 10};
    if (d == 0) throw RationalParseError("zero denominator in '" + std::string(text) + "'");
    mpq_class q{mpz_class{std::string(num), 10}, d};
    q.canonicalize();
    return Rational(negative ? mpq_class(-q) : q);
  }

  // Decimal form: digits[.digits][e[+-]digits]
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view ex = body.substr(e + 1);
    bool exneg = false;
    if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
      exneg = ex.front() == '-';
      ex.remove_prefix(1);
    }
    if (!all_digits(ex) || ex.size() > 6) throw fail();
    exponent = std::stol(std::string(ex));
    if (exneg) exponent = -exponent;
    body = body.substr(0, e);
  }
  std::string digits;
  if (auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot_pos), fp = body.substr(dot_pos + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw fail();
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(body)) throw fail();
    digits = std::string(body);
  }
  mpq_class q{mpz_class(digits, 10)};
  if (exponent > 0) q *= pow10(static_cast<unsigned long>(exponent));
  if (exponent < 0) q /= pow10(static_cast<unsigned long>(-exponent));
  q.canonicalize();
  return Rational(negative ? mpq_class(-q) : q);
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  mpq_class acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].raw() * b[i].raw();
  return Rational(acc);
}

RatVector operator+(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector add: dimension mismatch");
  RatVector r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sub: dimension mismatch");
  RatVector r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

RatVector operator*(const Rational& s, const RatVector& a) {
  RatVector r(a);
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(const RatVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

RatVector primitive_direction(const RatVector& v) {
  if (is_zero(v)) return v;
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class n = x.numerator() * (l / x.denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  RatVector out;
  out.reserve(v.size());
  for (auto& n : ints) out.emplace_back(mpz_class(n / g));
  return out;
}

std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace anfcq
