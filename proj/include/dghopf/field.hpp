#ifndef DGHOPF_FIELD_HPP
#define DGHOPF_FIELD_HPP

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dghopf {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

// Accepts "[-+]digits" only.
inline bool is_integer_literal(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

inline mpz_class parse_integer(const std::string& s) {
  if (!is_integer_literal(s)) throw FieldError("not an exact integer literal: \"" + s + "\"");
  std::string t = (s[0] == '+') ? s.substr(1) : s;
  return mpz_class(t, 10);
}

}  // namespace detail

/*
 * Exact rational number. Every value is kept in lowest terms with a
 * positive denominator, so equality is plain comparison of numerator
 * and denominator.
 */
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}
  Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw FieldError("zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  static Rational parse(std::string_view text) {
    std::string s = detail::trim(text);
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(detail::parse_integer(s));
    mpz_class n = detail::parse_integer(detail::trim(s.substr(0, slash)));
    std::string ds = detail::trim(s.substr(slash + 1));
    if (!ds.empty() && (ds[0] == '-' || ds[0] == '+'))
      throw FieldError("sign not allowed in denominator: \"" + s + "\"");
    mpz_class d = detail::parse_integer(ds);
    if (d == 0) throw FieldError("zero denominator: \"" + s + "\"");
    return Rational(n, d);
  }

  static std::string name() { return "rational"; }
  static unsigned long characteristic() { return 0; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational inverse() const {
    if (is_zero()) throw FieldError("inverse of zero");
    return Rational(mpq_class(1 / v_));
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw FieldError("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.str(); }

 private:
  mpq_class v_{0};
};

/*
 * Element of the prime field F_p. The modulus is process-wide; set it
 * with ModP::Scope for the duration of a computation.
 */
class ModP {
 public:
  class Scope {
   public:
    explicit Scope(std::uint32_t p) : saved_(modulus_) { set_modulus(p); }
    ~Scope() { modulus_ = saved_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    std::uint32_t saved_;
  };

  static void set_modulus(std::uint32_t p) {
    if (p < 2 || p > 0x7fffffffu) throw FieldError("modulus out of range");
    for (std::uint32_t q = 2; q * q <= p; ++q)
      if (p % q == 0) throw FieldError("modulus " + std::to_string(p) + " is not prime");
    modulus_ = p;
  }
  static std::uint32_t modulus() {
    if (modulus_ == 0) throw FieldError("prime field used without a modulus");
    return modulus_;
  }

  ModP() = default;
  ModP(long n) {
    long p = static_cast<long>(modulus());
    long r = n % p;
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }

  static ModP parse(std::string_view text) {
    std::string s = detail::trim(text);
    auto reduce = [](const mpz_class& z) {
      mpz_class r = z % mpz_class(static_cast<unsigned long>(modulus()));
      if (r < 0) r += modulus();
      ModP x;
      x.v_ = static_cast<std::uint32_t>(r.get_ui());
      return x;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return reduce(detail::parse_integer(s));
    ModP n = reduce(detail::parse_integer(detail::trim(s.substr(0, slash))));
    std::string ds = detail::trim(s.substr(slash + 1));
    if (!ds.empty() && (ds[0] == '-' || ds[0] == '+'))
      throw FieldError("sign not allowed in denominator: \"" + s + "\"");
    ModP d = reduce(detail::parse_integer(ds));
    if (d.is_zero()) throw FieldError("denominator vanishes mod " + std::to_string(modulus()) + ": \"" + s + "\"");
    return n / d;
  }

  static std::string name() { return "prime(" + std::to_string(modulus()) + ")"; }
  static unsigned long characteristic() { return modulus(); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::uint32_t value() const { return v_; }
  std::string str() const { return std::to_string(v_); }

  ModP inverse() const {
    if (is_zero()) throw FieldError("inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t p = modulus(), r = 1, b = v_;
    for (std::uint64_t e = p - 2; e; e >>= 1) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
    }
    ModP x;
    x.v_ = static_cast<std::uint32_t>(r);
    return x;
  }

  ModP& operator+=(const ModP& o) {
    std::uint64_t s = std::uint64_t(v_) + o.v_;
    if (s >= modulus()) s -= modulus();
    v_ = static_cast<std::uint32_t>(s);
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : static_cast<std::uint32_t>(std::uint64_t(v_) + modulus() - o.v_);
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    v_ = static_cast<std::uint32_t>(std::uint64_t(v_) * o.v_ % modulus());
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend ModP operator-(const ModP& a) { return ModP(0) - a; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }
  friend bool operator!=(const ModP& a, const ModP& b) { return a.v_ != b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const ModP& a) { return os << a.v_; }

 private:
  std::uint32_t v_ = 0;
  static inline std::uint32_t modulus_ = 0;
};

template <class K>
concept Field = requires(K a, K b, std::string_view s) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::convertible_to<K>;
  { a.str() } -> std::convertible_to<std::string>;
  { K::parse(s) } -> std::convertible_to<K>;
  { K::characteristic() } -> std::convertible_to<unsigned long>;
  K(1L);
};

// (-1)^e as a field element.
template <Field K>
K sign(long e) {
  return (e % 2 == 0) ? K(1) : K(-1);
}

}  // namespace dghopf

#endif
