#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "petal/error.hpp"

namespace petal {

using BigInt = boost::multiprecision::cpp_int;

// Fixed-width integer that refuses to wrap. Any overflow throws
// OverflowDetected so callers can retry with BigInt.
template <typename T>
class Checked {
 public:
  constexpr Checked() = default;
  constexpr Checked(long long v) : v_(static_cast<T>(v)) {}  // NOLINT: implicit by intent

  constexpr T value() const noexcept { return v_; }

  friend Checked operator+(Checked a, Checked b) {
    T r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) overflow();
    return from_raw(r);
  }
  friend Checked operator-(Checked a, Checked b) {
    T r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) overflow();
    return from_raw(r);
  }
  friend Checked operator*(Checked a, Checked b) {
    T r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) overflow();
    return from_raw(r);
  }
  friend Checked operator/(Checked a, Checked b) {
    if (b.v_ == -1 && a.v_ == std::numeric_limits<T>::min()) overflow();
    return from_raw(a.v_ / b.v_);
  }
  friend Checked operator%(Checked a, Checked b) {
    if (b.v_ == -1) return from_raw(0);
    return from_raw(a.v_ % b.v_);
  }
  Checked operator-() const {
    if (v_ == std::numeric_limits<T>::min()) overflow();
    return from_raw(-v_);
  }
  Checked& operator+=(Checked o) { return *this = *this + o; }
  Checked& operator-=(Checked o) { return *this = *this - o; }
  Checked& operator*=(Checked o) { return *this = *this * o; }

  friend bool operator==(Checked a, Checked b) noexcept { return a.v_ == b.v_; }
  friend auto operator<=>(Checked a, Checked b) noexcept { return a.v_ <=> b.v_; }

  static Checked from_raw(T v) noexcept {
    Checked c;
    c.v_ = v;
    return c;
  }

 private:
  [[noreturn]] static void overflow() {
    throw Error(ErrorKind::OverflowDetected, "fixed-width coefficient overflow");
  }
  T v_ = 0;
};

using Checked64 = Checked<std::int64_t>;
using Checked128 = Checked<__int128>;

// Conversions between coefficient rings.
template <typename C>
struct CoeffTraits;

template <>
struct CoeffTraits<BigInt> {
  static BigInt to_big(const BigInt& c) { return c; }
  static BigInt from_big(const BigInt& c) { return c; }
};

template <typename T>
struct CoeffTraits<Checked<T>> {
  static BigInt to_big(Checked<T> c) {
    T v = c.value();
    if constexpr (sizeof(T) <= 8) {
      return BigInt(static_cast<long long>(v));
    } else {
      bool neg = v < 0;
      unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                  : static_cast<unsigned __int128>(v);
      BigInt r = BigInt(static_cast<std::uint64_t>(mag >> 64));
      r <<= 64;
      r += BigInt(static_cast<std::uint64_t>(mag));
      return neg ? BigInt(-r) : r;
    }
  }
  static Checked<T> from_big(const BigInt& b) {
    if constexpr (sizeof(T) <= 8) {
      if (b > BigInt(std::numeric_limits<T>::max()) ||
          b < BigInt(std::numeric_limits<T>::min()))
        throw Error(ErrorKind::OverflowDetected, "value does not fit fixed width");
      return Checked<T>::from_raw(static_cast<T>(b.convert_to<long long>()));
    } else {
      BigInt mag = b < 0 ? BigInt(-b) : b;
      if (msb_or_zero(mag) >= 127)
        throw Error(ErrorKind::OverflowDetected, "value does not fit fixed width");
      unsigned __int128 lo = static_cast<std::uint64_t>(mag & BigInt(~std::uint64_t{0}));
      unsigned __int128 hi = static_cast<std::uint64_t>(mag >> 64);
      T v = static_cast<T>((hi << 64) | lo);
      return Checked<T>::from_raw(b < 0 ? -v : v);
    }
  }

 private:
  static unsigned msb_or_zero(const BigInt& m) {
    return m == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(m));
  }
};

// Exact Laurent polynomial in one variable. Stored densely from the lowest
// nonzero exponent; the zero polynomial has no coefficients.
template <typename C>
class LaurentPolynomial {
 public:
  using coefficient_type = C;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(C constant) { set_dense(0, {std::move(constant)}); }

  static LaurentPolynomial monomial(C coeff, int exponent) {
    LaurentPolynomial p;
    p.set_dense(exponent, {std::move(coeff)});
    return p;
  }

  static LaurentPolynomial from_terms(const std::map<int, C>& terms) {
    LaurentPolynomial p;
    if (terms.empty()) return p;
    int lo = terms.begin()->first;
    int hi = terms.rbegin()->first;
    std::vector<C> dense(static_cast<std::size_t>(hi - lo + 1), C(0));
    for (const auto& [e, c] : terms) dense[static_cast<std::size_t>(e - lo)] = c;
    p.set_dense(lo, std::move(dense));
    return p;
  }

  // Dense constructor: coeffs[i] is the coefficient of t^(low + i).
  static LaurentPolynomial from_dense(int low, std::vector<C> coeffs) {
    LaurentPolynomial p;
    p.set_dense(low, std::move(coeffs));
    return p;
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int min_exponent() const noexcept { return low_; }
  int max_exponent() const noexcept { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<C>& dense() const noexcept { return coeffs_; }

  C coefficient(int e) const {
    if (is_zero() || e < low_ || e > max_exponent()) return C(0);
    return coeffs_[static_cast<std::size_t>(e - low_)];
  }

  std::vector<std::pair<int, C>> terms() const {
    std::vector<std::pair<int, C>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != C(0)) out.emplace_back(low_ + static_cast<int>(i), coeffs_[i]);
    return out;
  }

  bool is_monomial() const noexcept { return coeffs_.size() == 1; }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) { return accumulate(o, false); }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) { return accumulate(o, true); }

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a += b;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a -= b;
  }
  LaurentPolynomial operator-() const {
    LaurentPolynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> out(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == C(0)) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return from_dense(a.low_ + b.low_, std::move(out));
  }
  LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

  LaurentPolynomial scaled(const C& k) const {
    if (k == C(0)) return {};
    LaurentPolynomial r = *this;
    for (auto& c : r.coeffs_) c = c * k;
    return r;
  }

  // Multiply by t^k.
  LaurentPolynomial shifted(int k) const {
    LaurentPolynomial r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
  }

  // t -> t^-1
  LaurentPolynomial reflected() const {
    if (is_zero()) return {};
    std::vector<C> rev(coeffs_.rbegin(), coeffs_.rend());
    return from_dense(-max_exponent(), std::move(rev));
  }

  // Substitute t -> t^(num/den). Every exponent must scale to an integer.
  LaurentPolynomial rescaled(int num, int den) const {
    std::map<int, C> out;
    for (auto& [e, c] : terms()) {
      long long scaled = static_cast<long long>(e) * num;
      if (scaled % den != 0)
        throw Error(ErrorKind::NonDivisible, "exponent " + std::to_string(e) +
                                                 " does not rescale by " + std::to_string(num) +
                                                 "/" + std::to_string(den));
      out[static_cast<int>(scaled / den)] = c;
    }
    return from_terms(out);
  }

  // Value at t = +1 or t = -1.
  C evaluate_unit(int sign) const {
    C sum(0);
    for (auto& [e, c] : terms()) sum += (sign < 0 && (e % 2 != 0)) ? C(-c) : c;
    return sum;
  }

  // Exact quotient; throws NonDivisible when the division leaves a remainder.
  LaurentPolynomial divided_exactly(const LaurentPolynomial& d) const {
    if (d.is_zero()) throw Error(ErrorKind::NonDivisible, "division by zero polynomial");
    if (is_zero()) return {};
    std::vector<C> rem = coeffs_;
    const std::vector<C>& dv = d.coeffs_;
    if (rem.size() < dv.size()) throw Error(ErrorKind::NonDivisible, "divisor degree too large");
    std::size_t qlen = rem.size() - dv.size() + 1;
    std::vector<C> q(qlen, C(0));
    const C& lead = dv.back();
    for (std::size_t k = qlen; k-- > 0;) {
      C top = rem[k + dv.size() - 1];
      if (top == C(0)) continue;
      if (top % lead != C(0)) throw Error(ErrorKind::NonDivisible, "non-integral quotient");
      C f = top / lead;
      q[k] = f;
      for (std::size_t i = 0; i < dv.size(); ++i) rem[k + i] -= f * dv[i];
    }
    for (const auto& c : rem)
      if (c != C(0)) throw Error(ErrorKind::NonDivisible, "nonzero remainder");
    return from_dense(low_ - d.low_, std::move(q));
  }

  template <typename D>
  LaurentPolynomial<D> convert() const {
    std::vector<D> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(CoeffTraits<D>::from_big(CoeffTraits<C>::to_big(c)));
    return LaurentPolynomial<D>::from_dense(low_, std::move(out));
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

  // "c*t^e" terms in ascending exponent order joined by " + "; zero is "0".
  std::string to_string(std::string_view var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms()) {
      if (!first) os << " + ";
      first = false;
      os << CoeffTraits<C>::to_big(c) << '*' << var << '^' << e;
    }
    return os.str();
  }

 private:
  void set_dense(int low, std::vector<C> coeffs) {
    std::size_t b = 0;
    while (b < coeffs.size() && coeffs[b] == C(0)) ++b;
    std::size_t e = coeffs.size();
    while (e > b && coeffs[e - 1] == C(0)) --e;
    if (b == e) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    if (b != 0 || e != coeffs.size())
      coeffs = std::vector<C>(coeffs.begin() + static_cast<std::ptrdiff_t>(b),
                              coeffs.begin() + static_cast<std::ptrdiff_t>(e));
    coeffs_ = std::move(coeffs);
    low_ = low + static_cast<int>(b);
  }

  LaurentPolynomial& accumulate(const LaurentPolynomial& o, bool subtract) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = subtract ? -o : o;
      return *this;
    }
    int lo = std::min(low_, o.low_);
    int hi = std::max(max_exponent(), o.max_exponent());
    if (lo != low_ || hi != max_exponent()) {
      std::vector<C> grown(static_cast<std::size_t>(hi - lo + 1), C(0));
      std::copy(coeffs_.begin(), coeffs_.end(), grown.begin() + (low_ - lo));
      coeffs_ = std::move(grown);
      low_ = lo;
    }
    auto off = static_cast<std::size_t>(o.low_ - low_);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
      if (subtract)
        coeffs_[off + i] -= o.coeffs_[i];
      else
        coeffs_[off + i] += o.coeffs_[i];
    }
    set_dense(low_, std::move(coeffs_));
    return *this;
  }

  int low_ = 0;
  std::vector<C> coeffs_;
};

using Polynomial = LaurentPolynomial<BigInt>;

// Parse the text form produced by to_string.
inline Polynomial parse_polynomial(std::string_view text) {
  std::map<int, BigInt> terms;
  std::string s(text);
  if (s == "0") return {};
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(" + ", pos);
    std::string term = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::size_t star = term.find('*');
    std::size_t caret = term.find('^');
    if (star == std::string::npos || caret == std::string::npos || caret < star)
      throw Error(ErrorKind::ParseError, "bad polynomial term '" + term + "'");
    try {
      BigInt c(term.substr(0, star));
      int e = std::stoi(term.substr(caret + 1));
      terms[e] += c;
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad polynomial term '" + term + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  return Polynomial::from_terms(terms);
}

// JSON form: {"exp": coeff, ...}. Coefficients outside int64 are written as strings.
inline nlohmann::json polynomial_to_json(const Polynomial& p) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [e, c] : p.terms()) {
    if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
      j[std::to_string(e)] = c.convert_to<std::int64_t>();
    else
      j[std::to_string(e)] = c.str();
  }
  return j;
}

inline Polynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "polynomial JSON must be an object");
  std::map<int, BigInt> terms;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int e = 0;
    try {
      e = std::stoi(it.key());
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad exponent key '" + it.key() + "'");
    }
    BigInt c = it->is_string() ? BigInt(it->get<std::string>()) : BigInt(it->get<std::int64_t>());
    if (c != 0) terms[e] = c;
  }
  return Polynomial::from_terms(terms);
}

}  // namespace petal
