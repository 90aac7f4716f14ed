#pragma once

#include <gmpxx.h>

#include <map>
#include <nlohmann/json.hpp>
#include <string>

namespace tfact {

/// Finite sum of integer multiples of N^e, e in Z, with exact coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly constant(const mpz_class& c) { return monomial(0, c); }
  static LaurentPoly monomial(int exponent, const mpz_class& coef);

  /// Exponent -> coefficient; never holds a zero coefficient.
  const std::map<int, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  mpz_class coefficient(int exponent) const;
  mpz_class coefficient_sum() const;
  /// Throws std::domain_error on the zero polynomial.
  int max_exponent() const;
  int min_exponent() const;

  void add_term(int exponent, const mpz_class& coef);

  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// Exact value at integer N >= 1.
  mpq_class evaluate(long N) const;
  double evaluate_double(double N) const;

  /// Highest power first: "3N^-3 + 3N^-4"; "0" for the zero polynomial.
  std::string to_string() const;
  nlohmann::json to_json() const;
  static LaurentPoly from_json(const nlohmann::json& j);

 private:
  std::map<int, mpz_class> terms_;
};

struct LeadingOrder {
  int s = 0;
  mpz_class mu;
};

/// Highest exponent and its coefficient; throws std::domain_error on zero.
LeadingOrder leading_order(const LaurentPoly& p);

}  // namespace tfact
