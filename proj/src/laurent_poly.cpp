#include "tfact/laurent_poly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tfact {

LaurentPoly LaurentPoly::monomial(int exponent, const mpz_class& coef) {
  LaurentPoly p;
  p.add_term(exponent, coef);
  return p;
}

mpz_class LaurentPoly::coefficient(int exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

mpz_class LaurentPoly::coefficient_sum() const {
  mpz_class total = 0;
  for (const auto& [e, c] : terms_) total += c;
  return total;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw std::domain_error("leading exponent of the zero polynomial");
  return terms_.rbegin()->first;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw std::domain_error("lowest exponent of the zero polynomial");
  return terms_.begin()->first;
}

void LaurentPoly::add_term(int exponent, const mpz_class& coef) {
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

mpq_class LaurentPoly::evaluate(long N) const {
  if (N < 1) throw std::domain_error("LaurentPoly::evaluate needs N >= 1");
  mpq_class total = 0;
  for (const auto& [e, c] : terms_) {
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(std::abs(e)));
    mpq_class term = e >= 0 ? mpq_class(c * power) : mpq_class(c, power);
    term.canonicalize();
    total += term;
  }
  return total;
}

double LaurentPoly::evaluate_double(double N) const {
  double total = 0;
  for (const auto& [e, c] : terms_) total += c.get_d() * std::pow(N, e);
  return total;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const int e = it->first;
    mpz_class c = it->second;
    if (first) {
      if (c < 0) {
        out << '-';
        c = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (e == 0) {
      out << c.get_str();
      continue;
    }
    if (c != 1) out << c.get_str();
    out << 'N';
    if (e != 1) out << '^' << e;
  }
  return out.str();
}

nlohmann::json LaurentPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    terms.push_back({{"exp", it->first}, {"coef", it->second.get_str()}});
  }
  return {{"terms", terms}, {"variable", "N"}};
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
  LaurentPoly p;
  for (const auto& t : j.at("terms")) p.add_term(t.at("exp").get<int>(), mpz_class(t.at("coef").get<std::string>()));
  return p;
}

LeadingOrder leading_order(const LaurentPoly& p) {
  const int s = p.max_exponent();
  return {s, p.coefficient(s)};
}

}  // namespace tfact
