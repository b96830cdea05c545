#pragma once

// Truncated q-series with exact rational exponents and coefficients.
// Exponents are kept over a single common denominator so equality and
// merging are structural.

#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "plumbcalc/exact.hpp"

namespace plumbcalc {

class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(Rational cutoff, Rational prefactor_exponent = 0)
      : cutoff_(std::move(cutoff)), pref_(std::move(prefactor_exponent)) {}

  /// Adds coeff * q^exponent. Terms at or above the cutoff are discarded.
  void add(const Rational& exponent, const Rational& coeff) {
    if (coeff == 0 || exponent >= cutoff_) return;
    Integer d = den(exponent);
    if (d != denom_) {
      Integer g = lcm(denom_, d);
      if (g != denom_) rescale(g);
    }
    Integer key = num(exponent) * (denom_ / den(exponent));
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Normalizes the denominator to the lcm of the surviving terms' exponent
  /// denominators, so equal series compare equal structurally.
  void finalize() {
    Integer g = 1;
    for (const auto& [k, c] : terms_) g = lcm(g, denom_ / gcd(k < 0 ? Integer(-k) : k, denom_));
    if (g == 0) g = 1;
    std::map<Integer, Rational> out;
    for (const auto& [k, c] : terms_) out.emplace(k * g / denom_, c);
    terms_ = std::move(out);
    denom_ = g;
  }

  const std::map<Integer, Rational>& terms() const { return terms_; }
  const Integer& denom() const { return denom_; }
  const Rational& cutoff() const { return cutoff_; }
  const Rational& prefactor_exponent() const { return pref_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  Rational exponent_at(const Integer& key) const {
    return Rational(key) / Rational(denom_);
  }

  Rational coefficient(const Rational& exponent) const {
    if (den(exponent) == 0 || denom_ % den(exponent) != 0) return 0;
    auto it = terms_.find(num(exponent) * (denom_ / den(exponent)));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// q^e -> q^(s*e) for every term; cutoff and prefactor scale along.
  QSeries scaled_exponents(const Rational& s) const {
    if (s <= 0) throw std::invalid_argument("exponent scale must be positive");
    QSeries out(cutoff_ * s, pref_ * s);
    for (const auto& [k, c] : terms_) out.add(Rational(k) * s / Rational(denom_), c);
    out.finalize();
    return out;
  }

  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.denom_ == b.denom_ && a.terms_ == b.terms_;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : terms_)
      terms.push_back({k.str(), num(c).str(), den(c).str()});
    return nlohmann::json{
        {"denom", denom_.str()},
        {"prefactor_exponent", {num(pref_).str(), den(pref_).str()}},
        {"cutoff", {num(cutoff_).str(), den(cutoff_).str()}},
        {"terms", terms}};
  }

  static QSeries from_json(const nlohmann::json& j) {
    auto rat = [](const nlohmann::json& pair) {
      return Rational(Integer(pair.at(0).get<std::string>()),
                      Integer(pair.at(1).get<std::string>()));
    };
    QSeries s(rat(j.at("cutoff")), rat(j.at("prefactor_exponent")));
    s.denom_ = Integer(j.at("denom").get<std::string>());
    for (const auto& t : j.at("terms")) {
      Integer key(t.at(0).get<std::string>());
      Rational coeff(Integer(t.at(1).get<std::string>()),
                     Integer(t.at(2).get<std::string>()));
      s.terms_.emplace(key, coeff);
    }
    return s;
  }

 private:
  void rescale(const Integer& g) {
    std::map<Integer, Rational> out;
    for (const auto& [k, c] : terms_) out.emplace(k * (g / denom_), c);
    terms_ = std::move(out);
    denom_ = g;
  }

  Rational cutoff_ = 0;
  Rational pref_ = 0;        // factored-out power of q, informational
  Integer denom_ = 1;        // common exponent denominator
  std::map<Integer, Rational> terms_;  // scaled exponent -> nonzero coefficient
};

}  // namespace plumbcalc
