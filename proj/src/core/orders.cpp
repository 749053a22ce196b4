#include "fjerk/core/orders.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace fjerk {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("order '" + std::string(whole) +
                                "' is not an exact rational of the form v/u");
  }
  return value;
}

void check_unit_interval(double alpha, std::string_view what) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0, 1]");
  }
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ <= 0 || num_ <= 0) {
    throw std::invalid_argument("order fractions need positive numerator and denominator");
  }
  const std::int64_t g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text), 1);
  return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

double ReducedOrders::lift_angle() const noexcept {
  return std::numbers::pi / (2.0 * static_cast<double>(M));
}

OrderSpec OrderSpec::commensurate(double alpha) {
  check_unit_interval(alpha, "alpha");
  return OrderSpec(Commensurate{alpha, std::nullopt});
}

OrderSpec OrderSpec::commensurate(Rational alpha) {
  check_unit_interval(alpha.value(), "alpha");
  return OrderSpec(Commensurate{alpha.value(), alpha});
}

OrderSpec OrderSpec::incommensurate(Rational a1, Rational a2, Rational a3) {
  for (const auto& r : {a1, a2, a3}) check_unit_interval(r.value(), "each alpha_i");
  return OrderSpec(Incommensurate{{a1, a2, a3}});
}

std::array<double, 3> OrderSpec::alphas() const noexcept {
  if (const auto* c = std::get_if<Commensurate>(&kind_)) return {c->alpha, c->alpha, c->alpha};
  const auto& r = std::get<Incommensurate>(kind_).alphas;
  return {r[0].value(), r[1].value(), r[2].value()};
}

std::string OrderSpec::label() const {
  if (const auto* c = std::get_if<Commensurate>(&kind_)) {
    if (c->exact) return c->exact->str();
    // Shortest text that reads back as the same double.
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, c->alpha);
    return std::string(buf, res.ptr);
  }
  const auto& r = std::get<Incommensurate>(kind_).alphas;
  return r[0].str() + ";" + r[1].str() + ";" + r[2].str();
}

ReducedOrders reduce_orders(const OrderSpec& orders) {
  if (const auto* c = std::get_if<Commensurate>(&orders.kind())) {
    if (!c->exact) {
      throw std::invalid_argument("order lift needs an exact rational alpha");
    }
    const std::int64_t v = c->exact->num();
    const std::int64_t u = c->exact->den();
    return {u, v, v, v, std::numbers::pi * c->alpha / 2.0, true};
  }
  const auto& r = std::get<Incommensurate>(orders.kind()).alphas;
  const std::int64_t M = std::lcm(std::lcm(r[0].den(), r[1].den()), r[2].den());
  const auto lift = [M](const Rational& x) { return x.num() * (M / x.den()); };
  return {M, lift(r[0]), lift(r[1]), lift(r[2]), std::numbers::pi / (2.0 * static_cast<double>(M)),
          false};
}

}  // namespace fjerk
