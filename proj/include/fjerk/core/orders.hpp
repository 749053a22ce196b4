#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace fjerk {

/// Exact positive fraction num/den kept in lowest terms.
class Rational {
 public:
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "v/u" or a bare integer "v". Decimal input is rejected.
  static Rational parse(std::string_view text);

  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// One order shared by all three equations. The exact rational form is
/// optional: it is needed only for the order lift.
struct Commensurate {
  double alpha;
  std::optional<Rational> exact;
};

/// Per-equation orders, always exact.
struct Incommensurate {
  std::array<Rational, 3> alphas;
};

/// Result of lifting the orders to a common denominator M:
/// alpha_1 = p/M, alpha_2 = q/M, alpha_3 = m/M.
struct ReducedOrders {
  std::int64_t M;
  std::int64_t p;
  std::int64_t q;
  std::int64_t m;
  /// pi*alpha/2 for commensurate orders, pi/(2M) for incommensurate ones.
  double theta;
  bool commensurate;

  /// Argument threshold of the lifted polynomial, pi/(2M).
  double lift_angle() const noexcept;
  std::int64_t total() const noexcept { return p + q + m; }
};

class OrderSpec {
 public:
  using Kind = std::variant<Commensurate, Incommensurate>;

  static OrderSpec commensurate(double alpha);
  static OrderSpec commensurate(Rational alpha);
  static OrderSpec incommensurate(Rational a1, Rational a2, Rational a3);

  const Kind& kind() const noexcept { return kind_; }
  bool is_commensurate() const noexcept { return std::holds_alternative<Commensurate>(kind_); }

  /// Floating orders per equation, as consumed by the solver.
  std::array<double, 3> alphas() const noexcept;

  /// "0.99" for commensurate orders, "1/1;99/100;1/1" otherwise.
  std::string label() const;

 private:
  explicit OrderSpec(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Exact order lift. Throws std::invalid_argument for orders outside (0, 1]
/// and for commensurate orders that carry no exact rational form.
ReducedOrders reduce_orders(const OrderSpec& orders);

}  // namespace fjerk
