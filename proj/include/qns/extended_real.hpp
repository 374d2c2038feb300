#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qns {

/// A real number extended with the endpoints -inf and +inf.
///
/// NaN is not a value of this type: constructing from NaN throws, and the
/// guarded operations below never produce one. The order is total,
/// with -inf < every finite value < +inf.
class ExtendedReal {
 public:
  ExtendedReal() = default;

  ExtendedReal(double v) : v_(v) {  // NOLINT: implicit by design
    if (std::isnan(v)) throw std::invalid_argument("ExtendedReal: NaN is not a value");
  }

  static ExtendedReal neg_inf() { return ExtendedReal(-std::numeric_limits<double>::infinity()); }
  static ExtendedReal pos_inf() { return ExtendedReal(std::numeric_limits<double>::infinity()); }

  double value() const { return v_; }
  bool finite() const { return std::isfinite(v_); }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }
  bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }

  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtendedReal a, ExtendedReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return a.v_ >= b.v_; }

  /// Guarded addition: (+inf) + (-inf) is rejected instead of yielding NaN.
  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
      throw std::domain_error("ExtendedReal: inf + (-inf) is undefined");
    return ExtendedReal(a.v_ + b.v_);
  }

  friend ExtendedReal max(ExtendedReal a, ExtendedReal b) { return a.v_ > b.v_ ? a : b; }
  friend ExtendedReal min(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_ ? a : b; }

 private:
  double v_ = 0.0;
};

}  // namespace qns
