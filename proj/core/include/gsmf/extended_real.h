#ifndef GSMF_EXTENDED_REAL_H_
#define GSMF_EXTENDED_REAL_H_

#include <compare>
#include <iosfwd>

namespace gsmf {

// A value in R ∪ {+∞}. Regularizers are proper and bounded below, so -∞
// never arises. Infinity is a state of the object, not a float pattern.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double value) : value_(value) {}  // NOLINT

  static constexpr ExtendedReal Infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }

  // Throws ParameterError when infinite.
  double value() const;
  // +inf as an IEEE double for infinite values; use for output only.
  double to_double() const;

  ExtendedReal& operator+=(const ExtendedReal& other);
  friend ExtendedReal operator+(ExtendedReal a, const ExtendedReal& b) {
    a += b;
    return a;
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b);
  friend std::partial_ordering operator<=>(const ExtendedReal& a,
                                           const ExtendedReal& b);

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x);

}  // namespace gsmf

#endif  // GSMF_EXTENDED_REAL_H_
