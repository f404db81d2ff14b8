#include "gsmf/extended_real.h"

#include <limits>
#include <ostream>

#include "gsmf/errors.h"

namespace gsmf {

double ExtendedReal::value() const {
  if (infinite_) throw ParameterError("extended real is +inf, no finite value");
  return value_;
}

double ExtendedReal::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

ExtendedReal& ExtendedReal::operator+=(const ExtendedReal& other) {
  if (other.infinite_) {
    infinite_ = true;
    value_ = 0.0;
  } else if (!infinite_) {
    value_ += other.value_;
  }
  return *this;
}

bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::partial_ordering operator<=>(const ExtendedReal& a,
                                  const ExtendedReal& b) {
  if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
  if (a.infinite_) return std::partial_ordering::greater;
  if (b.infinite_) return std::partial_ordering::less;
  return a.value_ <=> b.value_;
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
  if (x.is_infinite()) return os << "+inf";
  return os << x.value();
}

}  // namespace gsmf
