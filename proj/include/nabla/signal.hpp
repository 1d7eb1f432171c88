#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace nabla {

using Index = std::int64_t;

class InsufficientHistory : public std::out_of_range {
 public:
  InsufficientHistory(Index missing_point, const std::string& what)
      : std::out_of_range(what), missing_point_(missing_point) {}

  /// First grid point that would be needed but is not stored.
  Index missing_point() const { return missing_point_; }

 private:
  Index missing_point_;
};

/// Real (or complex, or extended precision) sequence on the unit grid
/// d, d+1, ..., a+K, where a is the initial instant and K >= 1 the horizon.
/// Points d..a are pre-origin history; d = a+1 means "no history at all",
/// which is the natural domain of fractional sums.
template <typename Scalar>
class BasicSampledSignal {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicSampledSignal() = default;

  BasicSampledSignal(Index origin, Index history_start, Vector values)
      : origin_(origin), history_start_(history_start), values_(std::move(values)) {
    if (history_start_ > origin_ + 1) {
      throw std::invalid_argument("SampledSignal: history must start at or before a+1");
    }
    if (last() < origin_ + 1) {
      throw std::invalid_argument("SampledSignal: horizon must cover at least a+1");
    }
  }

  /// Samples on a+1..a+K only.
  static BasicSampledSignal causal(Index origin, Vector values) {
    return BasicSampledSignal(origin, origin + 1, std::move(values));
  }

  /// History samples y(a-h+1..a) followed by samples on a+1..a+K.
  static BasicSampledSignal with_history(Index origin, const Vector& history, const Vector& horizon) {
    Vector all(history.size() + horizon.size());
    all << history, horizon;
    return BasicSampledSignal(origin, origin + 1 - static_cast<Index>(history.size()), std::move(all));
  }

  Index origin() const { return origin_; }
  Index history_start() const { return history_start_; }
  Index last() const { return history_start_ + static_cast<Index>(values_.size()) - 1; }
  Index horizon() const { return last() - origin_; }
  Index history_length() const { return origin_ + 1 - history_start_; }

  bool contains(Index k) const { return k >= history_start_ && k <= last(); }

  Scalar operator()(Index k) const {
    if (!contains(k)) {
      throw InsufficientHistory(k, "SampledSignal: grid point " + std::to_string(k) + " is not stored");
    }
    return values_(static_cast<Eigen::Index>(k - history_start_));
  }

  Scalar& operator()(Index k) {
    if (!contains(k)) {
      throw InsufficientHistory(k, "SampledSignal: grid point " + std::to_string(k) + " is not stored");
    }
    return values_(static_cast<Eigen::Index>(k - history_start_));
  }

  const Vector& values() const { return values_; }

  /// Samples on a+1..a+K.
  auto horizon_values() const { return values_.tail(static_cast<Eigen::Index>(horizon())); }

  template <typename NewScalar>
  BasicSampledSignal<NewScalar> cast() const {
    return BasicSampledSignal<NewScalar>(origin_, history_start_, values_.template cast<NewScalar>());
  }

 private:
  Index origin_ = 0;
  Index history_start_ = 1;
  Vector values_ = Vector::Zero(1);
};

using SampledSignal = BasicSampledSignal<double>;

}  // namespace nabla
