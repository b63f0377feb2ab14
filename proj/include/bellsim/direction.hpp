#pragma once

#include <array>

namespace bellsim {

// Unit 3-vector naming a spin measurement axis. The constructor normalizes
// and rejects the zero vector, so a constructed Direction is always valid.
class Direction {
 public:
  Direction(double x, double y, double z);

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  std::array<double, 3> components() const { return {x_, y_, z_}; }

  double dot(const Direction& other) const {
    return x_ * other.x_ + y_ * other.y_ + z_ * other.z_;
  }

  // Angle to the other axis, in [0, pi].
  double angle_to(const Direction& other) const;

 private:
  double x_, y_, z_;
};

}  // namespace bellsim
