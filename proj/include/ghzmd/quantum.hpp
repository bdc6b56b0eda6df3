#pragma once

#include <array>

#include "ghzmd/angles.hpp"
#include "ghzmd/sign_pattern.hpp"

namespace ghzmd {

/// Projective spin measurement along the Bloch vector
/// (sinθ cosφ, sinθ sinφ, cosθ).
class MeasurementDirection {
 public:
  /// Throws Error(kInvalidArgument) unless theta ∈ [0, π]; phi is reduced mod 2π.
  MeasurementDirection(double theta, double phi);

  static MeasurementDirection equatorial(double phi) { return {kPi / 2.0, phi}; }

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  std::array<double, 3> bloch() const;

 private:
  double theta_;
  double phi_;
};

using DirectionTriple = std::array<MeasurementDirection, 3>;

/// Equatorial azimuths of Alice, Bob and Charlie, each stored in [0, 2π).
class SettingTriple {
 public:
  SettingTriple() = default;
  SettingTriple(double phi_a, double phi_b, double phi_c)
      : phi_{normalize_angle(phi_a), normalize_angle(phi_b), normalize_angle(phi_c)} {}

  double a() const { return phi_[0]; }
  double b() const { return phi_[1]; }
  double c() const { return phi_[2]; }
  double operator[](int party) const { return phi_[static_cast<std::size_t>(party)]; }
  const std::array<double, 3>& angles() const { return phi_; }

  /// Φ = φ_A + φ_B + φ_C (not reduced).
  double total() const { return phi_[0] + phi_[1] + phi_[2]; }

  SettingTriple rotated(double alpha) const {
    return {phi_[0] + alpha, phi_[1] + alpha, phi_[2] + alpha};
  }

  DirectionTriple directions() const {
    return {MeasurementDirection::equatorial(phi_[0]), MeasurementDirection::equatorial(phi_[1]),
            MeasurementDirection::equatorial(phi_[2])};
  }

  bool operator==(const SettingTriple&) const = default;

 private:
  std::array<double, 3> phi_{0.0, 0.0, 0.0};
};

using OutcomeTriple = SignPattern;

/// P(abc | settings) for the eight outcome triples, indexed by SignPattern::index().
struct JointDistribution {
  std::array<double, 8> p{};

  double& operator[](SignPattern o) { return p[static_cast<std::size_t>(o.index())]; }
  double operator[](SignPattern o) const { return p[static_cast<std::size_t>(o.index())]; }

  double total() const;
  /// Nonnegative entries summing to one, both within tol.
  bool is_valid(double tol = 1e-12) const;
  double max_abs_difference(const JointDistribution& other) const;
};

struct Marginals {
  double a = 0.0, b = 0.0, c = 0.0;
  double ab = 0.0, bc = 0.0, ca = 0.0;

  std::array<double, 6> as_array() const { return {a, b, c, ab, bc, ca}; }
};

/// Closed-form GHZ statistics for arbitrary directions:
/// P = [1 + ab cAcB + bc cBcC + ca cCcA + abc sAsBsC cos(φA+φB+φC)] / 8,
/// with cX = cosθX, sX = sinθX.
JointDistribution ghz_joint_closed_form(const DirectionTriple& dirs);

/// The same expression with an additional abc·cAcBcC term. That term is not
/// part of the GHZ statistics; this form goes negative away from the equator
/// and exists only to document the discrepancy.
JointDistribution ghz_joint_as_printed(const DirectionTriple& dirs);

/// P(abc) = [1 + abc cos(φA+φB+φC)] / 8.
JointDistribution equatorial_joint(const SettingTriple& s);

/// Σ abc P(abc).
double expectation(const JointDistribution& d);

Marginals marginals(const JointDistribution& d);

/// ⟨ψ|Π_a ⊗ Π_b ⊗ Π_c|ψ⟩ for ψ = (|000⟩ + |111⟩)/√2 and Π = (I ± m̂·σ)/2,
/// evaluated on the explicit 8-dimensional state vector.
JointDistribution born_rule_joint(const DirectionTriple& dirs);

}  // namespace ghzmd
