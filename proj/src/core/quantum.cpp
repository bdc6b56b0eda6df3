#include "ghzmd/quantum.hpp"

#include <cmath>
#include <string>

#include "ghzmd/error.hpp"

namespace ghzmd {

MeasurementDirection::MeasurementDirection(double theta, double phi)
    : theta_(theta), phi_(normalize_angle(phi)) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw Error(ErrorCode::kInvalidArgument,
                "polar angle must lie in [0, pi], got " + std::to_string(theta));
  }
}

std::array<double, 3> MeasurementDirection::bloch() const {
  const double s = std::sin(theta_);
  return {s * std::cos(phi_), s * std::sin(phi_), std::cos(theta_)};
}

double JointDistribution::total() const {
  double t = 0.0;
  for (double x : p) t += x;
  return t;
}

bool JointDistribution::is_valid(double tol) const {
  for (double x : p) {
    if (!(x >= -tol)) return false;
  }
  return std::abs(total() - 1.0) <= tol;
}

double JointDistribution::max_abs_difference(const JointDistribution& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 8; ++i) worst = std::max(worst, std::abs(p[i] - other.p[i]));
  return worst;
}

namespace {

JointDistribution closed_form(const DirectionTriple& dirs, bool include_printed_zzz) {
  const double ca = std::cos(dirs[0].theta()), cb = std::cos(dirs[1].theta()),
               cc = std::cos(dirs[2].theta());
  const double transverse = std::sin(dirs[0].theta()) * std::sin(dirs[1].theta()) *
                            std::sin(dirs[2].theta()) *
                            std::cos(dirs[0].phi() + dirs[1].phi() + dirs[2].phi());
  JointDistribution d;
  for (SignPattern o : kAllPatterns) {
    const double ab = o.a() * o.b(), bc = o.b() * o.c(), cA = o.c() * o.a(), abc = o.product();
    double v = 1.0 + ab * ca * cb + bc * cb * cc + cA * cc * ca + abc * transverse;
    if (include_printed_zzz) v += abc * ca * cb * cc;
    d[o] = v / 8.0;
  }
  return d;
}

struct Complex {
  double re = 0.0;
  double im = 0.0;
};

Complex mul(Complex x, Complex y) { return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; }
Complex add(Complex x, Complex y) { return {x.re + y.re, x.im + y.im}; }

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

// (I + s m̂·σ)/2
Matrix2 spin_projector(const MeasurementDirection& dir, int s) {
  const auto [x, y, z] = dir.bloch();
  Matrix2 m;
  m[0][0] = {0.5 * (1.0 + s * z), 0.0};
  m[0][1] = {0.5 * s * x, -0.5 * s * y};
  m[1][0] = {0.5 * s * x, 0.5 * s * y};
  m[1][1] = {0.5 * (1.0 - s * z), 0.0};
  return m;
}

}  // namespace

JointDistribution ghz_joint_closed_form(const DirectionTriple& dirs) { return closed_form(dirs, false); }

JointDistribution ghz_joint_as_printed(const DirectionTriple& dirs) { return closed_form(dirs, true); }

JointDistribution equatorial_joint(const SettingTriple& s) {
  const double c = std::cos(s.total());
  JointDistribution d;
  for (SignPattern o : kAllPatterns) d[o] = (1.0 + o.product() * c) / 8.0;
  return d;
}

double expectation(const JointDistribution& d) {
  double e = 0.0;
  for (SignPattern o : kAllPatterns) e += o.product() * d[o];
  return e;
}

Marginals marginals(const JointDistribution& d) {
  Marginals m;
  for (SignPattern o : kAllPatterns) {
    const double p = d[o];
    m.a += o.a() * p;
    m.b += o.b() * p;
    m.c += o.c() * p;
    m.ab += o.a() * o.b() * p;
    m.bc += o.b() * o.c() * p;
    m.ca += o.c() * o.a() * p;
  }
  return m;
}

JointDistribution born_rule_joint(const DirectionTriple& dirs) {
  // Basis index bits (q_A q_B q_C), bit value 0 = |0⟩.
  std::array<Complex, 8> psi{};
  psi[0] = {1.0 / std::sqrt(2.0), 0.0};
  psi[7] = {1.0 / std::sqrt(2.0), 0.0};

  JointDistribution d;
  for (SignPattern o : kAllPatterns) {
    const Matrix2 pa = spin_projector(dirs[0], o.a());
    const Matrix2 pb = spin_projector(dirs[1], o.b());
    const Matrix2 pc = spin_projector(dirs[2], o.c());
    Complex amplitude{};
    for (int i = 0; i < 8; ++i) {
      Complex row{};
      for (int j = 0; j < 8; ++j) {
        const Complex e = mul(mul(pa[(i >> 2) & 1][(j >> 2) & 1], pb[(i >> 1) & 1][(j >> 1) & 1]),
                              pc[i & 1][j & 1]);
        row = add(row, mul(e, psi[static_cast<std::size_t>(j)]));
      }
      const Complex bra{psi[static_cast<std::size_t>(i)].re, -psi[static_cast<std::size_t>(i)].im};
      amplitude = add(amplitude, mul(bra, row));
    }
    d[o] = amplitude.re;
  }
  return d;
}

}  // namespace ghzmd
