#include "cdirac/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace cdirac {

namespace {

void check_params(const CliffordRep& rep, const BubbleParams& p) {
  if (rep.n != p.n) throw std::invalid_argument("bubble: representation dimension mismatch");
  if (p.center.size() != p.n) throw std::invalid_argument("bubble: center dimension mismatch");
  if (p.amplitude.size() != rep.N) throw std::invalid_argument("bubble: amplitude dimension mismatch");
  if (!(p.lambda > 0.0)) throw std::invalid_argument("bubble: scale must be positive");
}

// conformal weight lambda^{-(n-1)/2} (2/(1+|z|^2))^{n/2}
double weight(const BubbleParams& p, double z2) {
  return std::pow(p.lambda, -0.5 * (p.n - 1)) * std::pow(2.0 / (1.0 + z2), 0.5 * p.n);
}

}  // namespace

double ground_state_amplitude_norm(int n) {
  return std::pow(0.5 * n, 0.5 * (n - 1)) / std::sqrt(2.0);
}

BubbleParams BubbleParams::ground_state(int n, double lambda, const RealVec& center) {
  if (center.size() != n) throw std::invalid_argument("BubbleParams: center dimension mismatch");
  if (!(lambda > 0.0)) throw std::invalid_argument("BubbleParams: scale must be positive");
  BubbleParams p;
  p.n = n;
  p.lambda = lambda;
  p.center = center;
  p.amplitude = Spinor::Zero(spinor_rank(n));
  p.amplitude[0] = ground_state_amplitude_norm(n);
  return p;
}

bool BubbleParams::normalized(double tol) const {
  return std::abs(amplitude.norm() - ground_state_amplitude_norm(n)) <= tol;
}

Spinor bubble_eval(const CliffordRep& rep, const BubbleParams& p, const RealVec& x) {
  check_params(rep, p);
  if (x.size() != p.n) throw std::invalid_argument("bubble_eval: point dimension mismatch");
  const RealVec z = (x - p.center) / p.lambda;
  const double w = weight(p, z.squaredNorm());
  return w * (p.amplitude - clifford_mul(rep, z, p.amplitude));
}

Spinor bubble_partial(const CliffordRep& rep, const BubbleParams& p, const RealVec& x, int j) {
  check_params(rep, p);
  if (x.size() != p.n) throw std::invalid_argument("bubble_partial: point dimension mismatch");
  if (j < 0 || j >= p.n) throw std::invalid_argument("bubble_partial: direction out of range");
  const RealVec z = (x - p.center) / p.lambda;
  const double z2 = z.squaredNorm();
  const double w = weight(p, z2);
  const double dw = -w * p.n * z[j] / ((1.0 + z2) * p.lambda);
  const Spinor core = p.amplitude - clifford_mul(rep, z, p.amplitude);
  return dw * core - (w / p.lambda) * (rep.gamma[j] * p.amplitude);
}

double bubble_length(const BubbleParams& p, double r) {
  if (r < 0.0) throw std::invalid_argument("bubble_length: radius must be non-negative");
  const double s2 = (r / p.lambda) * (r / p.lambda);
  return weight(p, s2) * std::sqrt(1.0 + s2) * p.amplitude.norm();
}

double bubble_decay_limit(const BubbleParams& p) {
  return std::pow(2.0, 0.5 * p.n) * std::pow(p.lambda, 0.5 * (p.n - 1)) * p.amplitude.norm();
}

BubbleParams mobius_transform(const BubbleParams& p, const RealVec& shift, double scale) {
  if (shift.size() != p.n) throw std::invalid_argument("mobius_transform: shift dimension mismatch");
  if (!(scale > 0.0)) throw std::invalid_argument("mobius_transform: scale must be positive");
  BubbleParams out = p;
  out.lambda = scale * p.lambda;
  out.center = shift + scale * p.center;
  return out;
}

Spinor ambient_twistor_eval(const CliffordRep& rep, const Spinor& phi, const RealVec& x) {
  return clifford_mul(rep, x, phi);
}

double sphere_trace_length(const BubbleParams& p, const RealVec& y) {
  if (y.size() != p.n + 1) throw std::invalid_argument("sphere_trace_length: point dimension mismatch");
  const RealVec x = stereo_to_plane(y);
  const double conf = 1.0 / (1.0 - y[p.n]);
  return std::pow(conf, 0.5 * (p.n - 1)) * bubble_length(p, (x - p.center).norm());
}

AmbientField twistor_field(const CliffordRep& rep, const Spinor& phi) {
  if (phi.size() != rep.N) throw std::invalid_argument("twistor_field: spinor dimension mismatch");
  AmbientField f;
  f.dim = rep.n;
  f.eval = [rep, phi](const RealVec& x) { return clifford_mul(rep, x, phi); };
  f.partial = [rep, phi](const RealVec&, int j) { return Spinor(rep.gamma[j] * phi); };
  return f;
}

AmbientField constant_field(const CliffordRep& rep, const Spinor& phi) {
  AmbientField f;
  f.dim = rep.n;
  f.eval = [phi](const RealVec&) { return phi; };
  f.partial = [phi](const RealVec&, int) { return Spinor(Spinor::Zero(phi.size())); };
  return f;
}

AmbientField radial_square_field(const CliffordRep& rep, const Spinor& phi) {
  AmbientField f;
  f.dim = rep.n;
  f.eval = [phi](const RealVec& x) { return Spinor(x.squaredNorm() * phi); };
  f.partial = [phi](const RealVec& x, int j) { return Spinor(2.0 * x[j] * phi); };
  return f;
}

Spinor dirac_exact(const AmbientField& field, const CliffordRep& rep, const RealVec& x) {
  if (field.dim != rep.n) throw std::invalid_argument("dirac_exact: dimension mismatch");
  Spinor d = Spinor::Zero(rep.N);
  for (int j = 0; j < rep.n; ++j) d += rep.gamma[j] * field.partial(x, j);
  return d;
}

double killing_defect(const AmbientField& field, const CliffordRep& rep,
                      std::span<const RealVec> samples) {
  if (field.dim != rep.n) throw std::invalid_argument("killing_defect: dimension mismatch");
  double defect = 0.0;
  for (const RealVec& x : samples) {
    const Spinor d = dirac_exact(field, rep, x);
    for (int j = 0; j < rep.n; ++j) {
      const Spinor pj = field.partial(x, j) + (1.0 / rep.n) * (rep.gamma[j] * d);
      defect = std::max(defect, pj.norm());
    }
  }
  return defect;
}

SpinorField bubble_field(const CliffordRep& rep, const BubbleParams& p) {
  check_params(rep, p);
  SpinorField f;
  f.n = p.n;
  f.N = rep.N;
  f.eval = [rep, p](const RealVec& x) { return bubble_eval(rep, p, x); };
  f.decay_exponent = p.n - 1.0;
  return f;
}

double measured_decay_slope(const SpinorField& f, const RealVec& dir, double r0, double r1) {
  if (!(r1 > r0 && r0 > 0.0)) throw std::invalid_argument("measured_decay_slope: need 0 < r0 < r1");
  const RealVec u = dir / dir.norm();
  const double a = f.eval(r0 * u).norm();
  const double b = f.eval(r1 * u).norm();
  if (a <= 0.0 || b <= 0.0) throw std::runtime_error("measured_decay_slope: field vanishes on the ray");
  return (std::log(b) - std::log(a)) / (std::log(r1) - std::log(r0));
}

}  // namespace cdirac
