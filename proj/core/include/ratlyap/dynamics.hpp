#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "ratlyap/poly.hpp"

namespace ratlyap {

// Uniformly sampled solution curve. `diverged` is set when the integrator
// hit the overflow guard and stopped early; the stored prefix is still valid.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  double step = 0.0;
  bool diverged = false;

  int length() const { return static_cast<int>(times.size()); }
};

// Polynomial vector field. Each component is stored as its list of graded
// (homogeneous) parts so non-homogeneous fields are representable; a field is
// homogeneous of degree d when every component is a single part of degree d.
class VectorField {
 public:
  VectorField(int n, std::vector<std::vector<HomogPoly>> components,
              std::optional<int> declared_degree = std::nullopt);

  int dimension() const { return n_; }
  const std::vector<std::vector<HomogPoly>>& components() const {
    return components_;
  }
  std::optional<int> declared_degree() const { return declared_degree_; }

  std::vector<double> eval(std::span<const double> x) const;
  bool is_homogeneous(int d) const;
  // Declared degree if set, otherwise inferred from the parts; nullopt when
  // the field is not homogeneous.
  std::optional<int> homogeneous_degree() const;
  // The components of a homogeneous field as one polynomial each, all of
  // degree d. Throws when the field is not homogeneous of degree d.
  std::vector<HomogPoly> homogeneous_components(int d) const;

 private:
  int n_;
  std::vector<std::vector<HomogPoly>> components_;
  std::optional<int> declared_degree_;
};

// x' = -x + x*y, y' = -y. Globally asymptotically stable but not homogeneous;
// its solutions grow exponentially before decaying.
VectorField family_nonhomog_counterexample();

// Planar homogeneous cubic field: the output of the hard-coded cubic pair is
// rotated by theta, with coefficients expanded symbolically. lambda > 0.
VectorField family_cubic(double theta, double lambda);

// Planar homogeneous quintic field 2*R(theta)*(x*(x^4+2x^2y^2-y^4),
// y*(-x^4+2x^2y^2+y^4)) with R(theta) = [[-sin,-cos],[cos,-sin]].
VectorField family_quintic(double theta);

// f(x) = A x.
VectorField family_linear(const Eigen::MatrixXd& A);

// Classical fixed-step RK4. The trajectory has floor(horizon/step)+1 samples
// unless the state norm exceeds the 1e12 overflow guard, in which case it is
// truncated and flagged diverged.
Trajectory simulate(const VectorField& f, std::span<const double> x0,
                    double step, double horizon);

// (x^2+y^2)*(2x^2+y^2)^lambda, the conserved quantity of the theta = 0 cubic
// field.
double conserved_I(double lambda, double x, double y);

}  // namespace ratlyap
