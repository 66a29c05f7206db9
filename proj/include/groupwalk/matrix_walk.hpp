#pragma once

#include <Eigen/Dense>

#include <optional>
#include <variant>
#include <vector>

#include "groupwalk/group.hpp"

namespace groupwalk {

struct MatrixAtom {
  Eigen::MatrixXcd matrix;
  double prob = 0.0;
};

/// Rotation about a fixed axis in 3-space; the angle is either fixed or
/// uniform on [0, 2*pi).
struct AxisRotation {
  Eigen::Vector3d axis;
  std::optional<double> fixed_angle;  // nullopt = uniform

  bool uniform() const { return !fixed_angle.has_value(); }
};

/// Step distribution on a compact matrix group: finitely many unitary atoms,
/// or a product of axis-rotation factors sampled independently.
class MatrixMeasure {
 public:
  using Parametric = std::vector<AxisRotation>;

  /// Validates that probabilities sum to 1 and every atom is unitary within
  /// `tolerance`. Dimension capped at 8.
  static MatrixMeasure finite(std::vector<MatrixAtom> atoms, double tolerance = 1e-9);

  /// Product of axis-rotation factors (a single factor is the plain
  /// axis-rotation law). Dimension is always 3.
  static MatrixMeasure parametric(Parametric factors, double tolerance = 1e-9);

  int dimension() const { return dimension_; }
  double tolerance() const { return tolerance_; }
  bool is_finite() const { return std::holds_alternative<std::vector<MatrixAtom>>(kind_); }
  const std::vector<MatrixAtom>& atoms() const { return std::get<std::vector<MatrixAtom>>(kind_); }
  const Parametric& factors() const { return std::get<Parametric>(kind_); }

 private:
  MatrixMeasure() = default;

  int dimension_ = 0;
  double tolerance_ = 1e-9;
  std::variant<std::vector<MatrixAtom>, Parametric> kind_;
};

struct EstimateInfo {
  long long samples = 0;
  unsigned long long seed = 0;
  int walk_length = 0;
  Eigen::MatrixXd standard_error;  // per-entry
};

/// T = E[phi(xi)] for phi the defining representation or one of its tensor
/// powers. Operator norm is at most 1 up to tolerance. When produced by
/// Monte Carlo, `estimate` records sample count, seed and per-entry errors.
struct MomentOperator {
  int dimension = 0;
  int tensor_degree = 1;
  Eigen::MatrixXcd matrix;
  std::optional<EstimateInfo> estimate;
};

/// Exact moment operator. Finite atoms always have one; of the parametric
/// laws, fixed-angle rotations are point masses and the uniform-angle mean
/// is evaluated by exact equispaced quadrature (the integrand is a
/// trigonometric polynomial of degree <= tensor_degree).
MomentOperator moment_operator(const MatrixMeasure& m, int tensor_degree = 1);

/// Spectral norm of T^n.
double moment_power_norm(const MomentOperator& op, long long n);

/// Empirical mean of phi(xi_1 ... xi_n) over `samples` independent walks.
/// Bit-reproducible given the seed: sampling is sharded deterministically
/// and merged in fixed shard order, independent of any parallelism.
MomentOperator estimate_moment(const MatrixMeasure& m, int walk_length, long long samples,
                               unsigned long long seed, int tensor_degree = 1);

struct ClassifiedOrbit {
  GroupPtr group;
  std::vector<element_t> atom_elements;           // atom index -> element index
  std::vector<Eigen::MatrixXcd> element_matrices; // element index -> matrix
};

/// Multiplicative closure of the atoms with matrix equality at `tol`
/// (Frobenius). Returns the abstract group on success, nullopt when the
/// closure exceeds `cap` (group presumed infinite or too large). Two
/// distinct products closer than the collision margin abort with
/// ToleranceCollision rather than merging silently.
std::optional<ClassifiedOrbit> classify_finite_orbit(const MatrixMeasure& m, int cap = 360,
                                                     double tol = 1e-8);

/// Convergence diagnostic for one tensor degree. When the walk converges,
/// T^n is Cauchy and the step gap ||T^{n+1} - T^n|| decays geometrically;
/// an obstruction keeps it asymptotically periodic and bounded away from
/// zero. `settled` therefore requires the tail gap to be tiny outright or
/// clearly shrinking against the preceding quarter of the horizon.
struct MomentDecayCheck {
  int degree = 1;
  double final_norm = 0.0;
  double min_norm = 0.0;
  int min_norm_at = 0;
  double mid_gap = 0.0;   // max ||T^{n+1} - T^n|| over the third quarter
  double tail_gap = 0.0;  // max ||T^{n+1} - T^n|| over the last quarter
  bool settled = false;
};

MomentDecayCheck moment_decay_check(const MomentOperator& op, int horizon, double settle_tol);

Eigen::Matrix3d rotation_about_axis(const Eigen::Vector3d& axis, double angle);

Eigen::MatrixXcd kronecker_power(const Eigen::MatrixXcd& m, int degree);

}  // namespace groupwalk
