#include "groupwalk/matrix_walk.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace groupwalk {

namespace {

constexpr int kMaxDimension = 8;
constexpr double kCollisionMargin = 10.0;  // times tol
constexpr long long kShardSize = 4096;

double spectral_norm(const Eigen::MatrixXcd& m) {
  return m.jacobiSvd().singularValues()(0);
}

double unitarity_defect(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd gram = m.adjoint() * m;
  gram -= Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return gram.norm();
}

// [0, 1) double from the full 64-bit state; uniform_real_distribution is
// implementation-defined, this is not.
double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 shard_rng(unsigned long long seed, long long shard) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(shard),
                    std::uint32_t(shard >> 32)};
  return std::mt19937_64(seq);
}

Eigen::MatrixXcd sample_step(const MatrixMeasure& m, std::mt19937_64& rng) {
  if (m.is_finite()) {
    double u = uniform01(rng);
    double cdf = 0.0;
    const auto& atoms = m.atoms();
    for (const auto& atom : atoms) {
      cdf += atom.prob;
      if (u < cdf) return atom.matrix;
    }
    return atoms.back().matrix;
  }
  Eigen::MatrixXcd step = Eigen::MatrixXcd::Identity(3, 3);
  for (const auto& factor : m.factors()) {
    double angle = factor.uniform() ? 2.0 * M_PI * uniform01(rng) : *factor.fixed_angle;
    step = step * rotation_about_axis(factor.axis, angle).cast<std::complex<double>>();
  }
  return step;
}

}  // namespace

MatrixMeasure MatrixMeasure::finite(std::vector<MatrixAtom> atoms, double tolerance) {
  if (atoms.empty())
    throw Error(ErrorKind::InvalidDistribution, "matrix measure needs at least one atom");
  const int d = int(atoms.front().matrix.rows());
  if (d < 1 || d > kMaxDimension)
    throw Error(ErrorKind::CapExceeded,
                "matrix dimension " + std::to_string(d) + " outside 1.." +
                    std::to_string(kMaxDimension));
  double sum = 0.0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    const auto& atom = atoms[i];
    if (atom.matrix.rows() != d || atom.matrix.cols() != d)
      throw Error(ErrorKind::InvalidDistribution,
                  "atom " + std::to_string(i) + " has mismatched dimensions");
    if (atom.prob < 0.0)
      throw Error(ErrorKind::InvalidDistribution,
                  "atom " + std::to_string(i) + " has negative probability");
    double defect = unitarity_defect(atom.matrix);
    if (defect > tolerance)
      throw Error(ErrorKind::InvalidDistribution,
                  "atom " + std::to_string(i) + " is not unitary: ||M'M - I|| = " +
                      std::to_string(defect));
    sum += atom.prob;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidDistribution,
                "atom probabilities sum to " + std::to_string(sum) + ", expected 1");
  MatrixMeasure m;
  m.dimension_ = d;
  m.tolerance_ = tolerance;
  m.kind_ = std::move(atoms);
  return m;
}

MatrixMeasure MatrixMeasure::parametric(Parametric factors, double tolerance) {
  if (factors.empty())
    throw Error(ErrorKind::InvalidDistribution, "parametric measure needs at least one factor");
  for (auto& factor : factors) {
    double norm = factor.axis.norm();
    if (norm == 0.0)
      throw Error(ErrorKind::InvalidDistribution, "axis-rotation factor has zero axis");
    factor.axis /= norm;
  }
  MatrixMeasure m;
  m.dimension_ = 3;
  m.tolerance_ = tolerance;
  m.kind_ = std::move(factors);
  return m;
}

Eigen::Matrix3d rotation_about_axis(const Eigen::Vector3d& axis, double angle) {
  Eigen::Vector3d u = axis.normalized();
  return Eigen::AngleAxisd(angle, u).toRotationMatrix();
}

Eigen::MatrixXcd kronecker_power(const Eigen::MatrixXcd& m, int degree) {
  if (degree < 1) throw Error(ErrorKind::InvalidDistribution, "tensor degree must be >= 1");
  Eigen::MatrixXcd out = m;
  for (int k = 1; k < degree; ++k) {
    Eigen::MatrixXcd next(out.rows() * m.rows(), out.cols() * m.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block(i * m.rows(), j * m.cols(), m.rows(), m.cols()) = out(i, j) * m;
    out = std::move(next);
  }
  return out;
}

MomentOperator moment_operator(const MatrixMeasure& m, int tensor_degree) {
  if (tensor_degree < 1 || tensor_degree > 3)
    throw Error(ErrorKind::CapExceeded, "tensor degree outside 1..3");
  const int dim = m.dimension();
  const int tdim = int(std::pow(double(dim), tensor_degree) + 0.5);

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(tdim, tdim);
  if (m.is_finite()) {
    for (const auto& atom : m.atoms())
      sum += atom.prob * kronecker_power(atom.matrix, tensor_degree);
  } else {
    // Independent factors: the mean of the product is the product of means.
    sum = Eigen::MatrixXcd::Identity(tdim, tdim);
    for (const auto& factor : m.factors()) {
      Eigen::MatrixXcd mean;
      if (!factor.uniform()) {
        mean = kronecker_power(
            rotation_about_axis(factor.axis, *factor.fixed_angle).cast<std::complex<double>>(),
            tensor_degree);
      } else {
        // Entries of R(theta)^{tensor k} are trig polynomials of degree <= k,
        // so the average over 8 > k equispaced angles equals the integral.
        const int quad_points = 8;
        mean = Eigen::MatrixXcd::Zero(tdim, tdim);
        for (int j = 0; j < quad_points; ++j) {
          double theta = 2.0 * M_PI * j / quad_points;
          mean += kronecker_power(
              rotation_about_axis(factor.axis, theta).cast<std::complex<double>>(),
              tensor_degree);
        }
        mean /= double(quad_points);
      }
      sum = sum * mean;
    }
  }
  return MomentOperator{tdim, tensor_degree, std::move(sum), std::nullopt};
}

double moment_power_norm(const MomentOperator& op, long long n) {
  if (n < 1) throw Error(ErrorKind::InvalidDistribution, "moment_power_norm needs n >= 1");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(op.matrix.rows(), op.matrix.cols());
  Eigen::MatrixXcd base = op.matrix;
  long long k = n;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return spectral_norm(acc);
}

MomentOperator estimate_moment(const MatrixMeasure& m, int walk_length, long long samples,
                               unsigned long long seed, int tensor_degree) {
  if (walk_length < 1) throw Error(ErrorKind::InvalidDistribution, "walk length must be >= 1");
  if (samples < 1) throw Error(ErrorKind::InvalidDistribution, "sample count must be >= 1");
  if (tensor_degree < 1 || tensor_degree > 3)
    throw Error(ErrorKind::CapExceeded, "tensor degree outside 1..3");

  const int dim = m.dimension();
  const int tdim = int(std::pow(double(dim), tensor_degree) + 0.5);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(tdim, tdim);
  Eigen::MatrixXd sumsq = Eigen::MatrixXd::Zero(tdim, tdim);

  // Fixed shard partition; each shard owns its stream, the merge is an exact
  // sum in shard order, so results do not depend on how work is scheduled.
  const long long shards = (samples + kShardSize - 1) / kShardSize;
  for (long long shard = 0; shard < shards; ++shard) {
    auto rng = shard_rng(seed, shard);
    const long long begin = shard * kShardSize;
    const long long end = std::min(samples, begin + kShardSize);
    Eigen::MatrixXcd shard_sum = Eigen::MatrixXcd::Zero(tdim, tdim);
    Eigen::MatrixXd shard_sumsq = Eigen::MatrixXd::Zero(tdim, tdim);
    for (long long s = begin; s < end; ++s) {
      Eigen::MatrixXcd walk = Eigen::MatrixXcd::Identity(dim, dim);
      for (int step = 0; step < walk_length; ++step) walk = walk * sample_step(m, rng);
      Eigen::MatrixXcd lifted = kronecker_power(walk, tensor_degree);
      shard_sum += lifted;
      shard_sumsq += lifted.cwiseAbs2();
    }
    sum += shard_sum;
    sumsq += shard_sumsq;
  }

  Eigen::MatrixXcd mean = sum / double(samples);
  Eigen::MatrixXd variance =
      (sumsq / double(samples) - mean.cwiseAbs2()).cwiseMax(0.0);
  Eigen::MatrixXd se = (variance / double(samples)).cwiseSqrt();

  return MomentOperator{tdim, tensor_degree, std::move(mean),
                        EstimateInfo{samples, seed, walk_length, std::move(se)}};
}

std::optional<ClassifiedOrbit> classify_finite_orbit(const MatrixMeasure& m, int cap,
                                                     double tol) {
  if (!m.is_finite())
    throw Error(ErrorKind::ConfigError, "classify_finite_orbit needs a finite-atom measure");

  std::vector<Eigen::MatrixXcd> elements;
  // -1 unseen; -2 collision sentinel unused; >= 0 index
  auto find = [&](const Eigen::MatrixXcd& candidate) -> int {
    int best = -1;
    double best_dist = 0.0;
    for (size_t i = 0; i < elements.size(); ++i) {
      double dist = (elements[i] - candidate).norm();
      if (dist <= tol) {
        if (best >= 0)
          throw Error(ErrorKind::ToleranceCollision,
                      "candidate matches elements " + std::to_string(best) + " and " +
                          std::to_string(i) + " within tol");
        best = int(i);
        best_dist = dist;
      } else if (dist <= kCollisionMargin * tol) {
        throw Error(ErrorKind::ToleranceCollision,
                    "two distinct products within " + std::to_string(kCollisionMargin) +
                        "*tol (distance " + std::to_string(dist) + "); tighten tol");
      }
    }
    (void)best_dist;
    return best;
  };

  std::vector<element_t> atom_elements;
  for (const auto& atom : m.atoms()) {
    int idx = find(atom.matrix);
    if (idx < 0) {
      idx = int(elements.size());
      elements.push_back(atom.matrix);
    }
    atom_elements.push_back(idx);
  }

  const auto& atoms = m.atoms();
  for (size_t head = 0; head < elements.size(); ++head) {
    Eigen::MatrixXcd current = elements[head];
    for (const auto& atom : atoms) {
      Eigen::MatrixXcd next = current * atom.matrix;
      if (find(next) < 0) {
        if (int(elements.size()) >= cap) return std::nullopt;  // presumed infinite or dense
        elements.push_back(std::move(next));
      }
    }
  }

  const int n = int(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int idx = find(elements[a] * elements[b]);
      if (idx < 0)
        throw Error(ErrorKind::ToleranceCollision,
                    "product of elements " + std::to_string(a) + " and " + std::to_string(b) +
                        " left the closed orbit; tighten tol");
      table[a][b] = idx;
    }

  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "m" + std::to_string(i);
  GroupPtr group = FiniteGroup::from_cayley(table, labels);
  return ClassifiedOrbit{std::move(group), std::move(atom_elements), std::move(elements)};
}

MomentDecayCheck moment_decay_check(const MomentOperator& op, int horizon, double settle_tol) {
  if (horizon < 8) throw Error(ErrorKind::InvalidDistribution, "horizon must be >= 8");
  MomentDecayCheck check;
  check.degree = op.tensor_degree;

  Eigen::MatrixXcd power = op.matrix;
  Eigen::MatrixXcd previous;
  check.min_norm = spectral_norm(power);
  check.min_norm_at = 1;
  const int mid_start = horizon / 2;
  const int tail_start = horizon - horizon / 4;
  for (int n = 1; n <= horizon; ++n) {
    if (n > 1) {
      previous = power;
      power = power * op.matrix;
      double gap = spectral_norm(power - previous);
      if (n > tail_start) check.tail_gap = std::max(check.tail_gap, gap);
      else if (n > mid_start) check.mid_gap = std::max(check.mid_gap, gap);
    }
    double norm = spectral_norm(power);
    if (norm < check.min_norm) {
      check.min_norm = norm;
      check.min_norm_at = n;
    }
    if (n == horizon) check.final_norm = norm;
  }
  check.settled = check.tail_gap < settle_tol || check.tail_gap <= 0.7 * check.mid_gap;
  return check;
}

}  // namespace groupwalk
