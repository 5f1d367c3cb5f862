#include "chaincx/numerics.hpp"

#include <algorithm>

namespace chaincx {

GaussianStream::GaussianStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double GaussianStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

RankVector greedy_rank_vector(const ComplexShape& shape) {
  std::vector<Index> ranks(shape.length());
  Index previous = 0;
  for (std::size_t i = 1; i <= shape.length(); ++i) {
    ranks[i - 1] = std::min(shape[i], shape[i - 1] - previous);
    previous = ranks[i - 1];
  }
  return RankVector(std::move(ranks));
}

ConditionedMatrix random_conditioned_matrix(Eigen::Index size, double max_condition,
                                            GaussianStream& stream) {
  if (!(max_condition >= 1.0)) throw ContractViolation("condition bound must be >= 1");
  if (size == 0) return {DenseMatrix<double>(0, 0), DenseMatrix<double>(0, 0)};
  auto orthogonal = [&] {
    Eigen::HouseholderQR<DenseMatrix<double>> qr(stream.matrix(size, size));
    return DenseMatrix<double>(qr.householderQ());
  };
  const DenseMatrix<double> u = orthogonal();
  const DenseMatrix<double> v = orthogonal();
  Eigen::VectorXd singular(size);
  for (Eigen::Index k = 0; k < size; ++k) singular(k) = std::pow(max_condition, stream.uniform());
  return {u * singular.asDiagonal() * v.transpose(),
          v * singular.cwiseInverse().asDiagonal() * u.transpose()};
}

}  // namespace chaincx
