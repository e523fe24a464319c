#include "uavrel/markov/absorbing.hpp"

#include <cmath>

#include "uavrel/error.hpp"

namespace uavrel::markov {

namespace {

Eigen::MatrixXd take(const Eigen::MatrixXd& m, std::span<const StateIndex> rows,
                     std::span<const StateIndex> cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          m(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c]));
    }
  }
  return out;
}

Eigen::VectorXd solve_checked(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kSingularSystem, "absorption is not reachable from every state");
  }
  Eigen::VectorXd x = lu.solve(b);
  if (!x.allFinite()) {
    throw Error(ErrorCode::kSingularSystem, "non-finite expected absorption time");
  }
  return x;
}

}  // namespace

Eigen::MatrixXd CanonicalDecomposition::reassemble() const {
  const auto t = static_cast<Eigen::Index>(transient_count());
  const auto r = static_cast<Eigen::Index>(absorbing_count());
  Eigen::MatrixXd canonical(t + r, t + r);
  canonical.topLeftCorner(t, t) = transient;
  canonical.topRightCorner(t, r) = to_absorbing;
  canonical.bottomLeftCorner(r, t) = absorbing_transient;
  canonical.bottomRightCorner(r, r) = absorbing_block;

  Eigen::MatrixXd original(t + r, t + r);
  for (Eigen::Index a = 0; a < t + r; ++a) {
    for (Eigen::Index b = 0; b < t + r; ++b) {
      original(static_cast<Eigen::Index>(permutation[static_cast<std::size_t>(a)]),
               static_cast<Eigen::Index>(permutation[static_cast<std::size_t>(b)])) =
          canonical(a, b);
    }
  }
  return original;
}

CanonicalDecomposition canonical_form(const Eigen::MatrixXd& matrix,
                                      std::span<const StateIndex> absorbing) {
  const auto n = static_cast<std::size_t>(matrix.rows());
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "canonical form needs a square matrix");
  }
  std::vector<bool> mask(n, false);
  for (StateIndex s : absorbing) {
    if (s >= n) throw Error(ErrorCode::kOutOfRange, "absorbing index outside the matrix");
    mask[s] = true;
  }
  std::vector<StateIndex> transient_states;
  std::vector<StateIndex> absorbing_states;
  for (StateIndex i = 0; i < n; ++i) (mask[i] ? absorbing_states : transient_states).push_back(i);
  if (absorbing_states.empty()) {
    throw Error(ErrorCode::kNoneAbsorbing, "no absorbing state given");
  }
  if (transient_states.empty()) {
    throw Error(ErrorCode::kAllAbsorbing, "every state is absorbing");
  }

  CanonicalDecomposition out;
  out.permutation = transient_states;
  out.permutation.insert(out.permutation.end(), absorbing_states.begin(), absorbing_states.end());
  out.transient = take(matrix, transient_states, transient_states);
  out.to_absorbing = take(matrix, transient_states, absorbing_states);
  out.absorbing_transient = take(matrix, absorbing_states, transient_states);
  out.absorbing_block = take(matrix, absorbing_states, absorbing_states);
  return out;
}

CanonicalDecomposition canonical_form(const MarkovModel& model) {
  return canonical_form(model.embedded_chain(), model.absorbing());
}

Eigen::MatrixXd fundamental_matrix(const CanonicalDecomposition& chain) {
  const auto t = static_cast<Eigen::Index>(chain.transient_count());
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(t, t) - chain.transient;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kSingularSystem, "I - Q is singular; absorption is not certain");
  }
  return lu.inverse();
}

Eigen::VectorXd expected_steps(const CanonicalDecomposition& chain) {
  return fundamental_matrix(chain) *
         Eigen::VectorXd::Ones(static_cast<Eigen::Index>(chain.transient_count()));
}

Eigen::VectorXd mean_time_to_absorption(const MarkovModel& model) {
  const CanonicalDecomposition chain = canonical_form(model);
  const Eigen::VectorXd sojourn = model.mean_sojourn();
  Eigen::VectorXd weights(static_cast<Eigen::Index>(chain.transient_count()));
  for (std::size_t k = 0; k < chain.transient_count(); ++k) {
    weights(static_cast<Eigen::Index>(k)) = sojourn(static_cast<Eigen::Index>(chain.permutation[k]));
  }
  const Eigen::VectorXd times = fundamental_matrix(chain) * weights;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.size()));
  for (std::size_t k = 0; k < chain.transient_count(); ++k) {
    out(static_cast<Eigen::Index>(chain.permutation[k])) = times(static_cast<Eigen::Index>(k));
  }
  return out;
}

double mttf_from_state(const MarkovModel& model, StateIndex start) {
  if (start >= model.size()) throw Error(ErrorCode::kOutOfRange, "start state outside the model");
  if (model.is_absorbing(start)) return 0.0;

  if (model.kind() == ModelKind::kGeneralSojourn) {
    return mean_time_to_absorption(model)(static_cast<Eigen::Index>(start));
  }

  const std::vector<StateIndex> transient = model.operational();
  const Eigen::MatrixXd block = take(model.generator(), transient, transient);
  const Eigen::VectorXd m =
      solve_checked(-block, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(transient.size())));
  for (std::size_t k = 0; k < transient.size(); ++k) {
    if (transient[k] == start) return m(static_cast<Eigen::Index>(k));
  }
  return 0.0;  // unreachable: start is operational
}

}  // namespace uavrel::markov
