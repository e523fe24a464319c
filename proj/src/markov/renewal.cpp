#include "uavrel/markov/renewal.hpp"

#include <algorithm>
#include <limits>

#include "uavrel/error.hpp"

namespace uavrel::markov {

namespace {

// Kernel of one transient state, aggregated by target state.
struct KernelRow {
  std::size_t from;
  std::vector<std::size_t> targets;
  std::vector<std::vector<KernelEntry>> entries;  // per target
};

}  // namespace

RenewalSolution solve_markov_renewal(const MarkovModel& input, const StateDistribution& p0,
                                     const TimeGrid& grid, GridPolicy policy) {
  const MarkovModel model =
      input.kind() == ModelKind::kGeneralSojourn ? input : as_semi_markov(input);
  validate_distribution(model, p0);
  if (!(grid.step > 0.0) || grid.intervals == 0) {
    throw Error(ErrorCode::kInvalidArgument, "renewal grid needs step > 0 and >= 1 interval");
  }

  const std::size_t n = model.size();
  const std::size_t cells = grid.intervals;

  RenewalSolution solution;
  double shortest = std::numeric_limits<double>::infinity();
  std::vector<KernelRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (model.is_absorbing(i)) continue;
    KernelRow row{i, {}, {}};
    for (const auto& e : model.kernel(i)) {
      shortest = std::min(shortest, characteristic_time(e.sojourn));
      auto it = std::find(row.targets.begin(), row.targets.end(), e.to);
      if (it == row.targets.end()) {
        row.targets.push_back(e.to);
        row.entries.push_back({e});
      } else {
        row.entries[static_cast<std::size_t>(it - row.targets.begin())].push_back(e);
      }
    }
    rows.push_back(std::move(row));
  }
  if (grid.step > shortest / 10.0) {
    if (policy == GridPolicy::kStrict) {
      throw Error(ErrorCode::kGridTooCoarse,
                  "grid step " + std::to_string(grid.step) +
                      " h exceeds a tenth of the shortest sojourn scale " +
                      std::to_string(shortest) + " h");
    }
    solution.grid_too_coarse = true;
  }

  // Q_ik(t) at every grid point, flattened as [row][target][point].
  auto kernel_at = [&](const KernelRow& row, std::size_t t_idx, double t) {
    const auto& group = row.entries[t_idx];
    double q = 0.0;
    for (const auto& e : group) q += e.probability * cdf(e.sojourn, t);
    return q;
  };
  std::vector<std::vector<std::vector<double>>> dq(rows.size());
  std::vector<std::vector<double>> sojourn_cdf(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    dq[r].assign(row.targets.size(), std::vector<double>(cells + 1, 0.0));
    sojourn_cdf[r].assign(cells + 1, 0.0);
    for (std::size_t t = 0; t < row.targets.size(); ++t) {
      double previous = kernel_at(row, t, 0.0);
      for (std::size_t l = 1; l <= cells; ++l) {
        const double current = kernel_at(row, t, grid.at(l));
        dq[r][t][l] = current - previous;
        sojourn_cdf[r][l] += current;
        previous = current;
      }
    }
  }

  // A_k = (P_{k-1} + P_k) / 2, stored row-major n*n per k.
  const std::size_t nn = n * n;
  std::vector<double> averaged((cells + 1) * nn, 0.0);
  Eigen::MatrixXd previous = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                       static_cast<Eigen::Index>(n));

  // Implicit part: (I - dQ_1 / 2) P_m = rhs.
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                  static_cast<Eigen::Index>(n));
  if (cells >= 1) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t t = 0; t < rows[r].targets.size(); ++t) {
        lhs(static_cast<Eigen::Index>(rows[r].from),
            static_cast<Eigen::Index>(rows[r].targets[t])) -= 0.5 * dq[r][t][1];
      }
    }
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> implicit(lhs);

  const Eigen::RowVectorXd start = p0.probs.transpose();
  solution.distributions.reserve(cells + 1);
  solution.distributions.push_back(StateDistribution{p0.time, p0.probs});

  Eigen::MatrixXd rhs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t m = 1; m <= cells; ++m) {
    rhs.setZero();
    for (std::size_t i = 0; i < n; ++i) {
      if (model.is_absorbing(i)) rhs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      const auto i = static_cast<Eigen::Index>(row.from);
      rhs(i, i) += 1.0 - sojourn_cdf[r][m];
      for (std::size_t t = 0; t < row.targets.size(); ++t) {
        const std::size_t k = row.targets[t];
        const auto& increments = dq[r][t];
        // explicit half of the l = 1 cell
        double w = 0.5 * increments[1];
        if (w != 0.0) {
          for (std::size_t j = 0; j < n; ++j) {
            rhs(i, static_cast<Eigen::Index>(j)) +=
                w * previous(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
          }
        }
        for (std::size_t l = 2; l <= m; ++l) {
          w = increments[l];
          if (w == 0.0) continue;
          const double* a = &averaged[(m - l + 1) * nn + k * n];
          for (std::size_t j = 0; j < n; ++j) rhs(i, static_cast<Eigen::Index>(j)) += w * a[j];
        }
      }
    }
    Eigen::MatrixXd current = implicit.solve(rhs);
    double* slot = &averaged[m * nn];
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const auto ai = static_cast<Eigen::Index>(a);
        const auto bi = static_cast<Eigen::Index>(b);
        slot[a * n + b] = 0.5 * (previous(ai, bi) + current(ai, bi));
      }
    }
    solution.distributions.push_back(
        StateDistribution{p0.time + grid.at(m), (start * current).transpose()});
    previous = std::move(current);
  }
  return solution;
}

}  // namespace uavrel::markov
