// Small dense conic solver: primal-dual path following with Nesterov-Todd
// scaling and Mehrotra predictor-corrector steps, over the product of a
// non-negative orthant and dense PSD blocks.
//
//   minimize    c'x
//   subject to  A(x) - b in K,   K = R^m_+  x  S^{d_1}_+ x ... x S^{d_B}_+
//
// with dual
//
//   maximize    <b, z>
//   subject to  A*(z) = c,  z in K.
//
// The constraint map is stored column-wise and sparsely: each variable
// contributes a few LP coefficients and a few symmetric elementary matrices
// per PSD block.  Problem sizes here are tiny (a few hundred variables,
// blocks up to ~40x40), so everything is dense Eigen.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace pptforge::conic {

/// v * (E_rc + E_cr) when r != c, v * E_rr when r == c.
struct SymEntry {
  int r = 0;
  int c = 0;
  double v = 0.0;
};

/// One variable's image under the constraint map A.
struct Column {
  std::vector<std::pair<int, double>> lp;     // (row, coefficient)
  std::vector<std::vector<SymEntry>> blocks;  // one entry list per PSD block
};

struct Problem {
  int lp_dim = 0;
  std::vector<int> block_dims;
  std::vector<double> objective;       // c, length n
  std::vector<Column> columns;         // length n
  Eigen::VectorXd b_lp;                // length lp_dim
  std::vector<Eigen::MatrixXd> b_blocks;
};

enum class Status { Optimal, MaxIter, Degenerate };

struct Options {
  int max_iter = 200;
  double feas_tol = 1e-9;
  double gap_tol = 5e-8;         // relative complementarity gap target
  double gap_tol_accept = 1e-7;  // best iterate within this still counts Optimal
  int stall_limit = 8;           // iterations without improvement before stopping
  bool trace = false;      // record (primal, dual) objective per iterate
  // Called once per iteration with the current iterate (x, z).
  std::function<void(const Eigen::VectorXd& x, const Eigen::VectorXd& z_lp,
                     const std::vector<Eigen::MatrixXd>& z_blocks)>
      on_iterate;
};

struct Solution {
  Status status = Status::Degenerate;
  Eigen::VectorXd x;
  Eigen::VectorXd z_lp;                 // dual multipliers for the orthant
  std::vector<Eigen::MatrixXd> z_blocks;
  Eigen::VectorXd s_lp;                 // primal slacks
  std::vector<Eigen::MatrixXd> s_blocks;
  double primal_obj = 0.0;
  double dual_obj = 0.0;   // <b, z>; a certified bound only when dual residual ~ 0
  double gap = 0.0;        // primal_obj - dual_obj
  double primal_res = 0.0;
  double dual_res = 0.0;
  int iterations = 0;
  std::vector<std::pair<double, double>> trajectory;  // per-iteration objectives
};

/// Solves the problem from a caller-supplied starting point x0 whose slack
/// A(x0) - b should be strictly interior (it is shifted into the cone if not,
/// at the cost of a primal residual that the iteration then removes).
Solution solve(const Problem& problem, const Eigen::VectorXd& x0,
               const Options& options = {});

}  // namespace pptforge::conic
