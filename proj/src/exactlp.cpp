#include "pqpierce/exactlp.hpp"

#include <stdexcept>
#include <string>

namespace pqpierce::lp {

void LinearProgram::validate() const {
  const std::size_t c = cols();
  if (A.size() != b.size())
    throw std::invalid_argument("LP: A has " + std::to_string(A.size()) + " rows but b has " +
                                std::to_string(b.size()));
  for (const auto& row : A)
    if (row.size() != c) throw std::invalid_argument("LP: ragged constraint matrix");
  if (objective && objective->size() != c)
    throw std::invalid_argument("LP: objective length differs from column count");
  if (sense == Sense::Maximize && !objective)
    throw std::invalid_argument("LP: maximize without an objective");
}

namespace {

/// Dense tableau for [A | I | -1] x = b. Column layout: structural columns
/// 0..n-1, slack n+i for row i, and the phase-one column n+r last.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp)
      : rows_(lp.rows()), structural_(lp.cols()), cols_(structural_ + rows_ + 1) {
    t_.assign(rows_, Vector(cols_));
    rhs_ = lp.b;
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < structural_; ++j) t_[i][j] = lp.A[i][j];
      t_[i][structural_ + i] = 1;
      t_[i][artificial()] = -1;
      basis_[i] = structural_ + i;
    }
    blocked_.assign(cols_, false);
  }

  std::size_t artificial() const { return cols_ - 1; }

  /// Installs objective (length cols_) and recomputes reduced costs
  /// z_j = c_B B^-1 a_j - c_j for the current basis.
  void set_objective(const Vector& c) {
    cost_ = c;
    z_.assign(cols_, Rational(0));
    value_ = 0;
    for (std::size_t j = 0; j < cols_; ++j) z_[j] = -c[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (t_[i][j] != 0) z_[j] += cb * t_[i][j];
      value_ += cb * rhs_[i];
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / t_[row][col];
    for (auto& v : t_[row])
      if (v != 0) v *= inv;
    rhs_[row] *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || t_[i][col] == 0) continue;
      const Rational f = t_[i][col];
      for (std::size_t j = 0; j < cols_; ++j)
        if (t_[row][j] != 0) t_[i][j] -= f * t_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    if (z_.size() == cols_ && z_[col] != 0) {
      const Rational f = z_[col];
      for (std::size_t j = 0; j < cols_; ++j)
        if (t_[row][j] != 0) z_[j] -= f * t_[row][j];
      value_ -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  enum class Result { Optimal, Unbounded };

  /// Primal simplex with Bland's rule: lowest-index improving column, and
  /// among tied ratios the row whose basic variable has the lowest index.
  Result run(std::size_t& unbounded_col) {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!blocked_[j] && z_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols_) return Result::Optimal;
      std::size_t leave = rows_;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = rhs_[i] / t_[i][enter];
        if (leave == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == rows_) {
        unbounded_col = enter;
        return Result::Unbounded;
      }
      pivot(leave, enter);
    }
  }

  Vector primal() const {
    Vector x(structural_);
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < structural_) x[basis_[i]] = rhs_[i];
    return x;
  }

  Vector dual() const {
    Vector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) y[i] = z_[structural_ + i];
    return y;
  }

  /// Direction along which entering column `col` grows without bound.
  Vector ray(std::size_t col) const {
    Vector r(structural_);
    if (col < structural_) r[col] = 1;
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < structural_) r[basis_[i]] = -t_[i][col];
    return r;
  }

  /// Removes the phase-one column from the basis (always possible: its row
  /// of B^-1 is nonzero on some slack or structural column) and blocks it.
  void retire_artificial() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] != artificial()) continue;
      for (std::size_t j = 0; j < artificial(); ++j) {
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
      if (basis_[i] == artificial()) throw std::logic_error("simplex: phase-one column stuck in basis");
    }
    blocked_[artificial()] = true;
  }

  const Rational& value() const { return value_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_, structural_, cols_;
  std::vector<Vector> t_;
  Vector rhs_;
  std::vector<std::size_t> basis_;
  std::vector<bool> blocked_;
  Vector cost_;
  Vector z_;
  Rational value_;
};

Vector mat_vec(const Matrix& A, const Vector& x) {
  Vector out(A.size());
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (A[i][j] != 0 && x[j] != 0) out[i] += A[i][j] * x[j];
  return out;
}

Vector vec_mat(const Vector& y, const Matrix& A, std::size_t cols) {
  Vector out(cols);
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j)
      if (A[i][j] != 0) out[j] += y[i] * A[i][j];
  }
  return out;
}

Rational dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

bool nonnegative(const Vector& v) {
  for (const auto& e : v)
    if (e < 0) return false;
  return true;
}

bool primal_feasible(const LinearProgram& lp, const Vector& x) {
  if (x.size() != lp.cols() || !nonnegative(x)) return false;
  const Vector ax = mat_vec(lp.A, x);
  for (std::size_t i = 0; i < lp.rows(); ++i)
    if (ax[i] > lp.b[i]) return false;
  return true;
}

}  // namespace

LPOutcome solve(const LinearProgram& lp) {
  lp.validate();
  const std::size_t n = lp.cols();
  const std::size_t r = lp.rows();
  Tableau tab(lp);

  std::size_t most_negative = r;
  for (std::size_t i = 0; i < r; ++i)
    if (lp.b[i] < 0 && (most_negative == r || lp.b[i] < lp.b[most_negative])) most_negative = i;

  if (most_negative != r) {
    // Phase one: maximize -t over Ax - t <= b. Pivoting t into the most
    // violated row makes every right-hand side nonnegative.
    Vector phase1(tab.cols());
    phase1[tab.artificial()] = -1;
    tab.set_objective(phase1);
    tab.pivot(most_negative, tab.artificial());
    std::size_t col = 0;
    if (tab.run(col) != Tableau::Result::Optimal)
      throw std::logic_error("simplex: phase one cannot be unbounded");
    if (tab.value() < 0) return Infeasible{tab.dual()};
    tab.retire_artificial();
  } else {
    tab.retire_artificial();
  }

  if (lp.sense == Sense::Feasibility) return Feasible{tab.primal()};

  Vector cost(tab.cols());
  for (std::size_t j = 0; j < n; ++j) cost[j] = (*lp.objective)[j];
  tab.set_objective(cost);
  std::size_t col = 0;
  if (tab.run(col) == Tableau::Result::Unbounded) return Unbounded{tab.primal(), tab.ray(col)};
  return Optimal{tab.primal(), tab.dual(), tab.value()};
}

bool verify_certificate(const LinearProgram& lp, const LPOutcome& out) {
  try {
    lp.validate();
  } catch (const std::invalid_argument&) {
    return false;
  }
  const std::size_t n = lp.cols();
  const std::size_t r = lp.rows();
  return std::visit(
      [&](const auto& o) -> bool {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Feasible>) {
          return primal_feasible(lp, o.x);
        } else if constexpr (std::is_same_v<T, Infeasible>) {
          if (o.y.size() != r || !nonnegative(o.y)) return false;
          if (!nonnegative(vec_mat(o.y, lp.A, n))) return false;
          return dot(o.y, lp.b) < 0;
        } else if constexpr (std::is_same_v<T, Optimal>) {
          if (!lp.objective || !primal_feasible(lp, o.x)) return false;
          if (o.y.size() != r || !nonnegative(o.y)) return false;
          const Vector ya = vec_mat(o.y, lp.A, n);
          for (std::size_t j = 0; j < n; ++j)
            if (ya[j] < (*lp.objective)[j]) return false;
          return dot(*lp.objective, o.x) == o.value && dot(o.y, lp.b) == o.value;
        } else {
          if (!lp.objective || !primal_feasible(lp, o.x)) return false;
          if (o.ray.size() != n || !nonnegative(o.ray)) return false;
          const Vector ar = mat_vec(lp.A, o.ray);
          for (const auto& v : ar)
            if (v > 0) return false;
          return dot(*lp.objective, o.ray) > 0;
        }
      },
      out);
}

const char* status_name(const LPOutcome& out) {
  static constexpr const char* kNames[] = {"feasible", "infeasible", "optimal", "unbounded"};
  return kNames[out.index()];
}

NormalizedProgram normalize(const GeneralProgram& program) {
  const std::size_t nv = program.num_vars;
  if (!program.free_vars.empty() && program.free_vars.size() != nv)
    throw std::invalid_argument("normalize: free_vars length differs from num_vars");
  NormalizedProgram out;
  out.negative_column.resize(nv);
  std::size_t cols = nv;
  for (std::size_t j = 0; j < nv; ++j)
    if (!program.free_vars.empty() && program.free_vars[j]) out.negative_column[j] = cols++;

  auto expand = [&](const Vector& coeffs, const Rational& sign) {
    if (coeffs.size() != nv) throw std::invalid_argument("normalize: coefficient row has wrong length");
    Vector row(cols);
    for (std::size_t j = 0; j < nv; ++j) {
      row[j] = sign * coeffs[j];
      if (out.negative_column[j]) row[*out.negative_column[j]] = -row[j];
    }
    return row;
  };

  for (const auto& c : program.constraints) {
    std::vector<std::size_t> produced;
    auto emit = [&](const Rational& sign) {
      produced.push_back(out.lp.A.size());
      out.lp.A.push_back(expand(c.coeffs, sign));
      out.lp.b.push_back(sign * c.rhs);
    };
    switch (c.relation) {
      case Relation::LessEqual: emit(1); break;
      case Relation::GreaterEqual: emit(-1); break;
      case Relation::Equal:
        emit(1);
        emit(-1);
        break;
    }
    out.rows_of.push_back(std::move(produced));
    out.relations.push_back(c.relation);
  }
  if (program.objective) out.lp.objective = expand(*program.objective, 1);
  out.lp.sense = program.sense;
  if (out.lp.A.empty() && !out.lp.objective) out.lp.objective = Vector(cols);
  out.lp.validate();
  return out;
}

Vector NormalizedProgram::recover_primal(const Vector& x) const {
  Vector out(negative_column.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = x[j];
    if (negative_column[j]) out[j] -= x[*negative_column[j]];
  }
  return out;
}

Vector NormalizedProgram::recover_dual(const Vector& y) const {
  Vector out(rows_of.size());
  for (std::size_t i = 0; i < rows_of.size(); ++i) {
    switch (relations[i]) {
      case Relation::LessEqual: out[i] = y[rows_of[i][0]]; break;
      case Relation::GreaterEqual: out[i] = -y[rows_of[i][0]]; break;
      case Relation::Equal: out[i] = y[rows_of[i][0]] - y[rows_of[i][1]]; break;
    }
  }
  return out;
}

}  // namespace pqpierce::lp
