#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "pqpierce/rational.hpp"

namespace pqpierce::lp {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

enum class Sense { Feasibility, Maximize };

/// Ax <= b, x >= 0, optionally maximizing objective . x.
struct LinearProgram {
  Matrix A;
  Vector b;
  std::optional<Vector> objective;
  Sense sense = Sense::Feasibility;

  std::size_t rows() const { return b.size(); }
  std::size_t cols() const { return A.empty() ? (objective ? objective->size() : 0) : A.front().size(); }

  /// Throws std::invalid_argument on inconsistent shapes.
  void validate() const;
};

struct Feasible {
  Vector x;
  friend bool operator==(const Feasible&, const Feasible&) = default;
};

/// Farkas certificate: y >= 0, yA >= 0, y.b < 0.
struct Infeasible {
  Vector y;
  friend bool operator==(const Infeasible&, const Infeasible&) = default;
};

/// Primal x, dual y (y >= 0, yA >= c) with c.x = y.b = value.
struct Optimal {
  Vector x;
  Vector y;
  Rational value;
  friend bool operator==(const Optimal&, const Optimal&) = default;
};

/// Feasible x plus a ray r >= 0 with Ar <= 0 and c.r > 0.
struct Unbounded {
  Vector x;
  Vector ray;
  friend bool operator==(const Unbounded&, const Unbounded&) = default;
};

using LPOutcome = std::variant<Feasible, Infeasible, Optimal, Unbounded>;

/// Two-phase primal simplex over exact rationals with Bland's rule.
/// Deterministic; every outcome carries its certificate.
LPOutcome solve(const LinearProgram& lp);

/// Re-checks the certificate carried by `out` against `lp` from scratch.
bool verify_certificate(const LinearProgram& lp, const LPOutcome& out);

const char* status_name(const LPOutcome& out);

// Normalization of general programs into Ax <= b, x >= 0.

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
  Vector coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

struct GeneralProgram {
  std::size_t num_vars = 0;
  /// Variables flagged free are unrestricted in sign; all others are >= 0.
  std::vector<bool> free_vars;
  std::vector<Constraint> constraints;
  std::optional<Vector> objective;
  Sense sense = Sense::Feasibility;
};

/// Result of normalize(). Each >= row is negated, each equality becomes a
/// <= row followed by a negated <= row, and each free variable x becomes
/// x+ - x- with x- appended after the original columns.
struct NormalizedProgram {
  LinearProgram lp;
  /// For each original variable, the column of its negative part if free.
  std::vector<std::optional<std::size_t>> negative_column;
  /// For each original constraint, the standard rows it produced.
  std::vector<std::vector<std::size_t>> rows_of;
  std::vector<Relation> relations;

  /// Original-variable values from a standard-form x.
  Vector recover_primal(const Vector& x) const;
  /// Multiplier per original constraint from a standard-form y: y for <=,
  /// -y for >=, y+ - y- for equalities. Signs follow the Lagrangian of the
  /// <= form, so <= multipliers are >= 0 and >= multipliers are <= 0.
  Vector recover_dual(const Vector& y) const;
};

NormalizedProgram normalize(const GeneralProgram& program);

}  // namespace pqpierce::lp
