#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace densecomb {

/// Exact integer coordinates of a lattice point with respect to the scheme's
/// basis.  All real positions are derived from these on demand; the integer
/// vector is the only primary representation, so set operations (membership,
/// differences) never suffer floating drift.
using Coords = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

Coords make_coords(std::initializer_list<std::int64_t> values);

/// Lexicographic order on integer coordinate vectors (equal lengths assumed).
struct CoordsLess {
  bool operator()(const Coords& a, const Coords& b) const {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

struct Ball {
  Eigen::VectorXd center;
  double radius;
};

Ball origin_ball(int dim, double radius);

/// A cut-and-project scheme: a nonsingular lattice basis for R^d x R^m whose
/// first d rows span direct space and last m rows span internal space.
///
/// The number-theoretic requirements (direct projection one-to-one on the
/// lattice, internal image dense) cannot be decided from floating point data,
/// so they are tracked as a certificate flag: algebraic constructors
/// (fibonacci()) set it, from_basis() leaves the scheme uncertified unless
/// the caller insists.
class CutProjectScheme {
 public:
  /// The Z[tau] scheme: basis columns (1,1) and (tau, 1-tau) with
  /// tau = (1+sqrt 5)/2.  The star map sends a + b*tau to a + b*(1-tau).
  static CutProjectScheme fibonacci();

  static CutProjectScheme from_basis(int dim_direct, int dim_internal,
                                     const Eigen::MatrixXd& basis,
                                     std::string name = "custom", bool certified = false);

  int dim_direct() const { return dim_direct_; }
  int dim_internal() const { return dim_internal_; }
  int dim_total() const { return dim_direct_ + dim_internal_; }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::MatrixXd& inverse_basis() const { return inverse_; }
  const std::string& name() const { return name_; }
  bool certified() const { return certified_; }

  /// |det(basis)|, the volume of the lattice's fundamental domain.
  double covolume() const { return covolume_; }

  /// The dual scheme: basis = inverse transpose, so that
  /// dual_basis^T * basis = identity.  Throws ValidationError when the basis
  /// condition number exceeds cond_limit.
  CutProjectScheme dual(double cond_limit = 1e12) const;

  /// First d components of basis * coords.
  Eigen::VectorXd direct(const Coords& p) const;
  /// Last m components of basis * coords (the star map).
  Eigen::VectorXd star(const Coords& p) const;

 private:
  CutProjectScheme() = default;

  int dim_direct_ = 0;
  int dim_internal_ = 0;
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd inverse_;
  double covolume_ = 0.0;
  bool certified_ = false;
  std::string name_;
};

/// Columnar list of lattice points: row i of each matrix describes one point.
/// Positions are derived from the integer coordinates at enumeration time.
struct LatticePointList {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> coords;  // n x (d+m)
  Eigen::MatrixXd direct;                                              // n x d
  Eigen::MatrixXd star;                                                // n x m
  std::size_t size() const { return static_cast<std::size_t>(coords.rows()); }
};

struct EnumerateOptions {
  std::size_t max_points = 50'000'000;
  std::size_t max_visits = 2'000'000'000;
  /// Closed-ball membership is decided with this absolute slack on the norm.
  double membership_tol = 1e-12;
};

/// All lattice points whose direct position lies in the closed direct_ball
/// and whose star lies in the closed internal_ball, sorted lexicographically
/// by integer coordinates.  Enumeration walks an integer search tree whose
/// per-level ranges come from interval arithmetic on the inverse basis and
/// on the box relaxation of the two balls; candidates then pass an exact
/// membership test.  Throws ResourceCapError when the caps are exceeded.
LatticePointList enumerate_points(const CutProjectScheme& scheme, const Ball& direct_ball,
                                  const Ball& internal_ball,
                                  const EnumerateOptions& options = {});

}  // namespace densecomb
