#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wordtensor/chartable.hpp"
#include "wordtensor/group.hpp"
#include "wordtensor/tolerances.hpp"

namespace wt {

enum class BscType { I, II, III };

// A basic self-conjugate representation: a real irreducible (type I), a
// conjugate pair of complex irreducibles (type II), or a quaternionic
// irreducible (type III), together with an orthonormal basis of its space
// R_phi of real matrix coefficients.
struct Bsc {
  int index = 0;
  std::vector<int> constituents;  // irrep indices, 1 or 2 entries
  BscType type = BscType::I;
  int d = 1;                      // dimension of the representation
  int D = 1;                      // dim R_phi: d^2 for I/III, d^2/2 for II
  Eigen::VectorXd character;      // real character over elements
  Eigen::MatrixXd basis;          // D x |G|, orthonormal rows spanning R_phi
};

struct BscSystem {
  // Owns a copy of the group so the system (and the character table inside
  // it) stays valid independently of the caller's group lifetime.
  std::shared_ptr<const FiniteGroup> group_storage;
  const FiniteGroup* group = nullptr;
  CharacterTable table;
  std::vector<int> fs;            // Frobenius-Schur indicator per irrep
  std::vector<Bsc> bscs;
  std::vector<int> irrep_to_bsc;

  int size() const { return static_cast<int>(bscs.size()); }
  const Bsc& operator[](int i) const { return bscs[i]; }
};

// Bsc assembly with indices in non-decreasing D order (Triv = 0); ties among
// equal D broken by descending-lexicographic character vector, which
// reproduces the published index conventions for the groups shipped here.
BscSystem compute_bscs(const FiniteGroup& g);

// |G| x |G| matrix of the central-idempotent convolution projecting R^G onto
// the span of the given irreps' matrix coefficients.
Eigen::MatrixXd isotypic_projector(const FiniteGroup& g,
                                   const CharacterTable& table,
                                   const std::vector<int>& irreps);

Eigen::VectorXd project_vector(const BscSystem& sys, const Eigen::VectorXd& v,
                               int bsc);

// Per-bsc squared projection energies, normalized by ||v||^2 (all zeros for
// the zero vector).
Eigen::VectorXd bsc_energies(const BscSystem& sys, const Eigen::VectorXd& v);
std::vector<int> bsc_support(const BscSystem& sys, const Eigen::VectorXd& v,
                             double tau = tol::kRowSupport);

// Structure constants of R_phi in the stored basis: v^k_{gh} = r^k_{ij}
// v^i_g v^j_h and v^k_{g^-1} = s^k_i v^i_g (orthonormal bases make the
// least-squares solutions plain inner products).
struct StructureConstants {
  std::vector<Eigen::MatrixXd> r;  // r[k](i, j)
  Eigen::MatrixXd s;               // s(k, i)
  double r_residual = 0.0;
  double s_residual = 0.0;
};
StructureConstants structure_constants(const FiniteGroup& g, const Bsc& phi);

// Explicit d x d matrices of the bsc for built-in groups (complex for type
// III, real otherwise). Throws if the group has no shipped construction for
// this bsc; callers then fall back to basis-only workflows.
std::vector<Eigen::MatrixXcd> explicit_bsc_matrices(const FiniteGroup& g,
                                                    const BscSystem& sys,
                                                    int bsc);
bool has_explicit_bsc_matrices(const FiniteGroup& g, const BscSystem& sys,
                               int bsc);

}  // namespace wt
