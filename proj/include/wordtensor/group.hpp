#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wt {

using Element = int;

// A finite group as an index-based multiplication table. Immutable after
// construction; validation (identity, inverses, associativity, Latin-square
// rows/columns) runs in the constructor.
class FiniteGroup {
 public:
  FiniteGroup(std::string name, std::vector<std::vector<Element>> mult,
              std::vector<std::string> element_labels = {});

  int order() const { return order_; }
  Element identity() const { return identity_; }
  Element mult(Element g, Element h) const { return mult_[g][h]; }
  Element inv(Element g) const { return inv_[g]; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<Element>>& table() const { return mult_; }

  bool is_abelian() const;

  // Conjugacy classes, each sorted ascending; classes ordered by smallest
  // member. class_of[g] indexes into classes().
  const std::vector<std::vector<Element>>& classes() const;
  int class_of(Element g) const;

  std::string to_json() const;
  static FiniteGroup from_json(const std::string& text);

 private:
  void check_latin() const;
  void validate() const;
  void compute_classes() const;

  std::string name_;
  int order_;
  std::vector<std::vector<Element>> mult_;
  std::vector<Element> inv_;
  Element identity_;
  std::vector<std::string> labels_;

  mutable std::vector<std::vector<Element>> classes_;
  mutable std::vector<int> class_of_;
};

// Built-in families. `spec` is a compact name: Z<n>, U<n> (units mod n),
// S<n>, D<n> (order 2n), Q8, M52, SD16, or products like "Z4xZ2".
FiniteGroup make_cyclic(int n);
FiniteGroup make_units_mod(int n);
FiniteGroup make_symmetric(int n);
FiniteGroup make_dihedral(int n);
FiniteGroup make_quaternion8();
FiniteGroup make_m52();
FiniteGroup make_sd16();
FiniteGroup make_direct_product(const FiniteGroup& g1, const FiniteGroup& g2);
FiniteGroup make_builtin_group(const std::string& spec);
std::vector<std::string> builtin_group_names();

FiniteGroup make_group_from_table(std::vector<std::vector<Element>> mult,
                                  std::string name = "custom");

}  // namespace wt
