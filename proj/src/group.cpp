#include "wordtensor/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wt {

namespace {

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out(n);
  for (int i = 0; i < n; ++i) out[i] = "g" + std::to_string(i);
  return out;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name,
                         std::vector<std::vector<Element>> mult,
                         std::vector<std::string> element_labels)
    : name_(std::move(name)),
      order_(static_cast<int>(mult.size())),
      mult_(std::move(mult)),
      labels_(std::move(element_labels)) {
  if (order_ == 0) throw std::invalid_argument("group: empty table");
  if (labels_.empty()) labels_ = default_labels(order_);
  if (static_cast<int>(labels_.size()) != order_)
    throw std::invalid_argument("group: label count != order");

  check_latin();

  // Locate the identity: the unique e with e*g = g for all g.
  identity_ = -1;
  for (Element e = 0; e < order_; ++e) {
    bool ok = true;
    for (Element g = 0; g < order_ && ok; ++g)
      ok = mult_[e][g] == g && mult_[g][e] == g;
    if (ok) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0) throw std::invalid_argument("group: no identity element");

  inv_.assign(order_, -1);
  for (Element g = 0; g < order_; ++g) {
    for (Element h = 0; h < order_; ++h) {
      if (mult_[g][h] == identity_) {
        inv_[g] = h;
        break;
      }
    }
    if (inv_[g] < 0 || mult_[inv_[g]][g] != identity_)
      throw std::invalid_argument("group: element " + std::to_string(g) +
                                  " has no two-sided inverse");
  }
  validate();
}

void FiniteGroup::check_latin() const {
  for (const auto& row : mult_) {
    if (static_cast<int>(row.size()) != order_)
      throw std::invalid_argument("group: table not square");
    for (Element x : row)
      if (x < 0 || x >= order_)
        throw std::invalid_argument("group: entry out of range");
  }
  // Rows and columns must be permutations.
  for (Element g = 0; g < order_; ++g) {
    std::vector<char> seen_row(order_, 0), seen_col(order_, 0);
    for (Element h = 0; h < order_; ++h) {
      if (seen_row[mult_[g][h]]++)
        throw std::invalid_argument("group: row " + std::to_string(g) +
                                    " is not a permutation");
      if (seen_col[mult_[h][g]]++)
        throw std::invalid_argument("group: column " + std::to_string(g) +
                                    " is not a permutation");
    }
  }
}

void FiniteGroup::validate() const {
  // Exhaustive associativity; desk-scale orders make the cubic check cheap.
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b)
      for (Element c = 0; c < order_; ++c)
        if (mult_[mult_[a][b]][c] != mult_[a][mult_[b][c]])
          throw std::invalid_argument(
              "group: associativity fails at (" + std::to_string(a) + "," +
              std::to_string(b) + "," + std::to_string(c) + ")");
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mult_[a][b] != mult_[b][a]) return false;
  return true;
}

void FiniteGroup::compute_classes() const {
  class_of_.assign(order_, -1);
  for (Element g = 0; g < order_; ++g) {
    if (class_of_[g] >= 0) continue;
    std::vector<Element> cls;
    std::vector<char> in_cls(order_, 0);
    for (Element x = 0; x < order_; ++x) {
      Element y = mult_[mult_[x][g]][inv_[x]];
      if (!in_cls[y]) {
        in_cls[y] = 1;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    int idx = static_cast<int>(classes_.size());
    for (Element y : cls) class_of_[y] = idx;
    classes_.push_back(std::move(cls));
  }
}

const std::vector<std::vector<Element>>& FiniteGroup::classes() const {
  if (classes_.empty()) compute_classes();
  return classes_;
}

int FiniteGroup::class_of(Element g) const {
  classes();
  return class_of_[g];
}

std::string FiniteGroup::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["order"] = order_;
  std::vector<int> flat;
  flat.reserve(order_ * order_);
  for (const auto& row : mult_) flat.insert(flat.end(), row.begin(), row.end());
  j["mult"] = flat;
  j["labels"] = labels_;
  return j.dump(2);
}

FiniteGroup FiniteGroup::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  int n = j.at("order").get<int>();
  auto flat = j.at("mult").get<std::vector<int>>();
  if (static_cast<int>(flat.size()) != n * n)
    throw std::invalid_argument("group json: mult size != order^2");
  std::vector<std::vector<Element>> mult(n, std::vector<Element>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) mult[i][k] = flat[i * n + k];
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  return FiniteGroup(j.at("name").get<std::string>(), std::move(mult),
                     std::move(labels));
}

namespace {

constexpr int kMaxOrder = 200;

void check_order(long long n) {
  if (n < 1 || n > kMaxOrder)
    throw std::invalid_argument("group order " + std::to_string(n) +
                                " outside supported range [1," +
                                std::to_string(kMaxOrder) + "]");
}

}  // namespace

FiniteGroup make_cyclic(int n) {
  check_order(n);
  std::vector<std::vector<Element>> mult(n, std::vector<Element>(n));
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = std::to_string(i);
    for (int j = 0; j < n; ++j) mult[i][j] = (i + j) % n;
  }
  return FiniteGroup("Z" + std::to_string(n), std::move(mult),
                     std::move(labels));
}

FiniteGroup make_units_mod(int n) {
  if (n < 2) throw std::invalid_argument("U(n) needs n >= 2");
  std::vector<int> residues;
  for (int r = 1; r < n; ++r)
    if (std::gcd(r, n) == 1) residues.push_back(r);
  check_order(static_cast<long long>(residues.size()));
  int m = static_cast<int>(residues.size());
  std::vector<int> index_of(n, -1);
  for (int i = 0; i < m; ++i) index_of[residues[i]] = i;
  std::vector<std::vector<Element>> mult(m, std::vector<Element>(m));
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    labels[i] = std::to_string(residues[i]);
    for (int j = 0; j < m; ++j)
      mult[i][j] = index_of[(residues[i] * residues[j]) % n];
  }
  return FiniteGroup("U" + std::to_string(n), std::move(mult),
                     std::move(labels));
}

namespace {

// Lexicographically ordered one-line permutations of {0..n-1}.
std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string one_line(const std::vector<int>& p) {
  std::string s;
  for (int v : p) s += std::to_string(v + 1);
  return s;
}

}  // namespace

FiniteGroup make_symmetric(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("S(n) supported for n<=5");
  auto perms = all_permutations(n);
  int m = static_cast<int>(perms.size());
  check_order(m);
  std::vector<std::vector<int>> key_to_index;
  // Map permutation -> index via sorted lookup (perms are already sorted).
  auto index_of = [&](const std::vector<int>& p) {
    auto it = std::lower_bound(perms.begin(), perms.end(), p);
    return static_cast<int>(it - perms.begin());
  };
  std::vector<std::vector<Element>> mult(m, std::vector<Element>(m));
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    labels[i] = one_line(perms[i]);
    for (int j = 0; j < m; ++j) {
      // Composition convention: (f*g)(x) = f(g(x)).
      std::vector<int> fg(n);
      for (int x = 0; x < n; ++x) fg[x] = perms[i][perms[j][x]];
      mult[i][j] = index_of(fg);
    }
  }
  return FiniteGroup("S" + std::to_string(n), std::move(mult),
                     std::move(labels));
}

FiniteGroup make_dihedral(int n) {
  if (n < 1) throw std::invalid_argument("D(n) needs n >= 1");
  check_order(2LL * n);
  int m = 2 * n;
  // Element i + n*k encodes s^k r^i; s r^i s = r^{-i}.
  auto enc = [&](int k, int i) { return ((i % n + n) % n) + n * k; };
  std::vector<std::vector<Element>> mult(m, std::vector<Element>(m));
  std::vector<std::string> labels(m);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < n; ++i) {
      labels[enc(k, i)] = (k ? "sr" : "r") + std::to_string(i);
      for (int l = 0; l < 2; ++l)
        for (int j = 0; j < n; ++j)
          mult[enc(k, i)][enc(l, j)] = enc((k + l) % 2, l ? j - i : i + j);
    }
  return FiniteGroup("D" + std::to_string(n), std::move(mult),
                     std::move(labels));
}

FiniteGroup make_quaternion8() {
  // Order: [1, -1, i, -i, j, -j, k, -k].
  // Encode q as (unit, sign): unit in {1,i,j,k} = {0,1,2,3}.
  auto enc = [](int unit, int sign) { return 2 * unit + (sign < 0 ? 1 : 0); };
  // unit multiplication: table[u][v] = (unit, sign) of u*v.
  static const int unit_tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_tab[4][4] = {{+1, +1, +1, +1},
                                     {+1, -1, +1, -1},
                                     {+1, -1, -1, +1},
                                     {+1, +1, -1, -1}};
  std::vector<std::vector<Element>> mult(8, std::vector<Element>(8));
  for (int u = 0; u < 4; ++u)
    for (int su : {+1, -1})
      for (int v = 0; v < 4; ++v)
        for (int sv : {+1, -1})
          mult[enc(u, su)][enc(v, sv)] =
              enc(unit_tab[u][v], su * sv * sign_tab[u][v]);
  std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  return FiniteGroup("Q8", std::move(mult), std::move(labels));
}

FiniteGroup make_m52() {
  // Modular maximal-cyclic group of order 32: a^16 = b^2 = e, b a b = a^9.
  // Element a^i b^j indexed i + 16 j.
  auto enc = [](int i, int j) { return ((i % 16 + 16) % 16) + 16 * (j % 2); };
  std::vector<std::vector<Element>> mult(32, std::vector<Element>(32));
  std::vector<std::string> labels(32);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 2; ++j) {
      labels[enc(i, j)] =
          "a" + std::to_string(i) + (j ? "b" : "");
      for (int k = 0; k < 16; ++k)
        for (int l = 0; l < 2; ++l)
          // (a^i b^j)(a^k b^l) = a^{i + 9^j k} b^{j+l}.
          mult[enc(i, j)][enc(k, l)] = enc(i + (j ? 9 * k : k), j + l);
    }
  return FiniteGroup("M52", std::move(mult), std::move(labels));
}

FiniteGroup make_sd16() {
  // (Z4 x Z2) : Z2 with presentation a^4 = b^2 = c^2 = e, ab = ba,
  // c a c = a b, c b c = b. Element a^i b^j c^k indexed i + 4j + 8k.
  auto enc = [](int i, int j, int k) {
    return ((i % 4 + 4) % 4) + 4 * ((j % 2 + 2) % 2) + 8 * ((k % 2 + 2) % 2);
  };
  std::vector<std::vector<Element>> mult(16, std::vector<Element>(16));
  std::vector<std::string> labels(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        std::string l = "a" + std::to_string(i);
        if (j) l += "b";
        if (k) l += "c";
        labels[enc(i, j, k)] = l;
        for (int i2 = 0; i2 < 4; ++i2)
          for (int j2 = 0; j2 < 2; ++j2)
            for (int k2 = 0; k2 < 2; ++k2)
              // c^k a^{i2} b^{j2} = a^{i2} b^{j2 + k*i2} c^k.
              mult[enc(i, j, k)][enc(i2, j2, k2)] =
                  enc(i + i2, j + j2 + k * i2, k + k2);
      }
  return FiniteGroup("SD16", std::move(mult), std::move(labels));
}

FiniteGroup make_direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
  long long n = static_cast<long long>(g1.order()) * g2.order();
  check_order(n);
  int n1 = g1.order(), n2 = g2.order();
  auto enc = [n2](int i, int j) { return i * n2 + j; };
  std::vector<std::vector<Element>> mult(n, std::vector<Element>(n));
  std::vector<std::string> labels(n);
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      labels[enc(i1, i2)] = "(" + g1.labels()[i1] + "," + g2.labels()[i2] + ")";
      for (int j1 = 0; j1 < n1; ++j1)
        for (int j2 = 0; j2 < n2; ++j2)
          mult[enc(i1, i2)][enc(j1, j2)] =
              enc(g1.mult(i1, j1), g2.mult(i2, j2));
    }
  return FiniteGroup(g1.name() + "x" + g2.name(), std::move(mult),
                     std::move(labels));
}

FiniteGroup make_builtin_group(const std::string& spec) {
  auto x = spec.find('x');
  if (x != std::string::npos) {
    FiniteGroup g1 = make_builtin_group(spec.substr(0, x));
    FiniteGroup g2 = make_builtin_group(spec.substr(x + 1));
    return make_direct_product(g1, g2);
  }
  auto num = [&](size_t pos) {
    if (pos >= spec.size())
      throw std::invalid_argument("group spec '" + spec + "': missing parameter");
    return std::stoi(spec.substr(pos));
  };
  if (spec == "Q8") return make_quaternion8();
  if (spec == "M52") return make_m52();
  if (spec == "SD16") return make_sd16();
  if (!spec.empty() && spec[0] == 'Z') return make_cyclic(num(1));
  if (!spec.empty() && spec[0] == 'U') return make_units_mod(num(1));
  if (!spec.empty() && spec[0] == 'S') return make_symmetric(num(1));
  if (!spec.empty() && spec[0] == 'D') return make_dihedral(num(1));
  throw std::invalid_argument("unknown group spec '" + spec + "'");
}

std::vector<std::string> builtin_group_names() {
  return {"Z<n>", "U<n>", "S<n>", "D<n>", "Q8", "M52", "SD16", "<g1>x<g2>"};
}

FiniteGroup make_group_from_table(std::vector<std::vector<Element>> mult,
                                  std::string name) {
  return FiniteGroup(std::move(name), std::move(mult));
}

}  // namespace wt
