#include "groupwalk/group.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace groupwalk {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotLatinSquare: return "NotLatinSquare";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::SeedOutsideAmbient: return "SeedOutsideAmbient";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::EmptySupport: return "EmptySupport";
    case ErrorKind::EigensolverFailure: return "EigensolverFailure";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::NoClosedForm: return "NoClosedForm";
    case ErrorKind::SamplerUnavailable: return "SamplerUnavailable";
    case ErrorKind::ToleranceCollision: return "ToleranceCollision";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

namespace {

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  // left-to-right: apply p, then q
  Permutation r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

}  // namespace

GroupPtr FiniteGroup::from_cayley(const std::vector<std::vector<int>>& table,
                                  const std::vector<std::string>& labels) {
  const int n = int(table.size());
  if (n == 0) throw Error(ErrorKind::NotLatinSquare, "empty table");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = n;
  g->table_.resize(size_t(n) * n);
  for (int a = 0; a < n; ++a) {
    if (int(table[a].size()) != n)
      throw Error(ErrorKind::NotLatinSquare, "row " + std::to_string(a) + " has wrong length");
    for (int b = 0; b < n; ++b) {
      int v = table[a][b];
      if (v < 0 || v >= n)
        throw Error(ErrorKind::NotLatinSquare, "entry [" + std::to_string(a) + "][" +
                                                   std::to_string(b) + "] = " + std::to_string(v) +
                                                   " out of range");
      g->table_[size_t(a) * n + b] = std::uint16_t(v);
    }
  }

  // Latin square: each row and column is a permutation of 0..n-1.
  std::vector<char> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      int v = g->mul(a, b);
      if (seen[v]++)
        throw Error(ErrorKind::NotLatinSquare,
                    "row " + std::to_string(a) + " repeats element " + std::to_string(v));
    }
  }
  for (int b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < n; ++a) {
      int v = g->mul(a, b);
      if (seen[v]++)
        throw Error(ErrorKind::NotLatinSquare,
                    "column " + std::to_string(b) + " repeats element " + std::to_string(v));
    }
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
          throw Error(ErrorKind::NotAssociative,
                      "(a*b)*c != a*(b*c) at a=" + std::to_string(a) + " b=" + std::to_string(b) +
                          " c=" + std::to_string(c));

  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = g->mul(e, a) == a && g->mul(a, e) == a;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw Error(ErrorKind::NoIdentity, "no two-sided identity element");
  g->identity_ = identity;

  g->inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g->mul(a, b) == identity && g->mul(b, a) == identity) {
        g->inverse_[a] = b;
        break;
      }
    }
    if (g->inverse_[a] < 0)
      throw Error(ErrorKind::NoInverse, "element " + std::to_string(a) + " has no inverse");
  }

  if (!labels.empty()) {
    if (int(labels.size()) != n)
      throw Error(ErrorKind::ConfigError, "label count " + std::to_string(labels.size()) +
                                              " does not match order " + std::to_string(n));
    g->labels_ = labels;
  } else {
    g->labels_ = default_labels(n);
  }
  return g;
}

GroupPtr FiniteGroup::from_permutations(const std::vector<Permutation>& generators,
                                        int order_cap) {
  int degree = 1;
  for (const auto& p : generators) degree = std::max(degree, int(p.size()));

  std::vector<Permutation> gens;
  for (size_t gi = 0; gi < generators.size(); ++gi) {
    Permutation q = generators[gi];
    for (int i = int(q.size()); i < degree; ++i) q.push_back(i);
    std::vector<char> hit(degree, 0);
    for (int v : q) {
      if (v < 0 || v >= degree || hit[v]++)
        throw Error(ErrorKind::ConfigError,
                    "generator " + std::to_string(gi) + " is not a bijection");
    }
    gens.push_back(std::move(q));
  }

  Permutation identity(degree);
  for (int i = 0; i < degree; ++i) identity[i] = i;

  std::vector<Permutation> elements{identity};
  std::map<Permutation, int> index{{identity, 0}};
  for (size_t head = 0; head < elements.size(); ++head) {
    Permutation current = elements[head];  // copy: elements may reallocate
    for (const auto& gen : gens) {
      Permutation next = compose(current, gen);
      if (index.emplace(next, int(elements.size())).second) {
        if (int(elements.size()) >= order_cap)
          throw Error(ErrorKind::OrderCapExceeded,
                      "closure exceeds cap " + std::to_string(order_cap));
        elements.push_back(std::move(next));
      }
    }
  }

  const int n = int(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = index.at(compose(elements[a], elements[b]));

  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = format_cycles(elements[i]);
  return from_cayley(table, labels);
}

namespace {

GroupPtr make_cyclic(int n) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return FiniteGroup::from_cayley(table);
}

// Elements 0..n-1 are rotations r^k, n..2n-1 are reflections r^k s.
GroupPtr make_dihedral(int n) {
  const int m = 2 * n;
  auto rot = [n](int x) { return x < n; };
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int x = 0; x < m; ++x) {
    int a = x % n;
    for (int y = 0; y < m; ++y) {
      int b = y % n;
      int v;
      if (rot(x) && rot(y)) v = (a + b) % n;
      else if (rot(x) && !rot(y)) v = n + (a + b) % n;
      else if (!rot(x) && rot(y)) v = n + (a - b + n) % n;
      else v = (a - b + n) % n;
      table[x][y] = v;
    }
  }
  std::vector<std::string> labels(m);
  for (int k = 0; k < n; ++k) {
    labels[k] = "r" + std::to_string(k);
    labels[n + k] = "s" + std::to_string(k);
  }
  return FiniteGroup::from_cayley(table, labels);
}

GroupPtr make_symmetric(int n, int order_cap) {
  if (n <= 1) return make_cyclic(1);
  std::vector<Permutation> gens;
  Permutation swap01(n), cycle(n);
  for (int i = 0; i < n; ++i) swap01[i] = cycle[i] = i;
  std::swap(swap01[0], swap01[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  gens.push_back(swap01);
  if (n > 2) gens.push_back(cycle);
  return FiniteGroup::from_permutations(gens, order_cap);
}

// Elements: 1, i, j, k, -1, -i, -j, -k encoded as (axis, sign) with axis
// 0..3 and index = axis + 4*(sign<0).
GroupPtr make_quaternion8() {
  auto mul_axis = [](int a, int b, int& sign) {
    // axis 0 is the scalar 1; 1,2,3 are i,j,k
    if (a == 0) return b;
    if (b == 0) return a;
    if (a == b) {
      sign = -sign;
      return 0;
    }
    // i*j=k, j*k=i, k*i=j; reversed order flips the sign
    int c = 6 - a - b;
    bool forward = (b - a + 3) % 3 == 1;
    if (!forward) sign = -sign;
    return c;
  };
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int sign = (x < 4 ? 1 : -1) * (y < 4 ? 1 : -1);
      int axis = mul_axis(x % 4, y % 4, sign);
      table[x][y] = axis + (sign < 0 ? 4 : 0);
    }
  std::vector<std::string> labels{"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
  return FiniteGroup::from_cayley(table, labels);
}

// Recursive-descent parser for the preset mini-language:
//   name := ident | ident '(' args ')'
//   args := int | name ',' name
struct PresetParser {
  const std::string& text;
  size_t pos = 0;
  int order_cap;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw Error(ErrorKind::UnknownPreset, "expected integer in '" + text + "'");
    try {
      return std::stoi(text.substr(start, pos - start));
    } catch (const std::out_of_range&) {
      throw Error(ErrorKind::OrderCapExceeded, "preset parameter out of range in '" + text + "'");
    }
  }

  GroupPtr parse() {
    std::string name = ident();
    if (name == "quaternion8") return make_quaternion8();
    if (name == "cyclic" || name == "dihedral" || name == "symmetric") {
      if (!eat('(')) throw Error(ErrorKind::UnknownPreset, "expected '(' after " + name);
      int n = integer();
      if (!eat(')')) throw Error(ErrorKind::UnknownPreset, "expected ')' after " + name);
      if (n < 1) throw Error(ErrorKind::UnknownPreset, name + " needs n >= 1");
      long long order = name == "cyclic" ? n : name == "dihedral" ? 2LL * n : [&](int m) {
        long long f = 1;
        for (int i = 2; i <= m && f <= order_cap; ++i) f *= i;
        return f;
      }(n);
      if (order > order_cap)
        throw Error(ErrorKind::OrderCapExceeded,
                    name + "(" + std::to_string(n) + ") exceeds cap " + std::to_string(order_cap));
      if (name == "cyclic") return make_cyclic(n);
      if (name == "dihedral") return make_dihedral(n);
      return make_symmetric(n, order_cap);
    }
    if (name == "direct_product") {
      if (!eat('(')) throw Error(ErrorKind::UnknownPreset, "expected '(' after direct_product");
      GroupPtr a = parse();
      if (!eat(',')) throw Error(ErrorKind::UnknownPreset, "expected ',' in direct_product");
      GroupPtr b = parse();
      if (!eat(')')) throw Error(ErrorKind::UnknownPreset, "expected ')' in direct_product");
      return FiniteGroup::direct_product(a, b, order_cap);
    }
    throw Error(ErrorKind::UnknownPreset, "unknown preset '" + name + "'");
  }
};

}  // namespace

GroupPtr FiniteGroup::preset(const std::string& name, int order_cap) {
  PresetParser parser{name, 0, order_cap};
  GroupPtr g = parser.parse();
  parser.skip_ws();
  if (parser.pos != name.size())
    throw Error(ErrorKind::UnknownPreset, "trailing characters in '" + name + "'");
  return g;
}

GroupPtr FiniteGroup::direct_product(const GroupPtr& a, const GroupPtr& b, int order_cap) {
  long long order = 1LL * a->order() * b->order();
  if (order > order_cap)
    throw Error(ErrorKind::OrderCapExceeded,
                "direct product order " + std::to_string(order) + " exceeds cap");
  const int nb = b->order(), n = int(order);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    int xa = x / nb, xb = x % nb;
    labels[x] = "(" + a->label(xa) + "," + b->label(xb) + ")";
    for (int y = 0; y < n; ++y)
      table[x][y] = a->mul(xa, y / nb) * nb + b->mul(xb, y % nb);
  }
  return from_cayley(table, labels);
}

element_t FiniteGroup::pow(element_t a, long long k) const {
  if (k < 0) return pow(inv(a), -k);
  element_t acc = identity_;
  element_t base = a;
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

int FiniteGroup::element_order(element_t a) const {
  int k = 1;
  element_t x = a;
  while (x != identity_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

element_t FiniteGroup::find_label(const std::string& label) const {
  for (int i = 0; i < order_; ++i)
    if (labels_[i] == label) return i;
  return -1;
}

Permutation parse_cycles(const std::string& text, int degree) {
  std::vector<std::vector<int>> cycles;
  size_t pos = 0;
  int max_point = -1;
  while (pos < text.size()) {
    char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (c != '(') throw Error(ErrorKind::ConfigError, "expected '(' in cycles '" + text + "'");
    ++pos;
    std::vector<int> cycle;
    while (pos < text.size() && text[pos] != ')') {
      if (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',') {
        ++pos;
        continue;
      }
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos)
        throw Error(ErrorKind::ConfigError, "bad cycle entry in '" + text + "'");
      cycle.push_back(std::stoi(text.substr(start, pos - start)));
      max_point = std::max(max_point, cycle.back());
    }
    if (pos >= text.size())
      throw Error(ErrorKind::ConfigError, "unbalanced '(' in cycles '" + text + "'");
    ++pos;  // ')'
    cycles.push_back(std::move(cycle));
  }
  int d = std::max(degree, max_point + 1);
  if (d < 1) d = 1;
  Permutation p(d);
  for (int i = 0; i < d; ++i) p[i] = i;
  for (const auto& cycle : cycles) {
    for (size_t i = 0; i < cycle.size(); ++i) {
      int from = cycle[i], to = cycle[(i + 1) % cycle.size()];
      if (p[from] != from)
        throw Error(ErrorKind::ConfigError, "point " + std::to_string(from) +
                                                " appears twice in '" + text + "'");
      p[from] = to;
    }
  }
  return p;
}

std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<char> done(p.size(), 0);
  for (size_t start = 0; start < p.size(); ++start) {
    if (done[start] || p[start] == int(start)) continue;
    out += '(';
    size_t x = start;
    bool first = true;
    do {
      if (!first) out += ' ';
      out += std::to_string(x);
      done[x] = 1;
      x = p[x];
      first = false;
    } while (x != start);
    out += ')';
  }
  return out.empty() ? "e" : out;
}

GroupPtr read_cayley_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  int n = 0;
  if (!(in >> n) || n < 1) throw Error(ErrorKind::IoError, "bad order line in '" + path + "'");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!(in >> table[a][b]))
        throw Error(ErrorKind::IoError, "truncated table at row " + std::to_string(a));
  std::vector<std::string> labels;
  std::string rest, word;
  std::getline(in, rest);  // finish the last table line
  if (std::getline(in, rest)) {
    std::istringstream ss(rest);
    while (ss >> word) labels.push_back(word);
    if (!labels.empty() && int(labels.size()) != n)
      throw Error(ErrorKind::IoError, "label line has " + std::to_string(labels.size()) +
                                          " entries, expected " + std::to_string(n));
  }
  return FiniteGroup::from_cayley(table, labels);
}

}  // namespace groupwalk
