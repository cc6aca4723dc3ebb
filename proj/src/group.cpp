#include "graded/group.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace graded {

Point::Point(std::size_t n) : n_(n) {
  if (n > kMaxDim) throw DimensionMismatch("point dimension exceeds kMaxDim");
}

Point::Point(std::initializer_list<double> v) : Point(v.size()) {
  std::size_t i = 0;
  for (double d : v) c_[i++] = d;
}

Point::Point(const std::vector<double>& v) : Point(v.size()) {
  for (std::size_t i = 0; i < v.size(); ++i) c_[i] = v[i];
}

bool Point::operator==(const Point& o) const {
  if (n_ != o.n_) return false;
  for (std::size_t i = 0; i < n_; ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

static double ipow(double x, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

double eval_poly(const Polynomial& p, const double* x, const double* y, std::size_t n) {
  double s = 0;
  for (const Term& t : p) {
    double v = t.coeff;
    for (std::size_t i = 0; i < n; ++i) {
      if (t.exps[i]) v *= ipow(x[i], t.exps[i]);
      if (y && t.exps[n + i]) v *= ipow(y[i], t.exps[n + i]);
    }
    s += v;
  }
  return s;
}

NormVariant parse_norm_variant(const std::string& s) {
  if (s == "max") return NormVariant::max;
  if (s == "sum") return NormVariant::sum;
  if (s == "smooth") return NormVariant::smooth;
  throw ParseError("unknown quasi-norm variant '" + s + "'");
}

const char* to_string(NormVariant v) {
  switch (v) {
    case NormVariant::max: return "max";
    case NormVariant::sum: return "sum";
    case NormVariant::smooth: return "smooth";
  }
  return "?";
}

namespace {

Term linear(std::size_t var, double c) {
  Term t;
  t.coeff = c;
  t.exps[var] = 1;
  return t;
}

// a_k^{(j)}(x) = d/dy_j (x.y)_k at y = 0: the terms whose y-part is exactly y_j.
std::vector<std::vector<Polynomial>> derive_jac(const std::vector<Polynomial>& law, std::size_t n) {
  std::vector<std::vector<Polynomial>> jac(n, std::vector<Polynomial>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (const Term& t : law[k]) {
      int ydeg = 0;
      std::size_t which = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (t.exps[n + i]) {
          ydeg += t.exps[n + i];
          which = i;
        }
      }
      if (ydeg != 1) continue;
      Term u = t;
      u.exps[n + which] = 0;
      jac[which][k].push_back(u);
    }
  }
  return jac;
}

int weighted_degree(const Term& t, const std::vector<int>& w, std::size_t n) {
  int d = 0;
  for (std::size_t i = 0; i < n; ++i) d += w[i] * (t.exps[i] + t.exps[n + i]);
  return d;
}

std::vector<Point> probe_points(std::size_t n) {
  std::vector<Point> pts;
  for (int s = 1; s <= 5; ++s) {
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = std::sin(1.7 * s + 2.3 * i) * (1.0 + 0.3 * s);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

void GroupSpec::validate() const {
  if (n == 0 || n > kMaxDim) throw DomainError("group dimension out of range");
  if (weights.size() != n) throw DimensionMismatch("weights length differs from dim");
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] < 1) throw DomainError("dilation weights must be >= 1");
    if (i > 0 && weights[i] < weights[i - 1]) throw DomainError("dilation weights must ascend");
  }
  if (Q != std::accumulate(weights.begin(), weights.end(), 0))
    throw DomainError("Q differs from the sum of weights");
  if (nu_default < 2 || nu_default % 2 != 0) throw DomainError("nu must be even and >= 2");
  if (law.size() != n || inv.size() != n) throw DimensionMismatch("law/inv table size differs from dim");
  for (std::size_t k = 0; k < n; ++k) {
    for (const Term& t : law[k]) {
      if (weighted_degree(t, weights, n) != weights[k])
        throw DomainError("law component " + std::to_string(k + 1) + " is not homogeneous");
      int total = 0;
      for (std::size_t i = 0; i < 2 * n; ++i) total += t.exps[i];
      if (total == 1) continue;
      for (std::size_t i = 0; i < n; ++i)
        if ((t.exps[i] || t.exps[n + i]) && weights[i] >= weights[k])
          throw DomainError("law component " + std::to_string(k + 1) +
                            " depends on a coordinate of equal or higher weight");
    }
    for (const Term& t : inv[k])
      if (weighted_degree(t, weights, n) != weights[k])
        throw DomainError("inverse component " + std::to_string(k + 1) + " is not homogeneous");
  }
  if (jac.size() != n) throw DimensionMismatch("vector-field table size differs from dim");
  auto derived = derive_jac(law, n);
  for (const Point& p : probe_points(n)) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        double a = eval_poly(jac[j][k], p.data(), nullptr, n);
        double b = eval_poly(derived[j][k], p.data(), nullptr, n);
        if (std::abs(a - b) > 1e-12 * (1 + std::abs(b)))
          throw DomainError("vector-field table inconsistent with the group law");
        if (k == j && std::abs(a - 1) > 1e-14) throw DomainError("a_j^(j) must equal 1");
        if (k < j && a != 0) throw DomainError("a_k^(j) must vanish for k < j");
      }
    }
  }
}

GroupSpec GroupSpec::euclidean(std::size_t n) {
  if (n == 0 || n > kMaxDim) throw DomainError("euclidean: dimension out of range");
  GroupSpec g;
  g.name = "R" + std::to_string(n);
  g.n = n;
  g.weights.assign(n, 1);
  g.Q = static_cast<int>(n);
  g.abelian = true;
  g.law.resize(n);
  g.inv.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    g.law[k] = {linear(k, 1), linear(n + k, 1)};
    g.inv[k] = {linear(k, -1)};
  }
  g.jac = derive_jac(g.law, n);
  g.rho = {1, 1, 1};
  return g;
}

GroupSpec GroupSpec::heisenberg() {
  GroupSpec g;
  g.name = "H1";
  g.n = 3;
  g.weights = {1, 1, 2};
  g.Q = 4;
  g.law.resize(3);
  g.inv.resize(3);
  for (std::size_t k = 0; k < 3; ++k) {
    g.law[k] = {linear(k, 1), linear(3 + k, 1)};
    g.inv[k] = {linear(k, -1)};
  }
  Term a;  // x1 y2 / 2
  a.coeff = 0.5;
  a.exps[0] = 1;
  a.exps[4] = 1;
  Term b;  // -x2 y1 / 2
  b.coeff = -0.5;
  b.exps[1] = 1;
  b.exps[3] = 1;
  g.law[2].push_back(a);
  g.law[2].push_back(b);
  g.jac = derive_jac(g.law, 3);
  // Empirical maxima of |x.y|/(|x|+|y|): sum variant 1+1/(2 sqrt 2) at
  // x=(a,0,0), y=(0,a,0); smooth variant about 1.00043.  Max variant is 1.
  g.rho = {1.0, 1.36, 1.001};
  return g;
}

GroupSpec builtin_group(const std::string& name) {
  if (name == "H1" || name == "heisenberg") return GroupSpec::heisenberg();
  if (name.size() == 2 && name[0] == 'R' && name[1] >= '1' && name[1] <= '6')
    return GroupSpec::euclidean(static_cast<std::size_t>(name[1] - '0'));
  throw ParseError("unknown built-in group '" + name + "'");
}

// ---------------------------------------------------------------------------
// text grammar

namespace {

Term parse_monomial(const std::string& tok, double coeff, std::size_t n, bool allow_y, int line) {
  Term t;
  t.coeff = coeff;
  if (tok == "1") return t;
  std::stringstream ss(tok);
  std::string f;
  while (std::getline(ss, f, '*')) {
    if (f.size() < 2 || (f[0] != 'x' && f[0] != 'y'))
      throw ParseError("line " + std::to_string(line) + ": bad factor '" + f + "'");
    if (f[0] == 'y' && !allow_y)
      throw ParseError("line " + std::to_string(line) + ": y variables not allowed here");
    std::size_t caret = f.find('^');
    int idx = 0, e = 1;
    try {
      idx = std::stoi(f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      if (caret != std::string::npos) e = std::stoi(f.substr(caret + 1));
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line) + ": bad factor '" + f + "'");
    }
    if (idx < 1 || static_cast<std::size_t>(idx) > n || e < 1 || e > 255)
      throw ParseError("line " + std::to_string(line) + ": variable index or exponent out of range");
    std::size_t slot = static_cast<std::size_t>(idx - 1) + (f[0] == 'y' ? n : 0);
    t.exps[slot] = static_cast<unsigned char>(t.exps[slot] + e);
  }
  return t;
}

std::string monomial_text(const Term& t, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    if (!t.exps[i]) continue;
    if (!s.empty()) s += '*';
    s += (i < n ? 'x' : 'y');
    s += std::to_string(i % n + 1);
    if (t.exps[i] > 1) s += "^" + std::to_string(t.exps[i]);
  }
  return s.empty() ? "1" : s;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GroupSpec parse_group(std::istream& in) {
  GroupSpec g;
  bool have_vf = false, have_rho = false, ended = false;
  std::vector<std::vector<Polynomial>> vf;
  std::string raw;
  int line = 0;
  auto need_dim = [&](int ln) {
    if (g.n == 0) throw ParseError("line " + std::to_string(ln) + ": 'dim' must precede tables");
  };
  auto index = [&](std::istringstream& ss, int ln, const char* key) {
    int k = 0;
    if (!(ss >> k) || k < 1 || static_cast<std::size_t>(k) > g.n)
      throw ParseError("line " + std::to_string(ln) + ": bad component index for '" + key + "'");
    return static_cast<std::size_t>(k - 1);
  };
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ss(raw);
    std::string key;
    if (!(ss >> key)) continue;
    if (ended) throw ParseError("line " + std::to_string(line) + ": content after 'end'");
    if (key == "group") {
      if (!(ss >> g.name)) throw ParseError("line " + std::to_string(line) + ": missing group name");
    } else if (key == "dim") {
      int n = 0;
      if (!(ss >> n) || n < 1 || n > static_cast<int>(kMaxDim))
        throw ParseError("line " + std::to_string(line) + ": bad 'dim'");
      g.n = static_cast<std::size_t>(n);
      g.law.assign(g.n, {});
      g.inv.assign(g.n, {});
      vf.assign(g.n, std::vector<Polynomial>(g.n));
    } else if (key == "weights") {
      need_dim(line);
      g.weights.clear();
      int w;
      while (ss >> w) g.weights.push_back(w);
      if (g.weights.size() != g.n)
        throw ParseError("line " + std::to_string(line) + ": 'weights' needs dim entries");
      g.Q = std::accumulate(g.weights.begin(), g.weights.end(), 0);
    } else if (key == "nu") {
      if (!(ss >> g.nu_default)) throw ParseError("line " + std::to_string(line) + ": bad 'nu'");
    } else if (key == "rho") {
      if (!(ss >> g.rho[0] >> g.rho[1] >> g.rho[2]))
        throw ParseError("line " + std::to_string(line) + ": 'rho' needs max sum smooth values");
      have_rho = true;
    } else if (key == "abelian") {
      int a = 0;
      if (!(ss >> a)) throw ParseError("line " + std::to_string(line) + ": bad 'abelian'");
      g.abelian = a != 0;
    } else if (key == "law" || key == "inv") {
      need_dim(line);
      std::size_t k = index(ss, line, key.c_str());
      double c;
      std::string mono;
      if (!(ss >> c >> mono)) throw ParseError("line " + std::to_string(line) + ": expected coeff monomial");
      (key == "law" ? g.law : g.inv)[k].push_back(parse_monomial(mono, c, g.n, key == "law", line));
    } else if (key == "vf") {
      need_dim(line);
      std::size_t j = index(ss, line, "vf");
      std::size_t k = index(ss, line, "vf");
      double c;
      std::string mono;
      if (!(ss >> c >> mono)) throw ParseError("line " + std::to_string(line) + ": expected coeff monomial");
      vf[j][k].push_back(parse_monomial(mono, c, g.n, false, line));
      have_vf = true;
    } else if (key == "end") {
      ended = true;
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (g.name.empty()) throw ParseError("missing 'group'");
  if (g.n == 0) throw ParseError("missing 'dim'");
  if (g.weights.empty()) throw ParseError("missing 'weights'");
  if (!have_rho) throw ParseError("missing 'rho'");
  g.jac = have_vf ? vf : derive_jac(g.law, g.n);
  g.validate();
  return g;
}

GroupSpec parse_group_string(const std::string& text) {
  std::istringstream in(text);
  return parse_group(in);
}

std::string emit_group(const GroupSpec& g) {
  std::ostringstream o;
  o << "group " << g.name << "\n";
  o << "dim " << g.n << "\n";
  o << "weights";
  for (int w : g.weights) o << ' ' << w;
  o << "\nnu " << g.nu_default << "\n";
  o << "rho " << num(g.rho[0]) << ' ' << num(g.rho[1]) << ' ' << num(g.rho[2]) << "\n";
  o << "abelian " << (g.abelian ? 1 : 0) << "\n";
  for (std::size_t k = 0; k < g.n; ++k)
    for (const Term& t : g.law[k]) o << "law " << k + 1 << ' ' << num(t.coeff) << ' ' << monomial_text(t, g.n) << "\n";
  for (std::size_t k = 0; k < g.n; ++k)
    for (const Term& t : g.inv[k]) o << "inv " << k + 1 << ' ' << num(t.coeff) << ' ' << monomial_text(t, g.n) << "\n";
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t k = 0; k < g.n; ++k)
      for (const Term& t : g.jac[j][k])
        o << "vf " << j + 1 << ' ' << k + 1 << ' ' << num(t.coeff) << ' ' << monomial_text(t, g.n) << "\n";
  o << "end\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// arithmetic

static void check_dim(const GroupSpec& g, const Point& x) {
  if (x.size() != g.n)
    throw DimensionMismatch("point of dimension " + std::to_string(x.size()) + " on group of dimension " +
                            std::to_string(g.n));
}

Point identity(const GroupSpec& g) { return Point(g.n); }

Point multiply(const GroupSpec& g, const Point& x, const Point& y) {
  check_dim(g, x);
  check_dim(g, y);
  Point r(g.n);
  for (std::size_t k = 0; k < g.n; ++k) r[k] = eval_poly(g.law[k], x.data(), y.data(), g.n);
  return r;
}

Point inverse(const GroupSpec& g, const Point& x) {
  check_dim(g, x);
  Point r(g.n);
  for (std::size_t k = 0; k < g.n; ++k) r[k] = eval_poly(g.inv[k], x.data(), nullptr, g.n);
  return r;
}

Point dilate(const GroupSpec& g, double lambda, const Point& x) {
  check_dim(g, x);
  if (!(lambda > 0)) throw DomainError("dilate: lambda must be positive");
  Point r(g.n);
  for (std::size_t k = 0; k < g.n; ++k) r[k] = x[k] * std::pow(lambda, g.weights[k]);
  return r;
}

static int weight_lcm(const GroupSpec& g) {
  int l = 1;
  for (int w : g.weights) l = std::lcm(l, w);
  return l;
}

double quasi_norm(const GroupSpec& g, const Point& x, NormVariant v) {
  check_dim(g, x);
  double r = 0;
  switch (v) {
    case NormVariant::max:
      for (std::size_t k = 0; k < g.n; ++k) r = std::max(r, std::pow(std::abs(x[k]), 1.0 / g.weights[k]));
      return r;
    case NormVariant::sum:
      for (std::size_t k = 0; k < g.n; ++k) r += std::pow(std::abs(x[k]), 1.0 / g.weights[k]);
      return r;
    case NormVariant::smooth: {
      const int L2 = 2 * weight_lcm(g);
      double m = 0;
      for (std::size_t k = 0; k < g.n; ++k) m = std::max(m, std::pow(std::abs(x[k]), 1.0 / g.weights[k]));
      if (m == 0) return 0;
      for (std::size_t k = 0; k < g.n; ++k)
        r += std::pow(std::pow(std::abs(x[k]), 1.0 / g.weights[k]) / m, L2);
      return m * std::pow(r, 1.0 / L2);
    }
  }
  return r;
}

std::vector<double> vf_coeffs(const GroupSpec& g, std::size_t j, const Point& x) {
  check_dim(g, x);
  if (j >= g.n) throw DomainError("vf_coeffs: index out of range");
  std::vector<double> a(g.n);
  for (std::size_t k = 0; k < g.n; ++k) a[k] = eval_poly(g.jac[j][k], x.data(), nullptr, g.n);
  return a;
}

std::vector<double> right_vf_coeffs(const GroupSpec& g, std::size_t j, const Point& x) {
  check_dim(g, x);
  if (j >= g.n) throw DomainError("right_vf_coeffs: index out of range");
  // d/dx_j (x.y)_k at x = 0, evaluated at y = the given point
  std::vector<double> b(g.n, 0.0);
  for (std::size_t k = 0; k < g.n; ++k) {
    for (const Term& t : g.law[k]) {
      int xdeg = 0;
      for (std::size_t i = 0; i < g.n; ++i) xdeg += t.exps[i];
      if (xdeg != 1 || t.exps[j] != 1) continue;
      double v = t.coeff;
      for (std::size_t i = 0; i < g.n; ++i)
        if (t.exps[g.n + i]) v *= ipow(x[i], t.exps[g.n + i]);
      b[k] += v;
    }
  }
  return b;
}

AngularRule angular_rule(const GroupSpec& g, int m, NormVariant v) {
  if (m < 1) throw DomainError("angular_rule: need at least one node per half edge");
  const std::size_t n = g.n;
  const Rule1D half = gauss_legendre(m, 0.0, 1.0);
  AngularRule rule;
  if (n == 1) {
    for (double s : {-1.0, 1.0}) {
      rule.dirs.push_back(Point{s});
      rule.w.push_back(g.weights[0]);
    }
    return rule;
  }
  // free coordinates of a face: each in 2m nodes (two halves)
  const std::size_t per = 2 * static_cast<std::size_t>(m);
  std::size_t count = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) count *= per;
  for (std::size_t axis = 0; axis < n; ++axis) {
    for (double s : {-1.0, 1.0}) {
      for (std::size_t idx = 0; idx < count; ++idx) {
        Point th(n);
        th[axis] = s;
        double w = g.weights[axis];
        std::size_t rem = idx;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == axis) continue;
          std::size_t q = rem % per;
          rem /= per;
          double sign = q < static_cast<std::size_t>(m) ? -1.0 : 1.0;
          std::size_t gi = q % static_cast<std::size_t>(m);
          double t = half.x[gi];
          int sg = g.weights[i];
          th[i] = sign * std::pow(t, sg);
          w *= half.w[gi] * sg * std::pow(t, sg - 1);
        }
        double nrm = quasi_norm(g, th, v);
        w *= std::pow(nrm, -g.Q);
        rule.dirs.push_back(dilate(g, 1.0 / nrm, th));
        rule.w.push_back(w);
      }
    }
  }
  return rule;
}

NodeSet polar_quadrature(const GroupSpec& g, double r_max, const QuadratureConfig& cfg, NormVariant v) {
  cfg.validate();
  if (!(r_max > 0)) throw DomainError("polar_quadrature: r_max must be positive");
  AngularRule ang = angular_rule(g, cfg.angular_nodes, v);
  Rule1D rad = gauss_legendre(cfg.radial_nodes, 0.0, r_max);
  std::size_t total = ang.w.size() * rad.w.size();
  if (total > cfg.max_nodes) throw DomainError("polar_quadrature: node budget too small");
  NodeSet ns;
  ns.x.reserve(total);
  ns.w.reserve(total);
  for (std::size_t a = 0; a < ang.w.size(); ++a) {
    for (std::size_t r = 0; r < rad.w.size(); ++r) {
      double rr = rad.x[r];
      ns.x.push_back(dilate(g, rr, ang.dirs[a]));
      ns.w.push_back(ang.w[a] * rad.w[r] * std::pow(rr, g.Q - 1));
    }
  }
  return ns;
}

}  // namespace graded
