#include "graded/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "graded/spectral.hpp"

namespace graded {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Grid Grid::uniform(std::size_t n, double lo, double hi, std::size_t count) {
  return box(std::vector<double>(n, lo), std::vector<double>(n, hi), std::vector<std::size_t>(n, count));
}

Grid Grid::box(const std::vector<double>& lo, const std::vector<double>& hi,
               const std::vector<std::size_t>& count) {
  if (lo.size() != hi.size() || lo.size() != count.size()) throw DimensionMismatch("Grid::box: ragged extents");
  Grid g;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (count[i] < 2 || !(hi[i] > lo[i])) throw DomainError("Grid::box: bad axis extent");
    g.axes.push_back({lo[i], (hi[i] - lo[i]) / static_cast<double>(count[i] - 1), count[i]});
  }
  return g;
}

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (const Axis& a : axes) s *= a.count;
  return axes.empty() ? 0 : s;
}

double Grid::cell_volume() const {
  double v = 1;
  for (const Axis& a : axes) v *= a.spacing;
  return v;
}

std::size_t Grid::stride(std::size_t axis) const {
  std::size_t s = 1;
  for (std::size_t a = axis + 1; a < axes.size(); ++a) s *= axes[a].count;
  return s;
}

std::array<std::size_t, kMaxDim> Grid::multi_index(std::size_t flat) const {
  std::array<std::size_t, kMaxDim> mi{};
  for (std::size_t a = axes.size(); a-- > 0;) {
    mi[a] = flat % axes[a].count;
    flat /= axes[a].count;
  }
  return mi;
}

Point Grid::node(std::size_t flat) const {
  auto mi = multi_index(flat);
  Point p(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) p[a] = axes[a].coord(mi[a]);
  return p;
}

bool Grid::operator==(const Grid& o) const {
  if (axes.size() != o.axes.size()) return false;
  for (std::size_t a = 0; a < axes.size(); ++a)
    if (axes[a].origin != o.axes[a].origin || axes[a].spacing != o.axes[a].spacing ||
        axes[a].count != o.axes[a].count)
      return false;
  return true;
}

std::string Grid::describe() const {
  std::string s;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (a) s += ';';
    s += fmt17(axes[a].origin) + ":" + fmt17(axes[a].spacing) + ":" + std::to_string(axes[a].count);
  }
  return s;
}

// ---------------------------------------------------------------------------

static bool in_margin(const Grid& g, std::size_t flat, int margin) {
  if (margin <= 0) return false;
  auto mi = g.multi_index(flat);
  for (std::size_t a = 0; a < g.dim(); ++a) {
    std::size_t m = static_cast<std::size_t>(margin);
    if (mi[a] < m || mi[a] + m >= g.axes[a].count) return true;
  }
  return false;
}

SampledField SampledField::sample(GroupPtr g, const Grid& grid, const ScalarFn& fn, int margin,
                                  double trunc_tol) {
  if (!g) throw DomainError("sample: null group");
  if (grid.dim() != g->n) throw DimensionMismatch("sample: grid dimension differs from group");
  SampledField f;
  f.group = std::move(g);
  f.grid = grid;
  f.support_margin = margin;
  f.values.resize(grid.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = fn(grid.node(i));
  double mx = f.max_abs();
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!in_margin(grid, i, margin)) continue;
    if (std::abs(f.values[i]) > trunc_tol * mx)
      throw SupportOverflow("sample: function does not vanish in the support margin");
    f.values[i] = 0.0;
  }
  f.validate();
  return f;
}

SampledField SampledField::zeros(GroupPtr g, const Grid& grid, int margin) {
  SampledField f;
  f.group = std::move(g);
  f.grid = grid;
  f.support_margin = margin;
  f.values.assign(grid.size(), 0.0);
  return f;
}

void SampledField::validate() const {
  if (!group) throw DomainError("field without group");
  if (grid.dim() != group->n) throw DimensionMismatch("field grid dimension differs from group");
  for (const Axis& a : grid.axes) {
    if (!(a.spacing > 0)) throw DomainError("grid spacing must be positive");
    if (a.count < 8) throw DomainError("grid needs at least 8 nodes per axis");
  }
  if (values.size() != grid.size()) throw DimensionMismatch("value count differs from grid size");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw DomainError("non-finite field value");
    if (in_margin(grid, i, support_margin) && values[i] != 0.0)
      throw SupportOverflow("nonzero value inside the support margin");
  }
}

double SampledField::max_abs() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

int SampledField::zero_layers() const {
  int best = 0;
  for (int m = 1;; ++m) {
    bool ok = true;
    for (const Axis& a : grid.axes)
      if (2 * static_cast<std::size_t>(m) >= a.count) ok = false;
    if (!ok) return best;
    for (std::size_t i = 0; i < values.size() && ok; ++i)
      if (in_margin(grid, i, m) && values[i] != 0.0) ok = false;
    if (!ok) return best;
    best = m;
  }
}

namespace {
// 4-point Lagrange weights for fractional offset s in [0,1) about nodes -1..2.
inline void cubic_weights(double s, double w[4]) {
  w[0] = -s * (s - 1) * (s - 2) / 6;
  w[1] = (s + 1) * (s - 1) * (s - 2) / 2;
  w[2] = -(s + 1) * s * (s - 2) / 2;
  w[3] = (s + 1) * s * (s - 1) / 6;
}
}  // namespace

double SampledField::interpolate(const Point& x) const {
  const std::size_t n = grid.dim();
  long long base[kMaxDim];
  double w[kMaxDim][4];
  for (std::size_t a = 0; a < n; ++a) {
    const Axis& ax = grid.axes[a];
    double u = (x[a] - ax.origin) / ax.spacing;
    if (u < -2 || u > static_cast<double>(ax.count) + 1) return 0.0;
    double fl = std::floor(u);
    base[a] = static_cast<long long>(fl) - 1;
    cubic_weights(u - fl, w[a]);
  }
  double s = 0;
  const std::size_t combos = std::size_t{1} << (2 * n);
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t flat = 0;
    double wt = 1;
    bool ok = true;
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t o = (c >> (2 * a)) & 3u;
      long long i = base[a] + static_cast<long long>(o);
      if (i < 0 || i >= static_cast<long long>(grid.axes[a].count)) {
        ok = false;
        break;
      }
      flat = flat * grid.axes[a].count + static_cast<std::size_t>(i);
      wt *= w[a][o];
    }
    if (ok) s += wt * values[flat];
  }
  return s;
}

double lp_norm(const SampledField& f, double p) {
  if (!(p >= 1)) throw DomainError("lp_norm: p must be >= 1");
  if (std::isinf(p)) return f.max_abs();
  double s = 0;
  for (double v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

double grid_quasi_radius(const GroupSpec& g, const Grid& grid) {
  double s = 0;
  const std::size_t n = grid.dim();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point c(n);
    for (std::size_t a = 0; a < n; ++a) c[a] = (mask >> a & 1) ? grid.axes[a].end() : grid.axes[a].origin;
    s = std::max(s, quasi_norm(g, c));
  }
  return s;
}

double integral(const SampledField& f) {
  double s = 0;
  for (double v : f.values) s += v;
  return s * f.grid.cell_volume();
}

SampledField axpy(double a, const SampledField& x, const SampledField& y) {
  if (!(x.grid == y.grid)) throw DimensionMismatch("axpy: grid mismatch");
  SampledField r = y;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += a * x.values[i];
  r.support_margin = std::min(x.support_margin, y.support_margin);
  return r;
}

SampledField translate_sample(const SampledField& f, const Point& y, bool check_support) {
  const GroupSpec& g = *f.group;
  SampledField r = f;
  for (std::size_t i = 0; i < f.values.size(); ++i) r.values[i] = f.interpolate(multiply(g, f.grid.node(i), y));
  if (check_support) {
    double mx = f.max_abs();
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      if (!in_margin(f.grid, i, f.support_margin)) continue;
      if (std::abs(r.values[i]) > 1e-12 * mx)
        throw SupportOverflow("translate_sample: shift moves support into the margin");
      r.values[i] = 0.0;
    }
  } else {
    r.support_margin = 0;
  }
  return r;
}

SampledField second_difference(const SampledField& f, const Point& y, bool check_support) {
  SampledField a = translate_sample(f, y, check_support);
  SampledField b = translate_sample(f, inverse(*f.group, y), check_support);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i] - 2 * f.values[i];
  a.support_margin = std::min(a.support_margin, b.support_margin);
  return a;
}

SampledField apply_vf(const SampledField& f, std::size_t j) {
  const GroupSpec& g = *f.group;
  if (j >= g.n) throw DomainError("apply_vf: index out of range");
  const std::size_t n = g.n;
  SampledField r = f;
  r.support_margin = std::max(0, f.support_margin - 2);
  auto val = [&](std::size_t flat, std::size_t a, long long off, std::size_t idx) {
    long long q = static_cast<long long>(idx) + off;
    if (q < 0 || q >= static_cast<long long>(f.grid.axes[a].count)) return 0.0;
    return f.values[flat + static_cast<std::size_t>(off * static_cast<long long>(f.grid.stride(a)))];
  };
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    Point x = f.grid.node(i);
    auto mi = f.grid.multi_index(i);
    std::vector<double> a = vf_coeffs(g, j, x);
    double s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (a[k] == 0.0) continue;
      double h = f.grid.axes[k].spacing;
      double d = (-val(i, k, 2, mi[k]) + 8 * val(i, k, 1, mi[k]) - 8 * val(i, k, -1, mi[k]) + val(i, k, -2, mi[k])) /
                 (12 * h);
      s += a[k] * d;
    }
    r.values[i] = s;
  }
  return r;
}

SampledField group_convolve(const SampledField& f, const SampledField& k) {
  if (f.group->name != k.group->name || f.grid.dim() != k.grid.dim())
    throw DimensionMismatch("group_convolve: fields live on different groups");
  const GroupSpec& g = *f.group;
  const std::size_t n = g.n;
  bool aligned = g.abelian;
  std::vector<long long> shift(n);
  for (std::size_t a = 0; a < n && aligned; ++a) {
    double h = f.grid.axes[a].spacing;
    if (std::abs(k.grid.axes[a].spacing - h) > 1e-12 * h) aligned = false;
    double s = -k.grid.axes[a].origin / h;
    if (std::abs(s - std::round(s)) > 1e-8) aligned = false;
    shift[a] = std::llround(s);
  }
  SampledField r = SampledField::zeros(f.group, f.grid, 0);
  const double vol = f.grid.cell_volume();
  if (aligned) {
    std::vector<std::size_t> df(n), dk(n);
    for (std::size_t a = 0; a < n; ++a) {
      df[a] = f.grid.axes[a].count;
      dk[a] = k.grid.axes[a].count;
    }
    std::vector<double> c = fft_convolve_nd(f.values, df, k.values, dk);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      auto mi = f.grid.multi_index(i);
      std::size_t flat = 0;
      bool ok = true;
      for (std::size_t a = 0; a < n; ++a) {
        long long p = static_cast<long long>(mi[a]) + shift[a];
        long long len = static_cast<long long>(df[a] + dk[a] - 1);
        if (p < 0 || p >= len) {
          ok = false;
          break;
        }
        flat = flat * static_cast<std::size_t>(len) + static_cast<std::size_t>(p);
      }
      r.values[i] = ok ? c[flat] * vol : 0.0;
    }
  } else {
    std::vector<Point> ys;
    std::vector<double> fy;
    for (std::size_t j = 0; j < f.values.size(); ++j)
      if (f.values[j] != 0.0) {
        ys.push_back(inverse(g, f.grid.node(j)));
        fy.push_back(f.values[j]);
      }
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      Point x = f.grid.node(i);
      double s = 0;
      for (std::size_t j = 0; j < ys.size(); ++j) s += fy[j] * k.interpolate(multiply(g, ys[j], x));
      r.values[i] = s * vol;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// I/O

void write_field_csv(std::ostream& out, const SampledField& f) {
  out << "# field group=" << f.group->name << " grid=" << f.grid.describe() << " margin=" << f.support_margin
      << "\n";
  for (std::size_t a = 0; a < f.grid.dim(); ++a) out << 'x' << a + 1 << ',';
  out << "value\n";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    Point p = f.grid.node(i);
    for (std::size_t a = 0; a < f.grid.dim(); ++a) out << fmt17(p[a]) << ',';
    out << fmt17(f.values[i]) << '\n';
  }
}

namespace {
constexpr char kMagic[4] = {'G', 'R', 'D', 'F'};

template <class T>
void put(std::ostream& o, T v) {
  o.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T>
T get(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw ParseError("binary field: truncated");
  return v;
}

Grid parse_grid_desc(const std::string& d) {
  Grid g;
  std::stringstream ss(d);
  std::string ax;
  while (std::getline(ss, ax, ';')) {
    Axis a;
    char c1 = 0, c2 = 0;
    std::istringstream as(ax);
    if (!(as >> a.origin >> c1 >> a.spacing >> c2 >> a.count) || c1 != ':' || c2 != ':')
      throw ParseError("field header: bad grid description '" + ax + "'");
    g.axes.push_back(a);
  }
  return g;
}
}  // namespace

void write_field_binary(std::ostream& out, const SampledField& f) {
  out.write(kMagic, 4);
  put<std::uint32_t>(out, 1);
  std::string gtext = emit_group(*f.group);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(gtext.size()));
  out.write(gtext.data(), static_cast<std::streamsize>(gtext.size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid.dim()));
  for (const Axis& a : f.grid.axes) {
    put<double>(out, a.origin);
    put<double>(out, a.spacing);
    put<std::uint64_t>(out, a.count);
  }
  put<std::int32_t>(out, f.support_margin);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

SampledField read_field(std::istream& in) {
  char head[4] = {};
  in.read(head, 4);
  if (in.gcount() == 4 && std::memcmp(head, kMagic, 4) == 0) {
    if (get<std::uint32_t>(in) != 1) throw ParseError("binary field: unsupported version");
    std::uint32_t len = get<std::uint32_t>(in);
    std::string gtext(len, '\0');
    if (!in.read(gtext.data(), len)) throw ParseError("binary field: truncated group");
    SampledField f;
    f.group = std::make_shared<const GroupSpec>(parse_group_string(gtext));
    std::uint32_t n = get<std::uint32_t>(in);
    for (std::uint32_t a = 0; a < n; ++a) {
      Axis ax;
      ax.origin = get<double>(in);
      ax.spacing = get<double>(in);
      ax.count = get<std::uint64_t>(in);
      f.grid.axes.push_back(ax);
    }
    f.support_margin = get<std::int32_t>(in);
    f.values.resize(f.grid.size());
    if (!in.read(reinterpret_cast<char*>(f.values.data()),
                 static_cast<std::streamsize>(f.values.size() * sizeof(double))))
      throw ParseError("binary field: truncated values");
    f.validate();
    return f;
  }
  // CSV: rewind and parse the header line
  in.clear();
  in.seekg(0);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# field", 0) != 0) throw ParseError("field: missing '# field' header");
  std::string gname, gdesc;
  int margin = 0;
  std::istringstream hs(line.substr(7));
  std::string kv;
  while (hs >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("field header: bad token '" + kv + "'");
    std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
    if (k == "group") gname = v;
    else if (k == "grid") gdesc = v;
    else if (k == "margin") margin = std::stoi(v);
    else throw ParseError("field header: unknown key '" + k + "'");
  }
  SampledField f;
  f.group = std::make_shared<const GroupSpec>(builtin_group(gname));
  f.grid = parse_grid_desc(gdesc);
  f.support_margin = margin;
  std::getline(in, line);  // column names
  f.values.reserve(f.grid.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto c = line.rfind(',');
    f.values.push_back(std::stod(line.substr(c + 1)));
  }
  f.validate();
  return f;
}

void save_field(const std::string& path, const SampledField& f) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw Error("cannot open '" + path + "' for writing");
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") write_field_csv(o, f);
  else write_field_binary(o, f);
}

SampledField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_field(in);
}

}  // namespace graded
