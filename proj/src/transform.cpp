#include "dlv/transform.hpp"

#include <map>
#include <sstream>

#include "dlv/errors.hpp"

namespace dlv {

namespace {

using Mat = std::array<std::array<Expr, 3>, 3>;

// Mixing matrix as a function of the new time: exponentials on the diagonal.
Mat mixing(const LocalTransform& tr) {
  Mat m = tr.m;
  Expr t = ev("t");
  for (int i = 0; i < 3; ++i)
    if (!tr.rate[i].is_zero()) m[i][i] = m[i][i] * exp_of(tr.rate[i] * t);
  return m;
}

// Entrywise time derivative; only the diagonal depends on t.
Mat mixing_dt(const LocalTransform& tr, const Mat& m) {
  Mat d;
  for (int i = 0; i < 3; ++i)
    if (!tr.rate[i].is_zero()) d[i][i] = tr.rate[i] * m[i][i];
  return d;
}

Expr det3(const Mat& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat inverse3(const Mat& m) {
  Expr det = det3(m);
  if (det.is_zero()) throw TransformError("mixing matrix is singular");
  Mat inv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / det;
    }
  return inv;
}

std::array<Expr, 3> mat_vec(const Mat& m, const std::array<Expr, 3>& v) {
  std::array<Expr, 3> r;
  for (int i = 0; i < 3; ++i)
    r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  Mat r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

// Forward substitution: old variable -> expression in the new ones.
SubstMap forward_map(const LocalTransform& tr, const Mat& m) {
  std::array<Expr, 3> deps{ev("u"), ev("v"), ev("w")};
  std::array<Expr, 3> image = mat_vec(m, deps);
  SubstMap s;
  s[*find_atom("t")] = tr.t0 * ev("t") + tr.t1;
  s[*find_atom("x")] = tr.x0 * ev("x") + tr.x1;
  s[*find_atom("u")] = image[0];
  s[*find_atom("v")] = image[1];
  s[*find_atom("w")] = image[2];
  return s;
}

void check_param_only(const Expr& e, const std::string& what) {
  for (AtomId a : e.atoms())
    if (atom_info(a).kind != AtomKind::Param)
      throw ClassError("transformed " + what + " depends on " + atom_name(a));
}

}  // namespace

LocalTransform identity_transform() {
  LocalTransform tr;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tr.m[i][j] = Expr(i == j ? 1 : 0);
  tr.rate = {Expr(0), Expr(0), Expr(0)};
  tr.t0 = Expr(1);
  tr.t1 = Expr(0);
  tr.x0 = Expr(1);
  tr.x1 = Expr(0);
  return tr;
}

void validate_transform(const LocalTransform& tr) {
  for (int i = 0; i < 3; ++i)
    if (tr.m[i][i].is_zero())
      throw TransformError("diagonal mixing entry " + std::to_string(i + 1) +
                           " vanishes");
  if (tr.t0.is_zero() || tr.x0.is_zero())
    throw TransformError("degenerate time or space scaling");
  if (det3(mixing(tr)).is_zero())
    throw TransformError("mixing matrix is singular");
}

LocalTransform inverse(const LocalTransform& tr) {
  validate_transform(tr);
  for (int i = 0; i < 3; ++i)
    if (!tr.rate[i].is_zero())
      throw TransformError(
          "inverse of an exponential mixing is not a constant mixing");
  LocalTransform inv;
  inv.m = inverse3(tr.m);
  inv.rate = {Expr(0), Expr(0), Expr(0)};
  inv.t0 = Expr(1) / tr.t0;
  inv.t1 = Expr(0) - tr.t1 / tr.t0;
  inv.x0 = Expr(1) / tr.x0;
  inv.x1 = Expr(0) - tr.x1 / tr.x0;
  return inv;
}

DLVSystem apply_to_system(const LocalTransform& tr, const DLVSystem& sys) {
  validate_transform(tr);
  Mat m = mixing(tr);
  Mat md = mixing_dt(tr, m);
  Mat mi = inverse3(m);
  std::array<Expr, 3> deps{ev("u"), ev("v"), ev("w")};
  SubstMap fwd = forward_map(tr, m);

  // u^k_t coefficients of the recombined equations: (x0^2/t0) M^-1 diag(l) M
  // must be diagonal, the diagonal becoming the new diffusivities.
  Mat lam;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) lam[i][j] = mi[i][j] * sys.lambda[j];
  lam = mat_mul(lam, m);
  DLVSystem out;
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j)
      if (j != k && !lam[k][j].is_zero())
        throw ClassError("diffusion terms stay mixed between equations " +
                         std::to_string(k + 1) + " and " + std::to_string(j + 1));
    out.lambda[k] = tr.x0.pow(2) / tr.t0 * lam[k][k];
    if (out.lambda[k].is_zero())
      throw ClassError("equation " + std::to_string(k + 1) +
                       " loses its time derivative");
    check_param_only(out.lambda[k], "diffusivity");
  }

  // Sources: x0^2 M^-1 (C(M u) - (l/t0) M' u) row by row.
  RDSystem rd = sys.rd();
  std::array<Expr, 3> shifted = mat_vec(md, deps);
  std::array<Expr, 3> src;
  for (int k = 0; k < 3; ++k)
    src[k] = rd.C[k].substitute(fwd) - sys.lambda[k] / tr.t0 * shifted[k];
  src = mat_vec(mi, src);

  SubstMap origin;
  origin[*find_atom("u")] = Expr(0);
  origin[*find_atom("v")] = Expr(0);
  origin[*find_atom("w")] = Expr(0);
  for (int k = 0; k < 3; ++k) {
    Expr ck = tr.x0.pow(2) * src[k];
    try {
      Expr q = ck / deps[k];
      Expr a = q.substitute(origin);
      std::array<Expr, 3> lin;
      for (int j = 0; j < 3; ++j) {
        SubstMap unit = origin;
        unit[*find_atom(j == 0 ? "u" : j == 1 ? "v" : "w")] = Expr(1);
        lin[j] = q.substitute(unit) - a;
      }
      Expr rebuilt = a;
      for (int j = 0; j < 3; ++j) rebuilt = rebuilt + lin[j] * deps[j];
      if (!(q - rebuilt).is_zero())
        throw ClassError("reaction term " + std::to_string(k + 1) +
                         " is not its variable times an affine form");
      check_param_only(a, "free term");
      for (const Expr& e : lin) check_param_only(e, "interaction coefficient");
      out.row[k] = {a, lin[0], lin[1], lin[2]};
    } catch (const DomainError&) {
      throw ClassError("reaction term " + std::to_string(k + 1) +
                       " is not divisible by its variable");
    }
  }
  return out;
}

VectorField apply_to_field(const LocalTransform& tr, const VectorField& f) {
  validate_transform(tr);
  validate_point_field(f);
  Mat m = mixing(tr);
  Mat mi = inverse3(m);
  Mat drift = mat_mul(mi, mixing_dt(tr, m));
  std::array<Expr, 3> deps{ev("u"), ev("v"), ev("w")};
  SubstMap fwd = forward_map(tr, m);

  VectorField out;
  out.xi0 = f.xi0.substitute(fwd) / tr.t0;
  out.xi1 = f.xi1.substitute(fwd) / tr.x0;
  std::array<Expr, 3> eta;
  for (int j = 0; j < 3; ++j) eta[j] = f.eta[j].substitute(fwd);
  eta = mat_vec(mi, eta);
  std::array<Expr, 3> pull = mat_vec(drift, deps);
  for (int k = 0; k < 3; ++k) out.eta[k] = eta[k] - out.xi0 * pull[k];
  return out;
}

LocalTransform parse_transform(const std::string& text) {
  std::map<std::string, Expr> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("transform line without '=': " + line);
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    if (kv.count(key)) throw Error("duplicate transform key: " + key);
    kv.emplace(key, parse_expr(line.substr(eq + 1)));
  }
  LocalTransform tr = identity_transform();
  auto take = [&kv](const std::string& key, Expr& slot) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    slot = it->second;
    kv.erase(it);
  };
  // row I mixes cI1 * own variable (rate cI0) with the other two: cI2, cI3
  const int col[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (int i = 0; i < 3; ++i) {
    std::string p = "c" + std::to_string(i + 1);
    take(p + "0", tr.rate[i]);
    take(p + "1", tr.m[i][i]);
    take(p + "2", tr.m[i][col[i][0]]);
    take(p + "3", tr.m[i][col[i][1]]);
  }
  take("c40", tr.t0);
  take("c41", tr.t1);
  take("c50", tr.x0);
  take("c51", tr.x1);
  if (!kv.empty()) throw Error("unknown transform key: " + kv.begin()->first);
  validate_transform(tr);
  return tr;
}

std::string transform_str(const LocalTransform& tr) {
  std::ostringstream os;
  const int col[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (int i = 0; i < 3; ++i) {
    std::string p = "c" + std::to_string(i + 1);
    os << p << "0 = " << tr.rate[i].str() << "\n";
    os << p << "1 = " << tr.m[i][i].str() << "\n";
    os << p << "2 = " << tr.m[i][col[i][0]].str() << "\n";
    os << p << "3 = " << tr.m[i][col[i][1]].str() << "\n";
  }
  os << "c40 = " << tr.t0.str() << "\nc41 = " << tr.t1.str() << "\n";
  os << "c50 = " << tr.x0.str() << "\nc51 = " << tr.x1.str() << "\n";
  return os.str();
}

}  // namespace dlv
