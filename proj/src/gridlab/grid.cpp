#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "psq/error.hpp"
#include "psq/gridlab.hpp"

namespace psq {

GridFn::GridFn(GridSpec spec, std::vector<cplx> values) : spec_(spec), values_(std::move(values)) {
  validate();
  if (values_.size() != spec_.size())
    throw Error(ErrorCode::InvalidArgument, "grid value count does not match its shape");
}

void GridFn::validate() const {
  if (spec_.nq < 2 || spec_.np < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 points per axis");
  if (!(spec_.qmax > spec_.qmin) || !(spec_.pmax > spec_.pmin))
    throw Error(ErrorCode::InvalidArgument, "empty grid range");
  if (!(spec_.hbar > 0.0)) throw Error(ErrorCode::InvalidArgument, "hbar must be positive");
}

GridFn GridFn::sample(const GridSpec& spec, const std::function<cplx(double, double)>& fn) {
  GridFn g(spec);
  for (int i = 0; i < spec.nq; ++i)
    for (int j = 0; j < spec.np; ++j) g.at(i, j) = fn(spec.q(i), spec.p(j));
  return g;
}

GridFn GridFn::sample(const GridSpec& spec, const ClosedFn& fn) {
  return sample(spec, [&](double q, double p) { return fn(q, p); });
}

GridFn GridFn::sample(const GridSpec& spec, const PhasePoly& f,
                      const std::map<std::string, cplx>& params) {
  auto values = params;
  values["hbar"] = spec.hbar;
  return sample(spec, ClosedFn::from_poly(f, values));
}

namespace {
void require_same(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw Error(ErrorCode::InvalidArgument, "grid shapes differ");
}
}  // namespace

GridFn& GridFn::operator+=(const GridFn& o) {
  require_same(spec_, o.spec_);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridFn& GridFn::operator-=(const GridFn& o) {
  require_same(spec_, o.spec_);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridFn& GridFn::operator*=(cplx s) {
  for (auto& v : values_) v *= s;
  return *this;
}

namespace {
std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace

void write_csv(std::ostream& os, const GridFn& f) {
  const GridSpec& s = f.spec();
  os << "# nq np qmin qmax pmin pmax hbar\n";
  os << "# " << s.nq << ' ' << s.np << ' ' << num(s.qmin) << ' ' << num(s.qmax) << ' '
     << num(s.pmin) << ' ' << num(s.pmax) << ' ' << num(s.hbar) << '\n';
  for (int i = 0; i < s.nq; ++i)
    for (int j = 0; j < s.np; ++j) {
      const cplx v = f.at(i, j);
      os << num(s.q(i)) << ',' << num(s.p(j)) << ',' << num(v.real()) << ',' << num(v.imag())
         << '\n';
    }
}

GridFn read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# nq", 0) != 0)
    throw Error(ErrorCode::IoError, "missing grid header line");
  if (!std::getline(is, line) || line.rfind("#", 0) != 0)
    throw Error(ErrorCode::IoError, "missing grid shape line");
  GridSpec s;
  {
    std::istringstream hs(line.substr(1));
    if (!(hs >> s.nq >> s.np >> s.qmin >> s.qmax >> s.pmin >> s.pmax >> s.hbar))
      throw Error(ErrorCode::IoError, "malformed grid shape line");
  }
  GridFn g(s);
  for (size_t k = 0; k < s.size(); ++k) {
    if (!std::getline(is, line)) throw Error(ErrorCode::IoError, "grid file truncated");
    double q, p, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &q, &p, &re, &im) != 4)
      throw Error(ErrorCode::IoError, "malformed grid row: " + line);
    g.values()[k] = {re, im};
  }
  return g;
}

void write_csv_file(const std::string& path, const GridFn& f) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + path);
  write_csv(os, f);
}

GridFn read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_csv(is);
}

}  // namespace psq
