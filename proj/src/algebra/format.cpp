#include "psq/format.hpp"

#include <algorithm>

namespace psq {
namespace {

struct Atom {
  bool negative;
  std::string body;
};

std::string magnitude_string(const mpq_class& mag) {
  if (mag.get_den() == 1) return mag.get_num().get_str();
  return "(" + mag.get_num().get_str() + "/" + mag.get_den().get_str() + ")";
}

Atom make_atom(const mpq_class& r, bool imag, const Monomial& mono,
               const std::vector<std::string>& extras) {
  std::vector<std::string> parts;
  const mpq_class mag = abs(r);
  const bool bare = !imag && mono.is_one() && extras.empty();
  if (mag != 1 || bare) parts.push_back(magnitude_string(mag));
  if (imag) parts.push_back("i");
  for (const auto& [name, k] : mono.factors()) parts.push_back(power_string(name, k));
  for (const auto& e : extras) parts.push_back(e);
  std::string body;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) body += "*";
    body += parts[i];
  }
  return {sgn(r) < 0, body};
}

}  // namespace

std::string power_string(const std::string& name, int k) {
  if (k == 0) return "";
  if (k == 1) return name;
  return name + "^" + std::to_string(k);
}

std::string format_sum(const std::vector<std::pair<Coeff, std::vector<std::string>>>& terms) {
  std::vector<Atom> atoms;
  for (const auto& [c, extras] : terms) {
    for (const auto& [mono, g] : c.terms()) {
      if (g.re != 0) atoms.push_back(make_atom(g.re, false, mono, extras));
      if (g.im != 0) atoms.push_back(make_atom(g.im, true, mono, extras));
    }
  }
  if (atoms.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i == 0)
      out += atoms[i].negative ? "-" : "";
    else
      out += atoms[i].negative ? " - " : " + ";
    out += atoms[i].body;
  }
  return out;
}

std::string to_string(const GaussRat& g) { return to_string(Coeff(g)); }

std::string to_string(const Coeff& c) { return format_sum({{c, {}}}); }

std::string to_string(const PhasePoly& f) {
  std::vector<std::pair<Powers, const Coeff*>> order;
  for (const auto& [pw, c] : f.terms()) order.emplace_back(pw, &c);
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    const int dx = x.first.q + x.first.p, dy = y.first.q + y.first.p;
    if (dx != dy) return dx > dy;
    return x.first.q > y.first.q;
  });
  std::vector<std::pair<Coeff, std::vector<std::string>>> terms;
  for (const auto& [pw, c] : order) {
    std::vector<std::string> extras;
    if (pw.q) extras.push_back(power_string("q", pw.q));
    if (pw.p) extras.push_back(power_string("p", pw.p));
    terms.emplace_back(*c, std::move(extras));
  }
  return format_sum(terms);
}

std::string to_string(const ExpPoly& f) {
  if (f.phase().is_zero()) return to_string(f.prefactor());
  const std::string pre = to_string(f.prefactor());
  const std::string e = "exp(" + to_string(f.phase()) + ")";
  if (pre == "1") return e;
  return "(" + pre + ")*" + e;
}

std::string to_string(const DiffOp& d) {
  if (d.is_zero()) return "0";
  std::string out;
  for (const auto& [ord, c] : d.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")";
    if (ord.q) out += "*" + power_string("d_q", ord.q);
    if (ord.p) out += "*" + power_string("d_p", ord.p);
  }
  return out;
}

}  // namespace psq
