#include "glpkit/derivation.hpp"

#include <charconv>
#include <sstream>

#include "glpkit/sat.hpp"

namespace glpkit {

namespace {

bool is_box(const Formula& f, Modality* i = nullptr) {
  if (!f.is(Op::Box)) return false;
  if (i) *i = f.index();
  return true;
}

// ~[i]~A, returning A and i.
bool is_neg_box_neg(const Formula& f, Modality& i, Formula& a) {
  if (!f.is(Op::Not) || !f.lhs().is(Op::Box) || !f.lhs().lhs().is(Op::Not)) return false;
  i = f.lhs().index();
  a = f.lhs().lhs().lhs();
  return true;
}

}  // namespace

bool matches_schema(std::string_view schema, const Formula& f, System system) {
  if (schema == "taut") return is_tautology(f);
  if (!f.is(Op::Imp)) return false;
  const Formula& x = f.lhs();
  const Formula& y = f.rhs();
  if (schema == "dual") {
    Modality i = 0;
    Formula a;
    if (x.is(Op::Dia) && is_neg_box_neg(y, i, a)) return i == x.index() && a == x.lhs();
    if (y.is(Op::Dia) && is_neg_box_neg(x, i, a)) return i == y.index() && a == y.lhs();
    return false;
  }
  if (schema == "K") {
    if (!x.is(Op::Box) || !x.lhs().is(Op::Imp) || !y.is(Op::Imp)) return false;
    Modality i = x.index();
    const Formula& a = x.lhs().lhs();
    const Formula& b = x.lhs().rhs();
    return y.lhs() == Formula::box(i, a) && y.rhs() == Formula::box(i, b);
  }
  if (schema == "lob") {
    if (!y.is(Op::Box)) return false;
    Modality i = y.index();
    return x == Formula::box(i, Formula::imp(y, y.lhs()));
  }
  if (schema == "dia-up") {
    return x.is(Op::Dia) && y.is(Op::Box) && y.lhs() == x && x.index() < y.index();
  }
  if (schema == "box-up") {
    return is_box(x) && is_box(y) && y.lhs() == x && x.index() < y.index();
  }
  if (schema == "box-in") {
    return is_box(x) && is_box(y) && y.index() == x.index() && is_box(y.lhs()) && y.lhs().lhs() == x.lhs() &&
           x.index() < y.lhs().index();
  }
  if (schema == "mono") {
    return system == System::GLP && x.is(Op::Dia) && y.is(Op::Dia) && x.lhs() == y.lhs() && y.index() <= x.index();
  }
  return false;
}

CheckResult check_derivation(const Derivation& d, const Formula& target, System system) {
  std::vector<Formula> proved;
  for (std::size_t n = 1; n <= d.lines.size(); ++n) {
    const Line& l = d.lines[n - 1];
    auto fail = [&](const std::string& msg) { return CheckResult{false, n, "line " + std::to_string(n) + ": " + msg}; };
    switch (l.kind) {
      case Line::Kind::Axiom:
        if (!matches_schema(l.schema, l.formula, system))
          return fail("not an instance of schema " + l.schema + (system == System::J ? " in J" : " in GLP"));
        proved.push_back(l.formula);
        break;
      case Line::Kind::MP: {
        if (l.a < 1 || l.a >= n || l.b < 1 || l.b >= n) return fail("modus ponens refers to a later or missing line");
        const Formula& fa = proved[l.a - 1];
        const Formula& fb = proved[l.b - 1];
        if (fa.is(Op::Imp) && fa.lhs() == fb) proved.push_back(fa.rhs());
        else if (fb.is(Op::Imp) && fb.lhs() == fa) proved.push_back(fb.rhs());
        else return fail("modus ponens premises do not match");
        break;
      }
      case Line::Kind::Nec:
        if (l.a < 1 || l.a >= n) return fail("necessitation refers to a later or missing line");
        proved.push_back(Formula::box(l.index, proved[l.a - 1]));
        break;
    }
  }
  if (proved.empty()) return {false, 0, "empty derivation"};
  if (!(proved.back() == target))
    return {false, d.lines.size(), "last line proves " + to_string(proved.back()) + ", not " + to_string(target)};
  return {true, 0, "ok"};
}

// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t parse_number(std::string_view s, std::size_t lineno) {
  s = trim(s);
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw DerivationParseError("script line " + std::to_string(lineno) + ": expected a number, got '" +
                               std::string(s) + "'");
  return v;
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
  Derivation d;
  std::size_t lineno = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    ++lineno;
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    auto dot = s.find('.');
    if (dot == std::string_view::npos)
      throw DerivationParseError("script line " + std::to_string(lineno) + ": missing step number");
    std::size_t n = parse_number(s.substr(0, dot), lineno);
    if (n != d.lines.size() + 1)
      throw DerivationParseError("script line " + std::to_string(lineno) + ": expected step " +
                                 std::to_string(d.lines.size() + 1));
    std::string_view rest = trim(s.substr(dot + 1));
    auto sp = rest.find_first_of(" \t");
    std::string_view verb = rest.substr(0, sp);
    std::string_view args = sp == std::string_view::npos ? std::string_view() : trim(rest.substr(sp));
    Line l;
    if (verb == "axiom") {
      auto colon = args.find(':');
      if (colon == std::string_view::npos)
        throw DerivationParseError("script line " + std::to_string(lineno) + ": axiom needs '<schema> : <formula>'");
      l.kind = Line::Kind::Axiom;
      l.schema = std::string(trim(args.substr(0, colon)));
      try {
        l.formula = parse_formula(args.substr(colon + 1));
      } catch (const ParseError& e) {
        throw DerivationParseError("script line " + std::to_string(lineno) + ": " + e.what());
      }
    } else if (verb == "mp" || verb == "nec") {
      auto sp2 = args.find_first_of(" \t");
      if (sp2 == std::string_view::npos)
        throw DerivationParseError("script line " + std::to_string(lineno) + ": " + std::string(verb) +
                                   " needs two numbers");
      std::size_t x = parse_number(args.substr(0, sp2), lineno);
      std::size_t y = parse_number(args.substr(sp2), lineno);
      if (verb == "mp") {
        l.kind = Line::Kind::MP;
        l.a = x;
        l.b = y;
      } else {
        l.kind = Line::Kind::Nec;
        l.index = static_cast<Modality>(x);
        l.a = y;
      }
    } else {
      throw DerivationParseError("script line " + std::to_string(lineno) + ": unknown step '" + std::string(verb) + "'");
    }
    d.lines.push_back(std::move(l));
  }
  // Fill in rule conclusions where they are determined, for display.
  for (std::size_t n = 0; n < d.lines.size(); ++n) {
    Line& l = d.lines[n];
    if (l.kind == Line::Kind::Nec && l.a >= 1 && l.a <= n) l.formula = Formula::box(l.index, d.lines[l.a - 1].formula);
    if (l.kind == Line::Kind::MP && l.a >= 1 && l.a <= n && l.b >= 1 && l.b <= n) {
      const Formula& fa = d.lines[l.a - 1].formula;
      const Formula& fb = d.lines[l.b - 1].formula;
      if (fa.is(Op::Imp) && fa.lhs() == fb) l.formula = fa.rhs();
      else if (fb.is(Op::Imp) && fb.lhs() == fa) l.formula = fb.rhs();
    }
  }
  return d;
}

std::string to_string(const Derivation& d) {
  std::ostringstream out;
  for (std::size_t n = 1; n <= d.lines.size(); ++n) {
    const Line& l = d.lines[n - 1];
    out << n << ". ";
    switch (l.kind) {
      case Line::Kind::Axiom:
        out << "axiom " << l.schema << " : " << to_string(l.formula);
        break;
      case Line::Kind::MP:
        out << "mp " << l.a << ' ' << l.b;
        break;
      case Line::Kind::Nec:
        out << "nec " << l.index << ' ' << l.a;
        break;
    }
    out << '\n';
  }
  return out.str();
}

Derivation slice(const Derivation& d, std::size_t line) {
  std::vector<bool> need(d.lines.size() + 1, false);
  need[line] = true;
  for (std::size_t n = line; n >= 1; --n) {
    if (!need[n]) continue;
    const Line& l = d.lines[n - 1];
    if (l.kind == Line::Kind::MP) need[l.a] = need[l.b] = true;
    if (l.kind == Line::Kind::Nec) need[l.a] = true;
  }
  std::vector<std::size_t> renum(d.lines.size() + 1, 0);
  Derivation out;
  for (std::size_t n = 1; n <= line; ++n) {
    if (!need[n]) continue;
    Line l = d.lines[n - 1];
    if (l.kind == Line::Kind::MP) {
      l.a = renum[l.a];
      l.b = renum[l.b];
    }
    if (l.kind == Line::Kind::Nec) l.a = renum[l.a];
    out.lines.push_back(std::move(l));
    renum[n] = out.lines.size();
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> DerivationBuilder::find(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t DerivationBuilder::push(Line l) {
  if (auto n = find(l.formula)) return *n;
  d_.lines.push_back(std::move(l));
  index_.emplace(d_.lines.back().formula, d_.lines.size());
  return d_.lines.size();
}

std::size_t DerivationBuilder::axiom(std::string schema, Formula f) {
  Line l;
  l.kind = Line::Kind::Axiom;
  l.schema = std::move(schema);
  l.formula = std::move(f);
  return push(std::move(l));
}

std::size_t DerivationBuilder::mp(std::size_t imp_line, std::size_t ante_line) {
  const Formula& imp = formula(imp_line);
  if (!imp.is(Op::Imp) || !(imp.lhs() == formula(ante_line)))
    throw std::logic_error("DerivationBuilder::mp: premises do not match");
  Line l;
  l.kind = Line::Kind::MP;
  l.a = imp_line;
  l.b = ante_line;
  l.formula = imp.rhs();
  return push(std::move(l));
}

std::size_t DerivationBuilder::nec(Modality i, std::size_t line) {
  Line l;
  l.kind = Line::Kind::Nec;
  l.index = i;
  l.a = line;
  l.formula = Formula::box(i, formula(line));
  return push(std::move(l));
}

std::size_t DerivationBuilder::taut_from(const std::vector<std::size_t>& premises, const Formula& c) {
  if (auto n = find(c)) return *n;
  Formula chain = c;
  for (auto it = premises.rbegin(); it != premises.rend(); ++it) chain = Formula::imp(formula(*it), chain);
  std::size_t cur = axiom("taut", chain);
  for (std::size_t p : premises) cur = mp(cur, p);
  return cur;
}

std::size_t DerivationBuilder::box_mono(Modality n, std::size_t imp_line) {
  Formula imp = formula(imp_line);
  Formula x = imp.lhs();
  Formula y = imp.rhs();
  std::size_t boxed = nec(n, imp_line);
  std::size_t k = axiom("K", Formula::imp(Formula::box(n, imp),
                                          Formula::imp(Formula::box(n, x), Formula::box(n, y))));
  return mp(k, boxed);
}

std::size_t DerivationBuilder::four(Modality n, const Formula& a) {
  Formula na = Formula::box(n, a);
  Formula target = Formula::imp(na, Formula::box(n, na));
  if (auto done = find(target)) return *done;
  Formula c = Formula::conj(a, na);
  Formula nc = Formula::box(n, c);
  std::size_t c_a = axiom("taut", Formula::imp(c, a));
  std::size_t nc_na = box_mono(n, c_a);  // [n]C -> [n]A
  // A -> ([n]C -> C)
  std::size_t step = taut_from({nc_na}, Formula::imp(a, Formula::imp(nc, c)));
  std::size_t boxed = box_mono(n, step);  // [n]A -> [n]([n]C -> C)
  std::size_t lob = axiom("lob", Formula::imp(Formula::box(n, Formula::imp(nc, c)), nc));
  std::size_t c_na = axiom("taut", Formula::imp(c, na));
  std::size_t nc_nna = box_mono(n, c_na);  // [n]C -> [n][n]A
  return taut_from({boxed, lob, nc_nna}, target);
}

std::size_t DerivationBuilder::box_conj(Modality n, const Formula& p, const std::vector<std::size_t>& lines) {
  if (lines.empty()) {
    std::size_t t = axiom("taut", Formula::top());
    std::size_t bt = nec(n, t);
    return taut_from({bt}, Formula::imp(p, Formula::box(n, Formula::top())));
  }
  std::size_t acc = lines.front();
  Formula y = formula(acc).rhs().lhs();
  for (std::size_t k = 1; k < lines.size(); ++k) {
    Formula x = formula(lines[k]).rhs().lhs();
    Formula yx = Formula::conj(y, x);
    std::size_t t = axiom("taut", Formula::imp(y, Formula::imp(x, yx)));
    std::size_t b1 = box_mono(n, t);  // [n]Y -> [n](X -> Y & X)
    std::size_t kk = axiom("K", Formula::imp(Formula::box(n, Formula::imp(x, yx)),
                                             Formula::imp(Formula::box(n, x), Formula::box(n, yx))));
    acc = taut_from({acc, lines[k], b1, kk}, Formula::imp(p, Formula::box(n, yx)));
    y = yx;
  }
  return acc;
}

std::size_t DerivationBuilder::neg_box_to_dia(Modality i, const Formula& a) {
  Formula na = Formula::neg(a);
  Formula nna = Formula::neg(na);
  std::size_t dual = axiom("dual", Formula::imp(Formula::neg(Formula::box(i, nna)), Formula::dia(i, na)));
  std::size_t dn = axiom("taut", Formula::imp(nna, a));
  std::size_t boxed = box_mono(i, dn);  // [i]~~a -> [i]a
  return taut_from({boxed, dual}, Formula::imp(Formula::neg(Formula::box(i, a)), Formula::dia(i, na)));
}

std::size_t DerivationBuilder::dia_to_neg_box(Modality i, const Formula& a) {
  Formula na = Formula::neg(a);
  Formula nna = Formula::neg(na);
  std::size_t dual = axiom("dual", Formula::imp(Formula::dia(i, na), Formula::neg(Formula::box(i, nna))));
  std::size_t dn = axiom("taut", Formula::imp(a, nna));
  std::size_t boxed = box_mono(i, dn);  // [i]a -> [i]~~a
  return taut_from({boxed, dual}, Formula::imp(Formula::dia(i, na), Formula::neg(Formula::box(i, a))));
}

}  // namespace glpkit
