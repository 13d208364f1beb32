#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

#include "lightcyl/expr.hpp"

namespace lightcyl {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  double number = 0.0;
  SourcePos pos;
};

std::string describe(const Token& t) {
  switch (t.type) {
    case Tok::End:
      return "end of input";
    case Tok::Number:
      return "number '" + t.text + "'";
    case Tok::Ident:
      return "identifier '" + t.text + "'";
    case Tok::Punct:
      return "'" + t.text + "'";
  }
  return "?";
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;  // count UTF-8 code points, not bytes
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.pos = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.type = Tok::Ident;
      t.text = text.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      const char* begin = text.c_str() + i;
      char* end = nullptr;
      t.number = std::strtod(begin, &end);
      const std::size_t len = static_cast<std::size_t>(end - begin);
      t.type = Tok::Number;
      t.text = text.substr(i, len);
      advance(len);
    } else if (std::string_view("+-*/^(),;[]=").find(c) != std::string_view::npos) {
      t.type = Tok::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      std::size_t len = 1;
      const auto uc = static_cast<unsigned char>(c);
      if (uc >= 0xC0) len = uc >= 0xF0 ? 4 : uc >= 0xE0 ? 3 : 2;
      throw ParseError(line, col, "unexpected character '" + text.substr(i, len) + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.type = Tok::End;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

// Syntax tree before identifiers are resolved.
struct RawNode {
  enum Kind { Number, Ident, Call, Neg, Binary, Pow } kind = Number;
  double number = 0.0;
  std::string name;  // identifier, function name, or binary operator
  std::vector<RawNode> args;
  SourcePos pos;
};

struct RawStatement {
  std::string keyword;
  SourcePos pos;
  std::vector<Token> names;      // params / const / domain / spline target
  std::vector<RawNode> exprs;    // map components, const value, domain bounds
  std::vector<SplineKnot> knots; // spline data
  std::vector<SourcePos> knot_pos;
  Token integer;                 // ambient
};

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<RawStatement> statements() {
    std::vector<RawStatement> out;
    while (peek().type != Tok::End) {
      if (is_punct(";")) {
        next();
        continue;
      }
      out.push_back(statement());
      if (peek().type == Tok::End) break;
      expect(";", "';' after statement");
    }
    return out;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_punct(std::string_view p) const { return peek().type == Tok::Punct && peek().text == p; }

  [[noreturn]] void fail(const Token& t, const std::string& expected) const {
    throw ParseError(t.pos.line, t.pos.column, "expected " + expected + ", found " + describe(t));
  }

  Token expect(std::string_view p, const std::string& what) {
    if (!is_punct(p)) fail(peek(), what);
    return next();
  }

  Token expect_ident(const std::string& what) {
    if (peek().type != Tok::Ident) fail(peek(), what);
    return next();
  }

  RawStatement statement() {
    const Token kw = peek();
    if (kw.type != Tok::Ident) fail(kw, "statement keyword (params, ambient, const, domain, spline, map)");
    next();
    RawStatement st;
    st.keyword = kw.text;
    st.pos = kw.pos;
    if (kw.text == "params") {
      st.names.push_back(expect_ident("parameter name"));
      while (is_punct(",")) {
        next();
        st.names.push_back(expect_ident("parameter name"));
      }
    } else if (kw.text == "ambient") {
      const Token t = peek();
      if (t.type != Tok::Number || std::floor(t.number) != t.number || t.number < 1.0) {
        fail(t, "positive integer ambient dimension");
      }
      st.integer = next();
      if (peek().type == Tok::Ident) {
        const Token m = peek();
        if (m.text != "cone" && m.text != "cylinder") fail(m, "'cone', 'cylinder' or end of statement");
        st.names.push_back(next());
      }
    } else if (kw.text == "const") {
      st.names.push_back(expect_ident("constant name"));
      expect("=", "'='");
      st.exprs.push_back(expression());
    } else if (kw.text == "domain") {
      st.names.push_back(expect_ident("parameter name"));
      const Token in = peek();
      if (in.type != Tok::Ident || in.text != "in") fail(in, "'in'");
      next();
      expect("[", "'['");
      st.exprs.push_back(expression());
      expect(",", "','");
      st.exprs.push_back(expression());
      expect("]", "']'");
    } else if (kw.text == "spline") {
      st.names.push_back(expect_ident("spline name"));
      expect("=", "'='");
      expect("[", "'['");
      do {
        if (is_punct(";")) next();
        st.knot_pos.push_back(peek().pos);
        std::array<double, 4> row{};
        for (int k = 0; k < 4; ++k) {
          if (k > 0) expect(",", "',' between knot entries");
          row[k] = signed_number();
        }
        st.knots.push_back({row[0], row[1], row[2], row[3]});
      } while (is_punct(";"));
      expect("]", "']' or ';' in spline table");
    } else if (kw.text == "map") {
      expect("[", "'['");
      st.exprs.push_back(expression());
      while (is_punct(",")) {
        next();
        st.exprs.push_back(expression());
      }
      expect("]", "',' or ']'");
    } else {
      fail(kw, "statement keyword (params, ambient, const, domain, spline, map)");
    }
    return st;
  }

  double signed_number() {
    double sign = 1.0;
    while (is_punct("-") || is_punct("+")) {
      if (next().text == "-") sign = -sign;
    }
    const Token t = peek();
    if (t.type != Tok::Number) fail(t, "number");
    next();
    return sign * t.number;
  }

  RawNode expression() {
    RawNode lhs = term();
    while (is_punct("+") || is_punct("-")) {
      const Token op = next();
      RawNode rhs = term();
      lhs = binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  RawNode term() {
    RawNode lhs = unary();
    while (is_punct("*") || is_punct("/")) {
      const Token op = next();
      RawNode rhs = unary();
      lhs = binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  RawNode unary() {
    if (is_punct("-")) {
      const Token op = next();
      RawNode n;
      n.kind = RawNode::Neg;
      n.pos = op.pos;
      n.args.push_back(unary());
      return n;
    }
    if (is_punct("+")) {
      next();
      return unary();
    }
    return power();
  }

  // Left-associative like the other binaries: 2^3^2 is (2^3)^2.
  RawNode power() {
    RawNode base = primary();
    while (is_punct("^")) {
      const Token op = next();
      RawNode exponent;
      if (is_punct("-")) {
        const Token neg = next();
        exponent.kind = RawNode::Neg;
        exponent.pos = neg.pos;
        exponent.args.push_back(primary());
      } else {
        exponent = primary();
      }
      RawNode n;
      n.kind = RawNode::Pow;
      n.pos = op.pos;
      n.args.push_back(std::move(base));
      n.args.push_back(std::move(exponent));
      base = std::move(n);
    }
    return base;
  }

  RawNode primary() {
    const Token t = peek();
    if (t.type == Tok::Number) {
      next();
      RawNode n;
      n.kind = RawNode::Number;
      n.number = t.number;
      n.pos = t.pos;
      return n;
    }
    if (t.type == Tok::Ident) {
      next();
      RawNode n;
      n.name = t.text;
      n.pos = t.pos;
      if (is_punct("(")) {
        next();
        n.kind = RawNode::Call;
        if (!is_punct(")")) {
          n.args.push_back(expression());
          while (is_punct(",")) {
            next();
            n.args.push_back(expression());
          }
        }
        expect(")", "',' or ')'");
      } else {
        n.kind = RawNode::Ident;
      }
      return n;
    }
    if (is_punct("(")) {
      next();
      RawNode inner = expression();
      expect(")", "')'");
      return inner;
    }
    fail(t, "operand");
  }

  static RawNode binary(const Token& op, RawNode lhs, RawNode rhs) {
    RawNode n;
    n.kind = RawNode::Binary;
    n.name = op.text;
    n.pos = op.pos;
    n.args.push_back(std::move(lhs));
    n.args.push_back(std::move(rhs));
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

const std::map<std::string, ExprKind>& functions() {
  static const std::map<std::string, ExprKind> table = {
      {"sin", ExprKind::Sin},   {"cos", ExprKind::Cos},   {"exp", ExprKind::Exp},
      {"log", ExprKind::Log},   {"sqrt", ExprKind::Sqrt}, {"sinh", ExprKind::Sinh},
      {"cosh", ExprKind::Cosh},
  };
  return table;
}

bool is_reserved(const std::string& name) {
  static const std::vector<std::string> keywords = {"params", "ambient", "const", "domain",
                                                    "in",     "map",     "spline"};
  if (functions().count(name) != 0) return true;
  for (const auto& k : keywords) {
    if (k == name) return true;
  }
  for (const auto& c : builtin_constants()) {
    if (c.name == name) return true;
  }
  return false;
}

bool depends_on_parameters(const Expr& e) {
  if (e.kind == ExprKind::Parameter) return true;
  return (e.lhs && depends_on_parameters(*e.lhs)) || (e.rhs && depends_on_parameters(*e.rhs));
}

class Resolver {
public:
  explicit Resolver(ImmersionSpec& spec) : spec_(spec) {}

  ExprPtr resolve(const RawNode& n) {
    auto e = std::make_shared<Expr>();
    e->pos = n.pos;
    switch (n.kind) {
      case RawNode::Number:
        e->kind = ExprKind::Constant;
        e->value = n.number;
        break;
      case RawNode::Ident:
        resolve_identifier(n, *e);
        break;
      case RawNode::Neg:
        e->kind = ExprKind::Neg;
        e->lhs = resolve(n.args[0]);
        break;
      case RawNode::Binary:
        e->kind = n.name == "+"   ? ExprKind::Add
                  : n.name == "-" ? ExprKind::Sub
                  : n.name == "*" ? ExprKind::Mul
                                  : ExprKind::Div;
        e->lhs = resolve(n.args[0]);
        e->rhs = resolve(n.args[1]);
        break;
      case RawNode::Pow: {
        e->kind = ExprKind::Pow;
        e->lhs = resolve(n.args[0]);
        ExprPtr exponent = resolve(n.args[1]);
        if (depends_on_parameters(*exponent)) {
          throw ParseError(n.args[1].pos.line, n.args[1].pos.column, "exponent must be a constant");
        }
        e->value = fold(*exponent);
        break;
      }
      case RawNode::Call:
        resolve_call(n, *e);
        break;
    }
    return e;
  }

  double fold(const Expr& e) const {
    return evaluate<double>(e, spec_, std::span<const double>(), std::span<const double>(), false);
  }

  void add_constant(const std::string& name, double value) { constants_[name] = value; }

private:
  void resolve_identifier(const RawNode& n, Expr& e) {
    for (int i = 0; i < spec_.n_params; ++i) {
      if (spec_.param_names[i] == n.name) {
        e.kind = ExprKind::Parameter;
        e.index = i;
        e.name = n.name;
        return;
      }
    }
    if (auto it = constants_.find(n.name); it != constants_.end()) {
      e.kind = ExprKind::NamedConstant;
      e.name = n.name;
      e.value = it->second;
      return;
    }
    for (const auto& c : builtin_constants()) {
      if (c.name == n.name) {
        e.kind = ExprKind::NamedConstant;
        e.name = n.name;
        e.value = c.value;
        return;
      }
    }
    if (functions().count(n.name) != 0) {
      throw ParseError(n.pos.line, n.pos.column, "function '" + n.name + "' used without arguments");
    }
    throw UndeclaredIdentifierError(n.pos.line, n.pos.column, "undeclared identifier '" + n.name + "'");
  }

  void resolve_call(const RawNode& n, Expr& e) {
    std::optional<ExprKind> kind;
    if (auto it = functions().find(n.name); it != functions().end()) {
      kind = it->second;
    } else {
      for (std::size_t i = 0; i < spec_.splines.size(); ++i) {
        if (spec_.splines[i].name == n.name) {
          kind = ExprKind::SplineCall;
          e.index = static_cast<int>(i);
        }
      }
    }
    if (!kind) {
      throw UndeclaredIdentifierError(n.pos.line, n.pos.column, "undeclared function '" + n.name + "'");
    }
    if (n.args.size() != 1) {
      throw ArityError(n.pos.line, n.pos.column,
                       "function '" + n.name + "' expects 1 argument, got " + std::to_string(n.args.size()));
    }
    e.kind = *kind;
    e.name = n.name;
    e.lhs = resolve(n.args[0]);
  }

  ImmersionSpec& spec_;
  std::map<std::string, double> constants_;
};

}  // namespace

ImmersionSpec parse_immersion_spec(const std::string& text) {
  Parser parser(tokenize(text));
  const std::vector<RawStatement> statements = parser.statements();

  ImmersionSpec spec;
  spec.source = text;
  const RawStatement* params = nullptr;
  const RawStatement* ambient = nullptr;
  const RawStatement* map = nullptr;
  auto once = [](const RawStatement*& slot, const RawStatement& st) {
    if (slot != nullptr) throw ParseError(st.pos.line, st.pos.column, "duplicate '" + st.keyword + "' statement");
    slot = &st;
  };
  for (const auto& st : statements) {
    if (st.keyword == "params") once(params, st);
    if (st.keyword == "ambient") once(ambient, st);
    if (st.keyword == "map") once(map, st);
  }
  const SourcePos first = statements.empty() ? SourcePos{1, 1} : statements.front().pos;
  if (params == nullptr) throw ParseError(first.line, first.column, "missing 'params' statement");
  if (map == nullptr) throw ParseError(first.line, first.column, "missing 'map' statement");
  if (ambient == nullptr) throw ParseError(first.line, first.column, "missing 'ambient' statement");

  for (const Token& t : params->names) {
    if (is_reserved(t.text)) throw ParseError(t.pos.line, t.pos.column, "'" + t.text + "' is reserved");
    for (const auto& existing : spec.param_names) {
      if (existing == t.text) throw ParseError(t.pos.line, t.pos.column, "duplicate parameter '" + t.text + "'");
    }
    spec.param_names.push_back(t.text);
  }
  spec.n_params = static_cast<int>(spec.param_names.size());
  spec.param_domain.assign(spec.n_params, Interval{});

  Resolver resolver(spec);
  auto name_taken = [&](const Token& t) {
    if (is_reserved(t.text)) throw ParseError(t.pos.line, t.pos.column, "'" + t.text + "' is reserved");
    for (const auto& p : spec.param_names) {
      if (p == t.text) throw ParseError(t.pos.line, t.pos.column, "'" + t.text + "' is already a parameter");
    }
    for (const auto& c : spec.constants) {
      if (c.name == t.text) throw ParseError(t.pos.line, t.pos.column, "duplicate name '" + t.text + "'");
    }
    for (const auto& s : spec.splines) {
      if (s.name == t.text) throw ParseError(t.pos.line, t.pos.column, "duplicate name '" + t.text + "'");
    }
  };

  // Splines and constants first, in declaration order; then domains and the map.
  for (const auto& st : statements) {
    if (st.keyword == "spline") {
      name_taken(st.names[0]);
      for (std::size_t k = 1; k < st.knots.size(); ++k) {
        if (!(st.knots[k].x > st.knots[k - 1].x)) {
          throw ParseError(st.knot_pos[k].line, st.knot_pos[k].column, "spline abscissae must increase strictly");
        }
      }
      if (st.knots.size() < 2) throw ParseError(st.pos.line, st.pos.column, "spline needs at least two knots");
      spec.splines.push_back({st.names[0].text, Spline(st.knots)});
    } else if (st.keyword == "const") {
      name_taken(st.names[0]);
      ExprPtr e = resolver.resolve(st.exprs[0]);
      if (depends_on_parameters(*e)) {
        throw ParseError(st.exprs[0].pos.line, st.exprs[0].pos.column, "constant depends on a parameter");
      }
      const double v = resolver.fold(*e);
      spec.constants.push_back({st.names[0].text, v});
      resolver.add_constant(st.names[0].text, v);
    }
  }

  for (const auto& st : statements) {
    if (st.keyword != "domain") continue;
    const Token& name = st.names[0];
    int index = -1;
    for (int i = 0; i < spec.n_params; ++i) {
      if (spec.param_names[i] == name.text) index = i;
    }
    if (index < 0) {
      throw UndeclaredIdentifierError(name.pos.line, name.pos.column, "undeclared parameter '" + name.text + "'");
    }
    double bounds[2];
    for (int k = 0; k < 2; ++k) {
      ExprPtr e = resolver.resolve(st.exprs[k]);
      if (depends_on_parameters(*e)) {
        throw ParseError(st.exprs[k].pos.line, st.exprs[k].pos.column, "domain bound depends on a parameter");
      }
      bounds[k] = resolver.fold(*e);
    }
    if (!(bounds[0] < bounds[1])) throw ParseError(st.pos.line, st.pos.column, "empty domain interval");
    spec.param_domain[index] = {bounds[0], bounds[1]};
  }

  for (const auto& raw : map->exprs) spec.components.push_back(resolver.resolve(raw));

  const int dim = static_cast<int>(ambient->integer.number);
  spec.ambient_dim = dim;
  if (static_cast<int>(spec.components.size()) != dim) {
    throw ParseError(map->pos.line, map->pos.column,
                     "map has " + std::to_string(spec.components.size()) + " components but ambient is " +
                         std::to_string(dim));
  }
  if (dim != spec.n_params + 2) {
    throw ParseError(ambient->integer.pos.line, ambient->integer.pos.column,
                     "ambient must be params+2 (codimension two)");
  }
  spec.mode = (!ambient->names.empty() && ambient->names[0].text == "cone") ? AmbientMode::Cone : AmbientMode::Cylinder;
  return spec;
}

const std::vector<NamedValue>& builtin_constants() {
  static const std::vector<NamedValue> table = {{"pi", M_PI}, {"sqrt2", M_SQRT2}};
  return table;
}

bool ImmersionSpec::in_domain(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != n_params) return false;
  for (int i = 0; i < n_params; ++i) {
    if (!param_domain[i].contains(u[i])) return false;
  }
  return true;
}

std::string describe_point(std::span<const double> u) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
  os << ")";
  return os.str();
}

namespace detail {

void throw_domain(const Expr& e, const ImmersionSpec& spec, std::span<const double> u, const std::string& why) {
  throw DomainError(why + " in '" + print_expr(e, spec) + "' at " + describe_point(u) + " (line " +
                    std::to_string(e.pos.line) + ", column " + std::to_string(e.pos.column) + ")");
}

}  // namespace detail

Eigen::VectorXd evaluate_point(const ImmersionSpec& spec, std::span<const double> u) {
  if (static_cast<int>(u.size()) != spec.n_params) throw DimensionError("evaluate_point: wrong number of parameters");
  Eigen::VectorXd out(spec.ambient_dim);
  for (int c = 0; c < spec.ambient_dim; ++c) out(c) = evaluate<double>(*spec.components[c], spec, u, u, false);
  return out;
}

double evaluate_constant_expression(const std::string& text) {
  const ImmersionSpec sp = parse_immersion_spec("params u; ambient 3; const k = " + text + "; map [k, 0, 0]");
  return sp.constants.back().value;
}

}  // namespace lightcyl
