#include <cstdio>
#include <sstream>

#include "lightcyl/expr.hpp"

namespace lightcyl {

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Pow:
      return 4;
    case ExprKind::Constant:
      return e.value < 0.0 ? 3 : 5;
    default:
      return 5;
  }
}

const char* function_name(ExprKind k) {
  switch (k) {
    case ExprKind::Sin:
      return "sin";
    case ExprKind::Cos:
      return "cos";
    case ExprKind::Exp:
      return "exp";
    case ExprKind::Log:
      return "log";
    case ExprKind::Sqrt:
      return "sqrt";
    case ExprKind::Sinh:
      return "sinh";
    case ExprKind::Cosh:
      return "cosh";
    default:
      return nullptr;
  }
}

void print(const Expr& e, const ImmersionSpec& spec, std::ostream& os);

void print_child(const Expr& child, bool parens, const ImmersionSpec& spec, std::ostream& os) {
  if (parens) os << "(";
  print(child, spec, os);
  if (parens) os << ")";
}

void print(const Expr& e, const ImmersionSpec& spec, std::ostream& os) {
  const int p = precedence(e);
  switch (e.kind) {
    case ExprKind::Constant:
      os << number(e.value);
      return;
    case ExprKind::Parameter:
      os << spec.param_names[e.index];
      return;
    case ExprKind::NamedConstant:
      os << e.name;
      return;
    case ExprKind::Neg:
      os << "-";
      print_child(*e.lhs, precedence(*e.lhs) < 4, spec, os);
      return;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
      const char op = e.kind == ExprKind::Add ? '+' : e.kind == ExprKind::Sub ? '-' : e.kind == ExprKind::Mul ? '*' : '/';
      print_child(*e.lhs, precedence(*e.lhs) < p, spec, os);
      os << (p == 1 ? " " : "") << op << (p == 1 ? " " : "");
      print_child(*e.rhs, precedence(*e.rhs) <= p, spec, os);
      return;
    }
    case ExprKind::Pow:
      print_child(*e.lhs, precedence(*e.lhs) <= 4, spec, os);
      os << "^";
      if (e.value < 0.0) {
        os << "(" << number(e.value) << ")";
      } else {
        os << number(e.value);
      }
      return;
    case ExprKind::SplineCall:
      os << spec.splines[e.index].name << "(";
      print(*e.lhs, spec, os);
      os << ")";
      return;
    default:
      os << function_name(e.kind) << "(";
      print(*e.lhs, spec, os);
      os << ")";
      return;
  }
}

}  // namespace

std::string print_expr(const Expr& e, const ImmersionSpec& spec) {
  std::ostringstream os;
  print(e, spec, os);
  return os.str();
}

std::string print_immersion_spec(const ImmersionSpec& spec) {
  std::ostringstream os;
  os << "params ";
  for (int i = 0; i < spec.n_params; ++i) os << (i ? ", " : "") << spec.param_names[i];
  os << ";\nambient " << spec.ambient_dim << (spec.mode == AmbientMode::Cone ? " cone" : "") << ";\n";
  for (const auto& c : spec.constants) os << "const " << c.name << " = " << number(c.value) << ";\n";
  for (int i = 0; i < spec.n_params; ++i) {
    const Interval& d = spec.param_domain[i];
    if (d.bounded()) {
      os << "domain " << spec.param_names[i] << " in [" << number(d.lo) << ", " << number(d.hi) << "];\n";
    }
  }
  for (const auto& s : spec.splines) {
    os << "spline " << s.name << " = [\n";
    const auto& knots = s.spline.knots();
    for (std::size_t k = 0; k < knots.size(); ++k) {
      os << "  " << number(knots[k].x) << ", " << number(knots[k].value) << ", " << number(knots[k].d1) << ", "
         << number(knots[k].d2) << (k + 1 < knots.size() ? ";\n" : "\n");
    }
    os << "];\n";
  }
  os << "map [\n";
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    os << "  " << print_expr(*spec.components[c], spec) << (c + 1 < spec.components.size() ? ",\n" : "\n");
  }
  os << "];\n";
  return os.str();
}

}  // namespace lightcyl
