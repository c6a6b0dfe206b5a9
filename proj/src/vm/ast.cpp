#include "finitekit/vm/ast.hpp"

#include <algorithm>
#include <set>

#include "finitekit/util/error.hpp"

namespace finitekit::vm {

std::string Expr::to_string() const {
  switch (kind) {
    case Kind::constant: return bit ? "1" : "0";
    case Kind::input: return "input[" + std::to_string(index) + "]";
    case Kind::hint: return "hint[" + std::to_string(index) + "]";
    case Kind::name: return id;
    case Kind::apply: {
      std::string s = mnemonic(op);
      s += '(';
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ',';
        s += args[i].to_string();
      }
      return s + ')';
    }
  }
  return "?";
}

namespace build {

Expr lit(int bit) {
  Expr e;
  e.bit = static_cast<std::uint8_t>(bit & 1);
  return e;
}
Expr in(int index) {
  Expr e;
  e.kind = Expr::Kind::input;
  e.index = index;
  return e;
}
Expr hint(int index) {
  Expr e;
  e.kind = Expr::Kind::hint;
  e.index = index;
  return e;
}
Expr ref(std::string name) {
  Expr e;
  e.kind = Expr::Kind::name;
  e.id = std::move(name);
  return e;
}
Expr apply(Op op, std::vector<Expr> args) {
  Expr e;
  e.kind = Expr::Kind::apply;
  e.op = op;
  e.args = std::move(args);
  return e;
}
Expr not_(Expr a) { return apply(Op::NOT, {std::move(a)}); }
Expr and_(Expr a, Expr b) { return apply(Op::AND, {std::move(a), std::move(b)}); }
Expr or_(Expr a, Expr b) { return apply(Op::OR, {std::move(a), std::move(b)}); }
Expr xor_(Expr a, Expr b) { return apply(Op::XOR, {std::move(a), std::move(b)}); }

Stmt out(Expr e) {
  Stmt s;
  s.kind = Stmt::Kind::assign;
  s.target = "out";
  s.expr = std::move(e);
  return s;
}
Stmt eval(Expr e) {
  Stmt s;
  s.kind = Stmt::Kind::eval;
  s.expr = std::move(e);
  return s;
}
Stmt brk() {
  Stmt s;
  s.kind = Stmt::Kind::brk;
  return s;
}
Stmt cont() {
  Stmt s;
  s.kind = Stmt::Kind::cont;
  return s;
}
Stmt if_(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body) {
  Stmt s;
  s.kind = Stmt::Kind::if_else;
  s.expr = std::move(cond);
  s.body = std::move(then_body);
  s.else_body = std::move(else_body);
  return s;
}
Stmt loop(std::vector<Stmt> body) {
  Stmt s;
  s.kind = Stmt::Kind::loop;
  s.body = std::move(body);
  return s;
}
Stmt ret(Expr e) {
  Stmt s;
  s.kind = Stmt::Kind::ret;
  s.expr = std::move(e);
  s.has_value = true;
  return s;
}
Stmt ret() {
  Stmt s;
  s.kind = Stmt::Kind::ret;
  return s;
}
Stmt call(std::string callee, std::vector<Expr> args) {
  Stmt s;
  s.kind = Stmt::Kind::call;
  s.callee = std::move(callee);
  s.args = std::move(args);
  return s;
}

Ast solver(std::vector<Stmt> query, std::vector<Stmt> initialize) {
  Ast ast;
  ast.procedures.push_back({"Initialize", {"hint"}, std::move(initialize)});
  ast.procedures.push_back({"Query", {"instance"}, std::move(query)});
  return ast;
}

}  // namespace build

// ---------------------------------------------------------------------------
// Family validation

namespace {

std::size_t depth_of(const std::vector<Stmt>& body) {
  std::size_t best = 0;
  for (const auto& s : body) {
    if (s.kind == Stmt::Kind::if_else || s.kind == Stmt::Kind::loop) {
      best = std::max(best, 1 + std::max(depth_of(s.body), depth_of(s.else_body)));
    }
  }
  return best;
}

std::size_t count_statements(const std::vector<Stmt>& body) {
  std::size_t n = 0;
  for (const auto& s : body) n += 1 + count_statements(s.body) + count_statements(s.else_body);
  return n;
}

void collect_leaves(const Expr& e, std::set<std::string>& leaves) {
  switch (e.kind) {
    case Expr::Kind::constant: break;
    case Expr::Kind::input:
    case Expr::Kind::hint:
    case Expr::Kind::name: leaves.insert(e.to_string()); break;
    case Expr::Kind::apply:
      for (const auto& a : e.args) collect_leaves(a, leaves);
      break;
  }
}

void collect_exprs(const std::vector<Stmt>& body, std::set<std::string>& seen,
                   std::vector<const Expr*>& out) {
  auto add = [&](const Expr& e) {
    if (seen.insert(e.to_string()).second) out.push_back(&e);
  };
  for (const auto& s : body) {
    switch (s.kind) {
      case Stmt::Kind::assign:
      case Stmt::Kind::eval:
      case Stmt::Kind::if_else: add(s.expr); break;
      case Stmt::Kind::ret:
        if (s.has_value) add(s.expr);
        break;
      case Stmt::Kind::call:
        for (const auto& a : s.args) add(a);
        break;
      default: break;
    }
    collect_exprs(s.body, seen, out);
    collect_exprs(s.else_body, seen, out);
  }
}

}  // namespace

std::size_t nesting_depth(const std::vector<Stmt>& body) { return depth_of(body); }

std::vector<Violation> validate_family(const Ast& ast, const FamilyLimits& limits) {
  std::vector<Violation> v;
  auto flag = [&v](int item, std::string msg) { v.push_back({item, std::move(msg)}); };

  if (ast.procedures.size() > limits.max_procedures)
    flag(3, "too many methods: " + std::to_string(ast.procedures.size()));

  std::size_t total = 0;
  std::size_t heavy_methods = 0;
  for (const auto& p : ast.procedures) {
    if (p.params.size() > limits.max_params)
      flag(7, p.name + " takes " + std::to_string(p.params.size()) + " parameters");
    const auto depth = depth_of(p.body);
    if (depth > limits.max_nesting)
      flag(13, p.name + " has nesting level " + std::to_string(depth));
    if (depth >= limits.heavy_method_nesting) ++heavy_methods;
    const auto count = count_statements(p.body);
    if (count > limits.max_statements_per_procedure)
      flag(15, p.name + " has " + std::to_string(count) + " lines");
    total += count;
  }
  if (heavy_methods > limits.max_heavy_methods)
    flag(14, std::to_string(heavy_methods) + " heavy methods");
  if (total > limits.max_total_statements) flag(16, std::to_string(total) + " lines in total");

  std::set<std::string> seen;
  std::vector<const Expr*> exprs;
  for (const auto& p : ast.procedures) collect_exprs(p.body, seen, exprs);
  std::size_t heavy = 0, light = 0;
  for (const Expr* e : exprs) {
    std::set<std::string> leaves;
    collect_leaves(*e, leaves);
    if (leaves.size() > limits.max_expression_leaves)
      flag(11, "expression over " + std::to_string(leaves.size()) + " variables: " + e->to_string());
    else if (leaves.size() > limits.light_expression_leaves)
      ++heavy;
    else
      ++light;
  }
  if (heavy > limits.max_heavy_expressions) flag(11, std::to_string(heavy) + " heavy expressions");
  if (light > limits.max_light_expressions) flag(12, std::to_string(light) + " light expressions");

  if (ast.globals.size() > limits.max_globals)
    flag(17, std::to_string(ast.globals.size()) + " global constants");

  auto has = [&ast](const std::string& name) {
    return std::any_of(ast.procedures.begin(), ast.procedures.end(), [&](const Procedure& p) {
      return p.name == name && p.params.size() == 1;
    });
  };
  if (!has("Initialize")) flag(18, "missing Initialize(hint)");
  if (!has("Query")) flag(18, "missing Query(instance)");

  if (v.empty()) {
    try {
      const auto code = compile(ast);
      if (code.size() > limits.max_code_length)
        flag(16, "compiled program has " + std::to_string(code.size()) + " instructions");
    } catch (const Error&) {
      // Compile errors are reported by compile itself, not as family violations.
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Lowering

namespace {

struct Env {
  std::map<std::string, std::pair<const Expr*, const Env*>> bound;
};

class Compiler {
 public:
  explicit Compiler(const Ast& ast) : ast_(ast) {}

  Bytecode run() {
    const Procedure* init = find("Initialize");
    const Procedure* query = find("Query");
    if (!init || !query) throw Error(ErrorCode::compile, "solver needs Initialize and Query");
    Env empty;
    in_initialize_ = true;
    body(*init, empty);
    in_initialize_ = false;
    body(*query, empty);
    bool needs_halt = code_.empty() || code_.back().op != Op::HALT;
    for (std::size_t pc = 0; pc < code_.size(); ++pc)
      if (is_jump(code_[pc].op) && pc + code_[pc].arg == code_.size()) needs_halt = true;
    if (needs_halt) code_.push_back({Op::HALT, 0});
    return std::move(code_);
  }

 private:
  const Procedure* find(const std::string& name) const {
    for (const auto& p : ast_.procedures)
      if (p.name == name) return &p;
    return nullptr;
  }

  void body(const Procedure& proc, const Env& env) {
    if (std::find(stack_.begin(), stack_.end(), proc.name) != stack_.end())
      throw Error(ErrorCode::compile, "recursive call to " + proc.name);
    stack_.push_back(proc.name);
    const auto saved_base = loop_base_;
    loop_base_ = loops_.size();
    block(proc.body, env);
    loop_base_ = saved_base;
    stack_.pop_back();
  }

  std::size_t emit(Op op, std::int32_t arg = 0) {
    code_.push_back({op, arg});
    return code_.size() - 1;
  }

  void patch(std::size_t at, std::size_t target) {
    code_[at].arg = static_cast<std::int32_t>(static_cast<std::int64_t>(target) -
                                              static_cast<std::int64_t>(at));
  }

  void expr(const Expr& e, const Env& env) {
    switch (e.kind) {
      case Expr::Kind::constant: emit(e.bit ? Op::PUSH1 : Op::PUSH0); return;
      case Expr::Kind::input:
        if (e.index < 0) throw Error(ErrorCode::compile, "negative input index");
        emit(Op::READ_INPUT, e.index);
        return;
      case Expr::Kind::hint:
        if (e.index < 0) throw Error(ErrorCode::compile, "negative hint index");
        emit(Op::READ_HINT, e.index);
        return;
      case Expr::Kind::name: {
        auto it = env.bound.find(e.id);
        if (it != env.bound.end()) {
          expr(*it->second.first, *it->second.second);
          return;
        }
        auto g = ast_.globals.find(e.id);
        if (g == ast_.globals.end()) throw Error(ErrorCode::compile, "unknown identifier '" + e.id + "'");
        emit(g->second ? Op::PUSH1 : Op::PUSH0);
        return;
      }
      case Expr::Kind::apply: {
        std::size_t arity = 0;
        switch (e.op) {
          case Op::NOT: arity = 1; break;
          case Op::AND:
          case Op::OR:
          case Op::XOR:
          case Op::ADD:
          case Op::LT: arity = 2; break;
          default:
            throw Error(ErrorCode::compile, std::string("'") + mnemonic(e.op) + "' is not an operator");
        }
        if (e.args.size() != arity)
          throw Error(ErrorCode::compile, std::string(mnemonic(e.op)) + " expects " +
                                              std::to_string(arity) + " arguments, got " +
                                              std::to_string(e.args.size()));
        for (const auto& a : e.args) expr(a, env);
        emit(e.op);
        return;
      }
    }
  }

  void block(const std::vector<Stmt>& stmts, const Env& env) {
    for (const auto& s : stmts) stmt(s, env);
  }

  void stmt(const Stmt& s, const Env& env) {
    switch (s.kind) {
      case Stmt::Kind::assign:
        if (s.target != "out") throw Error(ErrorCode::compile, "unknown identifier '" + s.target + "'");
        expr(s.expr, env);
        emit(Op::OUTPUT);
        return;
      case Stmt::Kind::eval:
        expr(s.expr, env);
        emit(Op::POP);
        return;
      case Stmt::Kind::brk:
        if (loops_.size() == loop_base_) throw Error(ErrorCode::compile, "break outside a loop");
        loops_.back().breaks.push_back(emit(Op::JMP));
        return;
      case Stmt::Kind::cont: {
        if (loops_.size() == loop_base_) throw Error(ErrorCode::compile, "continue outside a loop");
        const auto at = emit(Op::JMP);
        patch(at, loops_.back().start);
        return;
      }
      case Stmt::Kind::if_else: {
        expr(s.expr, env);
        const auto jz = emit(Op::JZ);
        block(s.body, env);
        if (s.else_body.empty()) {
          patch(jz, code_.size());
          return;
        }
        const auto jmp = emit(Op::JMP);
        patch(jz, code_.size());
        block(s.else_body, env);
        patch(jmp, code_.size());
        return;
      }
      case Stmt::Kind::loop: {
        loops_.push_back({code_.size(), {}});
        block(s.body, env);
        const auto back = emit(Op::JMP);
        patch(back, loops_.back().start);
        for (auto b : loops_.back().breaks) patch(b, code_.size());
        loops_.pop_back();
        return;
      }
      case Stmt::Kind::ret:
        if (in_initialize_) throw Error(ErrorCode::compile, "return inside Initialize");
        if (s.has_value) {
          expr(s.expr, env);
          emit(Op::OUTPUT);
        }
        emit(Op::HALT);
        return;
      case Stmt::Kind::call: {
        const Procedure* p = find(s.callee);
        if (!p) throw Error(ErrorCode::compile, "unknown identifier '" + s.callee + "'");
        if (p->params.size() != s.args.size())
          throw Error(ErrorCode::compile, s.callee + " expects " + std::to_string(p->params.size()) +
                                              " arguments, got " + std::to_string(s.args.size()));
        Env inner;
        for (std::size_t i = 0; i < p->params.size(); ++i) inner.bound[p->params[i]] = {&s.args[i], &env};
        body(*p, inner);
        return;
      }
    }
  }

  struct Loop {
    std::size_t start;
    std::vector<std::size_t> breaks;
  };

  const Ast& ast_;
  Bytecode code_;
  std::vector<Loop> loops_;
  std::size_t loop_base_ = 0;
  std::vector<std::string> stack_;
  bool in_initialize_ = false;
};

}  // namespace

Bytecode compile(const Ast& ast) { return Compiler(ast).run(); }

}  // namespace finitekit::vm
