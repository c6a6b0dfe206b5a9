#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "finitekit/vm/bytecode.hpp"

namespace finitekit::vm {

/// Bit-valued expression. `apply` ops are NOT (one argument) and the binary
/// AND, OR, XOR, ADD, LT.
struct Expr {
  enum class Kind { constant, input, hint, name, apply };
  Kind kind = Kind::constant;
  std::uint8_t bit = 0;     // constant
  std::int32_t index = 0;   // input / hint
  std::string id;           // name: a parameter or a global constant
  Op op = Op::NOT;          // apply
  std::vector<Expr> args;   // apply

  std::string to_string() const;
};

/// Statement kinds of the family: assignment (to the output stream `out`),
/// evaluation, break, continue, if/else, while(true), return, and call.
struct Stmt {
  enum class Kind { assign, eval, brk, cont, if_else, loop, ret, call };
  Kind kind = Kind::eval;
  std::string target;           // assign
  Expr expr;                    // assign, eval, if condition, return value
  bool has_value = false;       // return
  std::vector<Stmt> body;       // if-then, loop
  std::vector<Stmt> else_body;  // if-else
  std::string callee;           // call
  std::vector<Expr> args;       // call
};

struct Procedure {
  std::string name;
  std::vector<std::string> params;
  std::vector<Stmt> body;
};

/// One solver type: procedures plus global magic constants. Initialize(hint)
/// runs first, then Query(instance).
struct Ast {
  std::vector<Procedure> procedures;
  std::map<std::string, std::uint8_t> globals;
};

namespace build {
Expr lit(int bit);
Expr in(int index);
Expr hint(int index);
Expr ref(std::string name);
Expr apply(Op op, std::vector<Expr> args);
Expr not_(Expr a);
Expr and_(Expr a, Expr b);
Expr or_(Expr a, Expr b);
Expr xor_(Expr a, Expr b);

Stmt out(Expr e);
Stmt eval(Expr e);
Stmt brk();
Stmt cont();
Stmt if_(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body = {});
Stmt loop(std::vector<Stmt> body);
Stmt ret(Expr e);
Stmt ret();
Stmt call(std::string callee, std::vector<Expr> args = {});

/// Initialize(hint) with the given body and Query(instance) with `query`.
Ast solver(std::vector<Stmt> query, std::vector<Stmt> initialize = {});
}  // namespace build

struct FamilyLimits {
  std::size_t max_procedures = 20;                 // item 3
  std::size_t max_params = 20;                     // item 7
  std::size_t max_heavy_expressions = 20;          // item 11
  std::size_t max_expression_leaves = 20;          // item 11
  std::size_t max_light_expressions = 400;         // item 12
  std::size_t light_expression_leaves = 5;         // item 12
  std::size_t max_nesting = 5;                     // item 13
  std::size_t max_heavy_methods = 20;              // item 14
  std::size_t heavy_method_nesting = 4;            // item 14
  std::size_t max_statements_per_procedure = 400;  // item 15
  std::size_t max_total_statements = 20000;        // item 16
  std::size_t max_globals = 400;                   // item 17
  std::size_t max_code_length = 20000;             // compiled size, item 16
};

struct Violation {
  int item = 0;
  std::string message;
};

std::vector<Violation> validate_family(const Ast& ast, const FamilyLimits& limits = {});

/// Lowers to bytecode. Calls are inlined; loops become JZ/JMP. Throws
/// Error(compile) on unknown identifiers, arity mismatches, recursion and
/// loop control outside a loop.
Bytecode compile(const Ast& ast);

/// Compound-statement depth of a body (a lone WHILE containing an IF is 2).
std::size_t nesting_depth(const std::vector<Stmt>& body);

}  // namespace finitekit::vm
