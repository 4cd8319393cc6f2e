/*
 * Copyright 2026 The Lifeguard Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Interpreter for a small event-driven calculus. Programs enable and disable
// thunks (events the framework loop may dispatch) and disallow callins;
// running a program under a schedule yields an observable trace.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lifeguard/trace.hpp"

namespace lifeguard::life {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Function {
  std::string name;  // let variable the literal is bound to, or a generated name
  Package package = Package::Fwk;
  std::vector<std::string> params;
  ExprPtr body;
  int line = 0;
};

/// Operand of a let-normal expression.
struct Atom {
  enum class Kind { Var, Lit, Thk, Fun };
  Kind kind = Kind::Lit;
  std::string var;
  Value lit;
  std::shared_ptr<const Function> fun;
};

struct Expr {
  enum class Op {
    Atom,      // a
    Let,       // let var = first in second
    If,        // if a0 then first else second
    Bind,      // bind a0 a1..an
    Invoke,    // invoke a0
    Enable,
    Disable,
    Allow,
    Disallow,
    NewCell,   // newcell a0
    Get,       // get a0
    Set,       // set a0 a1
    New,       // new var:type
    Binary,    // a0 var a1, var in {==, <, +, -}
  };
  Op op = Op::Atom;
  std::vector<Atom> atoms;
  std::string var;
  std::string type;
  ExprPtr first, second;
  int line = 0;
};

struct Program {
  ExprPtr main;
};

/// Parses surface syntax into let-normal form. Rejects unbound identifiers,
/// `thk` outside a function, surface `force`, and enable/disable/allow/
/// disallow inside app functions.
Program parse_program(std::string_view text);

/// Checks the framework pairing shape: a leading preamble of fwk functions
/// and cells, no fwk function literal afterwards, and the first thunk forced
/// by the run is `init`. Throws Error describing the first deviation.
void check_framework_shape(const Program& p, const std::string& init = "boot");

// ---------------------------------------------------------------------------
// Runtime

struct Closure;
struct RtThunk;
struct EnvNode;
using EnvPtr = std::shared_ptr<const EnvNode>;

struct CellRef {
  std::uint64_t id = 0;
};

struct RtValue {
  std::variant<Value, std::shared_ptr<const Closure>, std::shared_ptr<const RtThunk>, CellRef> v;

  bool is_value() const { return v.index() == 0; }
  const Value* value() const { return std::get_if<Value>(&v); }
  const RtThunk* thunk() const;
  const Closure* closure() const;
  std::string to_string() const;
};

/// Total order; equal thunks share closure identity and arguments.
int compare(const RtValue& a, const RtValue& b);

struct Closure {
  std::shared_ptr<const Function> fun;
  EnvPtr env;
  std::uint64_t serial = 0;
};

struct RtThunk {
  std::shared_ptr<const Closure> closure;
  std::vector<RtValue> args;

  /// The first-order thunk; nullopt if an argument is not a plain Value.
  std::optional<Thunk> observable() const;
  std::string to_string() const;
};

using ThunkPtr = std::shared_ptr<const RtThunk>;

struct ThunkLess {
  bool operator()(const ThunkPtr& a, const ThunkPtr& b) const;
};
using ThunkSet = std::set<ThunkPtr, ThunkLess>;

struct EnvNode {
  std::string name;
  RtValue value;
  EnvPtr next;
};

struct Frame {
  enum class Kind { Let, Thunk, Bottom };
  Kind kind = Kind::Let;
  std::string var;    // Let
  ExprPtr body;       // Let
  EnvPtr env;         // Let
  ThunkPtr thunk;     // Thunk, Bottom
};

/// A machine configuration ⟨e, η, ρ, μ, ν, k⟩, or the bad state.
class MachineState {
 public:
  enum class Control { Eval, Return, Force, Bad };

  static MachineState initial(const Program& p);

  Control control() const { return control_; }
  bool is_bad() const { return control_ == Control::Bad; }
  /// A value with the empty continuation: the event loop is idle.
  bool at_event_loop() const { return control_ == Control::Return && stack_.empty(); }
  /// No successor: bad, or idle with nothing enabled.
  bool is_terminal() const { return is_bad() || (at_event_loop() && enabled_.empty()); }

  const ThunkSet& enabled() const { return enabled_; }
  const ThunkSet& disallowed() const { return disallowed_; }
  const std::vector<Frame>& continuation() const { return stack_; }
  const RtValue& value() const { return value_; }

 private:
  friend struct Machine;

  Control control_ = Control::Eval;
  ExprPtr expr_;
  EnvPtr env_;
  RtValue value_;
  ThunkPtr forcing_;
  std::map<std::uint64_t, RtValue> store_;
  ThunkSet enabled_;
  ThunkSet disallowed_;
  std::vector<Frame> stack_;
  std::uint64_t next_serial_ = 1;
  std::uint64_t next_cell_ = 1;
  std::map<std::string, std::uint64_t> next_object_;
};

/// The machine cannot make progress (type confusion, arity mismatch, a
/// non-first-order value crossing the app-framework boundary).
class StuckError : public Error {
 public:
  using Error::Error;
};

struct Successor {
  std::optional<Message> label;
  MachineState next;
};

/// All successors of a non-terminal state. Only an idle event loop has more
/// than one: one per enabled thunk, in ThunkLess order. Throws StuckError.
std::vector<Successor> step(const MachineState& s);

struct Schedule {
  std::vector<std::size_t> choices;     // explicit event indices
  std::optional<std::uint64_t> seed;    // pseudorandom choice if set

  static Schedule explicit_list(std::vector<std::size_t> choices);
  static Schedule random(std::uint64_t seed);
};

/// Parses "0,1,..." (an empty string is the empty schedule).
Schedule parse_schedule(std::string_view text);

enum class RunStatus { Finished, Bad, BudgetExhausted, Stuck };

std::string_view to_string(RunStatus s);

struct RunResult {
  Trace trace;
  RunStatus status = RunStatus::Finished;
  std::size_t steps = 0;
  std::string diagnostic;  // stuck reason
};

/// Runs from the initial state for at most `max_steps` machine steps. An
/// exhausted explicit schedule halts with Finished. Throws Error when a
/// schedule index is outside the enabled set.
RunResult run(const Program& p, const Schedule& sched, std::size_t max_steps);

}  // namespace lifeguard::life
