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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace lifeguard;
using lgtest::read_fixture;

TEST_CASE("fixture traces parse with the expected shape") {
  Trace fixed = lgtest::trace_fixed();
  Trace buggy = lgtest::trace_buggy();
  CHECK(fixed.size() == 16);
  CHECK(buggy.size() == 14);
  CHECK(fixed[0].to_string() == "cb onCreate(a#1:Activity)");
  CHECK(fixed[0].is_back());
  CHECK(fixed[1].is_in());
  CHECK(fixed[15].kind() == MessageKind::CbRet);
  CHECK(fixed[15].ret() == Value::unit());
  CHECK_FALSE(is_violation(fixed));
}

TEST_CASE("serialize is a fixed point of parse") {
  for (const char* name : {"trace_fixed.trace", "trace_buggy.trace"}) {
    std::string text = read_fixture(name);
    Trace t = parse_trace(text);
    CHECK(serialize_trace(t) == text);
    CHECK(parse_trace(serialize_trace(t)) == t);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  Trace t = parse_trace("# recorded\n\ncb onCreate(a#1:Activity)  # entry\ncbret unit = onCreate(a#1:Activity)\n");
  CHECK(t.size() == 2);
}

TEST_CASE("values compare by identity") {
  Value a = Value::object("a", 1, "Activity");
  Value renamed = Value::object("x", 1, "Activity");
  Value other = Value::object("a", 2, "Activity");
  CHECK(a == renamed);
  CHECK_FALSE(a == other);
  CHECK(a < other);
  CHECK(a.type_name() == "Activity");
  CHECK(Value::boolean(false).type_name() == "bool");
  CHECK(Value::integer(-3).to_string() == "-3");
  CHECK(Value::string("hi \"q\"").to_string() == "\"hi \\\"q\\\"\"");
  CHECK(parse_message("ci f(\"hi \\\"q\\\"\",3,true)").args()[0] == Value::string("hi \"q\""));
}

TEST_CASE("message kinds and dis wrapping") {
  Message ci = parse_message("ci execute(t#1:AsyncTask)");
  Message d = Message::dis(ci);
  CHECK(d.is_dis());
  CHECK(d.inner() == ci);
  CHECK(d.to_string() == "dis ci execute(t#1:AsyncTask)");
  CHECK(parse_message("dis ci execute(t#1:AsyncTask)") == d);
  Message r = parse_message("dis cbret unit = onClick(l#1:L)");
  CHECK(r.kind() == MessageKind::DisCbRet);
  CHECK_THROWS_AS(parse_message("dis cb onClick(l#1:L)"), ParseError);
  CHECK_THROWS_AS(Message::dis(parse_message("cb onClick(l#1:L)")), Error);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_trace("cb onCreate(a#1:Activity)\nxx foo()\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_trace("cb f(a#1)\n"), ParseError);       // no type suffix
  CHECK_THROWS_AS(parse_trace("cb f(a#1:A) extra\n"), ParseError);
  CHECK_THROWS_AS(parse_trace("cbret f(a#1:A)\n"), ParseError);   // missing return value
}

TEST_CASE("well-formedness") {
  auto bad = [](const char* text) { CHECK_THROWS_AS(parse_trace(text), ParseError); };
  bad("ci init(t#1:T)\n");                                   // in-message in framework context
  bad("cb f(a#1:A)\ncb g(a#1:A)\n");                          // back-message in app context
  bad("cb f(a#1:A)\ncbret unit = g(a#1:A)\n");                // mismatched return
  bad("cb f(a#1:A)\ndis ci g(a#1:A)\ncbret unit = f(a#1:A)\n");  // dis not last
  bad("cbret unit = f(a#1:A)\n");

  // nested callback inside a callin
  Trace ok = parse_trace(
      "cb f(a#1:A)\nci g(a#1:A)\ncb h(a#1:A)\ncbret unit = h(a#1:A)\nciret unit = g(a#1:A)\n"
      "cbret unit = f(a#1:A)\n");
  CHECK(ok.size() == 6);
  // an open prefix is a valid trace
  CHECK(parse_trace("cb f(a#1:A)\nci g(a#1:A)\n").size() == 2);
  CHECK(is_violation(parse_trace("cb f(a#1:A)\ndis ci g(a#1:A)\n")));

  std::vector<Message> ms = {Message::cb("f", {}), Message::ciret(Value::unit(), "g", {})};
  try {
    check_well_formed(ms);
    FAIL("expected TraceError");
  } catch (const TraceError& e) {
    CHECK(e.index() == 1);
  }
}
