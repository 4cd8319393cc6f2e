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

// Tokenizer shared by the trace, spec and program readers.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lifeguard/error.hpp"
#include "lifeguard/trace.hpp"

namespace lifeguard::detail {

enum class Tok { Ident, Int, String, Object, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier, punctuation, string contents, object label
  std::int64_t number = 0;
  std::string type;  // object type
  int line = 0;

  bool is(std::string_view p) const {
    return (kind == Tok::Punct || kind == Tok::Ident) && text == p;
  }
};

/// `#` starts a comment when it begins a token; inside `label#n:Type` it is
/// part of an object literal.
std::vector<Token> tokenize(std::string_view text);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Tok::End; }
  bool accept(std::string_view p);
  void expect(std::string_view p);
  std::string expect_ident(std::string_view what);
  [[noreturn]] void fail(const std::string& what) const;

  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Reads a literal value token (unit, true, false, integers, strings,
/// objects). Returns false without consuming if the next token is not one.
bool read_value(TokenStream& ts, Value& out);

std::string quote(std::string_view s);

}  // namespace lifeguard::detail
