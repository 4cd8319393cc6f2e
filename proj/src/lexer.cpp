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

#include "lexer.hpp"

#include <cctype>

namespace lifeguard::detail {
namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         c == '.';
}

const char* const kMultiPunct[] = {"-/>", "->", "=>", "=="};

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) { throw ParseError(what, line); };

  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Token tok;
    tok.line = line;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      tok.text = std::string(src.substr(i, j - i));
      i = j;
      if (i + 1 < src.size() && src[i] == '#' &&
          std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
        std::size_t k = i + 1;
        while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
        std::uint64_t n = std::stoull(std::string(src.substr(i + 1, k - i - 1)));
        if (k >= src.size() || src[k] != ':')
          fail("object literal '" + tok.text + "#" + std::to_string(n) +
               "' needs a ':Type' suffix");
        ++k;
        std::size_t t = k;
        if (t >= src.size() || !ident_start(src[t])) fail("expected object type after ':'");
        while (t < src.size() && ident_char(src[t])) ++t;
        tok.kind = Tok::Object;
        tok.number = static_cast<std::int64_t>(n);
        tok.type = std::string(src.substr(k, t - k));
        i = t;
      } else {
        tok.kind = Tok::Ident;
      }
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = Tok::Int;
      tok.text = std::string(src.substr(i, j - i));
      try {
        tok.number = std::stoll(tok.text);
      } catch (const std::out_of_range&) {
        fail("integer literal out of range");
      }
      i = j;
      out.push_back(std::move(tok));
      continue;
    }
    if (c == '"') {
      std::string s;
      ++i;
      bool closed = false;
      while (i < src.size()) {
        char d = src[i++];
        if (d == '"') {
          closed = true;
          break;
        }
        if (d == '\n') fail("unterminated string literal");
        if (d == '\\') {
          if (i >= src.size()) fail("unterminated string literal");
          char e = src[i++];
          switch (e) {
            case 'n': s += '\n'; break;
            case 't': s += '\t'; break;
            case '\\': s += '\\'; break;
            case '"': s += '"'; break;
            default: fail(std::string("unknown escape \\") + e);
          }
        } else {
          s += d;
        }
      }
      if (!closed) fail("unterminated string literal");
      tok.kind = Tok::String;
      tok.text = std::move(s);
      out.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (const char* p : kMultiPunct) {
      std::string_view pv(p);
      if (src.substr(i, pv.size()) == pv) {
        tok.kind = Tok::Punct;
        tok.text = std::string(pv);
        i += pv.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      static const std::string_view single = "()[],;*+&!=:<-{}|";
      if (single.find(c) == std::string_view::npos)
        fail(std::string("unexpected character '") + c + "'");
      tok.kind = Tok::Punct;
      tok.text = std::string(1, c);
      ++i;
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  out.push_back(end);
  return out;
}

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != Tok::End) tokens_.push_back(Token{});
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t i = pos_ + ahead;
  return i < tokens_.size() ? tokens_[i] : tokens_.back();
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::accept(std::string_view p) {
  if (peek().is(p)) {
    next();
    return true;
  }
  return false;
}

void TokenStream::expect(std::string_view p) {
  if (!accept(p)) fail("expected '" + std::string(p) + "'");
}

std::string TokenStream::expect_ident(std::string_view what) {
  if (peek().kind != Tok::Ident) fail("expected " + std::string(what));
  return next().text;
}

void TokenStream::fail(const std::string& what) const {
  const Token& t = peek();
  std::string near;
  switch (t.kind) {
    case Tok::End: near = "end of input"; break;
    case Tok::String: near = quote(t.text); break;
    case Tok::Object: near = t.text + "#" + std::to_string(t.number) + ":" + t.type; break;
    default: near = "'" + t.text + "'"; break;
  }
  throw ParseError(what + " near " + near, t.line);
}

bool read_value(TokenStream& ts, Value& out) {
  const Token& t = ts.peek();
  switch (t.kind) {
    case Tok::Object:
      out = Value::object(t.text, static_cast<std::uint64_t>(t.number), t.type);
      ts.next();
      return true;
    case Tok::Int:
      out = Value::integer(t.number);
      ts.next();
      return true;
    case Tok::String:
      out = Value::string(t.text);
      ts.next();
      return true;
    case Tok::Ident:
      if (t.text == "unit") out = Value::unit();
      else if (t.text == "true") out = Value::boolean(true);
      else if (t.text == "false") out = Value::boolean(false);
      else return false;
      ts.next();
      return true;
    case Tok::Punct:
      if (t.text == "-" && ts.peek(1).kind == Tok::Int) {
        ts.next();
        out = Value::integer(-ts.next().number);
        return true;
      }
      return false;
    default:
      return false;
  }
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace lifeguard::detail
