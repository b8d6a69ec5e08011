#include "corec/cli/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "corec/cli/functions.hpp"

namespace corec::cli {
namespace {

std::string describe_pos(SourcePos pos) {
  return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string parse_message(SourcePos pos, const std::string& message, const std::vector<std::string>& expected) {
  std::string out = "parse error at " + describe_pos(pos) + ": " + message;
  if (!expected.empty()) out += " (expected " + join(expected, " or ") + ")";
  return out;
}

bool is_observer_name(std::string_view name) { return name == "take" || name == "index" || name == "collect"; }

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Type { integer, boolean, name, bar, lparen, rparen, lbracket, rbracket, comma, end };

  Type type = Type::end;
  std::string text;
  std::int64_t integer = 0;
  bool boolean = false;
  SourcePos pos;
};

std::string describe(const Token& t) { return t.type == Token::Type::end ? "end of input" : "'" + t.text + "'"; }

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_' || c == '*';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.pos = pos;
    std::size_t len = 1;
    switch (c) {
      case '|':
        t.type = Token::Type::bar;
        break;
      case '(':
        t.type = Token::Type::lparen;
        break;
      case ')':
        t.type = Token::Type::rparen;
        break;
      case '[':
        t.type = Token::Type::lbracket;
        break;
      case ']':
        t.type = Token::Type::rbracket;
        break;
      case ',':
        t.type = Token::Type::comma;
        break;
      default:
        if (c == '#') {
          len = 1;
          while (i + len < text.size() && name_char(text[i + len])) ++len;
          std::string_view word = text.substr(i, len);
          if (word != "#t" && word != "#f") {
            throw ParseError(pos, "bad boolean literal '" + std::string(word) + "'", {"#t", "#f"});
          }
          t.type = Token::Type::boolean;
          t.boolean = word == "#t";
        } else if (digit(c) || (c == '-' && i + 1 < text.size() && digit(text[i + 1]))) {
          len = 1;
          while (i + len < text.size() && digit(text[i + len])) ++len;
          std::string_view word = text.substr(i, len);
          auto res = std::from_chars(word.data(), word.data() + word.size(), t.integer);
          if (res.ec != std::errc{}) {
            throw ParseError(pos, "integer literal '" + std::string(word) + "' out of range");
          }
          if (i + len < text.size() && name_char(text[i + len])) {
            throw ParseError(pos, "malformed integer literal");
          }
          t.type = Token::Type::integer;
        } else if (name_start(c)) {
          len = 1;
          while (i + len < text.size() && name_char(text[i + len])) ++len;
          t.type = Token::Type::name;
        } else {
          throw ParseError(pos, std::string("unexpected character '") + c + "'");
        }
    }
    t.text = std::string(text.substr(i, len));
    out.push_back(std::move(t));
    advance(len);
  }
  Token end;
  end.pos = pos;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

const std::vector<std::string> kArgStart = {"INT", "BOOL", "'['", "'('", "NAME"};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  PipelineExpr pipeline() {
    PipelineExpr e;
    if (peek().type == Token::Type::name && is_observer_name(peek().text)) {
      throw ParseError(peek().pos, "missing generator before observer '" + peek().text + "'", {"generator"});
    }
    e.source = stream(true);
    if (peek().type != Token::Type::bar) {
      throw ParseError(peek().pos, "missing observer, found " + describe(peek()), {"'|'"});
    }
    next();
    e.observer = observer();
    if (peek().type != Token::Type::end) {
      throw ParseError(peek().pos, "trailing input after observer, found " + describe(peek()), {"end of input"});
    }
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(at_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() { return tokens_[at_ < tokens_.size() - 1 ? at_++ : at_]; }

  StreamExpr stream(bool top) {
    StreamExpr s;
    s.generator = call(true);
    while (peek().type == Token::Type::bar) {
      const Token& after = peek(1);
      if (after.type == Token::Type::name && is_observer_name(after.text)) {
        if (top) break;
        throw ParseError(after.pos, "observer '" + after.text + "' inside a parenthesized stream", {"stage"});
      }
      next();
      s.stages.push_back(call(false));
    }
    return s;
  }

  Call call(bool generator) {
    const Token& t = peek();
    const char* role = generator ? "generator" : "stage";
    if (t.type != Token::Type::name) throw ParseError(t.pos, "found " + describe(t), {role});
    next();
    const Signature* sig = find_signature(t.text);
    if (!sig) throw ParseError(t.pos, std::string("unknown ") + role + " '" + t.text + "'", {role});
    if (sig->generator != generator) {
      throw ParseError(t.pos, "'" + t.text + "' is a " + (sig->generator ? "generator" : "stage") + ", not a " + role,
                       {role});
    }

    Call c;
    c.name = t.text;
    c.pos = t.pos;
    while (starts_arg(peek())) {
      if (c.args.size() == sig->params.size()) {
        throw ParseError(peek().pos, "too many arguments to '" + c.name + "'", {"'|'"});
      }
      c.args.push_back(arg(sig->params[c.args.size()]));
    }
    if (c.args.size() < sig->required) {
      throw ParseError(peek().pos,
                       "'" + c.name + "' expects " + std::to_string(sig->required) + " argument" +
                           (sig->required == 1 ? "" : "s") + ", got " + std::to_string(c.args.size()),
                       kArgStart);
    }
    return c;
  }

  static bool starts_arg(const Token& t) {
    switch (t.type) {
      case Token::Type::integer:
      case Token::Type::boolean:
      case Token::Type::lbracket:
      case Token::Type::lparen:
        return true;
      case Token::Type::name:
        return !is_observer_name(t.text);
      default:
        return false;
    }
  }

  Arg arg(Param param) {
    const Token& t = next();
    Arg a;
    a.pos = t.pos;
    switch (t.type) {
      case Token::Type::integer:
        a.kind = Arg::Kind::integer;
        a.integer = t.integer;
        break;
      case Token::Type::boolean:
        a.kind = Arg::Kind::boolean;
        a.boolean = t.boolean;
        break;
      case Token::Type::lbracket:
        a.kind = Arg::Kind::list;
        a.list = list_tail();
        break;
      case Token::Type::name:
        a.kind = Arg::Kind::name;
        a.name = t.text;
        break;
      case Token::Type::lparen: {
        a.kind = Arg::Kind::stream;
        a.stream = std::make_shared<const StreamExpr>(stream(false));
        if (peek().type != Token::Type::rparen) throw ParseError(peek().pos, "found " + describe(peek()), {"')'", "'|'"});
        next();
        break;
      }
      default:
        throw ParseError(t.pos, "found " + describe(t), kArgStart);
    }
    check_param(a, param);
    return a;
  }

  std::vector<Value> list_tail() {
    std::vector<Value> items;
    if (peek().type == Token::Type::rbracket) {
      next();
      return items;
    }
    while (true) {
      const Token& t = next();
      if (t.type == Token::Type::integer) {
        items.push_back(Value::integer(t.integer));
      } else if (t.type == Token::Type::boolean) {
        items.push_back(Value::boolean(t.boolean));
      } else {
        throw ParseError(t.pos, "found " + describe(t), {"INT", "BOOL"});
      }
      const Token& sep = next();
      if (sep.type == Token::Type::rbracket) return items;
      if (sep.type != Token::Type::comma) throw ParseError(sep.pos, "found " + describe(sep), {"','", "']'"});
    }
  }

  static void check_param(const Arg& a, Param p) {
    auto fail = [&](const std::string& want) { throw ParseError(a.pos, "argument must be " + want); };
    switch (p) {
      case Param::integer:
        if (a.kind != Arg::Kind::integer) fail("an integer");
        break;
      case Param::natural:
        if (a.kind != Arg::Kind::integer || a.integer < 0) fail("a non-negative integer");
        break;
      case Param::literal:
        if (a.kind != Arg::Kind::integer && a.kind != Arg::Kind::boolean) fail("an integer or boolean literal");
        break;
      case Param::list:
        if (a.kind != Arg::Kind::list) fail("a list");
        break;
      case Param::nonempty_list:
        if (a.kind != Arg::Kind::list || a.list.empty()) fail("a non-empty list");
        break;
      case Param::fn1:
        if (a.kind != Arg::Kind::name || !is_fn1(a.name)) fail("a function name (" + join_names(fn1_names()) + ")");
        break;
      case Param::fn2:
        if (a.kind != Arg::Kind::name || !is_fn2(a.name)) {
          fail("a binary function name (" + join_names(fn2_names()) + ")");
        }
        break;
      case Param::predicate:
        if (a.kind != Arg::Kind::name || !is_predicate(a.name)) {
          fail("a predicate name (" + join_names(predicate_names()) + ")");
        }
        break;
      case Param::stream:
        if (a.kind != Arg::Kind::stream) fail("a parenthesized stream");
        break;
    }
  }

  static std::string join_names(const std::vector<std::string_view>& names) {
    std::vector<std::string> s(names.begin(), names.end());
    return join(s, ", ");
  }

  Observer observer() {
    const Token& t = next();
    Observer o;
    o.pos = t.pos;
    if (t.type != Token::Type::name || !is_observer_name(t.text)) {
      throw ParseError(t.pos, "found " + describe(t), {"'take'", "'index'", "'collect'"});
    }
    if (t.text == "collect") {
      o.kind = Observer::Kind::collect;
      return o;
    }
    o.kind = t.text == "take" ? Observer::Kind::take : Observer::Kind::index;
    const Token& n = next();
    if (n.type != Token::Type::integer || n.integer < 0) {
      throw ParseError(n.pos, "found " + describe(n), {"non-negative INT"});
    }
    o.count = static_cast<std::uint64_t>(n.integer);
    return o;
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

std::string arg_text(const Arg& a) {
  switch (a.kind) {
    case Arg::Kind::integer:
      return std::to_string(a.integer);
    case Arg::Kind::boolean:
      return a.boolean ? "#t" : "#f";
    case Arg::Kind::list: {
      std::vector<std::string> items;
      for (const auto& v : a.list) items.push_back(v.to_string());
      return "[" + join(items, ", ") + "]";
    }
    case Arg::Kind::name:
      return a.name;
    case Arg::Kind::stream:
      return "(" + to_string(*a.stream) + ")";
  }
  return {};
}

std::string call_text(const Call& c) {
  std::string out = c.name;
  for (const auto& a : c.args) out += " " + arg_text(a);
  return out;
}

}  // namespace

ParseError::ParseError(SourcePos p, const std::string& message, std::vector<std::string> exp)
    : std::runtime_error(parse_message(p, message, exp)), pos(p), expected(std::move(exp)) {}

CheckError::CheckError(SourcePos p, const std::string& message)
    : std::runtime_error("check error at " + describe_pos(p) + ": " + message), pos(p) {}

bool operator==(const Arg& a, const Arg& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Arg::Kind::integer:
      return a.integer == b.integer;
    case Arg::Kind::boolean:
      return a.boolean == b.boolean;
    case Arg::Kind::list:
      return a.list == b.list;
    case Arg::Kind::name:
      return a.name == b.name;
    case Arg::Kind::stream:
      return *a.stream == *b.stream;
  }
  return false;
}

std::string_view kind_name(StreamKind k) {
  switch (k) {
    case StreamKind::infinite:
      return "infinite";
    case StreamKind::ending:
      return "ending";
    case StreamKind::skipping:
      return "skipping";
    case StreamKind::general:
      return "general";
  }
  return "?";
}

PipelineExpr parse_pipeline(std::string_view text) { return Parser(text).pipeline(); }

std::string to_string(const StreamExpr& e) {
  std::string out = call_text(e.generator);
  for (const auto& s : e.stages) out += " | " + call_text(s);
  return out;
}

std::string to_string(const PipelineExpr& e) {
  std::string out = to_string(e.source) + " | ";
  switch (e.observer.kind) {
    case Observer::Kind::take:
      return out + "take " + std::to_string(e.observer.count);
    case Observer::Kind::index:
      return out + "index " + std::to_string(e.observer.count);
    case Observer::Kind::collect:
      return out + "collect";
  }
  return out;
}

StreamKind infer_kind(const StreamExpr& e) {
  auto need_infinite = [](const Arg& a, const std::string& who) {
    if (infer_kind(*a.stream) != StreamKind::infinite) {
      throw CheckError(a.pos, "'" + who + "' needs an infinite stream argument, got kind " +
                                  std::string(kind_name(infer_kind(*a.stream))));
    }
  };

  const Call& g = e.generator;
  StreamKind k = StreamKind::infinite;
  if (g.name == "stream-list" || g.name == "single") {
    k = StreamKind::ending;
  } else if (g.name == "empty") {
    k = StreamKind::general;
  } else if (g.name == "always-skips") {
    k = StreamKind::skipping;
  } else if (g.name == "append") {
    k = infer_kind(*g.args[1].stream);
  } else if (g.name == "scons") {
    need_infinite(g.args[1], g.name);
  }

  for (const Call& s : e.stages) {
    auto require = [&](bool ok, const std::string& what) {
      if (!ok) {
        throw CheckError(s.pos,
                         "'" + s.name + "' needs " + what + ", got kind " + std::string(kind_name(k)));
      }
    };
    if ((s.name == "fast-forward" || s.name == "infinite-repetitions") && !s.args.empty() && s.args[0].integer == 0) {
      throw CheckError(s.args[0].pos, "fuel must be positive");
    }
    if (s.name == "map") {
      continue;
    } else if (s.name == "zips-with" || s.name == "zip") {
      require(k == StreamKind::infinite, "an infinite stream");
      need_infinite(s.args.back(), s.name);
    } else if (s.name == "by-twos" || s.name == "infinite-bits" || s.name == "infinite-bits*" ||
               s.name == "infinite-repetitions") {
      require(k == StreamKind::infinite, "an infinite stream");
    } else if (s.name == "filter") {
      k = (k == StreamKind::infinite || k == StreamKind::skipping) ? StreamKind::skipping : StreamKind::general;
    } else if (s.name == "fast-forward") {
      require(k == StreamKind::infinite || k == StreamKind::skipping, "a stream that never ends");
      k = StreamKind::infinite;
    } else if (s.name == "drop") {
      if (k == StreamKind::ending) k = StreamKind::general;
    }
  }
  return k;
}

StreamKind check_pipeline(const PipelineExpr& e) {
  StreamKind k = infer_kind(e.source);
  if (e.observer.kind == Observer::Kind::collect && k != StreamKind::ending) {
    throw CheckError(e.observer.pos, "'collect' needs an ending stream, got kind " + std::string(kind_name(k)));
  }
  return k;
}

const std::vector<Signature>& signatures() {
  using P = Param;
  static const std::vector<Signature> table = {
      {"always", true, {P::literal}, 1},
      {"repeat", true, {P::fn1, P::literal}, 2},
      {"count-up", true, {P::natural}, 1},
      {"count-down", true, {P::natural}, 1},
      {"scons", true, {P::literal, P::stream}, 2},
      {"append", true, {P::list, P::stream}, 2},
      {"cycle", true, {P::nonempty_list}, 1},
      {"stream-list", true, {P::nonempty_list}, 1},
      {"single", true, {P::literal}, 1},
      {"empty", true, {}, 0},
      {"always-skips", true, {}, 0},
      {"map", false, {P::fn1}, 1},
      {"zips-with", false, {P::fn2, P::stream}, 2},
      {"zip", false, {P::stream}, 1},
      {"by-twos", false, {P::fn2}, 0},
      {"filter", false, {P::predicate}, 1},
      {"fast-forward", false, {P::natural}, 0},
      {"drop", false, {P::natural}, 1},
      {"infinite-bits", false, {}, 0},
      {"infinite-bits*", false, {}, 0},
      {"infinite-repetitions", false, {P::natural}, 0},
  };
  return table;
}

const Signature* find_signature(std::string_view name) {
  for (const auto& s : signatures())
    if (s.name == name) return &s;
  return nullptr;
}

bool is_fn1(std::string_view name) {
  const auto& n = fn1_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

bool is_fn2(std::string_view name) {
  const auto& n = fn2_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

bool is_predicate(std::string_view name) {
  const auto& n = predicate_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

}  // namespace corec::cli
