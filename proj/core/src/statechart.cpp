// Copyright 2026 The btverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "btverify/statechart.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include <spdlog/spdlog.h>

#include "btverify/errors.hpp"
#include "xml_util.hpp"

namespace btverify {

// ---------------------------------------------------------------------------
// Guard expressions
// ---------------------------------------------------------------------------

struct GuardExpr::Ast {
  enum class Op { Literal, Ident, Not, And, Or, Lt, Le, Gt, Ge, Eq, Ne };

  Op op = Op::Literal;
  Scalar literal;
  std::string ident;
  std::shared_ptr<const Ast> lhs;
  std::shared_ptr<const Ast> rhs;
};

namespace {

using Ast = GuardExpr::Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Token {
  enum class Kind { Ident, Number, String, True, False, Op, End };
  Kind kind = Kind::End;
  std::string text;   // Ident/Op
  double number = 0;  // Number
  std::string str;    // String
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
    if (pos_ >= src_.size()) {
      current_ = Token{Token::Kind::End, "", 0, ""};
      return;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      std::string word = src_.substr(start, pos_ - start);
      if (word == "true") {
        current_ = Token{Token::Kind::True, word, 0, ""};
      } else if (word == "false") {
        current_ = Token{Token::Kind::False, word, 0, ""};
      } else {
        current_ = Token{Token::Kind::Ident, word, 0, ""};
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      size_t start = pos_;
      if (c == '-') ++pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
        ++pos_;
      }
      const std::string text = src_.substr(start, pos_ - start);
      try {
        current_ = Token{Token::Kind::Number, text, std::stod(text), ""};
      } catch (const std::exception&) {
        throw ParseError("bad numeric literal '" + text + "' in guard '" + src_ + "'");
      }
      return;
    }
    if (c == '\'' || c == '"') {
      const char quote = c;
      size_t end = src_.find(quote, pos_ + 1);
      if (end == std::string::npos) {
        throw ParseError("unterminated string literal in guard '" + src_ + "'");
      }
      current_ = Token{Token::Kind::String, "", 0, src_.substr(pos_ + 1, end - pos_ - 1)};
      pos_ = end + 1;
      return;
    }
    static const char* kOps[] = {"&&", "||", "<=", ">=", "==", "!=", "<", ">", "!", "(", ")"};
    for (const char* op : kOps) {
      const size_t len = std::char_traits<char>::length(op);
      if (src_.compare(pos_, len, op) == 0) {
        current_ = Token{Token::Kind::Op, op, 0, ""};
        pos_ += len;
        return;
      }
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "' in guard '" +
                     src_ + "'");
  }

  const std::string& src_;
  size_t pos_ = 0;
  Token current_;
};

AstPtr make_node(Ast::Op op, AstPtr lhs = nullptr, AstPtr rhs = nullptr) {
  auto n = std::make_shared<Ast>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

AstPtr literal_node(Scalar value) {
  auto n = std::make_shared<Ast>();
  n->op = Ast::Op::Literal;
  n->literal = std::move(value);
  return n;
}

AstPtr ident_node(std::string name) {
  auto n = std::make_shared<Ast>();
  n->op = Ast::Op::Ident;
  n->ident = std::move(name);
  return n;
}

class Parser {
 public:
  Parser(Lexer& lexer, const std::string& src) : lexer_(lexer), src_(src) {}

  AstPtr parse() {
    AstPtr e = parse_or();
    if (lexer_.peek().kind != Token::Kind::End) {
      throw ParseError("trailing input after expression in guard '" + src_ + "'");
    }
    return e;
  }

 private:
  bool peek_op(const char* op) const {
    return lexer_.peek().kind == Token::Kind::Op && lexer_.peek().text == op;
  }

  AstPtr parse_or() {
    AstPtr lhs = parse_and();
    while (peek_op("||")) {
      lexer_.take();
      lhs = make_node(Ast::Op::Or, lhs, parse_and());
    }
    return lhs;
  }

  AstPtr parse_and() {
    AstPtr lhs = parse_unary();
    while (peek_op("&&")) {
      lexer_.take();
      lhs = make_node(Ast::Op::And, lhs, parse_unary());
    }
    return lhs;
  }

  AstPtr parse_unary() {
    if (peek_op("!")) {
      lexer_.take();
      return make_node(Ast::Op::Not, parse_unary());
    }
    return parse_comparison();
  }

  AstPtr parse_comparison() {
    AstPtr lhs = parse_term();
    static const std::pair<const char*, Ast::Op> kComparisons[] = {
        {"<=", Ast::Op::Le}, {">=", Ast::Op::Ge}, {"==", Ast::Op::Eq},
        {"!=", Ast::Op::Ne}, {"<", Ast::Op::Lt},  {">", Ast::Op::Gt}};
    for (const auto& [text, op] : kComparisons) {
      if (peek_op(text)) {
        lexer_.take();
        return make_node(op, lhs, parse_term());
      }
    }
    return lhs;
  }

  AstPtr parse_term() {
    const Token t = lexer_.take();
    switch (t.kind) {
      case Token::Kind::Number:
        return literal_node(t.number);
      case Token::Kind::String:
        return literal_node(t.str);
      case Token::Kind::True:
      case Token::Kind::False:
        return literal_node(t.kind == Token::Kind::True);
      case Token::Kind::Ident:
        return ident_node(t.text);
      case Token::Kind::Op:
        if (t.text == "(") {
          AstPtr inner = parse_or();
          if (!peek_op(")")) {
            throw ParseError("missing ')' in guard '" + src_ + "'");
          }
          lexer_.take();
          return inner;
        }
        [[fallthrough]];
      default:
        throw ParseError("unexpected token in guard '" + src_ + "'");
    }
  }

  Lexer& lexer_;
  const std::string& src_;
};

Scalar eval_ast(const Ast& node, const Payload& payload, const Payload& variables,
                const std::string& source) {
  switch (node.op) {
    case Ast::Op::Literal:
      return node.literal;
    case Ast::Op::Ident: {
      if (auto it = payload.find(node.ident); it != payload.end()) return it->second;
      if (auto it = variables.find(node.ident); it != variables.end()) return it->second;
      throw DeliveryError("guard '" + source + "' references missing field '" +
                          node.ident + "'");
    }
    case Ast::Op::Not: {
      const Scalar v = eval_ast(*node.lhs, payload, variables, source);
      if (const bool* b = std::get_if<bool>(&v)) return !*b;
      throw DeliveryError("operand of '!' is not a boolean in guard '" + source + "'");
    }
    case Ast::Op::And:
    case Ast::Op::Or: {
      const Scalar l = eval_ast(*node.lhs, payload, variables, source);
      const bool* lb = std::get_if<bool>(&l);
      if (lb == nullptr) {
        throw DeliveryError("operand of '&&'/'||' is not a boolean in guard '" +
                            source + "'");
      }
      if (node.op == Ast::Op::And && !*lb) return false;
      if (node.op == Ast::Op::Or && *lb) return true;
      const Scalar r = eval_ast(*node.rhs, payload, variables, source);
      const bool* rb = std::get_if<bool>(&r);
      if (rb == nullptr) {
        throw DeliveryError("operand of '&&'/'||' is not a boolean in guard '" +
                            source + "'");
      }
      return *rb;
    }
    default:
      break;
  }

  // Comparison operators.
  const Scalar l = eval_ast(*node.lhs, payload, variables, source);
  const Scalar r = eval_ast(*node.rhs, payload, variables, source);
  if (l.index() != r.index()) {
    throw DeliveryError("type mismatch in comparison in guard '" + source + "'");
  }
  if (node.op == Ast::Op::Eq) return l == r;
  if (node.op == Ast::Op::Ne) return l != r;
  if (is_bool(l)) {
    throw DeliveryError("booleans only support == and != in guard '" + source + "'");
  }
  const bool lt = l < r;  // variant comparison: same alternative, value order
  const bool gt = r < l;
  switch (node.op) {
    case Ast::Op::Lt: return lt;
    case Ast::Op::Le: return !gt;
    case Ast::Op::Gt: return gt;
    case Ast::Op::Ge: return !lt;
    default:
      throw DeliveryError("internal: bad comparison op in guard '" + source + "'");
  }
}

}  // namespace

GuardExpr::GuardExpr(std::shared_ptr<const Ast> ast, std::string source)
    : ast_(std::move(ast)), source_(std::move(source)) {}

GuardExpr::~GuardExpr() = default;
GuardExpr::GuardExpr(GuardExpr&&) noexcept = default;
GuardExpr& GuardExpr::operator=(GuardExpr&&) noexcept = default;
GuardExpr::GuardExpr(const GuardExpr&) = default;
GuardExpr& GuardExpr::operator=(const GuardExpr&) = default;

GuardExpr GuardExpr::parse(const std::string& text) {
  Lexer lexer(text);
  Parser parser(lexer, text);
  return GuardExpr(parser.parse(), text);
}

bool GuardExpr::evaluate(const Payload& payload, const Payload& variables) const {
  const Scalar v = eval_ast(*ast_, payload, variables, source_);
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  throw DeliveryError("guard '" + source_ + "' does not evaluate to a boolean");
}

// ---------------------------------------------------------------------------
// SCXML subset
// ---------------------------------------------------------------------------

bool StateChart::has_state(const std::string& id) const {
  return std::find(states.begin(), states.end(), id) != states.end();
}

namespace {

Scalar parse_data_expr(const std::string& expr, const std::string& data_id) {
  Lexer lexer(expr);
  const Token t = lexer.take();
  if (lexer.peek().kind != Token::Kind::End) {
    throw ParseError("data '" + data_id + "': expr must be a single literal");
  }
  switch (t.kind) {
    case Token::Kind::Number: return t.number;
    case Token::Kind::String: return t.str;
    case Token::Kind::True: return true;
    case Token::Kind::False: return false;
    default:
      throw ParseError("data '" + data_id + "': expr must be a literal, got '" +
                       expr + "'");
  }
}

}  // namespace

StateChart parse_scxml(const std::string& document) {
  const internal::XmlElement root = internal::parse_xml_document(document);
  if (root.name != "scxml") {
    throw ParseError("expected <scxml> document element, got <" + root.name + ">");
  }

  StateChart chart;
  const std::string* initial = root.find_attribute("initial");
  if (initial == nullptr || initial->empty()) {
    throw ParseError("<scxml> is missing the initial attribute");
  }
  chart.initial = *initial;

  struct PendingTransition {
    std::string source, event, target;
    std::optional<std::string> cond;
  };
  std::vector<PendingTransition> pending;
  std::set<std::string> seen;

  for (const auto& child : root.children) {
    if (child.name == "datamodel") {
      for (const auto& data : child.children) {
        if (data.name != "data") {
          throw ParseError("unknown element <" + data.name + "> under <datamodel>");
        }
        const std::string* id = data.find_attribute("id");
        const std::string* expr = data.find_attribute("expr");
        if (id == nullptr || id->empty() || expr == nullptr) {
          throw ParseError("<data> requires id and expr attributes");
        }
        chart.variables[*id] = parse_data_expr(*expr, *id);
      }
      continue;
    }
    if (child.name != "state") {
      throw ParseError("unknown element <" + child.name + "> under <scxml>");
    }
    const std::string* id = child.find_attribute("id");
    if (id == nullptr || id->empty()) {
      throw ParseError("<state> is missing a nonempty id attribute");
    }
    if (!seen.insert(*id).second) {
      throw ParseError("duplicate state id '" + *id + "'");
    }
    chart.states.push_back(*id);
    for (const auto& tr : child.children) {
      if (tr.name != "transition") {
        throw ParseError("unknown element <" + tr.name + "> under <state id=\"" +
                         *id + "\">");
      }
      const std::string* event = tr.find_attribute("event");
      const std::string* target = tr.find_attribute("target");
      if (event == nullptr || event->empty()) {
        throw ParseError("transition in state '" + *id +
                         "' is missing a nonempty event attribute");
      }
      if (target == nullptr || target->empty()) {
        throw ParseError("transition in state '" + *id +
                         "' is missing a nonempty target attribute");
      }
      PendingTransition p;
      p.source = *id;
      p.event = *event;
      p.target = *target;
      if (const std::string* cond = tr.find_attribute("cond")) {
        p.cond = *cond;
      }
      pending.push_back(std::move(p));
    }
  }

  if (!chart.has_state(chart.initial)) {
    throw ParseError("initial state '" + chart.initial + "' is not declared");
  }
  for (auto& p : pending) {
    if (!chart.has_state(p.target)) {
      throw ParseError("transition " + p.source + " --" + p.event +
                       "--> dangling target '" + p.target + "'");
    }
    StateChart::Transition t;
    t.source = std::move(p.source);
    t.event = std::move(p.event);
    t.target = std::move(p.target);
    if (p.cond.has_value()) {
      t.guard = GuardExpr::parse(*p.cond);
    }
    chart.transitions.push_back(std::move(t));
  }
  return chart;
}

// ---------------------------------------------------------------------------
// Chart instances
// ---------------------------------------------------------------------------

ChartInstance::ChartInstance(StateChart chart)
    : chart_(std::move(chart)), state_(chart_.initial), variables_(chart_.variables) {}

TransitionReport ChartInstance::deliver(const Event& event) {
  for (const auto& t : chart_.transitions) {
    if (t.source != state_ || t.event != event.name) {
      continue;
    }
    if (t.guard.has_value() && !t.guard->evaluate(event.payload, variables_)) {
      continue;
    }
    TransitionReport report{true, state_, t.target};
    state_ = t.target;
    return report;
  }
  return TransitionReport{false, state_, state_};
}

void ChartInstance::reset_state() { state_ = chart_.initial; }

void ChartInstance::set_variable(const std::string& name, Scalar value) {
  variables_[name] = std::move(value);
}

}  // namespace btverify
