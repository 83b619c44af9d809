#include "pnb/parser.hpp"

#include <cctype>
#include <sstream>

namespace pnb {

namespace {

struct Token {
  enum class Kind { ident, number, punct, arrow, end };
  Kind kind = Kind::end;
  std::string text;
  int line = 0;
  int col = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string shown = tok_.kind == Token::Kind::end ? "end of input" : "'" + tok_.text + "'";
    throw ParseError(tok_.line, tok_.col, msg + " (found " + shown + ")");
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else {
        break;
      }
    }
    tok_ = {Token::Kind::end, "", line_, col_};
    if (pos_ >= text_.size()) return;

    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '.'))
        consume();
      tok_.kind = Token::Kind::ident;
      tok_.text = std::string(text_.substr(start, pos_ - start));
      tok_.col -= static_cast<int>(tok_.text.size());
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        consume();
      tok_.kind = Token::Kind::number;
      tok_.text = std::string(text_.substr(start, pos_ - start));
      tok_.col -= static_cast<int>(tok_.text.size());
      return;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      consume();
      consume();
      tok_.kind = Token::Kind::arrow;
      tok_.text = "->";
      tok_.col -= 2;
      return;
    }
    consume();
    tok_.kind = Token::Kind::punct;
    tok_.text = std::string(1, c);
    tok_.col -= 1;
  }

  void consume() {
    ++pos_;
    ++col_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  ProblemFile run() {
    ProblemFile pf;
    while (lex_.peek().kind != Token::Kind::end) {
      std::string kw = expect_ident("'net', 'check', 'option' or 'expr'");
      if (kw == "net")
        parse_net(pf);
      else if (kw == "check")
        parse_check(pf);
      else if (kw == "option")
        parse_option(pf);
      else if (kw == "expr")
        pf.expr = parse_term(pf);
      else
        lex_.fail("expected 'net', 'check', 'option' or 'expr', not '" + kw + "'");
    }
    if (pf.expr) {
      pf.expr = with_mode(pf.expr, pf.mode);  // a later check line still applies
      typecheck(*pf.expr);
    }
    return pf;
  }

  static ExprPtr with_mode(const ExprPtr& e, AcceptanceMode m) {
    if (e->kind == Expr::Kind::leaf) {
      LeafSpec leaf = e->leaf;
      leaf.mode = m;
      return Expr::make_leaf(std::move(leaf));
    }
    ExprPtr l = with_mode(e->left, m), r = with_mode(e->right, m);
    return e->kind == Expr::Kind::seq ? Expr::make_seq(std::move(l), std::move(r))
                                      : Expr::make_tensor(std::move(l), std::move(r));
  }

 private:
  bool at_punct(const char* p) const {
    return lex_.peek().kind == Token::Kind::punct && lex_.peek().text == p;
  }

  void expect_punct(const char* p) {
    if (!at_punct(p)) lex_.fail(std::string("expected '") + p + "'");
    lex_.take();
  }

  std::string expect_ident(const char* what) {
    if (lex_.peek().kind != Token::Kind::ident) lex_.fail(std::string("expected ") + what);
    return lex_.take().text;
  }

  uint32_t expect_number() {
    if (lex_.peek().kind != Token::Kind::number) lex_.fail("expected a number");
    return static_cast<uint32_t>(std::stoul(lex_.take().text));
  }

  void parse_net(ProblemFile& pf) {
    Token name_tok = lex_.peek();
    std::string name = expect_ident("a net name");
    if (nets_.count(name))
      throw ParseError(name_tok.line, name_tok.col, "net '" + name + "' is already defined");

    auto net = std::make_shared<Pnb>();
    net->name = name;
    expect_punct("(");
    net->type.left = expect_number();
    expect_punct(",");
    net->type.right = expect_number();
    expect_punct(")");
    expect_punct("{");
    while (!at_punct("}")) {
      Token stmt_tok = lex_.peek();
      std::string kw = expect_ident("'place' or 'trans'");
      if (kw == "place") {
        net->places.push_back(expect_ident("a place name"));
        expect_punct(";");
      } else if (kw == "trans") {
        parse_trans(*net);
      } else {
        throw ParseError(stmt_tok.line, stmt_tok.col, "expected 'place' or 'trans', not '" + kw + "'");
      }
    }
    expect_punct("}");

    auto violations = validate(*net);
    if (!violations.empty())
      throw ParseError(name_tok.line, name_tok.col,
                       "net '" + name + "' is invalid: " + violations.front());
    nets_.emplace(name, net);
    pf.nets.push_back(std::move(net));
  }

  void parse_trans(Pnb& net) {
    std::string name = expect_ident("a transition name");
    std::vector<std::string> pre, post;
    std::vector<uint32_t> lports, rports;
    bool seen[4] = {false, false, false, false};
    while (!at_punct(";")) {
      Token clause_tok = lex_.peek();
      std::string kw = expect_ident("'pre', 'post', 'lports' or 'rports'");
      int which = kw == "pre" ? 0 : kw == "post" ? 1 : kw == "lports" ? 2 : kw == "rports" ? 3 : -1;
      if (which < 0)
        throw ParseError(clause_tok.line, clause_tok.col,
                         "expected 'pre', 'post', 'lports' or 'rports', not '" + kw + "'");
      if (seen[which])
        throw ParseError(clause_tok.line, clause_tok.col, "duplicate '" + kw + "' clause");
      seen[which] = true;
      if (which <= 1) {
        auto names = name_set();
        (which == 0 ? pre : post) = std::move(names);
      } else {
        auto nums = number_set();
        (which == 2 ? lports : rports) = std::move(nums);
      }
    }
    expect_punct(";");

    // Resolve place names here so the error points at this transition.
    for (const auto& lists : {&pre, &post})
      for (const auto& p : *lists)
        if (std::find(net.places.begin(), net.places.end(), p) == net.places.end())
          lex_.fail("transition '" + name + "' references unknown place '" + p + "'");
    add_transition(net, std::move(name), pre, post, std::move(lports), std::move(rports));
  }

  std::vector<std::string> name_set() {
    std::vector<std::string> out;
    expect_punct("{");
    while (!at_punct("}")) {
      out.push_back(expect_ident("a place name"));
      if (at_punct(","))
        lex_.take();
      else
        break;
    }
    expect_punct("}");
    return out;
  }

  std::vector<uint32_t> number_set() {
    std::vector<uint32_t> out;
    expect_punct("{");
    while (!at_punct("}")) {
      out.push_back(expect_number());
      if (at_punct(","))
        lex_.take();
      else
        break;
    }
    expect_punct("}");
    return out;
  }

  void parse_check(ProblemFile& pf) {
    Token tok = lex_.peek();
    std::string kw = expect_ident("'reachable' or 'coverable'");
    if (kw == "reachable")
      pf.mode = AcceptanceMode::exact;
    else if (kw == "coverable")
      pf.mode = AcceptanceMode::covering;
    else
      throw ParseError(tok.line, tok.col, "expected 'reachable' or 'coverable', not '" + kw + "'");
  }

  void parse_option(ProblemFile& pf) {
    Token key_tok = lex_.peek();
    std::string key = expect_ident("an option name");
    Token val_tok = lex_.peek();
    std::string value = val_tok.kind == Token::Kind::number ? lex_.take().text
                                                            : expect_ident("an option value");
    auto bad_value = [&]() -> ParseError {
      return ParseError(val_tok.line, val_tok.col,
                        "bad value '" + value + "' for option '" + key + "'");
    };
    if (key == "reduce") {
      if (value == "none")
        pf.options.reduce = ReduceLevel::none;
      else if (value == "trim")
        pf.options.reduce = ReduceLevel::trim;
      else if (value == "standard")
        pf.options.reduce = ReduceLevel::standard;
      else
        throw bad_value();
    } else if (key == "memo") {
      if (value == "on")
        pf.options.memo = true;
      else if (value == "off")
        pf.options.memo = false;
      else
        throw bad_value();
    } else if (key == "mode") {
      if (value == "full")
        pf.options.mode = StepMode::full;
      else if (value == "boundary-complete" || value == "boundary_complete")
        pf.options.mode = StepMode::boundary_complete;
      else
        throw bad_value();
    } else if (key == "budget") {
      pf.options.budget = std::stoull(value);
    } else if (key == "engine") {
      if (value == "compositional")
        pf.options.engine = Engine::compositional;
      else if (value == "monolithic")
        pf.options.engine = Engine::monolithic;
      else
        throw bad_value();
    } else {
      throw ParseError(key_tok.line, key_tok.col, "unknown option '" + key + "'");
    }
  }

  // term := tens (';' tens)*, left-associative
  ExprPtr parse_term(ProblemFile& pf) {
    ExprPtr e = parse_tensor(pf);
    while (at_punct(";")) {
      lex_.take();
      e = Expr::make_seq(std::move(e), parse_tensor(pf));
    }
    return e;
  }

  ExprPtr parse_tensor(ProblemFile& pf) {
    ExprPtr e = parse_primary(pf);
    while (at_punct("+")) {
      lex_.take();
      e = Expr::make_tensor(std::move(e), parse_primary(pf));
    }
    return e;
  }

  ExprPtr parse_primary(ProblemFile& pf) {
    if (at_punct("(")) {
      lex_.take();
      ExprPtr e = parse_term(pf);
      expect_punct(")");
      return e;
    }
    Token name_tok = lex_.peek();
    std::string name = expect_ident("a net name or '('");
    auto it = nets_.find(name);
    if (it == nets_.end())
      throw ParseError(name_tok.line, name_tok.col, "unknown net '" + name + "'");
    auto net = it->second;

    LeafSpec leaf;
    leaf.net = net;
    leaf.mode = pf.mode;
    leaf.init = Marking(static_cast<uint32_t>(net->places.size()));
    leaf.target = Marking(static_cast<uint32_t>(net->places.size()));
    if (at_punct("[")) {
      lex_.take();
      leaf.init = parse_marking(*net);
      if (lex_.peek().kind != Token::Kind::arrow) lex_.fail("expected '->'");
      lex_.take();
      leaf.target = parse_marking(*net);
      expect_punct("]");
    }
    return Expr::make_leaf(std::move(leaf));
  }

  Marking parse_marking(const Pnb& net) {
    Marking m(static_cast<uint32_t>(net.places.size()));
    expect_punct("{");
    while (!at_punct("}")) {
      Token place_tok = lex_.peek();
      std::string p = expect_ident("a place name");
      auto it = std::find(net.places.begin(), net.places.end(), p);
      if (it == net.places.end())
        throw ParseError(place_tok.line, place_tok.col,
                         "net '" + net.name + "' has no place named '" + p + "'");
      m.set(static_cast<uint32_t>(it - net.places.begin()));
      if (at_punct(","))
        lex_.take();
      else
        break;
    }
    expect_punct("}");
    return m;
  }

  Lexer lex_;
  std::map<std::string, std::shared_ptr<const Pnb>> nets_;
};

void print_marking(std::ostream& os, const Pnb& net, const Marking& m) {
  os << "{";
  bool first = true;
  for (uint32_t i : m.indices()) {
    if (!first) os << ",";
    os << net.places[i];
    first = false;
  }
  os << "}";
}

void print_expr(std::ostream& os, const Expr& e) {
  if (e.kind == Expr::Kind::leaf) {
    os << e.leaf.net->name << "[";
    print_marking(os, *e.leaf.net, e.leaf.init);
    os << "->";
    print_marking(os, *e.leaf.net, e.leaf.target);
    os << "]";
    return;
  }
  os << "(";
  print_expr(os, *e.left);
  os << (e.kind == Expr::Kind::seq ? " ; " : " + ");
  print_expr(os, *e.right);
  os << ")";
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Expr::Kind::leaf)
    return a.leaf.net->name == b.leaf.net->name && a.leaf.init == b.leaf.init &&
           a.leaf.target == b.leaf.target && a.leaf.mode == b.leaf.mode;
  return expr_equal(*a.left, *b.left) && expr_equal(*a.right, *b.right);
}

bool net_equal(const Pnb& a, const Pnb& b) {
  if (a.name != b.name || !(a.type == b.type) || a.places != b.places ||
      a.transitions.size() != b.transitions.size())
    return false;
  for (size_t i = 0; i < a.transitions.size(); ++i)
    if (a.transitions[i].name != b.transitions[i].name ||
        !a.transitions[i].same_structure(b.transitions[i]))
      return false;
  return true;
}

}  // namespace

std::shared_ptr<const Pnb> ProblemFile::net(std::string_view name) const {
  for (const auto& n : nets)
    if (n->name == name) return n;
  return nullptr;
}

CheckOptions ProblemFile::check_options(const CheckOptions& base) const {
  CheckOptions o = base;
  if (options.reduce) o.reduce_level = *options.reduce;
  if (options.memo) o.memo = *options.memo;
  if (options.mode) o.semantics_mode = *options.mode;
  if (options.budget) o.state_budget = *options.budget;
  if (options.engine) o.engine = *options.engine;
  return o;
}

ProblemFile parse_problem(std::string_view text) { return Parser(text).run(); }

std::string print_problem(const ProblemFile& pf) {
  std::ostringstream os;
  for (const auto& net : pf.nets) {
    os << "net " << net->name << " (" << net->type.left << "," << net->type.right << ") {\n";
    for (const auto& p : net->places) os << "  place " << p << ";\n";
    for (const auto& t : net->transitions) {
      os << "  trans " << t.name;
      auto names = [&](const std::vector<uint32_t>& ids) {
        std::string s = "{";
        for (size_t i = 0; i < ids.size(); ++i) {
          if (i) s += ",";
          s += net->places[ids[i]];
        }
        return s + "}";
      };
      auto nums = [](const std::vector<uint32_t>& ids) {
        std::string s = "{";
        for (size_t i = 0; i < ids.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(ids[i]);
        }
        return s + "}";
      };
      if (!t.pre.empty()) os << " pre " << names(t.pre);
      if (!t.post.empty()) os << " post " << names(t.post);
      if (!t.lports.empty()) os << " lports " << nums(t.lports);
      if (!t.rports.empty()) os << " rports " << nums(t.rports);
      os << ";\n";
    }
    os << "}\n";
  }
  os << "check " << (pf.mode == AcceptanceMode::exact ? "reachable" : "coverable") << "\n";
  if (pf.options.reduce)
    os << "option reduce "
       << (*pf.options.reduce == ReduceLevel::none
               ? "none"
               : *pf.options.reduce == ReduceLevel::trim ? "trim" : "standard")
       << "\n";
  if (pf.options.memo) os << "option memo " << (*pf.options.memo ? "on" : "off") << "\n";
  if (pf.options.mode)
    os << "option mode "
       << (*pf.options.mode == StepMode::full ? "full" : "boundary-complete") << "\n";
  if (pf.options.budget) os << "option budget " << *pf.options.budget << "\n";
  if (pf.options.engine)
    os << "option engine "
       << (*pf.options.engine == Engine::compositional ? "compositional" : "monolithic") << "\n";
  if (pf.expr) {
    os << "expr ";
    print_expr(os, *pf.expr);
    os << "\n";
  }
  return os.str();
}

bool problem_equal(const ProblemFile& a, const ProblemFile& b) {
  if (a.nets.size() != b.nets.size() || a.mode != b.mode || !(a.options == b.options))
    return false;
  for (size_t i = 0; i < a.nets.size(); ++i)
    if (!net_equal(*a.nets[i], *b.nets[i])) return false;
  if (!a.expr != !b.expr) return false;
  if (a.expr && !expr_equal(*a.expr, *b.expr)) return false;
  return true;
}

}  // namespace pnb
