#include "pnb/checker.hpp"

#include <chrono>
#include <map>

#include "pnb/oracle.hpp"

namespace pnb {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

BoundaryType typecheck_at(const Expr& e, const std::string& path) {
  switch (e.kind) {
    case Expr::Kind::leaf:
      return e.leaf.net->type;
    case Expr::Kind::seq: {
      BoundaryType l = typecheck_at(*e.left, path + ".l");
      BoundaryType r = typecheck_at(*e.right, path + ".r");
      if (l.right != r.left)
        throw TypeError(path + ": cannot compose (" + std::to_string(l.left) + "," +
                        std::to_string(l.right) + ") ; (" + std::to_string(r.left) + "," +
                        std::to_string(r.right) + "): boundary arities " +
                        std::to_string(l.right) + " and " + std::to_string(r.left) + " differ");
      return {l.left, r.right};
    }
    case Expr::Kind::tensor: {
      BoundaryType l = typecheck_at(*e.left, path + ".l");
      BoundaryType r = typecheck_at(*e.right, path + ".r");
      return {l.left + r.left, l.right + r.right};
    }
  }
  throw Error("corrupt expression node");
}

struct EvalContext {
  explicit EvalContext(const CheckOptions& o) : opts(o) {}

  const CheckOptions& opts;
  MemoTable memo;
  size_t memo_hits = 0;
  std::vector<NodeStats>* stats = nullptr;

  void note(const Nfa& a) const {
    if (opts.inspect) opts.inspect(a);
  }
};

Nfa eval_node(const Expr& e, const std::string& path, EvalContext& ctx);

Nfa eval_leaf(const LeafSpec& leaf, const EvalContext& ctx, size_t& before) {
  TwoLts lts = build_two_lts(*leaf.net, {leaf.init}, ctx.opts.semantics_mode,
                             ctx.opts.state_budget);
  Nfa raw = from_two_lts(lts, leaf.init, leaf.target, leaf.mode);
  before = raw.num_states;
  return raw;
}

Nfa eval_node(const Expr& e, const std::string& path, EvalContext& ctx) {
  auto t0 = Clock::now();
  BoundaryType type = typecheck_at(e, path);

  if (e.kind == Expr::Kind::leaf) {
    size_t before = 0;
    Nfa reduced = reduce(eval_leaf(e.leaf, ctx, before), ctx.opts.reduce_level);
    ctx.note(reduced);
    if (ctx.stats)
      ctx.stats->push_back({path, before, reduced.num_states, ms_since(t0)});
    return reduced;
  }

  const char op = e.kind == Expr::Kind::seq ? ';' : '+';
  Nfa lhs = eval_node(*e.left, path + ".l", ctx);
  if (is_empty(lhs).empty) {
    // An empty operand forces an empty product; the sibling never runs.
    Nfa r = canonical_empty(type.left, type.right);
    ctx.note(r);
    if (ctx.stats) ctx.stats->push_back({path, r.num_states, r.num_states, ms_since(t0)});
    return r;
  }
  Nfa rhs = eval_node(*e.right, path + ".r", ctx);
  if (is_empty(rhs).empty) {
    Nfa r = canonical_empty(type.left, type.right);
    ctx.note(r);
    if (ctx.stats) ctx.stats->push_back({path, r.num_states, r.num_states, ms_since(t0)});
    return r;
  }

  if (ctx.opts.memo) {
    if (auto hit = ctx.memo.find(op, lhs, rhs)) {
      ++ctx.memo_hits;
      if (ctx.opts.memo_audit_every > 0 &&
          ctx.memo_hits % static_cast<size_t>(ctx.opts.memo_audit_every) == 0) {
        Nfa fresh = reduce(op == ';' ? compose_nfa(lhs, rhs, nullptr, ctx.opts.state_budget)
                                     : tensor_nfa(lhs, rhs, ctx.opts.state_budget),
                           ctx.opts.reduce_level);
        if (!equivalent(*hit, fresh))
          throw ContractError("memoized result disagrees with recomputation at " + path);
      }
      ctx.note(*hit);
      if (ctx.stats)
        ctx.stats->push_back({path, hit->num_states, hit->num_states, ms_since(t0)});
      return *hit;
    }
  }

  Nfa product = op == ';' ? compose_nfa(lhs, rhs, nullptr, ctx.opts.state_budget)
                          : tensor_nfa(lhs, rhs, ctx.opts.state_budget);
  size_t before = product.num_states;
  Nfa reduced = reduce(product, ctx.opts.reduce_level);
  ctx.note(reduced);
  if (ctx.opts.memo) {
    auto shared = std::make_shared<const Nfa>(reduced);
    ctx.memo.insert(op, lhs, rhs, shared);
  }
  if (ctx.stats) ctx.stats->push_back({path, before, reduced.num_states, ms_since(t0)});
  return reduced;
}

}  // namespace

ExprPtr Expr::make_leaf(LeafSpec spec) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::leaf;
  e->leaf = std::move(spec);
  return e;
}

ExprPtr Expr::make_seq(ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::seq;
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

ExprPtr Expr::make_tensor(ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::tensor;
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

BoundaryType typecheck(const Expr& e) { return typecheck_at(e, "root"); }

MemoTable::Signature MemoTable::signature_of(const Nfa& a) {
  Signature s;
  s.la = a.left_arity;
  s.ra = a.right_arity;
  s.states = a.num_states;
  std::map<Letter, uint32_t> hist;
  for (const auto& e : a.edges) ++hist[e.letter];
  s.letter_counts.assign(hist.begin(), hist.end());
  return s;
}

std::shared_ptr<const Nfa> MemoTable::find(char op, const Nfa& a, const Nfa& b) const {
  Signature sa = signature_of(a), sb = signature_of(b);
  std::vector<Entry> candidates;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& e : entries_)
      if (e.op == op && e.sig_a == sa && e.sig_b == sb) candidates.push_back(e);
  }
  for (const auto& e : candidates)
    if (equivalent(a, *e.a) && equivalent(b, *e.b)) return e.result;
  return nullptr;
}

void MemoTable::insert(char op, const Nfa& a, const Nfa& b, std::shared_ptr<const Nfa> result) {
  Entry e{op, signature_of(a), signature_of(b), std::make_shared<const Nfa>(a),
          std::make_shared<const Nfa>(b), std::move(result)};
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back(std::move(e));
}

size_t MemoTable::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

Nfa evaluate(const Expr& e, const CheckOptions& opts) {
  EvalContext ctx(opts);
  return eval_node(e, "root", ctx);
}

CheckResult check(const Expr& e, const CheckOptions& opts) {
  auto t0 = Clock::now();
  BoundaryType type = typecheck(e);
  if (type.left != 0 || type.right != 0)
    throw TypeError("expression has open boundaries (" + std::to_string(type.left) + "," +
                    std::to_string(type.right) +
                    "); cap them with suitable components before checking");

  CheckResult result;
  if (opts.engine == Engine::monolithic) {
    FlatProblem p = flatten(e);
    SearchResult s = search(p, opts.state_budget);
    result.reachable = s.reachable;
  } else {
    EvalContext ctx(opts);
    ctx.stats = &result.node_stats;
    Nfa root = eval_node(e, "root", ctx);
    result.reachable = !is_empty(root).empty;
    result.memo_hits = ctx.memo_hits;
  }
  result.total_time_ms = ms_since(t0);
  return result;
}

std::optional<int> fixpoint_probe(const Nfa& base, const Nfa& step, int max_iters,
                                  ReduceLevel level) {
  if (step.right_arity != base.left_arity)
    throw TypeError("fold step does not compose with the base automaton");
  Nfa prev = reduce(base, level);
  for (int k = 1; k <= max_iters; ++k) {
    Nfa next = reduce(compose_nfa(step, prev), level);
    if (equivalent(next, prev)) return k;
    prev = std::move(next);
  }
  return std::nullopt;
}

}  // namespace pnb
