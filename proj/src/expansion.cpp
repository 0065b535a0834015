#include "betadim/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace betadim {

namespace {

constexpr double kSnapTol = 1e-12;

// floor with a snap guard: values within kSnapTol of an integer count as
// that integer, so orbits that reach lattice points in exact arithmetic
// do so in doubles too.
double snapped_floor(double y) {
  double r = std::nearbyint(y);
  if (std::fabs(y - r) <= kSnapTol) return r;
  return std::floor(y);
}

}  // namespace

double beta_transform(double x, const BetaSystem& sys) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("beta_transform: x outside [0,1]");
  double y = sys.beta * x;
  double f = snapped_floor(y);
  double t = y - f;
  if (t < 0.0) t = 0.0;  // snap can overshoot by <= kSnapTol
  return t;
}

DigitWord greedy_expand(double x, const BetaSystem& sys, int n) {
  if (!(x >= 0.0 && x < 1.0))
    throw std::domain_error("greedy_expand: x outside [0,1)");
  if (n < 0) throw std::invalid_argument("greedy_expand: negative length");
  DigitWord w;
  w.digits.reserve(static_cast<std::size_t>(n));
  double t = x;
  for (int i = 0; i < n; ++i) {
    double y = sys.beta * t;
    double f = snapped_floor(y);
    int d = static_cast<int>(f);
    d = std::clamp(d, 0, sys.alphabet_max);
    w.push_back(d);
    t = y - d;
    if (t < 0.0) t = 0.0;
  }
  return w;
}

ExpandOneResult expand_one_raw(double beta, int alphabet_max, int n) {
  ExpandOneResult res;
  res.digits.digits.reserve(static_cast<std::size_t>(n));
  // Greedy recursion started at 1: d_1 = floor(beta), then iterate the
  // transform on the remainder. The orbit hitting 0 means d(1,beta) is
  // finite; everything after is 0.
  double t = 1.0;
  int last_nonzero = 0;
  bool dead = false;
  for (int i = 1; i <= n; ++i) {
    int d = 0;
    if (!dead) {
      double y = beta * t;
      double f = snapped_floor(y);
      d = std::clamp(static_cast<int>(f), 0, alphabet_max);
      t = y - d;
      if (t <= kSnapTol) {
        t = 0.0;
        dead = true;
      }
    }
    res.digits.push_back(d);
    if (d != 0) last_nonzero = i;
  }
  if (dead) {
    res.finite = true;
    res.finite_length = last_nonzero;
  }
  return res;
}

ExpandOneResult expand_one(const BetaSystem& sys, int n) {
  if (n < 0) throw std::invalid_argument("expand_one: negative length");
  if (sys.is_integer) {
    ExpandOneResult res;
    res.digits = DigitWord::repeat(DigitWord{sys.alphabet_max},
                                   static_cast<std::size_t>(n));
    return res;  // finite stays false by convention
  }
  return expand_one_raw(sys.beta, sys.alphabet_max, n);
}

DigitWord quasi_greedy_one(const BetaSystem& sys, int n) {
  if (n < 0) throw std::invalid_argument("quasi_greedy_one: negative length");
  DigitWord w;
  w.digits.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) w.push_back(sys.quasi_greedy_digit(i));
  return w;
}

namespace detail {

bool AdmissTracker::push(int d) {
  if (d < 0 || d > sys_->alphabet_max) return false;
  // A suffix at offset k is "tight" when word[k..len) equals the
  // quasi-greedy prefix of the same length. Appending d keeps it tight if
  // d equals the next quasi-greedy digit, kills the word if d exceeds it,
  // and releases the suffix (legal forever) if d is smaller. The new
  // singleton suffix [len, len+1) is tight iff d equals digit 1.
  int q1 = sys_->quasi_greedy_digit(1);
  if (d > q1) return false;
  for (std::size_t k : eq_) {
    int q = sys_->quasi_greedy_digit(len_ - k + 1);
    if (d > q) return false;
  }
  std::vector<std::size_t> next;
  next.reserve(eq_.size() + 1);
  for (std::size_t k : eq_) {
    int q = sys_->quasi_greedy_digit(len_ - k + 1);
    if (d == q) next.push_back(k);
  }
  if (d == q1) next.push_back(len_);
  eq_ = std::move(next);
  ++len_;
  return true;
}

bool AdmissTracker::push_word(const DigitWord& w) {
  for (std::uint8_t d : w.digits)
    if (!push(d)) return false;
  return true;
}

}  // namespace detail

bool is_legal_word(const DigitWord& w, const BetaSystem& sys) {
  detail::AdmissTracker tr(sys);
  return tr.push_word(w);
}

double project(const DigitWord& w, const BetaSystem& sys) {
  double s = 0.0;
  double inv = 1.0 / sys.beta;
  for (std::size_t i = w.size(); i-- > 0;) s = (s + w.digits[i]) * inv;
  return s;
}

double sequence_distance(const DigitWord& u, const DigitWord& v,
                         const BetaSystem& sys) {
  if (u.size() != v.size())
    throw std::invalid_argument("sequence_distance: length mismatch");
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u.digits[k] != v.digits[k])
      return std::pow(sys.beta, -static_cast<double>(k));
  }
  return 0.0;
}

namespace {

constexpr int kTailDepth = 64;

// Projection of the maximal admissible infinite tail continuing a legal
// word, truncated at kTailDepth digits (error below beta^{-kTailDepth}).
// Greedy: take the largest digit the tracker accepts at every step.
double max_tail_value(const detail::AdmissTracker& after,
                      const BetaSystem& sys) {
  detail::AdmissTracker tr = after;
  DigitWord tail;
  tail.digits.reserve(kTailDepth);
  for (int i = 0; i < kTailDepth; ++i) {
    for (int d = sys.alphabet_max; d >= 0; --d) {
      if (tr.push(d)) {
        tail.push_back(d);
        break;
      }
    }
  }
  return project(tail, sys);
}

}  // namespace

CylinderInterval cylinder_interval(const DigitWord& w, const BetaSystem& sys) {
  CylinderInterval ci;
  ci.word = w;
  ci.order = static_cast<int>(w.size());
  detail::AdmissTracker tr(sys);
  if (!tr.push_word(w)) return ci;  // empty marker
  ci.empty = false;
  ci.left = project(w, sys);
  double scale = std::pow(sys.beta, -static_cast<double>(w.size()));
  ci.right = ci.left + scale * max_tail_value(tr, sys);
  return ci;
}

namespace {

struct CoverCtx {
  const BetaSystem* sys;
  int n;
  double lo, hi;    // window [lo, hi): cylinders meeting it get counted
  int count;
};

// DFS over legal words. The order-j cylinder of w sits inside
// [project(w), project(w) + beta^{-j}], so that box prunes; at the leaves
// the true right endpoint decides.
void cover_dfs(CoverCtx& ctx, detail::AdmissTracker& tr, DigitWord& w,
               double left, double scale) {
  int j = static_cast<int>(w.size());
  if (left > ctx.hi || left + scale < ctx.lo) return;
  if (j == ctx.n) {
    double right = left + scale * max_tail_value(tr, *ctx.sys);
    // countable iff [left, right) meets [lo, hi): left <= hi is already
    // known; need right > lo (half-open on both sides keeps adjacent
    // cylinders from double-counting at shared endpoints).
    if (right > ctx.lo && left <= ctx.hi) ++ctx.count;
    return;
  }
  double child_scale = scale / ctx.sys->beta;
  for (int d = 0; d <= ctx.sys->alphabet_max; ++d) {
    detail::AdmissTracker child = tr;
    if (!child.push(d)) continue;
    w.push_back(d);
    cover_dfs(ctx, child, w, left + d * child_scale, child_scale);
    w.digits.pop_back();
  }
}

}  // namespace

int covering_count(double x, int n, const BetaSystem& sys) {
  if (n < 1 || n > 20) throw std::invalid_argument("covering_count: n outside [1,20]");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("covering_count: x outside [0,1]");
  double r = std::pow(sys.beta, -static_cast<double>(n));
  CoverCtx ctx;
  ctx.sys = &sys;
  ctx.n = n;
  ctx.lo = std::max(0.0, x - r);
  ctx.hi = std::min(x + r, 1.0);  // cylinders live in [0,1)
  ctx.count = 0;
  detail::AdmissTracker tr(sys);
  DigitWord w;
  cover_dfs(ctx, tr, w, 0.0, 1.0);
  return ctx.count;
}

namespace {

void enum_dfs(const BetaSystem& sys, int n, detail::AdmissTracker& tr,
              DigitWord& w, std::vector<DigitWord>& out) {
  if (static_cast<int>(w.size()) == n) {
    out.push_back(w);
    return;
  }
  for (int d = 0; d <= sys.alphabet_max; ++d) {
    detail::AdmissTracker child = tr;
    if (!child.push(d)) continue;
    w.push_back(d);
    enum_dfs(sys, n, child, w, out);
    w.digits.pop_back();
  }
}

}  // namespace

std::vector<DigitWord> enumerate_legal_words(const BetaSystem& sys, int n) {
  if (n < 0) throw std::invalid_argument("enumerate_legal_words: negative length");
  std::vector<DigitWord> out;
  detail::AdmissTracker tr(sys);
  DigitWord w;
  enum_dfs(sys, n, tr, w, out);
  return out;
}

}  // namespace betadim
