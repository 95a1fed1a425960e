#include "dfi/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "dfi/errors.hpp"
#include "dfi/linalg.hpp"

namespace dfi {

namespace {

constexpr unsigned long long kNoCap = ~0ULL;

FieldElement fe_div(const FieldElement& a, const FieldElement& b) {
  return a / b;
}

// ---------- candidate stream (integer power-basis coordinates) ----------

struct StreamSpec {
  long degree;  // [K:Q]
  long nvars;   // m+1
  long bound;
  long min_box;      // skip candidates with max |int coord| <= min_box
  bool x0_nonzero;   // skip candidates whose first field coordinate is 0
};

// Visits every raw integer vector of the stripe (fixed first coordinate
// w0 >= 0, remaining coordinates in odometer order -B..B), applying the
// sign normalization "first nonzero integer coordinate positive".
// Returns candidates *without* the primitivity filter; f sees the raw ints.
template <typename Fn>
void scan_stripe(const StreamSpec& sp, long w0, Fn&& f) {
  const long n = sp.degree * sp.nvars;
  std::vector<long> w(static_cast<size_t>(n));
  w[0] = w0;
  if (n == 1) {
    if (w0 > 0) f(w);
    return;
  }
  for (size_t i = 1; i < w.size(); ++i) w[i] = -sp.bound;
  while (true) {
    bool normalized = true;
    if (w0 == 0) {
      normalized = false;
      for (size_t i = 1; i < w.size(); ++i) {
        if (w[i] == 0) continue;
        normalized = w[i] > 0;
        break;
      }
    }
    if (normalized) f(w);
    size_t i = w.size();
    while (i > 1) {
      --i;
      if (w[i] < sp.bound) {
        ++w[i];
        break;
      }
      w[i] = -sp.bound;
      if (i == 1) return;
    }
  }
}

bool raw_primitive(const std::vector<long>& w) {
  long g = 0;
  for (long v : w) g = std::gcd(g, std::labs(v));
  return g == 1;
}

long raw_box(const std::vector<long>& w) {
  long b = 0;
  for (long v : w) b = std::max(b, std::labs(v));
  return b;
}

Point raw_to_point(const NumberField& k, const StreamSpec& sp,
                   const std::vector<long>& w) {
  Point x;
  x.reserve(static_cast<size_t>(sp.nvars));
  for (long i = 0; i < sp.nvars; ++i) {
    std::vector<BigRational> coords(static_cast<size_t>(sp.degree));
    for (long j = 0; j < sp.degree; ++j)
      coords[static_cast<size_t>(j)] =
          BigRational(w[static_cast<size_t>(i * sp.degree + j)]);
    x.push_back(k.element(std::move(coords)));
  }
  return x;
}

bool raw_x0_zero(const StreamSpec& sp, const std::vector<long>& w) {
  for (long j = 0; j < sp.degree; ++j)
    if (w[static_cast<size_t>(j)] != 0) return false;
  return true;
}

struct StripeResult {
  std::vector<Point> accepted;
  std::vector<Point> borderline;
  unsigned long long scanned = 0;
};

// Runs stripes 0..B across the requested threads; per-stripe results are
// merged in stripe order, so the output is independent of the thread count.
template <typename StripeFn>
StripeResult run_stripes(long bound, int threads, StripeFn&& run_one) {
  const long stripes = bound + 1;
  std::vector<StripeResult> parts(static_cast<size_t>(stripes));
  if (threads < 1) threads = 1;
  std::atomic<long> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  auto worker = [&] {
    while (true) {
      long s = next.fetch_add(1);
      if (s >= stripes) return;
      try {
        run_one(s, parts[static_cast<size_t>(s)]);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  StripeResult out;
  for (auto& p : parts) {
    out.scanned += p.scanned;
    std::move(p.accepted.begin(), p.accepted.end(),
              std::back_inserter(out.accepted));
    std::move(p.borderline.begin(), p.borderline.end(),
              std::back_inserter(out.borderline));
  }
  return out;
}

// ---------- exact filter ----------

bool compare_exact(const BigRational& n, const BigRational& c,
                   const BigRational& nu, const BigRational& h, bool strict) {
  // n <= c * h^(p/r)  <=>  n^r <= c^r * h^p (all positive, r >= 1)
  long p = 0, r = 1;
  if (!num(nu).fits_slong_p() || !den(nu).fits_slong_p())
    fail(ErrorCode::ValidationError, "exponent is out of range");
  p = num(nu).get_si();
  r = den(nu).get_si();
  BigRational lhs = qpow(n, r);
  BigRational rhs = qpow(c, r) * qpow(h, p);
  return strict ? lhs < rhs : lhs <= rhs;
}

FilterResult filter_generic(const InequalityInstance& inst, const Point& x) {
  FieldElement val = inst.form.eval(x);
  if (val.is_zero()) return FilterResult::Reject;
  BigRational n = s_norm(val, inst.s);
  if (inst.s.field().degree() == 1) {
    BigRational h = *s_height_exact(x, inst.s);
    return compare_exact(n, inst.c, inst.nu, h, inst.strict)
               ? FilterResult::Accept
               : FilterResult::Reject;
  }
  for (BigRational tol(1, 1 << 16);; tol /= 65536) {
    long prec = 64;
    while (qpow(BigRational(1, 2), prec) > tol) prec *= 2;
    if (prec > precision_cap()) return FilterResult::Borderline;
    RealInterval lhs = RealInterval::from_rational(n, prec).log();
    RealInterval rhs = RealInterval::from_rational(inst.c, prec).log() +
                       s_height_log(x, inst.s, tol).scale(inst.nu);
    auto le = (lhs - rhs).certainly_le(BigRational(0));
    auto lt = (lhs - rhs).certainly_lt(BigRational(0));
    if (inst.strict) {
      if (lt.has_value()) return *lt ? FilterResult::Accept : FilterResult::Reject;
    } else if (le.has_value()) {
      return *le ? FilterResult::Accept : FilterResult::Reject;
    }
  }
}

// ---------- int64 fast path for binary forms over Q ----------

struct FastPlan {
  bool usable = false;
  long q = 0;
  std::vector<long long> dense;  // dense[j]: coefficient of X0^(q-j) X1^j
  std::vector<unsigned long long> primes;
  std::vector<unsigned long long> cap;  // cap[h]: max admissible N_S, h=0..B
};

// Largest integer n >= 0 with n^r <= bound (or n^r < bound when strict).
unsigned long long max_admissible(const BigRational& bound, long r,
                                  bool strict) {
  if (bound <= 0) return 0;
  BigInt fl = num(bound) / den(bound);
  BigInt n0;
  mpz_root(n0.get_mpz_t(), fl.get_mpz_t(), static_cast<unsigned long>(r));
  while (qpow(BigRational(n0 + 1), r) <= bound) n0 += 1;
  while (n0 > 0 && qpow(BigRational(n0), r) > bound) n0 -= 1;
  if (strict && qpow(BigRational(n0), r) == bound && n0 > 0) n0 -= 1;
  if (strict && n0 == 0) return 0;
  if (!n0.fits_slong_p()) return kNoCap;
  long v = n0.get_si();
  return v > (1LL << 62) ? kNoCap : static_cast<unsigned long long>(v);
}

FastPlan make_fast_plan(const InequalityInstance& inst, long bound) {
  FastPlan plan;
  const NumberField& k = inst.s.field();
  if (k.degree() != 1 || inst.form.m() != 1) return plan;
  if (!num(inst.nu).fits_slong_p() || !den(inst.nu).fits_slong_p()) return plan;
  const long q = inst.form.q();
  plan.q = q;
  plan.dense.assign(static_cast<size_t>(q) + 1, 0);
  BigInt sum_abs = 0;
  for (const auto& [e, c] : inst.form.expanded().terms()) {
    BigRational cq = c.rational_value();
    if (!is_integer(cq) || !num(cq).fits_slong_p()) return plan;
    plan.dense[e[1]] = num(cq).get_si();
    sum_abs += abs(num(cq));
  }
  // every intermediate value must stay well inside int64
  BigInt worst = sum_abs * ipow(BigInt(std::max(bound, 1L)), q);
  if (worst >= (BigInt(1) << 62)) return plan;
  for (const BigInt& p : inst.s.primes()) {
    if (!p.fits_slong_p()) return plan;
    plan.primes.push_back(static_cast<unsigned long long>(p.get_si()));
  }
  long p = num(inst.nu).get_si(), r = den(inst.nu).get_si();
  plan.cap.assign(static_cast<size_t>(bound) + 1, 0);
  BigRational cr = qpow(inst.c, r);
  for (long h = 1; h <= bound; ++h)
    plan.cap[static_cast<size_t>(h)] =
        max_admissible(cr * qpow(BigRational(h), p), r, inst.strict);
  plan.usable = true;
  return plan;
}

void fast_stripe(const FastPlan& plan, const InequalityInstance& inst,
                 const SolveOptions& opt, long x0, StripeResult& out) {
  const long q = plan.q;
  const long b = opt.bound;
  const NumberField& k = inst.s.field();
  auto make_point = [&](long a0, long a1) {
    return Point{k.from_rational(BigRational(a0)),
                 k.from_rational(BigRational(a1))};
  };
  // per-stripe coefficients c_j = dense[j] * x0^(q-j)
  std::vector<long long> cj(static_cast<size_t>(q) + 1);
  {
    long long pw = 1;
    std::vector<long long> x0pow(static_cast<size_t>(q) + 1);
    for (long j = 0; j <= q; ++j) {
      x0pow[static_cast<size_t>(j)] = pw;
      pw = j < q ? pw * x0 : pw;
    }
    for (long j = 0; j <= q; ++j)
      cj[static_cast<size_t>(j)] =
          plan.dense[static_cast<size_t>(j)] * x0pow[static_cast<size_t>(q - j)];
  }
  const long x1_lo = x0 == 0 ? 1 : -b;
  for (long x1 = x1_lo; x1 <= b; ++x1) {
    ++out.scanned;
    const long h = std::max(x0, std::labs(x1));
    if (h <= opt.min_box) continue;
    long long v = 0;
    for (long j = q; j >= 0; --j) v = v * x1 + cj[static_cast<size_t>(j)];
    if (v == 0) continue;
    unsigned long long n = static_cast<unsigned long long>(v < 0 ? -v : v);
    for (unsigned long long p : plan.primes)
      while (n % p == 0) n /= p;
    if (n > plan.cap[static_cast<size_t>(h)]) continue;
    if (std::gcd(std::labs(x0), std::labs(x1)) != 1) continue;
    if (opt.x0_nonzero && x0 == 0) continue;
    out.accepted.push_back(make_point(x0, x1));
  }
}

// ---------- canonical representatives ----------

BigRational point_box(const Point& x) {
  BigRational b(0);
  for (const auto& xi : x)
    for (const auto& c : xi.coords()) {
      BigRational a = abs(c);
      if (a > b) b = a;
    }
  return b;
}

bool point_lex_less(const Point& x, const Point& y) {
  for (size_t i = 0; i < x.size(); ++i) {
    const auto& cx = x[i].coords();
    const auto& cy = y[i].coords();
    for (size_t j = 0; j < cx.size(); ++j) {
      if (cx[j] != cy[j]) return cx[j] < cy[j];
    }
  }
  return false;
}

bool point_canonical_less(const Point& x, const Point& y) {
  BigRational bx = point_box(x), by = point_box(y);
  if (bx != by) return bx < by;
  return point_lex_less(x, y);
}

void finalize_classes(SolutionReport& rep, const DecomposableForm& form,
                      const PlaceSet& s) {
  for (auto& cls : rep.classes) {
    cls.rep = cls.members.front();
    for (const auto& p : cls.members)
      if (point_canonical_less(p, cls.rep)) cls.rep = p;
    cls.norm_value = s_norm(form.eval(cls.rep), s);
    cls.height_log =
        s_height_log(cls.rep, s, BigRational(1, 1000000000000L));
  }
}

void group_classes(SolutionReport& rep, const PlaceSet& s) {
  for (const auto& x : rep.accepted) {
    bool placed = false;
    for (auto& cls : rep.classes) {
      if (proportional(cls.members.front(), x, s)) {
        cls.members.push_back(x);
        placed = true;
        break;
      }
    }
    if (!placed) {
      PointClass cls;
      cls.members.push_back(x);
      rep.classes.push_back(std::move(cls));
    }
  }
}

}  // namespace

// ---------- public operations ----------

std::vector<Point> enumerate_points(const NumberField& k, long m, long bound) {
  if (m < 1) fail(ErrorCode::ValidationError, "need at least two coordinates");
  if (bound < 0) fail(ErrorCode::ValidationError, "bound must be nonnegative");
  StreamSpec sp{k.degree(), m + 1, bound, 0, false};
  std::vector<Point> out;
  for (long w0 = 0; w0 <= bound; ++w0)
    scan_stripe(sp, w0, [&](const std::vector<long>& w) {
      if (!raw_primitive(w)) return;
      out.push_back(raw_to_point(k, sp, w));
    });
  return out;
}

FilterResult ineq_filter(const InequalityInstance& inst, const Point& x) {
  if (inst.c <= 0) fail(ErrorCode::ValidationError, "c must be positive");
  return filter_generic(inst, x);
}

bool proportional(const Point& x, const Point& y, const PlaceSet& s) {
  if (x.size() != y.size())
    fail(ErrorCode::DimensionMismatch, "points have different lengths");
  if (x.empty()) fail(ErrorCode::ValidationError, "empty point");
  FieldElement lambda;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero() != y[i].is_zero()) return false;
    if (!x[i].is_zero() && !lambda.is_valid()) lambda = y[i] / x[i];
  }
  if (!lambda.is_valid())
    fail(ErrorCode::ZeroElement, "proportionality of zero vectors");
  for (size_t i = 0; i < x.size(); ++i)
    if (y[i] != lambda * x[i]) return false;
  return is_s_unit(lambda, s);
}

std::vector<PointClass> classify(const std::vector<Point>& accepted,
                                 const InequalityInstance& inst) {
  SolutionReport rep;
  rep.accepted = accepted;
  group_classes(rep, inst.s);
  finalize_classes(rep, inst.form, inst.s);
  return rep.classes;
}

SolutionReport solve_inequality(const InequalityInstance& inst,
                                const SolveOptions& opt) {
  if (inst.c <= 0) fail(ErrorCode::ValidationError, "c must be positive");
  if (opt.bound < 0) fail(ErrorCode::ValidationError, "bound must be nonnegative");
  const NumberField& k = inst.s.field();
  SolutionReport rep;
  if (opt.bound == 0) return rep;

  FastPlan plan = make_fast_plan(inst, opt.bound);
  StripeResult scan;
  if (plan.usable) {
    scan = run_stripes(opt.bound, opt.threads, [&](long s, StripeResult& out) {
      fast_stripe(plan, inst, opt, s, out);
    });
  } else {
    StreamSpec sp{k.degree(), inst.form.m() + 1, opt.bound, opt.min_box,
                  opt.x0_nonzero};
    scan = run_stripes(opt.bound, opt.threads, [&](long w0, StripeResult& out) {
      scan_stripe(sp, w0, [&](const std::vector<long>& w) {
        ++out.scanned;
        if (raw_box(w) <= sp.min_box) return;
        if (!raw_primitive(w)) return;
        if (sp.x0_nonzero && raw_x0_zero(sp, w)) return;
        Point x = raw_to_point(k, sp, w);
        switch (filter_generic(inst, x)) {
          case FilterResult::Accept:
            out.accepted.push_back(std::move(x));
            break;
          case FilterResult::Borderline:
            out.borderline.push_back(std::move(x));
            break;
          case FilterResult::Reject:
            break;
        }
      });
    });
  }

  rep.scanned = scan.scanned;
  rep.borderline = std::move(scan.borderline);
  rep.accepted = std::move(scan.accepted);

  // independent-path recheck of every accepted point: factored evaluation
  // must agree with the table, and the exact filter must agree with the scan
  for (const auto& x : rep.accepted) {
    if (inst.form.eval(x) != inst.form.eval_factored(x))
      fail(ErrorCode::ValidationError, "evaluation paths disagree");
    if (filter_generic(inst, x) != FilterResult::Accept)
      fail(ErrorCode::ValidationError, "accepted point fails the exact recheck");
  }

  group_classes(rep, inst.s);
  finalize_classes(rep, inst.form, inst.s);
  return rep;
}

SolutionReport equation_search(const DecomposableForm& f, const MPoly& g,
                               const PlaceSet& s, const SolveOptions& opt) {
  if (g.total_degree() >= f.q())
    fail(ErrorCode::DegreeTooLarge, "right side must have degree below q");
  if (opt.bound < 0) fail(ErrorCode::ValidationError, "bound must be nonnegative");
  const NumberField& k = s.field();
  SolutionReport rep;
  rep.beyond_regime = g.total_degree() >= f.q() - 2 * f.m();
  if (opt.bound == 0) return rep;
  StreamSpec sp{k.degree(), f.m() + 1, opt.bound, opt.min_box, opt.x0_nonzero};
  StripeResult scan =
      run_stripes(opt.bound, opt.threads, [&](long w0, StripeResult& out) {
        scan_stripe(sp, w0, [&](const std::vector<long>& w) {
          ++out.scanned;
          if (raw_box(w) <= sp.min_box) return;
          if (!raw_primitive(w)) return;
          if (sp.x0_nonzero && raw_x0_zero(sp, w)) return;
          Point x = raw_to_point(k, sp, w);
          FieldElement gx = g.eval(x);
          if (gx.is_zero()) return;
          if (f.eval(x) == gx) out.accepted.push_back(std::move(x));
        });
      });
  rep.scanned = scan.scanned;
  rep.accepted = std::move(scan.accepted);
  group_classes(rep, s);
  finalize_classes(rep, f, s);
  return rep;
}

SolutionReport res_ineq_search(const FactoredPoly& p, long m,
                               const BigRational& c, const BigRational& nu,
                               const PlaceSet& s, const SolveOptions& opt) {
  InequalityInstance inst{reduction_form(p, m, s), c, nu, s, false};
  SolveOptions o = opt;
  o.x0_nonzero = true;  // candidates are genuine degree-m polynomials
  return solve_inequality(inst, o);
}

// ---------- proximity functional ----------

namespace {

struct FunctionalParts {
  BigRational finite;  // exact product of the finite-place contributions
  std::vector<Point> factor_coeffs_g;
  Point xg;
  PlaceSet t;
  long g_degree;
};

FunctionalParts functional_setup(const Point& x, const DecomposableForm& f,
                                 const PlaceSet& s_over_k) {
  if (static_cast<long>(x.size()) != f.m() + 1)
    fail(ErrorCode::DimensionMismatch, "point has the wrong number of coordinates");
  const SubfieldMap& km = f.embedding();
  if (!s_over_k.field().same_as(km.small_field()))
    fail(ErrorCode::FieldMismatch, "place set is not over the base field");
  FunctionalParts parts{BigRational(1),
                        {},
                        {},
                        PlaceSet::over_primes(km.big_field(), s_over_k.primes()),
                        km.big_field().degree()};
  for (const auto& xi : x) parts.xg.push_back(km.embed(xi));
  for (const auto& lf : f.factors()) {
    if (lf.eval(parts.xg).is_zero())
      fail(ErrorCode::FactorVanishes,
           "factor " + lf.str() + " vanishes at the point");
    parts.factor_coeffs_g.push_back(lf.coeffs());
  }
  return parts;
}

long min_valuation(const Point& v, const Place& p) {
  bool any = false;
  long mv = 0;
  for (const auto& c : v) {
    if (c.is_zero()) continue;
    long vv = valuation(c, p);
    if (!any || vv < mv) mv = vv;
    any = true;
  }
  if (!any) fail(ErrorCode::ZeroElement, "zero vector");
  return mv;
}

}  // namespace

LogInterval subspace_functional(const Point& x, const DecomposableForm& f,
                                const PlaceSet& s_over_k,
                                const BigRational& tol) {
  FunctionalParts parts = functional_setup(x, f, s_over_k);
  const NumberField& g = f.embedding().big_field();

  // finite places of T: all contributions are exact rationals
  BigRational fin(1);
  for (const Place& v : parts.t.finite()) {
    long mx = min_valuation(parts.xg, v);
    for (size_t j = 0; j < f.factors().size(); ++j) {
      long ml = min_valuation(parts.factor_coeffs_g[j], v);
      long lv = valuation(f.factors()[j].eval(parts.xg), v);
      long e = -v.local_degree() * (mx + ml - lv);
      if (e != 0) fin *= qpow(BigRational(v.prime()), e);
    }
  }

  for (long prec = 64;; prec *= 2) {
    if (prec > precision_cap())
      fail(ErrorCode::PrecisionCapExceeded, "functional refinement exceeded the cap");
    g.embeddings_bits(prec / 2);
    RealInterval sum = RealInterval::from_rational(fin, prec).log();
    bool decided = true;
    for (const Place& v : parts.t.archimedean()) {
      for (size_t j = 0; j < f.factors().size() && decided; ++j) {
        RealInterval mx, ml;
        bool first = true;
        for (const auto& c : parts.xg) {
          if (c.is_zero()) continue;
          RealInterval a = c.embed(v.embedding_index(), prec).abs();
          mx = first ? a : RealInterval::max(mx, a);
          first = false;
        }
        first = true;
        for (const auto& c : parts.factor_coeffs_g[j]) {
          if (c.is_zero()) continue;
          RealInterval a = c.embed(v.embedding_index(), prec).abs();
          ml = first ? a : RealInterval::max(ml, a);
          first = false;
        }
        RealInterval lv =
            f.factors()[j].eval(parts.xg).embed(v.embedding_index(), prec).abs();
        if (!(mx.lower() > 0) || !(ml.lower() > 0) || !(lv.lower() > 0)) {
          decided = false;
          break;
        }
        sum += (mx.log() + ml.log() - lv.log())
                   .scale(BigRational(v.local_degree()));
      }
      if (!decided) break;
    }
    if (!decided) continue;
    RealInterval out = sum.scale(BigRational(1, parts.g_degree));
    if (out.width() < tol) return out;
  }
}

LogInterval subspace_functional_telescoped(const Point& x,
                                           const DecomposableForm& f,
                                           const PlaceSet& s_over_k,
                                           const BigRational& tol) {
  FunctionalParts parts = functional_setup(x, f, s_over_k);
  FieldElement prod = f.embedding().big_field().one();
  for (const auto& lf : f.factors()) prod = prod * lf.eval(parts.xg);
  BigRational nt = s_norm(prod, parts.t);

  for (BigRational t = tol / (2 * (f.q() + 2));; t /= 2) {
    long prec = 64;
    while (qpow(BigRational(1, 2), prec) > t) prec *= 2;
    if (prec > precision_cap())
      fail(ErrorCode::PrecisionCapExceeded, "functional refinement exceeded the cap");
    RealInterval sum = s_height_log(parts.xg, parts.t, t)
                           .scale(BigRational(f.q()));
    for (const auto& coeffs : parts.factor_coeffs_g)
      sum += s_height_log(coeffs, parts.t, t);
    sum -= RealInterval::from_rational(nt, prec).log();
    RealInterval out = sum.scale(BigRational(1, parts.g_degree));
    if (out.width() < tol) return out;
  }
}

// ---------- covers, profiles, sequences ----------

SubspaceCover subspace_cover(const std::vector<Point>& points, long l) {
  if (l < 1) fail(ErrorCode::ValidationError, "subspace dimension must be >= 1");
  SubspaceCover cover;
  cover.assignment.assign(points.size(), static_cast<size_t>(-1));
  if (points.empty()) return cover;
  const NumberField& k = points.front()[0].field();
  if (l > static_cast<long>(points.front().size()))
    fail(ErrorCode::ValidationError, "subspace dimension exceeds the ambient space");
  const FieldElement zero = k.zero();
  auto rank_of = [&](const std::vector<Point>& vs) {
    Matrix<FieldElement> a(vs.begin(), vs.end());
    return rank_exact(a, fe_div, zero);
  };
  for (size_t i = 0; i < points.size(); ++i) {
    if (cover.assignment[i] != static_cast<size_t>(-1)) continue;
    Subspace sub;
    sub.basis.push_back(points[i]);
    sub.member_indices.push_back(i);
    cover.assignment[i] = cover.subspaces.size();
    for (size_t j = i + 1; j < points.size(); ++j) {
      if (cover.assignment[j] != static_cast<size_t>(-1)) continue;
      std::vector<Point> trial = sub.basis;
      trial.push_back(points[j]);
      size_t r = rank_of(trial);
      if (r > static_cast<size_t>(l)) continue;
      if (r > sub.basis.size()) sub.basis.push_back(points[j]);
      sub.member_indices.push_back(j);
      cover.assignment[j] = cover.subspaces.size();
    }
    cover.subspaces.push_back(std::move(sub));
  }
  return cover;
}

std::vector<ProfileRow> growth_profile(const InequalityInstance& inst,
                                       const std::vector<long>& bounds,
                                       int threads) {
  for (size_t i = 1; i < bounds.size(); ++i)
    if (bounds[i] <= bounds[i - 1])
      fail(ErrorCode::ValidationError, "bound list must be strictly increasing");
  std::vector<ProfileRow> rows;
  SolutionReport acc;
  long prev = 0;
  for (long b : bounds) {
    SolveOptions opt;
    opt.bound = b;
    opt.threads = threads;
    opt.min_box = prev;
    SolutionReport step = solve_inequality(inst, opt);
    for (auto& x : step.accepted) acc.accepted.push_back(std::move(x));
    for (auto& x : step.borderline) acc.borderline.push_back(std::move(x));
    acc.classes.clear();
    group_classes(acc, inst.s);
    rows.push_back({b, acc.classes.size(), acc.borderline.size()});
    prev = b;
  }
  return rows;
}

std::vector<SequenceRow> sequence_experiment(
    const std::function<InequalityInstance(long)>& family,
    const std::function<long(long)>& budget, const std::vector<long>& ns,
    int threads, const BigRational& tol) {
  std::vector<SequenceRow> rows;
  for (long n : ns) {
    SequenceRow row;
    row.n = n;
    try {
      InequalityInstance inst = family(n);
      auto gp = general_position(inst.form.factors(), inst.form.m());
      if (!gp.ok)
        fail(ErrorCode::GeneralPositionFailure,
             "instantiated factors are not in general position");
      row.form_height =
          height(inst.form.expanded().coefficient_vector(), tol);
      SolveOptions opt;
      opt.bound = budget(n);
      opt.threads = threads;
      row.report = solve_inequality(inst, opt);
      for (const auto& cls : row.report.classes)
        row.rep_heights.push_back(height(cls.rep, tol));
    } catch (const Error& e) {
      row.skipped = true;
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dfi
