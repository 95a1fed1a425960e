#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dfi/forms.hpp"
#include "dfi/places.hpp"
#include "dfi/resultant.hpp"

namespace dfi {

// A bounded instance of the norm inequality 0 < N_S(F(x)) <= c * H_S(x)^nu
// (strict "<" on the right when requested).
struct InequalityInstance {
  DecomposableForm form;
  BigRational c;   // > 0
  BigRational nu;  // unrestricted; interesting regimes on both sides of q-2m
  PlaceSet s;      // over the coefficient field K
  bool strict = false;
};

enum class FilterResult { Accept, Reject, Borderline };

using Point = std::vector<FieldElement>;

struct PointClass {
  Point rep;                  // minimal box norm, then lexicographic
  std::vector<Point> members; // in stream order
  BigRational norm_value;     // exact N_S(F(rep))
  LogInterval height_log;     // log H_S(rep)
};

struct SolutionReport {
  std::vector<Point> accepted;    // stream order
  std::vector<Point> borderline;  // undecided at the precision cap
  std::vector<PointClass> classes;
  unsigned long long scanned = 0;
  bool beyond_regime = false;  // equation search outside deg G < q-2m
};

struct SolveOptions {
  long bound = 0;        // box bound B >= 0
  int threads = 1;
  long min_box = 0;      // skip points with box norm <= min_box (incremental)
  bool x0_nonzero = false;
  BigRational tolerance = BigRational(1, 1000000000000L);
};

// All primitive sign-normalized vectors of length m+1 with power-basis
// integer coordinates bounded by B, in the deterministic scan order used by
// the solver (first coordinate ascending 0..B, then odometer order -B..B).
std::vector<Point> enumerate_points(const NumberField& k, long m, long bound);

FilterResult ineq_filter(const InequalityInstance& inst, const Point& x);

// x' = lambda * x for an S-unit lambda in K*.
bool proportional(const Point& x, const Point& y, const PlaceSet& s);

std::vector<PointClass> classify(const std::vector<Point>& accepted,
                                 const InequalityInstance& inst);

SolutionReport solve_inequality(const InequalityInstance& inst,
                                const SolveOptions& opt);

// All x with F(x) = g(x) != 0 in the box; deg g < q enforced, and
// beyond_regime flags deg g >= q - 2m.
SolutionReport equation_search(const DecomposableForm& f, const MPoly& g,
                               const PlaceSet& s, const SolveOptions& opt);

// Solutions of 0 < N_S(Res(P, Q)) <= c * H_S(Q)^nu over monic-degree-m
// candidates Q (x0 != 0), via the degree-m reduction form of P.
SolutionReport res_ineq_search(const FactoredPoly& p, long m,
                               const BigRational& c, const BigRational& nu,
                               const PlaceSet& s, const SolveOptions& opt);

// Proximity functional (1/[G:Q]) sum_{v in T} sum_j
// log(||x||_v ||L_j||_v / ||L_j(x)||_v), T extending S to G; term-by-term.
LogInterval subspace_functional(const Point& x, const DecomposableForm& f,
                                const PlaceSet& s_over_k,
                                const BigRational& tol);
// Same value through the telescoped form
// (1/[G:Q]) log(H_T(x)^q * prod_j H_T(L_j) / N_T(prod_j L_j(x))).
LogInterval subspace_functional_telescoped(const Point& x,
                                           const DecomposableForm& f,
                                           const PlaceSet& s_over_k,
                                           const BigRational& tol);

struct Subspace {
  std::vector<Point> basis;           // exact rank = basis.size() <= l
  std::vector<size_t> member_indices; // into the input point list
};
struct SubspaceCover {
  std::vector<Subspace> subspaces;
  std::vector<size_t> assignment;  // point index -> subspace index
};
// Greedy cover witness: dimensions <= l, membership exact; not minimal.
SubspaceCover subspace_cover(const std::vector<Point>& points, long l);

struct ProfileRow {
  long bound;
  size_t class_count;
  size_t borderline_count;
};
// Incremental scan over an increasing bound list; counts are monotone.
std::vector<ProfileRow> growth_profile(const InequalityInstance& inst,
                                       const std::vector<long>& bounds,
                                       int threads);

struct SequenceRow {
  long n = 0;
  bool skipped = false;
  std::string note;
  LogInterval form_height;
  std::vector<LogInterval> rep_heights;  // h(rep) per class
  SolutionReport report;
};
// Per-n data for a parametric family F_n: h(F_n), the solve report at
// budget B(n), and the class-representative heights.
std::vector<SequenceRow> sequence_experiment(
    const std::function<InequalityInstance(long)>& family,
    const std::function<long(long)>& budget, const std::vector<long>& ns,
    int threads, const BigRational& tol);

}  // namespace dfi
