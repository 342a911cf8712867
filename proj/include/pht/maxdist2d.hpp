#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "bottleneck.hpp"
#include "curves2d.hpp"
#include "persistence.hpp"

namespace pht {

/// Half-open bracket (lower, upper] of the maximum distance.
struct Band {
  double lower = 0.0;
  double upper = kInf;
};

/// Raised when an existence test finds an intra-intersection inside its band.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct DecideOptions {
  /// Rebuild the pairing from scratch at every arc instead of transposing.
  bool recompute = false;
  /// Called once per arc of constant filtration order with the arc midpoint.
  std::function<void(double, const Diagram&, const Diagram&)> observer;
};

struct SweepStats {
  std::size_t arcs = 0;
  std::size_t threshold_events = 0;
  std::size_t transpositions = 0;
  std::size_t repairs = 0;
};

namespace detail {

/// f * |<c, omega>|
struct KineticTerm {
  Vec2 c;
  double factor = 1.0;
  double value(double theta) const { return factor * std::fabs(height(c, theta)); }
};

/// Graph edge whose weight is the max of its terms (zero when empty).
struct KineticEdge {
  int u = 0;
  int v = 0;
  std::vector<KineticTerm> terms;
  double weight(double theta) const {
    double w = 0.0;
    for (const auto& t : terms) w = std::max(w, t.value(theta));
    return w;
  }
};

// Angles in (lo, hi) where f|<c, omega>| = level.
inline void term_crossings(const KineticTerm& t, double level, double lo, double hi, std::vector<double>& out) {
  const double amp = t.factor * t.c.norm();
  if (amp <= level) return;
  const double phi = std::atan2(t.c.y, t.c.x);
  const double beta = std::acos(level / amp);
  for (double x : {phi - beta, phi + beta, phi + std::numbers::pi - beta, phi + std::numbers::pi + beta}) {
    const double w = wrap_angle(x);
    for (double s : {w, w + kTwoPi})
      if (s > lo && s < hi) out.push_back(s);
  }
}

using PointKey = std::tuple<int, int, int>;  // (is_projection, birth simplex, death simplex)

/// Kinetic bipartite instance of one dimension on an arc of fixed pairing.
/// U = X then projections of Y, V = Y then projections of X; the diagonal
/// side only links each point to its own projection.
struct KineticInstance {
  std::vector<KineticEdge> edges;
  std::vector<KineticTerm> essential;
  std::vector<PointKey> u_keys, v_keys;
  std::size_t n = 0;
};

struct ActivePoint {
  int birth_simplex, death_simplex;
  Vec2 birth, death;  // active vertex positions
};

inline KineticInstance build_kinetic(const std::vector<ActivePoint>& x, const std::vector<ActivePoint>& y,
                                     const std::vector<Vec2>& ess_x, const std::vector<Vec2>& ess_y) {
  KineticInstance k;
  const int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
  k.n = static_cast<std::size_t>(nx + ny);
  for (const auto& p : x) k.u_keys.emplace_back(0, p.birth_simplex, p.death_simplex);
  for (const auto& q : y) k.u_keys.emplace_back(1, q.birth_simplex, q.death_simplex);
  for (const auto& q : y) k.v_keys.emplace_back(0, q.birth_simplex, q.death_simplex);
  for (const auto& p : x) k.v_keys.emplace_back(1, p.birth_simplex, p.death_simplex);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      k.edges.push_back({i, j, {{x[i].birth - y[j].birth, 1.0}, {x[i].death - y[j].death, 1.0}}});
  for (int i = 0; i < nx; ++i) k.edges.push_back({i, ny + i, {{x[i].death - x[i].birth, 0.5}}});
  for (int j = 0; j < ny; ++j) k.edges.push_back({nx + j, j, {{y[j].death - y[j].birth, 0.5}}});
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) k.edges.push_back({nx + j, ny + i, {}});
  for (std::size_t i = 0; i < ess_x.size(); ++i) k.essential.push_back({ess_x[i] - ess_y[i], 1.0});
  return k;
}

}  // namespace detail

/// Decision sweep over the circle: true iff H(theta) <= lambda everywhere
/// (up to the decision slack).
class DecisionSweep {
 public:
  DecisionSweep(const Complex& k, const Complex& kp) : k_(&k), kp_(&kp) {
    slack_ = tolerances().decision * (1.0 + enclosing_radius(k) + enclosing_radius(kp));
    const Diagram a = compute_persistence(k, Direction::angle(0.0));
    const Diagram b = compute_persistence(kp, Direction::angle(0.0));
    max_dim_ = std::max(a.max_dim(), b.max_dim());
    for (int d = 0; d <= max_dim_; ++d)
      if (a.essential_count(d) != b.essential_count(d)) essential_mismatch_ = true;
    std::vector<double> cuts;
    for (const Complex* c : {k_, kp_}) {
      const auto& vs = c->vertices();
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
          for (double t : orthogonal_angles(vertex_position(*c, static_cast<int>(i)) -
                                            vertex_position(*c, static_cast<int>(j))))
            cuts.push_back(t);
    }
    unique_angles(cuts);
    bounds_.push_back(0.0);
    for (double t : cuts)
      if (t > 0.0) bounds_.push_back(t);
    bounds_.push_back(kTwoPi);
  }

  bool essential_mismatch() const { return essential_mismatch_; }
  double slack() const { return slack_; }
  int max_dim() const { return max_dim_; }
  /// Arc boundaries: the angles where two vertices of one complex tie.
  const std::vector<double>& arc_bounds() const { return bounds_; }
  const SweepStats& last_stats() const { return stats_; }

  bool decide(double lambda, const DecideOptions& opt = {}) {
    stats_ = {};
    if (essential_mismatch_) return false;
    const double level = lambda + slack_;
    std::optional<PairingState> state_k, state_kp;
    std::vector<std::optional<Matching>> previous(max_dim_ + 1);
    std::vector<detail::KineticInstance> previous_inst(max_dim_ + 1);
    for (std::size_t a = 0; a + 1 < bounds_.size(); ++a) {
      const double lo = bounds_[a], hi = bounds_[a + 1];
      if (hi - lo <= 0.0) continue;
      ++stats_.arcs;
      const double mid = 0.5 * (lo + hi);
      const Diagram dk = advance(*k_, state_k, mid, opt.recompute);
      const Diagram dkp = advance(*kp_, state_kp, mid, opt.recompute);
      if (opt.observer) opt.observer(mid, dk, dkp);
      for (int dim = 0; dim <= max_dim_; ++dim) {
        auto inst = kinetic_instance(dk, dkp, dim, mid);
        if (!sweep_arc(inst, previous[dim], previous_inst[dim], lo, hi, level)) return false;
        previous_inst[dim] = std::move(inst);
      }
    }
    return true;
  }

 private:
  Diagram advance(const Complex& c, std::optional<PairingState>& state, double theta, bool recompute) {
    const Filtration f = lower_star_filtration(c, Direction::angle(theta));
    if (!state || recompute) {
      state.emplace(c, f);
    } else {
      stats_.transpositions += state->reorder(f.order);
    }
    state->set_values(f.values);
    return state->diagram();
  }

  std::vector<detail::ActivePoint> active_points(const Complex& c, const Diagram& d, int dim, double theta,
                                                 int offset) const {
    std::vector<detail::ActivePoint> out;
    for (const auto& p : d.pairs) {
      if (p.dim != dim || p.essential()) continue;
      const int vb = active_global_vertex(c, p.birth_simplex, theta);
      const int vd = active_global_vertex(c, p.death_simplex, theta);
      const Vec2 b = vertex_position(c, vb), e = vertex_position(c, vd);
      if (vb == vd || b == e) continue;  // identically zero persistence on this arc
      out.push_back({p.birth_simplex + offset, p.death_simplex + offset, b, e});
    }
    return out;
  }

  std::vector<Vec2> essential_positions(const Complex& c, const Diagram& d, int dim, double theta) const {
    std::vector<std::pair<double, Vec2>> births;
    for (const auto& p : d.pairs)
      if (p.dim == dim && p.essential())
        births.emplace_back(p.birth, vertex_position(c, active_global_vertex(c, p.birth_simplex, theta)));
    std::stable_sort(births.begin(), births.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Vec2> out;
    for (const auto& b : births) out.push_back(b.second);
    return out;
  }

  static int active_global_vertex(const Complex& c, int simplex, double theta) {
    const auto& ids = c.simplex(simplex).vertex_ids;
    std::vector<Vec2> pts;
    for (int v : ids) pts.push_back(vertex_position(c, v));
    return ids[active_vertex(pts, theta)];
  }

  detail::KineticInstance kinetic_instance(const Diagram& dk, const Diagram& dkp, int dim, double theta) const {
    const int off = static_cast<int>(k_->size());
    return detail::build_kinetic(active_points(*k_, dk, dim, theta, 0), active_points(*kp_, dkp, dim, theta, off),
                                 essential_positions(*k_, dk, dim, theta), essential_positions(*kp_, dkp, dim, theta));
  }

  bool sweep_arc(const detail::KineticInstance& inst, std::optional<Matching>& previous,
                 const detail::KineticInstance& previous_inst, double lo, double hi, double level) {
    struct Event {
      double theta;
      int edge;  // >= 0: kinetic edge; < 0: essential term -(edge+1)
    };
    std::vector<Event> events;
    std::vector<double> roots;
    for (std::size_t e = 0; e < inst.edges.size(); ++e)
      for (const auto& t : inst.edges[e].terms) {
        roots.clear();
        detail::term_crossings(t, level, lo, hi, roots);
        for (double r : roots) events.push_back({r, static_cast<int>(e)});
      }
    for (std::size_t e = 0; e < inst.essential.size(); ++e) {
      roots.clear();
      detail::term_crossings(inst.essential[e], level, lo, hi, roots);
      for (double r : roots) events.push_back({r, -static_cast<int>(e) - 1});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
      return a.theta != b.theta ? a.theta < b.theta : a.edge < b.edge;
    });
    stats_.threshold_events += events.size();

    const double first_end = events.empty() ? hi : events.front().theta;
    const double t0 = 0.5 * (lo + first_end);
    for (const auto& t : inst.essential)
      if (t.value(t0) > level) return false;

    BipartiteGraph g(inst.n);
    for (const auto& e : inst.edges) g.set(e.u, e.v, e.weight(t0) <= level);

    Matching m(inst.n);
    if (!previous) {
      m = hopcroft_karp(g);
      if (!m.perfect()) return false;
    } else {
      std::map<detail::PointKey, int> u_index, v_index;
      for (std::size_t i = 0; i < inst.n; ++i) {
        u_index[inst.u_keys[i]] = static_cast<int>(i);
        v_index[inst.v_keys[i]] = static_cast<int>(i);
      }
      for (std::size_t u = 0; u < previous->mate_u.size(); ++u) {
        const int v = previous->mate_u[u];
        if (v < 0) continue;
        auto iu = u_index.find(previous_inst.u_keys[u]);
        auto iv = v_index.find(previous_inst.v_keys[v]);
        if (iu == u_index.end() || iv == v_index.end()) continue;
        if (!g.has(iu->second, iv->second) || m.mate_v[iv->second] >= 0) continue;
        m.mate_u[iu->second] = iv->second;
        m.mate_v[iv->second] = iu->second;
      }
      for (std::size_t u = 0; u < inst.n; ++u) {
        if (m.mate_u[u] >= 0) continue;
        ++stats_.repairs;
        if (!augment_from(g, m, static_cast<int>(u))) return false;
      }
    }

    for (std::size_t k = 0; k < events.size(); ++k) {
      const double next = k + 1 < events.size() ? events[k + 1].theta : hi;
      const double t = 0.5 * (events[k].theta + next);
      const int e = events[k].edge;
      if (e < 0) {
        if (inst.essential[-e - 1].value(t) > level) return false;
        continue;
      }
      const auto& edge = inst.edges[e];
      const bool present = edge.weight(t) <= level;
      g.set(edge.u, edge.v, present);
      if (!present && m.mate_u[edge.u] == edge.v) {
        m.unmatch(edge.u);
        ++stats_.repairs;
        if (!augment_from(g, m, edge.u)) return false;
      }
    }
    m.lambda = level;
    previous = std::move(m);
    return true;
  }

  const Complex* k_;
  const Complex* kp_;
  double slack_ = 0.0;
  int max_dim_ = 0;
  bool essential_mismatch_ = false;
  std::vector<double> bounds_;
  SweepStats stats_;
};

inline bool decide(const Complex& k, const Complex& kp, double lambda, const DecideOptions& opt = {}) {
  DecisionSweep sweep(k, kp);
  return sweep.decide(lambda, opt);
}

struct CandidateValue {
  double value = 0.0;
  double theta = 0.0;
  EventKind kind = EventKind::LocalMax;
  CurveId first;
  CurveId second;

  bool owned_by(int simplex) const {
    return first.involves(simplex) || (second.alpha >= 0 && second.involves(simplex));
  }
};

inline bool candidate_less(const CandidateValue& a, const CandidateValue& b) {
  return a.value != b.value ? a.value < b.value : a.theta < b.theta;
}

namespace detail {
inline void append_maxima(const DifferenceCurve& c, std::vector<CandidateValue>& out) {
  for (const auto& e : local_maxima(c))
    if (e.value > tolerances().value) out.push_back({e.value, e.theta, EventKind::LocalMax, c.id, {}});
}
inline void append_intersections(const DifferenceCurve& a, const DifferenceCurve& b, std::vector<CandidateValue>& out) {
  for (const auto& e : curve_intersections(a, b))
    if (e.value > tolerances().value) out.push_back({e.value, e.theta, e.kind, e.first, e.second});
}
}  // namespace detail

/// Every curve local maximum and every pairwise intersection (value above the
/// value tolerance), sorted by (value, theta), not deduplicated.
inline std::vector<CandidateValue> raw_candidates(const CurveFamily& fam) {
  std::vector<CandidateValue> out;
  const auto& cs = fam.curves();
  for (const auto& c : cs) detail::append_maxima(c, out);
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) detail::append_intersections(cs[i], cs[j], out);
  std::sort(out.begin(), out.end(), candidate_less);
  return out;
}

/// Candidates deduplicated by (value, theta) within the tolerances.
inline std::vector<CandidateValue> enumerate_all_candidates(const Complex& k, const Complex& kp) {
  const CurveFamily fam(k, kp);
  auto raw = raw_candidates(fam);
  const auto& tol = tolerances();
  std::vector<CandidateValue> out;
  for (const auto& c : raw) {
    bool dup = false;
    for (auto it = out.rbegin(); it != out.rend() && c.value - it->value <= tol.value; ++it)
      if (angle_distance(c.theta, it->theta) <= tol.angle) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(c);
  }
  return out;
}

struct MaxDistanceResult {
  double value = 0.0;
  double witness_theta = 0.0;
  std::size_t refinements = 0;
  std::size_t existence_tests = 0;
  std::size_t decide_calls = 0;
  Band band;
};

/// Exact maximum bottleneck distance between the PHTs of two planar complexes.
class MaxDistance2D {
 public:
  MaxDistance2D(const Complex& k, const Complex& kp, DecideOptions options = {})
      : k_(&k), kp_(&kp), family_(k, kp), sweep_(k, kp), options_(std::move(options)) {
    if (k.ambient_dim() != 2 || kp.ambient_dim() != 2) throw InputError("planar engine needs 2D complexes");
    upper_bound_ = 2.0 * (enclosing_radius(k) + enclosing_radius(kp));
  }

  const CurveFamily& family() const { return family_; }
  DecisionSweep& sweep() { return sweep_; }
  bool infinite() const { return sweep_.essential_mismatch(); }
  double upper_bound() const { return upper_bound_; }
  std::size_t decide_calls() const { return decide_calls_; }

  /// Memoized decision: H <= lambda on the whole circle.
  bool decide(double lambda) {
    auto it = memo_.find(lambda);
    if (it != memo_.end()) return it->second;
    ++decide_calls_;
    const bool r = sweep_.decide(lambda, options_);
    memo_.emplace(lambda, r);
    return r;
  }

  /// Smallest raw candidate accepted by the decision, by binary search over
  /// all candidates.
  MaxDistanceResult basic() {
    MaxDistanceResult res;
    if (infinite()) return infinite_result();
    if (decide(0.0)) return zero_result();
    const auto cand = raw_candidates(family_);
    std::vector<double> values;
    for (const auto& c : cand) values.push_back(c.value);
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const std::size_t idx = first_accepted(values);
    res.value = idx < values.size() ? values[idx] : upper_bound_;
    res.witness_theta = witness_for(cand, res.value);
    res.band = {idx > 0 ? values[idx - 1] : 0.0, res.value};
    res.decide_calls = decide_calls_;
    return res;
  }

  /// Band whose open interior holds no curve maximum and no intra-intersection.
  Band pre_refine() {
    if (pre_band_) return *pre_band_;
    std::vector<CandidateValue> s;
    const auto& cs = family_.curves();
    for (const auto& c : cs) detail::append_maxima(c, s);
    for (int simplex = 0; simplex < family_.simplex_count(); ++simplex) {
      const auto& mine = family_.curves_of(simplex);
      for (std::size_t a = 0; a < mine.size(); ++a)
        for (std::size_t b = a + 1; b < mine.size(); ++b)
          detail::append_intersections(cs[mine[a]], cs[mine[b]], s);
    }
    std::sort(s.begin(), s.end(), candidate_less);
    pre_set_size_ = s.size();
    std::vector<double> values;
    for (const auto& c : s) values.push_back(c.value);
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const std::size_t idx = first_accepted(values);
    Band band{idx > 0 ? values[idx - 1] : 0.0, idx < values.size() ? values[idx] : upper_bound_};
    pre_witness_ = witness_for(s, band.upper);
    pre_band_ = band;
    return band;
  }

  /// Size of the pre-refinement set (maxima plus intra-intersections).
  std::size_t pre_set_size() {
    pre_refine();
    return pre_set_size_;
  }

  /// True iff an inter-intersection of alpha's curves with curves avoiding
  /// alpha has its value in the open band.
  bool existence_test(int alpha, const Band& band) {
    const auto key = std::make_tuple(alpha, band.lower, band.upper);
    if (auto it = existence_memo_.find(key); it != existence_memo_.end()) return it->second;
    return existence_memo_[key] = scan_partners(alpha, band);
  }

  /// Alpha-candidates strictly inside the band, ascending (raw values).
  std::vector<CandidateValue> alpha_candidates(int alpha, const Band& band) const {
    std::vector<CandidateValue> out;
    const auto& cs = family_.curves();
    for (int ci : family_.curves_of(alpha)) {
      detail::append_maxima(cs[ci], out);
      for (std::size_t j = 0; j < cs.size(); ++j)
        if (static_cast<int>(j) != ci) detail::append_intersections(cs[ci], cs[j], out);
    }
    std::erase_if(out, [&](const CandidateValue& c) { return !(c.value > band.lower && c.value < band.upper); });
    std::sort(out.begin(), out.end(), candidate_less);
    return out;
  }

  /// Shrinks the band so that no alpha-candidate lies strictly inside.
  Band refine_band(int alpha, const Band& band, double* witness = nullptr) {
    const auto key = std::make_tuple(alpha, band.lower, band.upper);
    auto it = refine_memo_.find(key);
    if (it == refine_memo_.end()) {
      double w = std::numeric_limits<double>::quiet_NaN();
      const Band out = shrink(alpha, band, &w);
      it = refine_memo_.emplace(key, std::make_pair(out, w)).first;
    }
    if (witness && !std::isnan(it->second.second)) *witness = it->second.second;
    return it->second.first;
  }

  /// Randomized band refinement driver.
  MaxDistanceResult pruned(std::uint64_t seed) {
    if (infinite()) return infinite_result();
    if (decide(0.0)) return zero_result();
    MaxDistanceResult res;
    Band band = pre_refine();
    double witness = pre_witness_;
    std::vector<int> order(family_.simplex_count());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    for (int alpha : order) {
      ++res.existence_tests;
      if (!existence_test(alpha, band)) continue;
      ++res.refinements;
      band = refine_band(alpha, band, &witness);
    }
    res.value = band.upper;
    res.witness_theta = witness;
    res.band = band;
    res.decide_calls = decide_calls_;
    return res;
  }

 private:
  Band shrink(int alpha, const Band& band, double* witness) {
    const auto cand = alpha_candidates(alpha, band);
    if (cand.empty()) return band;
    std::vector<double> values;
    for (const auto& c : cand) values.push_back(c.value);
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const std::size_t idx = first_accepted(values);
    Band out = band;
    if (idx > 0) out.lower = values[idx - 1];
    if (idx < values.size()) {
      out.upper = values[idx];
      if (witness) *witness = witness_for(cand, out.upper);
    }
    return out;
  }

  bool scan_partners(int alpha, const Band& band) {
    arcs_cache_.assign(family_.curves().size(), std::nullopt);
    for (int tau = 0; tau < family_.simplex_count(); ++tau) {
      if (tau == alpha) continue;
      std::vector<int> red, blue;
      for (int c : family_.curves_of(alpha))
        if (!family_.curve(c).id.involves(tau)) red.push_back(c);
      for (int c : family_.curves_of(tau))
        if (!family_.curve(c).id.involves(alpha)) blue.push_back(c);
      if (red.empty() || blue.empty()) continue;
      if (red_blue_sweep(red, blue, band)) return true;
    }
    return false;
  }

  MaxDistanceResult infinite_result() const {
    MaxDistanceResult r;
    r.value = kInf;
    r.band = {kInf, kInf};
    return r;
  }
  MaxDistanceResult zero_result() const {
    MaxDistanceResult r;
    r.value = 0.0;
    r.band = {0.0, 0.0};
    r.decide_calls = decide_calls_;
    return r;
  }

  double bottleneck_at(double theta) const {
    return bottleneck_distance(compute_persistence(*k_, Direction::angle(theta)),
                               compute_persistence(*kp_, Direction::angle(theta)));
  }

  // Among candidates carrying `value` (within tolerance), the angle where H
  // comes closest to it: tied candidates need not all be realized.
  double witness_for(const std::vector<CandidateValue>& cand, double value) {
    const double tol = tolerances().value;
    double best = 0.0, gap = kInf;
    auto scan = [&](const std::vector<CandidateValue>& list) {
      for (const auto& c : list) {
        if (std::fabs(c.value - value) > tol) continue;
        const double g = std::fabs(bottleneck_at(c.theta) - value);
        if (g < gap) {
          gap = g;
          best = c.theta;
        }
        if (g <= tol) return;
      }
    };
    scan(cand);
    if (gap > tol) {
      if (!all_candidates_) all_candidates_ = raw_candidates(family_);
      scan(*all_candidates_);
    }
    return best;
  }

  // First index whose value is accepted (decide is monotone); size() if none.
  std::size_t first_accepted(const std::vector<double>& values) {
    std::size_t lo = 0, hi = values.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (decide(values[mid])) hi = mid; else lo = mid + 1;
    }
    return lo;
  }

  struct Arc {
    int curve;
    bool red;
    double lo, hi;
  };

  // Maximal angular intervals where the curve lies in [lower, upper].
  const std::vector<std::pair<double, double>>& band_arcs(int ci, const Band& band) {
    auto& slot = arcs_cache_[ci];
    if (slot) return *slot;
    const auto& c = family_.curve(ci);
    std::vector<double> cuts{0.0, kTwoPi};
    for (double l : {band.lower, band.upper})
      for (double t : threshold_crossings(c, l)) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::pair<double, double>> arcs;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k], b = cuts[k + 1];
      if (b <= a) continue;
      const double v = c.value(0.5 * (a + b));
      if (v < band.lower || v > band.upper) continue;
      if (!arcs.empty() && arcs.back().second == a) arcs.back().second = b;
      else arcs.emplace_back(a, b);
    }
    slot = std::move(arcs);
    return *slot;
  }

  // Plane sweep over the band's arcs; stops at the first red-blue crossing
  // whose value is strictly inside the band.
  bool red_blue_sweep(const std::vector<int>& red, const std::vector<int>& blue, const Band& band) {
    std::vector<Arc> arcs;
    for (int c : red)
      for (auto [a, b] : band_arcs(c, band)) arcs.push_back({c, true, a, b});
    for (int c : blue)
      for (auto [a, b] : band_arcs(c, band)) arcs.push_back({c, false, a, b});
    if (arcs.empty()) return false;
    const auto& tol = tolerances();
    std::set<double> events;
    for (const auto& a : arcs) {
      events.insert(a.lo);
      events.insert(a.hi);
    }
    std::set<std::pair<int, int>> checked;
    std::vector<int> status;
    const auto& cs = family_.curves();
    // Returns true on a red-blue hit; schedules later crossings as events.
    auto check = [&](int i, int j, double now) {
      const auto key = std::minmax(i, j);
      if (!checked.insert(key).second) return false;
      const Arc& x = arcs[i];
      const Arc& y = arcs[j];
      const double lo = std::max(x.lo, y.lo) - tol.angle, hi = std::min(x.hi, y.hi) + tol.angle;
      if (lo > hi) return false;
      for (const auto& e : curve_intersections(cs[x.curve], cs[y.curve])) {
        double th = e.theta;
        if (th < lo && th + kTwoPi <= hi) th += kTwoPi;
        if (th < lo || th > hi) continue;
        const bool interior = e.value > band.lower && e.value < band.upper;
        if (x.red != y.red) {
          if (interior && e.value > tol.value) return true;
        } else if (e.value > band.lower + tol.value && e.value < band.upper - tol.value) {
          throw PreconditionError("intra-intersection inside band");
        }
        if (th > now) events.insert(th);
      }
      return false;
    };
    while (!events.empty()) {
      const double now = *events.begin();
      events.erase(events.begin());
      const double next = events.empty() ? kTwoPi : *events.begin();
      const double probe = now + std::min(1e-9, 0.5 * (next - now));
      status.clear();
      for (std::size_t i = 0; i < arcs.size(); ++i)
        if (arcs[i].lo <= probe && arcs[i].hi >= now) status.push_back(static_cast<int>(i));
      auto val = [&](int i) { return cs[arcs[i].curve].value(std::clamp(probe, arcs[i].lo, arcs[i].hi)); };
      std::sort(status.begin(), status.end(), [&](int a, int b) {
        const double va = val(a), vb = val(b);
        return va != vb ? va < vb : a < b;
      });
      for (std::size_t p = 0; p + 1 < status.size(); ++p)
        if (check(status[p], status[p + 1], now)) return true;
    }
    return false;
  }

  const Complex* k_;
  const Complex* kp_;
  CurveFamily family_;
  DecisionSweep sweep_;
  DecideOptions options_;
  double upper_bound_ = 0.0;
  std::map<double, bool> memo_;
  std::map<std::tuple<int, double, double>, bool> existence_memo_;
  std::map<std::tuple<int, double, double>, std::pair<Band, double>> refine_memo_;
  std::size_t decide_calls_ = 0;
  std::optional<Band> pre_band_;
  double pre_witness_ = 0.0;
  std::size_t pre_set_size_ = 0;
  std::vector<std::optional<std::vector<std::pair<double, double>>>> arcs_cache_;
  std::optional<std::vector<CandidateValue>> all_candidates_;
};

inline MaxDistanceResult d_infty_basic(const Complex& k, const Complex& kp, const DecideOptions& opt = {}) {
  MaxDistance2D engine(k, kp, opt);
  return engine.basic();
}

inline MaxDistanceResult d_infty(const Complex& k, const Complex& kp, std::uint64_t seed, const DecideOptions& opt = {}) {
  MaxDistance2D engine(k, kp, opt);
  return engine.pruned(seed);
}

}  // namespace pht
