#pragma once

// Finite Kripke frames and the brute-force truth oracles every other module is
// checked against.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sahlkracht/core.hpp"

namespace sahlkracht {

/// Set of worlds as a bitmask; frames are limited to 64 worlds.
using WorldSet = std::uint64_t;
inline constexpr int kMaxWorlds = 64;

inline bool contains(WorldSet s, int w) { return (s >> w) & 1u; }
inline WorldSet singleton(int w) { return WorldSet{1} << w; }

class Frame {
 public:
  explicit Frame(int worlds = 1);

  int size() const { return n_; }
  WorldSet all() const { return n_ == 64 ? ~WorldSet{0} : (singleton(n_) - 1); }

  void add_edge(Label l, int from, int to);
  bool has_edge(Label l, int from, int to) const;
  /// Declare a relation without adding edges.
  void touch(Label l);
  WorldSet successors(Label l, int w) const;

  /// Worlds with some l-successor in a.
  WorldSet inv(Label l, WorldSet a) const;
  /// Worlds all of whose l-successors are in a.
  WorldSet ibox(Label l, WorldSet a) const;
  /// l-successors of worlds in a.
  WorldSet img(Label l, WorldSet a) const;
  /// Worlds reachable from w through any relation, w included.
  WorldSet reachable(int w) const;

  std::vector<Label> labels() const;
  std::size_t edge_count() const;

  /// Literal `n; k: (i,j) (i,j); k2: ...`.
  std::string to_string() const;
  static Frame parse(std::string_view text);

  friend bool operator==(const Frame& a, const Frame& b);

 private:
  const std::vector<WorldSet>* rel(Label l) const;

  int n_;
  std::map<int, std::vector<WorldSet>> rel_;
};

using Valuation = std::map<PropVar, WorldSet>;

/// Assignment of worlds to object variables.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<ObjVar, int>> xs);

  void set(ObjVar x, int w);
  bool has(ObjVar x) const;
  /// Throws UnboundVariable.
  int get(ObjVar x) const;
  void unset(ObjVar x);

 private:
  std::vector<int> slot_;
};

struct Model {
  Frame frame;
  Valuation valuation;
};

/// Worlds where f is true. Throws UnboundVariable for a variable outside the
/// valuation.
WorldSet modal_extension(const Frame& F, const Valuation& v, const Modal& f);
bool modal_truth(const Model& M, int w, const Modal& f);

/// f holds at w under every valuation of its variables.
bool valid_at_point(const Frame& F, int w, const Modal& f);
/// As above; pool must cover the variables of f (UnboundVariable otherwise).
/// Variables of the pool that do not occur in f do not change the answer.
bool valid_at_point(const Frame& F, int w, const Modal& f, const std::vector<PropVar>& pool);

/// Classical evaluation. Set variables in membership atoms are looked up in
/// `v` when given.
bool fo_eval(const Frame& F, const Env& env, const Fo& f, const Valuation* v = nullptr);

/// Every frame with 1..max_worlds worlds over the given relations.
std::vector<Frame> enum_frames(int max_worlds, const std::vector<Label>& labels);
/// Streaming variant; stop early by returning false.
void for_each_frame(int max_worlds, const std::vector<Label>& labels,
                    const std::function<bool(const Frame&)>& fn);
/// Uniform world count in 1..max_worlds, each edge present with probability 1/2.
std::vector<Frame> sample_frames(int max_worlds, const std::vector<Label>& labels,
                                 std::size_t n, std::uint64_t seed);

struct Budget {
  int exhaustive_worlds = 3;
  std::size_t samples = 0;
  int sample_worlds = 4;
  std::uint64_t seed = 0;
  /// Relations to enumerate; empty means the labels of the inputs.
  std::vector<Label> labels;

  /// Exhaustive up to 3 worlds for one relation; otherwise exhaustive up to
  /// 2 worlds plus 10^4 sampled frames of at most 4 worlds.
  static Budget standard(std::size_t relation_count);
};

struct Counterexample {
  Frame frame;
  int world = 0;
  bool left = false;
  bool right = false;
};

struct Report {
  bool passed = true;
  std::size_t frames = 0;
  std::size_t points = 0;
  std::vector<Label> labels;
  std::optional<Counterexample> counterexample;
};

/// Compares validity of phi at w with alpha at x0 := w (alpha's single free
/// variable) over the budget.
Report check_correspondence(const Modal& phi, const Fo& alpha,
                            std::optional<Budget> budget = std::nullopt);
/// Point-wise frame equivalence of two modal formulas.
Report check_modal_equivalence(const Modal& a, const Modal& b,
                               std::optional<Budget> budget = std::nullopt);
/// Equivalence of two formulas with one free variable each (possibly
/// different variables).
Report check_fo_equivalence(const Fo& a, const Fo& b,
                            std::optional<Budget> budget = std::nullopt);

}  // namespace sahlkracht
