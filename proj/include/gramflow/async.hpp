#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gramflow/derivation.hpp"
#include "gramflow/grammar.hpp"
#include "gramflow/rng.hpp"

namespace gramflow {

// One site of the evolving window. Residues present since time zero keep
// their original site label; anything written by a production is marked
// modified and carries no label.
struct Residue {
  Symbol symbol;
  std::optional<int> origin;
  bool modified = false;
};

struct WindowState {
  std::vector<Residue> residues;
  double time = 0.0;
  int half_width = 0;  // N: initial window is sites -N..N
  std::uint64_t event_count = 0;
};

struct EventRecord {
  double time = 0.0;
  std::size_t position = 0;
  std::size_t production_index = 0;
  std::size_t removed = 0;
  std::size_t inserted = 0;
};

// Window at time zero over xi, origins -N..N. xi must have odd length
// and every production of g must carry a positive rate.
WindowState init_window(const Word& xi, const Grammar& g);

// Every lhs occurrence fully inside the window, with its production rate.
std::vector<std::pair<Redex, double>> scan_rates(const WindowState& w,
                                                 const Grammar& g);

// One kinetic Monte Carlo event: exponential waiting time at the total
// rate, then a redex chosen proportionally to its rate. Returns nothing
// once no production applies.
std::optional<EventRecord> gillespie_step(WindowState& w, const Grammar& g,
                                          Rng& rng);

struct SimulationResult {
  WindowState window;
  std::vector<EventRecord> events;
};

SimulationResult simulate(const Word& xi, const Grammar& g, double t_max,
                          std::uint64_t seed);

// Nearest unmodified original sites on each side of the origin, or
// nothing when either side has none left (overflow).
std::optional<std::pair<int, int>> observer_pair(const WindowState& w);

// Initial-window specification: a fixed word of length 2N+1, a motif
// tiled periodically to length 2N+1, or iid-uniform terminals.
struct XiSpec {
  enum class Kind { fixed, motif, iid_uniform };
  Kind kind = Kind::iid_uniform;
  Word word;  // fixed or motif payload

  static XiSpec fixed(Word w) { return {Kind::fixed, std::move(w)}; }
  static XiSpec motif(Word w) { return {Kind::motif, std::move(w)}; }
  static XiSpec iid_uniform() { return {Kind::iid_uniform, {}}; }
};

Word build_xi(const XiSpec& spec, int half_width, const Grammar& g, Rng& rng);

struct ObserverCell {
  std::uint64_t count = 0;
  double mu_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct ObserverLaw {
  double t = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t overflow_count = 0;
  std::map<std::pair<int, int>, std::uint64_t> counts;

  std::uint64_t tallied() const { return trials - overflow_count; }
  // Normalised over non-overflow trials, with Wilson 95% intervals.
  std::map<std::pair<int, int>, ObserverCell> normalized() const;
};

// Monte Carlo estimate of the observer-pair law at time t over
// independent trials seeded seed + trial index.
ObserverLaw estimate_mu(const XiSpec& xi, int half_width, const Grammar& g,
                        double t, std::uint64_t trials, std::uint64_t seed);

double total_variation(const ObserverLaw& a, const ObserverLaw& b);

struct TvRow {
  int n_from = 0;
  int n_to = 0;
  double tv = 0.0;
};

// Estimates the law at each half-width in ascending n_list with a common
// seed schedule and reports successive total-variation distances.
std::vector<TvRow> convergence_in_n(const XiSpec& xi, const Grammar& g,
                                    double t, std::uint64_t trials,
                                    const std::vector<int>& n_list,
                                    std::uint64_t seed);

std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t n);

}  // namespace gramflow
