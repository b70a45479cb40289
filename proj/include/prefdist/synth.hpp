#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prefdist/elicitation.hpp"
#include "prefdist/model.hpp"

namespace prefdist {

/// A 50/50 (or `prob`) gamble between `low` and `high` years.
struct Gamble {
  double low;
  double high;
  double prob = 0.5;
  bool operator==(const Gamble&) const = default;
};

/// The 42 standard-gamble questions, column by column: Basic, Times 2,
/// Times 3, Plus 10, Plus 20, Zero.
std::vector<Gamble> load_gamble_battery();

/// Parses "1/10,2/10,0/12"; each item is low/high.
std::vector<Gamble> parse_battery(const std::string& text);

enum class FamilyKind { linear, power, exponential };

/// A family of utility curves. The shape parameter is drawn uniformly from
/// [param_lo, param_hi] (equal bounds fix it).
struct UtilityFamily {
  FamilyKind kind = FamilyKind::linear;
  double param_lo = 1.0;
  double param_hi = 1.0;
  std::string label() const;
};

/// "linear", "power:G", "power:G1:G2", "exponential:R", "exponential:R1:R2".
/// Power needs G > 0; exponential rates are per unit of the outcome scale
/// (negative means risk seeking).
UtilityFamily parse_family(const std::string& text);

/// A normalized curve on [min, max]: u(min) = 0, u(max) = 1, increasing.
struct UtilityCurve {
  FamilyKind kind = FamilyKind::linear;
  double param = 1.0;
  double min_value = 0.0;
  double max_value = 1.0;

  double operator()(double t) const;
  double inverse(double v) const;
};

double certainty_equivalent(const UtilityCurve& curve, const Gamble& g);

struct SynthOptions {
  std::size_t count = 1;
  std::vector<UtilityFamily> families{UtilityFamily{}};
  double noise = 0.0;  // standard deviation of additive CE noise
  std::uint64_t seed = 0;
  Grid grid{};
  std::vector<Gamble> battery;  // empty: built-in battery restricted to the grid
  std::size_t repeats = 1;      // responses per question
};

struct SynthSubject {
  std::string id;
  std::string family;
  UtilityCurve truth;
  std::vector<Gamble> gambles;
  std::vector<std::vector<double>> responses;  // per gamble, grid-rounded

  /// The subject as ingestion sees it (responses averaged).
  Subject averaged() const;
};

/// Subject s uses family s mod |families| and stream substream(s) of `seed`.
std::vector<SynthSubject> synthesize(const SynthOptions& options);

void write_synth_answers_csv(std::ostream& out, const std::vector<SynthSubject>& subjects);
/// Long format: subject_id,family,parameter,outcome,utility on every grid point.
void write_truth_csv(std::ostream& out, const std::vector<SynthSubject>& subjects, const Grid& grid);

}  // namespace prefdist
