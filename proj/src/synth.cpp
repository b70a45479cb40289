#include "prefdist/synth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "prefdist/io.hpp"
#include "prefdist/rng.hpp"

namespace prefdist {

std::vector<Gamble> load_gamble_battery() {
  const double basic[8][2] = {{1, 10}, {2, 10}, {3, 10}, {4, 10}, {1, 12}, {2, 12}, {3, 12}, {4, 12}};
  std::vector<Gamble> out;
  for (double factor : {1.0, 2.0, 3.0})
    for (const auto& g : basic) out.push_back({g[0] * factor, g[1] * factor});
  for (double shift : {10.0, 20.0})
    for (const auto& g : basic) out.push_back({g[0] + shift, g[1] + shift});
  out.push_back({0, 32});
  out.push_back({0, 36});
  return out;
}

std::vector<Gamble> parse_battery(const std::string& text) {
  std::vector<Gamble> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto slash = item.find('/');
    if (slash == std::string::npos) throw Error(ErrorKind::Parse, "gamble '" + item + "' is not low/high");
    try {
      std::size_t used = 0;
      const double low = std::stod(item.substr(0, slash), &used);
      const double high = std::stod(item.substr(slash + 1));
      out.push_back({low, high});
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "gamble '" + item + "' is not low/high");
    }
  }
  if (out.empty()) throw Error(ErrorKind::Parse, "empty gamble battery");
  return out;
}

std::string UtilityFamily::label() const {
  std::ostringstream os;
  switch (kind) {
    case FamilyKind::linear: return "linear";
    case FamilyKind::power: os << "power"; break;
    case FamilyKind::exponential: os << "exponential"; break;
  }
  os << ':' << param_lo;
  if (param_hi != param_lo) os << ':' << param_hi;
  return os.str();
}

UtilityFamily parse_family(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream is(text);
  std::string p;
  while (std::getline(is, p, ':')) parts.push_back(p);
  if (parts.empty()) throw Error(ErrorKind::InvalidFamilyParameter, "empty family");

  UtilityFamily f;
  if (parts[0] == "linear") {
    if (parts.size() != 1) throw Error(ErrorKind::InvalidFamilyParameter, "linear takes no parameter");
    return f;
  }
  if (parts[0] == "power")
    f.kind = FamilyKind::power;
  else if (parts[0] == "exponential")
    f.kind = FamilyKind::exponential;
  else
    throw Error(ErrorKind::InvalidFamilyParameter, "unknown family '" + parts[0] + "'");
  if (parts.size() < 2 || parts.size() > 3)
    throw Error(ErrorKind::InvalidFamilyParameter, parts[0] + " needs one parameter or a range");
  try {
    f.param_lo = std::stod(parts[1]);
    f.param_hi = parts.size() == 3 ? std::stod(parts[2]) : f.param_lo;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidFamilyParameter, "bad parameter in '" + text + "'");
  }
  if (!std::isfinite(f.param_lo) || !std::isfinite(f.param_hi) || f.param_hi < f.param_lo)
    throw Error(ErrorKind::InvalidFamilyParameter, "bad parameter range in '" + text + "'");
  if (f.kind == FamilyKind::power && !(f.param_lo > 0.0))
    throw Error(ErrorKind::InvalidFamilyParameter, "power exponent must be positive");
  return f;
}

double UtilityCurve::operator()(double t) const {
  const double span = max_value - min_value;
  const double x = std::clamp((t - min_value) / span, 0.0, 1.0);
  switch (kind) {
    case FamilyKind::linear: return x;
    case FamilyKind::power: return std::pow(x, param);
    case FamilyKind::exponential:
      if (std::abs(param) < 1e-12) return x;
      return std::expm1(-param * span * x) / std::expm1(-param * span);
  }
  return x;
}

double UtilityCurve::inverse(double v) const {
  const double span = max_value - min_value;
  v = std::clamp(v, 0.0, 1.0);
  double x = v;
  switch (kind) {
    case FamilyKind::linear: break;
    case FamilyKind::power: x = std::pow(v, 1.0 / param); break;
    case FamilyKind::exponential:
      if (std::abs(param) >= 1e-12) x = -std::log1p(v * std::expm1(-param * span)) / (param * span);
      break;
  }
  return min_value + x * span;
}

double certainty_equivalent(const UtilityCurve& curve, const Gamble& g) {
  return curve.inverse((1.0 - g.prob) * curve(g.low) + g.prob * curve(g.high));
}

Subject SynthSubject::averaged() const {
  Subject s{id, {}};
  for (std::size_t q = 0; q < gambles.size(); ++q) {
    double sum = 0.0;
    for (double r : responses[q]) sum += r;
    s.answers.push_back(make_answer(gambles[q].low, gambles[q].high, gambles[q].prob,
                                    sum / static_cast<double>(responses[q].size())));
  }
  return s;
}

std::vector<SynthSubject> synthesize(const SynthOptions& o) {
  if (o.count < 1) throw Error(ErrorKind::InvalidArgument, "synth needs count >= 1");
  if (o.families.empty()) throw Error(ErrorKind::InvalidFamilyParameter, "no utility family given");
  if (!(o.noise >= 0.0)) throw Error(ErrorKind::InvalidArgument, "noise must be nonnegative");
  if (o.repeats < 1) throw Error(ErrorKind::InvalidArgument, "repeats must be >= 1");
  const OutcomeSpace space(o.grid);

  std::vector<Gamble> battery;
  for (const Gamble& g : o.battery.empty() ? load_gamble_battery() : o.battery) {
    const bool inside = g.low >= o.grid.min_value - kTolerance && g.high <= o.grid.max_value + kTolerance;
    if (inside) battery.push_back(g);
    else if (!o.battery.empty())
      throw Error(ErrorKind::OutOfRange, "gamble outside the grid");
  }

  const std::size_t width = std::to_string(o.count).size();
  std::vector<SynthSubject> out;
  const Rng root(o.seed);
  for (std::size_t s = 0; s < o.count; ++s) {
    Rng rng = root.substream(s);
    const UtilityFamily& fam = o.families[s % o.families.size()];
    SynthSubject subj;
    std::string num = std::to_string(s + 1);
    subj.id = "S" + std::string(width - num.size(), '0') + num;
    subj.family = fam.label();
    subj.truth = UtilityCurve{fam.kind, fam.param_lo + (fam.param_hi - fam.param_lo) * rng.uniform(),
                              o.grid.min_value, o.grid.max_value};
    if (fam.kind == FamilyKind::linear) subj.truth.param = 1.0;
    subj.gambles = battery;
    for (const Gamble& g : battery) {
      const double ce = certainty_equivalent(subj.truth, g);
      std::vector<double> resp;
      for (std::size_t r = 0; r < o.repeats; ++r) {
        double v = ce + (o.noise > 0.0 ? o.noise * rng.normal() : 0.0);
        v = std::clamp(v, g.low, g.high);
        resp.push_back(discretize(v, o.grid).snapped);
      }
      subj.responses.push_back(std::move(resp));
    }
    out.push_back(std::move(subj));
  }
  return out;
}

void write_synth_answers_csv(std::ostream& out, const std::vector<SynthSubject>& subjects) {
  out << "subject_id,m,n,prob,ce\n";
  for (const auto& s : subjects)
    for (std::size_t q = 0; q < s.gambles.size(); ++q)
      for (double r : s.responses[q])
        out << s.id << ',' << format_fixed(s.gambles[q].low, 6) << ',' << format_fixed(s.gambles[q].high, 6) << ','
            << format_fixed(s.gambles[q].prob, 6) << ',' << format_fixed(r, 6) << '\n';
}

void write_truth_csv(std::ostream& out, const std::vector<SynthSubject>& subjects, const Grid& grid) {
  out << "subject_id,family,parameter,outcome,utility\n";
  const std::size_t n = grid.size();
  for (const auto& s : subjects)
    for (std::size_t i = 0; i < n; ++i)
      out << s.id << ',' << s.family << ',' << format_fixed(s.truth.param, 6) << ',' << format_fixed(grid.value_at(i), 6)
          << ',' << format_fixed(s.truth(grid.value_at(i)), 9) << '\n';
}

}  // namespace prefdist
