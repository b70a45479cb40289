#include "prefdist/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace prefdist {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& s, std::size_t line, const char* field) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    parse_error(line, std::string("bad ") + field + " value '" + s + "'");
  return v;
}

bool skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

}  // namespace

std::string format_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::vector<Subject> read_answers_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;

  struct Group {
    double low, high, prob, sum;
    std::size_t count;
  };
  std::vector<std::string> subject_order;
  std::map<std::string, std::vector<Group>> groups;

  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    auto fields = split(line);
    if (!header_seen) {
      header_seen = true;
      const std::vector<std::string> expected{"subject_id", "m", "n", "prob", "ce"};
      if (fields != expected) parse_error(lineno, "expected header subject_id,m,n,prob,ce");
      continue;
    }
    if (fields.size() != 5) parse_error(lineno, "expected 5 fields, got " + std::to_string(fields.size()));
    if (fields[0].empty()) parse_error(lineno, "empty subject id");
    const double low = parse_double(fields[1], lineno, "m");
    const double high = parse_double(fields[2], lineno, "n");
    const double prob = fields[3].empty() ? 0.5 : parse_double(fields[3], lineno, "prob");
    const double ce = parse_double(fields[4], lineno, "ce");
    try {
      make_answer(low, high, prob, ce);
    } catch (const Error& e) {
      parse_error(lineno, e.what());
    }
    auto [it, inserted] = groups.try_emplace(fields[0]);
    if (inserted) subject_order.push_back(fields[0]);
    auto& list = it->second;
    auto g = std::find_if(list.begin(), list.end(),
                          [&](const Group& x) { return x.low == low && x.high == high && x.prob == prob; });
    if (g == list.end())
      list.push_back({low, high, prob, ce, 1});
    else {
      g->sum += ce;
      ++g->count;
    }
  }

  std::vector<Subject> out;
  for (const auto& id : subject_order) {
    Subject s{id, {}};
    for (const Group& g : groups[id])
      s.answers.push_back(make_answer(g.low, g.high, g.prob, g.sum / static_cast<double>(g.count)));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Subject> read_answers_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return read_answers_csv(in);
}

void write_answers_csv(std::ostream& out, const std::vector<Subject>& subjects) {
  out << "subject_id,m,n,prob,ce\n";
  for (const auto& s : subjects)
    for (const auto& a : s.answers)
      out << s.id << ',' << format_fixed(a.low, 6) << ',' << format_fixed(a.high, 6) << ',' << format_fixed(a.prob, 6)
          << ',' << format_fixed(a.ce, 6) << '\n';
}

ConstraintSystem read_constraint_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto n = j.at("n").get<std::size_t>();
    std::optional<Grid> grid;
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      grid = Grid{g.at("min").get<double>(), g.at("max").get<double>(), g.at("granularity").get<double>()};
    }
    std::optional<Anchors> anchors;
    if (j.contains("anchors"))
      anchors = Anchors{j.at("anchors").at("worst").get<std::size_t>(), j.at("anchors").at("best").get<std::size_t>()};
    std::vector<LinearConstraint> cons;
    for (const auto& c : j.at("constraints")) {
      std::vector<Term> terms;
      for (const auto& pair : c.at("coeffs")) {
        if (!pair.is_array() || pair.size() != 2) throw Error(ErrorKind::Parse, "coeffs entries must be [index, value]");
        terms.push_back({pair[0].get<std::size_t>(), pair[1].get<double>()});
      }
      const std::string rel = c.at("relation").get<std::string>();
      if (rel != "le" && rel != "eq") throw Error(ErrorKind::Parse, "relation must be \"le\" or \"eq\"");
      cons.emplace_back(std::move(terms), rel == "eq" ? Relation::EQ : Relation::LE, c.at("rhs").get<double>());
    }
    OutcomeSpace space = grid ? OutcomeSpace(n, *grid) : OutcomeSpace(n);
    return ConstraintSystem(std::move(space), std::move(cons), anchors);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("constraint json: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    throw Error(ErrorKind::Parse, std::string("constraint json: ") + e.what());
  }
}

std::string write_constraint_json(const ConstraintSystem& system) {
  nlohmann::json j;
  j["n"] = system.space().size();
  if (const auto& g = system.space().grid())
    j["grid"] = {{"min", g->min_value}, {"max", g->max_value}, {"granularity", g->granularity}};
  if (const auto& a = system.anchors()) j["anchors"] = {{"worst", a->worst}, {"best", a->best}};
  j["constraints"] = nlohmann::json::array();
  for (const auto& c : system.constraints()) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Term& t : c.terms()) coeffs.push_back({t.index, t.coeff});
    j["constraints"].push_back(
        {{"coeffs", coeffs}, {"relation", c.relation() == Relation::EQ ? "eq" : "le"}, {"rhs", c.rhs()}});
  }
  return j.dump(1) + "\n";
}

void write_matrix_csv(std::ostream& out, const DissimilarityMatrix& m, bool std_errors) {
  for (const auto& id : m.ids()) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.ids()[i];
    for (std::size_t j = 0; j < m.size(); ++j) {
      const DistanceEstimate e = m.at(i, j);
      out << ',' << format_fixed(std_errors ? e.std_error : e.mean, 6);
    }
    out << '\n';
  }
}

void write_self_distance_csv(std::ostream& out, const DissimilarityMatrix& m) {
  out << "subject_id,mean,std_error\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& e = m.self_distance(i);
    out << m.ids()[i] << ',' << format_fixed(e.mean, 6) << ',' << format_fixed(e.std_error, 6) << '\n';
  }
}

MatrixCsv read_matrix_csv(std::istream& in) {
  MatrixCsv out;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    auto fields = split(line);
    if (!header) {
      header = true;
      if (fields.size() < 2 || !fields[0].empty()) parse_error(lineno, "header must start with an empty cell");
      out.ids.assign(fields.begin() + 1, fields.end());
      continue;
    }
    if (fields.size() != out.ids.size() + 1) parse_error(lineno, "row length does not match header");
    const std::size_t r = out.values.size();
    if (r >= out.ids.size()) parse_error(lineno, "more rows than columns");
    if (fields[0] != out.ids[r]) parse_error(lineno, "row id '" + fields[0] + "' does not match column id");
    std::vector<double> row;
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const double v = parse_double(fields[c], lineno, "distance");
      if (v < 0.0) parse_error(lineno, "negative distance");
      row.push_back(v);
    }
    out.values.push_back(std::move(row));
  }
  if (!header) throw Error(ErrorKind::Parse, "empty matrix file");
  if (out.values.size() != out.ids.size()) throw Error(ErrorKind::Parse, "matrix is not square");
  for (std::size_t i = 0; i < out.ids.size(); ++i)
    for (std::size_t j = i + 1; j < out.ids.size(); ++j)
      if (out.values[i][j] != out.values[j][i])
        throw Error(ErrorKind::Parse, "matrix is not symmetric at (" + out.ids[i] + ", " + out.ids[j] + ")");
  return out;
}

}  // namespace prefdist
