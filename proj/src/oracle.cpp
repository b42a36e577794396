#include "wfltl/oracle.hpp"

#include "wfltl/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <sstream>

namespace wfltl::oracle {

std::optional<LassoTrace> enumerate_sat(const ltl::Formula &f, const EnumerationSpec &spec) {
  if (spec.alphabet.size() > kMaxAlphabet)
    throw Error("alphabet has " + std::to_string(spec.alphabet.size()) + " propositions; limit is " +
                std::to_string(kMaxAlphabet));
  if (spec.max_total == 0 || spec.max_total > kMaxTotal)
    throw Error("max_total must be in 1.." + std::to_string(kMaxTotal));
  for (const auto &a : ltl::atoms(f))
    if (!spec.alphabet.count(a))
      throw Error("proposition '" + a + "' is not in the alphabet");

  const std::vector<std::string> alphabet(spec.alphabet.begin(), spec.alphabet.end());
  const std::size_t width = alphabet.size();
  for (std::size_t prefix_len = 0; prefix_len < spec.max_total; ++prefix_len) {
    for (std::size_t loop_len = 1; prefix_len + loop_len <= spec.max_total; ++loop_len) {
      const std::size_t positions = prefix_len + loop_len;
      const std::size_t bits = positions * width;
      const std::uint64_t last =
          bits >= 64 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << bits) - 1;
      LassoTrace trace;
      trace.prefix.resize(prefix_len);
      trace.loop.resize(loop_len);
      for (std::uint64_t code = 0;; ++code) {
        for (std::size_t pos = 0; pos < positions; ++pos) {
          PropSet &letter = pos < prefix_len ? trace.prefix[pos] : trace.loop[pos - prefix_len];
          letter.clear();
          for (std::size_t idx = 0; idx < width; ++idx)
            if ((code >> (pos * width + idx)) & 1u)
              letter.insert(alphabet[idx]);
        }
        if (ltl::evaluate(f, trace, 0))
          return trace;
        if (code == last)
          break;
      }
    }
  }
  return std::nullopt;
}

ExplainReport explain(const LassoTrace &witness, const CompilationUnit &cu) {
  require_well_formed(witness);
  if (!ltl::evaluate(model_formula(cu), witness, 0))
    throw Error("invalid witness: trace does not satisfy the workflow model");

  ExplainReport report;
  report.loop_start = witness.prefix.size();
  for (std::size_t i = 0; i < witness.total(); ++i) {
    const PropSet &letter = witness.at(i);
    ExplainRow row;
    row.position = i;
    row.in_loop = i >= report.loop_start;
    for (const auto &p : cu.places)
      if (letter.count(p.name))
        row.places.push_back(p.name);
    for (const auto &t : cu.transitions)
      if (letter.count(t))
        row.transitions.push_back(t);
    for (const auto &e : cu.exceptions)
      if (letter.count(e))
        row.exceptions.push_back(e);
    report.rows.push_back(std::move(row));
  }

  auto everywhere_in_loop = [&](const std::string &name) {
    return std::all_of(witness.loop.begin(), witness.loop.end(),
                       [&](const PropSet &s) { return s.count(name) > 0; });
  };
  for (const auto &p : cu.places) {
    if (!everywhere_in_loop(p.name))
      continue;
    if (p.kind == PlaceKind::Activity || p.kind == PlaceKind::Start)
      report.divergent.push_back(p.name);
    else if (p.kind == PlaceKind::End)
      report.terminated = true;
  }
  return report;
}

namespace {

std::string join(const std::vector<std::string> &items) {
  if (items.empty())
    return "-";
  std::string out;
  for (const auto &s : items) {
    if (!out.empty())
      out += ' ';
    out += s;
  }
  return out;
}

} // namespace

std::string render_text(const ExplainReport &report) {
  std::vector<std::array<std::string, 5>> cells;
  cells.push_back({"pos", "part", "places", "transitions", "exceptions"});
  for (const auto &r : report.rows)
    cells.push_back({std::to_string(r.position), r.in_loop ? "loop" : "prefix", join(r.places),
                     join(r.transitions), join(r.exceptions)});
  std::array<std::size_t, 5> widths{};
  for (const auto &row : cells)
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());

  std::ostringstream os;
  for (const auto &row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size())
        line += std::string(widths[c] - row[c].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ')
      line.pop_back();
    os << line << '\n';
  }
  os << "loop returns to position " << report.loop_start << '\n';
  os << "divergent: " << (report.divergent.empty() ? "none" : join(report.divergent)) << '\n';
  if (report.terminated)
    os << "terminated: end place holds throughout the loop\n";
  return os.str();
}

std::string render_json(const LassoTrace &witness, const ExplainReport &report) {
  auto rows = [](const std::vector<PropSet> &part) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &letter : part)
      arr.push_back(std::vector<std::string>(letter.begin(), letter.end()));
    return arr;
  };
  nlohmann::ordered_json j;
  j["prefix"] = rows(witness.prefix);
  j["loop"] = rows(witness.loop);
  j["divergent"] = report.divergent;
  return j.dump(2);
}

} // namespace wfltl::oracle
