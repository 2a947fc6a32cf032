#include "ems/symbol.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ems {

namespace {

struct Token {
  std::string text;
  std::size_t start = 0;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back({line.substr(i, j - i), i});
    i = j;
  }
  return out;
}

std::string render_block(const RhoBlock& blk) {
  HalfInt min_b = blk.rows.front().B, max_a = blk.rows.front().A;
  for (const auto& r : blk.rows) {
    min_b = std::min(min_b, r.B);
    max_a = std::max(max_a, r.A);
  }
  std::vector<HalfInt> cols;
  for (HalfInt c = min_b; c <= max_a; c += HalfInt::whole(1)) cols.push_back(c);
  std::size_t w = 1;
  for (auto c : cols) w = std::max(w, to_string(c).size());
  auto cell = [&](const std::string& s) {
    return std::string(w - s.size(), ' ') + s;
  };
  std::ostringstream os;
  os << "rho " << to_string(blk.rho) << "\n";
  for (std::size_t k = 0; k < cols.size(); ++k)
    os << (k ? "  " : "") << cell(to_string(cols[k]));
  os << "\n";
  for (const auto& r : blk.rows) {
    if (2 * r.l > r.b())
      throw std::invalid_argument("row with b < 2l cannot be rendered");
    std::string line;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      HalfInt c = cols[k];
      std::string glyph = " ";
      if (c >= r.B && c <= r.A) {
        std::int64_t off = (c.twice - r.B.twice) / 2;  // 0-based column within the row
        std::int64_t from_end = (r.A.twice - c.twice) / 2;
        if (off < r.l)
          glyph = "<";
        else if (from_end < r.l)
          glyph = ">";
        else {
          bool plus = (r.eta > 0) == ((off - r.l) % 2 == 0);
          glyph = plus ? "+" : "-";
        }
      }
      line += (k ? "  " : "") + cell(glyph);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_symbol(const ExtendedMultiSegment& e) {
  std::ostringstream os;
  os << "group " << to_string(e.ctx.family) << " rank " << e.ctx.rank << "\n";
  for (const auto& blk : e.blocks) os << render_block(blk);
  return os.str();
}

ExtendedMultiSegment parse_symbol(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
  }
  std::size_t ln = 0;
  auto next_nonempty = [&]() -> std::optional<std::string> {
    while (ln < lines.size()) {
      if (!tokenize(lines[ln]).empty()) return lines[ln];
      ++ln;
    }
    return std::nullopt;
  };

  auto header = next_nonempty();
  if (!header) throw std::invalid_argument("empty symbol block");
  auto head_toks = tokenize(*header);
  if (head_toks.size() != 4 || head_toks[0].text != "group" || head_toks[2].text != "rank")
    throw std::invalid_argument("symbol block must start with 'group <family> rank <n>'");
  GroupContext ctx;
  if (head_toks[1].text == "Sp")
    ctx.family = Family::Sp;
  else if (head_toks[1].text == "SOodd")
    ctx.family = Family::SO_odd;
  else
    throw std::invalid_argument("unknown group family: '" + head_toks[1].text + "'");
  ctx.rank = std::stoi(head_toks[3].text);
  ++ln;

  std::vector<RhoBlock> blocks;
  while (auto line = next_nonempty()) {
    auto toks = tokenize(*line);
    if (toks.empty() || toks[0].text != "rho")
      throw std::invalid_argument("expected 'rho <label>' line, got: " + *line);
    if (toks.size() != 2) throw std::invalid_argument("malformed rho line: " + *line);
    RhoBlock blk;
    blk.rho = parse_rho(toks[1].text);
    ++ln;

    auto label_line = next_nonempty();
    if (!label_line) throw std::invalid_argument("missing column label line");
    auto labels = tokenize(*label_line);
    std::vector<HalfInt> cols;
    std::vector<std::size_t> ends;  // end position of each label field
    for (const auto& t : labels) {
      cols.push_back(parse_halfint(t.text));
      ends.push_back(t.start + t.text.size());
    }
    for (std::size_t k = 1; k < cols.size(); ++k)
      if (!(cols[k - 1] < cols[k]))
        throw std::invalid_argument("column labels must be strictly increasing");
    ++ln;

    // Boundaries halfway between consecutive label fields.
    auto column_of = [&](std::size_t pos) -> std::size_t {
      std::size_t k = 0;
      while (k + 1 < cols.size() && pos >= (ends[k] + (labels[k + 1].start)) / 2 + 1) ++k;
      return k;
    };

    while (ln < lines.size()) {
      auto toks2 = tokenize(lines[ln]);
      if (toks2.empty()) break;
      if (toks2[0].text == "rho") break;
      // One glyph row.
      std::vector<char> glyph(cols.size(), ' ');
      for (const auto& t : toks2) {
        if (t.text.size() != 1 || std::string("<>+-").find(t.text[0]) == std::string::npos)
          throw std::invalid_argument("unexpected glyph '" + t.text + "' in symbol row");
        std::size_t k = column_of(t.start);
        if (glyph[k] != ' ')
          throw std::invalid_argument("two glyphs fall into one column (ragged row)");
        glyph[k] = t.text[0];
      }
      std::size_t first = 0;
      while (first < glyph.size() && glyph[first] == ' ') ++first;
      std::size_t last = glyph.size();
      while (last > first && glyph[last - 1] == ' ') --last;
      if (first == last) throw std::invalid_argument("empty symbol row");
      for (std::size_t k = first; k < last; ++k)
        if (glyph[k] == ' ')
          throw std::invalid_argument("gap inside a symbol row (ragged row)");
      std::size_t lead = first;
      while (lead < last && glyph[lead] == '<') ++lead;
      std::size_t trail = last;
      while (trail > lead && glyph[trail - 1] == '>') --trail;
      std::size_t n_lead = lead - first, n_trail = last - trail;
      if (n_lead != n_trail)
        throw std::invalid_argument("'<' and '>' counts differ in a symbol row");
      int eta = +1;
      for (std::size_t k = lead; k < trail; ++k) {
        char expect_first = glyph[lead];
        if (glyph[k] == '<' || glyph[k] == '>')
          throw std::invalid_argument("cap glyph inside the sign run");
        bool plus = glyph[k] == '+';
        bool expect_plus = (expect_first == '+') == ((k - lead) % 2 == 0);
        if (plus != expect_plus)
          throw std::invalid_argument("interior signs do not alternate");
      }
      if (trail > lead) eta = (glyph[lead] == '+') ? +1 : -1;
      ExtendedSegment r;
      r.B = cols[first];
      r.A = cols[last - 1];
      r.l = int(n_lead);
      r.eta = eta;
      blk.rows.push_back(r);
      ++ln;
    }
    if (blk.rows.empty()) throw std::invalid_argument("rho block without rows");
    blocks.push_back(std::move(blk));
  }
  return make_multisegment(ctx, std::move(blocks));
}

}  // namespace ems
