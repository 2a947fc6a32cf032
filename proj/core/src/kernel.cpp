#include "ems/kernel.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ems {

RowPat pattern_of(const ExtendedSegment& row) {
  RowPat p{row.A.twice, row.B.twice, row.l, row.eta};
  if ((p.A2 - p.B2) % 2 == 0 && 2 * p.l == p.b()) p.eta = +1;
  return p;
}

ExtendedSegment row_of(const RowPat& p) {
  return ExtendedSegment{HalfInt(p.A2), HalfInt(p.B2), p.l, p.eta};
}

std::string to_string(const RowPat& p) {
  return "[" + to_string(HalfInt(p.A2)) + "," + to_string(HalfInt(p.B2)) + "] " +
         std::to_string(p.l) + " " + (p.eta > 0 ? "+" : "-");
}

int sign_factor(const RowPat& p) { return sign_factor(row_of(p)); }

std::string gap_ui(const RowPat& i, const RowPat& j) {
  return "UI " + to_string(i) + " | " + to_string(j);
}
std::string gap_c(const RowPat& x, const RowPat& y) {
  return "C " + to_string(x) + " | " + to_string(y);
}
std::string gap_inv_single(const RowPat& u, std::int64_t splitA2) {
  return "UIINV " + to_string(u) + " split " + to_string(HalfInt(splitA2));
}
std::string gap_inv_pair(const RowPat& u, const RowPat& v) {
  return "UIINVP " + to_string(u) + " | " + to_string(v);
}

namespace {

void check_row_pat(const RowPat& p, const std::string& where) {
  if ((p.A2 - p.B2) % 2 != 0 || p.A2 < p.B2)
    throw std::invalid_argument(where + ": malformed segment " + to_string(p));
  if (p.l < 0 || 2 * p.l > p.b())
    throw std::invalid_argument(where + ": l out of range in " + to_string(p));
  if (p.eta != 1 && p.eta != -1)
    throw std::invalid_argument(where + ": eta out of range in " + to_string(p));
  if (2 * p.l == p.b() && p.eta != +1)
    throw std::invalid_argument(where + ": non-canonical eta in " + to_string(p));
}

RowPat canon(RowPat p) {
  if (2 * p.l == p.b()) p.eta = +1;
  return p;
}

}  // namespace

KernelTable::UILookup KernelTable::lookup_ui(const RowPat& i, const RowPat& j) const {
  auto it = ui_.find({canon(i), canon(j)});
  if (it == ui_.end()) return {Answer::gap, {}};
  if (!it->second) return {Answer::inapplicable, {}};
  return {Answer::covered, *it->second};
}

KernelTable::CLookup KernelTable::lookup_c(const RowPat& x, const RowPat& y) const {
  auto it = c_.find({canon(x), canon(y)});
  if (it == c_.end()) return {Answer::gap, {}, {}};
  if (!it->second) return {Answer::inapplicable, {}, {}};
  return {Answer::covered, it->second->first, it->second->second};
}

KernelTable::InvLookup KernelTable::lookup_ui_inverse_single(const RowPat& u,
                                                             std::int64_t splitA2) const {
  auto key = std::make_pair(canon(u), splitA2);
  if (single_neg_.count(key)) return {Answer::inapplicable, {}, {}};
  auto it = inv_single_.find(key);
  if (it == inv_single_.end()) return {Answer::gap, {}, {}};
  return {Answer::covered, it->second.first, it->second.second};
}

KernelTable::InvLookup KernelTable::lookup_ui_inverse_pair(const RowPat& u,
                                                           const RowPat& v) const {
  auto key = std::make_pair(canon(u), canon(v));
  if (pair_neg_.count(key)) return {Answer::inapplicable, {}, {}};
  auto it = inv_pair_.find(key);
  if (it == inv_pair_.end()) return {Answer::gap, {}, {}};
  return {Answer::covered, it->second.first, it->second.second};
}

void KernelTable::add_ui(const RowPat& i_in, const RowPat& j_in,
                         std::optional<UIOutcome> out, const std::string& source) {
  RowPat i = canon(i_in), j = canon(j_in);
  std::string where = "kernel entry [" + source + "] " + gap_ui(i, j);
  check_row_pat(i, where);
  check_row_pat(j, where);
  if (!(i.B2 < j.B2 && i.A2 < j.A2 && j.B2 <= i.A2 + 2))
    throw std::invalid_argument(where + ": geometric precondition fails");
  bool empty_intersection = (j.B2 == i.A2 + 2);
  if (out) {
    out->u = canon(out->u);
    out->v = canon(out->v);
    check_row_pat(out->u, where);
    if (out->u.A2 != j.A2 || out->u.B2 != i.B2)
      throw std::invalid_argument(where + ": union row is not [A_j,B_i]");
    if (out->drop != empty_intersection)
      throw std::invalid_argument(where + ": drop flag disagrees with geometry");
    std::int64_t dim_in = i.a() * i.b() + j.a() * j.b();
    std::int64_t dim_out = out->u.a() * out->u.b();
    int sign_in = sign_factor(i) * sign_factor(j);
    int sign_out = sign_factor(out->u);
    if (!out->drop) {
      check_row_pat(out->v, where);
      if (out->v.A2 != i.A2 || out->v.B2 != j.B2)
        throw std::invalid_argument(where + ": intersection row is not [A_i,B_j]");
      dim_out += out->v.a() * out->v.b();
      sign_out *= sign_factor(out->v);
    }
    if (dim_in != dim_out)
      throw std::invalid_argument(where + ": total dimension not preserved");
    if (sign_in != sign_out)
      throw std::invalid_argument(where + ": sign condition not preserved");
  }
  auto key = std::make_pair(i, j);
  if (auto it = ui_.find(key); it != ui_.end() && it->second != out)
    throw std::invalid_argument(where + ": conflicts with an existing entry");
  ui_[key] = out;
  if (out) {
    if (out->drop) {
      auto ikey = std::make_pair(out->u, i.A2);
      if (auto it = inv_single_.find(ikey);
          it != inv_single_.end() && it->second != key)
        throw std::invalid_argument(where + ": ambiguous single-split preimage");
      if (single_neg_.count(ikey))
        throw std::invalid_argument(where + ": preimage contradicts a negative record");
      inv_single_[ikey] = key;
    } else {
      auto pkey = std::make_pair(out->u, out->v);
      if (auto it = inv_pair_.find(pkey); it != inv_pair_.end() && it->second != key)
        throw std::invalid_argument(where + ": ambiguous pair preimage");
      if (pair_neg_.count(pkey))
        throw std::invalid_argument(where + ": preimage contradicts a negative record");
      inv_pair_[pkey] = key;
    }
  }
}

void KernelTable::add_c(const RowPat& x_in, const RowPat& y_in,
                        std::optional<std::pair<RowPat, RowPat>> out,
                        const std::string& source) {
  RowPat x = canon(x_in), y = canon(y_in);
  std::string where = "kernel entry [" + source + "] " + gap_c(x, y);
  check_row_pat(x, where);
  check_row_pat(y, where);
  bool x_in_y = y.B2 <= x.B2 && x.A2 <= y.A2;
  bool y_in_x = x.B2 <= y.B2 && y.A2 <= x.A2;
  if (!x_in_y && !y_in_x)
    throw std::invalid_argument(where + ": rows are not nested");
  if (out) {
    out->first = canon(out->first);
    out->second = canon(out->second);
    check_row_pat(out->first, where);
    check_row_pat(out->second, where);
    if (out->first.A2 != y.A2 || out->first.B2 != y.B2 || out->second.A2 != x.A2 ||
        out->second.B2 != x.B2)
      throw std::invalid_argument(where + ": output segments must be the swapped inputs");
    if (sign_factor(x) * sign_factor(y) != sign_factor(out->first) * sign_factor(out->second))
      throw std::invalid_argument(where + ": sign condition not preserved");
  }
  auto insert = [&](const RowPat& a, const RowPat& b,
                    std::optional<std::pair<RowPat, RowPat>> o) {
    auto key = std::make_pair(a, b);
    if (auto it = c_.find(key); it != c_.end() && it->second != o)
      throw std::invalid_argument(where + ": conflicts with an existing entry");
    c_[key] = o;
  };
  insert(x, y, out);
  // Involution closure: applying the swap to the output restores the input.
  if (out) insert(out->first, out->second, std::make_pair(x, y));
}

void KernelTable::add_uiinv_single_neg(const RowPat& u_in, std::int64_t splitA2,
                                       const std::string& source) {
  RowPat u = canon(u_in);
  std::string where = "kernel entry [" + source + "] " + gap_inv_single(u, splitA2);
  check_row_pat(u, where);
  if (splitA2 < u.B2 || splitA2 > u.A2 - 2 || (splitA2 - u.B2) % 2 != 0)
    throw std::invalid_argument(where + ": split outside the row support");
  auto key = std::make_pair(u, splitA2);
  if (inv_single_.count(key))
    throw std::invalid_argument(where + ": contradicts a forward entry");
  single_neg_.insert(key);
}

void KernelTable::add_uiinv_pair_neg(const RowPat& u_in, const RowPat& v_in,
                                     const std::string& source) {
  RowPat u = canon(u_in), v = canon(v_in);
  std::string where = "kernel entry [" + source + "] " + gap_inv_pair(u, v);
  check_row_pat(u, where);
  check_row_pat(v, where);
  auto key = std::make_pair(u, v);
  if (inv_pair_.count(key))
    throw std::invalid_argument(where + ": contradicts a forward entry");
  pair_neg_.insert(key);
}

std::size_t KernelTable::entry_count() const {
  return ui_.size() + c_.size() + single_neg_.size() + pair_neg_.size();
}

namespace {

// Reads "[A,B] l eta" starting at the current stream position.
RowPat read_row_pat(std::istringstream& is, const std::string& line) {
  std::string seg, l_text, eta_text;
  if (!(is >> seg >> l_text >> eta_text))
    throw std::invalid_argument("kernel: truncated row pattern in: " + line);
  if (seg.size() < 5 || seg.front() != '[' || seg.back() != ']')
    throw std::invalid_argument("kernel: malformed segment '" + seg + "' in: " + line);
  auto comma = seg.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("kernel: malformed segment '" + seg + "' in: " + line);
  RowPat p;
  p.A2 = parse_halfint(seg.substr(1, comma - 1)).twice;
  p.B2 = parse_halfint(seg.substr(comma + 1, seg.size() - comma - 2)).twice;
  p.l = std::stoi(l_text);
  if (eta_text == "+" || eta_text == "+1")
    p.eta = +1;
  else if (eta_text == "-" || eta_text == "-1")
    p.eta = -1;
  else
    throw std::invalid_argument("kernel: malformed eta '" + eta_text + "' in: " + line);
  return p;
}

void expect(std::istringstream& is, const std::string& tok, const std::string& line) {
  std::string t;
  if (!(is >> t) || t != tok)
    throw std::invalid_argument("kernel: expected '" + tok + "' in: " + line);
}

std::string source_tag(const std::string& line) {
  auto hash = line.find('#');
  if (hash == std::string::npos) return "untagged";
  auto src = line.find("source=", hash);
  if (src == std::string::npos) return "untagged";
  auto tail = line.substr(src + 7);
  while (!tail.empty() && (tail.back() == ' ' || tail.back() == '\t')) tail.pop_back();
  return tail;
}

}  // namespace

KernelTable KernelTable::parse(const std::string& text) {
  KernelTable table;
  std::istringstream all(text);
  std::string raw;
  while (std::getline(all, raw)) {
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream is(line);
    std::string kind;
    if (!(is >> kind)) continue;
    std::string tag = source_tag(raw);
    if (kind == "UI") {
      RowPat i = read_row_pat(is, raw);
      expect(is, "|", raw);
      RowPat j = read_row_pat(is, raw);
      expect(is, "->", raw);
      std::string peek;
      if (!(is >> peek)) throw std::invalid_argument("kernel: truncated entry: " + raw);
      if (peek == "none") {
        table.add_ui(i, j, std::nullopt, tag);
        continue;
      }
      // Put the token back by re-parsing the union row from its pieces.
      std::string l_text, eta_text;
      if (!(is >> l_text >> eta_text))
        throw std::invalid_argument("kernel: truncated entry: " + raw);
      std::istringstream urow(peek + " " + l_text + " " + eta_text);
      UIOutcome out;
      out.u = read_row_pat(urow, raw);
      expect(is, "|", raw);
      std::string vtok;
      if (!(is >> vtok)) throw std::invalid_argument("kernel: truncated entry: " + raw);
      if (vtok == "-") {
        out.drop = true;
      } else {
        std::string vl, veta;
        if (!(is >> vl >> veta))
          throw std::invalid_argument("kernel: truncated entry: " + raw);
        std::istringstream vrow(vtok + " " + vl + " " + veta);
        out.v = read_row_pat(vrow, raw);
      }
      table.add_ui(i, j, out, tag);
    } else if (kind == "C") {
      RowPat x = read_row_pat(is, raw);
      expect(is, "|", raw);
      RowPat y = read_row_pat(is, raw);
      expect(is, "->", raw);
      std::string peek;
      if (!(is >> peek)) throw std::invalid_argument("kernel: truncated entry: " + raw);
      if (peek == "none") {
        table.add_c(x, y, std::nullopt, tag);
        continue;
      }
      std::string l_text, eta_text;
      if (!(is >> l_text >> eta_text))
        throw std::invalid_argument("kernel: truncated entry: " + raw);
      std::istringstream frow(peek + " " + l_text + " " + eta_text);
      RowPat first = read_row_pat(frow, raw);
      expect(is, "|", raw);
      RowPat second = read_row_pat(is, raw);
      table.add_c(x, y, std::make_pair(first, second), tag);
    } else if (kind == "UIINV") {
      RowPat u = read_row_pat(is, raw);
      expect(is, "split", raw);
      std::string a_text;
      if (!(is >> a_text)) throw std::invalid_argument("kernel: truncated entry: " + raw);
      expect(is, "->", raw);
      expect(is, "none", raw);
      table.add_uiinv_single_neg(u, parse_halfint(a_text).twice, tag);
    } else if (kind == "UIINVP") {
      RowPat u = read_row_pat(is, raw);
      expect(is, "|", raw);
      RowPat v = read_row_pat(is, raw);
      expect(is, "->", raw);
      expect(is, "none", raw);
      table.add_uiinv_pair_neg(u, v, tag);
    } else {
      throw std::invalid_argument("kernel: unknown record kind '" + kind + "' in: " + raw);
    }
  }
  return table;
}

KernelTable KernelTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open kernel file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

}  // namespace ems
