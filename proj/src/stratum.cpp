#include "strata/stratum.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "strata/cyclotomic.hpp"

namespace strata {

int Stratum::component_of(int leg) const {
  for (int c = 0; c < num_components(); ++c)
    for (int l : components[c])
      if (l == leg) return c;
  throw EngineError("leg out of range");
}

long Stratum::component_fiber(int comp) const {
  long g = k;
  for (int l : components[comp]) g = std::gcd(g, order_gcd(k, leg_order[l]));
  return g;
}

long Stratum::power_datum() const {
  if (num_components() != 1)
    throw EngineError("power_datum needs a connected stratum");
  return component_fiber(0);
}

namespace {

struct ResidueSystem {
  const CyclotomicField& F;
  std::vector<int> live;             // leg ids with coordinates
  std::map<int, int> live_index;     // leg id -> column
  std::vector<std::vector<CyclotomicField::Elem>> rows;

  explicit ResidueSystem(const Stratum& st, bool exempt_absorbers)
      : F(CyclotomicField::get(st.k)) {
    for (int l = 0; l < st.num_legs(); ++l) {
      bool pole = exempt_absorbers ? st.is_cover_pole(l)
                                   : st.cover_order(l) <= -1;
      if (pole && st.leg_fiber(l) == st.k) {
        live_index[l] = static_cast<int>(live.size());
        live.push_back(l);
      }
    }
    // Residue theorem on each cover component (= sheet of a base component).
    for (int c = 0; c < st.num_components(); ++c) {
      long p = st.component_fiber(c);
      if (exempt_absorbers) {
        bool absorber = false;
        for (int l : st.components[c])
          if (st.is_cover_simple_pole(l)) absorber = true;
        if (absorber) continue;
      }
      for (long sheet = 0; sheet < p; ++sheet) {
        std::vector<CyclotomicField::Elem> row(live.size(), F.zero());
        bool nonzero = false;
        for (int l : st.components[c]) {
          auto it = live_index.find(l);
          if (it == live_index.end()) continue;
          long s0 = ((sheet - st.leg_offset[l]) % p + p) % p;
          auto coeff = F.zero();
          for (long j = s0; j < st.k; j += p)
            coeff = F.add(coeff, F.zeta_pow(j));
          row[it->second] = F.add(row[it->second], coeff);
          nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }

  std::vector<CyclotomicField::Elem> part_row(const Stratum& st,
                                              const std::vector<CoverPoint>& part) const {
    std::vector<CyclotomicField::Elem> row(live.size(), F.zero());
    for (const auto& pt : part) {
      auto it = live_index.find(pt.leg);
      if (it == live_index.end()) continue;  // residue forced to zero anyway
      row[it->second] = F.add(row[it->second], F.zeta_pow(pt.sheet));
    }
    return row;
  }

  long rank() const { return F.rank(rows); }
};

}  // namespace

long Stratum::residue_rank_drop() const {
  if (residue_parts.empty()) return 0;
  ResidueSystem sys(*this, /*exempt_absorbers=*/true);
  auto base_rows = sys.rows;
  long rank_r = sys.F.rank(base_rows);
  for (const auto& part : residue_parts)
    base_rows.push_back(sys.part_row(*this, part));
  long rank_rs = sys.F.rank(base_rows);
  return rank_rs - rank_r;
}

long Stratum::dimension() const {
  long d = -1;
  for (const auto& comp : components)
    d += static_cast<long>(comp.size()) - 2;
  d -= residue_rank_drop();
  if (d < 0) throw EmptyStratum("stratum of negative dimension: " + encode());
  return d;
}

bool Stratum::empty() const {
  long d = -1;
  for (const auto& comp : components)
    d += static_cast<long>(comp.size()) - 2;
  if (d - residue_rank_drop() < 0) return true;
  // A cover simple pole must carry a nonzero residue; check that none is
  // linearly forced to vanish by the residue theorem plus the condition.
  bool has_simple = false;
  for (int l = 0; l < num_legs(); ++l)
    if (is_cover_simple_pole(l)) has_simple = true;
  if (!has_simple) return false;
  ResidueSystem sys(*this, /*exempt_absorbers=*/false);
  auto rows = sys.rows;
  for (const auto& part : residue_parts) rows.push_back(sys.part_row(*this, part));
  long base_rank = sys.F.rank(rows);
  for (int l = 0; l < num_legs(); ++l) {
    if (!is_cover_simple_pole(l)) continue;
    std::vector<CyclotomicField::Elem> row(sys.live.size(), sys.F.zero());
    row[sys.live_index.at(l)] = sys.F.one();
    auto probe = rows;
    probe.push_back(row);
    if (sys.F.rank(probe) == base_rank) return true;  // residue forced to 0
  }
  return false;
}

bool Stratum::parts_redundant(const std::vector<int>& part_indices) const {
  ResidueSystem sys(*this, /*exempt_absorbers=*/true);
  std::set<int> dropped(part_indices.begin(), part_indices.end());
  auto rows_without = sys.rows;
  for (int i = 0; i < static_cast<int>(residue_parts.size()); ++i)
    if (!dropped.count(i))
      rows_without.push_back(sys.part_row(*this, residue_parts[i]));
  long rank_without = sys.F.rank(rows_without);
  for (int i : part_indices)
    rows_without.push_back(sys.part_row(*this, residue_parts[i]));
  return sys.F.rank(rows_without) == rank_without;
}

void Stratum::validate() const {
  if (k < 1) throw EngineError("k must be >= 1");
  if (components.empty()) throw EngineError("no components");
  std::vector<bool> seen(num_legs(), false);
  for (const auto& comp : components) {
    if (comp.size() < 3)
      throw Unstable("component with fewer than 3 legs: " + encode());
    long sum = 0;
    for (int l : comp) {
      if (l < 0 || l >= num_legs() || seen[l])
        throw EngineError("bad leg partition");
      seen[l] = true;
      sum += leg_order[l];
    }
    if (sum != -2 * k) {
      std::ostringstream os;
      os << "component degree " << sum << " != " << -2 * k;
      throw DegreeMismatch(os.str());
    }
  }
  for (bool s : seen)
    if (!s) throw EngineError("leg not attached to any component");
  for (const auto& part : residue_parts) {
    if (part.empty()) throw EngineError("empty residue part");
    std::set<CoverPoint> pts;
    for (const auto& pt : part) {
      if (pt.leg < 0 || pt.leg >= num_legs())
        throw EngineError("residue part references unknown leg");
      if (!is_cover_pole(pt.leg))
        throw EngineError("residue part on a leg without higher-order pole");
      if (pt.sheet < 0 || pt.sheet >= leg_fiber(pt.leg))
        throw EngineError("residue part sheet out of range");
      if (!pts.insert(pt).second)
        throw EngineError("repeated point in residue part");
    }
  }
}

namespace {

std::string component_key(const Stratum& st, int c) {
  std::vector<long> orders;
  for (int l : st.components[c]) orders.push_back(st.leg_order[l]);
  std::sort(orders.begin(), orders.end());
  std::ostringstream os;
  for (long m : orders) os << m << ",";
  os << "#" << orders.size();
  return os.str();
}

}  // namespace

std::string Stratum::encode() const {
  // Deterministic relabeling: components sorted by their order multisets,
  // legs within a component sorted by (order, offset), ties kept stable.
  std::vector<int> comp_order(num_components());
  std::iota(comp_order.begin(), comp_order.end(), 0);
  std::stable_sort(comp_order.begin(), comp_order.end(), [&](int a, int b) {
    return component_key(*this, a) < component_key(*this, b);
  });
  std::vector<int> new_id(num_legs(), -1);
  int next = 0;
  std::ostringstream os;
  os << k;
  for (int ci : comp_order) {
    std::vector<int> legs = components[ci];
    std::stable_sort(legs.begin(), legs.end(), [&](int a, int b) {
      if (leg_order[a] != leg_order[b]) return leg_order[a] < leg_order[b];
      return leg_offset[a] < leg_offset[b];
    });
    os << ";(";
    for (size_t i = 0; i < legs.size(); ++i) {
      new_id[legs[i]] = next++;
      os << leg_order[legs[i]];
      if (leg_offset[legs[i]] != 0) os << "@" << leg_offset[legs[i]];
      if (i + 1 < legs.size()) os << ",";
    }
    os << ")";
  }
  if (!residue_parts.empty()) {
    std::vector<std::string> parts;
    for (const auto& part : residue_parts) {
      std::vector<std::pair<int, int>> pts;
      for (const auto& pt : part) pts.emplace_back(new_id[pt.leg] + 1, pt.sheet);
      std::sort(pts.begin(), pts.end());
      std::ostringstream ps;
      ps << "{";
      for (size_t i = 0; i < pts.size(); ++i) {
        ps << pts[i].first << "." << pts[i].second;
        if (i + 1 < pts.size()) ps << ",";
      }
      ps << "}";
      parts.push_back(ps.str());
    }
    std::sort(parts.begin(), parts.end());
    os << ";R:{";
    for (size_t i = 0; i < parts.size(); ++i) {
      os << parts[i];
      if (i + 1 < parts.size()) os << ",";
    }
    os << "}";
  }
  return os.str();
}

namespace {

void skip_ws(const std::string& s, size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

long parse_long(const std::string& s, size_t& pos) {
  skip_ws(s, pos);
  size_t start = pos;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
    throw ParseError("expected integer at position " + std::to_string(start) +
                     " in '" + s + "'");
  return std::stol(s.substr(start, pos - start));
}

void expect(const std::string& s, size_t& pos, char c) {
  skip_ws(s, pos);
  if (pos >= s.size() || s[pos] != c)
    throw ParseError(std::string("expected '") + c + "' at position " +
                     std::to_string(pos) + " in '" + s + "'");
  ++pos;
}

}  // namespace

Stratum Stratum::parse(const std::string& text) {
  Stratum st;
  size_t pos = 0;
  st.k = parse_long(text, pos);
  expect(text, pos, ';');
  bool saw_residue = false;
  while (pos < text.size()) {
    skip_ws(text, pos);
    if (pos >= text.size()) break;
    if (text.compare(pos, 2, "R:") == 0) {
      pos += 2;
      expect(text, pos, '{');
      saw_residue = true;
      while (true) {
        expect(text, pos, '{');
        // Either base legs "1,2" (lifted to the tau-orbit of cover parts)
        // or cover points "1.0,2.1".
        std::vector<std::pair<int, int>> pts;  // (leg 1-based, sheet or -1)
        while (true) {
          long leg = parse_long(text, pos);
          int sheet = -1;
          skip_ws(text, pos);
          if (pos < text.size() && text[pos] == '.') {
            ++pos;
            sheet = static_cast<int>(parse_long(text, pos));
          }
          pts.emplace_back(static_cast<int>(leg), sheet);
          skip_ws(text, pos);
          if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
          }
          break;
        }
        expect(text, pos, '}');
        bool base_form = std::all_of(pts.begin(), pts.end(),
                                     [](auto& p) { return p.second < 0; });
        if (base_form) {
          long span = 1;
          for (auto& [leg, sheet] : pts) {
            if (leg < 1 || leg > st.num_legs()) throw ParseError("bad leg in R");
            span = std::lcm(span, st.leg_fiber(leg - 1));
          }
          for (long j = 0; j < span; ++j) {
            std::vector<CoverPoint> part;
            for (auto& [leg, sheet] : pts)
              part.push_back({leg - 1, static_cast<int>(j % st.leg_fiber(leg - 1))});
            st.residue_parts.push_back(std::move(part));
          }
        } else {
          std::vector<CoverPoint> part;
          for (auto& [leg, sheet] : pts) {
            if (sheet < 0) throw ParseError("mixed base/cover points in R part");
            part.push_back({leg - 1, sheet});
          }
          st.residue_parts.push_back(std::move(part));
        }
        skip_ws(text, pos);
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        break;
      }
      expect(text, pos, '}');
      skip_ws(text, pos);
      if (pos < text.size() && text[pos] == ';') ++pos;
      continue;
    }
    if (saw_residue) throw ParseError("components must precede R: block");
    // optional "label:" prefix before a component
    size_t look = pos;
    while (look < text.size() && text[look] != ':' && text[look] != '(') ++look;
    if (look < text.size() && text[look] == ':') pos = look + 1;
    expect(text, pos, '(');
    std::vector<int> comp;
    while (true) {
      long m = parse_long(text, pos);
      comp.push_back(st.num_legs());
      st.leg_order.push_back(m);
      st.leg_offset.push_back(0);
      skip_ws(text, pos);
      if (pos < text.size() && text[pos] == '@') {
        ++pos;
        st.leg_offset.back() = static_cast<int>(parse_long(text, pos));
      }
      skip_ws(text, pos);
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    expect(text, pos, ')');
    st.components.push_back(std::move(comp));
    skip_ws(text, pos);
    if (pos < text.size() && text[pos] == ';') ++pos;
  }
  st.validate();
  return st;
}

Stratum make_stratum(long k, const std::vector<std::vector<long>>& component_orders) {
  Stratum st;
  st.k = k;
  for (const auto& comp : component_orders) {
    std::vector<int> legs;
    for (long m : comp) {
      legs.push_back(st.num_legs());
      st.leg_order.push_back(m);
      st.leg_offset.push_back(0);
    }
    st.components.push_back(std::move(legs));
  }
  st.validate();
  return st;
}

}  // namespace strata
