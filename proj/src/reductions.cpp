#include "knapq/reductions.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "knapq/errors.hpp"
#include "knapq/verify.hpp"

namespace knapq {

namespace {

Int pow10(int e) {
  Int v = 1;
  for (int i = 0; i < e; ++i) v *= 10;
  return v;
}

}  // namespace

void validate_sscover(const SuccinctSetCover& ssc) {
  if (ssc.n_vars < 1) throw ParseError("succinct set cover: n must be >= 1");
  if (ssc.budget < 0) throw ParseError("succinct set cover: k must be >= 0");
  if (ssc.formulas.empty())
    throw ParseError("succinct set cover: at least one formula required");
  std::vector<bool> seen(static_cast<std::size_t>(ssc.n_vars) + 1, false);
  for (std::size_t j = 0; j < ssc.formulas.size(); ++j) {
    const Formula& f = ssc.formulas[j];
    std::string where = "formulas[" + std::to_string(j) + "]";
    if (f.empty()) throw ParseError(where + ": formula has no clauses");
    for (std::size_t k = 0; k < f.size(); ++k) {
      const Clause& c = f[k];
      std::set<int> vars;
      for (int lit : c) {
        int v = lit < 0 ? -lit : lit;
        if (lit == 0 || v > ssc.n_vars)
          throw ParseError(where + ".clause[" + std::to_string(k) +
                           "]: literal out of range");
        vars.insert(v);
        seen[static_cast<std::size_t>(v)] = true;
      }
      if (vars.size() != 3)
        throw ParseError(where + ".clause[" + std::to_string(k) +
                         "]: clause must use three distinct variables");
    }
  }
  for (int v = 1; v <= ssc.n_vars; ++v)
    if (!seen[static_cast<std::size_t>(v)])
      throw ParseError("variable " + std::to_string(v) +
                       " occurs in no formula");
}

bool satisfies_formula(const SuccinctSetCover& ssc, int j,
                       std::uint32_t assignment) {
  for (const Clause& c : ssc.formulas[static_cast<std::size_t>(j)]) {
    bool ok = true;
    for (int lit : c) {
      int v = lit < 0 ? -lit : lit;
      bool val = (assignment >> (v - 1)) & 1u;
      if ((lit > 0) != val) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

std::optional<bool> covers_all_assignments(const SuccinctSetCover& ssc,
                                           int max_vars) {
  if (ssc.n_vars > max_vars) return std::nullopt;
  const std::uint32_t total = 1u << ssc.n_vars;
  for (std::uint32_t a = 0; a < total; ++a) {
    bool hit = false;
    for (int j = 0; j < ssc.m() && !hit; ++j)
      hit = satisfies_formula(ssc, j, a);
    if (!hit) return false;
  }
  return true;
}

int min_cover_size(const SuccinctSetCover& ssc) {
  if (ssc.n_vars > 20)
    throw EnumerationError("min_cover_size: more than 20 variables");
  const std::uint32_t total = 1u << ssc.n_vars;
  const int m = ssc.m();
  std::vector<std::vector<bool>> sat(
      static_cast<std::size_t>(m), std::vector<bool>(total, false));
  std::vector<bool> universe(total, false);
  for (int j = 0; j < m; ++j)
    for (std::uint32_t a = 0; a < total; ++a)
      if (satisfies_formula(ssc, j, a)) {
        sat[static_cast<std::size_t>(j)][a] = true;
        universe[a] = true;
      }
  for (int k = 0; k <= m; ++k) {
    // lexicographic k-subsets of formulas
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
    for (;;) {
      bool covers = true;
      for (std::uint32_t a = 0; a < total && covers; ++a) {
        if (!universe[a]) continue;
        bool hit = false;
        for (int j : comb)
          if (sat[static_cast<std::size_t>(j)][a]) {
            hit = true;
            break;
          }
        covers = hit;
      }
      if (covers) return k;
      int i = k;
      while (i > 0 && comb[static_cast<std::size_t>(i - 1)] == m - k + (i - 1))
        --i;
      if (i == 0) break;
      ++comb[static_cast<std::size_t>(i - 1)];
      for (int j2 = i; j2 < k; ++j2)
        comb[static_cast<std::size_t>(j2)] =
            comb[static_cast<std::size_t>(j2 - 1)] + 1;
    }
  }
  throw Error("internal: the full formula family always covers its universe");
}

SuccinctSetCover parse_sscover_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  SuccinctSetCover ssc;
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("succinct set cover: missing integer field 'n'");
  ssc.n_vars = doc["n"].get<int>();
  if (!doc.contains("k") || !doc["k"].is_number_integer())
    throw ParseError("succinct set cover: missing integer field 'k'");
  ssc.budget = doc["k"].get<int>();
  if (!doc.contains("formulas") || !doc["formulas"].is_array())
    throw ParseError("succinct set cover: missing 'formulas' array");
  for (const auto& fj : doc["formulas"]) {
    if (!fj.is_array()) throw ParseError("formula must be an array of clauses");
    Formula f;
    for (const auto& cj : fj) {
      if (!cj.is_array() || cj.size() != 3)
        throw ParseError("clause must be an array of three literals");
      Clause c{};
      for (int i = 0; i < 3; ++i) {
        if (!cj[static_cast<std::size_t>(i)].is_number_integer())
          throw ParseError("clause literals must be integers");
        c[static_cast<std::size_t>(i)] =
            cj[static_cast<std::size_t>(i)].get<int>();
      }
      f.push_back(c);
    }
    ssc.formulas.push_back(std::move(f));
  }
  validate_sscover(ssc);
  return ssc;
}

SuccinctSetCover load_sscover_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sscover_json(ss.str());
}

ReducedSetCoverInstance reduce_sscover(const SuccinctSetCover& ssc) {
  validate_sscover(ssc);
  const int n = ssc.n_vars;
  const int m = ssc.m();

  ReducedSetCoverInstance red;
  red.source = ssc;
  red.epsilon = Rat(1, 2 * m);
  red.covers_all = covers_all_assignments(ssc);

  // Item layout: v_1, ~v_1, ..., v_n, ~v_n, then the clause slots a_{j,k,t},
  // then y_j, u_j, f_{j,0..k_j-1} per formula, then the full-capacity item.
  std::vector<RoleTag> roles;
  for (int i = 1; i <= n; ++i) {
    roles.push_back({ItemRole::variable_pos, i, 0, 0, 0});
    roles.push_back({ItemRole::variable_neg, i, 0, 0, 0});
  }
  for (int j = 1; j <= m; ++j) {
    const int kj =
        static_cast<int>(ssc.formulas[static_cast<std::size_t>(j - 1)].size());
    for (int k = 1; k <= kj; ++k)
      for (int t = 0; t <= 3; ++t)
        roles.push_back({ItemRole::clause_slot, 0, j, k, t});
  }
  for (int j = 1; j <= m; ++j) {
    const int kj =
        static_cast<int>(ssc.formulas[static_cast<std::size_t>(j - 1)].size());
    roles.push_back({ItemRole::formula_yes, 0, j, 0, 0});
    roles.push_back({ItemRole::formula_no, 0, j, 0, 0});
    for (int k = 0; k < kj; ++k)
      roles.push_back({ItemRole::formula_filler, 0, j, 0, k});
  }
  roles.push_back({ItemRole::full_capacity, 0, 0, 0, 0});
  const int total_items = static_cast<int>(roles.size());
  red.star_id = total_items;
  red.roles = roles;

  auto kj_of = [&](int j) {
    return static_cast<int>(
        ssc.formulas[static_cast<std::size_t>(j - 1)].size());
  };
  auto clause_of = [&](int j, int k) -> const Clause& {
    return ssc.formulas[static_cast<std::size_t>(j - 1)]
                       [static_cast<std::size_t>(k - 1)];
  };

  red.partial_x.assign(static_cast<std::size_t>(total_items), Int(0));
  red.partial_phi.assign(static_cast<std::size_t>(m),
                         std::vector<Int>(static_cast<std::size_t>(total_items),
                                          Int(0)));
  red.partial_rho.assign(static_cast<std::size_t>(m),
                         std::vector<Int>(static_cast<std::size_t>(total_items),
                                          Int(0)));

  for (int id = 1; id <= total_items; ++id) {
    const RoleTag& r = roles[static_cast<std::size_t>(id - 1)];
    switch (r.role) {
      case ItemRole::variable_pos:
      case ItemRole::variable_neg: {
        red.partial_x[static_cast<std::size_t>(id - 1)] = pow10(r.var);
        const bool positive = r.role == ItemRole::variable_pos;
        for (int j = 1; j <= m; ++j) {
          Int w = 0;
          for (int k = 1; k <= kj_of(j); ++k)
            for (int lit : clause_of(j, k)) {
              int v = lit < 0 ? -lit : lit;
              if (v == r.var && (lit > 0) == positive)
                w += pow10(kj_of(j) + k - 1);
            }
          red.partial_phi[static_cast<std::size_t>(j - 1)]
                         [static_cast<std::size_t>(id - 1)] = w;
        }
        break;
      }
      case ItemRole::clause_slot: {
        red.partial_phi[static_cast<std::size_t>(r.formula - 1)]
                       [static_cast<std::size_t>(id - 1)] =
            Int(r.slot) * pow10(kj_of(r.formula) + r.clause - 1) +
            pow10(r.clause - 1);
        if (r.slot == 0)
          red.partial_rho[static_cast<std::size_t>(r.formula - 1)]
                         [static_cast<std::size_t>(id - 1)] = 1;
        break;
      }
      case ItemRole::formula_yes:
        red.partial_rho[static_cast<std::size_t>(r.formula - 1)]
                       [static_cast<std::size_t>(id - 1)] =
            pow10(kj_of(r.formula) * kj_of(r.formula) + 1);
        break;
      case ItemRole::formula_no:
        red.partial_rho[static_cast<std::size_t>(r.formula - 1)]
                       [static_cast<std::size_t>(id - 1)] =
            pow10(kj_of(r.formula) * kj_of(r.formula) + 1) +
            pow10(kj_of(r.formula) * kj_of(r.formula)) + kj_of(r.formula);
        break;
      case ItemRole::formula_filler:
        red.partial_rho[static_cast<std::size_t>(r.formula - 1)]
                       [static_cast<std::size_t>(id - 1)] =
            pow10(kj_of(r.formula) * kj_of(r.formula)) + r.slot;
        break;
      case ItemRole::full_capacity:
        break;  // set below, after the capacities are known
    }
  }

  red.capacity_x = 0;
  for (int i = 1; i <= n; ++i) red.capacity_x += pow10(i);
  red.capacity_phi.assign(static_cast<std::size_t>(m), Int(0));
  red.capacity_rho.assign(static_cast<std::size_t>(m), Int(0));
  for (int j = 1; j <= m; ++j) {
    const int kj = kj_of(j);
    Int bphi = 0;
    for (int k = 0; k <= kj - 1; ++k) bphi += pow10(k);
    for (int k = kj; k <= 2 * kj - 1; ++k) bphi += 3 * pow10(k);
    red.capacity_phi[static_cast<std::size_t>(j - 1)] = bphi;
    red.capacity_rho[static_cast<std::size_t>(j - 1)] =
        Int(kj) + pow10(kj * kj) + pow10(kj * kj + 1);
  }

  // The full-capacity item carries the capacity's own partials so that the
  // block decomposition is exact on every item.
  {
    const std::size_t star = static_cast<std::size_t>(red.star_id - 1);
    red.partial_x[star] = red.capacity_x;
    for (int j = 1; j <= m; ++j) {
      red.partial_phi[static_cast<std::size_t>(j - 1)][star] =
          red.capacity_phi[static_cast<std::size_t>(j - 1)];
      red.partial_rho[static_cast<std::size_t>(j - 1)][star] =
          red.capacity_rho[static_cast<std::size_t>(j - 1)];
    }
  }

  // Block widths: digits of the all-items partial sum, plus one guard digit.
  auto block_digits = [&](const std::vector<Int>& partial) {
    Int sum = 0;
    for (const Int& v : partial) sum += v;
    return decimal_digits(sum) + 1;
  };
  red.digits_phi.resize(static_cast<std::size_t>(m));
  red.digits_rho.resize(static_cast<std::size_t>(m));
  int offset = 0;
  red.offset_phi.resize(static_cast<std::size_t>(m));
  red.offset_rho.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    red.offset_phi[static_cast<std::size_t>(j)] = offset;
    red.digits_phi[static_cast<std::size_t>(j)] =
        block_digits(red.partial_phi[static_cast<std::size_t>(j)]);
    offset += red.digits_phi[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < m; ++j) {
    red.offset_rho[static_cast<std::size_t>(j)] = offset;
    red.digits_rho[static_cast<std::size_t>(j)] =
        block_digits(red.partial_rho[static_cast<std::size_t>(j)]);
    offset += red.digits_rho[static_cast<std::size_t>(j)];
  }
  red.offset_x = offset;
  red.digits_x = block_digits(red.partial_x);

  auto combine = [&](int id) {
    const std::size_t i = static_cast<std::size_t>(id - 1);
    Int w = 0;
    for (int j = 0; j < m; ++j) {
      w += red.partial_phi[static_cast<std::size_t>(j)][i] *
           pow10(red.offset_phi[static_cast<std::size_t>(j)]);
      w += red.partial_rho[static_cast<std::size_t>(j)][i] *
           pow10(red.offset_rho[static_cast<std::size_t>(j)]);
    }
    w += red.partial_x[i] * pow10(red.offset_x);
    return w;
  };

  std::vector<Item> items;
  for (int id = 1; id <= total_items; ++id) {
    const RoleTag& r = roles[static_cast<std::size_t>(id - 1)];
    Item it;
    it.id = id;
    it.weight = combine(id);
    if (r.role == ItemRole::formula_yes) {
      it.profit = Rat(it.weight) - 1;
      it.interval =
          Interval::open(Rat(it.weight) - 2, Rat(it.weight) + red.epsilon);
      red.y_ids.push_back(id);
    } else {
      it.profit = Rat(it.weight);
      it.interval = Interval::singleton(it.profit);
    }
    items.push_back(std::move(it));
  }
  const Int capacity = combine(red.star_id);
  red.instance = Instance(std::move(items), capacity);
  return red;
}

bool PropertyReport::all_pass() const {
  for (const PropertyCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

const PropertyCheck& PropertyReport::operator[](const std::string& name) const {
  for (const PropertyCheck& c : checks)
    if (c.name == name) return c;
  throw ParamError("no such property check: " + name);
}

namespace {

// Profits and upper limits are accumulated as integers on a shared
// denominator; per-node rational adds would pay a gcd each.
struct SweepScale {
  Int denominator;
  std::vector<Int> profit_num, upper_num;  // by id - 1
};

SweepScale make_sweep_scale(const Instance& inst) {
  std::vector<Rat> all;
  for (const Item& it : inst.items()) all.push_back(it.profit);
  for (const Item& it : inst.items()) all.push_back(it.upper());
  ScaledInts s = scale_to_integers(all);
  SweepScale out;
  out.denominator = s.denominator;
  const std::size_t n = static_cast<std::size_t>(inst.n());
  out.profit_num.assign(s.values.begin(), s.values.begin() + n);
  out.upper_num.assign(s.values.begin() + n, s.values.end());
  return out;
}

struct SweepState {
  Int weight{0};
  Int profit_num{0};
  Int upper_num{0};
  Int sum_x{0};
  std::vector<Int> sum_phi, sum_rho;
  std::vector<int> cnt_pos, cnt_neg;       // per variable
  std::vector<std::vector<int>> cnt_slot;  // [j][k-1], any t
  std::vector<std::uint32_t> a0_mask;      // [j], bit k-1 = a_{j,k,0} in P
  std::uint32_t y_mask = 0;
  bool has_star = false;
  int size = 0;
};

template <typename Fn>
void sweep_packings(const ReducedSetCoverInstance& red,
                    const SweepScale& scale, Fn&& visit) {
  const Instance& inst = red.instance;
  const int n_items = inst.n();
  const int m = static_cast<int>(red.capacity_phi.size());
  SweepState st;
  st.sum_phi.assign(static_cast<std::size_t>(m), Int(0));
  st.sum_rho.assign(static_cast<std::size_t>(m), Int(0));
  st.cnt_pos.assign(static_cast<std::size_t>(red.source.n_vars) + 1, 0);
  st.cnt_neg.assign(static_cast<std::size_t>(red.source.n_vars) + 1, 0);
  st.cnt_slot.resize(static_cast<std::size_t>(m));
  st.a0_mask.assign(static_cast<std::size_t>(m), 0);
  for (int j = 0; j < m; ++j)
    st.cnt_slot[static_cast<std::size_t>(j)].assign(
        red.source.formulas[static_cast<std::size_t>(j)].size(), 0);

  auto apply = [&](int id, int delta) {
    const RoleTag& r = red.roles[static_cast<std::size_t>(id - 1)];
    const Item& it = inst.item(id);
    st.weight += delta > 0 ? it.weight : Int(-it.weight);
    const std::size_t i = static_cast<std::size_t>(id - 1);
    if (delta > 0) {
      st.profit_num += scale.profit_num[i];
      st.upper_num += scale.upper_num[i];
    } else {
      st.profit_num -= scale.profit_num[i];
      st.upper_num -= scale.upper_num[i];
    }
    auto bump = [&](Int& acc, const Int& v) {
      if (delta > 0)
        acc += v;
      else
        acc -= v;
    };
    bump(st.sum_x, red.partial_x[i]);
    for (int j = 0; j < m; ++j) {
      bump(st.sum_phi[static_cast<std::size_t>(j)],
           red.partial_phi[static_cast<std::size_t>(j)][i]);
      bump(st.sum_rho[static_cast<std::size_t>(j)],
           red.partial_rho[static_cast<std::size_t>(j)][i]);
    }
    switch (r.role) {
      case ItemRole::variable_pos:
        st.cnt_pos[static_cast<std::size_t>(r.var)] += delta;
        break;
      case ItemRole::variable_neg:
        st.cnt_neg[static_cast<std::size_t>(r.var)] += delta;
        break;
      case ItemRole::clause_slot:
        st.cnt_slot[static_cast<std::size_t>(r.formula - 1)]
                   [static_cast<std::size_t>(r.clause - 1)] += delta;
        if (r.slot == 0)
          st.a0_mask[static_cast<std::size_t>(r.formula - 1)] ^=
              1u << (r.clause - 1);
        break;
      case ItemRole::formula_yes:
        st.y_mask ^= 1u << (r.formula - 1);
        break;
      case ItemRole::full_capacity:
        st.has_star = delta > 0;
        break;
      default:
        break;
    }
    st.size += delta;
  };

  auto rec = [&](auto&& self, int next) -> void {
    visit(st);
    for (int id = next; id <= n_items; ++id) {
      if (st.weight + inst.item(id).weight > inst.capacity()) continue;
      apply(id, +1);
      self(self, id + 1);
      apply(id, -1);
    }
  };
  rec(rec, 1);
}

}  // namespace

PropertyReport verify_reduction_properties(const ReducedSetCoverInstance& red,
                                           const SolveCaps& caps) {
  const Instance& inst = red.instance;
  if (inst.n() > caps.enumeration_items)
    throw EnumerationError("property verification refused: " +
                           std::to_string(inst.n()) +
                           " items exceeds enumeration cap " +
                           std::to_string(caps.enumeration_items));
  const int n = red.source.n_vars;
  const int m = red.source.m();
  const Int& B = inst.capacity();

  const SweepScale scale = make_sweep_scale(inst);

  // Sweep 1: the optimal profit.
  Int p_star_num = 0;
  sweep_packings(red, scale, [&](const SweepState& st) {
    if (st.profit_num > p_star_num) p_star_num = st.profit_num;
  });

  PropertyReport rep;
  auto add = [&](const std::string& name, bool pass,
                 const std::string& detail = "") {
    rep.checks.push_back({name, pass, detail});
  };
  const Rat p_star = Rat(p_star_num, scale.denominator);
  add("p_star_equals_capacity", p_star == Rat(B));

  bool p1 = true, p2_assignment = true, p3_iff = true, p3_gap = true;
  bool p4 = true, p5 = true, p6 = true, p7 = true, star_alone = true;
  std::set<std::uint32_t> repr_full;   // assignments with w(P) = B
  std::set<std::uint32_t> repr_limit;  // ... and U_P > p*
  // U_{y_j} - p_{y_j} = 1 + epsilon, on the shared denominator
  const Rat y_gap_scaled = (Rat(1) + red.epsilon) * Rat(scale.denominator);
  const Int y_gap_num = numerator(y_gap_scaled);

  sweep_packings(red, scale, [&](const SweepState& st) {
    const bool wB = st.weight == B;
    bool partials_ok = st.sum_x == red.capacity_x;
    for (int j = 0; j < m && partials_ok; ++j)
      partials_ok = st.sum_phi[static_cast<std::size_t>(j)] ==
                        red.capacity_phi[static_cast<std::size_t>(j)] &&
                    st.sum_rho[static_cast<std::size_t>(j)] ==
                        red.capacity_rho[static_cast<std::size_t>(j)];
    if (wB != partials_ok) p4 = false;

    if (st.has_star && st.size != 1) star_alone = false;

    bool defined = true;
    std::uint32_t assignment = 0;
    for (int v = 1; v <= n; ++v) {
      int c = st.cnt_pos[static_cast<std::size_t>(v)] +
              st.cnt_neg[static_cast<std::size_t>(v)];
      if (c != 1) {
        defined = false;
        break;
      }
      if (st.cnt_pos[static_cast<std::size_t>(v)] == 1)
        assignment |= 1u << (v - 1);
    }

    if (st.upper_num >= p_star_num && !wB) p1 = false;

    if (!st.has_star) {
      if ((st.sum_x == red.capacity_x) != defined) p5 = false;
      if (st.sum_x == red.capacity_x) {
        for (int j = 0; j < m; ++j) {
          if (st.sum_phi[static_cast<std::size_t>(j)] !=
              red.capacity_phi[static_cast<std::size_t>(j)])
            continue;
          const int kj = static_cast<int>(
              red.source.formulas[static_cast<std::size_t>(j)].size());
          for (int k = 1; k <= kj; ++k) {
            if (st.cnt_slot[static_cast<std::size_t>(j)]
                           [static_cast<std::size_t>(k - 1)] != 1)
              p6 = false;
            bool sat = [&] {
              const Clause& c = red.source.formulas[static_cast<std::size_t>(
                  j)][static_cast<std::size_t>(k - 1)];
              for (int lit : c) {
                int v = lit < 0 ? -lit : lit;
                bool val = (assignment >> (v - 1)) & 1u;
                if ((lit > 0) != val) return false;
              }
              return true;
            }();
            bool a0_in = (st.a0_mask[static_cast<std::size_t>(j)] >> (k - 1)) & 1u;
            if (a0_in != sat) p6 = false;
          }
        }
      }
      for (int j = 0; j < m; ++j) {
        if (st.sum_rho[static_cast<std::size_t>(j)] !=
            red.capacity_rho[static_cast<std::size_t>(j)])
          continue;
        bool yj = (st.y_mask >> j) & 1u;
        bool any_a0 = st.a0_mask[static_cast<std::size_t>(j)] != 0;
        if (yj != any_a0) p7 = false;
      }
    }

    if (wB && st.upper_num > p_star_num) {
      if (!defined) p2_assignment = false;
      repr_limit.insert(assignment);
    }
    if (wB && defined) repr_full.insert(assignment);

    if (st.upper_num > p_star_num) {
      for (int j = 0; j < m; ++j) {
        bool yj = (st.y_mask >> j) & 1u;
        bool sat = defined && satisfies_formula(red.source, j, assignment);
        if (yj != sat) p3_iff = false;
        if (yj && st.upper_num - p_star_num > y_gap_num) p3_gap = false;
      }
    }
  });

  add("property1_full_capacity", p1);
  add("property2_assignment", p2_assignment);
  add("property2_all_assignments",
      repr_full.size() == (1u << n),
      std::to_string(repr_full.size()) + " of " + std::to_string(1u << n) +
          " assignments represented");
  {
    bool covered = true;
    for (std::uint32_t a = 0; a < (1u << n); ++a) {
      bool sat = false;
      for (int j = 0; j < m && !sat; ++j)
        sat = satisfies_formula(red.source, j, a);
      if (sat && !repr_limit.count(a)) covered = false;
    }
    add("property2_satisfied_covered", covered);
  }
  add("property3_yj_iff_satisfied", p3_iff);
  add("property3_gap_bound", p3_gap);
  add("property4_partials", p4);
  add("property5_x_assignment", p5);
  add("property6_clause_slots", p6);
  add("property7_yj_slots", p7);
  add("star_packs_alone", star_alone);

  // Constructive completion: every assignment has a packing built from its
  // literals, the matching clause slots, and the formula gadgets.
  {
    bool ok = true;
    for (std::uint32_t a = 0; a < (1u << n) && ok; ++a) {
      std::vector<int> ids;
      for (int id = 1; id <= inst.n(); ++id) {
        const RoleTag& r = red.roles[static_cast<std::size_t>(id - 1)];
        bool in = false;
        switch (r.role) {
          case ItemRole::variable_pos:
            in = (a >> (r.var - 1)) & 1u;
            break;
          case ItemRole::variable_neg:
            in = !((a >> (r.var - 1)) & 1u);
            break;
          case ItemRole::clause_slot: {
            const Clause& c =
                red.source.formulas[static_cast<std::size_t>(r.formula - 1)]
                                   [static_cast<std::size_t>(r.clause - 1)];
            int h = 0;
            for (int lit : c) {
              int v = lit < 0 ? -lit : lit;
              bool val = (a >> (v - 1)) & 1u;
              if ((lit > 0) == val) ++h;
            }
            in = r.slot == 3 - h;
            break;
          }
          case ItemRole::formula_yes:
          case ItemRole::formula_no:
          case ItemRole::formula_filler: {
            const Formula& f =
                red.source.formulas[static_cast<std::size_t>(r.formula - 1)];
            int h = 0;
            for (std::size_t k = 0; k < f.size(); ++k) {
              bool sat = true;
              for (int lit : f[k]) {
                int v = lit < 0 ? -lit : lit;
                bool val = (a >> (v - 1)) & 1u;
                if ((lit > 0) != val) {
                  sat = false;
                  break;
                }
              }
              if (sat) ++h;
            }
            const int kj = static_cast<int>(f.size());
            if (r.role == ItemRole::formula_no)
              in = h == 0;
            else if (r.role == ItemRole::formula_yes)
              in = h > 0;
            else
              in = h > 0 && r.slot == kj - h;
            break;
          }
          case ItemRole::full_capacity:
            break;
        }
        if (in) ids.push_back(id);
      }
      ItemSet p = ItemSet::of(std::move(ids));
      ok = weight(inst, p) == B;
      if (ok) {
        bool any_sat = false;
        for (int j = 0; j < m && !any_sat; ++j)
          any_sat = satisfies_formula(red.source, j, a);
        ok = (upper_limit(inst, p) > p_star) == any_sat;
      }
    }
    add("property6_completion", ok);
  }

  // Digit layout: every block's all-items sum fits its width, and
  // re-parsing each weight's digit blocks recovers the partials.
  {
    bool fits = true;
    auto check_block = [&](const std::vector<Int>& partial, int digits) {
      Int sum = 0;
      for (const Int& v : partial) sum += v;
      if (decimal_digits(sum) > digits) fits = false;
    };
    check_block(red.partial_x, red.digits_x);
    for (int j = 0; j < m; ++j) {
      check_block(red.partial_phi[static_cast<std::size_t>(j)],
                  red.digits_phi[static_cast<std::size_t>(j)]);
      check_block(red.partial_rho[static_cast<std::size_t>(j)],
                  red.digits_rho[static_cast<std::size_t>(j)]);
    }
    add("overflow_free", fits);

    bool reparse = true;
    for (int id = 1; id <= inst.n() && reparse; ++id) {
      const Int& w = inst.item(id).weight;
      const std::size_t i = static_cast<std::size_t>(id - 1);
      auto block = [&](int off, int digits) {
        return (w / pow10(off)) % pow10(digits);
      };
      for (int j = 0; j < m && reparse; ++j) {
        reparse =
            block(red.offset_phi[static_cast<std::size_t>(j)],
                  red.digits_phi[static_cast<std::size_t>(j)]) ==
                red.partial_phi[static_cast<std::size_t>(j)][i] &&
            block(red.offset_rho[static_cast<std::size_t>(j)],
                  red.digits_rho[static_cast<std::size_t>(j)]) ==
                red.partial_rho[static_cast<std::size_t>(j)][i];
      }
      if (reparse)
        reparse = block(red.offset_x, red.digits_x) == red.partial_x[i];
    }
    add("concatenation_reparse", reparse);
  }

  // Only the y items are non-trivial, one per formula.
  add("nontrivial_are_y",
      inst.nontrivial_ids() == ItemSet::of(red.y_ids) &&
          static_cast<int>(red.y_ids.size()) == m);

  // Cover size equals minimum feasible query set size.
  {
    int cover = min_cover_size(red.source);
    QuerySet q = brute_force_optimal_query_set(inst, Rat(1), Rat(1), caps);
    add("cover_equals_query", cover == static_cast<int>(q.size()),
        "min cover " + std::to_string(cover) + ", min query set " +
            std::to_string(q.size()));
  }

  return rep;
}

// ---- subset sum -----------------------------------------------------------

Int SubsetSumInstance::total() const {
  Int w = 0;
  for (const Int& v : values) w += v;
  return w;
}

SubsetSumInstance SubsetSumInstance::normalized(std::vector<Int> values,
                                                Int target) {
  if (values.empty()) throw ParamError("subset sum: no values");
  for (const Int& v : values)
    if (v < 1) throw ParamError("subset sum: values must be >= 1");
  SubsetSumInstance ss;
  ss.values = std::move(values);
  Int W = ss.total();
  if (W < 3) throw ParamError("subset sum: total must be >= 3, got " + W.str());
  if (target < 0 || target > W)
    throw ParamError("subset sum: target must be in [0, total]");
  if (2 * target > W) target = W - target;  // equivalent instance
  ss.target = std::move(target);
  bool small_value = false;
  for (const Int& v : ss.values)
    if (2 * v <= W - 2) small_value = true;
  if (!small_value)
    throw ParamError(
        "subset sum: needs some value <= total/2 - 1 (instance is trivial "
        "otherwise)");
  return ss;
}

SubsetSumInstance parse_subset_sum_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array())
    throw ParseError("subset sum: missing 'values' array");
  std::vector<Int> values;
  for (const auto& v : doc["values"]) {
    if (v.is_string())
      values.push_back(parse_decimal(v.get<std::string>()));
    else if (v.is_number_integer())
      values.push_back(Int(v.get<long long>()));
    else
      throw ParseError("subset sum: values must be decimal strings");
  }
  if (!doc.contains("target"))
    throw ParseError("subset sum: missing 'target'");
  Int target;
  if (doc["target"].is_string())
    target = parse_decimal(doc["target"].get<std::string>());
  else if (doc["target"].is_number_integer())
    target = Int(doc["target"].get<long long>());
  else
    throw ParseError("subset sum: target must be a decimal string");
  return SubsetSumInstance::normalized(std::move(values), std::move(target));
}

SubsetSumInstance load_subset_sum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_subset_sum_json(ss.str());
}

SubsetSumReduction reduce_subset_sum(const SubsetSumInstance& ss, const Rat& c,
                                     const SolveCaps& caps) {
  if (c < 1) throw ParamError("c must be >= 1");
  const int n = static_cast<int>(ss.values.size());
  const Int W = ss.total();
  const Int& H = ss.target;
  const Int B = 2 * W;

  SubsetSumReduction out;
  out.c = c;
  out.epsilon =
      std::min(Rat(Int(1), W), c * Rat(W - H) / Rat(W + H + 1)) / 2;

  std::vector<Item> items;
  std::vector<int> normal, blocking;
  for (int i = 1; i <= n; ++i) {
    const Int& a = ss.values[static_cast<std::size_t>(i - 1)];
    Item it;
    it.id = i;
    it.weight = a;
    it.profit = out.epsilon * Rat(a);
    it.interval = Interval::open(Rat(0), c * Rat(a));
    items.push_back(std::move(it));
    normal.push_back(i);
  }
  const Int wb = B - W + H + 1;
  const Rat pb = Rat(W - H);
  for (int j = 1; j <= n; ++j) {
    Item it;
    it.id = n + j;
    it.weight = wb;
    it.profit = pb;
    // With c = 1 the open interval (0, c(W-H)) cannot contain the profit
    // strictly; the blocking item degenerates to a trivial one.
    it.interval = c == 1 ? Interval::singleton(pb)
                         : Interval::open(Rat(0), c * pb);
    items.push_back(std::move(it));
    blocking.push_back(n + j);
  }
  out.normal_ids = ItemSet::of(std::move(normal));
  out.blocking_ids = ItemSet::of(std::move(blocking));

  Instance inst(std::move(items), B);
  auto opt = solve_knapsack_auto(inst, plain_profits(inst), std::nullopt, caps);
  if (!opt)
    throw EnumerationError(
        "subset-sum reduction: instance too large to compute the optimum");
  out.problem.threshold = c * opt->value;
  out.problem.instance = std::move(inst);
  return out;
}

Instance reduce_knapsack_decision(const Instance& trivial_knapsack,
                                  const Rat& decision_threshold,
                                  const Rat& alpha, const Rat& beta) {
  if (alpha < 1 || beta < 1) throw ParamError("alpha and beta must be >= 1");
  if (!(decision_threshold > 0))
    throw ParamError("decision threshold must be > 0");
  for (const Item& it : trivial_knapsack.items())
    if (!it.trivial())
      throw ParamError("reduce_knapsack_decision requires an all-trivial "
                       "instance; item " + std::to_string(it.id) +
                       " is non-trivial");
  std::vector<Item> items = trivial_knapsack.items();
  Item extra;
  extra.id = trivial_knapsack.n() + 1;
  extra.weight = trivial_knapsack.capacity();
  extra.profit = std::min(decision_threshold, Rat(1)) / 2;
  extra.interval = Interval::open(Rat(0), beta * decision_threshold);
  items.push_back(std::move(extra));
  return Instance(std::move(items), trivial_knapsack.capacity());
}

}  // namespace knapq
