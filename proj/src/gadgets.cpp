#include "mosp/gadgets.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "arith.hpp"
#include "mosp/errors.hpp"

namespace mosp {

using detail::checked_add;
using detail::checked_mul;
using json = nlohmann::json;

void ThreePartitionInstance::validate() const {
  if (integers.empty() || integers.size() % 3 != 0) {
    throw ValidationError("3-Partition instance needs a positive multiple of 3 integers, got " +
                          std::to_string(integers.size()));
  }
  if (B < 1) throw ValidationError("3-Partition target sum must be positive");
  Time sum = 0;
  for (Time x : integers) {
    if (x < 1) throw ValidationError("3-Partition integers must be positive");
    sum = checked_add(sum, x, "3-Partition sum");
  }
  if (sum != checked_mul(B, q(), "3-Partition sum")) {
    throw ValidationError("3-Partition integers sum to " + std::to_string(sum) + ", expected q*B = " +
                          std::to_string(B * q()));
  }
}

bool ThreePartitionInstance::restricted() const {
  return std::all_of(integers.begin(), integers.end(), [&](Time x) { return 4 * x > B && 2 * x < B; });
}

void BinPackingInstance::validate() const {
  if (integers.empty()) throw ValidationError("bin packing needs at least one integer");
  if (bins < 1) throw ValidationError("bin packing needs at least one bin");
  if (capacity < 1) throw ValidationError("bin capacity must be positive");
  for (Time x : integers) {
    if (x < 1) throw ValidationError("bin packing integers must be positive");
    if (x > capacity) {
      throw ValidationError("integer " + std::to_string(x) + " exceeds the bin capacity " + std::to_string(capacity));
    }
  }
}

ThreePartitionInstance tp_scale(const ThreePartitionInstance& tp, Time factor) {
  if (factor < 1) throw InvalidArgument("scaling factor must be at least 1");
  ThreePartitionInstance out{checked_mul(tp.B, factor, "scaled target"), {}};
  for (Time x : tp.integers) out.integers.push_back(checked_mul(x, factor, "scaled integer"));
  return out;
}

bool tp_decide(const ThreePartitionInstance& tp) {
  tp.validate();
  std::vector<Time> xs = tp.integers;
  std::sort(xs.begin(), xs.end());
  const int n = static_cast<int>(xs.size());
  std::vector<char> used(n, 0);

  std::function<bool(int)> solve = [&](int left) -> bool {
    if (left == 0) return true;
    int first = 0;
    while (used[first]) ++first;
    used[first] = 1;
    for (int j = first + 1; j < n; ++j) {
      if (used[j] || (j > first + 1 && xs[j] == xs[j - 1] && !used[j - 1])) continue;
      const Time need = tp.B - xs[first] - xs[j];
      if (need < xs[j]) break;
      used[j] = 1;
      for (int k = j + 1; k < n; ++k) {
        if (used[k] || xs[k] != need) continue;
        used[k] = 1;
        const bool ok = solve(left - 1);
        used[k] = 0;
        if (ok) {
          used[j] = used[first] = 0;
          return true;
        }
        break;  // equal values are interchangeable
      }
      used[j] = 0;
    }
    used[first] = 0;
    return false;
  };
  return solve(tp.q());
}

bool bp_decide(const BinPackingInstance& bp) {
  bp.validate();
  std::vector<Time> xs = bp.integers;
  std::sort(xs.rbegin(), xs.rend());
  Time total = 0;
  for (Time x : xs) total += x;
  if (total > checked_mul(bp.capacity, bp.bins)) return false;
  std::vector<Time> load(bp.bins, 0);

  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == xs.size()) return true;
    for (int b = 0; b < bp.bins; ++b) {
      bool seen = false;
      for (int c = 0; c < b && !seen; ++c) seen = load[c] == load[b];
      if (seen || load[b] + xs[i] > bp.capacity) continue;
      load[b] += xs[i];
      const bool ok = place(i + 1);
      load[b] -= xs[i];
      if (ok) return true;
    }
    return false;
  };
  return place(0);
}

namespace {

void require_restricted(const ThreePartitionInstance& tp, const char* who) {
  tp.validate();
  if (!tp.restricted()) {
    throw InvalidArgument(std::string(who) + " needs every integer strictly between B/4 and B/2");
  }
}

json tp_json(const ThreePartitionInstance& tp) { return {{"B", tp.B}, {"integers", tp.integers}}; }

// Doubles tp when B is odd; reports whether it did.
bool make_even(ThreePartitionInstance& tp) {
  if (tp.B % 2 == 0) return false;
  tp = tp_scale(tp, 2);
  return true;
}

}  // namespace

GadgetOutput gen_sumc_hardness(const ThreePartitionInstance& tp) {
  require_restricted(tp, "sum-of-completion-times gadget");
  const int q = tp.q();
  std::vector<Organization> orgs;
  for (int i = 0; i < q; ++i) orgs.push_back({1, {tp.integers[3 * i], tp.integers[3 * i + 1], tp.integers[3 * i + 2]}});
  for (int i = 0; i < q; ++i) orgs.push_back({2, {tp.B, tp.B, tp.B}});
  const Time target = checked_mul(5, checked_mul(q, tp.B), "gadget target");
  json cert = {{"gadget", "sumc-np"}, {"source", tp_json(tp)}, {"q", q}, {"target", target},
               {"integer_orgs", q}, {"triplet_orgs", q}};
  return {Instance(std::move(orgs)), target, std::move(cert)};
}

GadgetOutput gen_dp_hardness(const ThreePartitionInstance& tp_in, const ThreePartitionInstance& tp2_in) {
  require_restricted(tp_in, "makespan gadget");
  require_restricted(tp2_in, "makespan gadget");
  ThreePartitionInstance tp = tp_in, tp2 = tp2_in;
  const bool doubled = make_even(tp);
  const bool doubled2 = make_even(tp2);
  const Time f = checked_add(3 * (tp2.B / 2), 1, "gadget factor");

  Organization first{tp.q(), {}};
  for (Time x : tp.integers) first.jobs.push_back(checked_mul(x, f, "gadget job"));
  first.jobs.push_back(tp2.B / 2 + 1);
  const Time target = checked_mul(f, tp.B, "gadget target");
  const Time long_job = target - 3 * (tp2.B / 2);
  Organization second{tp2.q(), tp2.integers};
  for (int i = 0; i < tp2.q(); ++i) second.jobs.push_back(long_job);

  json cert = {{"gadget", "dp-hard"},
               {"source", tp_json(tp_in)},
               {"source_prime", tp_json(tp2_in)},
               {"doubled", doubled},
               {"doubled_prime", doubled2},
               {"B", tp.B},
               {"B_prime", tp2.B},
               {"f", f},
               {"long_job", long_job},
               {"target", target}};
  return {Instance({std::move(first), std::move(second)}), target, std::move(cert)};
}

GadgetOutput gen_binpacking_hardness(const BinPackingInstance& bp) {
  bp.validate();
  std::vector<Time> rest;
  int bins = bp.bins;
  int stripped = 0;
  for (Time x : bp.integers) {
    if (x == bp.capacity) {
      --bins;
      ++stripped;
    } else {
      rest.push_back(x);
    }
  }
  json cert = {{"gadget", "binpack"},
               {"source", {{"integers", bp.integers}, {"capacity", bp.capacity}, {"bins", bp.bins}}},
               {"stripped", stripped}};

  if (bins < 0 || rest.empty() || bins == 0) {
    // Full-capacity integers alone decide the instance.
    const bool yes = bins >= 0 && rest.empty();
    cert["trivial"] = yes ? "yes" : "no";
    const Time target = yes ? 1 : 0;
    cert["target"] = target;
    return {Instance({Organization{1, {1}}}), target, std::move(cert)};
  }

  const int y = static_cast<int>(rest.size());
  const Time B = bp.capacity;
  std::vector<Organization> orgs;
  orgs.push_back({bins, rest});
  for (int b = 0; b < bins; ++b) orgs.push_back({y, std::vector<Time>(y + 1, B)});
  Time sum = 0;
  for (Time x : rest) sum = checked_add(sum, x);
  const Time target =
      checked_add(checked_mul(checked_mul(bins, y + 1, "gadget target"), B, "gadget target"), 2 * sum, "gadget target");
  cert["trivial"] = nullptr;
  cert["y"] = y;
  cert["bins"] = bins;
  cert["capacity"] = B;
  cert["target"] = target;
  return {Instance(std::move(orgs)), target, std::move(cert)};
}

GadgetOutput gen_theta2p(const std::vector<ThreePartitionInstance>& set_a,
                         const std::vector<ThreePartitionInstance>& set_b) {
  if (set_a.empty() || set_a.size() != set_b.size()) {
    throw InvalidArgument("comparison gadget needs two non-empty lists of equal length");
  }
  for (const auto& tp : set_a) require_restricted(tp, "comparison gadget");
  for (const auto& tp : set_b) require_restricted(tp, "comparison gadget");
  const int v = static_cast<int>(set_a.size());

  // Canonical yes-instance in front of set_b and no-instance after set_a.
  ThreePartitionInstance yes{6, std::vector<Time>(set_a.front().integers.size(), 2)};
  int no_q = std::max(2, set_b.back().q());
  ThreePartitionInstance no{18, {}};
  const int n_no = 3 * no_q;
  for (int j = 0; j < n_no / 2; ++j) no.integers.push_back(5);
  if (n_no % 2 == 1) no.integers.push_back(6);
  for (int j = 0; j < n_no / 2; ++j) no.integers.push_back(7);

  std::vector<ThreePartitionInstance> a(set_a), b;
  a.push_back(no);
  b.push_back(yes);
  b.insert(b.end(), set_b.begin(), set_b.end());

  struct Gadget {
    ThreePartitionInstance a, b;
    Time B, qmax, offset, bound;
    bool doubled;
  };
  std::vector<Gadget> gadgets;
  Time previous_bound = 2;
  const char* what = "comparison gadget value";
  for (int i = 0; i <= v; ++i) {
    Gadget g;
    g.a = tp_scale(a[i], b[i].B);
    g.b = tp_scale(b[i], a[i].B);
    g.doubled = g.a.B % 2 == 1;
    if (g.doubled) {
      g.a = tp_scale(g.a, 2);
      g.b = tp_scale(g.b, 2);
    }
    g.B = g.a.B;
    g.qmax = std::max(g.a.q(), g.b.q());
    const Time b_sq = checked_mul(g.B, g.B, what);
    const Time q_sq = checked_mul(g.qmax, g.qmax, what);
    g.offset = checked_add(previous_bound, checked_mul(2, checked_add(g.B, checked_mul(q_sq, b_sq, what), what), what), what);
    g.bound = checked_add(g.offset, checked_mul(3, checked_mul(b_sq, g.qmax, what), what) / 2, what);
    previous_bound = g.bound;
    gadgets.push_back(std::move(g));
  }
  const Time target = checked_mul(4, previous_bound, what);

  std::vector<Organization> orgs;
  Organization global{1, {}};
  Time long_count = 1;
  json cert_gadgets = json::array();
  for (const Gadget& g : gadgets) {
    const Time B = g.B, qmax = g.qmax;
    const Time makespan_job = checked_add(checked_add(g.offset, B, what), checked_mul(checked_mul(B, B, what), qmax, what), what);

    Organization org1{static_cast<int>(qmax + 1), {makespan_job}};
    org1.jobs.insert(org1.jobs.end(), g.a.integers.begin(), g.a.integers.end());
    for (Time j = g.a.q(); j < qmax; ++j) org1.jobs.push_back(B);

    Organization org2{static_cast<int>(qmax), {}};
    const Time factor = checked_mul(B, qmax, what);
    for (Time x : g.b.integers) org2.jobs.push_back(checked_mul(factor, x, what));
    for (Time j = g.b.q(); j < qmax; ++j) org2.jobs.push_back(checked_mul(factor, B, what));
    for (Time j = 0; j < qmax; ++j) org2.jobs.push_back(g.offset);

    Organization org3{static_cast<int>(2 * qmax), std::vector<Time>(qmax, g.bound)};
    const Time fill = checked_mul(qmax, factor / 2 - 1, what);
    for (Time j = 0; j < fill; ++j) org3.jobs.push_back(B);

    Organization org4{static_cast<int>(qmax), std::vector<Time>(qmax, g.offset)};
    Organization org5{static_cast<int>(qmax), std::vector<Time>(qmax, 1)};
    orgs.insert(orgs.end(), {org1, org2, org3, org4, org5});

    long_count += 3 * qmax;
    global.jobs.push_back(target - makespan_job);
    for (Time j = 0; j < 2 * qmax; ++j) global.jobs.push_back(target - g.bound);
    for (Time j = 0; j < qmax; ++j) global.jobs.push_back(target - (g.offset + 1));

    cert_gadgets.push_back({{"B", B},
                            {"qmax", qmax},
                            {"offset", g.offset},
                            {"bound", g.bound},
                            {"doubled", g.doubled},
                            {"instance", tp_json(g.a)},
                            {"instance_prime", tp_json(g.b)},
                            {"makespan_job", makespan_job},
                            {"machines", 1 + 6 * qmax}});
  }
  global.jobs.insert(global.jobs.begin(), long_count, target);
  orgs.push_back(std::move(global));

  json cert = {{"gadget", "theta2p"},
               {"v", v},
               {"canonical_yes", tp_json(yes)},
               {"canonical_no", tp_json(no)},
               {"gadgets", std::move(cert_gadgets)},
               {"target", target}};
  return {Instance(std::move(orgs)), target, std::move(cert)};
}

Instance random_instance(const RandomSpec& spec, std::uint64_t seed) {
  if (spec.min_orgs < 1 || spec.max_orgs < spec.min_orgs || spec.min_machines < 1 ||
      spec.max_machines < spec.min_machines || spec.min_jobs < 0 || spec.max_jobs < spec.min_jobs ||
      spec.max_duration < 1) {
    throw InvalidArgument("random instance ranges are empty or out of bounds");
  }
  std::mt19937_64 rng(seed);
  auto pick = [&](Time lo, Time hi) { return std::uniform_int_distribution<Time>(lo, hi)(rng); };

  const int k = static_cast<int>(pick(spec.min_orgs, spec.max_orgs));
  std::vector<Organization> orgs;
  int machines_left = spec.machine_cap > 0 ? spec.machine_cap : std::numeric_limits<int>::max();
  int jobs_left = spec.job_cap > 0 ? spec.job_cap : std::numeric_limits<int>::max();
  for (int i = 0; i < k; ++i) {
    // Keep one machine for every later organization.
    const int reserve = k - i - 1;
    const int m_hi = std::max(1, std::min(spec.max_machines, machines_left - reserve));
    const int m = static_cast<int>(pick(std::min(spec.min_machines, m_hi), m_hi));
    machines_left -= m;
    const int n_hi = std::min(spec.max_jobs, jobs_left);
    const int n = static_cast<int>(pick(std::min(spec.min_jobs, n_hi), n_hi));
    jobs_left -= n;
    Organization org{m, {}};
    for (int j = 0; j < n; ++j) org.jobs.push_back(pick(1, spec.max_duration));
    orgs.push_back(std::move(org));
  }
  return Instance(std::move(orgs));
}

}  // namespace mosp
