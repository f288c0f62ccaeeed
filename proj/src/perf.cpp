#include "bsfv/perf.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "bsfv/error.hpp"

namespace bsfv {

namespace {

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

void TimerSet::enter(const std::string& name) {
  stack_.push_back(Frame{name, now_s(), 0.0});
}

void TimerSet::exit() {
  if (stack_.empty()) throw MisuseError("TimerSet::exit without enter");
  Frame f = stack_.back();
  stack_.pop_back();
  const double elapsed = now_s() - f.start;
  Rec& r = recs_[f.name];
  r.self_s += elapsed - f.child;
  r.calls += 1;
  if (!stack_.empty()) stack_.back().child += elapsed;
}

std::vector<ProfileEntry> profile_report(
    const std::vector<const TimerSet*>& per_rank,
    std::optional<std::size_t> top) {
  std::map<std::string, ProfileEntry> agg;
  for (const TimerSet* ts : per_rank) {
    if (!ts) continue;
    for (const auto& [name, rec] : ts->records()) {
      ProfileEntry& e = agg[name];
      e.name = name;
      e.self_s = std::max(e.self_s, rec.self_s);
      e.calls += rec.calls;
    }
  }
  double total = 0.0;
  for (const auto& [name, e] : agg) total += e.self_s;
  std::vector<ProfileEntry> out;
  out.reserve(agg.size());
  for (auto& [name, e] : agg) {
    e.pct = total > 0.0 ? 100.0 * e.self_s / total : 0.0;
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.self_s != b.self_s) return a.self_s > b.self_s;
    return a.name < b.name;
  });
  if (top && out.size() > *top) out.resize(*top);
  return out;
}

std::string profile_csv(const std::vector<ProfileEntry>& entries) {
  std::string s = "name,self_s,calls,pct\n";
  for (const auto& e : entries) {
    s += e.name + "," + format_double(e.self_s) + "," +
         std::to_string(e.calls) + "," + format_double(e.pct) + "\n";
  }
  return s;
}

std::string profile_table(const std::vector<ProfileEntry>& entries) {
  std::string s = "time %   self [s]     calls  name\n";
  char buf[128];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof(buf), "%6.2f  %9.4f  %8llu  %s\n", e.pct,
                  e.self_s, static_cast<unsigned long long>(e.calls),
                  e.name.c_str());
    s += buf;
  }
  return s;
}

std::optional<int> EfficiencyReport::max_n_meeting(
    const std::string& label) const {
  std::optional<int> best;
  for (const auto& e : entries)
    if (e.label == label && e.eps >= threshold)
      best = best ? std::max(*best, e.n) : e.n;
  return best;
}

EfficiencyReport efficiency(const std::vector<ScalingRecord>& records,
                            double t_s, double threshold) {
  if (records.empty()) throw MisuseError("efficiency: no records");
  if (!(t_s > 0.0)) throw MisuseError("efficiency: nonpositive baseline time");
  EfficiencyReport rep;
  rep.baseline = "single-rank T_s";
  rep.threshold = threshold;
  for (const auto& r : records) {
    if (!(r.tp > 0.0) || r.n < 1)
      throw MisuseError("efficiency: record " + r.label + " has invalid N=" +
                        std::to_string(r.n) + " or T_p");
    rep.entries.push_back({r.label, r.n, r.tp, t_s / (r.n * r.tp)});
  }
  return rep;
}

EfficiencyReport efficiency_based(const std::vector<ScalingRecord>& records,
                                  int m, double t_pm, double threshold) {
  if (records.empty()) throw MisuseError("efficiency_based: no records");
  if (m < 1 || !(t_pm > 0.0))
    throw MisuseError("efficiency_based: invalid baseline");
  EfficiencyReport rep;
  rep.baseline = "baseline of M=" + std::to_string(m) + " ranks";
  rep.threshold = threshold;
  for (const auto& r : records) {
    if (!(r.tp > 0.0)) throw MisuseError("efficiency_based: nonpositive T_p");
    if (r.n % m != 0)
      throw MisuseError("efficiency_based: record N=" + std::to_string(r.n) +
                        " not divisible by M=" + std::to_string(m));
    const double n_units = static_cast<double>(r.n) / m;
    rep.entries.push_back({r.label, r.n, r.tp, t_pm / (n_units * r.tp)});
  }
  return rep;
}

OperatingPoint threshold_point(const std::vector<EfficiencyEntry>& curve,
                               double threshold) {
  OperatingPoint op;
  std::vector<EfficiencyEntry> c = curve;
  std::sort(c.begin(), c.end(),
            [](const auto& a, const auto& b) { return a.n < b.n; });
  std::ptrdiff_t last = -1;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].eps >= threshold) last = static_cast<std::ptrdiff_t>(i);
  if (last < 0) return op;  // below threshold at all N

  op.reached = true;
  const EfficiencyEntry& a = c[static_cast<std::size_t>(last)];
  if (static_cast<std::size_t>(last) + 1 < c.size()) {
    // interpolate the crossing toward the first sample below threshold
    const EfficiencyEntry& b = c[static_cast<std::size_t>(last) + 1];
    const double t = (b.eps == a.eps)
                         ? 0.0
                         : (threshold - a.eps) / (b.eps - a.eps);
    op.n = a.n + t * (b.n - a.n);
    const double rate_a = 1.0 / a.tp;
    const double rate_b = 1.0 / b.tp;
    op.rate = rate_a + t * (rate_b - rate_a);
  } else {
    op.n = a.n;
    op.rate = 1.0 / a.tp;
  }
  return op;
}

IsoEfficiencyResult iso_efficiency_compare(
    const std::vector<EfficiencyEntry>& curve_a,
    const std::vector<EfficiencyEntry>& curve_b, double threshold) {
  IsoEfficiencyResult r;
  r.a = threshold_point(curve_a, threshold);
  r.b = threshold_point(curve_b, threshold);
  if (!r.a.reached || !r.b.reached) {
    r.note = std::string("below threshold at all N: ") +
             (!r.a.reached ? "first curve" : "") +
             (!r.a.reached && !r.b.reached ? " and " : "") +
             (!r.b.reached ? "second curve" : "");
    return r;
  }
  r.comparable = true;
  r.speedup_b_over_a = r.b.rate / r.a.rate;
  return r;
}

std::string scaling_csv(const EfficiencyReport& report) {
  std::string s = "label,N,Tp,inv_Tp,eps\n";
  for (const auto& e : report.entries) {
    s += e.label + "," + std::to_string(e.n) + "," + format_double(e.tp) +
         "," + format_double(1.0 / e.tp) + "," + format_double(e.eps) + "\n";
  }
  return s;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace bsfv
