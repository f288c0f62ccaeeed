#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bsfv {

/// Accumulating wall-clock timer registry for one rank. Regions nest;
/// "self" time excludes enclosed child regions.
class TimerSet {
 public:
  struct Rec {
    double self_s = 0.0;
    std::uint64_t calls = 0;
  };

  void enter(const std::string& name);
  void exit();

  const std::map<std::string, Rec>& records() const { return recs_; }
  void clear() { recs_.clear(); }

  class Scope {
   public:
    Scope(TimerSet* ts, const std::string& name) : ts_(ts) {
      if (ts_) ts_->enter(name);
    }
    ~Scope() {
      if (ts_) ts_->exit();
    }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    TimerSet* ts_;
  };

 private:
  struct Frame {
    std::string name;
    double start = 0.0;
    double child = 0.0;
  };
  std::map<std::string, Rec> recs_;
  std::vector<Frame> stack_;
};

/// One line of a function profile: share of total, self seconds, calls.
struct ProfileEntry {
  std::string name;
  double self_s = 0.0;
  std::uint64_t calls = 0;
  double pct = 0.0;
};

/// Aggregates per-rank timers (max self time over ranks, summed calls)
/// into a profile sorted by self time descending. `top` truncates.
std::vector<ProfileEntry> profile_report(
    const std::vector<const TimerSet*>& per_rank,
    std::optional<std::size_t> top = std::nullopt);

std::string profile_csv(const std::vector<ProfileEntry>& entries);
std::string profile_table(const std::vector<ProfileEntry>& entries);

/// One strong-scaling sample: rank count and averaged seconds per step.
struct ScalingRecord {
  std::string label;
  int n = 1;
  double tp = 0.0;
};

struct EfficiencyEntry {
  std::string label;
  int n = 1;
  double tp = 0.0;
  double eps = 0.0;
};

/// Parallel-efficiency table derived from scaling records.
struct EfficiencyReport {
  std::string baseline;  // description of T_s or the M-rank baseline
  double threshold = 0.5;
  std::vector<EfficiencyEntry> entries;

  /// Largest sampled N of `label` with eps >= threshold.
  std::optional<int> max_n_meeting(const std::string& label) const;
};

/// eps(N) = T_s / (N * T_p(N)).
EfficiencyReport efficiency(const std::vector<ScalingRecord>& records,
                            double t_s, double threshold = 0.5);

/// M-rank baseline variant: eps(N) = T_p(M) / ((N/M) * T_p(N)) where N is
/// the record's total rank count, which must be divisible by M.
EfficiencyReport efficiency_based(const std::vector<ScalingRecord>& records,
                                  int m, double t_pm, double threshold = 0.5);

/// Operating point of one efficiency curve at a threshold: the largest N
/// still meeting it (linearly interpolated when the curve dips below
/// between samples) and the performance rate 1/T_p there.
struct OperatingPoint {
  bool reached = false;
  double n = 0.0;
  double rate = 0.0;  // 1/T_p
};

OperatingPoint threshold_point(const std::vector<EfficiencyEntry>& curve,
                               double threshold);

struct IsoEfficiencyResult {
  bool comparable = false;  // both curves reach the threshold
  OperatingPoint a, b;
  double speedup_b_over_a = 0.0;
  std::string note;  // set when a curve stays below the threshold
};

/// Compares two code-version curves at the acceptable-efficiency limit.
IsoEfficiencyResult iso_efficiency_compare(
    const std::vector<EfficiencyEntry>& curve_a,
    const std::vector<EfficiencyEntry>& curve_b, double threshold = 0.5);

std::string scaling_csv(const EfficiencyReport& report);

/// Shortest round-trip decimal formatting (stable across runs).
std::string format_double(double v);

}  // namespace bsfv
