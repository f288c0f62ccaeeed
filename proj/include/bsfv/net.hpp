#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "bsfv/perf.hpp"

namespace bsfv {

enum class TimingMode : std::uint8_t { Wall, Logical };
enum class ReduceOp : std::uint8_t { Sum, Max };

/// Deterministic cost model for the logical-clock timing mode: a remote
/// transfer costs latency + bytes/bandwidth, local ghost copies cost
/// bytes/copy_rate, and a compute kernel costs cells * cell_cost.
struct CostModel {
  double latency_s = 2e-6;
  double bandwidth_bps = 1e9;
  double copy_bps = 4e9;
  double cell_cost_s = 2e-8;

  double transfer_s(std::size_t bytes) const {
    return latency_s + static_cast<double>(bytes) / bandwidth_bps;
  }
  double copy_s(std::size_t bytes) const {
    return static_cast<double>(bytes) / copy_bps;
  }
};

struct NetConfig {
  int ranks = 1;
  /// Sends at or below this payload size complete immediately; larger
  /// sends complete only once the matching receive has been posted.
  std::size_t eager_threshold = 8192;
  TimingMode timing = TimingMode::Wall;
  CostModel cost;
  double deadlock_timeout_s = 5.0;
};

enum class EventKind : std::uint8_t {
  SendStart,
  SendComplete,
  RecvPost,
  RecvComplete,
  Wait,
  Copy,
  Compute,
};

const char* event_kind_name(EventKind k);

struct Event {
  EventKind kind;
  double t_start = 0.0;
  double t_end = 0.0;
  int peer = -1;
  std::uint64_t bytes = 0;
};

class EventLog {
 public:
  void add(EventKind kind, double t0, double t1, int peer,
           std::uint64_t bytes) {
    events_.push_back(Event{kind, t0, t1, peer, bytes});
  }
  const std::vector<Event>& events() const { return events_; }
  void clear() { events_.clear(); }
  /// Total time spent inside wait events.
  double wait_time() const;

 private:
  std::vector<Event> events_;
};

/// CSV with columns rank,event,t_start,t_end,peer,bytes.
std::string events_csv(const std::vector<const EventLog*>& per_rank);

/// A message in flight: source, destination, tag, and payload bytes.
struct Envelope {
  int src = 0;
  int dst = 0;
  std::uint64_t tag = 0;
  std::vector<std::byte> payload;
  std::size_t bytes() const { return payload.size(); }
};

class Fabric;

/// Opaque completion handle for async sends and posted receives.
struct Handle {
  std::uint64_t id = 0;
  bool is_recv = false;
  bool valid = false;
};

/// Per-rank endpoint of the in-process message fabric. All calls must be
/// made from the thread running this rank.
class Endpoint {
 public:
  int rank() const { return rank_; }
  int ranks() const;
  const NetConfig& config() const;

  /// Current time on this rank: the logical clock in logical mode,
  /// seconds since fabric start otherwise.
  double now() const;

  /// Charges one compute kernel pass over `cells` cells.
  void compute(double cells);
  /// Charges a local memory copy.
  void charge_copy(std::size_t bytes);

  void send_blocking(int dst, std::uint64_t tag,
                     std::vector<std::byte> payload);
  std::vector<std::byte> recv_blocking(int src, std::uint64_t tag);

  Handle send_async(int dst, std::uint64_t tag,
                    std::vector<std::byte> payload);
  Handle post_recv(int src, std::uint64_t tag);
  void wait_all(std::span<Handle> handles);
  /// Moves the payload out of a completed receive handle.
  std::vector<std::byte> take_payload(Handle& h);

  double all_reduce(double v, ReduceOp op);
  void barrier();

  EventLog& log() { return log_; }
  TimerSet& timers() { return timers_; }

 private:
  friend class Fabric;
  Fabric* fab_ = nullptr;
  int rank_ = 0;
  double clock_ = 0.0;  // logical clock
  EventLog log_;
  TimerSet timers_;
};

/// The in-process virtual-rank message fabric: per-pair ordered delivery,
/// eager/rendezvous send semantics, deterministic collectives, and a
/// watchdog that reports rendezvous wait cycles.
class Fabric {
 public:
  explicit Fabric(const NetConfig& cfg);
  ~Fabric();

  const NetConfig& config() const { return cfg_; }
  Endpoint& endpoint(int rank);

  /// Runs fn as rank 0..ranks-1 on concurrent threads and joins them;
  /// rethrows the first rank failure.
  void run(const std::function<void(Endpoint&)>& fn);

  /// Reset rank states and logical clocks for another run() on the same
  /// fabric (event logs and timers are kept).
  void reset();

 private:
  friend class Endpoint;
  struct Impl;
  NetConfig cfg_;
  std::vector<Endpoint> endpoints_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bsfv
