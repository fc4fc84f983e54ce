#pragma once

#include <array>
#include <cstdint>

namespace ivme {

enum class Phase : std::uint8_t { apply = 0, major = 1, minor = 2, enumerate = 3, other = 4 };

inline constexpr int kPhaseCount = 5;
const char* phase_name(Phase p);

// Counts elementary operations. Every storage and enumeration primitive adds
// one unit to the running total and to the bucket of the current phase.
class CostMeter {
 public:
  void tick(std::uint64_t n = 1) {
    total_ += n;
    buckets_[static_cast<int>(phase_)] += n;
  }

  std::uint64_t total() const { return total_; }
  std::uint64_t bucket(Phase p) const { return buckets_[static_cast<int>(p)]; }
  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }

  std::uint64_t last_update_cost() const { return last_update_; }
  std::uint64_t max_update_cost() const { return max_update_; }
  void record_update(std::uint64_t cost) {
    last_update_ = cost;
    if (cost > max_update_) max_update_ = cost;
  }

  void reset() { *this = CostMeter{}; }

 private:
  std::uint64_t total_ = 0;
  std::array<std::uint64_t, kPhaseCount> buckets_{};
  Phase phase_ = Phase::other;
  std::uint64_t last_update_ = 0;
  std::uint64_t max_update_ = 0;
};

class PhaseScope {
 public:
  PhaseScope(CostMeter* m, Phase p) : meter_(m) {
    if (meter_) {
      saved_ = meter_->phase();
      meter_->set_phase(p);
    }
  }
  ~PhaseScope() {
    if (meter_) meter_->set_phase(saved_);
  }
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  CostMeter* meter_;
  Phase saved_ = Phase::other;
};

inline void tick(CostMeter* m, std::uint64_t n = 1) {
  if (m) m->tick(n);
}

}  // namespace ivme
