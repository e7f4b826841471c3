#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace freediv {

class timeout_error : public std::runtime_error {
public:
    explicit timeout_error(const std::string& what) : std::runtime_error(what) {}
};

// Step/time budget shared by an engine computation. Operations poll tick();
// exhaustion raises timeout_error and the computation is abandoned whole
// (partial results are never returned).
class budget {
public:
    budget() = default;

    static budget unlimited() { return budget(); }
    static budget seconds(double secs, uint64_t steps = 0) {
        budget b;
        if (secs > 0) {
            b.has_deadline_ = true;
            b.deadline_ = clock::now() + std::chrono::duration_cast<clock::duration>(
                                             std::chrono::duration<double>(secs));
        }
        if (steps) b.steps_left_ = steps;
        return b;
    }

    void tick(uint64_t n = 1) {
        if (steps_left_ != no_limit) {
            if (steps_left_ < n) throw timeout_error("step budget exceeded");
            steps_left_ -= n;
        }
        if (has_deadline_ && ++poll_ % 256 == 0 && clock::now() > deadline_)
            throw timeout_error("time budget exceeded");
    }

private:
    using clock = std::chrono::steady_clock;
    static constexpr uint64_t no_limit = std::numeric_limits<uint64_t>::max();
    uint64_t steps_left_ = no_limit;
    uint64_t poll_ = 0;
    bool has_deadline_ = false;
    clock::time_point deadline_;
};

} // namespace freediv
