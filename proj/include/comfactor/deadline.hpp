#ifndef COMFACTOR_DEADLINE_HPP
#define COMFACTOR_DEADLINE_HPP

#include <chrono>
#include <optional>

#include "comfactor/errors.hpp"

namespace comfactor {

// Cooperative wall-clock deadline. Algorithms poll it between buckets,
// levels, or subset checks; there is no thread cancellation.
class Deadline {
public:
    Deadline() = default;

    static Deadline after(double timeout_ms) {
        Deadline d;
        d.at_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double, std::milli>(timeout_ms));
        return d;
    }

    bool armed() const { return at_.has_value(); }

    bool expired() const {
        return at_.has_value() && std::chrono::steady_clock::now() >= *at_;
    }

    // Throws DeadlineExpired once the deadline has passed.
    void check() const {
        if (expired()) {
            throw DeadlineExpired("deadline expired");
        }
    }

private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace comfactor

#endif
