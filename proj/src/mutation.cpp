#include "qd1/mutation.hpp"

#include <array>
#include <atomic>

namespace qd1::mutation {

namespace {
std::array<std::atomic<bool>, 3> flags{};
}

bool active(Kind k) noexcept { return flags[static_cast<int>(k)].load(std::memory_order_relaxed); }

Scoped::Scoped(Kind k) noexcept : kind_(k), previous_(flags[static_cast<int>(k)].exchange(true)) {}

Scoped::~Scoped() { flags[static_cast<int>(kind_)].store(previous_); }

} // namespace qd1::mutation
