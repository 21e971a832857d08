#include "tnn/checked.hpp"

#include <atomic>

namespace tnn {

namespace {
std::atomic<bool> g_checked{true};
}  // namespace

bool checked_mode() { return g_checked.load(std::memory_order_relaxed); }
void set_checked_mode(bool on) { g_checked.store(on, std::memory_order_relaxed); }

}  // namespace tnn
