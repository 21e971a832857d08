#pragma once

namespace tnn {

/// When on (the default), constructions that the theory says land in a given
/// stratum re-derive the stratum and throw CheckFailure on a mismatch.
bool checked_mode();
void set_checked_mode(bool on);

/// Restores the previous mode on scope exit.
class CheckedModeGuard {
 public:
  explicit CheckedModeGuard(bool on) : prev_(checked_mode()) { set_checked_mode(on); }
  ~CheckedModeGuard() { set_checked_mode(prev_); }
  CheckedModeGuard(const CheckedModeGuard&) = delete;
  CheckedModeGuard& operator=(const CheckedModeGuard&) = delete;

 private:
  bool prev_;
};

}  // namespace tnn
