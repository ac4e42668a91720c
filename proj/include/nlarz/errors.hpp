#ifndef NLARZ_ERRORS_HPP
#define NLARZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlarz {

/** Raised when the scheme leaves its admissible region: CFL violation,
 * non-finite state, jam overflow, or velocity blow-up. Carries the
 * simulation time and step index at which the step was rejected. */
class solver_error : public std::runtime_error {
  public:
    solver_error(const std::string& what, double time, long step)
        : std::runtime_error(what), time_(time), step_(step) {}
    double time() const noexcept { return time_; }
    long step() const noexcept { return step_; }

  private:
    double time_;
    long step_;
};

/** Raised by the config parser; names the offending key and line. */
class config_error : public std::runtime_error {
  public:
    config_error(const std::string& what, std::string key, int line)
        : std::runtime_error(what), key_(std::move(key)), line_(line) {}
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

  private:
    std::string key_;
    int line_;
};

/** Raised when an output file cannot be created or written. */
class io_error : public std::runtime_error {
  public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nlarz

#endif
