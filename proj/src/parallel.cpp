#include "minkval/parallel.hpp"

#include <cstdlib>
#include <string>

#include "minkval/report.hpp"

namespace minkval {

std::size_t thread_count() {
  if (const char* env = std::getenv("MINKVAL_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skipped:
      return "skipped";
  }
  return "unknown";
}

}  // namespace minkval
