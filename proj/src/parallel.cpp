#include "rnaudit/parallel.hpp"

#include <cstdlib>
#include <string>

namespace rnaudit {

unsigned threads_from_env() {
  const char* raw = std::getenv("RN_AUDIT_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    long v = std::stol(raw);
    return v <= 0 ? 0u : static_cast<unsigned>(v);
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace rnaudit
