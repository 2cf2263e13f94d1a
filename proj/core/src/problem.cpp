#include "ric/problem.hpp"

#include <sstream>

#include "ric/errors.hpp"

namespace ric {

void require_valid(const Problem& problem) {
  auto errors = validate(problem.market, problem.ambiguity);
  try {
    problem.band.check();
  } catch (const DomainError& e) {
    errors.emplace_back(e.what());
  }
  if (const auto* box = std::get_if<Box>(&problem.exposure.shape())) {
    if (static_cast<std::size_t>(box->lower.size()) != problem.market.num_factors()) {
      errors.emplace_back("dimension mismatch: exposure box differs from number of factors");
    }
  }
  if (!errors.empty()) {
    std::ostringstream msg;
    msg << "invalid problem:";
    for (const auto& e : errors) msg << "\n  - " << e;
    throw DomainError(msg.str());
  }
}

}  // namespace ric
