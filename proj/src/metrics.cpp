#include "metasel/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace metasel {

PRF1 prf1(const std::set<std::string>& retrieved, const std::set<std::string>& relevant) {
    if (relevant.empty())
        throw std::invalid_argument("prf1: relevant set is empty (instance should be dropped)");

    std::vector<std::string> hits;
    std::set_intersection(retrieved.begin(), retrieved.end(), relevant.begin(),
                          relevant.end(), std::back_inserter(hits));
    double inter = static_cast<double>(hits.size());

    PRF1 m;
    m.precision = retrieved.empty() ? 0.0 : inter / static_cast<double>(retrieved.size());
    m.recall = inter / static_cast<double>(relevant.size());
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

}  // namespace metasel
