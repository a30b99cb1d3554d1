#pragma once

#include <set>
#include <string>

namespace metasel {

struct PRF1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// P = |retrieved ∩ relevant| / |retrieved| (0 if retrieved is empty),
// R = |retrieved ∩ relevant| / |relevant|, F1 = harmonic mean (0 when
// P + R = 0). `relevant` must be non-empty.
PRF1 prf1(const std::set<std::string>& retrieved, const std::set<std::string>& relevant);

}  // namespace metasel
