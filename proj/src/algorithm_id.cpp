#include "metasel/algorithm_id.hpp"

#include <stdexcept>

namespace metasel {

std::string algorithm_name(AlgorithmId id) {
    switch (algorithm_index(id)) {
        case 0: return "mlt_title";
        case 1: return "mlt_title_abstract";
        case 2: return "std_title";
        default: return "std_title_abstract";
    }
}

AlgorithmId algorithm_from_name(const std::string& name) {
    for (auto id : all_algorithms())
        if (algorithm_name(id) == name) return id;
    throw std::runtime_error("unknown algorithm id: " + name);
}

int tie_break_rank(AlgorithmId id) {
    // mlt_title_abstract > mlt_title > std_title_abstract > std_title
    switch (algorithm_index(id)) {
        case 1: return 0;
        case 0: return 1;
        case 3: return 2;
        default: return 3;
    }
}

}  // namespace metasel
