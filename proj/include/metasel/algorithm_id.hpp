#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace metasel {

enum class Strategy { StandardQuery, TermVectorQuery };
enum class FieldSet { Title, TitleAbstract };

// One of the four base algorithms. Class indexes follow the canonical
// serialization order: mlt_title, mlt_title_abstract, std_title,
// std_title_abstract.
struct AlgorithmId {
    Strategy strategy = Strategy::TermVectorQuery;
    FieldSet field_set = FieldSet::Title;

    bool operator==(const AlgorithmId&) const = default;
};

inline constexpr int kAlgorithmCount = 4;

constexpr std::array<AlgorithmId, kAlgorithmCount> all_algorithms() {
    return {AlgorithmId{Strategy::TermVectorQuery, FieldSet::Title},
            AlgorithmId{Strategy::TermVectorQuery, FieldSet::TitleAbstract},
            AlgorithmId{Strategy::StandardQuery, FieldSet::Title},
            AlgorithmId{Strategy::StandardQuery, FieldSet::TitleAbstract}};
}

constexpr int algorithm_index(AlgorithmId id) {
    if (id.strategy == Strategy::TermVectorQuery)
        return id.field_set == FieldSet::Title ? 0 : 1;
    return id.field_set == FieldSet::Title ? 2 : 3;
}

constexpr AlgorithmId algorithm_from_index(int index) {
    return all_algorithms()[static_cast<size_t>(index)];
}

std::string algorithm_name(AlgorithmId id);
AlgorithmId algorithm_from_name(const std::string& name);

// Label tie-break priority for equal F1: abstract-using term-vector query
// first. Lower rank wins.
int tie_break_rank(AlgorithmId id);

}  // namespace metasel
