#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "metasel/meta_dataset.hpp"

namespace metasel {

// Maps feature vectors to dense numeric rows: collection_id one-hot
// (categories sorted, unseen categories encode as an all-zero block),
// numeric features passed through. Column order: one-hot block, then
// title_chars, title_words, and hour_of_day for the online schema.
struct FeatureEncoder {
    FeatureSchema schema = FeatureSchema::Offline;
    std::vector<std::string> collection_categories;  // sorted, offline schema only

    static FeatureEncoder fit(const MetaDataset& dataset);

    int columns() const;
    // First column index of the numeric block.
    int numeric_start() const {
        return schema == FeatureSchema::Offline
                   ? static_cast<int>(collection_categories.size())
                   : 0;
    }

    // Throws SchemaError when hour_of_day presence does not match the schema.
    Eigen::VectorXd encode(const FeatureVector& features) const;

    std::vector<std::string> column_names() const;
};

struct EncodedMatrix {
    Eigen::MatrixXd rows;     // n x p
    std::vector<int> labels;  // class indices in [0, 3]
    FeatureEncoder encoder;
};

EncodedMatrix encode_dataset(const MetaDataset& dataset, const FeatureEncoder& encoder);
EncodedMatrix encode_dataset(const MetaDataset& dataset);

}  // namespace metasel
