#include "metasel/encoding.hpp"

#include <algorithm>
#include <set>

#include "metasel/errors.hpp"

namespace metasel {

FeatureEncoder FeatureEncoder::fit(const MetaDataset& dataset) {
    FeatureEncoder enc;
    enc.schema = dataset.schema;
    if (dataset.schema == FeatureSchema::Offline) {
        std::set<std::string> cats;
        for (const auto& inst : dataset.instances) cats.insert(inst.features.collection_id);
        enc.collection_categories.assign(cats.begin(), cats.end());
    }
    return enc;
}

int FeatureEncoder::columns() const {
    if (schema == FeatureSchema::Offline)
        return static_cast<int>(collection_categories.size()) + 2;
    return 3;  // title_chars, title_words, hour_of_day
}

Eigen::VectorXd FeatureEncoder::encode(const FeatureVector& features) const {
    bool wants_hour = schema == FeatureSchema::Online;
    if (wants_hour && !features.hour_of_day)
        throw SchemaError("missing feature: hour_of_day");
    if (!wants_hour && features.hour_of_day)
        throw SchemaError("unexpected feature: hour_of_day");

    Eigen::VectorXd row = Eigen::VectorXd::Zero(columns());
    int c = 0;
    if (schema == FeatureSchema::Offline) {
        auto it = std::lower_bound(collection_categories.begin(),
                                   collection_categories.end(), features.collection_id);
        if (it != collection_categories.end() && *it == features.collection_id)
            row[std::distance(collection_categories.begin(), it)] = 1.0;
        c = static_cast<int>(collection_categories.size());
    }
    row[c++] = static_cast<double>(features.title_chars);
    row[c++] = static_cast<double>(features.title_words);
    if (wants_hour) row[c++] = static_cast<double>(*features.hour_of_day);
    return row;
}

std::vector<std::string> FeatureEncoder::column_names() const {
    std::vector<std::string> names;
    if (schema == FeatureSchema::Offline)
        for (const auto& cat : collection_categories) names.push_back("collection=" + cat);
    names.push_back("title_chars");
    names.push_back("title_words");
    if (schema == FeatureSchema::Online) names.push_back("hour_of_day");
    return names;
}

EncodedMatrix encode_dataset(const MetaDataset& dataset, const FeatureEncoder& encoder) {
    EncodedMatrix m;
    m.encoder = encoder;
    m.rows.resize(static_cast<Eigen::Index>(dataset.instances.size()), encoder.columns());
    m.labels.reserve(dataset.instances.size());
    for (size_t i = 0; i < dataset.instances.size(); ++i) {
        m.rows.row(static_cast<Eigen::Index>(i)) = encoder.encode(dataset.instances[i].features);
        m.labels.push_back(dataset.instances[i].best);
    }
    return m;
}

EncodedMatrix encode_dataset(const MetaDataset& dataset) {
    return encode_dataset(dataset, FeatureEncoder::fit(dataset));
}

}  // namespace metasel
