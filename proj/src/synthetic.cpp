#include "metasel/synthetic.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "metasel/rng.hpp"

namespace metasel {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kFiller = {
    "analysis", "approach", "corpus",  "data",   "evaluation", "framework",
    "method",   "model",    "process", "results", "study",     "system"};

// All 3-element filler combinations in lexicographic order; consecutive
// documents draw consecutive combinations so no two documents share a full
// triple.
std::vector<std::array<int, 3>> filler_triples() {
    std::vector<std::array<int, 3>> out;
    int n = static_cast<int>(kFiller.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) out.push_back({a, b, c});
    return out;
}

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (size_t i = 0; i < words.size(); ++i) {
        if (i) out += ' ';
        out += words[i];
    }
    return out;
}

struct Builder {
    std::vector<Document> docs;
    std::vector<std::pair<std::string, std::string>> pairs;  // researcher, doc
    std::vector<std::array<int, 3>> triples = filler_triples();
    size_t next_triple = 0;

    std::vector<std::string> take_triple() {
        const auto& t = triples[next_triple++ % triples.size()];
        return {kFiller[static_cast<size_t>(t[0])], kFiller[static_cast<size_t>(t[1])],
                kFiller[static_cast<size_t>(t[2])]};
    }

    void add(std::string id, std::string title, std::optional<std::string> abstract) {
        Document d;
        d.doc_id = std::move(id);
        d.title = std::move(title);
        d.abstract_text = std::move(abstract);
        d.collection_id = "P00";
        docs.push_back(std::move(d));
    }
};

std::string num(int g, int i) { return std::to_string(g) + "d" + std::to_string(i); }

void build_regime_a(Builder& b, int researchers, int docs_per) {
    for (int g = 0; g < researchers; ++g) {
        std::string researcher = "ra" + std::to_string(g);
        std::vector<std::string> topic;
        for (int t = 0; t < 4; ++t)
            topic.push_back("ta" + std::to_string(g) + "w" + std::to_string(t));
        for (int i = 0; i < docs_per; ++i) {
            auto fillers = b.take_triple();
            std::vector<std::string> title(fillers.begin(), fillers.end());
            if ((g + i) % 2 == 1) title.push_back(b.take_triple()[0]);
            std::vector<std::string> abstract;
            for (const auto& t : topic)
                for (int rep = 0; rep < 3; ++rep) abstract.push_back(t);
            abstract.push_back(fillers[0]);
            abstract.push_back(fillers[1]);
            std::string id = "a" + num(g, i);
            b.add(id, join(title), join(abstract));
            b.pairs.emplace_back(researcher, id);
        }
    }
}

void build_regime_b(Builder& b, int researchers, int docs_per) {
    for (int g = 0; g < researchers; ++g) {
        std::string researcher = "rb" + std::to_string(g);
        std::vector<std::string> topic;
        for (int t = 0; t < 4; ++t)
            topic.push_back("tb" + std::to_string(g) + "w" + std::to_string(t));

        std::vector<std::vector<std::string>> junk(static_cast<size_t>(docs_per));
        for (int i = 0; i < docs_per; ++i)
            for (int w = 0; w < 5; ++w)
                junk[static_cast<size_t>(i)].push_back("xb" + std::to_string(g) + "e" + num(i, w));

        for (int i = 0; i < docs_per; ++i) {
            std::vector<std::string> title = topic;
            auto f1 = b.take_triple();
            auto f2 = b.take_triple();
            title.insert(title.end(), f1.begin(), f1.end());
            title.insert(title.end(), f2.begin(), f2.end());
            if ((g + i) % 2 == 1) title.push_back(b.take_triple()[0]);
            std::vector<std::string> abstract;
            for (const auto& x : junk[static_cast<size_t>(i)])
                for (int rep = 0; rep < 2; ++rep) abstract.push_back(x);
            abstract.push_back(f1[0]);
            abstract.push_back(f1[1]);
            std::string id = "b" + num(g, i);
            b.add(id, join(title), join(abstract));
            b.pairs.emplace_back(researcher, id);
        }

        // 10 distractors: researcher junk (2 copies of each token spread
        // round-robin) plus the topic tokens in the abstract; they pollute
        // every abstract-searching algorithm.
        std::vector<std::vector<std::string>> dist_abs(10);
        int slot = 0;
        for (int copy = 0; copy < 2; ++copy)
            for (int i = 0; i < docs_per; ++i)
                for (const auto& x : junk[static_cast<size_t>(i)])
                    dist_abs[static_cast<size_t>(slot++ % 10)].push_back(x);
        for (int m = 0; m < 10; ++m) {
            auto fillers = b.take_triple();
            std::vector<std::string> abstract = dist_abs[static_cast<size_t>(m)];
            for (const auto& t : topic)
                for (int rep = 0; rep < 2; ++rep) abstract.push_back(t);
            abstract.push_back(fillers[0]);
            b.add("bx" + num(g, m), join(fillers), join(abstract));
        }
    }
}

void build_regime_c(Builder& b, int researchers, int docs_per) {
    for (int g = 0; g < researchers; ++g) {
        std::string researcher = "rc" + std::to_string(g);
        std::vector<std::string> personal;
        for (int i = 0; i < docs_per; ++i)
            personal.push_back("uc" + std::to_string(g) + "k" + std::to_string(i));

        std::vector<std::vector<std::string>> junk(static_cast<size_t>(docs_per));
        for (int i = 0; i < docs_per; ++i)
            for (int w = 0; w < 26; ++w)
                junk[static_cast<size_t>(i)].push_back("yc" + std::to_string(g) + "e" + num(i, w));

        for (int i = 0; i < docs_per; ++i) {
            auto fillers = b.take_triple();
            std::vector<std::string> title{personal[static_cast<size_t>(i)]};
            for (const auto& f : fillers)
                for (int rep = 0; rep < 5; ++rep) title.push_back(f);
            std::vector<std::string> abstract;
            for (int j = 0; j < docs_per; ++j)
                if (j != i) abstract.push_back(personal[static_cast<size_t>(j)]);
            abstract.insert(abstract.end(), junk[static_cast<size_t>(i)].begin(),
                            junk[static_cast<size_t>(i)].end());
            abstract.push_back(fillers[0]);
            std::string id = "c" + num(g, i);
            b.add(id, join(title), join(abstract));
            b.pairs.emplace_back(researcher, id);
        }

        // 12 distractors hosting one extra copy of every junk token, so each
        // junk token has document frequency 2 and a term-vector query over
        // the abstract drowns in them.
        std::vector<std::vector<std::string>> dist_abs(12);
        int slot = 0;
        for (int i = 0; i < docs_per; ++i)
            for (const auto& y : junk[static_cast<size_t>(i)])
                dist_abs[static_cast<size_t>(slot++ % 12)].push_back(y);
        for (int m = 0; m < 12; ++m) {
            auto fillers = b.take_triple();
            std::vector<std::string> abstract = dist_abs[static_cast<size_t>(m)];
            abstract.push_back(fillers[0]);
            b.add("cx" + num(g, m), join(fillers), join(abstract));
        }
    }
}

void build_regime_d(Builder& b, int researchers, int docs_per) {
    for (int g = 0; g < researchers; ++g) {
        std::string researcher = "rd" + std::to_string(g);
        std::vector<std::string> topic;
        for (int t = 0; t < 4; ++t)
            topic.push_back("td" + std::to_string(g) + "w" + std::to_string(t));

        std::vector<std::vector<std::string>> junk(static_cast<size_t>(docs_per));
        for (int i = 0; i < docs_per; ++i)
            for (int w = 0; w < 26; ++w)
                junk[static_cast<size_t>(i)].push_back("zd" + std::to_string(g) + "e" + num(i, w));

        for (int i = 0; i < docs_per; ++i) {
            std::vector<std::string> title = topic;
            title.insert(title.end(), junk[static_cast<size_t>(i)].begin(),
                         junk[static_cast<size_t>(i)].end());
            std::string id = "d" + num(g, i);
            b.add(id, join(title), std::nullopt);
            b.pairs.emplace_back(researcher, id);
        }

        // 12 distractors with junk tokens in their titles (df 2 per token);
        // they absorb a term-vector query once the cap drops the topic terms.
        std::vector<std::vector<std::string>> dist_title(12);
        int slot = 0;
        for (int i = 0; i < docs_per; ++i)
            for (const auto& z : junk[static_cast<size_t>(i)])
                dist_title[static_cast<size_t>(slot++ % 12)].push_back(z);
        for (int m = 0; m < 12; ++m)
            b.add("dj" + num(g, m), join(dist_title[static_cast<size_t>(m)]), std::nullopt);

        // 10 distractors with the topic stuffed into short abstracts; they
        // outrank the true neighbors whenever the abstract field is searched.
        for (int m = 0; m < 10; ++m) {
            auto fillers = b.take_triple();
            std::vector<std::string> abstract;
            for (const auto& t : topic)
                for (int rep = 0; rep < 4; ++rep) abstract.push_back(t);
            b.add("dx" + num(g, m), join(fillers), join(abstract));
        }
    }
}

}  // namespace

int planted_best_class(int title_words) {
    if (title_words <= 6) return algorithm_index(algorithm_from_name("mlt_title_abstract"));
    if (title_words <= 13) return algorithm_index(algorithm_from_name("mlt_title"));
    if (title_words <= 22) return algorithm_index(algorithm_from_name("std_title_abstract"));
    return algorithm_index(algorithm_from_name("std_title"));
}

std::string planted_truth_note() {
    return "best algorithm by title words: <=6 mlt_title_abstract, 7-13 mlt_title, "
           "14-22 std_title_abstract, >=23 std_title";
}

void write_planted_corpus(const std::string& dir, const PlantedCorpusSpec& spec) {
    Builder b;
    build_regime_a(b, spec.researchers_per_regime, spec.docs_per_researcher);
    build_regime_b(b, spec.researchers_per_regime, spec.docs_per_researcher);
    build_regime_c(b, spec.researchers_per_regime, spec.docs_per_researcher);
    build_regime_d(b, spec.researchers_per_regime, spec.docs_per_researcher);
    for (int n = 0; n < 30; ++n) {
        auto fillers = b.take_triple();
        auto extra = b.take_triple();
        std::vector<std::string> title(fillers.begin(), fillers.end());
        title.push_back(extra[0]);
        title.push_back(extra[1]);
        b.add("gen" + std::to_string(n), join(title), join({extra[2], fillers[0], fillers[1]}));
    }

    fs::create_directories(dir);
    {
        std::ofstream out(fs::path(dir) / "corpus.jsonl", std::ios::binary);
        for (const auto& d : b.docs) {
            json j;
            j["doc_id"] = d.doc_id;
            j["title"] = d.title;
            if (d.abstract_text) j["abstract"] = *d.abstract_text;
            else j["abstract"] = nullptr;
            j["collection_id"] = d.collection_id;
            out << j.dump() << '\n';
        }
    }
    {
        std::ofstream out(fs::path(dir) / "judgments.csv", std::ios::binary);
        out << "researcher_id,doc_id\n";
        for (const auto& [researcher, doc] : b.pairs) out << researcher << ',' << doc << '\n';
    }
    {
        json j;
        j["note"] = planted_truth_note();
        j["researchers_per_regime"] = spec.researchers_per_regime;
        j["docs_per_researcher"] = spec.docs_per_researcher;
        std::ofstream out(fs::path(dir) / "regimes.json", std::ios::binary);
        out << j.dump(2) << '\n';
    }
}

MetaDataset planted_rule_meta(uint64_t seed, int n) {
    MetaDataset ds;
    ds.schema = FeatureSchema::Offline;
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        MetaInstance inst;
        inst.researcher_id = "synth";
        inst.doc_id = "s" + std::to_string(i);
        bool ca = rng.bernoulli(0.5);
        inst.features.collection_id = ca ? "CA" : "CB";
        // chars uniform in [20, 120] with a margin band (55, 65) excluded
        int chars = 0;
        do {
            chars = 20 + static_cast<int>(rng.uniform_int(101));
        } while (chars > 55 && chars < 65);
        inst.features.title_chars = chars;
        inst.features.title_words =
            std::max(1, chars / 6 + static_cast<int>(rng.uniform_int(3)) - 1);
        int label = (ca ? 0 : 2) + (chars >= 60 ? 1 : 0);
        inst.best = label;
        inst.scores[static_cast<size_t>(label)] = {1.0, 1.0, 1.0};
        ds.instances.push_back(std::move(inst));
    }
    return ds;
}

MetaDataset fuzz_meta(uint64_t seed, int n) {
    MetaDataset ds;
    ds.schema = FeatureSchema::Offline;
    Rng rng(seed);
    const std::vector<std::string> collections = {"P00", "P01", "J02", "W84"};
    for (int i = 0; i < n; ++i) {
        MetaInstance inst;
        inst.researcher_id = "fz" + std::to_string(static_cast<int>(rng.uniform_int(8)));
        inst.doc_id = "f" + std::to_string(i);
        inst.features.collection_id = collections[rng.uniform_int(collections.size())];
        inst.features.title_chars = 5 + static_cast<int>(rng.uniform_int(150));
        inst.features.title_words =
            std::max(1, inst.features.title_chars / (4 + static_cast<int>(rng.uniform_int(5))));
        for (int a = 0; a < kAlgorithmCount; ++a) {
            double p = rng.uniform_double();
            double r = rng.uniform_double();
            if (rng.bernoulli(0.3)) { p = 0.0; r = 0.0; }
            PRF1 m;
            m.precision = p;
            m.recall = r;
            m.f1 = (p + r) > 0 ? 2 * p * r / (p + r) : 0.0;
            inst.scores[static_cast<size_t>(a)] = m;
        }
        int best = 0;
        for (int a = 1; a < kAlgorithmCount; ++a) {
            double fa = inst.scores[static_cast<size_t>(a)].f1;
            double fb = inst.scores[static_cast<size_t>(best)].f1;
            if (fa > fb || (fa == fb && tie_break_rank(algorithm_from_index(a)) <
                                            tie_break_rank(algorithm_from_index(best))))
                best = a;
        }
        inst.best = best;
        ds.instances.push_back(std::move(inst));
    }
    return ds;
}

}  // namespace metasel
