#include "skg/expansion.hpp"

#include <algorithm>
#include <numeric>

#include "skg/textrank.hpp"

namespace skg {

std::string build_known_text(
    const std::vector<std::pair<std::string, std::string>>& names_and_descs,
    const std::string& relation_text,
    const std::string* other_entity_text) {
    std::string out;
    for (std::size_t i = 0; i < names_and_descs.size(); ++i) {
        if (i > 0) out += " [PSEP] ";
        out += names_and_descs[i].first;
        if (!names_and_descs[i].second.empty()) {
            out += ", ";
            out += names_and_descs[i].second;
        }
    }
    out += " [SEP] ";
    out += relation_text;
    if (other_entity_text != nullptr) {
        out += " [SEP] ";
        out += *other_entity_text;
    }
    return out;
}

std::string original_known_text(const KnowledgeGraph& g, const Triple& t,
                                Direction direction) {
    if (direction == Direction::TailPrediction) {
        const EntityRecord& h = g.entity(t.head);
        return build_known_text({{h.name, h.description}}, g.relation_text(t.relation));
    }
    const EntityRecord& tl = g.entity(t.tail);
    return build_known_text({{tl.name, tl.description}},
                            "inverse " + g.relation_text(t.relation));
}

std::string relation_input_text(const KnowledgeGraph& g, const Triple& t) {
    return g.entity_text(t.head) + " [SEP] " + g.entity_text(t.tail);
}

namespace {

// Summarizes the concatenated description text of a member set with one
// TextRank pass over all sentences, then reassembles each member's
// description from its own selected sentences. Names stay verbatim.
std::vector<std::pair<std::string, std::string>> summarized_member_texts(
    const KnowledgeGraph& g, const std::vector<int>& members,
    const ExpansionConfig& cfg) {
    std::vector<std::string> sentences;
    std::vector<std::size_t> owner;
    for (std::size_t m = 0; m < members.size(); ++m) {
        for (auto& s : split_sentences(g.entity(members[m]).description)) {
            sentences.push_back(std::move(s));
            owner.push_back(m);
        }
    }

    std::vector<std::size_t> keep;
    if (sentences.size() <= cfg.top_n) {
        keep.resize(sentences.size());
        std::iota(keep.begin(), keep.end(), 0);
    } else {
        SentenceGraph sg = build_sentence_graph(sentences, cfg.damping);
        keep = select_top_sentences(textrank_scores(sg), cfg.top_n);
    }

    std::vector<std::string> descs(members.size());
    for (std::size_t k : keep) {
        std::string& d = descs[owner[k]];
        if (!d.empty()) d += ". ";
        d += sentences[k];
    }
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(members.size());
    for (std::size_t m = 0; m < members.size(); ++m)
        out.emplace_back(g.entity(members[m]).name, std::move(descs[m]));
    return out;
}

std::vector<int> capped_members(const std::vector<int>& members,
                                const std::vector<int>& degree,
                                std::size_t cap) {
    if (members.size() <= cap) return members;
    std::vector<int> out = members;  // sorted by entity index already
    std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
        return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
    });
    out.resize(cap);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<ExpandedExample> expand_dataset(const KnowledgeGraph& g,
                                            const ExpansionConfig& cfg) {
    std::vector<ExpandedExample> out;
    out.reserve(2 * g.train.size());

    for (const Triple& t : g.train) {
        ExpandedExample hp;
        hp.direction = Direction::HeadPrediction;
        hp.known_text = original_known_text(g, t, Direction::HeadPrediction);
        hp.target = t.head;
        hp.relation = t.relation;
        hp.group_members = {t.tail};
        out.push_back(std::move(hp));

        ExpandedExample tp;
        tp.direction = Direction::TailPrediction;
        tp.known_text = original_known_text(g, t, Direction::TailPrediction);
        tp.target = t.tail;
        tp.relation = t.relation;
        tp.group_members = {t.head};
        out.push_back(std::move(tp));
    }

    std::vector<int> degree(g.n_entities(), 0);
    for (const Triple& t : g.train) {
        ++degree[static_cast<std::size_t>(t.head)];
        ++degree[static_cast<std::size_t>(t.tail)];
    }

    // Head-entity sets (shared (r,t)) feed tail prediction; the set replaces
    // the single head on the known side.
    std::vector<std::pair<PairKey, const std::vector<int>*>> rt_keys;
    for (const auto& [key, members] : g.rt_index)
        if (members.size() >= cfg.min_group_size) rt_keys.emplace_back(key, &members);
    std::sort(rt_keys.begin(), rt_keys.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, members] : rt_keys) {
        ExpandedExample ex;
        ex.direction = Direction::TailPrediction;
        ex.relation = key.first;
        ex.target = key.second;
        ex.group_members = capped_members(*members, degree, cfg.max_group_size);
        ex.known_text = build_known_text(summarized_member_texts(g, ex.group_members, cfg),
                                         g.relation_text(ex.relation));
        out.push_back(std::move(ex));
    }

    // Tail-entity sets (shared (h,r)) feed head prediction.
    std::vector<std::pair<PairKey, const std::vector<int>*>> hr_keys;
    for (const auto& [key, members] : g.hr_index)
        if (members.size() >= cfg.min_group_size) hr_keys.emplace_back(key, &members);
    std::sort(hr_keys.begin(), hr_keys.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, members] : hr_keys) {
        ExpandedExample ex;
        ex.direction = Direction::HeadPrediction;
        ex.relation = key.second;
        ex.target = key.first;
        ex.group_members = capped_members(*members, degree, cfg.max_group_size);
        ex.known_text = build_known_text(summarized_member_texts(g, ex.group_members, cfg),
                                         "inverse " + g.relation_text(ex.relation));
        out.push_back(std::move(ex));
    }

    return out;
}

}  // namespace skg
