#include "skg/kg.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace skg {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

void load_triple_file(const std::string& path, std::vector<std::vector<std::string>>& out) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open triple file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 3)
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": expected 3 tab-separated fields, got " +
                            std::to_string(fields.size()));
        out.push_back(std::move(fields));
    }
}

}  // namespace

std::string KnowledgeGraph::entity_text(int e) const {
    const EntityRecord& rec = entity(e);
    if (rec.description.empty()) return rec.name;
    return rec.name + ", " + rec.description;
}

KnowledgeGraph load_graph(const std::string& train_path,
                          const std::string& valid_path,
                          const std::string& test_path,
                          const std::string& entity_text_path,
                          const std::string& relation_text_path) {
    KnowledgeGraph g;

    std::vector<std::vector<std::string>> raw_train, raw_valid, raw_test;
    load_triple_file(train_path, raw_train);
    load_triple_file(valid_path, raw_valid);
    load_triple_file(test_path, raw_test);

    // Entity text table.
    {
        std::ifstream in(entity_text_path);
        if (!in) throw DataError("cannot open entity text file: " + entity_text_path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            line = strip_cr(line);
            if (line.empty()) continue;
            auto fields = split_tabs(line);
            if (fields.size() != 2)
                throw DataError(entity_text_path + ":" + std::to_string(lineno) +
                                ": expected 2 tab-separated fields, got " +
                                std::to_string(fields.size()));
            if (g.entity_ids.count(fields[0]))
                throw DataError(entity_text_path + ":" + std::to_string(lineno) +
                                ": duplicate entity id " + fields[0]);
            EntityRecord rec;
            rec.id = fields[0];
            // Text is "name, description" when a comma is present; the part
            // before the first comma is the display name.
            const std::string& text = fields[1];
            std::size_t comma = text.find(',');
            if (comma == std::string::npos) {
                rec.name = text;
            } else {
                rec.name = text.substr(0, comma);
                std::size_t ds = comma + 1;
                while (ds < text.size() && text[ds] == ' ') ++ds;
                rec.description = text.substr(ds);
            }
            if (rec.name.empty()) rec.name = rec.id;
            g.entity_ids.emplace(rec.id, static_cast<int>(g.entities.size()));
            g.entities.push_back(std::move(rec));
        }
    }

    // Relation text table.
    {
        std::ifstream in(relation_text_path);
        if (!in) throw DataError("cannot open relation text file: " + relation_text_path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            line = strip_cr(line);
            if (line.empty()) continue;
            auto fields = split_tabs(line);
            if (fields.size() != 2)
                throw DataError(relation_text_path + ":" + std::to_string(lineno) +
                                ": expected 2 tab-separated fields, got " +
                                std::to_string(fields.size()));
            if (g.relation_ids.count(fields[0]))
                throw DataError(relation_text_path + ":" + std::to_string(lineno) +
                                ": duplicate relation id " + fields[0]);
            g.relation_ids.emplace(fields[0], static_cast<int>(g.relations.size()));
            g.relations.emplace_back(fields[0], fields[1]);
        }
    }

    auto entity_index = [&g](const std::string& id) {
        auto it = g.entity_ids.find(id);
        if (it != g.entity_ids.end()) return it->second;
        // Entities referenced by triples but absent from the text file get
        // their id as name and an empty description.
        EntityRecord rec;
        rec.id = id;
        rec.name = id;
        int idx = static_cast<int>(g.entities.size());
        g.entity_ids.emplace(id, idx);
        g.entities.push_back(std::move(rec));
        ++g.missing_text_count;
        return idx;
    };
    auto relation_index = [&g](const std::string& id) {
        auto it = g.relation_ids.find(id);
        if (it != g.relation_ids.end()) return it->second;
        int idx = static_cast<int>(g.relations.size());
        g.relation_ids.emplace(id, idx);
        g.relations.emplace_back(id, id);
        return idx;
    };

    auto resolve = [&](const std::vector<std::vector<std::string>>& raw,
                       std::vector<Triple>& split, bool dedup) {
        std::unordered_set<Triple, TripleHash> seen;
        for (const auto& f : raw) {
            Triple t;
            t.head = entity_index(f[0]);
            t.relation = relation_index(f[1]);
            t.tail = entity_index(f[2]);
            if (dedup && !seen.insert(t).second) {
                ++g.duplicate_triple_count;
                continue;
            }
            split.push_back(t);
        }
    };
    resolve(raw_train, g.train, true);
    resolve(raw_valid, g.valid, true);
    resolve(raw_test, g.test, true);

    for (const Triple& t : g.train) {
        g.hr_index[{t.head, t.relation}].push_back(t.tail);
        g.rt_index[{t.relation, t.tail}].push_back(t.head);
    }
    for (auto* index : {&g.hr_index, &g.rt_index}) {
        for (auto& [key, members] : *index) {
            std::sort(members.begin(), members.end());
            members.erase(std::unique(members.begin(), members.end()), members.end());
        }
    }

    for (const auto* split : {&g.train, &g.valid, &g.test})
        for (const Triple& t : *split) g.known_index.insert(t);

    return g;
}

GraphStats compute_stats(const KnowledgeGraph& g) {
    GraphStats s;
    s.n_entities = g.n_entities();
    s.n_relations = g.n_relations();
    s.n_train = g.train.size();
    s.n_valid = g.valid.size();
    s.n_test = g.test.size();
    if (g.train.empty()) return s;

    std::size_t shared_hr = 0, shared_rt = 0;
    for (const Triple& t : g.train) {
        if (g.hr_index.at({t.head, t.relation}).size() >= 2) ++shared_hr;
        if (g.rt_index.at({t.relation, t.tail}).size() >= 2) ++shared_rt;
    }
    s.share_hr = static_cast<double>(shared_hr) / static_cast<double>(g.train.size());
    s.share_rt = static_cast<double>(shared_rt) / static_cast<double>(g.train.size());

    double tail_sum = 0.0;
    for (const auto& [key, members] : g.hr_index) tail_sum += static_cast<double>(members.size());
    s.avg_tails_per_hr = tail_sum / static_cast<double>(g.hr_index.size());

    double head_sum = 0.0;
    for (const auto& [key, members] : g.rt_index) head_sum += static_cast<double>(members.size());
    s.avg_heads_per_rt = head_sum / static_cast<double>(g.rt_index.size());
    return s;
}

std::pair<double, double> focusing_ratios(const KnowledgeGraph& g,
                                          double clamp_lo, double clamp_hi) {
    if (g.train.empty()) throw DataError("focusing_ratios: empty train split");
    GraphStats s = compute_stats(g);
    auto clamp = [&](double x) { return std::min(clamp_hi, std::max(clamp_lo, x)); };
    double r_head = clamp(s.avg_heads_per_rt / s.avg_tails_per_hr);
    double r_tail = clamp(s.avg_tails_per_hr / s.avg_heads_per_rt);
    return {r_head, r_tail};
}

void write_graph_tsv(const KnowledgeGraph& g, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto write_split = [&](const std::vector<Triple>& split, const std::string& name) {
        std::ofstream out(fs::path(dir) / name);
        if (!out) throw DataError("cannot write " + name + " under " + dir);
        for (const Triple& t : split)
            out << g.entity(t.head).id << '\t' << g.relations[static_cast<std::size_t>(t.relation)].first
                << '\t' << g.entity(t.tail).id << '\n';
    };
    write_split(g.train, "train.txt");
    write_split(g.valid, "valid.txt");
    write_split(g.test, "test.txt");

    {
        std::ofstream out(fs::path(dir) / "entity2text.txt");
        for (const EntityRecord& rec : g.entities) {
            out << rec.id << '\t' << rec.name;
            if (!rec.description.empty()) out << ", " << rec.description;
            out << '\n';
        }
    }
    {
        std::ofstream out(fs::path(dir) / "relation2text.txt");
        for (const auto& [id, text] : g.relations) out << id << '\t' << text << '\n';
    }
}

}  // namespace skg
