#include "generank/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "generank/errors.hpp"
#include "tsv.hpp"

namespace generank {

void DiseaseSimilarityNetwork::add(std::string_view a, std::string_view b, double similarity, std::size_t line) {
    if (a.empty() || b.empty()) throw InputError("similarity record with empty disease name" + detail::at_line(line));
    if (!std::isfinite(similarity) || similarity < 0.0)
        throw InputError("similarity must be finite and non-negative" + detail::at_line(line));
    if (a == b) return;
    auto &from_a = adjacency_[std::string(a)];
    if (from_a.count(std::string(b)))
        throw InputError("duplicate similarity pair " + std::string(a) + " / " + std::string(b) + detail::at_line(line));
    from_a.emplace(b, similarity);
    adjacency_[std::string(b)].emplace(a, similarity);
}

bool DiseaseSimilarityNetwork::contains(std::string_view disease) const {
    return adjacency_.find(disease) != adjacency_.end();
}

std::vector<std::pair<std::string, double>> DiseaseSimilarityNetwork::neighbors(std::string_view disease) const {
    const auto it = adjacency_.find(disease);
    if (it == adjacency_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

void DiseaseGeneMap::add(std::string_view disease, std::string_view gene) {
    if (disease.empty() || gene.empty()) throw InputError("disease-gene record with empty field");
    associations_[std::string(disease)].emplace(gene);
}

const std::set<std::string> *DiseaseGeneMap::genes(std::string_view disease) const {
    const auto it = associations_.find(disease);
    return it == associations_.end() ? nullptr : &it->second;
}

DiseaseSimilarityNetwork read_similarity_network(std::istream &in) {
    DiseaseSimilarityNetwork sim;
    detail::for_each_tsv_line(in, [&](std::size_t line, const std::vector<std::string_view> &f) {
        if (f.size() != 3) throw InputError("malformed similarity record" + detail::at_line(line));
        sim.add(f[0], f[1], detail::parse_double(f[2], line, "similarity"), line);
    });
    return sim;
}

DiseaseGeneMap read_disease_genes(std::istream &in) {
    DiseaseGeneMap map;
    detail::for_each_tsv_line(in, [&](std::size_t line, const std::vector<std::string_view> &f) {
        if (f.size() != 2 || f[0].empty() || f[1].empty())
            throw InputError("malformed disease-gene record" + detail::at_line(line));
        map.add(f[0], f[1]);
    });
    return map;
}

TopDiseases top_similar_diseases(const DiseaseSimilarityNetwork &similarity, std::string_view query, std::size_t k) {
    if (k == 0) throw InputError("number of similar diseases must be positive");
    auto neighbors = similarity.neighbors(query);
    if (neighbors.empty()) throw InputError("disease '" + std::string(query) + "' has no similarity edges");

    // neighbors arrive in name order, so a stable sort keeps the lexicographic tie rule.
    std::stable_sort(neighbors.begin(), neighbors.end(),
                     [](const auto &x, const auto &y) { return x.second > y.second; });
    TopDiseases top;
    if (neighbors.size() < k)
        top.warnings.push_back("only " + std::to_string(neighbors.size()) + " diseases are similar to '" +
                               std::string(query) + "', fewer than the requested " + std::to_string(k));
    const auto take = std::min(k, neighbors.size());
    for (std::size_t i = 0; i < take; ++i) top.diseases.push_back({neighbors[i].first, neighbors[i].second});
    return top;
}

EvidenceResult evidence_score(std::span<const std::string> top, const DiseaseGeneMap &genes,
                              const InteractionNetwork &network, const SeedSet &seeds) {
    if (top.empty()) throw InputError("evidence scoring needs at least one disease");
    EvidenceResult result;
    result.scores.provenance = Provenance::Evidence;
    result.scores.values.assign(network.node_count(), 0.0);
    for (const auto &disease : top) {
        const auto *set = genes.genes(disease);
        if (set == nullptr) {
            result.warnings.push_back("disease '" + disease + "' has no gene associations");
            continue;
        }
        for (const auto &gene : *set) {
            const auto u = network.find(gene);
            if (u && !seeds.contains(*u)) result.scores.values[*u] += 1.0;
        }
    }
    return result;
}

} // namespace generank
