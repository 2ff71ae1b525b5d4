#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "generank/graph.hpp"
#include "generank/score.hpp"

namespace generank {

/// Undirected disease-disease similarity graph (e.g. symptom similarity).
class DiseaseSimilarityNetwork {
public:
    /// Rejects negative or non-finite similarity and duplicate pairs in
    /// either orientation. Self-pairs are ignored.
    void add(std::string_view a, std::string_view b, double similarity, std::size_t line = 0);

    bool contains(std::string_view disease) const;
    /// Neighbors of `disease` with their similarity, in name order.
    std::vector<std::pair<std::string, double>> neighbors(std::string_view disease) const;

private:
    std::map<std::string, std::map<std::string, double>, std::less<>> adjacency_;
};

/// disease -> associated gene ids
class DiseaseGeneMap {
public:
    void add(std::string_view disease, std::string_view gene);
    const std::set<std::string> *genes(std::string_view disease) const;
    bool empty() const noexcept { return associations_.empty(); }

private:
    std::map<std::string, std::set<std::string>, std::less<>> associations_;
};

/// `disease_a<TAB>disease_b<TAB>similarity`
DiseaseSimilarityNetwork read_similarity_network(std::istream &in);
/// `disease<TAB>gene_id`
DiseaseGeneMap read_disease_genes(std::istream &in);

struct SimilarDisease {
    std::string disease;
    double similarity;
};

struct TopDiseases {
    std::vector<SimilarDisease> diseases; // descending similarity, ties by name
    std::vector<std::string> warnings;
};

/// The k most similar neighbors of `query`. Fewer than k neighbors returns all
/// of them with a warning; an unknown query (or one without edges) throws InputError.
TopDiseases top_similar_diseases(const DiseaseSimilarityNetwork &similarity, std::string_view query, std::size_t k);

struct EvidenceResult {
    ScoreVector scores;
    std::vector<std::string> warnings;
};

/// score(g) = number of diseases in `top` whose gene set contains g. Seeds
/// score 0; genes absent from the network are ignored.
EvidenceResult evidence_score(std::span<const std::string> top, const DiseaseGeneMap &genes,
                              const InteractionNetwork &network, const SeedSet &seeds);

} // namespace generank
