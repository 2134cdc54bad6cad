#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dik/io.hpp"

namespace dik {

enum class Format { Text, Structured, Dot };

struct PipelineConfig {
    std::optional<std::filesystem::path> dataset;
    std::optional<std::filesystem::path> domain;
    std::optional<std::filesystem::path> interpretation;
    std::optional<std::filesystem::path> rules;
    std::optional<std::filesystem::path> knowledge_base;  // runs stages 6-7 from the document alone
    std::optional<double> epsilon;                          // falls back to the dataset's metric.epsilon, then 0
    int max_dim = 2;
    std::size_t min_support = 3;
    int stage = 7;
    std::optional<std::filesystem::path> out;
    std::set<Format> formats{Format::Text};
};

// Throws ParameterError for out-of-range settings or missing inputs.
void check_config(const PipelineConfig& c);

struct Inputs {
    std::optional<Dataset> dataset;
    std::optional<DomainDocument> domain;
    std::optional<InterpretationDocument> interpretation;
    RuleSet rules;
    std::optional<KnowledgeBaseDocument> knowledge_base;
};

// Reads and parses every input the configured stages need.
Inputs load_inputs(const PipelineConfig& c);

struct Artifact {
    int stage = 0;
    std::string name;  // e.g. "01_data_space"
    std::string text;
    std::string structured;
    std::vector<std::pair<std::string, std::string>> dot;  // file stem, DOT source
};

// Runs the stages up to c.stage, handing each artifact to `emit` as soon as
// it is complete. A stage that fails emits what it has found, then throws.
void run_pipeline(const Inputs& in, const PipelineConfig& c, const std::function<void(const Artifact&)>& emit);

// Writes the artifact files for the selected formats.
void write_artifact(const Artifact& a, const std::filesystem::path& dir, const std::set<Format>& formats);

}  // namespace dik
