// dik: runs the data -> information -> knowledge pipeline over files.

#include <cstdlib>
#include <iostream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"

#include "dik/error.hpp"
#include "dik/pipeline.hpp"

namespace {

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("dik");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("dik: %l: %v");
    const char* level = std::getenv("DIK_LOG");
    spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Build data, information and knowledge spaces from a dataset, a domain and an interpretation."};
    dik::PipelineConfig config;
    std::string dataset, domain, interpretation, rules, kb, out;
    double epsilon = 0;
    std::vector<std::string> formats{"text"};

    app.add_option("--dataset", dataset, "dataset JSON: elements, topology, optional metric and D*");
    app.add_option("--domain", domain, "domain JSON: classes, functions, relations, methods, facts");
    app.add_option("--interpretation", interpretation, "interpretation JSON: images of D* in the domain");
    app.add_option("--rules", rules, "Horn rules, one per line");
    app.add_option("--knowledge-base", kb, "knowledge-base JSON; runs stages 6 and 7 on it alone");
    auto* eps = app.add_option("--epsilon", epsilon, "similarity threshold (default: the dataset's metric.epsilon, else 0)");
    app.add_option("--max-dim", config.max_dim, "largest simplex dimension of the Rips complex")->capture_default_str();
    app.add_option("--min-support", config.min_support, "instances needed before a conjecture is made")
        ->capture_default_str();
    app.add_option("--stage", config.stage, "run stages 1..N only (1 data space ... 7 decompositions)")
        ->capture_default_str();
    app.add_option("--out", out, "directory for the stage artifacts");
    app.add_option("--format", formats, "artifact formats: text, structured, dot")
        ->delimiter(',')
        ->check(CLI::IsMember({"text", "structured", "dot"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto path = [](const std::string& s) -> std::optional<std::filesystem::path> {
        if (s.empty()) return std::nullopt;
        return std::filesystem::path(s);
    };
    config.dataset = path(dataset);
    config.domain = path(domain);
    config.interpretation = path(interpretation);
    config.rules = path(rules);
    config.knowledge_base = path(kb);
    config.out = path(out);
    if (eps->count()) config.epsilon = epsilon;
    config.formats.clear();
    for (const auto& f : formats)
        config.formats.insert(f == "text" ? dik::Format::Text : f == "structured" ? dik::Format::Structured : dik::Format::Dot);

    dik::Inputs inputs;
    try {
        inputs = dik::load_inputs(config);
    } catch (const dik::ParameterError& e) {
        std::cerr << "dik: " << e.what() << "\n";
        return 2;
    } catch (const dik::Error& e) {
        std::cerr << "dik: " << e.what() << "\n";
        return e.exit_code();
    }

    try {
        dik::run_pipeline(inputs, config, [&](const dik::Artifact& a) {
            std::cout << a.text << "\n";
            if (config.out) dik::write_artifact(a, *config.out, config.formats);
            spdlog::info("stage {} done ({})", a.stage, a.name);
        });
    } catch (const dik::Error& e) {
        std::cout.flush();
        std::cerr << "dik: " << e.what() << "\n";
        return e.exit_code();
    }
    return 0;
}
