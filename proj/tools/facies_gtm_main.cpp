#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "facies/pipeline.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON configuration file")
        ->required()
        ->type_name("PATH");
    cmd->add_option("--override", args.overrides,
                    "Override a config value, e.g. gtm.max_iterations=50 (repeatable)")
        ->type_name("KEY=VALUE");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seismic facies classification: GLCM texture attributes, RBF gap filling, "
                 "GTM latent mapping, k-means facies labeling, and slice rendering"};
    app.require_subcommand(1);

    CommonArgs args;
    const char* descriptions[][2] = {
        {"synth", "Generate a synthetic labeled volume from synth.spec"},
        {"attributes", "Compute GLCM texture attributes from the input volume"},
        {"interpolate", "Fill missing attribute rows with RBF interpolants"},
        {"train", "Train the GTM on the completed attribute table"},
        {"classify", "Project all rows through the model and label facies"},
        {"render", "Render facies or attribute slices as PPM images"},
        {"pipeline", "Run attributes, interpolate, train, classify, render in order"},
    };
    for (auto& [name, help] : descriptions) add_common(app.add_subcommand(name, help), args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        facies::PipelineConfig config =
            facies::load_pipeline_config(args.config_path, args.overrides);
        if (command == "synth") {
            facies::run_synth(config);
        } else if (command == "attributes") {
            facies::run_attributes(config);
        } else if (command == "interpolate") {
            facies::run_interpolate(config);
        } else if (command == "train") {
            facies::run_train(config);
        } else if (command == "classify") {
            facies::run_classify(config, std::cout);
        } else if (command == "render") {
            facies::run_render(config);
        } else if (command == "pipeline") {
            facies::run_pipeline(config, std::cout);
        }
    } catch (const facies::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
