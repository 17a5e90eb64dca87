#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace ghvfdt::cli;

    CLI::App app{"Hoeffding trees for imbalanced, partially labeled streams"};
    app.require_subcommand(1);

    RunOptions run;
    std::size_t threads = 0;
    std::string format;
    std::string output;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment grid from a config file");
    run_cmd->add_option("--config", run.config_path, "Experiment config (key = value)")
        ->required()
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--threads", threads,
                        "Worker threads (default: $GHVFDT_THREADS or core count)");
    run_cmd->add_option("--output", output, "Output file (overrides the config)");
    run_cmd->add_option("--format", format, "csv or json (overrides the config)")
        ->check(CLI::IsMember({"csv", "json"}));

    ValidateOptions validate;
    auto* validate_cmd = app.add_subcommand("validate", "Check a dataset CSV");
    validate_cmd->add_option("path", validate.dataset, "Dataset CSV")->required();
    validate_cmd->add_option("--pretrain-pos", validate.pretrain_pos, "Positive pre-training quota");
    validate_cmd->add_option("--pretrain-neg", validate.pretrain_neg, "Negative pre-training quota");

    ConvertCommandOptions convert;
    std::string minority;
    std::string delimiter;
    std::string convert_output;
    auto* convert_cmd =
        app.add_subcommand("convert", "Turn a multi-class table into a binary dataset CSV");
    convert_cmd->add_option("path", convert.input, "Input table (class in the last column)")
        ->required()
        ->check(CLI::ExistingFile);
    convert_cmd->add_option("--minority-class", minority,
                            "Class value(s) mapped to the positive class, comma separated")
        ->required();
    convert_cmd->add_flag("--no-header", convert.no_header, "Input has no header row");
    convert_cmd->add_option("--delimiter", delimiter, "Field separator (default: auto)");
    convert_cmd->add_option("--output", convert_output, "Output CSV");

    CLI11_PARSE(app, argc, argv);

    if (*run_cmd) {
        if (threads > 0) run.threads = threads;
        if (!output.empty()) run.output = output;
        if (!format.empty()) run.format = parse_format(format);
        return cmd_run(run, std::cout, std::cerr);
    }
    if (*validate_cmd) return cmd_validate(validate, std::cout, std::cerr);

    for (std::size_t start = 0;;) {
        const auto comma = minority.find(',', start);
        auto item = minority.substr(start, comma - start);
        if (!item.empty()) convert.minority.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (delimiter == "\\t" || delimiter == "tab") delimiter = "\t";
    if (delimiter.size() > 1) {
        std::cerr << "error: --delimiter must be a single character\n";
        return kExitError;
    }
    if (!delimiter.empty()) convert.delimiter = delimiter[0];
    if (!convert_output.empty()) convert.output = convert_output;
    return cmd_convert(convert, std::cout, std::cerr);
}
