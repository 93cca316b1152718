#include "hcseq/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

enum ExitCode { ok = 0, usage = 1, data = 2 };

hcseq::CurveKind curve_from_flag(const std::string& name) {
    auto kind = hcseq::parse_curve_kind(name);
    if (!kind) throw hcseq::usage_error("unknown curve '" + name + "'");
    return *kind;
}

int report(bool json, int code, const std::string& kind, const std::string& message) {
    if (json) {
        std::cerr << nlohmann::json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
    } else {
        std::cerr << "hcseq: " << message << '\n';
    }
    return code;
}

} // namespace

int main(int argc, char** argv) {
    using namespace hcseq;

    CLI::App app{"Encode DNA sequences as space-filling-curve images and analyse curve locality", "hcseq"};
    app.require_subcommand(1);
    bool json_errors = false;
    app.add_flag("--json-errors", json_errors, "Print errors as JSON objects on stderr");
    const std::vector<std::string> curve_names{"hilbert", "reshape", "snake", "diagsnake"};

    cli::EncodeArgs encode;
    std::string encode_curve = "hilbert";
    bool flat = false;
    auto* encode_cmd = app.add_subcommand("encode", "Encode a canonical TSV dataset into a tensor archive");
    encode_cmd->add_option("input", encode.input, "Canonical TSV (id, label, sequence)")->required();
    encode_cmd->add_option("--out", encode.output, "Archive path; the manifest goes to <out>.json")->required();
    encode_cmd->add_option("--curve", encode_curve, "Curve kind")->check(CLI::IsMember(curve_names));
    encode_cmd->add_option("--k", encode.k, "k-mer length")->check(CLI::Range(1u, max_k));
    encode_cmd->add_flag("--flat", flat, "Emit 1 x (L-k+1) images instead of curve images");
    encode_cmd->add_option("--threads", encode.threads, "Worker threads")->check(CLI::PositiveNumber);
    encode_cmd->add_option("--split", encode.split_manifest, "Split manifest to reference from the archive manifest");

    cli::GammaArgs gamma;
    std::vector<std::string> gamma_curves;
    std::string gamma_csv;
    auto* gamma_cmd = app.add_subcommand("gamma", "Tabulate the long-range locality ratio of each curve");
    gamma_cmd->add_option("--lengths", gamma.lengths, "Sequence lengths (powers of 4)")->delimiter(',');
    gamma_cmd->add_option("--curve", gamma_curves, "Curve kinds; 'sequence' adds the unmapped baseline")
        ->delimiter(',');
    gamma_cmd->add_option("--out", gamma_csv, "CSV output path");
    gamma_cmd->add_option("--threads", gamma.threads, "Worker threads")->check(CLI::PositiveNumber);

    cli::SplitArgs split_args;
    auto* split_cmd = app.add_subcommand("split", "Partition a dataset 90/5/5 and write a split manifest");
    split_cmd->add_option("input", split_args.input, "Canonical TSV")->required();
    split_cmd->add_option("--seed", split_args.seed, "Shuffle seed")->required();
    split_cmd->add_option("--out", split_args.output, "Manifest path")->required();

    cli::InspectArgs inspect;
    auto* inspect_cmd = app.add_subcommand("inspect", "Render one archived record and optionally verify it");
    inspect_cmd->add_option("archive", inspect.archive, "Tensor archive")->required();
    inspect_cmd->add_option("--record", inspect.record, "Record index");
    inspect_cmd->add_option("--verify", inspect.verify_tsv, "Canonical TSV the archive was encoded from");

    cli::ConvertArgs convert;
    std::string convert_format = "uci-splice";
    auto* convert_cmd = app.add_subcommand("convert", "Convert a raw public dataset to canonical TSV");
    convert_cmd->add_option("input", convert.input, "Raw dataset file")->required();
    convert_cmd->add_option("--format", convert_format, "Input format")
        ->check(CLI::IsMember({"uci-splice", "fasta"}));
    convert_cmd->add_option("--out", convert.output, "Canonical TSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report(json_errors, usage, "usage", e.what());
    }

    try {
        if (*encode_cmd) {
            encode.curve = flat ? std::nullopt : std::optional(curve_from_flag(encode_curve));
            cli::cmd_encode(encode, std::cout);
        } else if (*gamma_cmd) {
            if (!gamma_curves.empty()) {
                gamma.kinds.clear();
                for (const auto& name : gamma_curves) {
                    if (name == "sequence") gamma.include_sequence = true;
                    else gamma.kinds.push_back(curve_from_flag(name));
                }
            }
            if (!gamma_csv.empty()) gamma.csv_output = gamma_csv;
            cli::cmd_gamma(gamma, std::cout);
        } else if (*split_cmd) {
            cli::cmd_split(split_args, std::cout);
        } else if (*inspect_cmd) {
            if (!cli::cmd_inspect(inspect, std::cout))
                return report(json_errors, data, "verify", "decoded record does not match " + *inspect.verify_tsv);
        } else if (*convert_cmd) {
            convert.format = convert_format == "fasta" ? cli::RawFormat::Fasta : cli::RawFormat::UciSplice;
            cli::cmd_convert(convert, std::cout);
        }
    } catch (const usage_error& e) {
        return report(json_errors, usage, "usage", e.what());
    } catch (const std::exception& e) {
        return report(json_errors, data, "data", e.what());
    }
    return ok;
}
