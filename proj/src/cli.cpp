#include "dualminer/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <ostream>
#include <sstream>

#include "dualminer/discovery.hpp"
#include "dualminer/errors.hpp"
#include "dualminer/log_io.hpp"
#include "dualminer/metrics.hpp"
#include "dualminer/petri.hpp"

namespace dualminer::cli {

std::vector<double> parse_grid_values(std::string_view text) {
    std::vector<double> values;
    while (true) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
            throw std::invalid_argument("grid value '" + std::string(item) + "' is not a number");
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("grid value " + std::string(item) + " is outside [0, 1]");
        if (!values.empty() && v <= values.back()) throw std::invalid_argument("grid values must be strictly ascending");
        values.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return values;
}

namespace {

struct CsvFlags {
    std::string case_column = "case";
    std::string activity_column = "activity";
    std::string timestamp_column;
    std::string delimiter = ",";

    void attach(CLI::App& cmd) {
        cmd.add_option("--case-column", case_column, "CSV case id column")->capture_default_str();
        cmd.add_option("--activity-column", activity_column, "CSV activity column")->capture_default_str();
        cmd.add_option("--timestamp-column", timestamp_column, "CSV timestamp column (optional)");
        cmd.add_option("--delimiter", delimiter, "CSV field delimiter")->capture_default_str();
    }

    CsvConfig config() const {
        CsvConfig c;
        c.case_column = case_column;
        c.activity_column = activity_column;
        if (!timestamp_column.empty()) c.timestamp_column = timestamp_column;
        c.delimiter = delimiter.empty() ? ',' : delimiter.front();
        return c;
    }
};

struct DiscoverFlags {
    std::string log_plus;
    std::string log_minus;
    double sup = 0.0;
    double ratio = 0.0;
    std::uint64_t seed = 0;
    std::size_t exhaustive_limit = DiscoveryParams{}.exhaustive_limit;
    std::size_t search_restarts = DiscoveryParams{}.search_restarts;
    std::string out_tree;
    std::string out_pnml;

    DiscoveryParams params() const {
        DiscoveryParams p;
        p.sup = sup;
        p.ratio = ratio;
        p.seed = seed;
        p.exhaustive_limit = exhaustive_limit;
        p.search_restarts = search_restarts;
        return p;
    }
};

struct Sweep {
    std::string log_plus;
    std::string log_minus;
    std::string sup_values;
    std::string ratio_values;
    std::uint64_t seed = 0;
    std::size_t exhaustive_limit = DiscoveryParams{}.exhaustive_limit;
    std::string out;
};

int cmd_split(const std::string& log_path, const std::string& by, const std::string& out_plus,
              const std::string& out_minus, const CsvConfig& csv, std::ostream& out) {
    const auto log = read_log_file(log_path, csv);
    const auto predicate = parse_split_predicate(by);
    auto [plus, minus] = split_by_predicate(log, predicate);
    write_file(out_plus, write_xes(plus));
    write_file(out_minus, write_xes(minus));
    out << "plus=" << plus.total_count() << " minus=" << minus.total_count() << '\n';
    return kOk;
}

int cmd_discover(const DiscoverFlags& f, const CsvConfig& csv, std::ostream& out) {
    const auto plus = read_log_file(f.log_plus, csv);
    const auto minus = read_log_file(f.log_minus, csv);
    const auto result = discover(plus, minus, f.params());
    const auto text = to_text(result.tree);
    write_file(f.out_tree, text + "\n");
    write_file(f.out_pnml, export_pnml(tree_to_petri(result.tree)));
    out << "cut-decisions=" << result.decisions.size() << " tree=" << text << '\n';
    return kOk;
}

int cmd_evaluate(const std::string& model, const std::string& log_plus, const std::string& log_minus,
                 const std::string& out_path, const CsvConfig& csv, std::ostream& out) {
    const auto net = import_pnml(read_file(model));
    const auto plus = read_log_file(log_plus, csv);
    const auto minus = read_log_file(log_minus, csv);
    const auto report = evaluate(plus, minus, net);
    const auto row = metrics_csv_row(report);
    write_file(out_path, metrics_csv_header() + "\n" + row + "\n");
    out << row << '\n';
    return kOk;
}

int cmd_sweep(const Sweep& s, const SweepGrid& grid, const CsvConfig& csv, std::ostream& out) {
    const auto plus = read_log_file(s.log_plus, csv);
    const auto minus = read_log_file(s.log_minus, csv);

    struct Cell {
        double sup;
        double ratio;
        std::string row;
    };
    std::vector<Cell> cells;
    for (auto sup : grid.sup_values)
        for (auto ratio : grid.ratio_values) cells.push_back({sup, ratio, {}});

    const auto n = static_cast<std::int64_t>(cells.size());
    std::exception_ptr failure;
    // cells are independent; rows are written afterwards in grid order
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            DiscoveryParams params;
            params.sup = cells[i].sup;
            params.ratio = cells[i].ratio;
            params.seed = s.seed;
            params.exhaustive_limit = s.exhaustive_limit;
            params.execution = Execution::Serial;
            const auto tree = discover(plus, minus, params).tree;
            ConformanceOptions options;
            options.execution = Execution::Serial;
            const auto report = evaluate(plus, minus, tree_to_petri(tree), options);
            cells[i].row = format_g6(cells[i].sup) + "," + format_g6(cells[i].ratio) + "," + metrics_csv_row(report);
        } catch (...) {
#pragma omp critical(dualminer_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::string csv_text = "sup,ratio," + metrics_csv_header() + "\n";
    for (const auto& c : cells) csv_text += c.row + "\n";
    write_file(s.out, csv_text);
    out << "rows=" << cells.size() << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Process discovery from desirable and undesirable event logs", "dualminer"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    CsvFlags csv;

    std::string split_log;
    std::string split_by;
    std::string split_plus;
    std::string split_minus;
    auto* split = app.add_subcommand("split", "Split a log into two sub-logs by a predicate");
    split->add_option("--log", split_log, "Input log (.xes or .csv)")->required();
    split->add_option("--by", split_by, "presence:<activity> | duration-gt:<ISO-8601> | attr:<key>=<value>")->required();
    split->add_option("--out-plus", split_plus, "XES output for traces satisfying the predicate")->required();
    split->add_option("--out-minus", split_minus, "XES output for the remaining traces")->required();
    csv.attach(*split);

    DiscoverFlags disc;
    auto* discover_cmd = app.add_subcommand("discover", "Discover a process tree and Petri net");
    discover_cmd->add_option("--log-plus", disc.log_plus, "Desirable log")->required();
    discover_cmd->add_option("--log-minus", disc.log_minus, "Undesirable log (may contain zero traces)")->required();
    discover_cmd->add_option("--sup", disc.sup, "Missing-relation strictness")->required()->check(CLI::Range(0.0, 1.0));
    discover_cmd->add_option("--ratio", disc.ratio, "Weight of the undesirable log")->required()->check(CLI::Range(0.0, 1.0));
    discover_cmd->add_option("--seed", disc.seed, "Seed for the local cut search")->capture_default_str();
    discover_cmd->add_option("--exhaustive-limit", disc.exhaustive_limit, "Largest alphabet searched exhaustively")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{0}, kMaxExhaustiveAlphabet));
    discover_cmd->add_option("--search-restarts", disc.search_restarts, "Random restarts per operator in local search")
        ->capture_default_str();
    discover_cmd->add_option("--out-tree", disc.out_tree, "Process tree text output")->required();
    discover_cmd->add_option("--out-pnml", disc.out_pnml, "PNML output")->required();
    csv.attach(*discover_cmd);

    std::string eval_model;
    std::string eval_plus;
    std::string eval_minus;
    std::string eval_out;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a PNML model against both logs");
    evaluate_cmd->add_option("--model", eval_model, "PNML model")->required();
    evaluate_cmd->add_option("--log-plus", eval_plus, "Desirable log")->required();
    evaluate_cmd->add_option("--log-minus", eval_minus, "Undesirable log")->required();
    evaluate_cmd->add_option("--out", eval_out, "CSV output")->required();
    csv.attach(*evaluate_cmd);

    Sweep sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Discover and evaluate over a sup x ratio grid");
    sweep_cmd->add_option("--log-plus", sweep.log_plus, "Desirable log")->required();
    sweep_cmd->add_option("--log-minus", sweep.log_minus, "Undesirable log")->required();
    sweep_cmd->add_option("--sup-values", sweep.sup_values, "Ascending comma-separated sup values")->required();
    sweep_cmd->add_option("--ratio-values", sweep.ratio_values, "Ascending comma-separated ratio values")->required();
    sweep_cmd->add_option("--seed", sweep.seed, "Seed for the local cut search")->capture_default_str();
    sweep_cmd->add_option("--exhaustive-limit", sweep.exhaustive_limit, "Largest alphabet searched exhaustively")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{0}, kMaxExhaustiveAlphabet));
    sweep_cmd->add_option("--out", sweep.out, "CSV output")->required();
    csv.attach(*sweep_cmd);

    std::vector<std::string> argv_storage{"dualminer"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    SweepGrid grid;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (sweep_cmd->parsed()) {
            grid.sup_values = parse_grid_values(sweep.sup_values);
            grid.ratio_values = parse_grid_values(sweep.ratio_values);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        const auto config = csv.config();
        if (split->parsed()) return cmd_split(split_log, split_by, split_plus, split_minus, config, out);
        if (discover_cmd->parsed()) return cmd_discover(disc, config, out);
        if (evaluate_cmd->parsed()) return cmd_evaluate(eval_model, eval_plus, eval_minus, eval_out, config, out);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep, grid, config, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace dualminer::cli
