// pda — personalized-difficulty proof-of-work analyzer.
//
// Subcommands: consecutive, table, simulate, nakamoto, reduce-info.
// Exit codes: 0 success, 1 computational failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pda/baseline.hpp"
#include "pda/chain.hpp"
#include "pda/errors.hpp"
#include "pda/model.hpp"
#include "pda/reduction.hpp"
#include "pda/simulate.hpp"

namespace {

constexpr std::uint64_t kAutoFullChainLimit = 100000;  // states; above: reduced

std::string format_probability(double value, int precision) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*e", std::max(precision - 1, 0), value);
    return buffer;
}

struct ConfigFlags {
    int n = 0;
    int k = 0;
    double alpha = 0.0;
    std::vector<double> powers;
    std::string config_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n, "number of players")->check(CLI::PositiveNumber);
        cmd->add_option("--k", k, "history window length")->check(CLI::PositiveNumber);
        cmd->add_option("--alpha", alpha,
                        "exponential difficulty base (omit or 1 for no difficulty)");
        cmd->add_option("--powers", powers, "per-player computing powers")
            ->delimiter(',');
        cmd->add_option("--config", config_path,
                        "JSON config file; explicit flags override its fields");
    }

    pda::SystemConfig resolve(const CLI::App* cmd) const {
        int use_n = n, use_k = k;
        std::optional<double> use_alpha;
        std::vector<double> use_powers = powers;
        if (cmd->count("--alpha")) use_alpha = alpha;

        if (!config_path.empty()) {
            const pda::SystemConfig base = pda::load_config_file(config_path);
            if (!cmd->count("--n")) use_n = base.n;
            if (!cmd->count("--k")) use_k = base.k;
            if (!cmd->count("--alpha") &&
                base.difficulty_fn.kind == pda::DifficultyKind::AlphaExponentialNonOrdered)
                use_alpha = base.difficulty_fn.alpha;
            if (use_powers.empty()) use_powers = base.powers;
            if (static_cast<int>(use_powers.size()) != use_n) use_powers.clear();
        }
        if (use_n <= 0 || use_k <= 0)
            throw CLI::ValidationError("--n and --k are required (flag or config file)");

        const pda::DifficultyFnSpec fn =
            use_alpha ? pda::DifficultyFnSpec::alpha_exponential(*use_alpha)
                      : pda::DifficultyFnSpec::uniform();
        return pda::SystemConfig::make(use_n, use_k, fn, std::move(use_powers));
    }
};

bool fits_full_chain(const pda::SystemConfig& config, std::uint64_t limit) {
    std::uint64_t states = 1;
    for (int i = 0; i < config.k; ++i) {
        if (states > limit / static_cast<std::uint64_t>(config.n)) return false;
        states *= static_cast<std::uint64_t>(config.n);
    }
    return states <= limit;
}

double solve_consecutive(const pda::SystemConfig& config, int player, double tol,
                         bool force_full, bool force_reduced) {
    const bool use_full =
        force_full || (!force_reduced && fits_full_chain(config, kAutoFullChainLimit));
    if (use_full)
        return pda::consecutive_winning_probability(config, player, tol);
    return pda::reduced_consecutive_probability(config, tol);
}

// --- table rendering ---

struct TableData {
    std::string title;
    std::vector<std::string> column_labels;  // first entry labels the row header
    std::vector<std::string> row_labels;
    std::vector<std::vector<double>> cells;
};

std::string render_markdown(const TableData& t, int precision) {
    std::ostringstream out;
    out << "| " << t.column_labels[0];
    for (std::size_t c = 1; c < t.column_labels.size(); ++c)
        out << " | " << t.column_labels[c];
    out << " |\n|";
    for (std::size_t c = 0; c < t.column_labels.size(); ++c) out << "---|";
    out << "\n";
    for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
        out << "| " << t.row_labels[r];
        for (double v : t.cells[r]) out << " | " << format_probability(v, precision);
        out << " |\n";
    }
    return out.str();
}

std::string render_csv(const TableData& t, int precision) {
    std::ostringstream out;
    out << t.column_labels[0];
    for (std::size_t c = 1; c < t.column_labels.size(); ++c)
        out << ',' << t.column_labels[c];
    out << '\n';
    for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
        out << t.row_labels[r];
        for (double v : t.cells[r]) out << ',' << format_probability(v, precision);
        out << '\n';
    }
    return out.str();
}

std::string render_json(const TableData& t, int precision) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
        nlohmann::json row;
        row["label"] = t.row_labels[r];
        nlohmann::json values = nlohmann::json::object();
        for (std::size_t c = 0; c < t.cells[r].size(); ++c)
            values[t.column_labels[c + 1]] =
                format_probability(t.cells[r][c], precision);
        row["values"] = values;
        rows.push_back(row);
    }
    nlohmann::json j;
    j["table"] = t.title;
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

TableData make_table1(double tol) {
    TableData t;
    t.title = "table1";
    t.column_labels = {"difficulty \\ k", "2", "3", "4", "5"};
    t.row_labels = {"No difficulty", "2-exponential non-ordered",
                    "5-exponential non-ordered"};
    const double alphas[] = {1.0, 2.0, 5.0};
    std::vector<std::vector<std::future<double>>> futures(3);
    for (int row = 0; row < 3; ++row)
        for (int k = 2; k <= 5; ++k)
            futures[row].push_back(std::async([alpha = alphas[row], k, tol] {
                const auto config = pda::SystemConfig::make(
                    5, k,
                    alpha == 1.0 ? pda::DifficultyFnSpec::uniform()
                                 : pda::DifficultyFnSpec::alpha_exponential(alpha));
                return pda::consecutive_winning_probability(config, 0, tol);
            }));
    for (auto& row : futures) {
        t.cells.emplace_back();
        for (auto& f : row) t.cells.back().push_back(f.get());
    }
    return t;
}

TableData make_table3(double tol) {
    TableData t;
    t.title = "table3";
    t.column_labels = {"n \\ k", "1", "2", "3", "4", "5", "6"};
    std::vector<std::vector<std::future<double>>> futures(7);
    for (int n = 1; n <= 7; ++n) {
        t.row_labels.push_back(std::to_string(n));
        for (int k = 1; k <= 6; ++k)
            futures[n - 1].push_back(std::async([n, k, tol] {
                const auto config = pda::SystemConfig::make(
                    n, k, pda::DifficultyFnSpec::alpha_exponential(2.0));
                return pda::reduced_consecutive_probability(config, tol);
            }));
    }
    for (auto& row : futures) {
        t.cells.emplace_back();
        for (auto& f : row) t.cells.back().push_back(f.get());
    }
    return t;
}

TableData make_table4_bitcoin() {
    TableData t;
    t.title = "table4-bitcoin";
    t.column_labels = {"mechanism \\ z", "1", "2", "3", "4", "5", "6"};
    t.row_labels = {"Bitcoin PoW (q=0.1)"};
    t.cells.emplace_back();
    for (int z = 1; z <= 6; ++z)
        t.cells.back().push_back(pda::attacker_success({0.1, z}));
    return t;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "personalized-difficulty proof-of-work analysis: exact consecutive-winning\n"
        "probabilities via full or symmetry-reduced k-th-order chains, a seeded\n"
        "mining simulator, and the classic attacker catch-up baseline"};
    app.require_subcommand(1);

    // consecutive
    auto* consecutive = app.add_subcommand(
        "consecutive", "stationary probability of one player winning k blocks in a row");
    ConfigFlags consecutive_flags;
    consecutive_flags.attach(consecutive);
    int player = 0;
    double tol = 1e-14;
    int precision = 3;
    bool force_full = false, force_reduced = false;
    consecutive->add_option("--player", player, "tracked player index");
    consecutive->add_option("--tol", tol, "stationary solve residual tolerance");
    consecutive->add_option("--precision", precision, "significant digits printed");
    auto* full_flag =
        consecutive->add_flag("--full", force_full, "force the full n^k-state chain");
    consecutive
        ->add_flag("--reduced", force_reduced,
                   "force the symmetry-reduced chain (equal powers only)")
        ->excludes(full_flag);

    // table
    auto* table = app.add_subcommand("table", "print a reference results grid");
    std::string table_id;
    std::string format = "markdown";
    std::string out_path;
    double table_tol = 1e-14;
    int table_precision = 3;
    table->add_option("--table", table_id, "one of table1, table3, table4-bitcoin")
        ->required()
        ->check(CLI::IsMember({"table1", "table3", "table4-bitcoin"}));
    table->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json", "markdown"}));
    table->add_option("--out", out_path, "write to file instead of stdout");
    table->add_option("--tol", table_tol, "stationary solve residual tolerance");
    table->add_option("--precision", table_precision, "significant digits printed");

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "seeded Monte Carlo mining run with an analytic comparison");
    ConfigFlags simulate_flags;
    simulate_flags.attach(simulate);
    std::uint64_t blocks = 1000000;
    std::uint64_t seed = 1;
    int tracked = 0;
    bool race_mode = false;
    double sim_tol = 1e-14;
    simulate->add_option("--blocks", blocks, "measured blocks (after warm-up)");
    simulate->add_option("--seed", seed, "RNG seed (mt19937_64)");
    simulate->add_option("--tracked", tracked, "player whose runs are counted");
    simulate->add_flag("--race-mode", race_mode,
                       "sample per-player exponential waiting times instead of the "
                       "categorical winner draw");
    simulate->add_option("--tol", sim_tol, "tolerance for the analytic comparison");

    // nakamoto
    auto* nakamoto = app.add_subcommand(
        "nakamoto",
        "attacker catch-up probability after z confirmations (only this baseline row "
        "of the mechanism comparison is computable; the adjusted-difficulty rows lack "
        "published parameters)");
    double q = 0.0;
    int z = 0;
    int nak_precision = 4;
    nakamoto->add_option("--q", q, "attacker computing-power fraction")->required();
    nakamoto->add_option("--z", z, "confirmation depth")->required();
    nakamoto->add_option("--precision", nak_precision, "significant digits printed");

    // reduce-info
    auto* reduce = app.add_subcommand(
        "reduce-info", "state-space sizes before and after symmetry reduction");
    int info_n = 0, info_k = 0;
    reduce->add_option("--n", info_n, "number of players")
        ->required()
        ->check(CLI::PositiveNumber);
    reduce->add_option("--k", info_k, "history window length")
        ->required()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*consecutive) {
            const pda::SystemConfig config = consecutive_flags.resolve(consecutive);
            const double p =
                solve_consecutive(config, player, tol, force_full, force_reduced);
            std::cout << format_probability(p, precision) << "\n";
        } else if (*table) {
            TableData data;
            if (table_id == "table1") data = make_table1(table_tol);
            else if (table_id == "table3") data = make_table3(table_tol);
            else data = make_table4_bitcoin();
            if (format == "markdown") emit(render_markdown(data, table_precision), out_path);
            else if (format == "csv") emit(render_csv(data, table_precision), out_path);
            else emit(render_json(data, table_precision), out_path);
        } else if (*simulate) {
            const pda::SystemConfig config = simulate_flags.resolve(simulate);
            const pda::SimulationReport report =
                pda::run_simulation(config, blocks, seed, tracked, race_mode);
            std::cout << pda::report_to_json_text(report) << "\n";

            const double rate = pda::empirical_consecutive_rate(report, config.k);
            if (config.equal_powers() || fits_full_chain(config, kAutoFullChainLimit)) {
                const double analytic =
                    solve_consecutive(config, tracked, sim_tol, false, false);
                const double windows = static_cast<double>(blocks - config.k + 1);
                const double se = std::sqrt(analytic * (1.0 - analytic) / windows);
                std::printf("m=%d rate %s vs analytic %s, z=%+.2f\n", config.k,
                            format_probability(rate, 3).c_str(),
                            format_probability(analytic, 3).c_str(),
                            (rate - analytic) / se);
            } else {
                std::printf("m=%d rate %s (no analytic value: state space too large "
                            "for the full chain and powers are unequal)\n",
                            config.k, format_probability(rate, 3).c_str());
            }
        } else if (*nakamoto) {
            std::cout << format_probability(pda::attacker_success({q, z}), nak_precision)
                      << "\n";
        } else if (*reduce) {
            std::cout << pda::reduction_info_json(pda::reduce_info(info_n, info_k))
                      << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
