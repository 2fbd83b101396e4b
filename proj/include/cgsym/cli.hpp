#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cgsym/cgsym.hpp"

namespace cgsym::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline HybridGraph load_graph(const std::string& path) {
    try {
        return parse_graph(read_file(path));
    } catch (const parse_error& e) {
        throw parse_error(std::string(path) + ": " + e.what(), e.line());
    }
}

inline VertexSet parse_vertex_list(const std::string& text, int m, const char* flag) {
    VertexSet out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        int v = 0;
        try {
            std::size_t pos = 0;
            v = std::stoi(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw parse_error(std::string(flag) + ": malformed vertex list '" + text + "'", 0);
        }
        if (v < 1 || v > m)
            throw parse_error(std::string(flag) + ": vertex " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(m),
                              0);
        out.insert(v);
    }
    if (out.empty()) throw parse_error(std::string(flag) + ": empty vertex list", 0);
    return out;
}

inline std::string fmt(double v, const char* format = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

inline DenseMatrix read_csv(const std::string& path) {
    std::string text = read_file(path);
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
                while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos])))
                    ++pos;
                if (pos != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::logic_error&) {
                throw parse_error(path + ": malformed number '" + cell + "'", lineno);
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw parse_error(path + ": ragged row", lineno);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error(path + ": no data", lineno);
    DenseMatrix x(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            x(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return x;
}

inline void print_group_text(std::ostream& out, const GroupDescription& g,
                             std::optional<long long> n, const HybridGraph& h) {
    out << "classes:";
    for (const auto& c : g.quotient.classes) out << ' ' << c.to_string();
    out << '\n';
    out << "allowed:";
    for (auto [i, j] : g.pattern.off_diagonal_pairs())
        out << " (" << i << ',' << j << ')';
    out << '\n';
    for (const auto& p : g.lifted_automorphisms) out << "automorphism: " << p.to_string() << '\n';
    for (std::size_t i = 0; i < g.down_sets.size(); ++i)
        out << "down(" << i + 1 << "): " << g.down_sets[i].to_string() << '\n';
    out << "min_sample_size: " << min_sample_size(h) << '\n';
    if (n) out << "breakdown_bound: " << breakdown_bound(h, *n).str() << '\n';
}

}  // namespace detail

/// Dispatches one command line (without the program name). Returns the
/// process exit code: 0 on success, 1 on usage or parse problems, 2 when a
/// graph is outside the class a command needs or a computation rejects the
/// data.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"symmetry groups and combinatorial invariants of Gaussian chain-graph models"};
    app.name("cgsym");
    app.require_subcommand(1);

    std::string path, path2, rows_text, cols_text, data_path;
    long long n_flag = -1;
    bool json_flag = false, numeric_flag = false;
    int trials = 5;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    int data_cols = -1;

    auto* validate = app.add_subcommand("validate", "classify a graph file");
    validate->add_option("graph", path, "graph file")->required();

    auto* essential = app.add_subcommand("essential", "print the essential graph");
    essential->add_option("graph", path, "graph file")->required();

    auto* equiv = app.add_subcommand("equivalent", "decide Markov equivalence");
    equiv->add_option("graph1", path, "first graph file")->required();
    equiv->add_option("graph2", path2, "second graph file")->required();

    auto* imset_cmd = app.add_subcommand("imset", "print the standard imset of a DAG");
    imset_cmd->add_option("graph", path, "graph file")->required();

    auto* group = app.add_subcommand("group", "describe the stabilizer group");
    group->add_option("graph", path, "graph file")->required();
    group->add_option("--n", n_flag, "sample size for the breakdown bound");
    group->add_flag("--json", json_flag, "machine-readable output");

    auto* vanishing = app.add_subcommand("vanishing", "decide whether det K[A,B] vanishes");
    vanishing->add_option("graph", path, "graph file")->required();
    vanishing->add_option("--rows", rows_text, "row set A, e.g. 1,2")->required();
    vanishing->add_option("--cols", cols_text, "column set B, e.g. 2,3")->required();
    vanishing->add_flag("--numeric", numeric_flag, "also check seeded numeric draws");
    vanishing->add_option("--trials", trials, "numeric draws (default 5)");
    vanishing->add_option("--seed", seed, "base seed (default 1)");
    vanishing->add_option("--tol", tol, "numeric vanishing threshold (default 1e-9)");

    auto* invariant = app.add_subcommand("invariant", "print the maximal invariant projections");
    invariant->add_option("graph", path, "graph file")->required();
    invariant->add_option("--data", data_path, "CSV data file, one row per vertex")->required();

    auto* sample = app.add_subcommand("sample", "sample a concentration matrix or data");
    sample->add_option("graph", path, "graph file")->required();
    sample->add_option("--seed", seed, "seed (default 1)");
    sample->add_option("--data", data_cols, "emit an m x N CSV sample instead of K");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));

        if (*validate) {
            out << to_string(classify(detail::load_graph(path))) << '\n';
        } else if (*essential) {
            out << serialize(essential_graph(detail::load_graph(path)).graph);
        } else if (*equiv) {
            HybridGraph g = detail::load_graph(path), h = detail::load_graph(path2);
            cgsym::detail::require_nf(g, "equivalent");
            cgsym::detail::require_nf(h, "equivalent");
            if (g.vertex_count() != h.vertex_count())
                throw domain_error("equivalent: graphs have different vertex counts");
            if (skeleton(g) != skeleton(h))
                out << "not equivalent (skeleton mismatch)\n";
            else if (immoralities(g) != immoralities(h))
                out << "not equivalent (immorality mismatch)\n";
            else
                out << "equivalent\n";
        } else if (*imset_cmd) {
            out << standard_imset(detail::load_graph(path)).render();
        } else if (*group) {
            HybridGraph h = detail::load_graph(path);
            GroupDescription g = group_description(h);
            std::optional<long long> n;
            if (n_flag >= 0) n = n_flag;
            if (json_flag) {
                nlohmann::json j = group_description_json(g);
                if (n) j["breakdown_bound"] = breakdown_bound(h, *n).str();
                out << j.dump(2) << '\n';
            } else {
                detail::print_group_text(out, g, n, h);
            }
        } else if (*vanishing) {
            HybridGraph h = detail::load_graph(path);
            VertexSet a = detail::parse_vertex_list(rows_text, h.vertex_count(), "--rows");
            VertexSet b = detail::parse_vertex_list(cols_text, h.vertex_count(), "--cols");
            out << "vanishes: " << (vanishing_minor(h, a, b) ? "yes" : "no") << '\n';
            if (numeric_flag)
                out << "numeric_vanishes: "
                    << (numeric_vanishing_check(h, a, b, trials, seed, tol) ? "yes" : "no")
                    << '\n';
        } else if (*invariant) {
            HybridGraph h = detail::load_graph(path);
            DenseMatrix x = detail::read_csv(data_path);
            InvariantStatistic stat = maximal_invariant(h, x);
            for (const auto& e : stat.entries) {
                out << "class: " << e.cls.to_string() << " down: " << e.down.to_string()
                    << '\n';
                for (int i = 0; i < e.projection.rows(); ++i) {
                    for (int j = 0; j < e.projection.cols(); ++j) {
                        if (j) out << ' ';
                        out << detail::fmt(e.projection(i, j), "%.12g");
                    }
                    out << '\n';
                }
            }
        } else if (*sample) {
            HybridGraph h = detail::load_graph(path);
            DenseMatrix k = concentration(sample_parameters(h, seed));
            if (data_cols < 0) {
                for (int i = 0; i < k.rows(); ++i) {
                    for (int j = 0; j < k.cols(); ++j) {
                        if (j) out << ' ';
                        out << detail::fmt(k(i, j));
                    }
                    out << '\n';
                }
            } else {
                if (data_cols == 0) throw parse_error("--data: need at least one column", 0);
                DenseMatrix l = cholesky(inverse(k));
                Rng rng(seed + 0x9e3779b97f4a7c15ull);
                const int m = h.vertex_count();
                DenseMatrix x(m, data_cols);
                for (int c = 0; c < data_cols; ++c) {
                    DenseMatrix z(m, 1);
                    for (int r = 0; r < m; ++r) z(r, 0) = rng.normal();
                    DenseMatrix col = l * z;
                    for (int r = 0; r < m; ++r) x(r, c) = col(r, 0);
                }
                for (int i = 0; i < m; ++i) {
                    for (int j = 0; j < data_cols; ++j) {
                        if (j) out << ',';
                        out << detail::fmt(x(i, j));
                    }
                    out << '\n';
                }
            }
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const size_mismatch& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const too_large& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace cgsym::cli
