#pragma once

// The `nrt` command line. run() is the whole program minus process plumbing,
// so tests drive it with argument vectors and string streams.
//
// Exit codes: 0 success / predicate true, 1 predicate false or verification
// failure, 2 usage, parse or input errors, 3 enumeration limit exceeded.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nrt/codetools.hpp"
#include "nrt/error.hpp"
#include "nrt/io.hpp"
#include "nrt/metric.hpp"
#include "nrt/reduction.hpp"
#include "nrt/symmetry.hpp"

namespace nrt::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2, resource = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::invalid_argument, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
    out << text;
}

inline MatrixFile load_matrix(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_matrix_file(text);
    } catch (const ParseError& e) {
        throw ParseError(e.code(), e.line(), e.column(), path + ": " + e.what());
    }
}

inline const char* kind_name(BlockCheck::Kind kind) {
    switch (kind) {
        case BlockCheck::Kind::canonical: return "canonical";
        case BlockCheck::Kind::tm_reduced: return "tm_reduced";
        case BlockCheck::Kind::split: return "split";
        case BlockCheck::Kind::failed: return "failed";
    }
    return "failed";
}

inline std::string dump(const json& j) { return j.dump() + "\n"; }

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Standard forms of generator matrices for codes in NRT spaces", "nrt"};
    app.require_subcommand(1);

    std::string in_path, out_path, witness_path;
    bool as_json = false;

    auto* reduce = app.add_subcommand("reduce", "bring a generator matrix to NRT-triangular form");
    reduce->add_option("--in", in_path, "input matrix file")->required();
    reduce->add_option("--out", out_path, "write the reduced matrix here instead of stdout");
    reduce->add_option("--witness", witness_path, "write the witness JSON here");
    reduce->add_flag("--json", as_json, "print matrix and witness as one JSON document");

    auto* check = app.add_subcommand("check", "test whether a matrix is in NRT-triangular form");
    check->add_option("--in", in_path, "matrix file")->required();
    check->add_flag("--json", as_json, "JSON report");

    auto* weight = app.add_subcommand("weight", "NRT weight profile of every row");
    weight->add_option("--in", in_path, "matrix file")->required();
    weight->add_flag("--json", as_json, "JSON output");

    auto* wdist = app.add_subcommand("wdist", "NRT weight distribution of the code");
    wdist->add_option("--in", in_path, "matrix file")->required();
    wdist->add_flag("--json", as_json, "JSON output");

    auto* mindist = app.add_subcommand("mindist", "minimum NRT distance of the code");
    mindist->add_option("--in", in_path, "matrix file")->required();
    mindist->add_flag("--json", as_json, "JSON output");

    auto* verify = app.add_subcommand("verify", "check a reduction witness");
    verify->add_option("--in", in_path, "original matrix file")->required();
    verify->add_option("--out", out_path, "reduced matrix file")->required();
    verify->add_option("--witness", witness_path, "witness JSON")->required();

    std::uint64_t q = 0, m = 0, n = 0, k = 0, seed = 0;
    bool isometry = false;
    auto* random = app.add_subcommand("random", "reproducible random matrix or isometry");
    random->add_option("--q", q, "field order")->required();
    random->add_option("--m", m, "chain length")->required();
    random->add_option("--n", n, "chain count")->required();
    random->add_option("--k", k, "number of rows (matrix only)");
    random->add_option("--seed", seed, "RNG seed")->required();
    random->add_flag("--isometry", isometry, "emit an isometry instead of a matrix");
    random->add_option("--out", out_path, "write here instead of stdout");
    random->add_flag("--json", as_json, "JSON output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }

    try {
        if (*reduce) {
            const auto file = detail::load_matrix(in_path);
            const auto form = nrt_triangular_form(file.matrix, file.space);
            const std::string text = format_matrix_file(form.reduced, file.space);
            if (!witness_path.empty()) detail::write_file(witness_path, detail::dump(witness_to_json(form.witness)));
            if (!out_path.empty()) detail::write_file(out_path, text);
            if (as_json) {
                json doc = {{"format", json_format_version},
                            {"matrix", matrix_to_json(form.reduced, file.space)},
                            {"witness", witness_to_json(form.witness)}};
                out << detail::dump(doc);
            } else if (out_path.empty()) {
                out << text;
            }
            return ExitCode::ok;
        }

        if (*check) {
            const auto file = detail::load_matrix(in_path);
            const auto report = check_nrt_triangular(file.matrix, file.space);
            if (as_json) {
                json blocks = json::array();
                for (std::size_t j = 0; j < report.blocks.size(); ++j) {
                    const auto& b = report.blocks[j];
                    json entry = {{"block", j + 1}, {"ok", b.ok()}, {"kind", detail::kind_name(b.kind)}};
                    if (b.kind == BlockCheck::Kind::split) entry["s1"] = b.s1;
                    if (!b.detail.empty()) entry["detail"] = b.detail;
                    blocks.push_back(entry);
                }
                out << detail::dump({{"format", json_format_version},
                                     {"nrt_triangular", report.ok()},
                                     {"block_echelon", report.block_echelon},
                                     {"trailing_zero_rows", report.trailing_zeros},
                                     {"blocks", blocks}});
            } else {
                out << "block echelon: " << (report.block_echelon ? "ok" : "FAIL") << " (trailing zero rows:";
                for (auto z : report.trailing_zeros) out << ' ' << z;
                out << ")\n";
                for (std::size_t j = 0; j < report.blocks.size(); ++j) {
                    const auto& b = report.blocks[j];
                    out << "block " << j + 1 << ": ";
                    switch (b.kind) {
                        case BlockCheck::Kind::canonical: out << "ok, canonical rows in increasing weight"; break;
                        case BlockCheck::Kind::tm_reduced: out << "ok, Tm-reduced"; break;
                        case BlockCheck::Kind::split: out << "ok, [[A, B], [J, 0]] below row " << b.s1; break;
                        case BlockCheck::Kind::failed: out << "FAIL, " << b.detail; break;
                    }
                    out << '\n';
                }
                out << "NRT-triangular: " << (report.ok() ? "yes" : "no") << '\n';
            }
            return report.ok() ? ExitCode::ok : ExitCode::failed;
        }

        if (*weight) {
            const auto file = detail::load_matrix(in_path);
            json rows = json::array();
            for (std::size_t r = 0; r < file.matrix.rows(); ++r) {
                const auto profile = nrt_weight(file.matrix.row(r), file.space);
                if (as_json) {
                    rows.push_back({{"blocks", profile.blocks}, {"total", profile.total}});
                } else {
                    out << "row " << r + 1 << ":";
                    for (auto w : profile.blocks) out << ' ' << w;
                    out << " (total " << profile.total << ")\n";
                }
            }
            if (as_json) out << detail::dump({{"format", json_format_version}, {"rows", rows}});
            return ExitCode::ok;
        }

        if (*wdist) {
            const auto file = detail::load_matrix(in_path);
            const auto dist = weight_distribution(file.matrix, file.space);
            if (as_json) {
                json counts = json::object();
                for (const auto& [w, c] : dist.counts) counts[std::to_string(w)] = c;
                out << detail::dump({{"format", json_format_version}, {"size", dist.size}, {"counts", counts}});
            } else {
                out << "# weight count (" << dist.size << " codewords)\n";
                for (const auto& [w, c] : dist.counts) out << w << ' ' << c << '\n';
            }
            return ExitCode::ok;
        }

        if (*mindist) {
            const auto file = detail::load_matrix(in_path);
            const auto d = min_distance(file.matrix, file.space);
            if (as_json)
                out << detail::dump({{"format", json_format_version}, {"min_distance", d}});
            else
                out << d << '\n';
            return ExitCode::ok;
        }

        if (*verify) {
            const auto original = detail::load_matrix(in_path);
            const auto reduced = detail::load_matrix(out_path);
            const auto witness = witness_from_json_text(detail::read_file(witness_path));
            if (!(original.space == witness.space()) || !(reduced.space == witness.space())) {
                out << "FAIL\n";
                err << "nrt: matrix files and witness describe different spaces\n";
                return ExitCode::failed;
            }
            if (original.matrix.rows() != reduced.matrix.rows() ||
                witness.row_transform.rows() != original.matrix.rows()) {
                out << "FAIL\n";
                err << "nrt: row counts of the matrices and the witness disagree\n";
                return ExitCode::failed;
            }
            const bool good = verify_witness(original.matrix, reduced.matrix, witness);
            out << (good ? "PASS" : "FAIL") << '\n';
            return good ? ExitCode::ok : ExitCode::failed;
        }

        if (*random) {
            const CodeSpace space(Field::create(q), static_cast<std::size_t>(m), static_cast<std::size_t>(n));
            std::string text;
            if (isometry) {
                const auto iso = random_isometry(space, seed);
                json doc = {{"format", json_format_version}, {"space", space_to_json(space)},
                            {"iso", isometry_to_json(iso)}};
                text = detail::dump(doc);
            } else {
                const auto g = random_matrix(space.field, static_cast<std::size_t>(k), space.length(), seed);
                text = as_json ? detail::dump(matrix_to_json(g, space)) : format_matrix_file(g, space);
            }
            if (out_path.empty())
                out << text;
            else
                detail::write_file(out_path, text);
            return ExitCode::ok;
        }
    } catch (const Error& e) {
        err << "nrt: " << to_string(e.code()) << ": " << e.what() << '\n';
        return e.code() == Errc::too_large ? ExitCode::resource : ExitCode::usage;
    }
    return ExitCode::usage;
}

}  // namespace nrt::cli
