#pragma once

/*
 * Text and JSON encodings.
 *
 * Matrix file:
 *
 *     # comment lines start with '#'
 *     q m n k
 *     k lines of m*n integers in [0, q)
 *
 * Columns (j-1)m+1 .. jm of a row are chain j. Entries use the element
 * encoding of nrt::Field.
 *
 * Witness JSON:
 *
 *     {"format": 1, "S": [[k x k]], "iso": {"perm": [...], "blocks": [[...]]},
 *      "space": {"q": q, "m": m, "n": n}}
 *
 * "perm" lists the 1-based position each block moves to; each entry of
 * "blocks" is the row-major m x m matrix applied at that position.
 */

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nrt/error.hpp"
#include "nrt/matrix.hpp"
#include "nrt/metric.hpp"
#include "nrt/reduction.hpp"
#include "nrt/symmetry.hpp"

namespace nrt {

inline constexpr int json_format_version = 1;

struct MatrixFile {
    Matrix matrix;
    CodeSpace space;
};

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> split_tokens(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

inline std::uint64_t parse_uint(const Token& tok, std::size_t line) {
    std::uint64_t value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(Errc::parse_error, line, tok.column,
                         "expected a non-negative integer, found '" + std::string(tok.text) + "'");
    return value;
}

}  // namespace detail

inline MatrixFile parse_matrix_file(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;  // (1-based number, content)
    std::size_t number = 0;
    for (std::size_t pos = 0; pos <= text.size();) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        ++number;
        const std::string_view line = text.substr(pos, end - pos);
        const auto first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] != '#') lines.emplace_back(number, line);
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (lines.empty()) throw ParseError(Errc::header_error, 1, 1, "missing header line 'q m n k'");

    const auto& [header_line, header_text] = lines.front();
    const auto header = detail::split_tokens(header_text);
    std::vector<std::uint64_t> values;
    for (const auto& tok : header) values.push_back(detail::parse_uint(tok, header_line));
    if (values.size() != 4)
        throw ParseError(Errc::header_error, header_line, 1,
                         "header must be 'q m n k', found " + std::to_string(values.size()) + " field(s)");
    const std::uint64_t q = values[0], m = values[1], n = values[2], k = values[3];
    Field field;
    try {
        field = Field::create(q);
    } catch (const Error& e) {
        throw ParseError(Errc::header_error, header_line, header[0].column, e.what());
    }
    if (m < 1 || n < 1)
        throw ParseError(Errc::header_error, header_line, 1, "chain length and chain count must be at least 1");
    if (m * n > (std::uint64_t{1} << 24) || k > (std::uint64_t{1} << 24))
        throw ParseError(Errc::header_error, header_line, 1, "matrix dimensions are too large");

    const std::size_t cols = static_cast<std::size_t>(m * n);
    std::vector<Elem> data;
    data.reserve(static_cast<std::size_t>(k) * cols);
    std::size_t row = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& [line_no, content] = lines[li];
        if (row == k) throw ParseError(Errc::parse_error, line_no, 1, "more rows than the header's k = " + std::to_string(k));
        const auto tokens = detail::split_tokens(content);
        if (tokens.size() != cols)
            throw ParseError(Errc::parse_error, line_no, 1,
                             "expected " + std::to_string(cols) + " entries, found " + std::to_string(tokens.size()));
        for (const auto& tok : tokens) {
            const auto value = detail::parse_uint(tok, line_no);
            if (value >= q)
                throw ParseError(Errc::range_error, line_no, tok.column,
                                 "entry " + std::to_string(value) + " is not an element of GF(" + std::to_string(q) +
                                     ")");
            data.push_back(static_cast<Elem>(value));
        }
        ++row;
    }
    if (row != k)
        throw ParseError(Errc::parse_error, number, 1,
                         "expected " + std::to_string(k) + " rows, found " + std::to_string(row));
    CodeSpace space(field, static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    return {Matrix(field, static_cast<std::size_t>(k), cols, std::move(data)), std::move(space)};
}

inline std::string format_matrix_file(const Matrix& g, const CodeSpace& space) {
    if (g.cols() != space.length())
        throw Error(Errc::dimension_mismatch, "matrix " + g.shape_string() + " in a space of length " +
                                                  std::to_string(space.length()));
    std::ostringstream out;
    out << space.field.order() << ' ' << space.m << ' ' << space.n << ' ' << g.rows() << '\n';
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) out << (c ? " " : "") << g(r, c);
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// JSON

using json = nlohmann::json;

inline json matrix_rows_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<Elem>(m.row(r).begin(), m.row(r).end()));
    return rows;
}

inline json space_to_json(const CodeSpace& space) {
    return {{"q", space.field.order()}, {"m", space.m}, {"n", space.n}};
}

inline json matrix_to_json(const Matrix& g, const CodeSpace& space) {
    json out = space_to_json(space);
    out["k"] = g.rows();
    out["rows"] = matrix_rows_to_json(g);
    return out;
}

inline json isometry_to_json(const Isometry& iso) {
    json perm = json::array();
    for (auto img : iso.perm()) perm.push_back(img + 1);
    json blocks = json::array();
    for (const auto& t : iso.blocks())
        blocks.push_back(std::vector<Elem>(t.matrix().entries().begin(), t.matrix().entries().end()));
    return {{"perm", perm}, {"blocks", blocks}};
}

inline json witness_to_json(const ReductionWitness& w) {
    return {{"format", json_format_version},
            {"S", matrix_rows_to_json(w.row_transform)},
            {"iso", isometry_to_json(w.iso)},
            {"space", space_to_json(w.space())}};
}

namespace detail {

[[noreturn]] inline void bad_json(const std::string& what) { throw Error(Errc::parse_error, "witness JSON: " + what); }

inline std::uint64_t json_uint(const json& j, const std::string& what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        bad_json(what + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

inline std::vector<Elem> json_elements(const json& j, const Field& f, const std::string& what) {
    if (!j.is_array()) bad_json(what + " must be an array");
    std::vector<Elem> out;
    for (const auto& x : j) {
        if (x.is_array()) {
            const auto inner = json_elements(x, f, what);
            out.insert(out.end(), inner.begin(), inner.end());
            continue;
        }
        const auto v = json_uint(x, what + " entry");
        if (!f.contains(v)) bad_json(what + " entry " + std::to_string(v) + " is not in " + f.name());
        out.push_back(static_cast<Elem>(v));
    }
    return out;
}

}  // namespace detail

inline CodeSpace space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("q") || !j.contains("m") || !j.contains("n"))
        detail::bad_json("space needs q, m and n");
    try {
        return CodeSpace(Field::create(detail::json_uint(j["q"], "q")),
                         static_cast<std::size_t>(detail::json_uint(j["m"], "m")),
                         static_cast<std::size_t>(detail::json_uint(j["n"], "n")));
    } catch (const Error& e) {
        if (e.code() == Errc::parse_error) throw;
        detail::bad_json(std::string("space: ") + e.what());
    }
}

inline Isometry isometry_from_json(const json& j, const CodeSpace& space) {
    if (!j.is_object() || !j.contains("perm") || !j.contains("blocks")) detail::bad_json("iso needs perm and blocks");
    const json& perm_j = j["perm"];
    const json& blocks_j = j["blocks"];
    if (!perm_j.is_array() || perm_j.size() != space.n) detail::bad_json("perm must list n images");
    if (!blocks_j.is_array() || blocks_j.size() != space.n) detail::bad_json("blocks must list n matrices");
    std::vector<std::size_t> perm;
    for (const auto& x : perm_j) {
        const auto v = detail::json_uint(x, "perm entry");
        if (v < 1 || v > space.n) detail::bad_json("perm entry " + std::to_string(v) + " outside 1..n");
        perm.push_back(static_cast<std::size_t>(v - 1));
    }
    std::vector<UpperTriangular> blocks;
    for (const auto& b : blocks_j) {
        auto entries = detail::json_elements(b, space.field, "block");
        if (entries.size() != space.m * space.m) detail::bad_json("block must have m*m entries");
        try {
            blocks.emplace_back(Matrix(space.field, space.m, space.m, std::move(entries)));
        } catch (const Error& e) {
            detail::bad_json(std::string("block: ") + e.what());
        }
    }
    try {
        return Isometry(space, std::move(perm), std::move(blocks));
    } catch (const Error& e) {
        detail::bad_json(std::string("iso: ") + e.what());
    }
}

/// Accepts a witness object, or any object holding one under "witness".
inline ReductionWitness witness_from_json(const json& doc) {
    const json& j = (doc.is_object() && doc.contains("witness")) ? doc["witness"] : doc;
    if (!j.is_object() || !j.contains("S") || !j.contains("iso") || !j.contains("space"))
        detail::bad_json("expected an object with S, iso and space");
    if (j.contains("format") && detail::json_uint(j["format"], "format") != json_format_version)
        detail::bad_json("unsupported format version");
    const CodeSpace space = space_from_json(j["space"]);
    const json& s_j = j["S"];
    if (!s_j.is_array()) detail::bad_json("S must be an array of rows");
    const std::size_t k = s_j.size();
    for (const auto& row : s_j)
        if (!row.is_array() || row.size() != k) detail::bad_json("S must be square");
    Matrix s(space.field, k, k, detail::json_elements(s_j, space.field, "S"));
    return {std::move(s), isometry_from_json(j["iso"], space)};
}

inline ReductionWitness witness_from_json_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        detail::bad_json(e.what());
    }
    return witness_from_json(doc);
}

}  // namespace nrt
