#pragma once

/*
 * Matrix text format: first line is the order n, followed by n lines
 * of n whitespace-separated entries. Entries are integers, decimals,
 * or p/q rational literals. The JSON mirror is
 *   {"n": <int>, "entries": [[<string>, ...], ...]}
 * with entries as canonical rational strings; design types add
 * "kind"/"normalized"/"k" metadata.
 *
 * All floating-point values are serialized with 17 significant digits
 * (as strings), rationals as canonical "p/q" strings.
 */

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "eil/errors.hpp"
#include "eil/matrix.hpp"

namespace eil {

using json = nlohmann::json;

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline RationalMatrix read_matrix_text(std::istream& in) {
    long long n = 0;
    if (!(in >> n))
        throw ParseError("matrix text: missing order line");
    if (n < 1 || n > 4096)
        throw ParseError("matrix text: order out of range");
    RationalMatrix m(static_cast<int>(n));
    std::string tok;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!(in >> tok))
                throw ParseError("matrix text: expected " + std::to_string(n * n) +
                                 " entries, input ended early");
            m(i, j) = Rational::parse(tok);
        }
    return m;
}

inline void write_matrix_text(std::ostream& out, const RationalMatrix& m) {
    const int n = m.order();
    out << n << "\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            out << (j ? " " : "") << m(i, j).str();
        out << "\n";
    }
}

inline std::string matrix_text(const RationalMatrix& m) {
    std::ostringstream os;
    write_matrix_text(os, m);
    return os.str();
}

inline json matrix_to_json(const RationalMatrix& m) {
    const int n = m.order();
    json entries = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j)
            row.push_back(m(i, j).str());
        entries.push_back(std::move(row));
    }
    return json{{"n", n}, {"entries", std::move(entries)}};
}

inline RationalMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw ParseError("matrix json: expected object with n and entries");
    const int n = j.at("n").get<int>();
    if (n < 1 || n > 4096)
        throw ParseError("matrix json: order out of range");
    const json& entries = j.at("entries");
    if (!entries.is_array() || static_cast<int>(entries.size()) != n)
        throw ParseError("matrix json: entries row count mismatch");
    RationalMatrix m(n);
    for (int i = 0; i < n; ++i) {
        const json& row = entries.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("matrix json: entries column count mismatch");
        for (int j2 = 0; j2 < n; ++j2) {
            const json& cell = row.at(j2);
            if (cell.is_string())
                m(i, j2) = Rational::parse(cell.get<std::string>());
            else if (cell.is_number_integer())
                m(i, j2) = Rational(cell.get<long long>());
            else
                throw ParseError("matrix json: entry must be string or integer");
        }
    }
    return m;
}

// Reads either format; JSON input is detected by a leading '{'.
inline RationalMatrix read_matrix_any(std::istream& in) {
    in >> std::ws;
    if (in.peek() == '{') {
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ParseError(std::string("matrix json: ") + e.what());
        }
        return matrix_from_json(j);
    }
    return read_matrix_text(in);
}

inline RationalMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open matrix file '" + path + "'");
    return read_matrix_any(in);
}

} // namespace eil
