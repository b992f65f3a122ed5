#pragma once

// Plain-text formats: integer matrices, sparse signed circuits, signature
// files. Everything is line-based and diffs cleanly.

#include "quasitor/orthomat.hpp"

namespace quasitor {

inline std::string matrix_to_text(const IntMat& m) {
    std::ostringstream os;
    os << "mat " << m.rows() << " " << m.cols() << "\n";
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
        os << "\n";
    }
    return os.str();
}

inline IntMat matrix_from_text(std::string_view text, const std::string& name = "<input>") {
    std::istringstream is{std::string(text)};
    std::string tok;
    int rows, cols;
    if (!(is >> tok) || tok != "mat" || !(is >> rows >> cols) || rows < 0 || cols < 0)
        fail(ErrorCode::SyntaxError, name + ": expected 'mat <rows> <cols>'");
    IntMat m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (!(is >> m(r, c))) fail(ErrorCode::SyntaxError, name + ": truncated matrix body");
    return m;
}

// Sparse circuit line: entries in canonical element order, e.g.
// "circuit 1*:+1 2*:-1".
inline std::string circuit_to_line(const SignedVec& c, const std::string& keyword = "circuit") {
    const int n = static_cast<int>(c.size()) / 2;
    std::ostringstream os;
    os << keyword;
    for (int r = 0; r < 2 * n; ++r) {
        Elem g = elem_of_rank(r);
        int v = c[static_cast<size_t>(elem_coord(g, n))];
        if (v != 0) os << " " << elem_name(g) << ":" << (v > 0 ? "+1" : "-1");
    }
    return os.str();
}

inline SignedVec circuit_from_line(const std::string& line, int n,
                                   const std::string& keyword = "circuit",
                                   const std::string& name = "<input>") {
    std::istringstream is(line);
    std::string tok;
    if (!(is >> tok) || tok != keyword)
        fail(ErrorCode::SyntaxError, name + ": expected '" + keyword + "' line");
    SignedVec c(static_cast<size_t>(2 * n), 0);
    while (is >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) fail(ErrorCode::SyntaxError, name + ": bad entry '" + tok + "'");
        std::string en = tok.substr(0, colon), sv = tok.substr(colon + 1);
        bool starred = !en.empty() && en.back() == '*';
        if (starred) en.pop_back();
        int edge = 0;
        for (char ch : en) {
            if (!isdigit(static_cast<unsigned char>(ch)))
                fail(ErrorCode::SyntaxError, name + ": bad element '" + tok + "'");
            edge = edge * 10 + (ch - '0');
        }
        if (edge < 1 || edge > n) fail(ErrorCode::SyntaxError, name + ": element out of range in '" + tok + "'");
        int val = 0;
        if (sv == "+1" || sv == "1")
            val = 1;
        else if (sv == "-1")
            val = -1;
        else
            fail(ErrorCode::SyntaxError, name + ": bad sign value '" + tok + "'");
        c[static_cast<size_t>(elem_coord(Elem{edge, starred}, n))] = val;
    }
    return c;
}

inline std::string signature_to_text(const CircuitSignature& sig) {
    std::string out;
    for (const auto& c : sig.chosen) out += circuit_to_line(c, "sig") + "\n";
    return out;
}

inline std::vector<SignedVec> signature_vectors_from_text(std::string_view text, int n,
                                                          const std::string& name = "<input>") {
    std::istringstream is{std::string(text)};
    std::string line;
    std::vector<SignedVec> out;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char ch : line)
            if (!isspace(static_cast<unsigned char>(ch))) blank = false;
        if (blank) continue;
        out.push_back(circuit_from_line(line, n, "sig", name));
    }
    return out;
}

}  // namespace quasitor
