#include "core/twist_parse.hpp"

#include <cctype>
#include <vector>

#include "core/error.hpp"

namespace twistdeform {

namespace {

constexpr auto npos = std::string::npos;

[[noreturn]] void bad(const std::string& clause, const std::string& why) {
    throw Error(ErrorCode::Parse, "bad twist clause '" + clause + "': " + why);
}

std::vector<std::string> split_clauses(const std::string& spec) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : spec) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int parse_index(const AlgebraPtr& g, const std::string& clause,
                const std::string& text) {
    if (text.empty()) bad(clause, "missing basis index");
    for (char ch : text)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            bad(clause, "bad basis index '" + text + "'");
    int i = 0;
    try {
        i = std::stoi(text);
    } catch (const std::exception&) {
        bad(clause, "bad basis index '" + text + "'");
    }
    if (i < 1 || i > g->dim())
        bad(clause, "basis index " + text + " outside [1, " +
                        std::to_string(g->dim()) + "]");
    return i;
}

Rational parse_value(const std::string& clause, const std::string& text) {
    try {
        return rational_from_string(text);
    } catch (const Error&) {
        bad(clause, "bad value '" + text + "'");
    }
}

/* "lij=v" / "li.j=v": adds (v/2) e_i ^ e_j. */
void apply_lambda(const AlgebraPtr& g, Multivector& t,
                  const std::string& clause) {
    auto eq = clause.find('=');
    std::string head = clause.substr(1, eq - 1);
    std::string value = clause.substr(eq + 1);
    int i = 0;
    int j = 0;
    auto dot = head.find('.');
    if (dot != npos) {
        i = parse_index(g, clause, head.substr(0, dot));
        j = parse_index(g, clause, head.substr(dot + 1));
    } else {
        if (head.size() != 2)
            bad(clause, "expected two single-digit indices (dot form li.j "
                        "for multi-digit)");
        i = parse_index(g, clause, head.substr(0, 1));
        j = parse_index(g, clause, head.substr(1, 1));
    }
    if (i == j) bad(clause, "repeated index");
    t.add_term({i, j}, parse_value(clause, value) / 2);
}

/* Label, or parenthesized integer combination "(2Z1-Z2)". */
SparseVector parse_factor(const AlgebraPtr& g, const std::string& clause,
                          const std::string& text) {
    SparseVector out;
    if (text.empty()) bad(clause, "empty wedge factor");
    if (text.front() != '(') {
        int idx = g->index_of(text);
        if (idx == 0) bad(clause, "unknown label '" + text + "'");
        out[idx] = 1;
        return out;
    }
    if (text.back() != ')') bad(clause, "unbalanced parentheses");
    std::string body = text.substr(1, text.size() - 2);
    if (body.empty()) bad(clause, "empty combination");
    size_t pos = 0;
    while (pos < body.size()) {
        int sign = 1;
        if (body[pos] == '+' || body[pos] == '-') {
            sign = body[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos > 0) {
            bad(clause, "expected '+' or '-' in combination");
        }
        std::string digits;
        while (pos < body.size() &&
               std::isdigit(static_cast<unsigned char>(body[pos])))
            digits += body[pos++];
        std::string label;
        while (pos < body.size() && body[pos] != '+' && body[pos] != '-')
            label += body[pos++];
        if (label.empty()) bad(clause, "missing label in combination");
        int idx = g->index_of(label);
        if (idx == 0) bad(clause, "unknown label '" + label + "'");
        Rational c = digits.empty() ? Rational(1) : parse_value(clause, digits);
        out[idx] += sign * c;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

/* "A^B:c": adds c * A ^ B. */
void apply_wedge(const AlgebraPtr& g, Multivector& t,
                 const std::string& clause) {
    auto colon = clause.rfind(':');
    std::string left = clause.substr(0, colon);
    int depth = 0;
    size_t caret = npos;
    for (size_t p = 0; p < left.size(); ++p) {
        if (left[p] == '(') ++depth;
        else if (left[p] == ')') --depth;
        else if (left[p] == '^' && depth == 0) {
            caret = p;
            break;
        }
    }
    if (caret == npos) bad(clause, "missing '^' between factors");
    SparseVector a = parse_factor(g, clause, left.substr(0, caret));
    SparseVector b = parse_factor(g, clause, left.substr(caret + 1));
    Multivector w = wedge(Multivector::from_sparse(g, a),
                          Multivector::from_sparse(g, b));
    w *= parse_value(clause, clause.substr(colon + 1));
    t += w;
}

}  // namespace

Multivector parse_twist(const AlgebraPtr& g, const std::string& spec) {
    if (!g) throw Error(ErrorCode::InvalidArgument, "null algebra");
    Multivector t = Multivector::zero(g, 2);
    auto clauses = split_clauses(spec);
    if (clauses.empty()) throw Error(ErrorCode::Parse, "empty twist spec");
    for (const auto& clause : clauses) {
        if (clause == "0") continue;
        if (clause.size() > 1 && clause[0] == 'l' && clause.find('=') != npos) {
            apply_lambda(g, t, clause);
        } else if (clause.find(':') != npos) {
            apply_wedge(g, t, clause);
        } else {
            bad(clause, "expected 'lij=value' or 'A^B:coef'");
        }
    }
    return t;
}

}  // namespace twistdeform
