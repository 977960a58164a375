#include "selfsim/automaton.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace selfsim {

std::string Automaton::display_name(int s) const {
    if (!names.empty() && !names[s].empty()) return names[s];
    return "q" + std::to_string(s);
}

void Automaton::validate() const {
    if (alphabet < 2) throw ValidationError("alphabet size must be at least 2");
    const int n = size();
    if (!names.empty() && static_cast<int>(names.size()) != n)
        throw ValidationError("name table size does not match state count");
    for (int s = 0; s < n; ++s) {
        if (static_cast<int>(states[s].slots.size()) != alphabet)
            throw ValidationError("state " + display_name(s) + " does not have one transition per letter");
        std::vector<bool> seen(alphabet, false);
        for (Letter x = 0; x < alphabet; ++x) {
            const Transition& t = states[s].slots[x];
            if (t.out < 0 || t.out >= alphabet)
                throw ValidationError("state " + display_name(s) + ": output letter out of range");
            if (t.next < 0 || t.next >= n)
                throw ValidationError("state " + display_name(s) + ": section index out of range");
            if (seen[t.out])
                throw ValidationError("output row not a permutation at state " + display_name(s));
            seen[t.out] = true;
        }
    }
    if (identity >= 0) {
        if (identity >= n) throw ValidationError("identity index out of range");
        for (Letter x = 0; x < alphabet; ++x) {
            const Transition& t = states[identity].slots[x];
            if (t.out != x || t.next != identity)
                throw ValidationError("declared identity state is not the identity map");
        }
    }
}

namespace {

struct Tok {
    std::string text;
    int line;
    int col;
};

// Line-oriented tokenizer: names/numbers, ':', ';', '->'. '#' starts a comment.
std::vector<std::vector<Tok>> tokenize(const std::string& text) {
    std::vector<std::vector<Tok>> lines;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::vector<Tok> toks;
        size_t i = 0;
        while (i < raw.size()) {
            char c = raw[i];
            if (c == '#') break;
            if (c == ' ' || c == '\t' || c == '\r') { ++i; continue; }
            int col = static_cast<int>(i) + 1;
            if (c == ':' || c == ';') {
                toks.push_back({std::string(1, c), lineno, col});
                ++i;
            } else if (c == '-') {
                if (i + 1 < raw.size() && raw[i + 1] == '>') {
                    toks.push_back({"->", lineno, col});
                    i += 2;
                } else {
                    // bare '-' only appears in signed numbers elsewhere; reject here
                    throw ParseError("unexpected character '-'", lineno, col);
                }
            } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                size_t j = i;
                while (j < raw.size() &&
                       (std::isalnum(static_cast<unsigned char>(raw[j])) || raw[j] == '_'))
                    ++j;
                toks.push_back({raw.substr(i, j - i), lineno, col});
                i = j;
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
            }
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

int parse_int(const Tok& t) {
    for (char c : t.text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("expected a number, got '" + t.text + "'", t.line, t.col);
    try {
        return std::stoi(t.text);
    } catch (const std::exception&) {
        throw ParseError("number out of range: '" + t.text + "'", t.line, t.col);
    }
}

}  // namespace

Automaton parse_automaton(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError("empty input");

    size_t li = 0;
    {
        const auto& l = lines[li];
        if (l[0].text != "alphabet")
            throw ParseError("expected 'alphabet <k>'", l[0].line, l[0].col);
        if (l.size() != 2) throw ParseError("expected 'alphabet <k>'", l[0].line, l[0].col);
        // value checked below
    }
    int k = parse_int(lines[li][1]);
    if (k < 2) throw ParseError("alphabet size must be at least 2", lines[li][1].line, lines[li][1].col);
    ++li;

    // First pass: collect state names in declaration order.
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index_of;
    std::optional<std::pair<Tok, std::string>> identity_decl;
    std::vector<size_t> state_lines;
    for (size_t i = li; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l[0].text == "state") {
            if (l.size() < 2) throw ParseError("expected state name", l[0].line, l[0].col);
            const std::string& nm = l[1].text;
            if (nm == "state" || nm == "identity" || nm == "alphabet")
                throw ParseError("reserved word used as state name", l[1].line, l[1].col);
            if (index_of.count(nm))
                throw ParseError("duplicate state '" + nm + "'", l[1].line, l[1].col);
            index_of[nm] = static_cast<int>(names.size());
            names.push_back(nm);
            state_lines.push_back(i);
        } else if (l[0].text == "identity") {
            if (identity_decl) throw ParseError("duplicate identity line", l[0].line, l[0].col);
            if (l.size() != 2) throw ParseError("expected 'identity <name>'", l[0].line, l[0].col);
            identity_decl = {l[0], l[1].text};
        } else {
            throw ParseError("expected 'state' or 'identity'", l[0].line, l[0].col);
        }
    }

    Automaton a;
    a.alphabet = k;
    a.names = names;
    a.states.resize(names.size());

    for (size_t si = 0; si < state_lines.size(); ++si) {
        const auto& l = lines[state_lines[si]];
        size_t p = 2;
        auto expect = [&](const std::string& what) -> const Tok& {
            if (p >= l.size())
                throw ParseError("expected " + what, l.back().line,
                                 l.back().col + static_cast<int>(l.back().text.size()));
            return l[p];
        };
        {
            const Tok& t = expect("':'");
            if (t.text != ":") throw ParseError("expected ':'", t.line, t.col);
            ++p;
        }
        StateRecord rec;
        rec.slots.assign(k, Transition{});
        std::vector<bool> have(k, false);
        bool first = true;
        while (p < l.size()) {
            if (!first) {
                const Tok& t = l[p];
                if (t.text != ";") throw ParseError("expected ';'", t.line, t.col);
                ++p;
            }
            first = false;
            const Tok& xt = expect("input letter");
            int x = parse_int(xt);
            if (x < 0 || x >= k) throw ParseError("input letter out of range", xt.line, xt.col);
            if (have[x]) throw ParseError("duplicate clause for letter " + xt.text, xt.line, xt.col);
            have[x] = true;
            ++p;
            {
                const Tok& t = expect("'->'");
                if (t.text != "->") throw ParseError("expected '->'", t.line, t.col);
                ++p;
            }
            const Tok& yt = expect("output letter");
            int y = parse_int(yt);
            if (y < 0 || y >= k) throw ParseError("output letter out of range", yt.line, yt.col);
            ++p;
            const Tok& st = expect("section state name");
            auto it = index_of.find(st.text);
            if (it == index_of.end())
                throw ParseError("undeclared state '" + st.text + "'", st.line, st.col);
            ++p;
            rec.slots[x] = Transition{y, it->second};
        }
        for (int x = 0; x < k; ++x)
            if (!have[x])
                throw ParseError("missing clause for letter " + std::to_string(x),
                                 l[0].line, l[0].col);
        a.states[si] = std::move(rec);
    }

    if (identity_decl) {
        auto it = index_of.find(identity_decl->second);
        if (it == index_of.end())
            throw ParseError("undeclared state '" + identity_decl->second + "'",
                             identity_decl->first.line, identity_decl->first.col);
        a.identity = it->second;
    }
    a.validate();
    return a;
}

std::string write_automaton(const Automaton& a) {
    // Unique display names, deterministically.
    std::vector<std::string> nm(a.size());
    std::unordered_set<std::string> used;
    for (int s = 0; s < a.size(); ++s) {
        std::string base = a.display_name(s);
        std::string n = base;
        int suffix = 2;
        while (used.count(n)) n = base + "_" + std::to_string(suffix++);
        used.insert(n);
        nm[s] = n;
    }
    std::ostringstream out;
    out << "alphabet " << a.alphabet << "\n";
    for (int s = 0; s < a.size(); ++s) {
        out << "state " << nm[s] << ":";
        for (Letter x = 0; x < a.alphabet; ++x) {
            if (x) out << " ;";
            const Transition& t = a.step(s, x);
            out << " " << x << " -> " << t.out << " " << nm[t.next];
        }
        out << "\n";
    }
    if (a.has_identity()) out << "identity " << nm[a.identity] << "\n";
    return out.str();
}

Word act(const Automaton& a, int s, const Word& w) {
    Word result;
    result.reserve(w.size());
    int cur = s;
    for (Letter x : w) {
        const Transition& t = a.step(cur, x);
        result.push_back(t.out);
        cur = t.next;
    }
    return result;
}

int section(const Automaton& a, int s, const Word& w) {
    int cur = s;
    for (Letter x : w) cur = a.next(cur, x);
    return cur;
}

ComposeResult compose(const Automaton& left, const Automaton& right) {
    if (left.alphabet != right.alphabet)
        throw ValidationError("compose: alphabet mismatch");
    const int nl = left.size(), nr = right.size();
    ComposeResult res;
    res.automaton.alphabet = left.alphabet;
    res.automaton.states.resize(static_cast<size_t>(nl) * nr);
    res.pairs.reserve(static_cast<size_t>(nl) * nr);
    for (int i = 0; i < nl; ++i) {
        for (int j = 0; j < nr; ++j) {
            StateRecord rec;
            rec.slots.resize(left.alphabet);
            for (Letter x = 0; x < left.alphabet; ++x) {
                const Transition& b = right.step(j, x);
                const Transition& a = left.step(i, b.out);
                rec.slots[x] = Transition{a.out, a.next * nr + b.next};
            }
            res.automaton.states[i * nr + j] = std::move(rec);
            res.pairs.emplace_back(i, j);
        }
    }
    if (left.has_identity() && right.has_identity())
        res.automaton.identity = left.identity * nr + right.identity;
    return res;
}

Automaton invert(const Automaton& a) {
    Automaton inv;
    inv.alphabet = a.alphabet;
    inv.states.resize(a.size());
    for (int s = 0; s < a.size(); ++s) {
        StateRecord rec;
        rec.slots.resize(a.alphabet);
        for (Letter x = 0; x < a.alphabet; ++x) {
            const Transition& t = a.step(s, x);
            rec.slots[t.out] = Transition{x, t.next};
        }
        inv.states[s] = std::move(rec);
    }
    if (!a.names.empty()) {
        inv.names.resize(a.size());
        for (int s = 0; s < a.size(); ++s) inv.names[s] = a.names[s] + "_inv";
    }
    inv.identity = a.identity;
    if (inv.identity >= 0 && !inv.names.empty() && !a.names.empty())
        inv.names[inv.identity] = a.names[inv.identity];
    return inv;
}

ReduceResult reduce(const Automaton& a) {
    const int n = a.size();
    // Seed classes by output function, then refine by section classes.
    std::vector<int> cls(n, 0);
    {
        std::map<std::vector<Letter>, int> seed;
        for (int s = 0; s < n; ++s) {
            std::vector<Letter> outs(a.alphabet);
            for (Letter x = 0; x < a.alphabet; ++x) outs[x] = a.out(s, x);
            auto it = seed.find(outs);
            if (it == seed.end()) it = seed.emplace(std::move(outs), static_cast<int>(seed.size())).first;
            cls[s] = it->second;
        }
    }
    while (true) {
        std::map<std::pair<int, std::vector<int>>, int> sig;
        std::vector<int> next_cls(n);
        for (int s = 0; s < n; ++s) {
            std::vector<int> secs(a.alphabet);
            for (Letter x = 0; x < a.alphabet; ++x) secs[x] = cls[a.next(s, x)];
            auto key = std::make_pair(cls[s], std::move(secs));
            auto it = sig.find(key);
            if (it == sig.end()) it = sig.emplace(std::move(key), static_cast<int>(sig.size())).first;
            next_cls[s] = it->second;
        }
        bool stable = static_cast<int>(sig.size()) ==
                      (n == 0 ? 0 : 1 + *std::max_element(cls.begin(), cls.end()));
        cls = std::move(next_cls);
        if (stable || n == 0) break;
    }

    // Renumber classes by smallest member index.
    std::vector<int> renum(n, -1);
    int next_id = 0;
    std::vector<int> rep;  // representative (smallest member) of each class
    for (int s = 0; s < n; ++s) {
        if (renum[cls[s]] == -1) {
            renum[cls[s]] = next_id++;
            rep.push_back(s);
        }
    }
    ReduceResult res;
    res.state_map.resize(n);
    for (int s = 0; s < n; ++s) res.state_map[s] = renum[cls[s]];

    res.automaton.alphabet = a.alphabet;
    res.automaton.states.resize(next_id);
    for (int c = 0; c < next_id; ++c) {
        StateRecord rec;
        rec.slots.resize(a.alphabet);
        for (Letter x = 0; x < a.alphabet; ++x) {
            const Transition& t = a.step(rep[c], x);
            rec.slots[x] = Transition{t.out, res.state_map[t.next]};
        }
        res.automaton.states[c] = std::move(rec);
    }
    if (!a.names.empty()) {
        res.automaton.names.resize(next_id);
        for (int c = 0; c < next_id; ++c) res.automaton.names[c] = a.names[rep[c]];
    }
    if (a.has_identity()) res.automaton.identity = res.state_map[a.identity];
    return res;
}

UnionResult disjoint_union(const Automaton& left, const Automaton& right) {
    if (left.size() > 0 && right.size() > 0 && left.alphabet != right.alphabet)
        throw ValidationError("union: alphabet mismatch");
    UnionResult res;
    res.automaton.alphabet = left.size() > 0 ? left.alphabet
                                             : (right.size() > 0 ? right.alphabet : left.alphabet);
    if (res.automaton.alphabet == 0) res.automaton.alphabet = std::max(left.alphabet, right.alphabet);
    const int nl = left.size(), nr = right.size();
    res.automaton.states.reserve(nl + nr);
    for (int s = 0; s < nl; ++s) res.automaton.states.push_back(left.states[s]);
    for (int s = 0; s < nr; ++s) {
        StateRecord rec = right.states[s];
        for (auto& t : rec.slots) t.next += nl;
        res.automaton.states.push_back(std::move(rec));
    }
    res.map_left.resize(nl);
    res.map_right.resize(nr);
    for (int s = 0; s < nl; ++s) res.map_left[s] = s;
    for (int s = 0; s < nr; ++s) res.map_right[s] = nl + s;
    if (!left.names.empty() || !right.names.empty()) {
        res.automaton.names.resize(nl + nr);
        for (int s = 0; s < nl; ++s)
            res.automaton.names[s] = left.names.empty() ? "" : left.names[s];
        for (int s = 0; s < nr; ++s)
            res.automaton.names[nl + s] = right.names.empty() ? "" : right.names[s];
    }
    if (left.has_identity())
        res.automaton.identity = left.identity;
    else if (right.has_identity())
        res.automaton.identity = nl + right.identity;
    return res;
}

std::optional<int> find_identity(const Automaton& a) {
    ReduceResult r = reduce(a);
    for (int c = 0; c < r.automaton.size(); ++c) {
        bool is_id = true;
        for (Letter x = 0; x < a.alphabet && is_id; ++x) {
            const Transition& t = r.automaton.step(c, x);
            is_id = (t.out == x && t.next == c);
        }
        if (is_id) {
            for (int s = 0; s < a.size(); ++s)
                if (r.state_map[s] == c) return s;
        }
    }
    return std::nullopt;
}

bool bisimilar(const Automaton& a, int sa, const Automaton& b, int sb) {
    UnionResult u = disjoint_union(a, b);
    ReduceResult r = reduce(u.automaton);
    return r.state_map[u.map_left[sa]] == r.state_map[u.map_right[sb]];
}

}  // namespace selfsim
