#include "gtx/io.hpp"

#include <fstream>
#include <sstream>

namespace gtx {

namespace {

struct Lexer {
    std::string text;
    std::size_t pos = 0;
    int line = 1;

    explicit Lexer(std::string t) : text(std::move(t)) {}

    void skip_space() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') {  // comment to end of line
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (c == '\n') {
                ++line;
                ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos;
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_space();
        return pos >= text.size();
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        skip_space();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", line);
    }

    bool accept_arrow() {
        skip_space();
        if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
            pos += 2;
            return true;
        }
        return false;
    }

    static bool word_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '*';
    }

    std::string word() {
        skip_space();
        std::size_t start = pos;
        while (pos < text.size() && word_char(text[pos])) ++pos;
        if (pos == start) throw ParseError("expected identifier", line);
        return text.substr(start, pos - start);
    }

    Id number() {
        std::string w = word();
        try {
            std::size_t used = 0;
            Id v = std::stoll(w, &used);
            if (used != w.size()) throw std::invalid_argument(w);
            return v;
        } catch (const std::exception&) {
            throw ParseError("expected number, got '" + w + "'", line);
        }
    }
};

LabelAlphabet parse_alphabet_block(Lexer& lx) {
    // alphabet { nodes: a, b; edges: x, y }
    LabelAlphabet a;
    lx.expect('{');
    while (!lx.accept('}')) {
        std::string kind = lx.word();
        lx.expect(':');
        std::set<Symbol>* target = nullptr;
        if (kind == "nodes")
            target = &a.node_labels;
        else if (kind == "edges")
            target = &a.edge_labels;
        else
            throw ParseError("expected 'nodes' or 'edges', got '" + kind + "'", lx.line);
        for (;;) {
            target->insert(lx.word());
            if (!lx.accept(',')) break;
        }
        lx.accept(';');
    }
    return a;
}

void parse_item_attrs(Lexer& lx, std::optional<Symbol>& label, std::optional<bool>& rooted,
                      Symbol* edge_label) {
    lx.expect('[');
    while (!lx.accept(']')) {
        std::string key = lx.word();
        lx.expect('=');
        if (key == "label") {
            Symbol v = lx.word();
            if (edge_label)
                *edge_label = v;
            else
                label = v;
        } else if (key == "root") {
            Id v = lx.number();
            if (v != 0 && v != 1) throw ParseError("root must be 0 or 1", lx.line);
            rooted = v == 1;
        } else {
            throw ParseError("unknown attribute '" + key + "'", lx.line);
        }
        lx.accept(',');
    }
}

Graph parse_graph_body(Lexer& lx, const LabelAlphabet& a) {
    Graph g(a);
    lx.expect('{');
    while (!lx.accept('}')) {
        std::string kind = lx.word();
        if (kind == "node") {
            Id id = lx.number();
            std::optional<Symbol> label;
            std::optional<bool> rooted;
            parse_item_attrs(lx, label, rooted, nullptr);
            if (label && a.node_labels.count(*label) == 0)
                throw ParseError("node label '" + *label + "' not in alphabet", lx.line);
            g.add_node(id, label, rooted);
        } else if (kind == "edge") {
            Id id = lx.number();
            lx.expect(':');
            Id src = lx.number();
            if (!lx.accept_arrow()) throw ParseError("expected '->'", lx.line);
            Id tgt = lx.number();
            std::optional<Symbol> dummy_l;
            std::optional<bool> dummy_r;
            Symbol label;
            parse_item_attrs(lx, dummy_l, dummy_r, &label);
            if (label.empty()) throw ParseError("edge needs a label", lx.line);
            if (a.edge_labels.count(label) == 0)
                throw ParseError("edge label '" + label + "' not in alphabet", lx.line);
            if (!g.has_node(src) || !g.has_node(tgt))
                throw ParseError("edge endpoints must be declared first", lx.line);
            g.add_edge(id, src, tgt, label);
        } else {
            throw ParseError("expected 'node' or 'edge', got '" + kind + "'", lx.line);
        }
    }
    return g;
}

} // namespace

Graph parse_graph(const std::string& text) {
    Lexer lx(text);
    std::string kw = lx.word();
    LabelAlphabet a;
    if (kw == "alphabet") {
        a = parse_alphabet_block(lx);
        kw = lx.word();
    }
    if (kw != "graph") throw ParseError("expected 'graph', got '" + kw + "'", lx.line);
    Graph g = parse_graph_body(lx, a);
    if (!lx.eof()) throw ParseError("trailing input after graph", lx.line);
    return g;
}

NamedSystem parse_system(const std::string& text) {
    Lexer lx(text);
    NamedSystem s;
    std::string kw = lx.word();
    if (kw != "alphabet")
        throw ParseError("system file must start with an alphabet block", lx.line);
    s.alphabet = parse_alphabet_block(lx);
    while (!lx.eof()) {
        kw = lx.word();
        if (kw == "rule") {
            Rule r;
            r.name = lx.word();
            lx.expect('{');
            for (int i = 0; i < 3; ++i) {
                std::string part = lx.word();
                int part_line = lx.line;
                Graph g = parse_graph_body(lx, s.alphabet);
                if (part == "left")
                    r.left = g;
                else if (part == "interface")
                    r.interface = g;
                else if (part == "right")
                    r.right = g;
                else
                    throw ParseError("expected left/interface/right, got '" + part + "'",
                                     part_line);
            }
            lx.expect('}');
            auto errs = validate_rule(r);
            if (!errs.empty())
                throw ParseError("rule " + r.name + ": " + errs.front(), lx.line);
            s.rules.push_back(std::move(r));
        } else if (kw == "accept") {
            s.accept = parse_graph_body(lx, s.alphabet);
        } else if (kw == "graph" && !s.accept) {
            s.accept = parse_graph_body(lx, s.alphabet);
        } else {
            throw ParseError("expected 'rule' or 'accept', got '" + kw + "'", lx.line);
        }
    }
    return s;
}

namespace {

void print_alphabet(std::ostream& os, const LabelAlphabet& a) {
    os << "alphabet { nodes:";
    bool first = true;
    for (const Symbol& s : a.node_labels) {
        os << (first ? " " : ", ") << s;
        first = false;
    }
    os << "; edges:";
    first = true;
    for (const Symbol& s : a.edge_labels) {
        os << (first ? " " : ", ") << s;
        first = false;
    }
    os << " }\n";
}

void print_body(std::ostream& os, const Graph& g, const std::string& indent) {
    for (const Node& n : g.nodes()) {
        os << indent << "node " << n.id << " [";
        bool first = true;
        if (n.label) {
            os << "label=" << *n.label;
            first = false;
        }
        if (n.rooted) os << (first ? "" : ", ") << "root=" << (*n.rooted ? 1 : 0);
        os << "]\n";
    }
    for (const Edge& e : g.edges())
        os << indent << "edge " << e.id << ": " << e.src << " -> " << e.tgt
           << " [label=" << e.label << "]\n";
}

} // namespace

std::string print_graph(const Graph& g) {
    std::ostringstream os;
    print_alphabet(os, g.alphabet());
    os << "graph {\n";
    print_body(os, g, "  ");
    os << "}\n";
    return os.str();
}

std::string print_rule(const Rule& r) {
    std::ostringstream os;
    os << "rule " << r.name << " {\n  left {\n";
    print_body(os, r.left, "    ");
    os << "  }\n  interface {\n";
    print_body(os, r.interface, "    ");
    os << "  }\n  right {\n";
    print_body(os, r.right, "    ");
    os << "  }\n}\n";
    return os.str();
}

std::string print_system(const NamedSystem& s) {
    std::ostringstream os;
    print_alphabet(os, s.alphabet);
    for (const Rule& r : s.rules) os << print_rule(r);
    if (s.accept) {
        os << "accept {\n";
        print_body(os, *s.accept, "  ");
        os << "}\n";
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace gtx
