#include "ontoforge/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ontoforge {

TurtleSyntaxError::TurtleSyntaxError(int line_, int column_, const std::string& message)
    : std::runtime_error("turtle syntax error at " + std::to_string(line_) + ":" +
                         std::to_string(column_) + ": " + message),
      line(line_),
      column(column_) {}

UnknownPrefixError::UnknownPrefixError(int line_, int column_, std::string prefix_)
    : TurtleSyntaxError(line_, column_, "unknown prefix: " + prefix_), prefix(std::move(prefix_)) {}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Graph parse() {
        skip_ws();
        while (!eof()) {
            if (peek() == '@') {
                parse_prefix_directive();
            } else {
                parse_triples();
            }
            skip_ws();
        }
        return std::move(graph_);
    }

private:
    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Graph graph_;
    int next_anon_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw TurtleSyntaxError(line_, col_, msg); }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char peek_at(size_t off) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    void expect_word(const std::string& w) {
        for (char c : w) expect(c);
    }

    static bool pn_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    }

    std::string read_pn_local() {
        std::string s;
        while (!eof() && pn_char(peek())) s += advance();
        // A trailing '.' is a statement terminator, not part of the name.
        while (!s.empty() && s.back() == '.') {
            s.pop_back();
            --pos_;
            --col_;
        }
        return s;
    }

    Iri parse_iriref() {
        int l = line_, c = col_;
        expect('<');
        std::string s;
        while (!eof() && peek() != '>') {
            char ch = advance();
            if (ch == '\n') throw TurtleSyntaxError(l, c, "newline inside IRIREF");
            s += ch;
        }
        expect('>');
        try {
            return Iri(s);
        } catch (const std::invalid_argument& e) {
            throw TurtleSyntaxError(l, c, e.what());
        }
    }

    Iri parse_prefixed_name() {
        int l = line_, c = col_;
        std::string prefix;
        while (!eof() && peek() != ':' && pn_char(peek())) prefix += advance();
        expect(':');
        std::string local = read_pn_local();
        auto it = graph_.prefixes().find(prefix);
        if (it == graph_.prefixes().end()) throw UnknownPrefixError(l, c, prefix);
        return Iri(it->second.value + local);
    }

    void parse_prefix_directive() {
        expect_word("@prefix");
        skip_ws();
        std::string name;
        while (!eof() && peek() != ':' && pn_char(peek())) name += advance();
        expect(':');
        skip_ws();
        Iri ns = parse_iriref();
        skip_ws();
        expect('.');
        graph_.set_prefix(name, ns);
    }

    Term parse_subject() {
        char c = peek();
        if (c == '<') return parse_iriref();
        if (c == '_' && peek_at(1) == ':') return parse_blank_label();
        if (c == '[') return parse_blank_property_list();
        return parse_prefixed_name();
    }

    BlankNode parse_blank_label() {
        expect('_');
        expect(':');
        std::string id = read_pn_local();
        if (id.empty()) fail("empty blank node label");
        return BlankNode{id};
    }

    Term parse_blank_property_list() {
        expect('[');
        BlankNode node{"genid" + std::to_string(next_anon_++)};
        skip_ws();
        if (peek() != ']') parse_predicate_object_list(node);
        skip_ws();
        expect(']');
        return node;
    }

    Iri parse_verb() {
        if (peek() == 'a') {
            char nxt = peek_at(1);
            if (std::isspace(static_cast<unsigned char>(nxt)) || nxt == '<' || nxt == '[') {
                advance();
                return rdf_ns::type;
            }
        }
        if (peek() == '<') return parse_iriref();
        return parse_prefixed_name();
    }

    Term parse_object() {
        char c = peek();
        if (c == '<') return parse_iriref();
        if (c == '_' && peek_at(1) == ':') return parse_blank_label();
        if (c == '[') return parse_blank_property_list();
        if (c == '"') return parse_string_literal();
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return parse_numeric_literal();
        if (starts_keyword("true")) {
            expect_word("true");
            return Literal{"true", xsd::boolean_};
        }
        if (starts_keyword("false")) {
            expect_word("false");
            return Literal{"false", xsd::boolean_};
        }
        return parse_prefixed_name();
    }

    bool starts_keyword(const std::string& w) const {
        if (text_.compare(pos_, w.size(), w) != 0) return false;
        char after = pos_ + w.size() < text_.size() ? text_[pos_ + w.size()] : ' ';
        return !pn_char(after) && after != ':';
    }

    Literal parse_string_literal() {
        int l = line_, c = col_;
        expect('"');
        std::string s;
        while (true) {
            if (eof()) throw TurtleSyntaxError(l, c, "unterminated string literal");
            char ch = advance();
            if (ch == '"') break;
            if (ch == '\n') throw TurtleSyntaxError(l, c, "newline in string literal");
            if (ch == '\\') {
                if (eof()) throw TurtleSyntaxError(l, c, "dangling escape");
                char e = advance();
                switch (e) {
                    case 't': s += '\t'; break;
                    case 'n': s += '\n'; break;
                    case 'r': s += '\r'; break;
                    case '"': s += '"'; break;
                    case '\\': s += '\\'; break;
                    case 'u': s += parse_unicode_escape(4); break;
                    case 'U': s += parse_unicode_escape(8); break;
                    default: fail(std::string("unsupported escape \\") + e);
                }
            } else {
                s += ch;
            }
        }
        Literal lit{s, xsd::string_};
        if (!eof() && peek() == '@') {
            advance();
            std::string tag;
            while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
                tag += advance();
            if (tag.empty()) fail("empty language tag");
            lit.datatype = xsd::lang_string;
            lit.language = tag;
        } else if (!eof() && peek() == '^') {
            expect('^');
            expect('^');
            lit.datatype = peek() == '<' ? parse_iriref() : parse_prefixed_name();
        }
        return lit;
    }

    std::string parse_unicode_escape(int digits) {
        unsigned long cp = 0;
        for (int i = 0; i < digits; ++i) {
            if (eof()) fail("truncated unicode escape");
            char h = advance();
            int v;
            if (h >= '0' && h <= '9') v = h - '0';
            else if (h >= 'a' && h <= 'f') v = h - 'a' + 10;
            else if (h >= 'A' && h <= 'F') v = h - 'A' + 10;
            else { fail("bad hex digit in unicode escape"); }
            cp = cp * 16 + static_cast<unsigned long>(v);
        }
        // UTF-8 encode
        std::string out;
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
        return out;
    }

    Literal parse_numeric_literal() {
        std::string s;
        if (peek() == '+' || peek() == '-') s += advance();
        bool has_dot = false, has_exp = false;
        while (!eof()) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                s += advance();
            } else if (c == '.' && !has_dot && !has_exp &&
                       std::isdigit(static_cast<unsigned char>(peek_at(1)))) {
                has_dot = true;
                s += advance();
            } else if ((c == 'e' || c == 'E') && !has_exp) {
                has_exp = true;
                s += advance();
                if (!eof() && (peek() == '+' || peek() == '-')) s += advance();
            } else {
                break;
            }
        }
        Iri dt = has_exp ? xsd::double_ : (has_dot ? xsd::decimal_ : xsd::integer_);
        if (!literal_lexical_valid(s, dt)) fail("malformed numeric literal: " + s);
        return Literal{s, dt};
    }

    void parse_predicate_object_list(const Term& subject) {
        while (true) {
            skip_ws();
            Iri verb = parse_verb();
            while (true) {
                skip_ws();
                Term object = parse_object();
                graph_.add(Triple{subject, Term{verb}, std::move(object)});
                skip_ws();
                if (!eof() && peek() == ',') {
                    advance();
                    continue;
                }
                break;
            }
            if (!eof() && peek() == ';') {
                advance();
                skip_ws();
                if (!eof() && (peek() == '.' || peek() == ']')) break;  // trailing ';'
                continue;
            }
            break;
        }
    }

    void parse_triples() {
        Term subject = parse_subject();
        skip_ws();
        if (is_blank(subject) && peek() == '.') {
            // bare [ ... ] . statement
            advance();
            return;
        }
        parse_predicate_object_list(subject);
        skip_ws();
        expect('.');
    }
};

std::string escape_string(const std::string& s) {
    std::string out;
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04X", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

std::string render_term(const Term& t) {
    if (const auto* i = std::get_if<Iri>(&t)) return "<" + i->value + ">";
    if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->id;
    const auto& l = std::get<Literal>(t);
    std::string out = "\"" + escape_string(l.lexical) + "\"";
    if (l.language) out += "@" + *l.language;
    else if (l.datatype != xsd::string_) out += "^^<" + l.datatype.value + ">";
    return out;
}

}  // namespace

Graph parse_turtle(const std::string& text) { return Parser(text).parse(); }

std::string serialize_turtle(const Graph& g) {
    std::ostringstream out;
    for (const auto& [name, ns] : g.prefixes())
        out << "@prefix " << name << ": <" << ns.value << "> .\n";
    if (!g.prefixes().empty() && !g.triples().empty()) out << "\n";

    struct Line {
        std::string s, p, o;
    };
    std::vector<Line> lines;
    lines.reserve(g.size());
    for (const auto& t : g.triples())
        lines.push_back({render_term(t.subject), render_term(t.predicate), render_term(t.object)});
    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        return std::tie(a.s, a.p, a.o) < std::tie(b.s, b.p, b.o);
    });

    std::string prev_subject;
    for (const auto& ln : lines) {
        if (!prev_subject.empty() && ln.s != prev_subject) out << "\n";
        prev_subject = ln.s;
        out << ln.s << " " << ln.p << " " << ln.o << " .\n";
    }
    return out.str();
}

}  // namespace ontoforge
