#include "document.hpp"

#include <cctype>

#include <wtw/polyalg.hpp>

namespace wtw::detail
{

const char *Value::kind_name() const
{
    switch (kind) {
    case Kind::String:
        return "string";
    case Kind::Integer:
        return "integer";
    case Kind::Array:
        return "array";
    case Kind::Table:
        return "inline table";
    }
    return "?";
}

std::string quote(std::string_view s)
{
    std::string r = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            r += '\\';
        }
        r += ch;
    }
    r += '"';
    return r;
}

namespace
{

class Reader
{
public:
    explicit Reader(std::string_view src) : m_src(src) {}

    std::vector<Section> run()
    {
        std::vector<Section> sections;
        for (;;) {
            skip_blank_lines();
            if (at_end()) {
                break;
            }
            if (peek() == '[') {
                Section s;
                s.line = m_line;
                ++m_pos;
                skip_inline_ws();
                s.name = read_key();
                skip_inline_ws();
                expect(']');
                end_of_line();
                for (const auto &other : sections) {
                    if (other.name == s.name) {
                        fail("duplicate section [" + s.name + "]");
                    }
                }
                sections.push_back(std::move(s));
                continue;
            }
            if (sections.empty()) {
                fail("key outside of any section");
            }
            KeyValue kv = read_pair(sections.back().entries);
            end_of_line();
            sections.back().entries.push_back(std::move(kv));
        }
        return sections;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw ParseError("line " + std::to_string(m_line) + ": " + what);
    }

    bool at_end() const { return m_pos >= m_src.size(); }
    char peek() const { return at_end() ? '\0' : m_src[m_pos]; }

    void advance()
    {
        if (peek() == '\n') {
            ++m_line;
        }
        ++m_pos;
    }

    void skip_inline_ws()
    {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) {
            ++m_pos;
        }
    }

    void skip_comment()
    {
        if (peek() == '#') {
            while (!at_end() && peek() != '\n') {
                ++m_pos;
            }
        }
    }

    // Whitespace, newlines and comments (inside arrays and between entries).
    void skip_all_ws()
    {
        for (;;) {
            skip_inline_ws();
            skip_comment();
            if (peek() == '\n') {
                advance();
                continue;
            }
            return;
        }
    }

    void skip_blank_lines() { skip_all_ws(); }

    void end_of_line()
    {
        skip_inline_ws();
        skip_comment();
        if (at_end()) {
            return;
        }
        if (peek() != '\n') {
            fail(std::string("unexpected '") + peek() + "' after value");
        }
        advance();
    }

    void expect(char ch)
    {
        if (peek() != ch) {
            fail(std::string("expected '") + ch + "'");
        }
        advance();
    }

    std::string read_string()
    {
        expect('"');
        std::string r;
        for (;;) {
            if (at_end() || peek() == '\n') {
                fail("unterminated string");
            }
            char ch = peek();
            ++m_pos;
            if (ch == '"') {
                return r;
            }
            if (ch == '\\') {
                if (at_end()) {
                    fail("unterminated escape");
                }
                char esc = peek();
                ++m_pos;
                if (esc != '"' && esc != '\\') {
                    fail(std::string("unsupported escape '\\") + esc + "'");
                }
                r += esc;
                continue;
            }
            r += ch;
        }
    }

    std::string read_key()
    {
        if (peek() == '"') {
            return read_string();
        }
        std::string r;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) {
            r += peek();
            ++m_pos;
        }
        if (r.empty()) {
            fail("expected a key");
        }
        return r;
    }

    KeyValue read_pair(const Table &existing)
    {
        KeyValue kv;
        kv.line = m_line;
        kv.key = read_key();
        for (const auto &e : existing) {
            if (e.key == kv.key) {
                fail("duplicate key '" + kv.key + "'");
            }
        }
        skip_inline_ws();
        expect('=');
        skip_inline_ws();
        kv.value = std::make_shared<Value>(read_value());
        return kv;
    }

    Value read_value()
    {
        Value v;
        v.line = m_line;
        const char ch = peek();
        if (ch == '"') {
            v.kind = Value::Kind::String;
            v.text = read_string();
            return v;
        }
        if (ch == '-' || ch == '+' || std::isdigit(static_cast<unsigned char>(ch))) {
            v.kind = Value::Kind::Integer;
            if (ch == '-' || ch == '+') {
                if (ch == '-') {
                    v.text += '-';
                }
                ++m_pos;
            }
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                v.text += peek();
                ++m_pos;
            }
            if (v.text.empty() || v.text == "-") {
                fail("malformed integer");
            }
            return v;
        }
        if (ch == '[') {
            v.kind = Value::Kind::Array;
            advance();
            skip_all_ws();
            while (peek() != ']') {
                v.items.push_back(read_value());
                skip_all_ws();
                if (peek() == ',') {
                    advance();
                    skip_all_ws();
                } else if (peek() != ']') {
                    fail("expected ',' or ']' in array");
                }
            }
            advance();
            return v;
        }
        if (ch == '{') {
            v.kind = Value::Kind::Table;
            ++m_pos;
            skip_inline_ws();
            while (peek() != '}') {
                v.table.push_back(read_pair(v.table));
                skip_inline_ws();
                if (peek() == ',') {
                    ++m_pos;
                    skip_inline_ws();
                } else if (peek() != '}') {
                    fail("expected ',' or '}' in inline table");
                }
            }
            ++m_pos;
            return v;
        }
        fail("expected a value");
    }

    std::string_view m_src;
    std::size_t m_pos = 0;
    int m_line = 1;
};

} // namespace

std::vector<Section> parse_document(std::string_view source)
{
    return Reader(source).run();
}

} // namespace wtw::detail
