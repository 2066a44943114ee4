#ifndef WTW_SRC_DOCUMENT_HPP
#define WTW_SRC_DOCUMENT_HPP

// Reader for the small structured-text dialect used by spec files:
//
//   # comment
//   [section]
//   key = "string" | integer | [ value, ... ] | { key = value, ... }
//
// Keys are bare (letters, digits, '_', '-') or double-quoted. Arrays may
// span lines and allow a trailing comma. Duplicate sections or keys are
// errors. Anything else is a ParseError with a line number.

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace wtw::detail
{

struct Value;

struct KeyValue {
    std::string key;
    std::shared_ptr<Value> value;
    int line = 0;
};

using Table = std::vector<KeyValue>;

struct Value {
    enum class Kind { String, Integer, Array, Table };
    Kind kind = Kind::String;
    std::string text;  // string contents, or integer literal
    std::vector<Value> items;
    Table table;
    int line = 0;

    const char *kind_name() const;
};

struct Section {
    std::string name;
    Table entries;
    int line = 0;
};

std::vector<Section> parse_document(std::string_view source);

std::string quote(std::string_view s);

} // namespace wtw::detail

#endif
