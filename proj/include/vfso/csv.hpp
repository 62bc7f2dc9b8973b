#ifndef VFSO_CSV_HPP
#define VFSO_CSV_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <system_error>

namespace vfso::csv {

/// Shortest decimal form that round-trips to the same double.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

inline std::string format_number(std::int64_t v) { return std::to_string(v); }

inline std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// Accumulates an RFC 4180 style document: comma separated, '.' decimals,
/// double-quote escaping, one header row.
class Writer {
public:
    explicit Writer(std::initializer_list<std::string_view> header) { row(header); }

    Writer& field(std::string_view s) {
        sep();
        out_ += quote(s);
        return *this;
    }
    Writer& field(const char* s) { return field(std::string_view(s)); }
    Writer& field(const std::string& s) { return field(std::string_view(s)); }
    Writer& field(double v) {
        sep();
        out_ += format_number(v);
        return *this;
    }
    Writer& field(std::int64_t v) {
        sep();
        out_ += format_number(v);
        return *this;
    }
    Writer& field(bool b) { return field(std::string_view(b ? "true" : "false")); }
    Writer& empty() {
        sep();
        return *this;
    }

    Writer& end_row() {
        out_ += '\n';
        at_row_start_ = true;
        return *this;
    }

    const std::string& str() const { return out_; }

private:
    void row(std::initializer_list<std::string_view> cells) {
        for (auto c : cells) field(c);
        end_row();
    }
    void sep() {
        if (!at_row_start_) out_ += ',';
        at_row_start_ = false;
    }

    std::string out_;
    bool at_row_start_ = true;
};

}  // namespace vfso::csv

#endif
