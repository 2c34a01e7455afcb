#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "npp/point.hpp"

namespace npp {

/// Minimal streaming JSON writer producing canonical compact output.
/// Values are written in insertion order; rationals as "p/q" strings.
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& out) : out_(out) {}

    JsonWriter& obj_open() { return raw("{"); }
    JsonWriter& obj_close() { return raw("}"); }
    JsonWriter& arr_open() { return raw("["); }
    JsonWriter& arr_close() { return raw("]"); }
    JsonWriter& comma() { return raw(","); }

    JsonWriter& key(const std::string& k) {
        write_string(k);
        return raw(":");
    }
    JsonWriter& str(const std::string& s) {
        write_string(s);
        return *this;
    }
    JsonWriter& num(std::size_t v) {
        out_ << v;
        return *this;
    }
    JsonWriter& num(std::ptrdiff_t v) {
        out_ << v;
        return *this;
    }
    JsonWriter& rat(const Rational& q) { return str(to_string(q)); }
    JsonWriter& null() { return raw("null"); }
    JsonWriter& raw(const char* s) {
        out_ << s;
        return *this;
    }

    JsonWriter& point(const Point& p) {
        arr_open();
        for (std::size_t i = 0; i < p.dim(); ++i) {
            if (i) comma();
            rat(p[i]);
        }
        return arr_close();
    }

private:
    void write_string(const std::string& s) {
        out_ << '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ << "\\\""; break;
                case '\\': out_ << "\\\\"; break;
                case '\n': out_ << "\\n"; break;
                default: out_ << c;
            }
        }
        out_ << '"';
    }

    std::ostream& out_;
};

/// Matrix JSON: {"rows":r,"cols":c,"entries":[["p/q",...],...]}.
std::string matrix_to_json(const std::vector<std::vector<Rational>>& entries);
std::vector<std::vector<Rational>> matrix_from_json(const std::string& text,
                                                    std::size_t* rows = nullptr,
                                                    std::size_t* cols = nullptr);

} // namespace npp
