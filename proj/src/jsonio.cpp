#include "npp/jsonio.hpp"

#include <json.hpp>
#include <sstream>

#include "npp/errors.hpp"

namespace npp {

std::string matrix_to_json(const std::vector<std::vector<Rational>>& entries) {
    std::ostringstream out;
    JsonWriter w(out);
    std::size_t rows = entries.size();
    std::size_t cols = rows ? entries[0].size() : 0;
    w.obj_open().key("rows").num(rows).comma().key("cols").num(cols).comma().key("entries");
    w.arr_open();
    for (std::size_t r = 0; r < rows; ++r) {
        if (r) w.comma();
        w.arr_open();
        for (std::size_t c = 0; c < cols; ++c) {
            if (c) w.comma();
            w.rat(entries[r][c]);
        }
        w.arr_close();
    }
    w.arr_close().obj_close();
    return out.str();
}

std::vector<std::vector<Rational>> matrix_from_json(const std::string& text,
                                                    std::size_t* rows, std::size_t* cols) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("matrix JSON: ") + e.what());
    }
    try {
        std::size_t r = j.at("rows").get<std::size_t>();
        std::size_t c = j.at("cols").get<std::size_t>();
        std::vector<std::vector<Rational>> entries;
        for (const auto& row : j.at("entries")) {
            std::vector<Rational> er;
            for (const auto& cell : row) er.push_back(parse_rational(cell.get<std::string>()));
            entries.push_back(std::move(er));
        }
        if (entries.size() != r) throw InputError("matrix JSON: row count mismatch");
        for (const auto& row : entries)
            if (row.size() != c) throw InputError("matrix JSON: column count mismatch");
        if (rows) *rows = r;
        if (cols) *cols = c;
        return entries;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("matrix JSON: ") + e.what());
    }
}

} // namespace npp
