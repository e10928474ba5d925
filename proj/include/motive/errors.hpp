#pragma once

#include <stdexcept>
#include <string>

namespace motive {

// Base for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid input: bad matrix shapes, morphisms that are not
// well defined, complexes whose differential does not square to zero, ...
struct validation_error : error {
    explicit validation_error(const std::string& what) : error(what) {}
};

// Malformed input files.  line/column are 1-based; 0 means unknown.
struct parse_error : error {
    parse_error(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : error(what), line(line), column(column) {}
    std::size_t line = 0;
    std::size_t column = 0;
};

}  // namespace motive
