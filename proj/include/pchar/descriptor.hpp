#pragma once

// Group descriptors:
//   cyclic:n | product:<d>,<d> | extraspecial:p,m | example:p,m | file:<path>
// A file path runs to the end of the string, so it can only be the last factor.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pchar/constructions.hpp"
#include "pchar/group.hpp"

namespace pchar {

struct Descriptor {
    enum class Kind { Cyclic, Product, Extraspecial, Example, File };

    Kind kind = Kind::Cyclic;
    std::uint64_t a = 0;  // n, or p
    unsigned b = 0;       // m
    std::string path;
    std::vector<Descriptor> factors;

    std::string to_string() const;
    /// Set for example:p,m.
    std::optional<ExampleSpec> example() const;
};

/// Throws ParseError.
Descriptor parse_descriptor(std::string_view text);

/// Relative file paths resolve against base_dir.
FiniteGroup build_group(const Descriptor& d, std::size_t cap = kDefaultElementCap,
                        const std::filesystem::path& base_dir = {});

}  // namespace pchar
