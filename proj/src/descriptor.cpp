#include "pchar/descriptor.hpp"

#include <charconv>

#include "pchar/errors.hpp"

namespace pchar {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Descriptor parse() {
        Descriptor d = descriptor();
        if (pos_ != s_.size()) fail("trailing input");
        return d;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("descriptor '" + std::string(s_) + "' at " + std::to_string(pos_) + ": " + what);
    }

    bool eat(std::string_view tok) {
        if (s_.substr(pos_, tok.size()) != tok) return false;
        pos_ += tok.size();
        return true;
    }

    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::uint64_t number() {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc() || ptr == s_.data() + pos_) fail("expected a number");
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }

    void pair(Descriptor& d) {
        d.a = number();
        expect(',');
        const std::uint64_t m = number();
        if (m > 64) fail("m too large");
        d.b = static_cast<unsigned>(m);
    }

    Descriptor descriptor() {
        Descriptor d;
        if (eat("cyclic:")) {
            d.kind = Descriptor::Kind::Cyclic;
            d.a = number();
            if (d.a == 0) fail("cyclic order must be positive");
        } else if (eat("extraspecial:")) {
            d.kind = Descriptor::Kind::Extraspecial;
            pair(d);
        } else if (eat("example:")) {
            d.kind = Descriptor::Kind::Example;
            pair(d);
        } else if (eat("product:")) {
            d.kind = Descriptor::Kind::Product;
            d.factors.push_back(descriptor());
            expect(',');
            d.factors.push_back(descriptor());
        } else if (eat("file:")) {
            d.kind = Descriptor::Kind::File;
            d.path = std::string(s_.substr(pos_));
            if (d.path.empty()) fail("empty path");
            pos_ = s_.size();
        } else {
            fail("unknown constructor");
        }
        return d;
    }
};

}  // namespace

std::string Descriptor::to_string() const {
    switch (kind) {
        case Kind::Cyclic: return "cyclic:" + std::to_string(a);
        case Kind::Extraspecial: return "extraspecial:" + std::to_string(a) + "," + std::to_string(b);
        case Kind::Example: return "example:" + std::to_string(a) + "," + std::to_string(b);
        case Kind::Product: return "product:" + factors[0].to_string() + "," + factors[1].to_string();
        case Kind::File: return "file:" + path;
    }
    return {};
}

std::optional<ExampleSpec> Descriptor::example() const {
    if (kind != Kind::Example) return std::nullopt;
    return ExampleSpec(a, b);
}

Descriptor parse_descriptor(std::string_view text) { return Parser(text).parse(); }

FiniteGroup build_group(const Descriptor& d, std::size_t cap, const std::filesystem::path& base_dir) {
    switch (d.kind) {
        case Descriptor::Kind::Cyclic: return cyclic_group(d.a, cap);
        case Descriptor::Kind::Extraspecial: return heisenberg_extraspecial(d.a, d.b, cap);
        case Descriptor::Kind::Example: {
            ExampleSpec spec(d.a, d.b);
            auto order = spec.g_order();
            if (!order || *order > cap) throw ResourceLimit(d.to_string() + " exceeds the element cap");
            return function_power_semidirect(heisenberg_extraspecial(d.a, d.b, cap), d.a, cap);
        }
        case Descriptor::Kind::Product:
            return direct_product(build_group(d.factors[0], cap, base_dir), build_group(d.factors[1], cap, base_dir),
                                  cap);
        case Descriptor::Kind::File: {
            std::filesystem::path p(d.path);
            if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
            return load_group_file(p.string(), cap);
        }
    }
    throw InternalError("unhandled descriptor kind");
}

}  // namespace pchar
