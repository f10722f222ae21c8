#include <complex>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "pchar/characters.hpp"
#include "pchar/serialize.hpp"

namespace pchar {

nlohmann::json cyclotomic_to_json(const Cyclotomic& c) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& x : c.coeffs()) {
        coeffs.push_back({x.get_num().get_str(), x.get_den().get_str()});
    }
    return {{"conductor", c.conductor()}, {"coeffs", std::move(coeffs)}};
}

nlohmann::json table_to_json(const CharacterTable& t) {
    const auto& g = t.group();
    const auto& cd = g.classes();
    nlohmann::json classes = nlohmann::json::array();
    for (std::size_t k = 0; k < cd.num_classes(); ++k) {
        classes.push_back({{"index", k},
                           {"size", cd.sizes[k]},
                           {"representative", cd.reps[k]},
                           {"element_order", cd.rep_orders[k]}});
    }
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        nlohmann::json values = nlohmann::json::array();
        for (std::size_t k = 0; k < t.size(); ++k) values.push_back(cyclotomic_to_json(t.value(i, k)));
        rows.push_back({{"index", i},
                        {"degree", t.degree(i)},
                        {"faithful", t.is_faithful(i)},
                        {"conjugate", t.conjugate_row(i)},
                        {"values", std::move(values)}});
    }
    return {{"group", g.description()},
            {"order", g.order()},
            {"conductor", t.conductor()},
            {"classes", std::move(classes)},
            {"rows", std::move(rows)}};
}

void write_table_json(std::ostream& out, const CharacterTable& t) { out << table_to_json(t).dump(1) << '\n'; }

void write_table_csv(std::ostream& out, const CharacterTable& t) {
    out << "# values are complex approximations for display only (lossy)\n";
    out << "row,degree";
    for (std::size_t k = 0; k < t.size(); ++k) out << ",class_" << k;
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < t.size(); ++i) {
        out << i << ',' << t.degree(i);
        for (std::size_t k = 0; k < t.size(); ++k) {
            std::complex<double> z = t.value(i, k).approx();
            double re = std::abs(z.real()) < 5e-10 ? 0.0 : z.real();
            double im = std::abs(z.imag()) < 5e-10 ? 0.0 : z.imag();
            std::snprintf(buf, sizeof buf, "%.6f%+.6fi", re, im);
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace pchar
