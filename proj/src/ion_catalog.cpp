#include "recqed/ion_catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "recqed/error.hpp"
#include "recqed/format.hpp"

#ifndef RECQED_DEFAULT_CATALOG
#define RECQED_DEFAULT_CATALOG "data/ion_catalog.txt"
#endif

namespace recqed {

namespace {

constexpr double kNm = 1e-9;
constexpr double kUs = 1e-6;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Field {
    std::string value;
    std::size_t line = 0;
};

struct Block {
    std::map<std::string, Field, std::less<>> fields;
    std::size_t first_line = 0;
};

double parse_number(const Field& f, std::string_view key, std::string_view source) {
    const std::string& v = f.value;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ParseError(std::string(source) + ":" + std::to_string(f.line) + ": field '" +
                         std::string(key) + "' is not a number: '" + v + "'");
    }
    return out;
}

// Reads `primary` (scaled by `scale`) or `si` verbatim; exactly one must be present.
double scaled_field(const Block& b, std::string_view primary, double scale, std::string_view si,
                    const std::string& record, std::string_view source) {
    const auto p = b.fields.find(primary);
    const auto s = b.fields.find(si);
    if (p != b.fields.end() && s != b.fields.end()) {
        throw ParseError(std::string(source) + ":" + std::to_string(s->second.line) + ": record '" +
                         record + "' sets both '" + std::string(primary) + "' and '" +
                         std::string(si) + "'");
    }
    if (p != b.fields.end()) return parse_number(p->second, primary, source) * scale;
    if (s != b.fields.end()) return parse_number(s->second, si, source);
    throw ParseError(std::string(source) + ":" + std::to_string(b.first_line) + ": record '" +
                     record + "' is missing field '" + std::string(primary) + "'");
}

const std::set<std::string, std::less<>>& known_keys() {
    static const std::set<std::string, std::less<>> keys = {
        "id",    "wavelength_nm", "wavelength_m", "oscillator_strength", "T1_us", "T1_s",
        "T2_us", "T2_s",          "T2_field",     "host_index"};
    return keys;
}

IonTransition to_transition(const Block& b, std::string_view source) {
    const auto id_it = b.fields.find("id");
    if (id_it == b.fields.end() || id_it->second.value.empty()) {
        throw ParseError(std::string(source) + ":" + std::to_string(b.first_line) +
                         ": record is missing field 'id'");
    }
    IonTransition t;
    t.id = id_it->second.value;
    t.wavelength_vac = scaled_field(b, "wavelength_nm", kNm, "wavelength_m", t.id, source);
    t.T1 = scaled_field(b, "T1_us", kUs, "T1_s", t.id, source);
    t.T2 = scaled_field(b, "T2_us", kUs, "T2_s", t.id, source);
    for (const char* key : {"oscillator_strength", "host_index"}) {
        const auto it = b.fields.find(key);
        if (it == b.fields.end()) {
            throw ParseError(std::string(source) + ":" + std::to_string(b.first_line) +
                             ": record '" + t.id + "' is missing field '" + key + "'");
        }
        const double v = parse_number(it->second, key, source);
        (std::string_view(key) == "host_index" ? t.host_index : t.oscillator_strength) = v;
    }
    if (const auto it = b.fields.find("T2_field"); it != b.fields.end()) {
        t.T2_field_note = it->second.value;
    }
    return t;
}

// Shortest decimal in display units that converts back to `si` exactly under
// the parser's multiplication, if one exists.
std::optional<std::string> display_value(double si, double scale) {
    double c = si / scale;
    if (c * scale == si) return format_double(c);
    for (int i = 0; i < 8; ++i) c = std::nextafter(c, -INFINITY);
    for (int i = 0; i <= 16; ++i, c = std::nextafter(c, INFINITY)) {
        if (c * scale == si) return format_double(c);
    }
    return std::nullopt;
}

void write_scaled(std::ostream& out, std::string_view key, std::string_view si_key, double si,
                  double scale) {
    if (const auto v = display_value(si, scale)) {
        out << key << " = " << *v << '\n';
    } else {
        out << si_key << " = " << format_double(si) << '\n';
    }
}

}  // namespace

void validate(const IonTransition& t) {
    auto fail = [&](const std::string& rule) {
        throw ValidationError("record '" + t.id + "' violates " + rule);
    };
    if (t.id.empty()) throw ValidationError("record with empty id");
    if (!(t.wavelength_vac > 0)) fail("wavelength > 0");
    if (!(t.oscillator_strength > 0)) fail("oscillator_strength > 0");
    if (!(t.T1 > 0)) fail("T1 > 0");
    if (!(t.T2 > 0)) fail("T2 > 0");
    if (!(t.T2 <= 2.0 * t.T1)) fail("T2 ≤ 2·T1");
    if (!(t.host_index >= 1.0)) fail("host_index ≥ 1");
}

Catalog parse_catalog(std::istream& in, std::string_view source) {
    std::vector<Block> blocks;
    std::optional<Block> current;
    std::string line;
    std::size_t lineno = 0;
    auto flush = [&] {
        if (current && !current->fields.empty()) blocks.push_back(std::move(*current));
        current.reset();
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
            // A full-line comment does not terminate a block.
            if (trim(view).empty()) continue;
        }
        view = trim(view);
        if (view.empty()) {
            flush();
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(std::string(source) + ":" + std::to_string(lineno) +
                             ": expected 'key = value', got '" + std::string(view) + "'");
        }
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        if (!known_keys().contains(key)) {
            throw ParseError(std::string(source) + ":" + std::to_string(lineno) +
                             ": unknown field '" + key + "'");
        }
        if (!current) {
            current.emplace();
            current->first_line = lineno;
        }
        if (!current->fields.emplace(key, Field{value, lineno}).second) {
            throw ParseError(std::string(source) + ":" + std::to_string(lineno) +
                             ": duplicate field '" + key + "'");
        }
    }
    flush();

    Catalog out;
    out.reserve(blocks.size());
    std::set<std::string, std::less<>> seen;
    for (const Block& b : blocks) {
        IonTransition t = to_transition(b, source);
        validate(t);
        if (!seen.insert(t.id).second) {
            throw ValidationError(std::string(source) + ":" + std::to_string(b.first_line) +
                                  ": duplicate id '" + t.id + "'");
        }
        out.push_back(std::move(t));
    }
    return out;
}

Catalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog '" + path.string() + "'");
    return parse_catalog(in, path.string());
}

void write_catalog(std::ostream& out, const Catalog& catalog) {
    bool first = true;
    for (const IonTransition& t : catalog) {
        if (!first) out << '\n';
        first = false;
        out << "id = " << t.id << '\n';
        write_scaled(out, "wavelength_nm", "wavelength_m", t.wavelength_vac, kNm);
        out << "oscillator_strength = " << format_double(t.oscillator_strength) << '\n';
        write_scaled(out, "T1_us", "T1_s", t.T1, kUs);
        write_scaled(out, "T2_us", "T2_s", t.T2, kUs);
        if (!t.T2_field_note.empty()) out << "T2_field = " << t.T2_field_note << '\n';
        out << "host_index = " << format_double(t.host_index) << '\n';
    }
}

std::string serialize_catalog(const Catalog& catalog) {
    std::ostringstream os;
    write_catalog(os, catalog);
    return os.str();
}

const IonTransition& get_transition(const Catalog& catalog, std::string_view id) {
    const auto it = std::find_if(catalog.begin(), catalog.end(),
                                 [&](const IonTransition& t) { return t.id == id; });
    if (it != catalog.end()) return *it;
    std::string msg = "unknown transition '" + std::string(id) + "'; available:";
    for (const IonTransition& t : catalog) msg += " '" + t.id + "'";
    if (catalog.empty()) msg += " (none)";
    throw ValidationError(msg);
}

std::filesystem::path default_catalog_path() {
    if (const char* env = std::getenv("RECQED_CATALOG"); env && *env) return env;
    return RECQED_DEFAULT_CATALOG;
}

}  // namespace recqed
