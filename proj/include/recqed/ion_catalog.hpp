#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace recqed {

/// Spectroscopic data for one rare-earth optical transition in a host crystal.
/// All fields are SI; the catalog file stores nm and microseconds.
struct IonTransition {
    std::string id;
    double wavelength_vac = 0.0;       // m
    double oscillator_strength = 0.0;
    double T1 = 0.0;                   // s, population lifetime
    double T2 = 0.0;                   // s, coherence time
    std::string T2_field_note;         // field at which T2 was measured, opaque
    double host_index = 1.0;

    friend bool operator==(const IonTransition&, const IonTransition&) = default;
};

/// Throws ValidationError naming the record and the violated rule.
void validate(const IonTransition& t);

using Catalog = std::vector<IonTransition>;

/// Parses the key = value block format. `source` is only used in messages.
Catalog parse_catalog(std::istream& in, std::string_view source = "<stream>");
Catalog load_catalog(const std::filesystem::path& path);

/// Writes `catalog` in the same block format; the output re-parses to an
/// identical record list.
void write_catalog(std::ostream& out, const Catalog& catalog);
std::string serialize_catalog(const Catalog& catalog);

/// Unique record with matching id, or ValidationError listing available ids.
const IonTransition& get_transition(const Catalog& catalog, std::string_view id);

/// Catalog path from $RECQED_CATALOG, falling back to the bundled file.
std::filesystem::path default_catalog_path();

}  // namespace recqed
