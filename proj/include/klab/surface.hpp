#pragma once

#include "klab/exact.hpp"
#include "klab/lattice.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace klab {

using ojson = nlohmann::ordered_json;

struct Diagnostic {
    std::string anchor;
    std::string message;
    bool advisory = false;
};

/// Parses and validates a surface description; throws ParseError or ValidationError.
SurfaceData parse_surface(std::string_view bytes);
SurfaceData parse_surface_file(const std::string& path);
ojson surface_to_json(const SurfaceData& s);
std::string serialize_surface(const SurfaceData& s);

std::vector<Diagnostic> validate_surface(const SurfaceData& s);

ojson to_json(const Rat& r);
ojson to_json(const PiLinear& x);
ojson to_json(const PiPoly& p);
ojson to_json(const PiRatio& x);
ojson to_json(const DivisorClass& c);

struct ReportOptions {
    bool verify = false;
    std::optional<Rat> t;
};

struct ReportResult {
    ojson doc;
    bool verification_ok = true;
};

ReportResult build_report(const SurfaceData& s, const ReportOptions& opt = {});

/// Numeric self-checks shared by `report --verify` and `verify-metric`.
struct CheckRow {
    std::string check;
    std::string point;
    double expected = 0;
    double got = 0;
    double tol = 0;
    double residual() const;
    bool pass() const { return residual() <= tol; }
};

/// `tol` overrides the per-check tolerance when given.
std::vector<CheckRow> metric_checks(int samples, std::optional<double> tol = std::nullopt, unsigned seed = 7);
std::vector<CheckRow> series_checks();

} // namespace klab
