#pragma once

#include "klab/exact.hpp"
#include "klab/fiber.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace klab {

/// Coefficients over [s], [F], fiber components, raw section classes and psi(s_i).
struct DivisorClass {
    PiLinear s;
    PiLinear F;
    std::map<std::pair<std::string, int>, PiLinear> components; // (fiber id, 1-based index)
    std::map<std::string, PiLinear> sections;                   // raw [s_i]
    std::map<std::string, PiLinear> essential;                  // known psi(s_i) coefficients
    std::map<std::string, Rat> essential_symbolic;              // multiplier of an unknown e_i

    DivisorClass& operator+=(const DivisorClass& o);
    DivisorClass& operator-=(const DivisorClass& o);
    DivisorClass& operator*=(const Rat& k);

    /// Flattened coefficients (zero entries dropped), each multiplied by `scale`.
    std::map<std::string, PiPoly> flatten(const PiPoly& scale = PiPoly(Rat(1))) const;

    friend bool operator==(const DivisorClass& a, const DivisorClass& b);
};

DivisorClass operator+(DivisorClass a, const DivisorClass& b);
DivisorClass operator-(DivisorClass a, const DivisorClass& b);
DivisorClass operator*(const Rat& k, DivisorClass a);

struct SectionData {
    std::string name;
    long long dot_zero = 0;                        // s_i . s
    std::map<std::string, long long> dot_sections; // s_i . s_j
    bool in_mw0 = true;

    friend bool operator==(const SectionData&, const SectionData&) = default;
};

struct FiberEntry {
    std::string id; // defaults to "p<index>"
    LocalModel model;
};

struct SurfaceData {
    int genus = 0;
    int chi = 0;
    int jacobian_degree = 1;
    std::vector<FiberEntry> fibers;
    std::vector<SectionData> sections;

    /// Append a fiber with id "p<n>".
    void add_fiber(FiberKind k, int d_p);
};

bool operator==(const SurfaceData& a, const SurfaceData& b);

std::vector<Rat> compute_Np(FiberKind k);
DivisorClass trivial_class_T(int d, int chi);
DivisorClass canonical_class(int g, int chi);
DivisorClass shioda_image(const SectionData& sec, int chi);
Rat shioda_pairing(const SectionData& si, const SectionData& sj, int chi);

using EssentialInputs = std::map<std::string, PiLinear>; // name -> [eta_X] . psi(s_i)

DivisorClass assemble_eta_class(const SurfaceData& s,
                                const std::optional<EssentialInputs>& inputs = std::nullopt);
DivisorClass eta_epsilon_class(const SurfaceData& s, const Rat& eps,
                               const std::optional<EssentialInputs>& inputs = std::nullopt);
DivisorClass class_D_X(const SurfaceData& s,
                       const std::optional<EssentialInputs>& inputs = std::nullopt);

/// The identity (2g-2+chi)[eta_X(eps)] = (pi d/3 + eps chi) K_X + eps (2g-2+chi) D_X in Q(pi).
bool series_identity_holds(const SurfaceData& s, const Rat& eps);

} // namespace klab
