#pragma once

#include "klab/exact.hpp"

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace klab {

using cd = std::complex<double>;

enum class FiberTag { Regular, I, IStar, II, IIStar, III, IIIStar, IV, IVStar };

struct FiberKind {
    FiberTag tag = FiberTag::Regular;
    int b = 0; // only meaningful for I (b >= 1) and IStar (b >= 0)

    static FiberKind regular() { return {FiberTag::Regular, 0}; }
    static FiberKind I(int b);
    static FiberKind IStar(int b);
    static FiberKind II() { return {FiberTag::II, 0}; }
    static FiberKind IIStar() { return {FiberTag::IIStar, 0}; }
    static FiberKind III() { return {FiberTag::III, 0}; }
    static FiberKind IIIStar() { return {FiberTag::IIIStar, 0}; }
    static FiberKind IV() { return {FiberTag::IV, 0}; }
    static FiberKind IVStar() { return {FiberTag::IVStar, 0}; }

    /// Infinite monodromy (J has a pole): I_b with b >= 1, I*_b with b >= 1.
    bool is_pole() const;

    friend bool operator==(const FiberKind&, const FiberKind&) = default;
};

/// "I_3", "I*_0", "II", "II*", "III", "III*", "IV", "IV*", "regular".
std::string to_string(FiberKind k);
FiberKind parse_fiber_kind(std::string_view s);
/// Every kind with I_b and I*_b for b in [1, max_b] (and I*_0).
std::vector<FiberKind> all_kinds(int max_b);

struct SL2Z {
    long long a = 1, b = 0, c = 0, d = 1;
    long long det() const { return a * d - b * c; }
    long long trace() const { return a + d; }
    friend bool operator==(const SL2Z&, const SL2Z&) = default;
};

SL2Z operator*(const SL2Z& x, const SL2Z& y);
SL2Z inverse(const SL2Z& x);
cd mobius(const SL2Z& g, cd w);

FiberKind classify_monodromy(const SL2Z& m);
/// Monodromy representative of each kind, as listed in the local-model table.
SL2Z monodromy_representative(FiberKind k);

struct Congruence {
    int modulus = 1;
    std::vector<int> residues{0};
    bool equals_b = false; // pole types: d_p must equal b
};

struct FiberConstants {
    Rat delta;
    std::optional<int> mu; // nullopt = infinity
    std::optional<int> h;  // nullopt = infinity
    int euler = 0;
    Congruence congruence;
    std::vector<int> multiplicities;
};

FiberConstants fiber_constants(FiberKind k);
/// Intersection matrix of the non-identity components; size 0 for I_1, II, regular.
IntSymMatrix intersection_matrix(FiberKind k);
std::vector<Rat> eta_intersection_vector(FiberKind k);
/// "Theta_1".."Theta_n", matching the rows of intersection_matrix.
std::vector<std::string> component_labels(FiberKind k);
std::vector<std::pair<std::string, Rat>> extension_exponents(FiberKind k);

struct LocalModel {
    FiberKind kind;
    int d_p = 1;
    cd omega0{0.0, 1.0}; // used by regular and I*_0 only
};

/// Local period. For pole types the argument is zeta in H+ and the result d_p*zeta.
cd local_period(const LocalModel& m, cd tau);

struct FiberPoint {
    cd tau;
    cd z;
};

/// The cyclic generator g_p applied k >= 0 times.
FiberPoint local_action(const LocalModel& m, int k, FiberPoint pt);
/// Rotation e^{2 pi i / h_p} applied to tau by one step of g_p.
cd local_rotation(FiberKind k);
/// Distance from dz to the nearest point of Z + omega Z.
double lattice_residual(cd dz, cd omega);

struct OrderCheck {
    bool ok = true;
    std::string diagnostic;
};

OrderCheck validate_order(const LocalModel& m);

} // namespace klab
