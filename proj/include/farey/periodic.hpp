#pragma once

#include "farey/cf.hpp"
#include "farey/surd.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace farey {

enum class Parity { Even, Odd };

const char* to_string(Parity p);

// floor(2 cosh(T/2)), decided exactly by widening the working precision.
Integer floor_two_cosh_half(double T);

// The Gauss point with minimal even period matrix of trace t has length
// 2 log((t + sqrt(t^2 - 4))/2), so length <= T iff t <= floor(2 cosh(T/2)).
struct LengthBudget {
    double T = 0.0;
    Integer max_even_trace;

    static LengthBudget for_length(double T);
    bool admits(const Integer& even_trace) const { return even_trace <= max_even_trace; }
};

// Largest T accepted by the enumerators; keeps the DFS inside 64-bit range.
inline constexpr double kMaxEnumerationLength = 80.0;

// Trace of the minimal even period matrix of the Gauss point [word repeated].
Integer even_trace(const CFWord& word);
// (t + sqrt(t^2 - 4))/2.
QuadIrrational length_eigenvalue(const Integer& even_trace);
double length_from_even_trace(const Integer& even_trace);

struct LengthValue {
    double via_orbit = 0.0;       // -2 sum of log G^j over one minimal even period
    double via_eigenvalue = 0.0;  // 2 log of the leading eigenvalue
    Integer even_trace;
    Parity parity = Parity::Even;

    double value() const { return via_eigenvalue; }
};

// Length of the Gauss point whose expansion repeats `word`.
LengthValue length_of(const CFWord& word);
// 2 log of the leading eigenvalue of M(word), without period doubling.
double tuple_length(const CFWord& word);

// One cyclic class of primitive words.
struct PrimitiveOrbit {
    CFWord word;  // least rotation
    Integer trace;
    Integer even_trace;
    Parity parity = Parity::Even;
    double length = 0.0;
};

struct PeriodicPoint {
    QuadIrrational value;
    CFWord period;  // expansion period of the underlying Gauss point, from its first digit
    std::uint64_t shift = 0;
    QuadIrrational tilde;
    Integer even_trace;
    double length = 0.0;
    Parity parity = Parity::Even;
    std::size_t per = 0;

    QuadIrrational eigenvalue() const { return length_eigenvalue(even_trace); }
};

struct EnumerationOptions {
    unsigned threads = 1;
    // 0 disables the cap; otherwise ResourceLimit is thrown beyond it
    std::size_t max_points = 0;
};

// Primitive orbits with even trace at most the bound, sorted by (even trace, word).
std::vector<PrimitiveOrbit> enumerate_orbits_by_trace(const Integer& max_even_trace,
                                                      const EnumerationOptions& options = {});
std::vector<PrimitiveOrbit> enumerate_orbits(double T, const EnumerationOptions& options = {});

// All rotations of one orbit as Gauss points (shift 0).
void expand_gauss(const PrimitiveOrbit& orbit, std::vector<PeriodicPoint>& out);
// All Farey points F^k(w) for every rotation w of the orbit.
void expand_farey(const PrimitiveOrbit& orbit, std::vector<PeriodicPoint>& out);

std::vector<PeriodicPoint> enumerate_gauss(double T, const EnumerationOptions& options = {});
std::vector<PeriodicPoint> enumerate_farey(double T, const EnumerationOptions& options = {});

// Number of Farey points with length <= T, without materializing them.
Integer count_farey_points(double T, const EnumerationOptions& options = {});

// True iff {(value, tilde)} equals its image under the swap (x, y) -> (y, x).
bool symmetry_check(std::span<const PeriodicPoint> points);
bool symmetry_check(double T);

// period,k,omega,omega_tilde,length,parity,per
void write_points_csv(std::ostream& os, std::span<const PeriodicPoint> points);

}  // namespace farey
