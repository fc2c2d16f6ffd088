#ifndef QFIB_ERRORS_HPP
#define QFIB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qfib {

/// Error kinds raised by the library. Each value corresponds to a documented
/// failure mode of some operation; everything else is a plain logic_error.
enum class errc {
    division_by_zero,
    not_a_divisor,
    conductor_mismatch,
    conductor_too_small,
    dim_mismatch,
    order_exceeds_cap,
    non_isolated_fixed_locus,
    not_weighted_cycle,
    product_not_one,
    not_commuting,
    wrong_order,
    fixed_sets_not_disjoint,
    not_full_cycle,
    not_klein,
    not_faithful,
    invalid_unit,
    not_generating,
    enumeration_too_large,
    not_a_subgroup,
    invariant_mismatch,
    action_order_mismatch,
    level_incompatible,
    incompatible,
    no_transport,
    parse_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::division_by_zero: return "DivisionByZero";
        case errc::not_a_divisor: return "NotADivisor";
        case errc::conductor_mismatch: return "ConductorMismatch";
        case errc::conductor_too_small: return "ConductorTooSmall";
        case errc::dim_mismatch: return "DimMismatch";
        case errc::order_exceeds_cap: return "OrderExceedsCap";
        case errc::non_isolated_fixed_locus: return "NonIsolatedFixedLocus";
        case errc::not_weighted_cycle: return "NotWeightedCycle";
        case errc::product_not_one: return "ProductNotOne";
        case errc::not_commuting: return "NotCommuting";
        case errc::wrong_order: return "WrongOrder";
        case errc::fixed_sets_not_disjoint: return "FixedSetsNotDisjoint";
        case errc::not_full_cycle: return "NotFullCycle";
        case errc::not_klein: return "NotKlein";
        case errc::not_faithful: return "NotFaithful";
        case errc::invalid_unit: return "InvalidUnit";
        case errc::not_generating: return "NotGenerating";
        case errc::enumeration_too_large: return "EnumerationTooLarge";
        case errc::not_a_subgroup: return "NotASubgroup";
        case errc::invariant_mismatch: return "InvariantMismatch";
        case errc::action_order_mismatch: return "ActionOrderMismatch";
        case errc::level_incompatible: return "LevelIncompatible";
        case errc::incompatible: return "Incompatible";
        case errc::no_transport: return "NoTransport";
        case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Library exception type. `code()` identifies the failure mode so callers
/// and tests can dispatch without string matching.
class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

    /// Some conductor failures know which larger conductor would succeed;
    /// 0 means no suggestion.
    long suggested_conductor = 0;

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace qfib

#endif
