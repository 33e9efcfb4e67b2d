#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tconv
{

enum class error_kind
{
    invalid_parameter,
    not_a_lattice,
    star_axiom_violation,
    no_unit,
    distributivity_violation,
    not_a_group,
    domain_mismatch,
    not_a_base,
    preimage_nonexistent,
    composition_nonexistent,
    budget_exceeded,
    closure_insufficient,
    image_not_in_universe,
    not_pretopological,
    not_continuous,
    lattice_not_cd,
    syntax_error,
    unresolved_reference,
    dimension_mismatch,
};

inline std::string_view to_string( error_kind kind )
{
    switch ( kind )
    {
    case error_kind::invalid_parameter: return "invalid-parameter";
    case error_kind::not_a_lattice: return "not-a-lattice";
    case error_kind::star_axiom_violation: return "star-axiom-violation";
    case error_kind::no_unit: return "no-unit";
    case error_kind::distributivity_violation: return "distributivity-violation";
    case error_kind::not_a_group: return "not-a-group";
    case error_kind::domain_mismatch: return "domain-mismatch";
    case error_kind::not_a_base: return "not-a-base";
    case error_kind::preimage_nonexistent: return "preimage-nonexistent";
    case error_kind::composition_nonexistent: return "composition-nonexistent";
    case error_kind::budget_exceeded: return "budget-exceeded";
    case error_kind::closure_insufficient: return "closure-insufficient";
    case error_kind::image_not_in_universe: return "image-filter-not-in-target-universe";
    case error_kind::not_pretopological: return "not-pretopological";
    case error_kind::not_continuous: return "not-continuous";
    case error_kind::lattice_not_cd: return "lattice-not-cd";
    case error_kind::syntax_error: return "syntax-error";
    case error_kind::unresolved_reference: return "unresolved-reference";
    case error_kind::dimension_mismatch: return "dimension-mismatch";
    }
    return "unknown";
}

// Every failure raised by the library carries a kind, so callers (tests, the
// suite runner) can dispatch on it without parsing the message.
class error : public std::runtime_error
{
    error_kind _kind;

public:
    error( error_kind kind, const std::string& what )
            : std::runtime_error( std::string( to_string( kind ) ) + ": " + what ), _kind{ kind }
    {}

    [[nodiscard]] error_kind kind() const noexcept { return _kind; }
};

} // namespace tconv
