#pragma once

#include "fuzzy.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace tconv
{

// A top-filter, held as a canonical base. A finite base B generates
// F_B = { l | join over m in B of S(m, l) = top }; on a finite carrier that set
// is the up-set of the pointwise meet of B, so the canonical base is the
// single member meet(B). Membership is still answered through the base
// formula, never by materializing the filter.
class tfilter
{
    std::size_t _domain = 0;
    std::vector<fuzzy_set> _base;

    tfilter( std::size_t domain, fuzzy_set generator ) : _domain{ domain }, _base{ std::move( generator ) } {}

    friend tfilter generate( const residuated_lattice& L, std::span<const fuzzy_set> base );

public:
    tfilter() = default;

    [[nodiscard]] std::size_t domain() const { return _domain; }
    [[nodiscard]] const std::vector<fuzzy_set>& base() const { return _base; }
    [[nodiscard]] const fuzzy_set& generator() const { return _base.front(); }

    // Canonical forms are unique, so this is filter equality.
    friend bool operator==( const tfilter& l, const tfilter& r ) { return l._base == r._base; }
    friend auto operator<=>( const tfilter& l, const tfilter& r ) { return l._base <=> r._base; }
};

struct base_check
{
    bool ok = true;
    std::string witness;
};

inline base_check check_base( const residuated_lattice& L, std::span<const fuzzy_set> base )
{
    if ( base.empty() )
        return { false, "empty base" };
    for ( const auto& m : base )
        detail::require_same_domain( m, base.front() );
    for ( const auto& m : base )
        if ( height( L, m ) != L.top() )
            return { false, "TB1 fails for " + describe( L, m ) };
    for ( std::size_t i = 0; i < base.size(); ++i )
        for ( std::size_t j = i; j < base.size(); ++j )
        {
            const auto both = meet( L, base[ i ], base[ j ] );
            lat acc = L.bot();
            for ( const auto& v : base )
                acc = L.join( acc, subsethood( L, v, both ) );
            if ( acc != L.top() )
                return { false, "TB2 fails for " + describe( L, base[ i ] ) + " and " + describe( L, base[ j ] ) };
        }
    return {};
}

inline bool is_base( const residuated_lattice& L, std::span<const fuzzy_set> base ) { return check_base( L, base ).ok; }

// join over m in base of S(m, l) == top
inline bool member_of_base( const residuated_lattice& L, std::span<const fuzzy_set> base, const fuzzy_set& l )
{
    lat acc = L.bot();
    for ( const auto& m : base )
    {
        acc = L.join( acc, subsethood( L, m, l ) );
        if ( acc == L.top() )
            return true;
    }
    return false;
}

// Throws not_a_base with the violating member or pair.
inline tfilter generate( const residuated_lattice& L, std::span<const fuzzy_set> base )
{
    if ( auto c = check_base( L, base ); !c.ok )
        throw error( error_kind::not_a_base, c.witness );
    fuzzy_set g = base.front();
    for ( const auto& m : base.subspan( 1 ) )
        g = meet( L, g, m );
    return { g.size(), std::move( g ) };
}

inline tfilter generate( const residuated_lattice& L, std::initializer_list<fuzzy_set> base )
{
    return generate( L, std::span<const fuzzy_set>( base.begin(), base.size() ) );
}

inline bool member( const residuated_lattice& L, const tfilter& F, const fuzzy_set& l )
{
    detail::require_domain( l, F.domain() );
    return member_of_base( L, F.base(), l );
}

// F subset of G, decided on the base of F.
inline bool filter_leq( const residuated_lattice& L, const tfilter& F, const tfilter& G )
{
    if ( F.domain() != G.domain() )
        throw error( error_kind::domain_mismatch, "filters on different carriers" );
    for ( const auto& m : F.base() )
        if ( !member( L, G, m ) )
            return false;
    return true;
}

inline bool filter_eq( const residuated_lattice& L, const tfilter& F, const tfilter& G )
{
    return filter_leq( L, F, G ) && filter_leq( L, G, F );
}

inline tfilter point_filter( const residuated_lattice& L, std::size_t n, std::size_t x )
{
    if ( x >= n )
        throw error( error_kind::invalid_parameter, "point " + std::to_string( x ) + " not in carrier" );
    return generate( L, { characteristic( L, n, x ) } );
}

namespace detail
{

template <typename Op>
tfilter map_base( const residuated_lattice& L, const tfilter& F, Op op )
{
    std::vector<fuzzy_set> out;
    for ( const auto& m : F.base() )
        out.push_back( op( m ) );
    return generate( L, out );
}

template <typename Op>
tfilter zip_base( const residuated_lattice& L, const tfilter& F, const tfilter& G, Op op )
{
    std::vector<fuzzy_set> out;
    for ( const auto& a : F.base() )
        for ( const auto& b : G.base() )
            out.push_back( op( a, b ) );
    return generate( L, out );
}

} // namespace detail

inline tfilter image_filter( const residuated_lattice& L, const finite_map& f, const tfilter& F )
{
    if ( F.domain() != f.source_size )
        throw error( error_kind::domain_mismatch, "image filter: map source differs from filter carrier" );
    return detail::map_base( L, F, [ & ]( const fuzzy_set& m ) { return image( L, f, m ); } );
}

// Empty when the preimage filter exists, otherwise the base member whose
// join over f(X) is not top.
inline std::string preimage_obstruction( const residuated_lattice& L, const finite_map& f, const tfilter& G )
{
    if ( G.domain() != f.target_size )
        throw error( error_kind::domain_mismatch, "preimage filter: map target differs from filter carrier" );
    std::vector<bool> in_range( f.target_size );
    for ( std::size_t x = 0; x < f.source_size; ++x )
        in_range[ f( x ) ] = true;
    for ( const auto& m : G.base() )
    {
        lat acc = L.bot();
        for ( std::size_t y = 0; y < f.target_size; ++y )
            if ( in_range[ y ] )
                acc = L.join( acc, m[ y ] );
        if ( acc != L.top() )
            return describe( L, m );
    }
    return {};
}

inline bool preimage_exists( const residuated_lattice& L, const finite_map& f, const tfilter& G )
{
    return preimage_obstruction( L, f, G ).empty();
}

inline tfilter preimage_filter( const residuated_lattice& L, const finite_map& f, const tfilter& G )
{
    if ( auto w = preimage_obstruction( L, f, G ); !w.empty() )
        throw error( error_kind::preimage_nonexistent, "base member " + w + " does not reach top on f(X)" );
    return detail::map_base( L, G, [ & ]( const fuzzy_set& m ) { return preimage( f, m ); } );
}

inline tfilter product_filter( const residuated_lattice& L, const tfilter& F1, const tfilter& F2 )
{
    return detail::zip_base( L, F1, F2, [ & ]( const fuzzy_set& a, const fuzzy_set& b ) { return fz_times( L, a, b ); } );
}

inline tfilter odot_filter( const residuated_lattice& L, const finite_group& G, const tfilter& F1, const tfilter& F2 )
{
    if ( F1.domain() != G.size() || F2.domain() != G.size() )
        throw error( error_kind::domain_mismatch, "odot product needs filters on the group carrier" );
    return detail::zip_base( L, F1, F2,
                             [ & ]( const fuzzy_set& a, const fuzzy_set& b ) { return fz_odot( L, G, a, b ); } );
}

inline tfilter inverse_filter( const residuated_lattice& L, const finite_group& G, const tfilter& F )
{
    if ( F.domain() != G.size() )
        throw error( error_kind::domain_mismatch, "inverse filter needs a filter on the group carrier" );
    return detail::map_base( L, F, [ & ]( const fuzzy_set& m ) { return fz_inv( G, m ); } );
}

inline tfilter lift_filter( const residuated_lattice& L, const finite_group& G, const tfilter& F )
{
    if ( F.domain() != G.size() )
        throw error( error_kind::domain_mismatch, "lift needs a filter on the group carrier" );
    return detail::map_base( L, F, [ & ]( const fuzzy_set& m ) { return lift_l( G, m ); } );
}

inline tfilter transpose_filter( const residuated_lattice& L, const tfilter& F )
{
    return detail::map_base( L, F, []( const fuzzy_set& m ) { return transpose( m ); } );
}

// Empty when F o G exists; otherwise the base pair whose composite misses top.
inline std::string composition_obstruction( const residuated_lattice& L, const tfilter& F, const tfilter& G )
{
    if ( F.domain() != G.domain() )
        throw error( error_kind::domain_mismatch, "composition of filters on different carriers" );
    for ( const auto& lambda : F.base() )
        for ( const auto& mu : G.base() )
            if ( height( L, relcomp( L, mu, lambda ) ) != L.top() )
                return "lambda=" + describe( L, lambda ) + " mu=" + describe( L, mu );
    return {};
}

inline bool compose_exists( const residuated_lattice& L, const tfilter& F, const tfilter& G )
{
    return composition_obstruction( L, F, G ).empty();
}

// F o G, generated by { mu o lambda | lambda in F, mu in G }.
inline tfilter compose_filter( const residuated_lattice& L, const tfilter& F, const tfilter& G )
{
    if ( auto w = composition_obstruction( L, F, G ); !w.empty() )
        throw error( error_kind::composition_nonexistent, w );
    return detail::zip_base( L, F, G,
                             [ & ]( const fuzzy_set& lambda, const fuzzy_set& mu ) { return relcomp( L, mu, lambda ); } );
}

// Set intersection of the two filters, generated by pairwise joins.
inline tfilter intersect_filter( const residuated_lattice& L, const tfilter& F, const tfilter& G )
{
    return detail::zip_base( L, F, G, [ & ]( const fuzzy_set& a, const fuzzy_set& b ) { return join( L, a, b ); } );
}

inline std::string describe( const residuated_lattice& L, const tfilter& F )
{
    std::string s = "<";
    for ( std::size_t i = 0; i < F.base().size(); ++i )
        s += ( i ? " " : "" ) + describe( L, F.base()[ i ] );
    return s + ">";
}

// Debug path: every member of F, when |L|^|X| is within budget.
inline std::vector<fuzzy_set> materialize( const residuated_lattice& L, const tfilter& F, std::size_t budget )
{
    std::vector<fuzzy_set> out;
    for ( auto& l : all_fuzzy_sets( L, F.domain(), budget ) )
        if ( member( L, F, l ) )
            out.push_back( std::move( l ) );
    return out;
}

// Lexicographic position of a fuzzy set among all_fuzzy_sets.
inline std::size_t fuzzy_index( const residuated_lattice& L, const fuzzy_set& a )
{
    std::size_t idx = 0;
    for ( std::size_t i = 0; i < a.size(); ++i )
        idx = idx * L.size() + a[ i ];
    return idx;
}

// Checks TF1-TF3 (and non-emptiness) directly on a family given as a
// membership vector over all_fuzzy_sets(L, n). Empty string when it is a
// top-filter.
inline std::string filter_axiom_violation( const residuated_lattice& L, const std::vector<fuzzy_set>& space,
                                           const std::vector<bool>& in )
{
    std::vector<std::size_t> members;
    for ( std::size_t i = 0; i < space.size(); ++i )
        if ( in[ i ] )
            members.push_back( i );
    if ( members.empty() )
        return "empty family";
    for ( auto i : members )
        if ( height( L, space[ i ] ) != L.top() )
            return "TF1 fails for " + describe( L, space[ i ] );
    for ( auto i : members )
        for ( auto j : members )
            if ( !in[ fuzzy_index( L, meet( L, space[ i ], space[ j ] ) ) ] )
                return "TF2 fails for " + describe( L, space[ i ] ) + " and " + describe( L, space[ j ] );
    for ( std::size_t l = 0; l < space.size(); ++l )
    {
        if ( in[ l ] )
            continue;
        lat acc = L.bot();
        for ( auto i : members )
            acc = L.join( acc, subsethood( L, space[ i ], space[ l ] ) );
        if ( acc == L.top() )
            return "TF3 fails for " + describe( L, space[ l ] );
    }
    return {};
}

enum class enumeration_method
{
    automatic,
    brute_force, // every subset of L^X
    antichain,   // up-sets generated by antichains of L^X
};

namespace detail
{

// Antichain search. On an up-set U generated by an antichain A:
//  - TF1 holds iff every generator has height top (height is monotone);
//  - TF2 holds iff pairwise meets of generators lie in U;
//  - the TF3 join over U equals the join over A (S is antitone in its first
//    argument).
// A TF2 failure is permanent: a meet of two generators lies above no element
// of any antichain extending them, so the branch is pruned.
inline void antichain_search( const residuated_lattice& L, const std::vector<fuzzy_set>& space,
                              std::vector<std::size_t>& gens, std::size_t next, std::vector<tfilter>& out )
{
    auto in_upset = [ & ]( const fuzzy_set& l ) {
        for ( auto g : gens )
            if ( leq( L, space[ g ], l ) )
                return true;
        return false;
    };
    if ( !gens.empty() )
    {
        for ( std::size_t i = 0; i < gens.size(); ++i )
            for ( std::size_t j = i + 1; j < gens.size(); ++j )
                if ( !in_upset( meet( L, space[ gens[ i ] ], space[ gens[ j ] ] ) ) )
                    return;
        bool ok = true;
        for ( auto g : gens )
            ok = ok && height( L, space[ g ] ) == L.top();
        for ( std::size_t l = 0; ok && l < space.size(); ++l )
        {
            if ( in_upset( space[ l ] ) )
                continue;
            lat acc = L.bot();
            for ( auto g : gens )
                acc = L.join( acc, subsethood( L, space[ g ], space[ l ] ) );
            ok = acc != L.top();
        }
        if ( ok )
        {
            std::vector<fuzzy_set> base;
            for ( auto g : gens )
                base.push_back( space[ g ] );
            out.push_back( generate( L, base ) );
        }
    }
    for ( std::size_t c = next; c < space.size(); ++c )
    {
        bool incomparable = true;
        for ( auto g : gens )
            incomparable = incomparable && !leq( L, space[ g ], space[ c ] ) && !leq( L, space[ c ], space[ g ] );
        if ( !incomparable )
            continue;
        gens.push_back( c );
        antichain_search( L, space, gens, c + 1, out );
        gens.pop_back();
    }
}

} // namespace detail

// All top-filters on an n-point carrier, sorted and duplicate-free. Throws
// budget_exceeded when |L|^n exceeds the budget.
inline std::vector<tfilter> enumerate_filters( const residuated_lattice& L, std::size_t n, std::size_t budget,
                                               enumeration_method method = enumeration_method::automatic )
{
    const auto space = all_fuzzy_sets( L, n, budget );
    if ( method == enumeration_method::automatic )
        method = space.size() <= 12 ? enumeration_method::brute_force : enumeration_method::antichain;

    std::vector<tfilter> out;
    if ( method == enumeration_method::brute_force )
    {
        if ( space.size() > 20 )
            throw error( error_kind::budget_exceeded, "brute-force filter enumeration limited to |L|^|X| <= 20" );
        std::vector<bool> in( space.size() );
        for ( std::uint32_t mask = 1; mask < ( 1u << space.size() ); ++mask )
        {
            std::vector<fuzzy_set> family;
            for ( std::size_t i = 0; i < space.size(); ++i )
            {
                in[ i ] = ( mask >> i ) & 1u;
                if ( in[ i ] )
                    family.push_back( space[ i ] );
            }
            if ( filter_axiom_violation( L, space, in ).empty() )
                out.push_back( generate( L, family ) );
        }
    }
    else
    {
        std::vector<std::size_t> gens;
        detail::antichain_search( L, space, gens, 0, out );
    }
    std::sort( out.begin(), out.end() );
    out.erase( std::unique( out.begin(), out.end() ), out.end() );
    return out;
}

} // namespace tconv
