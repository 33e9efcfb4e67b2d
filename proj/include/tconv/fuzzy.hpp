#pragma once

#include "group.hpp"
#include "lattice.hpp"

#include <compare>
#include <string>
#include <vector>

namespace tconv
{

// L-fuzzy set on a finite carrier: a dense value array indexed by carrier
// position. Equality is exact table equality.
class fuzzy_set
{
    std::vector<lat> _values;

public:
    fuzzy_set() = default;
    explicit fuzzy_set( std::vector<lat> values ) : _values{ std::move( values ) } {}
    fuzzy_set( std::size_t n, lat fill ) : _values( n, fill ) {}

    [[nodiscard]] std::size_t size() const { return _values.size(); }
    [[nodiscard]] lat operator[]( std::size_t i ) const { return _values[ i ]; }
    lat& operator[]( std::size_t i ) { return _values[ i ]; }
    [[nodiscard]] const std::vector<lat>& values() const { return _values; }

    friend bool operator==( const fuzzy_set&, const fuzzy_set& ) = default;
    friend auto operator<=>( const fuzzy_set&, const fuzzy_set& ) = default;
};

namespace detail
{

inline void require_same_domain( const fuzzy_set& a, const fuzzy_set& b )
{
    if ( a.size() != b.size() )
        throw error( error_kind::domain_mismatch,
                     "fuzzy sets on carriers of size " + std::to_string( a.size() ) + " and " +
                             std::to_string( b.size() ) );
}

inline void require_domain( const fuzzy_set& a, std::size_t n )
{
    if ( a.size() != n )
        throw error( error_kind::domain_mismatch, "expected a fuzzy set on a carrier of size " + std::to_string( n ) +
                                                          ", got " + std::to_string( a.size() ) );
}

} // namespace detail

inline fuzzy_set constant( std::size_t n, lat v ) { return { n, v }; }

// top at x, bottom elsewhere
inline fuzzy_set characteristic( const residuated_lattice& L, std::size_t n, std::size_t x )
{
    fuzzy_set out( n, L.bot() );
    out[ x ] = L.top();
    return out;
}

inline fuzzy_set meet( const residuated_lattice& L, const fuzzy_set& a, const fuzzy_set& b )
{
    detail::require_same_domain( a, b );
    fuzzy_set out( a.size(), L.bot() );
    for ( std::size_t i = 0; i < a.size(); ++i )
        out[ i ] = L.meet( a[ i ], b[ i ] );
    return out;
}

inline fuzzy_set join( const residuated_lattice& L, const fuzzy_set& a, const fuzzy_set& b )
{
    detail::require_same_domain( a, b );
    fuzzy_set out( a.size(), L.bot() );
    for ( std::size_t i = 0; i < a.size(); ++i )
        out[ i ] = L.join( a[ i ], b[ i ] );
    return out;
}

inline bool leq( const residuated_lattice& L, const fuzzy_set& a, const fuzzy_set& b )
{
    detail::require_same_domain( a, b );
    for ( std::size_t i = 0; i < a.size(); ++i )
        if ( !L.leq( a[ i ], b[ i ] ) )
            return false;
    return true;
}

inline lat height( const residuated_lattice& L, const fuzzy_set& a ) { return L.join_all( a.values() ); }

// S(a, b) = meet over x of a(x) -> b(x)
inline lat subsethood( const residuated_lattice& L, const fuzzy_set& a, const fuzzy_set& b )
{
    detail::require_same_domain( a, b );
    lat acc = L.top();
    for ( std::size_t i = 0; i < a.size(); ++i )
        acc = L.meet( acc, L.arrow( a[ i ], b[ i ] ) );
    return acc;
}

// Zadeh forward image; the empty join is bottom.
inline fuzzy_set image( const residuated_lattice& L, const finite_map& f, const fuzzy_set& a )
{
    detail::require_domain( a, f.source_size );
    fuzzy_set out( f.target_size, L.bot() );
    for ( std::size_t x = 0; x < f.source_size; ++x )
        out[ f( x ) ] = L.join( out[ f( x ) ], a[ x ] );
    return out;
}

inline fuzzy_set preimage( const finite_map& f, const fuzzy_set& b )
{
    detail::require_domain( b, f.target_size );
    fuzzy_set out( f.source_size, 0 );
    for ( std::size_t x = 0; x < f.source_size; ++x )
        out[ x ] = b[ f( x ) ];
    return out;
}

// (a . b)(z) = join over xy=z of a(x) meet b(y)
inline fuzzy_set fz_odot( const residuated_lattice& L, const finite_group& G, const fuzzy_set& a,
                          const fuzzy_set& b )
{
    detail::require_domain( a, G.size() );
    detail::require_domain( b, G.size() );
    fuzzy_set out( G.size(), L.bot() );
    for ( std::size_t x = 0; x < G.size(); ++x )
        for ( std::size_t y = 0; y < G.size(); ++y )
        {
            auto z = G.mul( x, y );
            out[ z ] = L.join( out[ z ], L.meet( a[ x ], b[ y ] ) );
        }
    return out;
}

inline fuzzy_set fz_inv( const finite_group& G, const fuzzy_set& a )
{
    detail::require_domain( a, G.size() );
    fuzzy_set out( G.size(), 0 );
    for ( std::size_t z = 0; z < G.size(); ++z )
        out[ z ] = a[ G.inv( z ) ];
    return out;
}

// (a x b)(i, j) = a(i) meet b(j), on the lexicographic product carrier
inline fuzzy_set fz_times( const residuated_lattice& L, const fuzzy_set& a, const fuzzy_set& b )
{
    fuzzy_set out( a.size() * b.size(), L.bot() );
    for ( std::size_t i = 0; i < a.size(); ++i )
        for ( std::size_t j = 0; j < b.size(); ++j )
            out[ pair_index( i, j, b.size() ) ] = L.meet( a[ i ], b[ j ] );
    return out;
}

// x . a, evaluated as a(x^-1 z)
inline fuzzy_set translate( const finite_group& G, std::size_t x, const fuzzy_set& a )
{
    detail::require_domain( a, G.size() );
    fuzzy_set out( G.size(), 0 );
    for ( std::size_t z = 0; z < G.size(); ++z )
        out[ z ] = a[ G.mul( G.inv( x ), z ) ];
    return out;
}

// a_l(x, y) = a(x^-1 y)
inline fuzzy_set lift_l( const finite_group& G, const fuzzy_set& a )
{
    detail::require_domain( a, G.size() );
    const auto n = G.size();
    fuzzy_set out( n * n, 0 );
    for ( std::size_t x = 0; x < n; ++x )
        for ( std::size_t y = 0; y < n; ++y )
            out[ pair_index( x, y, n ) ] = a[ G.mul( G.inv( x ), y ) ];
    return out;
}

namespace detail
{

inline std::size_t side_of_square( std::size_t size )
{
    std::size_t n = 0;
    while ( n * n < size )
        ++n;
    if ( n * n != size )
        throw error( error_kind::domain_mismatch, "fuzzy set is not on a square product carrier" );
    return n;
}

} // namespace detail

// (mu o lambda)(x, y) = join over z of lambda(x, z) * mu(z, y); uses the
// t-norm, not the meet.
inline fuzzy_set relcomp( const residuated_lattice& L, const fuzzy_set& mu, const fuzzy_set& lambda )
{
    detail::require_same_domain( mu, lambda );
    const auto n = detail::side_of_square( mu.size() );
    fuzzy_set out( n * n, L.bot() );
    for ( std::size_t x = 0; x < n; ++x )
        for ( std::size_t y = 0; y < n; ++y )
        {
            lat acc = L.bot();
            for ( std::size_t z = 0; z < n; ++z )
                acc = L.join( acc, L.star( lambda[ pair_index( x, z, n ) ], mu[ pair_index( z, y, n ) ] ) );
            out[ pair_index( x, y, n ) ] = acc;
        }
    return out;
}

inline fuzzy_set transpose( const fuzzy_set& a )
{
    const auto n = detail::side_of_square( a.size() );
    fuzzy_set out( a.size(), 0 );
    for ( std::size_t x = 0; x < n; ++x )
        for ( std::size_t y = 0; y < n; ++y )
            out[ pair_index( x, y, n ) ] = a[ pair_index( y, x, n ) ];
    return out;
}

inline std::string describe( const residuated_lattice& L, const fuzzy_set& a )
{
    std::string s = "(";
    for ( std::size_t i = 0; i < a.size(); ++i )
        s += ( i ? " " : "" ) + L.label( a[ i ] );
    return s + ")";
}

// Every fuzzy set on an n-point carrier, in lexicographic order of value ids;
// throws budget_exceeded when |L|^n > budget.
inline std::vector<fuzzy_set> all_fuzzy_sets( const residuated_lattice& L, std::size_t n, std::size_t budget )
{
    std::size_t count = 1;
    for ( std::size_t i = 0; i < n; ++i )
    {
        count *= L.size();
        if ( count > budget )
            throw error( error_kind::budget_exceeded, "|L|^|X| exceeds budget " + std::to_string( budget ) );
    }
    std::vector<fuzzy_set> out;
    out.reserve( count );
    fuzzy_set cur( n, 0 );
    for ( std::size_t k = 0; k < count; ++k )
    {
        out.push_back( cur );
        for ( std::size_t i = n; i-- > 0; )
        {
            if ( ++cur[ i ] < L.size() )
                break;
            cur[ i ] = 0;
        }
    }
    return out;
}

inline bool fuzzy_space_within( const residuated_lattice& L, std::size_t n, std::size_t budget )
{
    std::size_t count = 1;
    for ( std::size_t i = 0; i < n; ++i )
    {
        count *= L.size();
        if ( count > budget )
            return false;
    }
    return true;
}

} // namespace tconv
